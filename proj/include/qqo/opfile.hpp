// Copyright 2026 The qqo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QQO_OPFILE_HPP_
#define QQO_OPFILE_HPP_

#include <optional>
#include <stdexcept>
#include <string>

#include "qqo/families.hpp"
#include "qqo/operator.hpp"

namespace qqo {

// Operator files are plain-text key/value documents.  The first meaningful
// line fixes the dialect:
//   format = "qqo-tensor/1"    27 keys b[m][l][k] (1-based indices)
//   format = "qqo-diagonal/1"  nine keys b[i][k]
//   format = "qqo-abc/1"       keys a, b, c
// Blank lines and lines starting with '#' are ignored; omitted entries
// default to 0; duplicate or unknown keys are errors.
enum class OperatorKind { tensor, diagonal, abc };

const char* format_name(OperatorKind k);

struct ParsedOperator {
  OperatorKind kind = OperatorKind::tensor;
  QqoTensor tensor;  // the embedded coefficient tensor, always populated
  std::optional<DiagonalQO> diagonal;
  std::optional<AbcParams> abc;
};

// Carries the 1-based source line and, when applicable, the offending key.
struct ParseError : std::runtime_error {
  int line;
  std::string key;
  ParseError(int line_, std::string key_, const std::string& message)
      : std::runtime_error("line " + std::to_string(line_) + ": " + message +
                           (key_.empty() ? std::string()
                                         : " (key '" + key_ + "')")),
        line(line_),
        key(std::move(key_)) {}
};

ParsedOperator parse_operator_text(const std::string& text);
ParsedOperator load_operator_file(const std::string& path);

// Writers emit the format line and then every entry (zeros included) in a
// fixed order — lexicographic in the bracketed indices — with 17
// significant digits, so written files are canonical byte-for-byte.
std::string write_tensor_text(const QqoTensor& t);
std::string write_diagonal_text(const DiagonalQO& d);
std::string write_abc_text(const AbcParams& p);

}  // namespace qqo

#endif  // QQO_OPFILE_HPP_
