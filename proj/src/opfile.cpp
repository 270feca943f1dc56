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

#include "qqo/opfile.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace qqo {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_number(int line_no, const std::string& key,
                    const std::string& text) {
  const std::string v = trim(text);
  if (v.empty()) throw ParseError(line_no, key, "missing numeric value");
  const char* begin = v.c_str();
  char* end = nullptr;
  const double x = std::strtod(begin, &end);
  if (end != begin + v.size()) {
    throw ParseError(line_no, key, "malformed numeric value '" + v + "'");
  }
  return x;
}

// Parses "b[i][j]" / "b[i][j][k]" style keys; returns the 1-based indices.
bool parse_indexed_key(const std::string& key, int arity,
                       std::vector<int>* idx) {
  idx->clear();
  std::size_t pos = 0;
  if (pos >= key.size() || key[pos] != 'b') return false;
  ++pos;
  for (int n = 0; n < arity; ++n) {
    if (pos >= key.size() || key[pos] != '[') return false;
    ++pos;
    if (pos >= key.size() || key[pos] < '1' || key[pos] > '3') return false;
    idx->push_back(key[pos] - '0');
    ++pos;
    if (pos >= key.size() || key[pos] != ']') return false;
    ++pos;
  }
  return pos == key.size();
}

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

const char* format_name(OperatorKind k) {
  switch (k) {
    case OperatorKind::tensor:
      return "qqo-tensor/1";
    case OperatorKind::diagonal:
      return "qqo-diagonal/1";
    case OperatorKind::abc:
      return "qqo-abc/1";
  }
  return "unknown";
}

ParsedOperator parse_operator_text(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;

  bool have_format = false;
  OperatorKind kind = OperatorKind::tensor;
  QqoTensor tensor;
  DiagonalQO diagonal;
  AbcParams abc;
  std::set<std::string> seen;

  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(line_no, "", "expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "", "empty key");

    if (!have_format) {
      if (key != "format") {
        throw ParseError(line_no, key,
                         "first entry must be the format declaration");
      }
      if (value.size() < 2 || value.front() != '"' || value.back() != '"') {
        throw ParseError(line_no, key, "format value must be quoted");
      }
      const std::string name = value.substr(1, value.size() - 2);
      if (name == "qqo-tensor/1") {
        kind = OperatorKind::tensor;
      } else if (name == "qqo-diagonal/1") {
        kind = OperatorKind::diagonal;
      } else if (name == "qqo-abc/1") {
        kind = OperatorKind::abc;
      } else {
        throw ParseError(line_no, key, "unknown format '" + name + "'");
      }
      have_format = true;
      continue;
    }

    if (!seen.insert(key).second) {
      throw ParseError(line_no, key, "duplicate key");
    }

    std::vector<int> idx;
    switch (kind) {
      case OperatorKind::tensor: {
        if (!parse_indexed_key(key, 3, &idx)) {
          throw ParseError(line_no, key, "unknown key");
        }
        tensor.b[idx[0] - 1][idx[1] - 1][idx[2] - 1] =
            parse_number(line_no, key, value);
        break;
      }
      case OperatorKind::diagonal: {
        if (!parse_indexed_key(key, 2, &idx)) {
          throw ParseError(line_no, key, "unknown key");
        }
        diagonal.b(idx[0] - 1, idx[1] - 1) = parse_number(line_no, key, value);
        break;
      }
      case OperatorKind::abc: {
        double* slot = key == "a"   ? &abc.a
                       : key == "b" ? &abc.b
                       : key == "c" ? &abc.c
                                    : nullptr;
        if (slot == nullptr) throw ParseError(line_no, key, "unknown key");
        *slot = parse_number(line_no, key, value);
        break;
      }
    }
  }

  if (!have_format) {
    throw ParseError(line_no == 0 ? 1 : line_no, "format",
                     "missing format declaration");
  }

  ParsedOperator out;
  out.kind = kind;
  switch (kind) {
    case OperatorKind::tensor:
      out.tensor = tensor;
      break;
    case OperatorKind::diagonal:
      out.tensor = diagonal_to_tensor(diagonal);
      out.diagonal = diagonal;
      break;
    case OperatorKind::abc:
      out.tensor = abc_to_tensor(abc);
      out.diagonal = abc_to_diagonal(abc);
      out.abc = abc;
      break;
  }
  return out;
}

ParsedOperator load_operator_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "", "cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_operator_text(buf.str());
}

std::string write_tensor_text(const QqoTensor& t) {
  std::string out = "format = \"qqo-tensor/1\"\n";
  for (int m = 0; m < 3; ++m) {
    for (int l = 0; l < 3; ++l) {
      for (int k = 0; k < 3; ++k) {
        out += "b[" + std::to_string(m + 1) + "][" + std::to_string(l + 1) +
               "][" + std::to_string(k + 1) + "] = " + fmt17(t.b[m][l][k]) +
               "\n";
      }
    }
  }
  return out;
}

std::string write_diagonal_text(const DiagonalQO& d) {
  std::string out = "format = \"qqo-diagonal/1\"\n";
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      out += "b[" + std::to_string(i + 1) + "][" + std::to_string(k + 1) +
             "] = " + fmt17(d.b(i, k)) + "\n";
    }
  }
  return out;
}

std::string write_abc_text(const AbcParams& p) {
  std::string out = "format = \"qqo-abc/1\"\n";
  out += "a = " + fmt17(p.a) + "\n";
  out += "b = " + fmt17(p.b) + "\n";
  out += "c = " + fmt17(p.c) + "\n";
  return out;
}

}  // namespace qqo
