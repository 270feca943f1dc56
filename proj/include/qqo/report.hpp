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

#ifndef QQO_REPORT_HPP_
#define QQO_REPORT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qqo/dynamics.hpp"
#include "qqo/families.hpp"
#include "qqo/ks.hpp"
#include "qqo/opfile.hpp"
#include "qqo/operator.hpp"

namespace qqo {

struct CheckOptions {
  std::uint64_t seed = 0;
  std::uint64_t samples = 4096;         // (f, w) pairs / random state pairs
  std::uint64_t oracle_samples = 2048;  // extra spectral-oracle points
  int grid_n = 2562;                    // sphere grid size
  int fixed_point_grid = 12;            // ball lattice density for seeds
  int workers = 1;
};

// Everything the check command reports for one operator.  Worker count is
// deliberately absent: a report is a pure function of (content, options
// below), and worker parallelism must not leave a trace in the bytes.
struct ClassificationReport {
  std::string file;
  std::string content_hash;  // "fnv1a64:" + 16 hex digits of the raw bytes
  OperatorKind kind = OperatorKind::tensor;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  std::uint64_t oracle_samples = 0;
  int grid_n = 0;

  // Structure checks.
  double haar_deviation = 0.0;
  bool flip_symmetric = false;
  double coassociativity_deviation = 0.0;

  // Positivity certificates.
  ProductStateBound product_state;
  SquareSumBound square_sum;
  TripleNormResult triple;
  bool triple_ok = false;

  // Kadison-Schwarz scan.
  KsReport ks;

  // Ball dynamics.
  StabilityCertificates certs;
  std::string regime;
  std::vector<Vec3> fixed_points;

  // Family certificates, present when the file used a family format.
  std::optional<CertValue> diag_positivity;
  std::optional<CertValue> diag_stability;
  std::optional<AbcParams> abc;
  std::optional<CertValue> abc_positivity;
  std::optional<AbcKsObstruction> abc_obstruction;
  std::optional<std::string> abc_regime;
};

std::uint64_t fnv1a64(const std::string& bytes);
std::string fnv1a64_hex(const std::string& bytes);

// Shortest-form float text with 17 significant digits (lossless for
// doubles, locale-independent).
std::string fmt_g17(double x);

ClassificationReport run_check(const std::string& path,
                               const CheckOptions& options,
                               const Tolerances& tol = default_tols());

// Deterministic JSON with a fixed key order and fmt_g17 numbers; two
// reports with equal fields serialize to identical bytes.
std::string write_report_json(const ClassificationReport& report);

}  // namespace qqo

#endif  // QQO_REPORT_HPP_
