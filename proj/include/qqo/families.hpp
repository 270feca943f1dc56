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

#ifndef QQO_FAMILIES_HPP_
#define QQO_FAMILIES_HPP_

#include <optional>
#include <string>

#include "qqo/operator.hpp"
#include "qqo/pauli.hpp"
#include "qqo/types.hpp"

namespace qqo {

// Diagonal subclass: only the b_{ii,k} coefficients may be nonzero, stored
// as the 3x3 matrix b(i, k).  The induced ball map is V(f)_k = sum_i
// b(i,k) f_i^2.
struct DiagonalQO {
  Mat3 b = Mat3::Zero();
};

// Three-parameter diagonal family: b_{11,1} = 1, b_{22,2} = a,
// b_{33,2} = b, b_{33,3} = c, inducing V(f) = (f1^2, a f2^2 + b f3^2,
// c f3^2).  No constraint at construction; the bounds below are verdicts.
struct AbcParams {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

QqoTensor diagonal_to_tensor(const DiagonalQO& d);
QqoTensor abc_to_tensor(const AbcParams& p);
DiagonalQO abc_to_diagonal(const AbcParams& p);

struct CertValue {
  bool ok = false;
  double value = 0.0;
};

// Positivity certificate for diagonal operators: sum over k of
// max_i b(i,k)^2.  At most 1 (within slack) guarantees the product-state
// positivity bound holds for the embedded tensor.
CertValue diag_positivity_bound(const DiagonalQO& d,
                                const Tolerances& tol = default_tols());

// Stability certificate for diagonal operators: same value strictly below
// 1 makes the origin globally attracting.
CertValue diag_stability_bound(const DiagonalQO& d,
                               const Tolerances& tol = default_tols());

// Positivity certificate for the abc family: max{a^2, b^2} + c^2 at most 1
// (within slack) guarantees the product-state positivity bound.
CertValue abc_positivity_bound(const AbcParams& p,
                               const Tolerances& tol = default_tols());

// Closed-form obstruction to the Kadison-Schwarz property for the abc
// family.  trace_bound = a^2 + 2 max{b^2, c^2} (at most 1 is the trace
// channel's sufficient direction); abs_sum = |a| + |b| (above 1, together
// with the positivity bound, proves the operator is not KS).
struct AbcKsObstruction {
  bool proved_not_ks = false;
  double trace_bound = 0.0;
  double abs_sum = 0.0;
};

AbcKsObstruction abc_ks_obstruction(const AbcParams& p,
                                    const Tolerances& tol = default_tols());

// Limit classification of the abc ball dynamics from a start state.
// case_label is one of "i".."vi" (the applicable clause of the family's
// limit theorem) or "silent" when no clause covers the input, in which case
// predicted_limit is empty.  Clauses are tried in order; equality
// hypotheses use the case-boundary tolerance.
struct AbcClassification {
  std::string case_label = "silent";
  std::optional<Vec3> predicted_limit;
};

// Throws std::invalid_argument when the positivity bound fails (the limit
// theorem assumes it).
AbcClassification abc_classify(const AbcParams& p, const StateVec& f0,
                               const Tolerances& tol = default_tols());

// Start-state-independent regime of an (a, b, c) point for parameter
// sweeps: "bound_violated" when the positivity bound fails, otherwise the
// case family ("iii" |c|=1, "iv" |a|=1, "v" |b|=1, "vi" interior) or
// "boundary" for the remaining measure-zero shell.
const char* family_regime(const AbcParams& p,
                          const Tolerances& tol = default_tols());

}  // namespace qqo

#endif  // QQO_FAMILIES_HPP_
