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

#ifndef QQO_DYNAMICS_HPP_
#define QQO_DYNAMICS_HPP_

#include <optional>
#include <vector>

#include "qqo/operator.hpp"
#include "qqo/pauli.hpp"
#include "qqo/types.hpp"

namespace qqo {

// The quadratic self-map of the state ball induced by the operator:
//   V(f)_k = sum_{ij} b_{ij,k} f_i f_j,  equivalently  V(f) = B(f)^T f.
Vec3 apply_v(const QqoTensor& t, const Vec3& f);

// Majorant map: same quadratic form with every coefficient replaced by its
// absolute value.  Monotone on the nonnegative orthant and componentwise
// dominates |V| there, which is what the orbit bounds lean on.
Vec3 apply_v_tilde(const QqoTensor& t, const Vec3& p);

// Closed-form stability certificates for the quadratic map, all cheap
// arithmetic in the coefficients:
//   lipschitz_k(k)  row/column L1-L2 mixed norm bounding the k-th component
//                   Lipschitz constant of V on the ball,
//   lipschitz_sq    sum of squares of lipschitz_k; < 1 certifies V is a
//                   contraction with the origin as unique attractor,
//   abs_sum_k(k)    total absolute coefficient mass feeding component k;
//                   all <= 1 certifies the majorant orbit stays bounded,
//   shrink_step     least n0 in [1, 64] with V~^{n0}(abs_sum_k) < 1
//                   componentwise, if any — certifies eventual decay,
//   unique_stable_origin  the combined certificate: abs_sum_k <= 1
//                   everywhere, some index k0 strictly below 1, and every
//                   component's update carries a coefficient coupling it to
//                   k0; makes the origin the unique stable fixed point.
struct StabilityCertificates {
  Vec3 lipschitz_k = Vec3::Zero();
  double lipschitz_sq = 0.0;
  Vec3 abs_sum_k = Vec3::Zero();
  bool contraction = false;
  bool abs_sum_bounded = false;
  std::optional<int> shrink_step;
  bool unique_stable_origin = false;
};

StabilityCertificates certificates(const QqoTensor& t);

// One-word regime label for a report: the strongest certificate that holds,
// or "unclassified" when none does (the closed-form theory is silent then).
const char* certificate_regime(const StabilityCertificates& c);

enum class Terminal {
  converged_to_zero,
  fixed_point,
  max_steps,
  left_ball,
};

const char* terminal_name(Terminal t);

struct Trajectory {
  std::vector<Vec3> points;  // f_0, f_1, ..., including the terminal point
  Terminal terminal = Terminal::max_steps;
};

// Iterates V from f0.  Classification per step, in order: converged_to_zero
// when |f| <= tol; left_ball when |f| > 1 + ball slack; fixed_point when
// |V(f) - f| <= tol with |f| > tol; max_steps otherwise.
Trajectory iterate(const QqoTensor& t, const StateVec& f0, int max_steps,
                   double tol, const Tolerances& tols = default_tols());

// Orbit probe for the majorant map started at d = abs_sum_k: reports
// whether the orbit stayed below the escape bound up to the horizon, the
// largest component seen, and whether it collapsed to zero.
struct TildeOrbitProbe {
  bool bounded_up_to_horizon = false;
  double sup_seen = 0.0;
  bool converged_to_zero = false;
};

TildeOrbitProbe tilde_orbit_probe(const QqoTensor& t, int horizon,
                                  const Tolerances& tols = default_tols());

// Damped fixed-point search (f <- f/2 + V(f)/2, 500 rounds per seed): keeps
// every limit whose residual |V(f) - f| is at most tol, deduplicated at
// distance tols.dedupe.  Damping is what lets seeds settle on fixed points
// that plain iteration repels.
std::vector<Vec3> find_fixed_points(const QqoTensor& t,
                                    const std::vector<StateVec>& seeds,
                                    double tol,
                                    const Tolerances& tols = default_tols());

}  // namespace qqo

#endif  // QQO_DYNAMICS_HPP_
