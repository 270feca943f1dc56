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

#ifndef QQO_KS_HPP_
#define QQO_KS_HPP_

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "qqo/operator.hpp"
#include "qqo/pauli.hpp"
#include "qqo/types.hpp"

namespace qqo {

// Cyclic index pairs (0-based): for axis m the remaining two axes in cyclic
// order, i.e. m=0 -> (1,2), m=1 -> (2,0), m=2 -> (0,1).
inline constexpr std::array<std::array<int, 2>, 3> kCyclicPairs = {
    {{1, 2}, {2, 0}, {0, 1}}};

// Derived quantities entering the Kadison-Schwarz margin formulas, all
// evaluated at a fixed state direction f and coefficient vector w:
//   x[m]        row vectors x_{m,l} = sum_k b_{ml,k} conj(w_k), stored as the
//               complex 3-vector l -> x_{m,l},
//   alpha(m,l)  <x_m, x_l> - <x_l, x_m> (skew-Hermitian, purely imaginary),
//   gamma[m][l] cross-product combination [x_m, conj(x_l)] + [conj(x_m), x_l]
//               (componentwise real),
//   q(l)        <beta(f)_l, [w, conj(w)]> where beta(f)_l is the l-th row of
//               B(f),
//   h(l)        <b_{1l}, [w, conj(w)]>, the f = e1 specialization of q.
struct KsQuantities {
  std::array<CVec3, 3> x;
  Mat3c alpha;
  std::array<std::array<CVec3, 3>, 3> gamma;
  CVec3 q;
  CVec3 h;
};

KsQuantities ks_quantities(const QqoTensor& t, const Vec3& f, const CVec3& w);

// Trace-channel margin: nonnegative for every (f in ball, w) iff the
// trace form of the Kadison-Schwarz inequality holds.  Throws InternalError
// if the analytically-imaginary terms carry a real residue above tolerance.
double ks_trace_margin(const QqoTensor& t, const Vec3& f, const CVec3& w,
                       const Tolerances& tol = default_tols());

// Eigenvalue-channel margin: equals the minimum eigenvalue of
// E_phi(Delta(x*x) - Delta(x)*Delta(x)) for x = w.sigma (w0 drops out).
// Nonnegative everywhere iff the operator is Kadison-Schwarz.
double ks_eig_margin(const QqoTensor& t, const Vec3& f, const CVec3& w,
                     const Tolerances& tol = default_tols());

// The 2x2 state-compressed difference E_phi(Delta(x*x) - Delta(x)*Delta(x))
// in coefficient form (w0 part, sigma part).  Only the sigma part of x
// enters: the w0 part of x cancels out of the gap identically.
PauliElement ef_difference(const QqoTensor& t, const Vec3& f,
                           const PauliElement& x,
                           const Tolerances& tol = default_tols());

// (trace margin, eigenvalue margin) of the first-axis specialization
// f = e1, assembled from the h(w) contraction directly rather than through
// the f-dependent q — an independent route to the generic margins at e1.
std::pair<double, double> ks_first_axis_margins(
    const QqoTensor& t, const CVec3& w, const Tolerances& tol = default_tols());

// Spectral oracle: minimum eigenvalue of the 4x4 operator inequality gap
// Delta(x*x) - Delta(x)* Delta(x) for a given self-adjoint or general x.
// A Kadison-Schwarz operator keeps this nonnegative for every x.
double ks_oracle(const QqoTensor& t, const PauliElement& x,
                 const Tolerances& tol = default_tols());

enum class KsChannel { trace, eig, oracle };

const char* ks_channel_name(KsChannel c);

struct KsWitness {
  Vec3 f = Vec3::Zero();
  CVec3 w = CVec3::Zero();
  KsChannel channel = KsChannel::trace;
  double margin = 0.0;
};

struct KsReport {
  bool violation_found = false;
  KsWitness worst_trace;
  KsWitness worst_eig;
  KsWitness worst_oracle;
  // The single worst witness across channels (most negative margin).
  KsWitness worst;
  std::uint64_t pairs_scanned = 0;
  std::uint64_t oracle_points = 0;
};

struct KsScanConfig {
  std::uint64_t pair_count = 4096;   // random (f, w) pairs beyond canonical
  std::uint64_t oracle_count = 2048; // extra random x's for the oracle
  int grid_n = 2562;                 // sphere grid backing the f samples
  std::uint64_t seed = 0;
  int workers = 1;
  int refine_steps = 50;             // coordinate-descent rounds per witness
};

// Deterministic sweep of all three channels.  Every w that enters the trace
// and eigenvalue channels is also fed to the spectral oracle as x = w.sigma,
// so a negative closed-form margin is always accompanied by the oracle's
// view of the same point.  Negative witnesses are sharpened by coordinate
// descent before reporting.
KsReport ks_scan(const QqoTensor& t, const KsScanConfig& cfg = {},
                 const Tolerances& tol = default_tols());

}  // namespace qqo

#endif  // QQO_KS_HPP_
