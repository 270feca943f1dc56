// Copyright 2026 The qqo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "qqo/types.hpp"

namespace qqo {

// An element x = w0*I + w.sigma of the 2x2 complex matrix algebra, stored
// by its coefficients in the basis {I, sigma_1, sigma_2, sigma_3}.
//
// x is self-adjoint exactly when w0 and w are real, and a self-adjoint x
// is positive semidefinite exactly when |w| <= w0 (the eigenvalues of the
// dense embedding are w0 +- |w|).
struct PauliElement {
  cd w0{0.0, 0.0};
  CVec3 w = CVec3::Zero();

  PauliElement() = default;
  PauliElement(cd w0_in, CVec3 w_in) : w0(w0_in), w(std::move(w_in)) {}

  static PauliElement identity() { return {cd{1.0, 0.0}, CVec3::Zero()}; }
  // k in {0, 1, 2} selects sigma_1, sigma_2, sigma_3.
  static PauliElement sigma(int k);

  PauliElement adjoint() const { return {std::conj(w0), w.conjugate()}; }
  bool is_self_adjoint(double tol = default_tols().hermitian) const;
};

// A point f of the closed unit ball in R^3.  It labels the state
// x -> w0 + <w, f>; the ball constraint is enforced at construction.
class StateVec {
 public:
  explicit StateVec(const Vec3& f);
  StateVec(double f1, double f2, double f3) : StateVec(Vec3(f1, f2, f3)) {}
  const Vec3& f() const { return f_; }

  // Largest absolute component; the orbit-majorization bounds contract in
  // this norm, not the Euclidean one.
  double cube_norm() const { return f_.cwiseAbs().maxCoeff(); }

 private:
  Vec3 f_;
};

// Dense 2x2 matrix of sigma_k, k in {0, 1, 2}.
Mat2c pauli_matrix(int k);

Mat2c pauli_to_dense(const PauliElement& x);
PauliElement dense_to_pauli(const Mat2c& m);

// Product in coefficient form:
//   (x0, x)(y0, y) = (x0 y0 + sum_k x_k y_k,  x0 y + y0 x + i (x cross y)).
// Agrees with the dense 2x2 product under the embedding.
PauliElement pauli_mul(const PauliElement& x, const PauliElement& y);

// phi_f(x) = w0 + <w, f>.  Real for self-adjoint x.
cd eval_state(const StateVec& f, const PauliElement& x);

// Normalized trace, tau(x) = Tr(x)/2 = w0.
cd tau(const PauliElement& x);

struct PositivityVerdict {
  bool positive;
  double margin;  // Re(w0) - |w|; nonnegative up to slack iff positive
};

// Positive semidefiniteness test for self-adjoint elements.  Elements that
// fail self-adjointness are reported as not positive with margin -inf.
PositivityVerdict is_positive_element(const PauliElement& x,
                                      const Tolerances& tol = default_tols());

}  // namespace qqo
