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

#include "qqo/pauli.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qqo {

PauliElement PauliElement::sigma(int k) {
  if (k < 0 || k > 2) throw std::invalid_argument("sigma index out of range");
  CVec3 w = CVec3::Zero();
  w(k) = 1.0;
  return {cd{0.0, 0.0}, w};
}

bool PauliElement::is_self_adjoint(double tol) const {
  double dev = std::abs(std::imag(w0));
  for (int k = 0; k < 3; ++k) dev = std::max(dev, std::abs(std::imag(w(k))));
  return dev <= tol;
}

StateVec::StateVec(const Vec3& f) : f_(f) {
  if (f.norm() > 1.0 + default_tols().state_ball) {
    throw std::invalid_argument("state vector outside the unit ball");
  }
}

Mat2c pauli_matrix(int k) {
  Mat2c m;
  switch (k) {
    case 0:
      m << cd{0, 0}, cd{1, 0}, cd{1, 0}, cd{0, 0};
      return m;
    case 1:
      m << cd{0, 0}, cd{0, -1}, cd{0, 1}, cd{0, 0};
      return m;
    case 2:
      m << cd{1, 0}, cd{0, 0}, cd{0, 0}, cd{-1, 0};
      return m;
    default:
      throw std::invalid_argument("sigma index out of range");
  }
}

Mat2c pauli_to_dense(const PauliElement& x) {
  Mat2c m = x.w0 * Mat2c::Identity();
  for (int k = 0; k < 3; ++k) m += x.w(k) * pauli_matrix(k);
  return m;
}

PauliElement dense_to_pauli(const Mat2c& m) {
  // Coefficients recovered from traces; the basis is orthogonal with
  // Tr(sigma_k sigma_l) = 2 delta_kl.
  PauliElement x;
  x.w0 = 0.5 * (m(0, 0) + m(1, 1));
  x.w(0) = 0.5 * (m(0, 1) + m(1, 0));
  x.w(1) = 0.5 * kImag * (m(0, 1) - m(1, 0));
  x.w(2) = 0.5 * (m(0, 0) - m(1, 1));
  return x;
}

PauliElement pauli_mul(const PauliElement& x, const PauliElement& y) {
  PauliElement r;
  r.w0 = x.w0 * y.w0 + (x.w.array() * y.w.array()).sum();  // plain sum x_k y_k
  r.w = x.w0 * y.w + y.w0 * x.w + kImag * cross_plain(x.w, y.w);
  return r;
}

cd eval_state(const StateVec& f, const PauliElement& x) {
  return x.w0 + scalar_product(x.w, f.f().cast<cd>());
}

cd tau(const PauliElement& x) { return x.w0; }

PositivityVerdict is_positive_element(const PauliElement& x,
                                      const Tolerances& tol) {
  if (!x.is_self_adjoint(tol.hermitian)) {
    return {false, -std::numeric_limits<double>::infinity()};
  }
  const double margin = std::real(x.w0) - x.w.norm();
  return {margin >= -tol.positivity, margin};
}

}  // namespace qqo
