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

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace qqo {

using cd = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using Mat2c = Eigen::Matrix2cd;
using Mat3 = Eigen::Matrix3d;
using Mat3c = Eigen::Matrix3cd;
using Mat4c = Eigen::Matrix4cd;
using Mat8c = Eigen::Matrix<cd, 8, 8>;

inline constexpr cd kImag{0.0, 1.0};

// Scalar product on C^3 with the *second* argument conjugated:
//   <u, v> = sum_k u_k * conj(v_k).
// Every bracket expression in this library uses this convention; [u, v]
// always denotes the plain 3-vector cross product (no conjugation).
inline cd scalar_product(const CVec3& u, const CVec3& v) {
  return (u.array() * v.array().conjugate()).sum();
}

// Plain cross product on C^3.  Eigen's .cross() conjugates its result for
// complex scalars, which is *not* the bracket used here — always call this
// helper instead when either operand may be complex.
inline CVec3 cross_plain(const CVec3& u, const CVec3& v) {
  return CVec3(u(1) * v(2) - u(2) * v(1),
               u(2) * v(0) - u(0) * v(2),
               u(0) * v(1) - u(1) * v(0));
}

// Thrown when a structural identity that should hold to rounding error
// fails at runtime, e.g. an imaginary residue above tolerance.  The CLI
// maps this to exit code 3.
struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Central tolerance record.  Every boolean verdict produced by the library
// is derived from a signed margin against one of these slacks, and the
// margin is always reported next to the verdict.
struct Tolerances {
  double hermitian = 1e-12;      // self-adjointness of inputs
  double state_ball = 1e-12;     // |f| <= 1 slack at StateVec construction
  double positivity = 1e-12;     // |w| <= w0 slack for positive elements
  double eig_offdiag = 1e-13;    // Jacobi off-diagonal mass, relative to scale
  double product_state = 1e-9;   // product-state positivity bound slack
  double cert_slack = 1e-12;     // inequality slack for closed-form certificates
  double triple_norm = 1e-6;     // |||B||| <= 1 verdict slack
  double imag_residue = 1e-12;   // allowed imaginary residue in KS margins
  double witness = 1e-8;         // margin below -witness counts as a violation
  double converge_zero = 1e-9;   // trajectory has reached the origin
  double fixed_point = 1e-10;    // fixed-point residual
  double ball_escape = 1e-9;     // |f| > 1 + this leaves the state ball
  double tilde_escape = 1e6;     // majorant orbit escape bound
  double tilde_zero = 1e-12;     // majorant orbit has collapsed to zero
  double dedupe = 1e-6;          // fixed-point dedup distance
  double case_boundary = 1e-12;  // equality boundaries in the case analysis
};

inline const Tolerances& default_tols() {
  static const Tolerances t{};
  return t;
}

}  // namespace qqo
