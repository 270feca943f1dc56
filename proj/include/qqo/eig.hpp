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

struct EigResult {
  Eigen::VectorXd values;    // ascending
  Eigen::MatrixXcd vectors;  // column k pairs with values(k)
};

// Cyclic Jacobi with complex rotations.  Deterministic for a given input;
// converges when the off-diagonal Frobenius mass drops below
// offdiag_tol * max(1, |m|_F), with a hard cap of max_sweeps sweeps.
// Intended for the small matrices this library works with (n <= 8).
EigResult jacobi_eig(const Eigen::MatrixXcd& m, double offdiag_tol = 1e-13,
                     int max_sweeps = 100);

// Checked Hermitian matrix used as oracle input.  n in {2, 4, 8};
// max |M - M*| <= tol.hermitian enforced at construction.
class DenseHermitian {
 public:
  explicit DenseHermitian(Eigen::MatrixXcd m,
                          const Tolerances& tol = default_tols());
  const Eigen::MatrixXcd& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

 private:
  Eigen::MatrixXcd m_;
};

// Ascending eigenvalues of a checked Hermitian matrix.  This routine is the
// ground-truth spectral oracle for the positivity and Kadison-Schwarz
// checks, so it stays independent of any closed-form certificate.
EigResult eig_hermitian(const DenseHermitian& m);

// Convenience: smallest eigenvalue of a Hermitian matrix (checked).
double min_eig_hermitian(const Eigen::MatrixXcd& m,
                         const Tolerances& tol = default_tols());

}  // namespace qqo
