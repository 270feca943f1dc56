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

#include "qqo/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace qqo {

namespace {

double offdiag_mass(const Eigen::MatrixXcd& a) {
  const int n = static_cast<int>(a.rows());
  double s = 0.0;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (p != q) s += std::norm(a(p, q));
  return std::sqrt(s);
}

}  // namespace

EigResult jacobi_eig(const Eigen::MatrixXcd& m, double offdiag_tol,
                     int max_sweeps) {
  const int n = static_cast<int>(m.rows());
  if (m.cols() != n || n < 1 || n > 8) {
    throw std::invalid_argument("jacobi_eig expects a square matrix, n <= 8");
  }
  Eigen::MatrixXcd a = m;
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Identity(n, n);
  const double stop = offdiag_tol * std::max(1.0, m.norm());

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (offdiag_mass(a) < stop) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cd beta = a(p, q);
        const double ab = std::abs(beta);
        if (ab < 1e-300) continue;
        const cd phase = beta / ab;
        const double tau = (std::real(a(q, q)) - std::real(a(p, p))) / (2 * ab);
        const double t =
            (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
        const double c = 1.0 / std::sqrt(1 + t * t);
        const double s = t * c;
        // Unitary G: G(p,p)=c, G(p,q)=s*phase, G(q,p)=-s*conj(phase),
        // G(q,q)=c; apply a <- G* a G, v <- v G.
        for (int r = 0; r < n; ++r) {  // columns
          const cd arp = a(r, p), arq = a(r, q);
          a(r, p) = c * arp - s * std::conj(phase) * arq;
          a(r, q) = s * phase * arp + c * arq;
        }
        for (int r = 0; r < n; ++r) {  // rows
          const cd apr = a(p, r), aqr = a(q, r);
          a(p, r) = c * apr - s * phase * aqr;
          a(q, r) = s * std::conj(phase) * apr + c * aqr;
        }
        for (int r = 0; r < n; ++r) {
          const cd vrp = v(r, p), vrq = v(r, q);
          v(r, p) = c * vrp - s * std::conj(phase) * vrq;
          v(r, q) = s * phase * vrp + c * vrq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return std::real(a(i, i)) < std::real(a(j, j));
  });

  EigResult r;
  r.values.resize(n);
  r.vectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    r.values(k) = std::real(a(order[k], order[k]));
    r.vectors.col(k) = v.col(order[k]);
  }
  return r;
}

DenseHermitian::DenseHermitian(Eigen::MatrixXcd m, const Tolerances& tol)
    : m_(std::move(m)) {
  const int n = static_cast<int>(m_.rows());
  if (m_.cols() != n || (n != 2 && n != 4 && n != 8)) {
    throw std::invalid_argument("DenseHermitian expects n in {2, 4, 8}");
  }
  const double dev = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (dev > tol.hermitian) {
    throw std::invalid_argument("matrix is not Hermitian within tolerance");
  }
  // Symmetrize away the rounding residue so downstream rotations see an
  // exactly Hermitian input.
  m_ = 0.5 * (m_ + m_.adjoint().eval());
}

EigResult eig_hermitian(const DenseHermitian& m) {
  return jacobi_eig(m.matrix(), default_tols().eig_offdiag, 100);
}

double min_eig_hermitian(const Eigen::MatrixXcd& m, const Tolerances& tol) {
  DenseHermitian h(m, tol);
  return eig_hermitian(h).values(0);
}

}  // namespace qqo
