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

#include <array>
#include <cstdint>
#include <vector>

#include "qqo/eig.hpp"
#include "qqo/pauli.hpp"

namespace qqo {

// Coefficient tensor of a quadratic operator on the 2x2 algebra in the
// Pauli basis: Delta(x) = w0 * I(x)I + sum_{m,l} c_ml sigma_m (x) sigma_l
// with c_ml = sum_k b[m][l][k] w_k.  The 27 entries are real; with this
// normalization Delta is unital and the normalized trace is invariant
// (both verified by haar_check).  Indices are 0-based in code; the file
// format is 1-based.
struct QqoTensor {
  std::array<std::array<std::array<double, 3>, 3>, 3> b{};

  double operator()(int m, int l, int k) const { return b[m][l][k]; }
  double& operator()(int m, int l, int k) { return b[m][l][k]; }

  // Row vector b_ml = (b[m][l][0], b[m][l][1], b[m][l][2]).
  Vec3 row(int m, int l) const {
    return Vec3(b[m][l][0], b[m][l][1], b[m][l][2]);
  }
};

// Element of the tensor square, c00 * I(x)I + c10.(sigma(x)I) +
// c01.(I(x)sigma) + sum C_ml sigma_m(x)sigma_l.  Round-trips with the dense
// 4x4 embedding; Hermitian exactly when all coefficients are real.
struct TensorSquareElement {
  cd c00{0.0, 0.0};
  CVec3 c10 = CVec3::Zero();
  CVec3 c01 = CVec3::Zero();
  Mat3c C = Mat3c::Zero();
};

TensorSquareElement apply_delta(const QqoTensor& t, const PauliElement& x);
Mat4c tensor_square_to_dense(const TensorSquareElement& e);
TensorSquareElement tensor_square_from_dense(const Mat4c& m);

// State-compressed coefficient matrix: B(f)_{ij} = sum_k b[k][i][j] f_k.
// Linear in f; the conditional expectation of Delta(x) at state f is
// w0 * I + (B(f) w).sigma.
Mat3 b_matrix(const QqoTensor& t, const Vec3& f);

// Largest singular value of a real 3x3 matrix, via the spectral oracle on
// B^T B.
double spectral_norm3(const Mat3& b);

struct TripleNormResult {
  double estimate;  // certified lower bound for sup_{|f|=1} |B(f)|
  Vec3 argmax;
};

// Sup of the spectral norm of B(f) over the unit sphere: grid search plus
// projected-ascent refinement of the best seeds.  The bare grid maximum is
// monotone in the candidate set; refinement can only raise the estimate,
// and every reported value is attained at the reported argmax.
TripleNormResult triple_norm(const QqoTensor& t, int grid_n = 2562,
                             int refine_steps = 50, int workers = 1);
TripleNormResult triple_norm_over(const QqoTensor& t,
                                  const std::vector<Vec3>& candidates,
                                  int refine_steps, int workers = 1);

// Quadratic form of the product-state positivity bound:
//   sum_k |sum_{ij} b[i][j][k] f_i p_j|^2.
double product_state_value(const QqoTensor& t, const Vec3& f, const Vec3& p);

struct ProductStateBound {
  bool ok;       // worst <= 1 + tol.product_state
  double worst;  // largest sampled value
  Vec3 f, p;     // witness pair attaining worst
};

// Samples the product-state form over all ordered sphere-grid pairs plus
// sample_count seeded pseudo-random ball pairs, then sharpens the worst
// pair by alternating exact maximization.  worst <= 1 certifies that the
// dual map sends product states to states on the sampled set.
ProductStateBound check_product_state_bound(
    const QqoTensor& t, std::size_t sample_count, std::uint64_t seed,
    int grid_n = 2562, int workers = 1, const Tolerances& tol = default_tols());

struct SquareSumBound {
  bool ok;       // value <= 1 + tol.cert_slack
  double value;  // sum of squares of all 27 coefficients
};

// Closed-form sufficient condition: if the coefficient square sum is at
// most 1, the product-state bound holds for every pair.
SquareSumBound check_square_sum_bound(const QqoTensor& t,
                                      const Tolerances& tol = default_tols());

// Max deviation of the two partial-trace marginals of Delta(x) from
// tau(x) * I, computed on the dense 4x4 embedding.
double haar_check(const QqoTensor& t, const PauliElement& x);

// Smallest eigenvalue of the dense 4x4 Delta(x) for a positive x.
// Rejects non-positive x.
double positivity_oracle(const QqoTensor& t, const PauliElement& x,
                         const Tolerances& tol = default_tols());

// b[m][l][k] == b[l][m][k] for all indices (exact comparison).
bool check_flip_symmetry(const QqoTensor& t);

// Max elementwise deviation of the two 8x8 coassociativity routes
// (Delta applied to the left vs right leg) on the basis elements sigma_i.
double check_coassociativity(const QqoTensor& t);

}  // namespace qqo
