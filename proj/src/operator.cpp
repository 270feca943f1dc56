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

#include "qqo/operator.hpp"

#include <cmath>
#include <stdexcept>

#include "qqo/sampling.hpp"

namespace qqo {

namespace {

Mat4c kron2(const Mat2c& a, const Mat2c& b) {
  Mat4c m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      m.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return m;
}

Mat8c kron42(const Mat4c& a, const Mat2c& b) {
  Mat8c m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      m.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return m;
}

Mat8c kron24(const Mat2c& a, const Mat4c& b) {
  Mat8c m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      m.block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
  return m;
}

struct TopSingular {
  double sigma;
  Vec3 u, v;
};

// Deterministic top singular triple of a real 3x3 matrix.  Sign convention:
// the component of v with the largest magnitude is made positive.
TopSingular top_singular(const Mat3& b) {
  const Mat3 g = b.transpose() * b;
  const EigResult e = jacobi_eig(g.cast<cd>(), 1e-15, 100);
  Vec3 v = e.vectors.col(2).real();
  const double n = v.norm();
  if (n < 1e-300) return {0.0, Vec3::UnitX(), Vec3::UnitX()};
  v /= n;
  int imax = 0;
  for (int k = 1; k < 3; ++k)
    if (std::abs(v(k)) > std::abs(v(imax))) imax = k;
  if (v(imax) < 0) v = -v;
  Vec3 u = b * v;
  const double s = u.norm();
  if (s < 1e-300) return {0.0, Vec3::UnitX(), v};
  return {s, u / s, v};
}

// d/df_k of B(f) is the constant matrix M_k with (M_k)_{ij} = b[k][i][j].
Mat3 b_slice_first(const QqoTensor& t, int k) {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = t(k, i, j);
  return m;
}

// N(p)_{ki} = sum_j b[i][j][k] p_j, so the product-state form is |N(p) f|^2.
Mat3 n_matrix(const QqoTensor& t, const Vec3& p) {
  Mat3 m = Mat3::Zero();
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(k, i) += t(i, j, k) * p(j);
  return m;
}

}  // namespace

TensorSquareElement apply_delta(const QqoTensor& t, const PauliElement& x) {
  TensorSquareElement e;
  e.c00 = x.w0;
  for (int m = 0; m < 3; ++m)
    for (int l = 0; l < 3; ++l)
      e.C(m, l) = (t.row(m, l).cast<cd>().array() * x.w.array()).sum();
  return e;
}

Mat4c tensor_square_to_dense(const TensorSquareElement& e) {
  const Mat2c id = Mat2c::Identity();
  Mat4c m = e.c00 * kron2(id, id);
  for (int k = 0; k < 3; ++k) {
    m += e.c10(k) * kron2(pauli_matrix(k), id);
    m += e.c01(k) * kron2(id, pauli_matrix(k));
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      m += e.C(i, j) * kron2(pauli_matrix(i), pauli_matrix(j));
  return m;
}

TensorSquareElement tensor_square_from_dense(const Mat4c& m) {
  // Coefficients recovered by trace pairing: the sixteen products
  // sigma_a (x) sigma_b are trace-orthogonal with norm 4.
  const Mat2c id = Mat2c::Identity();
  TensorSquareElement e;
  e.c00 = m.trace() / 4.0;
  for (int k = 0; k < 3; ++k) {
    e.c10(k) = (kron2(pauli_matrix(k), id) * m).trace() / 4.0;
    e.c01(k) = (kron2(id, pauli_matrix(k)) * m).trace() / 4.0;
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      e.C(i, j) = (kron2(pauli_matrix(i), pauli_matrix(j)) * m).trace() / 4.0;
  return e;
}

Mat3 b_matrix(const QqoTensor& t, const Vec3& f) {
  Mat3 b = Mat3::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) b(i, j) += t(k, i, j) * f(k);
  return b;
}

double spectral_norm3(const Mat3& b) {
  const Mat3 g = b.transpose() * b;
  const EigResult e = jacobi_eig(g.cast<cd>(), 1e-15, 100);
  return std::sqrt(std::max(0.0, e.values(2)));
}

TripleNormResult triple_norm_over(const QqoTensor& t,
                                  const std::vector<Vec3>& candidates,
                                  int refine_steps, int workers) {
  if (candidates.empty())
    throw std::invalid_argument("triple_norm_over: no candidates");

  std::vector<double> vals(candidates.size());
  const Extremum grid_best =
      parallel_argmax(candidates.size(), workers, [&](std::size_t i) {
        vals[i] = spectral_norm3(b_matrix(t, candidates[i]));
        return vals[i];
      });

  // Keep the four best grid seeds (value order, index tie-break) and refine
  // each by alternating exact maximization of u^T B(f) v over unit f.
  std::vector<std::size_t> seeds;
  std::vector<char> taken(candidates.size(), 0);
  for (int s = 0; s < 4 && s < static_cast<int>(candidates.size()); ++s) {
    std::size_t best = candidates.size();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (taken[i]) continue;
      if (best == candidates.size() || vals[i] > vals[best]) best = i;
    }
    taken[best] = 1;
    seeds.push_back(best);
  }

  TripleNormResult result{grid_best.value, candidates[grid_best.index]};
  for (std::size_t si : seeds) {
    Vec3 f = candidates[si];
    double val = vals[si];
    for (int step = 0; step < refine_steps; ++step) {
      const TopSingular sv = top_singular(b_matrix(t, f));
      if (sv.sigma <= 0.0) break;
      Vec3 g;
      for (int k = 0; k < 3; ++k)
        g(k) = sv.u.dot(b_slice_first(t, k) * sv.v);
      const double gn = g.norm();
      if (gn < 1e-300) break;
      const Vec3 fn = g / gn;
      if ((fn - f).norm() < 1e-15) {
        f = fn;
        break;
      }
      f = fn;
    }
    val = spectral_norm3(b_matrix(t, f));
    if (val > result.estimate) result = {val, f};
  }
  return result;
}

TripleNormResult triple_norm(const QqoTensor& t, int grid_n, int refine_steps,
                             int workers) {
  return triple_norm_over(t, sphere_grid(grid_n), refine_steps, workers);
}

double product_state_value(const QqoTensor& t, const Vec3& f, const Vec3& p) {
  double total = 0.0;
  for (int k = 0; k < 3; ++k) {
    double g = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) g += t(i, j, k) * f(i) * p(j);
    total += g * g;
  }
  return total;
}

ProductStateBound check_product_state_bound(const QqoTensor& t,
                                            std::size_t sample_count,
                                            std::uint64_t seed, int grid_n,
                                            int workers,
                                            const Tolerances& tol) {
  const std::vector<Vec3> grid = sphere_grid(grid_n);
  const std::size_t g = grid.size();

  // Cache B(f)^T per grid point; the pair value is |B(f)^T p|^2.
  std::vector<Mat3> bt(g);
  for (std::size_t i = 0; i < g; ++i)
    bt[i] = b_matrix(t, grid[i]).transpose();

  std::vector<std::pair<Vec3, Vec3>> random_pairs;
  random_pairs.reserve(sample_count);
  SampleRng rng(seed);
  for (std::size_t i = 0; i < sample_count; ++i) {
    Vec3 f = rng.ball_point();
    Vec3 p = rng.ball_point();
    random_pairs.emplace_back(f, p);
  }

  const std::size_t total = g * g + random_pairs.size();
  const Extremum best = parallel_argmax(total, workers, [&](std::size_t i) {
    if (i < g * g) return (bt[i / g] * grid[i % g]).squaredNorm();
    const auto& [f, p] = random_pairs[i - g * g];
    return product_state_value(t, f, p);
  });

  Vec3 f, p;
  if (best.index < g * g) {
    f = grid[best.index / g];
    p = grid[best.index % g];
  } else {
    f = random_pairs[best.index - g * g].first;
    p = random_pairs[best.index - g * g].second;
  }

  // Alternating exact maximization: for fixed f the best p is the top
  // singular direction of B(f), and for fixed p the best f is the top
  // right-singular vector of N(p).  Monotone, so the sharpened value still
  // bounds the grid maximum from above.
  double worst = best.value;
  for (int step = 0; step < 50; ++step) {
    const TopSingular sb = top_singular(b_matrix(t, f));
    if (sb.sigma <= 0.0) break;
    p = sb.u;
    const TopSingular sn = top_singular(n_matrix(t, p));
    if (sn.sigma <= 0.0) break;
    f = sn.v;
    const double val = product_state_value(t, f, p);
    const bool stalled = val <= worst + 1e-16;
    worst = std::max(worst, val);
    if (stalled) break;
  }

  return {worst <= 1.0 + tol.product_state, worst, f, p};
}

SquareSumBound check_square_sum_bound(const QqoTensor& t,
                                      const Tolerances& tol) {
  double s = 0.0;
  for (int m = 0; m < 3; ++m)
    for (int l = 0; l < 3; ++l)
      for (int k = 0; k < 3; ++k) s += t(m, l, k) * t(m, l, k);
  return {s <= 1.0 + tol.cert_slack, s};
}

double haar_check(const QqoTensor& t, const PauliElement& x) {
  const Mat4c m = tensor_square_to_dense(apply_delta(t, x));
  const cd trace_half = tau(x);

  Mat2c left = Mat2c::Zero();   // (tau (x) id) Delta(x)
  Mat2c right = Mat2c::Zero();  // (id (x) tau) Delta(x)
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      for (int s = 0; s < 2; ++s) {
        left(r, c) += 0.5 * m(2 * s + r, 2 * s + c);
        right(r, c) += 0.5 * m(2 * r + s, 2 * c + s);
      }
    }
  }
  const Mat2c target = trace_half * Mat2c::Identity();
  return std::max((left - target).cwiseAbs().maxCoeff(),
                  (right - target).cwiseAbs().maxCoeff());
}

double positivity_oracle(const QqoTensor& t, const PauliElement& x,
                         const Tolerances& tol) {
  if (!is_positive_element(x, tol).positive) {
    throw std::invalid_argument("positivity_oracle expects a positive element");
  }
  const Mat4c m = tensor_square_to_dense(apply_delta(t, x));
  return min_eig_hermitian(m, tol);
}

bool check_flip_symmetry(const QqoTensor& t) {
  for (int m = 0; m < 3; ++m)
    for (int l = 0; l < 3; ++l)
      for (int k = 0; k < 3; ++k)
        if (t(m, l, k) != t(l, m, k)) return false;
  return true;
}

double check_coassociativity(const QqoTensor& t) {
  double dev = 0.0;
  for (int i = 0; i < 3; ++i) {
    // Delta(sigma_i) = sum_{ml} b[m][l][i] sigma_m (x) sigma_l; expand each
    // leg and compare the two 8x8 routes.
    Mat8c left = Mat8c::Zero();   // (Delta (x) id) Delta
    Mat8c right = Mat8c::Zero();  // (id (x) Delta) Delta
    for (int m = 0; m < 3; ++m) {
      for (int l = 0; l < 3; ++l) {
        const double c = t(m, l, i);
        if (c == 0.0) continue;
        const Mat4c dm = tensor_square_to_dense(
            apply_delta(t, PauliElement::sigma(m)));
        const Mat4c dl = tensor_square_to_dense(
            apply_delta(t, PauliElement::sigma(l)));
        left += c * kron42(dm, pauli_matrix(l));
        right += c * kron24(pauli_matrix(m), dl);
      }
    }
    dev = std::max(dev, (left - right).cwiseAbs().maxCoeff());
  }
  return dev;
}

}  // namespace qqo
