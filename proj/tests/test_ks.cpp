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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "qqo/eig.hpp"
#include "qqo/families.hpp"
#include "qqo/ks.hpp"
#include "qqo/sampling.hpp"
#include "test_helpers.hpp"

using namespace qqo;
using namespace qqo_test;

namespace {

const AbcParams kFlagship{1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0), 0.0};
const CVec3 kE2 = CVec3(0, 1, 0);

// Fresh dense gap Delta(x*x) - Delta(x)* Delta(x), assembled only from the
// test-side Kronecker helpers and dense 2x2 products.
Mat4c dense_gap(const QqoTensor& t, const PauliElement& x) {
  const Mat2c xd = pauli_to_dense(x);
  const PauliElement xsx = dense_to_pauli(Mat2c(xd.adjoint() * xd));
  const Mat4c dx = dense_delta(t, x);
  return dense_delta(t, xsx) - Mat4c(dx.adjoint() * dx);
}

}  // namespace

TEST_CASE("derived quantities of the margin formulas") {
  const QqoTensor abc = abc_to_tensor(kFlagship);
  const double a = kFlagship.a, b = kFlagship.b;

  const KsQuantities kq = ks_quantities(abc, Vec3(1, 0, 0), kE2);
  CHECK(kq.x[0].cwiseAbs().maxCoeff() <= 1e-15);
  CHECK(std::abs(kq.x[1](1) - cd{a, 0}) <= 1e-15);
  CHECK(std::abs(kq.x[1](0)) + std::abs(kq.x[1](2)) <= 1e-15);
  CHECK(std::abs(kq.x[2](2) - cd{b, 0}) <= 1e-15);
  CHECK(std::abs(kq.x[2](0)) + std::abs(kq.x[2](1)) <= 1e-15);
  CHECK(std::abs(kq.alpha(1, 2)) <= 1e-15);
  CHECK(std::abs(kq.gamma[1][2](0) - cd{2.0 * a * b, 0}) <= 1e-14);
  CHECK(std::abs(kq.gamma[1][2](1)) + std::abs(kq.gamma[1][2](2)) <= 1e-15);
  CHECK(kq.h.cwiseAbs().maxCoeff() <= 1e-15);  // real w: no chirality
  CHECK(kq.q.cwiseAbs().maxCoeff() <= 1e-15);

  const KsQuantities zero = ks_quantities(abc, Vec3(0.2, 0.1, 0.4),
                                          CVec3::Zero());
  for (int m = 0; m < 3; ++m) CHECK(zero.x[m].cwiseAbs().maxCoeff() == 0.0);
  CHECK(zero.alpha.cwiseAbs().maxCoeff() == 0.0);
  CHECK(zero.q.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("derived quantities match brute-force summation") {
  SampleRng rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    const QqoTensor t = random_tensor(rng, 1.0);
    const Vec3 f = rng.ball_point();
    const CVec3 w = rng.complex_gaussian3();
    const KsQuantities kq = ks_quantities(t, f, w);

    for (int m = 0; m < 3; ++m) {
      for (int l = 0; l < 3; ++l) {
        cd want{0.0, 0.0};
        for (int k = 0; k < 3; ++k) want += t(m, l, k) * std::conj(w(k));
        CHECK(std::abs(kq.x[m](l) - want) <= 1e-13);
      }
    }

    // alpha: skew and purely imaginary; gamma: componentwise real.
    for (int m = 0; m < 3; ++m) {
      for (int l = 0; l < 3; ++l) {
        CHECK(std::abs(kq.alpha(m, l) + std::conj(kq.alpha(m, l))) <= 1e-13);
        CHECK(std::abs(kq.alpha(m, l) + kq.alpha(l, m)) <= 1e-13);
        CHECK(kq.gamma[m][l].imag().cwiseAbs().maxCoeff() <= 1e-13);
      }
    }

    // q at the first axis state collapses to h.
    const KsQuantities at_e1 = ks_quantities(t, Vec3(1, 0, 0), w);
    CHECK((at_e1.q - at_e1.h).cwiseAbs().maxCoeff() <= 1e-13);
  }
}

TEST_CASE("closed-form margins at the flagship family point") {
  const QqoTensor abc = abc_to_tensor(kFlagship);
  const Vec3 e1(1, 0, 0);
  CHECK(std::abs(ks_trace_margin(abc, e1, kE2) - 1.0 / 3.0) <= 1e-12);
  CHECK(std::abs(ks_eig_margin(abc, e1, kE2) + 1.0 / 3.0) <= 1e-12);

  const auto [first_trace, first_eig] = ks_first_axis_margins(abc, kE2);
  CHECK(std::abs(first_trace - 1.0 / 3.0) <= 1e-12);
  CHECK(std::abs(first_eig + 1.0 / 3.0) <= 1e-12);
}

TEST_CASE("margins at degenerate inputs") {
  SampleRng rng(52);
  const QqoTensor t = random_tensor(rng, 1.0);
  const Vec3 f = rng.ball_point();
  CHECK(std::abs(ks_trace_margin(t, f, CVec3::Zero())) <= 1e-15);
  CHECK(std::abs(ks_eig_margin(t, f, CVec3::Zero())) <= 1e-15);

  const CVec3 w = rng.complex_gaussian3();
  CHECK(std::abs(ks_trace_margin(QqoTensor{}, f, w) - w.squaredNorm()) <=
        1e-13);
  CHECK(ks_eig_margin(QqoTensor{}, f, w) >= -1e-13);
}

TEST_CASE("real coefficient vectors reduce the trace margin to norms") {
  SampleRng rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    const QqoTensor t = random_tensor(rng, 1.0);
    const Vec3 f = rng.ball_point();
    const CVec3 w = rng.ball_point().cast<cd>();
    double sum = w.squaredNorm();
    for (int m = 0; m < 3; ++m) {
      for (int l = 0; l < 3; ++l) {
        cd xml{0.0, 0.0};
        for (int k = 0; k < 3; ++k) xml += t(m, l, k) * std::conj(w(k));
        sum -= std::norm(xml);
      }
    }
    CHECK(std::abs(ks_trace_margin(t, f, w) - sum) <= 1e-13);
  }
}

TEST_CASE("first-axis margins agree with the generic route") {
  SampleRng rng(54);
  const Vec3 e1(1, 0, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const QqoTensor t = random_tensor(rng, 1.0);
    const CVec3 w = rng.complex_gaussian3();
    const auto [ft, fe] = ks_first_axis_margins(t, w);
    CHECK(std::abs(ft - ks_trace_margin(t, e1, w)) <= 1e-12);
    CHECK(std::abs(fe - ks_eig_margin(t, e1, w)) <= 1e-12);
  }
}

TEST_CASE("compressed difference: flagship value and identity collapse") {
  const QqoTensor abc = abc_to_tensor(kFlagship);
  const PauliElement x{0.0, kE2};
  const PauliElement d = ef_difference(abc, Vec3(1, 0, 0), x);
  CHECK(std::abs(d.w0 - cd{1.0 / 3.0, 0.0}) <= 1e-12);
  CHECK(std::abs(d.w.norm() - 2.0 / 3.0) <= 1e-12);
  CHECK(is_positive_element(d).margin == doctest::Approx(-1.0 / 3.0));

  const PauliElement at_unit =
      ef_difference(abc, Vec3(1, 0, 0), PauliElement::identity());
  CHECK(std::abs(at_unit.w0) <= 1e-14);
  CHECK(at_unit.w.cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("compressed difference equals the dense conditional expectation") {
  SampleRng rng(55);
  for (int trial = 0; trial < 100; ++trial) {
    const QqoTensor t = random_tensor(rng, 1.0);
    const Vec3 f = rng.ball_point();
    PauliElement x = random_element(rng);  // nonzero w0: it must cancel
    const Mat2c via_dense =
        dense_conditional_expectation(f, dense_gap(t, x));
    const Mat2c via_formula = pauli_to_dense(ef_difference(t, f, x));
    CHECK(max_abs(Mat2c(via_dense - via_formula)) <= 1e-11);

    // The eigenvalue margin is the bottom of the compressed spectrum.
    x.w0 = 0.0;
    const double margin = ks_eig_margin(t, f, x.w);
    const double dense_min = min_eig_hermitian(
        Eigen::MatrixXcd(pauli_to_dense(ef_difference(t, f, x))));
    CHECK(std::abs(margin - dense_min) <= 1e-11);
  }
}

TEST_CASE("spectral oracle: frozen values") {
  PauliElement e2{0.0, kE2};
  CHECK(ks_oracle(QqoTensor{}, e2) == doctest::Approx(1.0));

  SampleRng rng(56);
  const QqoTensor t = random_tensor(rng, 1.0);
  CHECK(std::abs(ks_oracle(t, PauliElement::identity())) <= 1e-12);

  CHECK(std::abs(ks_oracle(abc_to_tensor(kFlagship), e2) + 1.0 / 3.0) <=
        1e-12);
}

TEST_CASE("spectral oracle agrees with a fresh dense rebuild under scaling") {
  SampleRng rng(57);
  for (int trial = 0; trial < 50; ++trial) {
    const QqoTensor t = random_tensor(rng, 1.0);
    PauliElement x;
    x.w = rng.complex_gaussian3();
    const double s = 0.25 + 2.0 * rng.uniform();
    PauliElement sx;
    sx.w = s * x.w;
    const double lib = ks_oracle(t, sx);
    const double rebuilt = min_eig_hermitian(Eigen::MatrixXcd(dense_gap(t, sx)));
    CHECK(std::abs(lib - rebuilt) <= 1e-11);
  }
}

TEST_CASE("expansion identities for both sides of the operator inequality") {
  SampleRng rng(58);
  for (int trial = 0; trial < 500; ++trial) {
    const QqoTensor t = random_tensor(rng, 1.0);
    const PauliElement x = random_element(rng);
    const Mat2c xd = pauli_to_dense(x);

    // x*x in coefficient form, three routes.
    const PauliElement via_mul = pauli_mul(x.adjoint(), x);
    PauliElement closed;
    closed.w0 = std::norm(x.w0) + x.w.squaredNorm();
    closed.w = std::conj(x.w0) * x.w + x.w0 * x.w.conjugate() +
               kImag * cross_plain(x.w.conjugate(), x.w);
    const PauliElement via_dense = dense_to_pauli(Mat2c(xd.adjoint() * xd));
    CHECK(std::abs(via_mul.w0 - closed.w0) <= 1e-13);
    CHECK((via_mul.w - closed.w).cwiseAbs().maxCoeff() <= 1e-13);
    CHECK(std::abs(via_mul.w0 - via_dense.w0) <= 1e-13);
    CHECK((via_mul.w - via_dense.w).cwiseAbs().maxCoeff() <= 1e-13);

    // Delta(x*x): library plumbing against the fresh dense assembly.
    const Mat4c lhs_lib = tensor_square_to_dense(apply_delta(t, via_mul));
    const Mat4c lhs_fresh = dense_delta(t, via_dense);
    CHECK(max_abs(Mat4c(lhs_lib - lhs_fresh)) <= 1e-12);

    // Delta(x)* Delta(x): same comparison.
    const Mat4c dx_lib = tensor_square_to_dense(apply_delta(t, x));
    const Mat4c dx_fresh = dense_delta(t, x);
    CHECK(max_abs(Mat4c(Mat4c(dx_lib.adjoint() * dx_lib) -
                        Mat4c(dx_fresh.adjoint() * dx_fresh))) <= 1e-12);
  }
}

TEST_CASE("channel ordering: trace dominates eig dominates oracle") {
  SampleRng rng(59);
  for (int trial = 0; trial < 100; ++trial) {
    const QqoTensor t = random_tensor(rng, 0.8);
    const Vec3 f = rng.sphere_point();
    const CVec3 w = rng.complex_gaussian3();
    const double tm = ks_trace_margin(t, f, w);
    const double em = ks_eig_margin(t, f, w);
    CHECK(tm >= em - 1e-12);

    PauliElement x;
    x.w = w;
    CHECK(em >= ks_oracle(t, x) - 1e-10);
  }
}

TEST_CASE("violation scan: trivial, flagship, and boundary operators") {
  KsScanConfig cfg;
  cfg.pair_count = 256;
  cfg.oracle_count = 128;
  cfg.grid_n = 128;
  cfg.seed = 0;

  const KsReport clean = ks_scan(QqoTensor{}, cfg);
  CHECK_FALSE(clean.violation_found);
  CHECK(clean.worst_trace.margin >= 0.9);  // unit w, all derived terms vanish
  CHECK(clean.worst_eig.margin >= 0.9);
  CHECK(clean.worst_oracle.margin >= 0.9);
  CHECK(clean.pairs_scanned >= 256);

  const KsReport flag = ks_scan(abc_to_tensor(kFlagship), cfg);
  CHECK(flag.violation_found);
  CHECK(flag.worst_eig.margin <= -0.3);
  CHECK(flag.worst_oracle.margin <= -0.3);
  CHECK(flag.worst.margin ==
        std::min({flag.worst_trace.margin, flag.worst_eig.margin,
                  flag.worst_oracle.margin}));
  // The oracle sees every sharpened closed-form witness, so its floor sits
  // at or below both closed-form floors.
  CHECK(flag.worst_oracle.margin <= flag.worst_eig.margin + 1e-12);
  CHECK(flag.worst_oracle.margin <= flag.worst_trace.margin + 1e-12);

  // For the two-coefficient family point with a + b = 1 the spectral gap
  // floor is exactly -(a + b)^2 = -1, attained on the singlet direction by
  // w = (1, t, 0) with t = a + b; the refined scan lands on it.  The
  // trace-form margin never dips for this operator because its trace bound
  // a^2 + 2 max(b^2, c^2) = 3/4 stays below one.
  const KsReport edge = ks_scan(abc_to_tensor(AbcParams{0.5, 0.5, 0.0}), cfg);
  CHECK(edge.violation_found);
  CHECK(edge.worst_oracle.margin <= -0.99);
  CHECK(edge.worst_oracle.margin >= -1.0 - 1e-6);
  CHECK(edge.worst_trace.margin >= -1e-9);
}

TEST_CASE("scan is deterministic and worker-count independent") {
  KsScanConfig cfg;
  cfg.pair_count = 128;
  cfg.oracle_count = 64;
  cfg.grid_n = 64;
  cfg.seed = 9;

  SampleRng rng(60);
  const QqoTensor t = random_tensor(rng, 0.9);
  const KsReport one = ks_scan(t, cfg);
  KsScanConfig cfg4 = cfg;
  cfg4.workers = 4;
  const KsReport four = ks_scan(t, cfg4);
  CHECK(one.worst.margin == four.worst.margin);
  CHECK(one.worst_trace.margin == four.worst_trace.margin);
  CHECK(one.worst_eig.margin == four.worst_eig.margin);
  CHECK(one.worst_oracle.margin == four.worst_oracle.margin);
  CHECK((one.worst.f - four.worst.f).norm() == 0.0);
  CHECK((one.worst.w - four.worst.w).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("channel names are stable identifiers") {
  CHECK(std::string(ks_channel_name(KsChannel::trace)) == "trace");
  CHECK(std::string(ks_channel_name(KsChannel::eig)) == "eig");
  CHECK(std::string(ks_channel_name(KsChannel::oracle)) == "oracle");
}

TEST_CASE("oracle silence keeps the closed-form margins silent") {
  // The proved direction: where the spectral oracle finds no violation,
  // the closed-form necessary conditions cannot be violated either.
  KsScanConfig cfg;
  cfg.pair_count = 192;
  cfg.oracle_count = 96;
  cfg.grid_n = 64;

  SampleRng rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const QqoTensor t = random_tensor(rng, 0.06);  // deep inside the KS region
    const KsReport r = ks_scan(t, cfg);
    REQUIRE(r.worst_oracle.margin >= -1e-10);
    CHECK(r.worst_trace.margin >= -1e-8);
    CHECK(r.worst_eig.margin >= -1e-8);
  }
}
