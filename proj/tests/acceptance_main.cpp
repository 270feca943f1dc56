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
//
// Acceptance suite: one self-contained check per shipped guarantee, one
// PASS/FAIL line each, nonzero exit when anything fails.  Every tolerance
// is written out literally at its point of use.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "qqo/dynamics.hpp"
#include "qqo/eig.hpp"
#include "qqo/families.hpp"
#include "qqo/ks.hpp"
#include "qqo/opfile.hpp"
#include "qqo/operator.hpp"
#include "qqo/pauli.hpp"
#include "qqo/sampling.hpp"
#include "test_helpers.hpp"

using namespace qqo;
using namespace qqo_test;

namespace {

// ---------------------------------------------------------------------------
// Harness

int g_checks_failed = 0;

void expect(bool ok, const char* what) {
  if (!ok) {
    ++g_checks_failed;
    std::printf("    check failed: %s\n", what);
  }
}

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd =
      std::string("\"") + QQO_CLI_PATH + "\" " + args + " 2>/dev/null";
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return res;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof(buf), pipe)) > 0) {
    res.out.append(buf, got);
  }
  const int status = pclose(pipe);
  res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

QqoTensor scaled(const QqoTensor& t, double s) {
  QqoTensor out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) out.b[i][j][k] = s * t(i, j, k);
    }
  }
  return out;
}

const AbcParams kFlagship{1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0), 0.0};

// ---------------------------------------------------------------------------
// 1. Coefficient-space multiplication against dense matrix products.

void c01_product_oracle() {
  SampleRng rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const PauliElement x = random_element(rng);
    const PauliElement y = random_element(rng);
    const Mat2c want = Mat2c(pauli_to_dense(x) * pauli_to_dense(y));
    const Mat2c got = pauli_to_dense(pauli_mul(x, y));
    expect(max_abs(Mat2c(want - got)) <= 1e-13,
           "coefficient product differs from the dense product");
  }
}

// ---------------------------------------------------------------------------
// 2. Closed-form product identities and the frozen worked example.

void c02_product_identities() {
  SampleRng rng(2);
  for (int trial = 0; trial < 1000; ++trial) {
    const CVec3 a = rng.complex_gaussian3();
    const CVec3 c = rng.complex_gaussian3();
    const PauliElement prod =
        pauli_mul(PauliElement{0.0, a}, PauliElement{0.0, c});
    const cd dot = (a.array() * c.array()).sum();  // plain bilinear sum
    expect(std::abs(prod.w0 - dot) <= 1e-13, "scalar part of (a.s)(c.s)");
    const CVec3 cross = kImag * cross_plain(a, c);
    expect((prod.w - cross).cwiseAbs().maxCoeff() <= 1e-13,
           "vector part of (a.s)(c.s)");

    const PauliElement x{0.0, a};
    const PauliElement sq = pauli_mul(x.adjoint(), x);
    expect(std::abs(sq.w0 - cd{a.squaredNorm(), 0.0}) <= 1e-13,
           "scalar part of the self-adjoint square");
    const CVec3 sq_vec = kImag * cross_plain(a.conjugate(), a);
    expect((sq.w - sq_vec).cwiseAbs().maxCoeff() <= 1e-13,
           "vector part of the self-adjoint square");
  }

  // Worked example a = (1, i, 0).
  const CVec3 a(cd{1, 0}, cd{0, 1}, cd{0, 0});
  const PauliElement prod =
      pauli_mul(PauliElement{0.0, a}, PauliElement{0.0, a.conjugate()});
  expect(std::abs(prod.w0 - cd{2, 0}) <= 1e-13, "worked example scalar");
  expect((prod.w - CVec3(cd{0, 0}, cd{0, 0}, cd{2, 0})).cwiseAbs().maxCoeff() <=
             1e-13,
         "worked example vector");
  Mat2c want;
  want << cd{4, 0}, cd{0, 0}, cd{0, 0}, cd{0, 0};
  expect(max_abs(Mat2c(pauli_to_dense(prod) - want)) <= 1e-13,
         "worked example dense form");
}

// ---------------------------------------------------------------------------
// 3. Both partial-trace marginals of the lift equal tau(x) times identity.

void c03_marginals() {
  SampleRng rng(3);
  const Mat2c eye = Mat2c::Identity();
  for (int trial = 0; trial < 200; ++trial) {
    const QqoTensor t = random_tensor(rng, 1.0);
    const PauliElement x = random_element(rng);
    const Mat4c m = dense_delta(t, x);
    const Mat2c first = 0.5 * trace_first(m);   // normalized trace, leg one
    const Mat2c second = 0.5 * trace_second(m);  // normalized trace, leg two
    expect(max_abs(Mat2c(first - x.w0 * eye)) <= 1e-13,
           "first marginal is not tau(x) * 1");
    expect(max_abs(Mat2c(second - x.w0 * eye)) <= 1e-13,
           "second marginal is not tau(x) * 1");
    expect(haar_check(t, x) <= 1e-13, "library marginal deviation too large");
  }
}

// ---------------------------------------------------------------------------
// 4. The two positivity certificates give the same verdict off the boundary.

void c04_certificate_coherence() {
  SampleRng rng(4);
  int decisive = 0;
  int attempts = 0;
  while (decisive < 50 && attempts < 400) {
    ++attempts;
    QqoTensor t = random_tensor(rng, 1.0);
    const double est0 = triple_norm(t, 258, 30).estimate;
    if (est0 <= 0.0) continue;
    double target = 0.2 + 1.6 * rng.uniform();
    if (std::abs(target - 1.0) < 2e-3) continue;  // stay off the boundary
    t = scaled(t, target / est0);

    const double est = triple_norm(t, 258, 30).estimate;
    const ProductStateBound psb =
        check_product_state_bound(t, 256, 11 + attempts, 258);
    if (std::abs(est - 1.0) <= 1e-6) continue;
    if (std::abs(psb.worst - 1.0) <= 1e-6) continue;
    ++decisive;
    expect((est <= 1.0) == psb.ok,
           "norm certificate and product-state certificate disagree");
  }
  expect(decisive >= 50, "not enough decisive certificate samples");
}

// ---------------------------------------------------------------------------
// 5. Unit square-sum operators always pass the product-state bound.

void c05_square_sum_sufficient() {
  SampleRng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    QqoTensor t = random_tensor(rng, 1.0);
    double ss = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) ss += t(i, j, k) * t(i, j, k);
      }
    }
    if (ss <= 0.0) continue;
    t = scaled(t, 1.0 / std::sqrt(ss));
    expect(check_square_sum_bound(t).ok, "normalized square sum not <= 1");
    expect(check_product_state_bound(t, 256, 1000 + trial, 130).ok,
           "unit-square-sum operator violated the product-state bound");
  }
}

// ---------------------------------------------------------------------------
// 6. Contraction regime: per-component Lipschitz bound and fast collapse.

void c06_contraction() {
  SampleRng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    QqoTensor t = random_tensor(rng, 1.0);
    const double target = 0.3 + 0.6 * rng.uniform();
    const double cur = certificates(t).lipschitz_sq;
    if (cur <= 0.0) continue;
    t = scaled(t, std::sqrt(target / cur));
    const StabilityCertificates c = certificates(t);
    expect(c.contraction, "scaled operator is not a certified contraction");

    for (int pair = 0; pair < 10; ++pair) {
      const Vec3 f = rng.ball_point();
      const Vec3 p = rng.ball_point();
      const Vec3 df = apply_v(t, f) - apply_v(t, p);
      for (int k = 0; k < 3; ++k) {
        expect(std::abs(df(k)) <= c.lipschitz_k(k) * (f - p).norm() + 1e-10,
               "per-component Lipschitz bound violated");
      }
    }
    for (int orbit = 0; orbit < 10; ++orbit) {
      const Trajectory tr =
          iterate(t, StateVec(Vec3(0.999 * rng.ball_point())), 200, 1e-9);
      expect(tr.terminal == Terminal::converged_to_zero,
             "contraction orbit failed to reach the origin in 200 steps");
    }
  }
}

// ---------------------------------------------------------------------------
// 7. Doubly exponential majorization of orbit components.

void c07_majorization() {
  SampleRng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    QqoTensor t = random_tensor(rng, 1.0);
    const Vec3 d0 = certificates(t).abs_sum_k;
    if (d0.maxCoeff() <= 0.0) continue;
    t = scaled(t, (0.3 + 0.75 * rng.uniform()) / d0.maxCoeff());
    const Vec3 d = certificates(t).abs_sum_k;

    Vec3 f = 0.95 * rng.ball_point();
    const double gamma = f.cwiseAbs().maxCoeff();
    if (gamma == 0.0) continue;

    Vec3 orbit = f;
    Vec3 tilde_prev = d;
    for (int n = 1; n <= 20; ++n) {
      orbit = apply_v(t, orbit);
      if (n > 1) tilde_prev = apply_v_tilde(t, tilde_prev);
      if (!tilde_prev.allFinite() || tilde_prev.maxCoeff() > 1e100) break;
      const double decay = std::pow(gamma, std::ldexp(1.0, n));
      for (int k = 0; k < 3; ++k) {
        expect(std::abs(orbit(k)) <= decay * tilde_prev(k) + 1e-12,
               "orbit component above the majorant bound");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// 8. Bounded coefficient mass with coupling: every interior orbit collapses.

void c08_global_collapse() {
  SampleRng rng(8);
  int built = 0;
  int attempts = 0;
  while (built < 100 && attempts < 1000) {
    ++attempts;
    QqoTensor t = random_tensor(rng, 1.0);
    const Vec3 d0 = certificates(t).abs_sum_k;
    if (d0.maxCoeff() <= 0.0) continue;
    t = scaled(t, (0.5 + 0.5 * rng.uniform()) / d0.maxCoeff());
    if (!certificates(t).unique_stable_origin) continue;  // rejection step
    ++built;
    for (int orbit = 0; orbit < 5; ++orbit) {
      const Trajectory tr =
          iterate(t, StateVec(Vec3(0.99 * rng.ball_point())), 200, 1e-9);
      expect(tr.terminal == Terminal::converged_to_zero,
             "orbit failed to collapse under the combined certificate");
    }
  }
  expect(built == 100, "could not build 100 operators by rejection");
}

// ---------------------------------------------------------------------------
// 9. Single-square map: exact fixed-point set and diagonal bound values.

void c09_single_square() {
  QqoTensor t;
  t.b[0][0][0] = 1.0;
  std::vector<StateVec> seeds;
  for (const Vec3& v : ball_grid(20)) seeds.emplace_back(v);
  const std::vector<Vec3> found = find_fixed_points(t, seeds, 1e-10);
  expect(found.size() == 2, "expected exactly two fixed points");
  double best_zero = 1.0, best_pole = 1.0;
  for (const Vec3& f : found) {
    best_zero = std::min(best_zero, f.norm());
    best_pole = std::min(best_pole, (f - Vec3(1, 0, 0)).norm());
  }
  expect(best_zero <= 1e-6, "origin missing from the fixed-point set");
  expect(best_pole <= 1e-6, "pole missing from the fixed-point set");

  DiagonalQO d;
  d.b(0, 0) = 1.0;
  const CertValue pos = diag_positivity_bound(d);
  expect(pos.ok && std::abs(pos.value - 1.0) <= 1e-15,
         "diagonal positivity bound should hold with value one");
  expect(!diag_stability_bound(d).ok,
         "diagonal stability bound should fail on the boundary");
}

// ---------------------------------------------------------------------------
// 10. Boundary family point: frozen certificate values and a deep witness.

void c10_flagship() {
  const QqoTensor t = abc_to_tensor(kFlagship);

  const CertValue pos = abc_positivity_bound(kFlagship);
  expect(pos.ok && std::abs(pos.value - 1.0 / 3.0) <= 1e-15,
         "family positivity bound should be one third");
  const AbcKsObstruction obs = abc_ks_obstruction(kFlagship);
  expect(std::abs(obs.trace_bound - 1.0) <= 1e-15,
         "trace-form bound should sit exactly on the boundary");
  expect(std::abs(obs.abs_sum - 2.0 / std::sqrt(3.0)) <= 1e-15,
         "coefficient mass should be two over root three");
  expect(obs.proved_not_ks, "obstruction certificate should fire");

  const double margin = ks_eig_margin(t, Vec3(1, 0, 0), CVec3(0, 1, 0));
  expect(std::abs(margin + 1.0 / 3.0) <= 1e-12,
         "eigenvalue margin at the canonical witness should be minus third");
  const double oracle = ks_oracle(t, PauliElement{0.0, CVec3(0, 1, 0)});
  expect(std::abs(oracle + 1.0 / 3.0) <= 1e-12,
         "spectral gap at the canonical witness should be minus third");

  const KsReport report = ks_scan(t);  // default sampling
  expect(report.violation_found, "default scan should find the violation");
  expect(report.worst_oracle.margin <= -1e-3,
         "spectral oracle witness should be deep");
}

// ---------------------------------------------------------------------------
// 11. Family limit classification agrees with simulated orbits, per clause.

void c11_classification() {
  SampleRng rng(11);

  const auto agree = [&](const AbcParams& p, const Vec3& f0) {
    const AbcClassification cls = abc_classify(p, StateVec(f0));
    if (!cls.predicted_limit.has_value()) {
      expect(false, "sampler produced a start outside the theorem");
      return;
    }
    const Trajectory tr = iterate(abc_to_tensor(p), StateVec(f0), 200, 1e-8);
    expect(tr.terminal == Terminal::converged_to_zero ||
               tr.terminal == Terminal::fixed_point,
           "orbit neither converged nor reached a fixed point");
    expect((tr.points.back() - cls.predicted_limit.value()).norm() <= 1e-6,
           "orbit limit differs from the classified limit");
  };

  auto interior_params = [&] {
    AbcParams p{0.9 * rng.uniform_sym(), 0.9 * rng.uniform_sym(), 0.0};
    p.c = std::sqrt(std::max(0.0,
                             0.9 - std::max(p.a * p.a, p.b * p.b))) *
          rng.uniform_sym();
    return p;
  };

  for (int i = 0; i < 50; ++i) {  // (i) start at a universal fixed point
    agree(interior_params(), (i % 2 == 0) ? Vec3::Zero() : Vec3(1, 0, 0));
  }
  for (int i = 0; i < 50; ++i) {  // (ii) first coordinate on the sphere
    agree(interior_params(), Vec3(-1, 0, 0));
  }
  for (int i = 0; i < 50; ++i) {  // (iii) third coefficient on the sphere
    const AbcParams p{0, 0, (i % 2 == 0) ? 1.0 : -1.0};
    const Vec3 f0 = (i % 4 < 2) ? Vec3(0, 0, (i % 2 == 0) ? -1.0 : 1.0)
                                : Vec3(0.9 * rng.ball_point());
    agree(p, f0);
  }
  for (int i = 0; i < 50; ++i) {  // (iv) second coefficient on the sphere
    if (i % 2 == 0) {
      // Base pinned at one, including the sign-alternating instance.
      if (i % 4 == 0) {
        agree(AbcParams{1.0, 0.5 * rng.uniform_sym(), 0.0},
              Vec3(0, (i % 8 == 0) ? 1.0 : -1.0, 0));
      } else {
        agree(AbcParams{-1.0, 1.0, 0.0}, Vec3(0, 0, (i % 8 < 4) ? 1.0 : -1.0));
      }
    } else {
      // Shrinking base.
      agree(AbcParams{(i % 4 == 1) ? 1.0 : -1.0, 0.9 * rng.uniform_sym(), 0.0},
            Vec3(0.9 * rng.ball_point()));
    }
  }
  for (int i = 0; i < 50; ++i) {  // (v) third-row coefficient on the sphere
    agree(AbcParams{0.9 * rng.uniform_sym(), (i % 2 == 0) ? 1.0 : -1.0, 0.0},
          Vec3(0.9 * rng.ball_point()));
  }
  for (int i = 0; i < 50; ++i) {  // (vi) strict interior
    agree(interior_params(), Vec3(0.95 * rng.ball_point()));
  }

  // Frozen interior instance: collapse within sixty steps at tight tolerance.
  const Trajectory tr = iterate(abc_to_tensor(AbcParams{0.5, 0.25, 0.5}),
                                StateVec(0.5, 0.5, 0.5), 60, 1e-9);
  expect(tr.terminal == Terminal::converged_to_zero,
         "frozen interior instance did not collapse within sixty steps");
}

// ---------------------------------------------------------------------------
// 12. Necessity: a silent spectral oracle keeps both closed margins silent.

void c12_necessity() {
  SampleRng rng(12);
  KsScanConfig cfg;
  cfg.pair_count = 512;
  cfg.oracle_count = 2048;
  cfg.grid_n = 258;

  int accepted = 0;
  int attempts = 0;
  while (accepted < 30 && attempts < 200) {
    ++attempts;
    const QqoTensor t = random_tensor(rng, 0.05 + 0.25 * rng.uniform());
    cfg.seed = static_cast<std::uint64_t>(attempts);
    const KsReport r = ks_scan(t, cfg);
    if (r.worst_oracle.margin < -1e-10) continue;  // oracle not silent
    ++accepted;
    expect(r.worst_trace.margin >= -1e-8,
           "trace margin dipped although the oracle was silent");
    expect(r.worst_eig.margin >= -1e-8,
           "eigenvalue margin dipped although the oracle was silent");
  }
  expect(accepted == 30, "could not collect 30 oracle-silent operators");
}

// ---------------------------------------------------------------------------
// 13. The reporting pipeline is deterministic and worker-count independent.

void c13_determinism() {
  const std::filesystem::path path =
      std::filesystem::temp_directory_path() / "qqo_acceptance_flagship.op";
  {
    std::ofstream out(path, std::ios::binary);
    out << write_abc_text(kFlagship);
  }
  const std::string flags =
      " --seed 0 --samples 512 --oracle-samples 256 --grid 258";
  const RunResult a = run_cli("check \"" + path.string() + "\"" + flags);
  const RunResult b = run_cli("check \"" + path.string() + "\"" + flags);
  const RunResult c =
      run_cli("check \"" + path.string() + "\"" + flags + " --workers 4");
  expect(a.code == 0, "check run failed");
  expect(!a.out.empty(), "check run produced no output");
  expect(a.out == b.out, "two identical runs differ");
  expect(a.out == c.out, "worker count changed the output bytes");
}

// ---------------------------------------------------------------------------

struct Criterion {
  const char* name;
  std::function<void()> fn;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"coefficient multiplication matches dense 2x2 products",
       c01_product_oracle},
      {"closed-form product identities and the worked example hold",
       c02_product_identities},
      {"both partial-trace marginals reduce to the normalized trace",
       c03_marginals},
      {"norm and product-state positivity verdicts agree off-boundary",
       c04_certificate_coherence},
      {"unit square-sum operators always pass the product-state bound",
       c05_square_sum_sufficient},
      {"contraction constants bound the map and force fast collapse",
       c06_contraction},
      {"majorant map dominates orbits doubly exponentially", c07_majorization},
      {"bounded coupled operators collapse every interior orbit",
       c08_global_collapse},
      {"single-square map has exactly the origin and pole fixed points",
       c09_single_square},
      {"boundary family point reproduces all frozen certificate values",
       c10_flagship},
      {"family limit classifier matches simulated orbits in every clause",
       c11_classification},
      {"silent spectral oracle implies silent closed-form margins",
       c12_necessity},
      {"reports are byte-deterministic across runs and worker counts",
       c13_determinism},
  };

  int failed_criteria = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int before = g_checks_failed;
    bool threw = false;
    try {
      criteria[i].fn();
    } catch (const std::exception& e) {
      threw = true;
      std::printf("    unexpected exception: %s\n", e.what());
    }
    const bool ok = !threw && g_checks_failed == before;
    if (!ok) ++failed_criteria;
    std::printf("%s — %02zu %s\n", ok ? "PASS" : "FAIL", i + 1,
                criteria[i].name);
    std::fflush(stdout);
  }
  std::printf("%zu/%zu acceptance criteria passed\n",
              criteria.size() - static_cast<std::size_t>(failed_criteria),
              criteria.size());
  return failed_criteria == 0 ? 0 : 1;
}
