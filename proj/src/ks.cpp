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

#include "qqo/ks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "qqo/eig.hpp"
#include "qqo/sampling.hpp"

namespace qqo {

namespace {

double checked_real(const cd& z, double scale, const Tolerances& tol,
                    const char* what) {
  if (std::abs(z.imag()) > tol.imag_residue * (1.0 + scale)) {
    throw InternalError(std::string(what) + ": imaginary residue " +
                        std::to_string(z.imag()) + " exceeds tolerance");
  }
  return z.real();
}

Vec3 checked_real_vec(const CVec3& v, double scale, const Tolerances& tol,
                      const char* what) {
  Vec3 r;
  for (int k = 0; k < 3; ++k) r(k) = checked_real(v(k), scale, tol, what);
  return r;
}

// Scalar and vector part of the state-compressed operator inequality gap
// E_phi(Delta(x*x) - Delta(x)*Delta(x)) for x = w.sigma (the w0 part of x
// cancels out of the gap):
//   scalar  a  = |w|^2 - i sum_m f_m alpha_{cyc(m)} - sum_m |x_m|^2
//   vector  ig = i * (q - i sum_m f_m gamma_{cyc(m)} - sum_m [x_m, conj(x_m)])
// Both are real up to rounding; callers strip the residue under a guard.
struct CompressedGap {
  cd a;
  CVec3 ig;
};

CompressedGap compressed_gap(const QqoTensor& t, const Vec3& f,
                             const CVec3& w) {
  const KsQuantities ks = ks_quantities(t, f, w);
  cd a = cd(w.squaredNorm(), 0.0);
  CVec3 g = ks.q;
  for (int m = 0; m < 3; ++m) {
    const int j = kCyclicPairs[m][0];
    const int k = kCyclicPairs[m][1];
    a -= kImag * f(m) * ks.alpha(j, k);
    g -= kImag * f(m) * ks.gamma[j][k];
    a -= cd(ks.x[m].squaredNorm(), 0.0);
    g -= cross_plain(ks.x[m], ks.x[m].conjugate());
  }
  return {a, kImag * g};
}

double gap_scale(const CompressedGap& gap, const CVec3& w) {
  return std::abs(gap.a) + gap.ig.norm() + w.squaredNorm();
}

}  // namespace

KsQuantities ks_quantities(const QqoTensor& t, const Vec3& f, const CVec3& w) {
  KsQuantities out;
  for (int m = 0; m < 3; ++m) {
    for (int l = 0; l < 3; ++l) {
      // x_{m,l} = sum_k b_{ml,k} conj(w_k)
      out.x[m](l) = scalar_product(t.row(m, l).cast<cd>(), w);
    }
  }
  for (int m = 0; m < 3; ++m) {
    for (int l = 0; l < 3; ++l) {
      out.alpha(m, l) = scalar_product(out.x[m], out.x[l]) -
                        scalar_product(out.x[l], out.x[m]);
      out.gamma[m][l] = cross_plain(out.x[m], out.x[l].conjugate()) +
                        cross_plain(out.x[m].conjugate(), out.x[l]);
    }
  }
  const CVec3 wxwbar = cross_plain(w, w.conjugate());
  const Mat3 bf = b_matrix(t, f);
  for (int l = 0; l < 3; ++l) {
    const Vec3 beta_l = bf.row(l).transpose();
    out.q(l) = scalar_product(beta_l.cast<cd>(), wxwbar);
    out.h(l) = scalar_product(t.row(0, l).cast<cd>(), wxwbar);
  }
  return out;
}

double ks_trace_margin(const QqoTensor& t, const Vec3& f, const CVec3& w,
                       const Tolerances& tol) {
  const CompressedGap gap = compressed_gap(t, f, w);
  return checked_real(gap.a, gap_scale(gap, w), tol, "ks_trace_margin");
}

double ks_eig_margin(const QqoTensor& t, const Vec3& f, const CVec3& w,
                     const Tolerances& tol) {
  const CompressedGap gap = compressed_gap(t, f, w);
  const double scale = gap_scale(gap, w);
  const double a = checked_real(gap.a, scale, tol, "ks_eig_margin scalar");
  const Vec3 v =
      checked_real_vec(gap.ig, scale, tol, "ks_eig_margin vector");
  return a - v.norm();
}

PauliElement ef_difference(const QqoTensor& t, const Vec3& f,
                           const PauliElement& x, const Tolerances& tol) {
  const CompressedGap gap = compressed_gap(t, f, x.w);
  const double scale = gap_scale(gap, x.w);
  PauliElement e;
  e.w0 = cd(checked_real(gap.a, scale, tol, "ef_difference scalar"), 0.0);
  e.w = checked_real_vec(gap.ig, scale, tol, "ef_difference vector")
            .cast<cd>();
  return e;
}

std::pair<double, double> ks_first_axis_margins(const QqoTensor& t,
                                                const CVec3& w,
                                                const Tolerances& tol) {
  // Assembled from the h(w) row contraction directly instead of going
  // through the f-dependent q, so this is an independent route to the
  // f = e1 specialization of the generic margins.
  const KsQuantities ks = ks_quantities(t, Vec3::Zero(), w);

  cd a = cd(w.squaredNorm(), 0.0);
  CVec3 g = ks.h;
  a -= kImag * ks.alpha(kCyclicPairs[0][0], kCyclicPairs[0][1]);
  g -= kImag * ks.gamma[kCyclicPairs[0][0]][kCyclicPairs[0][1]];
  for (int m = 0; m < 3; ++m) {
    a -= cd(ks.x[m].squaredNorm(), 0.0);
    g -= cross_plain(ks.x[m], ks.x[m].conjugate());
  }
  const CVec3 ig = kImag * g;

  const double scale = std::abs(a) + ig.norm() + w.squaredNorm();
  const double ar =
      checked_real(a, scale, tol, "ks_first_axis_margins scalar");
  const Vec3 v =
      checked_real_vec(ig, scale, tol, "ks_first_axis_margins vector");
  return {ar, ar - v.norm()};
}

double ks_oracle(const QqoTensor& t, const PauliElement& x,
                 const Tolerances& tol) {
  const PauliElement xsx = pauli_mul(x.adjoint(), x);
  const Mat4c lifted_square = tensor_square_to_dense(apply_delta(t, xsx));
  const Mat4c lifted = tensor_square_to_dense(apply_delta(t, x));
  const Mat4c diff = lifted_square - lifted.adjoint() * lifted;
  return min_eig_hermitian(diff, tol);
}

const char* ks_channel_name(KsChannel c) {
  switch (c) {
    case KsChannel::trace:
      return "trace";
    case KsChannel::eig:
      return "eig";
    case KsChannel::oracle:
      return "oracle";
  }
  return "unknown";
}

namespace {

struct RefinedPoint {
  Vec3 f;
  CVec3 w;
  double margin;
};

// Deterministic coordinate descent on (f, w).  f stays in the closed unit
// ball, w stays on the unit sphere of C^3 (the margins are scale covariant
// and phase invariant in w, so unit w loses nothing).  The step halves after
// every round that fails to improve.
template <class MarginFn>
RefinedPoint refine_min(const Vec3& f0, const CVec3& w0, double m0,
                        MarginFn&& margin, int rounds) {
  RefinedPoint best{f0, w0, m0};
  double step = 0.25;
  for (int r = 0; r < rounds && step > 1e-12; ++r) {
    bool improved = false;
    for (int k = 0; k < 3; ++k) {
      for (const double s : {step, -step}) {
        Vec3 fc = best.f;
        fc(k) += s;
        const double n = fc.norm();
        if (n > 1.0) fc /= n;
        const double m = margin(fc, best.w);
        if (m < best.margin - 1e-15) {
          best.f = fc;
          best.margin = m;
          improved = true;
        }
      }
    }
    for (int k = 0; k < 3; ++k) {
      for (int part = 0; part < 2; ++part) {
        for (const double s : {step, -step}) {
          CVec3 wc = best.w;
          wc(k) += part == 0 ? cd(s, 0.0) : cd(0.0, s);
          const double n = wc.norm();
          if (n < 1e-9) continue;
          wc /= n;
          const double m = margin(best.f, wc);
          if (m < best.margin - 1e-15) {
            best.w = wc;
            best.margin = m;
            improved = true;
          }
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

CVec3 unit_complex_direction(SampleRng& rng) {
  for (;;) {
    const CVec3 g = rng.complex_gaussian3();
    const double n = g.norm();
    if (n > 1e-9) return g / n;
  }
}

}  // namespace

KsReport ks_scan(const QqoTensor& t, const KsScanConfig& cfg,
                 const Tolerances& tol) {
  const double r2 = 1.0 / std::sqrt(2.0);
  const std::array<CVec3, 6> canonical_w = {
      CVec3(1, 0, 0),
      CVec3(0, 1, 0),
      CVec3(0, 0, 1),
      CVec3(cd(r2, 0), cd(0, r2), 0),
      CVec3(0, cd(r2, 0), cd(0, r2)),
      CVec3(cd(0, r2), 0, cd(r2, 0)),
  };

  // Canonical pairs first (every signed axis state against every canonical
  // coefficient vector), then the seeded random stream.  The closed-form
  // margins are concave in f over the ball, so sphere samples of f suffice
  // to locate violations.
  std::vector<Vec3> fs;
  std::vector<CVec3> ws;
  for (int axis = 0; axis < 3; ++axis) {
    for (const double sgn : {1.0, -1.0}) {
      Vec3 f = Vec3::Zero();
      f(axis) = sgn;
      for (const CVec3& w : canonical_w) {
        fs.push_back(f);
        ws.push_back(w);
      }
    }
  }
  const std::vector<Vec3> grid = sphere_grid(cfg.grid_n);
  SampleRng rng(cfg.seed);
  for (std::uint64_t i = 0; i < cfg.pair_count; ++i) {
    fs.push_back(grid[static_cast<std::size_t>(i % grid.size())]);
    ws.push_back(unit_complex_direction(rng));
  }
  const std::size_t pairs = fs.size();

  const Extremum worst_trace_raw = parallel_argmin(
      pairs, cfg.workers,
      [&](std::size_t i) { return ks_trace_margin(t, fs[i], ws[i], tol); });
  const Extremum worst_eig_raw = parallel_argmin(
      pairs, cfg.workers,
      [&](std::size_t i) { return ks_eig_margin(t, fs[i], ws[i], tol); });

  // The oracle sees every w the closed-form channels saw (as x = w.sigma;
  // the w0 part of x never enters the gap, and complex w already spans all
  // traceless x), plus its own random stream.
  std::vector<CVec3> ows = ws;
  ows.reserve(ows.size() + cfg.oracle_count);
  for (std::uint64_t i = 0; i < cfg.oracle_count; ++i) {
    ows.push_back(unit_complex_direction(rng));
  }
  const auto oracle_at = [&](const CVec3& w) {
    PauliElement x;
    x.w0 = 0.0;
    x.w = w;
    return ks_oracle(t, x, tol);
  };
  const Extremum worst_oracle_raw =
      parallel_argmin(ows.size(), cfg.workers,
                      [&](std::size_t i) { return oracle_at(ows[i]); });

  RefinedPoint rt = refine_min(
      fs[worst_trace_raw.index], ws[worst_trace_raw.index],
      worst_trace_raw.value,
      [&](const Vec3& f, const CVec3& w) {
        return ks_trace_margin(t, f, w, tol);
      },
      cfg.refine_steps);
  RefinedPoint re = refine_min(
      fs[worst_eig_raw.index], ws[worst_eig_raw.index], worst_eig_raw.value,
      [&](const Vec3& f, const CVec3& w) {
        return ks_eig_margin(t, f, w, tol);
      },
      cfg.refine_steps);
  RefinedPoint ro = refine_min(
      Vec3::Zero(), ows[worst_oracle_raw.index], worst_oracle_raw.value,
      [&](const Vec3&, const CVec3& w) { return oracle_at(w); },
      cfg.refine_steps);

  // Keep the oracle at or below every closed-form witness: evaluate it at
  // the refined witnesses' w too, so the spectral floor is never reported
  // above a compressed margin.
  for (const CVec3& w : {rt.w, re.w}) {
    const double m = oracle_at(w);
    if (m < ro.margin) ro = {Vec3::Zero(), w, m};
  }

  KsReport rep;
  rep.worst_trace = {rt.f, rt.w, KsChannel::trace, rt.margin};
  rep.worst_eig = {re.f, re.w, KsChannel::eig, re.margin};
  rep.worst_oracle = {ro.f, ro.w, KsChannel::oracle, ro.margin};
  rep.worst = rep.worst_trace;
  if (rep.worst_eig.margin < rep.worst.margin) rep.worst = rep.worst_eig;
  if (rep.worst_oracle.margin < rep.worst.margin) rep.worst = rep.worst_oracle;
  rep.violation_found = rep.worst.margin < -tol.witness;
  rep.pairs_scanned = pairs;
  rep.oracle_points = ows.size();
  return rep;
}

}  // namespace qqo
