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

#include "qqo/dynamics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qqo {

Vec3 apply_v(const QqoTensor& t, const Vec3& f) {
  Vec3 out = Vec3::Zero();
  for (int k = 0; k < 3; ++k) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) s += t(i, j, k) * f(i) * f(j);
    }
    out(k) = s;
  }
  return out;
}

Vec3 apply_v_tilde(const QqoTensor& t, const Vec3& p) {
  Vec3 out = Vec3::Zero();
  for (int k = 0; k < 3; ++k) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) s += std::abs(t(i, j, k)) * p(i) * p(j);
    }
    out(k) = s;
  }
  return out;
}

StabilityCertificates certificates(const QqoTensor& t) {
  StabilityCertificates c;
  for (int k = 0; k < 3; ++k) {
    double col_sq = 0.0;
    for (int j = 0; j < 3; ++j) {
      double colsum = 0.0;
      for (int i = 0; i < 3; ++i) colsum += std::abs(t(i, j, k));
      col_sq += colsum * colsum;
    }
    double row_sq = 0.0;
    double total = 0.0;
    for (int i = 0; i < 3; ++i) {
      double rowsum = 0.0;
      for (int j = 0; j < 3; ++j) rowsum += std::abs(t(i, j, k));
      row_sq += rowsum * rowsum;
      total += rowsum;
    }
    c.lipschitz_k(k) = std::sqrt(col_sq) + std::sqrt(row_sq);
    c.abs_sum_k(k) = total;
  }
  c.lipschitz_sq = c.lipschitz_k.squaredNorm();
  c.contraction = c.lipschitz_sq < 1.0;
  c.abs_sum_bounded = (c.abs_sum_k.array() <= 1.0).all();

  Vec3 p = c.abs_sum_k;
  for (int n = 1; n <= 64; ++n) {
    p = apply_v_tilde(t, p);
    if (!p.allFinite()) break;
    if ((p.array() < 1.0).all()) {
      c.shrink_step = n;
      break;
    }
  }

  if (c.abs_sum_bounded) {
    for (int k0 = 0; k0 < 3 && !c.unique_stable_origin; ++k0) {
      if (!(c.abs_sum_k(k0) < 1.0)) continue;
      bool couples_all = true;
      for (int k = 0; k < 3 && couples_all; ++k) {
        bool coupled = false;
        for (int i = 0; i < 3; ++i) {
          if (std::abs(t(i, k0, k)) + std::abs(t(k0, i, k)) != 0.0) {
            coupled = true;
            break;
          }
        }
        couples_all = coupled;
      }
      c.unique_stable_origin = couples_all;
    }
  }
  return c;
}

const char* certificate_regime(const StabilityCertificates& c) {
  if (c.contraction) return "contraction";
  if (c.unique_stable_origin) return "unique_stable_origin";
  if (c.shrink_step.has_value()) return "eventual_shrink";
  if (c.abs_sum_bounded) return "bounded_majorant";
  return "unclassified";
}

const char* terminal_name(Terminal t) {
  switch (t) {
    case Terminal::converged_to_zero:
      return "converged_to_zero";
    case Terminal::fixed_point:
      return "fixed_point";
    case Terminal::max_steps:
      return "max_steps";
    case Terminal::left_ball:
      return "left_ball";
  }
  return "unknown";
}

Trajectory iterate(const QqoTensor& t, const StateVec& f0, int max_steps,
                   double tol, const Tolerances& tols) {
  if (max_steps < 1) {
    throw std::invalid_argument("iterate: max_steps must be >= 1");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("iterate: tol must be positive");
  }
  Trajectory tr;
  Vec3 f = f0.f();
  tr.points.push_back(f);
  for (int n = 0; n < max_steps; ++n) {
    if (f.norm() <= tol) {
      tr.terminal = Terminal::converged_to_zero;
      return tr;
    }
    if (f.norm() > 1.0 + tols.ball_escape) {
      tr.terminal = Terminal::left_ball;
      return tr;
    }
    const Vec3 next = apply_v(t, f);
    if ((next - f).norm() <= tol) {
      tr.terminal = Terminal::fixed_point;
      return tr;
    }
    f = next;
    tr.points.push_back(f);
  }
  if (f.norm() <= tol) {
    tr.terminal = Terminal::converged_to_zero;
  } else if (f.norm() > 1.0 + tols.ball_escape) {
    tr.terminal = Terminal::left_ball;
  } else {
    tr.terminal = Terminal::max_steps;
  }
  return tr;
}

TildeOrbitProbe tilde_orbit_probe(const QqoTensor& t, int horizon,
                                  const Tolerances& tols) {
  if (horizon < 1) {
    throw std::invalid_argument("tilde_orbit_probe: horizon must be >= 1");
  }
  Vec3 p = certificates(t).abs_sum_k;
  TildeOrbitProbe probe;
  probe.bounded_up_to_horizon = true;
  probe.sup_seen = p.maxCoeff();
  for (int n = 0; n < horizon; ++n) {
    p = apply_v_tilde(t, p);
    if (!p.allFinite() || p.maxCoeff() > tols.tilde_escape) {
      probe.bounded_up_to_horizon = false;
      probe.sup_seen = p.allFinite()
                           ? std::max(probe.sup_seen, p.maxCoeff())
                           : std::numeric_limits<double>::infinity();
      return probe;
    }
    probe.sup_seen = std::max(probe.sup_seen, p.maxCoeff());
  }
  probe.converged_to_zero = (p.array() < tols.tilde_zero).all();
  return probe;
}

std::vector<Vec3> find_fixed_points(const QqoTensor& t,
                                    const std::vector<StateVec>& seeds,
                                    double tol, const Tolerances& tols) {
  std::vector<Vec3> found;
  for (const StateVec& s : seeds) {
    Vec3 f = s.f();
    bool diverged = false;
    for (int n = 0; n < 500; ++n) {
      const Vec3 v = apply_v(t, f);
      if (!v.allFinite() || v.norm() > tols.tilde_escape) {
        diverged = true;
        break;
      }
      f = 0.5 * f + 0.5 * v;
    }
    if (diverged) continue;
    if ((apply_v(t, f) - f).norm() > tol) continue;
    bool duplicate = false;
    for (const Vec3& g : found) {
      if ((g - f).norm() <= tols.dedupe) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) found.push_back(f);
  }
  return found;
}

}  // namespace qqo
