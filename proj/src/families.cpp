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

#include "qqo/families.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qqo {

QqoTensor diagonal_to_tensor(const DiagonalQO& d) {
  QqoTensor t;
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) t.b[i][i][k] = d.b(i, k);
  }
  return t;
}

QqoTensor abc_to_tensor(const AbcParams& p) {
  return diagonal_to_tensor(abc_to_diagonal(p));
}

DiagonalQO abc_to_diagonal(const AbcParams& p) {
  DiagonalQO d;
  d.b(0, 0) = 1.0;
  d.b(1, 1) = p.a;
  d.b(2, 1) = p.b;
  d.b(2, 2) = p.c;
  return d;
}

namespace {

double diag_bound_value(const DiagonalQO& d) {
  double value = 0.0;
  for (int k = 0; k < 3; ++k) {
    double best = 0.0;
    for (int i = 0; i < 3; ++i) best = std::max(best, d.b(i, k) * d.b(i, k));
    value += best;
  }
  return value;
}

}  // namespace

CertValue diag_positivity_bound(const DiagonalQO& d, const Tolerances& tol) {
  const double value = diag_bound_value(d);
  return {value <= 1.0 + tol.cert_slack, value};
}

CertValue diag_stability_bound(const DiagonalQO& d, const Tolerances& tol) {
  const double value = diag_bound_value(d);
  return {value < 1.0 - tol.cert_slack, value};
}

CertValue abc_positivity_bound(const AbcParams& p, const Tolerances& tol) {
  const double value = std::max(p.a * p.a, p.b * p.b) + p.c * p.c;
  return {value <= 1.0 + tol.cert_slack, value};
}

AbcKsObstruction abc_ks_obstruction(const AbcParams& p,
                                    const Tolerances& tol) {
  AbcKsObstruction out;
  out.trace_bound = p.a * p.a + 2.0 * std::max(p.b * p.b, p.c * p.c);
  out.abs_sum = std::abs(p.a) + std::abs(p.b);
  out.proved_not_ks =
      abc_positivity_bound(p, tol).ok && out.abs_sum > 1.0 + tol.cert_slack;
  return out;
}

AbcClassification abc_classify(const AbcParams& p, const StateVec& f0,
                               const Tolerances& tol) {
  if (!abc_positivity_bound(p, tol).ok) {
    throw std::invalid_argument(
        "abc_classify: positivity bound fails, the limit theorem does not "
        "apply");
  }
  const Vec3 f = f0.f();
  const double bt = tol.case_boundary;
  AbcClassification out;

  // (i) start at one of the universal fixed points: stays there.
  if (f.norm() <= bt) {
    out.case_label = "i";
    out.predicted_limit = Vec3::Zero();
    return out;
  }
  if ((f - Vec3::UnitX()).norm() <= bt) {
    out.case_label = "i";
    out.predicted_limit = Vec3::UnitX();
    return out;
  }
  // (ii) |f1| = 1 forces f = (+-1, 0, 0), which maps to (1,0,0) in one step.
  if (std::abs(std::abs(f(0)) - 1.0) <= bt) {
    out.case_label = "ii";
    out.predicted_limit = Vec3::UnitX();
    return out;
  }
  // (iii) |c| = 1 (the bound then forces a = b = 0): the third axis carries
  // a period-free fixed point (0,0,c); everything else collapses.
  if (std::abs(std::abs(p.c) - 1.0) <= bt) {
    out.case_label = "iii";
    if (std::abs(std::abs(f(2)) - 1.0) <= bt) {
      out.predicted_limit = Vec3(0.0, 0.0, p.c);
    } else {
      out.predicted_limit = Vec3::Zero();
    }
    return out;
  }
  // (iv) |a| = 1: the second coordinate evolves as a * base^(2^(n-1)) with
  // base = a f2^2 + b f3^2.  Base +1 pins the limit (0, a, 0); base -1 is
  // outside the theorem's statement; |base| < 1 collapses to zero.
  if (std::abs(std::abs(p.a) - 1.0) <= bt) {
    const double base = p.a * f(1) * f(1) + p.b * f(2) * f(2);
    if (std::abs(base - 1.0) <= bt) {
      out.case_label = "iv";
      out.predicted_limit = Vec3(0.0, p.a, 0.0);
      return out;
    }
    if (std::abs(base + 1.0) <= bt) {
      out.case_label = "silent";
      return out;
    }
    if (std::abs(base) < 1.0) {
      out.case_label = "iv";
      out.predicted_limit = Vec3::Zero();
      return out;
    }
    out.case_label = "silent";
    return out;
  }
  // (v) |b| = 1 with |a| < 1 (the bound then forces c = 0): collapse.
  if (std::abs(std::abs(p.b) - 1.0) <= bt) {
    out.case_label = "v";
    out.predicted_limit = Vec3::Zero();
    return out;
  }
  // (vi) strict interior: global collapse to the origin.
  if (std::max(p.a * p.a, p.b * p.b) + p.c * p.c < 1.0 - bt) {
    out.case_label = "vi";
    out.predicted_limit = Vec3::Zero();
    return out;
  }
  out.case_label = "silent";
  return out;
}

const char* family_regime(const AbcParams& p, const Tolerances& tol) {
  if (!abc_positivity_bound(p, tol).ok) return "bound_violated";
  const double bt = tol.case_boundary;
  if (std::abs(std::abs(p.c) - 1.0) <= bt) return "iii";
  if (std::abs(std::abs(p.a) - 1.0) <= bt) return "iv";
  if (std::abs(std::abs(p.b) - 1.0) <= bt) return "v";
  if (std::max(p.a * p.a, p.b * p.b) + p.c * p.c < 1.0 - bt) return "vi";
  return "boundary";
}

}  // namespace qqo
