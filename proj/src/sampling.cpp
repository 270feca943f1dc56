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

#include "qqo/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace qqo {

double SampleRng::uniform() {
  // 53 high bits -> [0, 1).
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double SampleRng::uniform_sym() { return 2.0 * uniform() - 1.0; }

double SampleRng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller; u1 is kept away from zero.
  const double u1 = (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

Vec3 SampleRng::sphere_point() {
  while (true) {
    Vec3 g(gaussian(), gaussian(), gaussian());
    const double n = g.norm();
    if (n > 1e-12) return g / n;
  }
}

Vec3 SampleRng::ball_point() {
  const Vec3 dir = sphere_point();
  const double r = std::cbrt(uniform());
  return r * dir;
}

CVec3 SampleRng::complex_gaussian3() {
  CVec3 w;
  for (int k = 0; k < 3; ++k) {
    const double re = gaussian();
    const double im = gaussian();
    w(k) = cd{re, im};
  }
  return w;
}

std::vector<Vec3> sphere_grid(int n) {
  if (n < 6) throw std::invalid_argument("sphere_grid needs n >= 6");
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < 3; ++k) {
    Vec3 e = Vec3::Zero();
    e(k) = 1.0;
    pts.push_back(e);
    pts.push_back(-e);
  }
  const int m = n - 6;
  const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < m; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / m;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double a = golden_angle * i;
    pts.emplace_back(r * std::cos(a), r * std::sin(a), z);
  }
  return pts;
}

std::vector<Vec3> ball_grid(int n_per_axis) {
  if (n_per_axis < 2) throw std::invalid_argument("ball_grid needs n >= 2");
  std::vector<Vec3> pts;
  const int n = n_per_axis;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        Vec3 f(-1.0 + 2.0 * i / (n - 1), -1.0 + 2.0 * j / (n - 1),
               -1.0 + 2.0 * k / (n - 1));
        if (f.norm() <= 1.0) pts.push_back(f);
      }
    }
  }
  pts.push_back(Vec3::Zero());
  for (int k = 0; k < 3; ++k) {
    Vec3 e = Vec3::Zero();
    e(k) = 1.0;
    pts.push_back(e);
    pts.push_back(-e);
  }
  return pts;
}

}  // namespace qqo
