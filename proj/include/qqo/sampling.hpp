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

#include <atomic>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include "qqo/types.hpp"

namespace qqo {

// Deterministic sample stream.  The distribution transforms are spelled out
// on top of mt19937_64 (instead of <random> distributions) so that a given
// seed produces the same sequence on every platform.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : eng_(seed) {}

  double uniform();      // [0, 1)
  double uniform_sym();  // [-1, 1)
  double gaussian();     // standard normal, Box-Muller with cached spare
  Vec3 sphere_point();   // uniform on the unit sphere
  Vec3 ball_point();     // uniform in the closed unit ball
  CVec3 complex_gaussian3();

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Deterministic sphere grid: the six axis unit vectors followed by a
// Fibonacci lattice filling the remaining n - 6 slots.  The axis points are
// listed first so that prefixes of the list remain useful candidate sets.
std::vector<Vec3> sphere_grid(int n);

// Cartesian lattice over [-1, 1]^3 filtered to the unit ball, followed by
// the origin and the six axis unit vectors.  For even n_per_axis the
// lattice itself has no zero coordinate, so the appended canonical points
// are what lets damped fixed-point iteration land on axis fixed points.
std::vector<Vec3> ball_grid(int n_per_axis);

struct Extremum {
  double value = 0.0;
  std::size_t index = 0;
};

namespace detail {

template <class Eval, class Better>
Extremum parallel_extremum(std::size_t n, int workers, Eval&& eval,
                           Better&& better) {
  // Fixed-size blocks are reduced independently and merged in block order,
  // so the result is identical for every worker count.
  constexpr std::size_t kBlock = 8192;
  if (n == 0) throw std::invalid_argument("parallel_extremum: empty range");
  const std::size_t nblocks = (n + kBlock - 1) / kBlock;
  std::vector<Extremum> block_best(nblocks);

  auto run_block = [&](std::size_t bi) {
    const std::size_t lo = bi * kBlock;
    const std::size_t hi = std::min(n, lo + kBlock);
    Extremum best{eval(lo), lo};
    for (std::size_t i = lo + 1; i < hi; ++i) {
      const double val = eval(i);
      if (better(val, best.value)) best = {val, i};
    }
    block_best[bi] = best;
  };

  const int nw = std::min<std::size_t>(std::max(workers, 1), nblocks);
  if (nw <= 1) {
    for (std::size_t bi = 0; bi < nblocks; ++bi) run_block(bi);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (int t = 0; t < nw; ++t) {
      pool.emplace_back([&] {
        for (std::size_t bi = next.fetch_add(1); bi < nblocks;
             bi = next.fetch_add(1)) {
          run_block(bi);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  Extremum best = block_best[0];
  for (std::size_t bi = 1; bi < nblocks; ++bi) {
    if (better(block_best[bi].value, best.value)) best = block_best[bi];
  }
  return best;
}

}  // namespace detail

template <class Eval>
Extremum parallel_argmax(std::size_t n, int workers, Eval&& eval) {
  return detail::parallel_extremum(n, workers, std::forward<Eval>(eval),
                                   [](double a, double b) { return a > b; });
}

template <class Eval>
Extremum parallel_argmin(std::size_t n, int workers, Eval&& eval) {
  return detail::parallel_extremum(n, workers, std::forward<Eval>(eval),
                                   [](double a, double b) { return a < b; });
}

}  // namespace qqo
