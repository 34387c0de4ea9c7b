// Copyright 2026 privclust developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "privclust/instance.hpp"

namespace fixtures {

using privclust::Instance;
using privclust::Rational;

struct LineSpec {
  std::vector<std::int64_t> coords;
  int k = 1;
  std::int64_t ell = 0;
  std::int64_t outliers = 0;
  std::vector<std::int64_t> loc_coords;  // empty = L equals P
  std::optional<std::vector<std::int64_t>> capacities;
  bool capacities_uniform = false;
  std::vector<std::string> color_names;
  std::vector<int> colors;
  std::optional<std::vector<std::int64_t>> color_ell;
  std::optional<Rational> opening_cost;
};

inline Instance line_instance(const LineSpec& s) {
  Instance::Data d;
  d.num_points = static_cast<int>(s.coords.size());
  std::vector<std::int64_t> all = s.coords;
  if (s.loc_coords.empty()) {
    d.locations_are_points = true;
  } else {
    d.locations_are_points = false;
    d.num_locations = static_cast<int>(s.loc_coords.size());
    all.insert(all.end(), s.loc_coords.begin(), s.loc_coords.end());
  }
  const int side = static_cast<int>(all.size());
  d.matrix.assign(side * side, Rational(0));
  for (int a = 0; a < side; ++a)
    for (int b = 0; b < side; ++b)
      d.matrix[a * side + b] = Rational(all[a] > all[b] ? all[a] - all[b] : all[b] - all[a]);
  d.k = s.k;
  d.lower_bound = s.ell;
  d.outlier_budget = s.outliers;
  d.capacities = s.capacities;
  d.capacities_uniform = s.capacities_uniform;
  d.color_names = s.color_names;
  d.colors = s.colors;
  d.color_lower_bounds = s.color_ell;
  d.opening_cost = s.opening_cost;
  return Instance(std::move(d));
}

// Line metric at {0, 1, 10, 11}, L = P.
inline Instance i1(int k = 2, std::int64_t ell = 0, std::int64_t o = 0) {
  return line_instance({.coords = {0, 1, 10, 11}, .k = k, .ell = ell, .outliers = o});
}

// i1 plus alternating colors red, blue, red, blue.
inline Instance i2(int k = 2, std::int64_t ell = 0,
                   std::optional<std::vector<std::int64_t>> color_ell = std::nullopt,
                   std::optional<std::vector<std::int64_t>> caps = std::nullopt) {
  return line_instance({.coords = {0, 1, 10, 11},
                        .k = k,
                        .ell = ell,
                        .capacities = caps,
                        .capacities_uniform = caps.has_value(),
                        .color_names = {"red", "blue"},
                        .colors = {0, 1, 0, 1},
                        .color_ell = color_ell});
}

// Line metric at {0, 1, 2, 100}, L = P.
inline Instance i3(int k = 1, std::int64_t ell = 0, std::int64_t o = 0) {
  return line_instance({.coords = {0, 1, 2, 100}, .k = k, .ell = ell, .outliers = o});
}

// Tiny deterministic RNG for property tests.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform in [0, bound)
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }
  std::int64_t range(std::int64_t lo, std::int64_t hi) {  // inclusive
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
};

}  // namespace fixtures
