// Copyright 2026 privclust developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>

#include "privclust/instance.hpp"

namespace privclust {

/// Deterministic splittable RNG; identical sequences on every platform.
class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::int64_t range(std::int64_t lo, std::int64_t hi) {  // inclusive
    return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(int percent) { return range(0, 99) < percent; }

 private:
  std::uint64_t state_;
};

enum class MetricKind { Euclidean, GraphShortestPath };
enum class ColorMode { None, Balanced, Skewed, ForceQuotaOne, General };

struct GenSpec {
  std::uint64_t seed = 1;
  int num_points = 6;
  int num_locations = 0;  // 0 = locations are the points
  MetricKind metric = MetricKind::Euclidean;
  ColorMode color_mode = ColorMode::None;
  int num_colors = 2;
  int k = 2;
  std::int64_t ell = 0;
  std::int64_t outliers = 0;
  bool capacities = false;
  bool uniform_caps = true;
  bool color_bounds = false;
  bool opening_cost = false;
};

/// Random instance with exact rational distances. The constraint parameters
/// are clamped into the structurally admissible regime (pigeonhole bounds,
/// ell <= u, quota-consistent color counts), so generated instances always
/// construct.
Instance generate_instance(const GenSpec& spec);

}  // namespace privclust
