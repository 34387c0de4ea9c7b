// Copyright 2026 privclust developers
// SPDX-License-Identifier: Apache-2.0
#include "privclust/generator.hpp"

#include <algorithm>
#include <numeric>

namespace privclust {

namespace {

// Exact squared-distance comparison keeps Euclidean matrices metric: round
// every distance up to a multiple of 1/denom (ceil is subadditive).
Rational grid_distance(std::int64_t ax, std::int64_t ay, std::int64_t bx, std::int64_t by,
                       std::int64_t denom) {
  unsigned __int128 sq = static_cast<unsigned __int128>((ax - bx) * (ax - bx)) +
                         static_cast<unsigned __int128>((ay - by) * (ay - by));
  if (sq == 0) return Rational(0);
  unsigned __int128 rhs = sq * static_cast<unsigned __int128>(denom) *
                          static_cast<unsigned __int128>(denom);
  std::int64_t m = 1;
  unsigned __int128 x = 1;
  while (x * x < rhs) x <<= 1;
  unsigned __int128 lo = x >> 1, hi = x;
  while (lo < hi) {
    unsigned __int128 mid = lo + (hi - lo) / 2;
    if (mid * mid >= rhs)
      hi = mid;
    else
      lo = mid + 1;
  }
  m = static_cast<std::int64_t>(lo);
  return Rational(m, denom);
}

std::vector<Rational> euclidean_matrix(SplitMix& rng, int side, std::int64_t denom) {
  std::vector<std::pair<std::int64_t, std::int64_t>> pts;
  for (int i = 0; i < side; ++i) pts.push_back({rng.range(0, 30), rng.range(0, 30)});
  std::vector<Rational> m(side * side, Rational(0));
  for (int a = 0; a < side; ++a)
    for (int b = a + 1; b < side; ++b) {
      Rational d = grid_distance(pts[a].first, pts[a].second, pts[b].first, pts[b].second, denom);
      m[a * side + b] = d;
      m[b * side + a] = d;
    }
  return m;
}

// Random connected weighted graph, completed to a metric by shortest paths.
std::vector<Rational> graph_metric(SplitMix& rng, int side) {
  std::vector<std::vector<std::int64_t>> w(side, std::vector<std::int64_t>(side, 1 << 20));
  for (int i = 0; i < side; ++i) w[i][i] = 0;
  auto connect = [&](int a, int b, std::int64_t weight) {
    w[a][b] = std::min(w[a][b], weight);
    w[b][a] = w[a][b];
  };
  for (int i = 1; i < side; ++i) connect(i, static_cast<int>(rng.range(0, i - 1)), rng.range(1, 9));
  for (int i = 0; i < side; ++i)
    for (int j = i + 1; j < side; ++j)
      if (rng.chance(30)) connect(i, j, rng.range(1, 9));
  for (int via = 0; via < side; ++via)
    for (int a = 0; a < side; ++a)
      for (int b = 0; b < side; ++b)
        w[a][b] = std::min(w[a][b], w[a][via] + w[via][b]);
  std::vector<Rational> m(side * side, Rational(0));
  for (int a = 0; a < side; ++a)
    for (int b = 0; b < side; ++b) m[a * side + b] = Rational(w[a][b]);
  return m;
}

std::vector<int> color_assignment(SplitMix& rng, int n, int colors, ColorMode mode) {
  std::vector<int> counts(colors, 0);
  switch (mode) {
    case ColorMode::Balanced: {
      // Equal counts (quota 1 everywhere); n is trimmed by the caller.
      for (int c = 0; c < colors; ++c) counts[c] = n / colors;
      break;
    }
    case ColorMode::Skewed: {
      // One dominant color, at least one point of each.
      int rest = n - colors;
      for (int c = 0; c < colors; ++c) counts[c] = 1;
      counts[0] += rest;
      break;
    }
    case ColorMode::ForceQuotaOne: {
      // counts = quota * g with some quota 1: smallest color divides others.
      int g = std::max(1, n / (colors + 1));
      counts[colors - 1] = g;
      int rest = n - g;
      for (int c = 0; c < colors - 1; ++c) counts[c] = rest / (colors - 1);
      counts[0] += rest - (rest / (colors - 1)) * (colors - 1);
      break;
    }
    case ColorMode::General: {
      // Two colors with no quota equal to 1: counts 2 and 3 (quotas 2, 3,
      // one fairlet) at small scale, counts 4 and 6 (two fairlets) above.
      counts = n >= 10 ? std::vector<int>{4, 6} : std::vector<int>{2, 3};
      break;
    }
    case ColorMode::None:
      return {};
  }
  std::vector<int> assign;
  for (int c = 0; c < static_cast<int>(counts.size()); ++c)
    for (int i = 0; i < counts[c]; ++i) assign.push_back(c);
  // Deterministic shuffle.
  for (int i = static_cast<int>(assign.size()) - 1; i > 0; --i)
    std::swap(assign[i], assign[rng.range(0, i)]);
  return assign;
}

}  // namespace

Instance generate_instance(const GenSpec& spec) {
  SplitMix rng(spec.seed);
  Instance::Data d;
  int n = spec.num_points;

  // Colors first: some modes pin the point count.
  if (spec.color_mode == ColorMode::General) {
    n = n >= 10 ? 10 : 5;
  } else if (spec.color_mode == ColorMode::Balanced) {
    n = std::max(spec.num_colors, n / spec.num_colors * spec.num_colors);
  }
  d.num_points = n;
  if (spec.num_locations > 0) {
    d.locations_are_points = false;
    d.num_locations = spec.num_locations;
  }
  const int side = n + (d.locations_are_points ? 0 : d.num_locations);
  d.matrix = spec.metric == MetricKind::Euclidean ? euclidean_matrix(rng, side, 4)
                                                  : graph_metric(rng, side);

  if (spec.color_mode != ColorMode::None) {
    int colors = spec.color_mode == ColorMode::General ? 2 : std::max(2, spec.num_colors);
    d.colors = color_assignment(rng, n, colors, spec.color_mode);
    for (int c = 0; c < colors; ++c) d.color_names.push_back(std::string(1, static_cast<char>('a' + c)));
  }

  d.k = std::max(1, spec.k);
  d.outlier_budget = std::max<std::int64_t>(0, spec.outliers);

  // Clamp the privacy bound into the admissible regime.
  std::int64_t ell = std::max<std::int64_t>(0, spec.ell);
  if (ell > 0) {
    std::int64_t room = (n - d.outlier_budget) / d.k;
    ell = room >= 1 ? std::min(ell, room) : 0;
    if (!d.colors.empty()) {
      // Fair variants need k * (ell rounded up to the block) <= n.
      std::vector<std::int64_t> counts(d.color_names.size(), 0);
      for (int c : d.colors) ++counts[c];
      std::int64_t g = 0;
      for (std::int64_t c : counts) g = std::gcd(g, c);
      std::int64_t block = 0;
      for (std::int64_t c : counts) block += c / g;
      while (ell > 1 && d.k * ((ell + block - 1) / block * block) > n) --ell;
      if (d.k * ((ell + block - 1) / block * block) > n) ell = 0;
    }
  }
  d.lower_bound = ell;

  if (spec.capacities) {
    const int m = d.locations_are_points ? n : d.num_locations;
    std::int64_t lo = std::max<std::int64_t>(std::max<std::int64_t>(1, ell), (n + d.k - 1) / d.k);
    std::vector<std::int64_t> caps;
    if (spec.uniform_caps) {
      std::int64_t u = rng.range(lo, std::max<std::int64_t>(lo, n));
      caps.assign(m, u);
    } else {
      for (int l = 0; l < m; ++l) caps.push_back(rng.range(lo, std::max<std::int64_t>(lo, n)));
    }
    d.capacities = std::move(caps);
    d.capacities_uniform = spec.uniform_caps;
  }

  if (spec.color_bounds && !d.colors.empty()) {
    std::vector<std::int64_t> counts(d.color_names.size(), 0);
    for (int c : d.colors) ++counts[c];
    std::vector<std::int64_t> bounds;
    std::int64_t total = 0;
    for (std::size_t c = 0; c < counts.size(); ++c) {
      std::int64_t cap = std::min<std::int64_t>(counts[c] / d.k, 2);
      std::int64_t b = cap >= 1 ? rng.range(0, cap) : 0;
      bounds.push_back(b);
      total += b;
    }
    if (total == 0 && counts[0] / d.k >= 1) bounds[0] = 1;
    d.color_lower_bounds = std::move(bounds);
  }

  if (spec.opening_cost) d.opening_cost = Rational(rng.range(1, 12));

  return Instance(std::move(d));
}

}  // namespace privclust
