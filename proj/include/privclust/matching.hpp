// Copyright 2026 privclust developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "privclust/rational.hpp"

namespace privclust {

/// Complete bipartite weight table between left slots and right points.
class BipartiteWeights {
 public:
  BipartiteWeights(int left, int right)
      : left_(left), right_(right), w_(static_cast<std::size_t>(left) * right) {}

  int left_size() const { return left_; }
  int right_size() const { return right_; }
  Rational& weight(int l, int r) { return w_[static_cast<std::size_t>(l) * right_ + r]; }
  const Rational& weight(int l, int r) const {
    return w_[static_cast<std::size_t>(l) * right_ + r];
  }

 private:
  int left_, right_;
  std::vector<Rational> w_;
};

/// Outcome of a threshold matching query. When no perfect matching exists,
/// `deficient_left` is a Hall certificate: a left set whose neighborhood
/// under the threshold is strictly smaller than the set itself.
struct MatchingResult {
  bool exists = false;
  std::vector<int> match_of_left;   // right index per left, -1 if unmatched
  std::vector<int> deficient_left;  // nonempty exactly when !exists
};

/// Decides whether a perfect matching exists using only edges of weight
/// <= threshold. Requires equal side sizes.
MatchingResult perfect_matching_exists(const BipartiteWeights& bw, const Rational& threshold);

/// The least threshold w* at which a perfect matching exists, found by
/// binary search over the distinct weights, together with one matching.
/// Returns nullopt when even the full edge set admits none (impossible for
/// equal-sized complete tables, kept for safety).
struct BottleneckMatching {
  Rational threshold;
  std::vector<int> match_of_left;
};
std::optional<BottleneckMatching> bottleneck_perfect_matching(const BipartiteWeights& bw);

}  // namespace privclust
