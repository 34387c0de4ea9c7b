// Copyright 2026 privclust developers
// SPDX-License-Identifier: Apache-2.0
#include "privclust/matching.hpp"

#include <algorithm>
#include <set>

#include "privclust/errors.hpp"

namespace privclust {

namespace {

// Kuhn's augmenting-path matching over the <=threshold edge set, scanning
// vertices in index order so results are deterministic.
struct Matcher {
  const BipartiteWeights& bw;
  const Rational& threshold;
  std::vector<int> match_left;   // left -> right
  std::vector<int> match_right;  // right -> left
  std::vector<bool> visited_right;

  Matcher(const BipartiteWeights& b, const Rational& t)
      : bw(b), threshold(t), match_left(b.left_size(), -1),
        match_right(b.right_size(), -1), visited_right(b.right_size(), false) {}

  bool edge(int l, int r) const { return bw.weight(l, r) <= threshold; }

  bool try_augment(int l) {
    for (int r = 0; r < bw.right_size(); ++r) {
      if (!edge(l, r) || visited_right[r]) continue;
      visited_right[r] = true;
      if (match_right[r] == -1 || try_augment(match_right[r])) {
        match_left[l] = r;
        match_right[r] = l;
        return true;
      }
    }
    return false;
  }

  int run() {
    int matched = 0;
    for (int l = 0; l < bw.left_size(); ++l) {
      std::fill(visited_right.begin(), visited_right.end(), false);
      if (try_augment(l)) ++matched;
    }
    return matched;
  }

  // Hall certificate: unmatched lefts plus all lefts reachable from them by
  // alternating paths. Their joint neighborhood is exactly the reached
  // rights, all matched, hence one smaller per unmatched left.
  std::vector<int> deficient_set() const {
    std::vector<bool> left_in(bw.left_size(), false), right_in(bw.right_size(), false);
    std::vector<int> stack;
    for (int l = 0; l < bw.left_size(); ++l)
      if (match_left[l] == -1) {
        left_in[l] = true;
        stack.push_back(l);
      }
    while (!stack.empty()) {
      int l = stack.back();
      stack.pop_back();
      for (int r = 0; r < bw.right_size(); ++r) {
        if (!edge(l, r) || right_in[r]) continue;
        right_in[r] = true;
        int l2 = match_right[r];
        if (l2 != -1 && !left_in[l2]) {
          left_in[l2] = true;
          stack.push_back(l2);
        }
      }
    }
    std::vector<int> out;
    for (int l = 0; l < bw.left_size(); ++l)
      if (left_in[l]) out.push_back(l);
    return out;
  }
};

}  // namespace

MatchingResult perfect_matching_exists(const BipartiteWeights& bw, const Rational& threshold) {
  if (bw.left_size() != bw.right_size())
    throw MisuseError("perfect matching needs equal side sizes");
  Matcher m(bw, threshold);
  int matched = m.run();
  MatchingResult res;
  res.exists = matched == bw.left_size();
  if (res.exists) {
    res.match_of_left = m.match_left;
  } else {
    res.match_of_left = m.match_left;
    res.deficient_left = m.deficient_set();
    internal_check(!res.deficient_left.empty(), "missing Hall certificate");
  }
  return res;
}

std::optional<BottleneckMatching> bottleneck_perfect_matching(const BipartiteWeights& bw) {
  if (bw.left_size() != bw.right_size())
    throw MisuseError("perfect matching needs equal side sizes");
  if (bw.left_size() == 0) return BottleneckMatching{Rational(0), {}};
  std::set<Rational> distinct;
  for (int l = 0; l < bw.left_size(); ++l)
    for (int r = 0; r < bw.right_size(); ++r) distinct.insert(bw.weight(l, r));
  std::vector<Rational> weights(distinct.begin(), distinct.end());

  // Existence is monotone in the threshold, so binary search for the least
  // weight that works instead of scanning all of them.
  int lo = 0, hi = static_cast<int>(weights.size()) - 1;
  if (!perfect_matching_exists(bw, weights[hi]).exists) return std::nullopt;
  while (lo < hi) {
    int mid = lo + (hi - lo) / 2;
    if (perfect_matching_exists(bw, weights[mid]).exists)
      hi = mid;
    else
      lo = mid + 1;
  }
  MatchingResult final_res = perfect_matching_exists(bw, weights[lo]);
  internal_check(final_res.exists, "bottleneck search lost the matching");
  return BottleneckMatching{weights[lo], final_res.match_of_left};
}

}  // namespace privclust
