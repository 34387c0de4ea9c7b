// Copyright 2026 privclust developers
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "privclust/flow.hpp"

using namespace privclust;

namespace {

// Brute-force min cut: minimum over all s-side subsets of crossing capacity.
std::int64_t brute_min_cut(const FlowNetwork& net) {
  const int n = net.num_nodes();
  std::int64_t best = INT64_MAX;
  for (int mask = 0; mask < (1 << n); ++mask) {
    if (!(mask >> net.source() & 1)) continue;
    if (mask >> net.sink() & 1) continue;
    std::int64_t cut = 0;
    for (const auto& a : net.arcs())
      if ((mask >> a.from & 1) && !(mask >> a.to & 1)) cut += a.capacity;
    best = std::min(best, cut);
  }
  return best;
}

FlowNetwork random_net(fixtures::Rng& rng, int n) {
  FlowNetwork net(n, 0, n - 1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b || b == 0 || a == n - 1) continue;
      if (rng.below(100) < 45) net.add_arc(a, b, rng.range(0, 4));
    }
  return net;
}

}  // namespace

TEST_CASE("max flow on pinned examples") {
  FlowNetwork single(2, 0, 1);
  single.add_arc(0, 1, 3);
  CHECK(max_flow(single).value == 3);

  // s->a cap 2, s->b cap 2, a->t cap 1, b->t cap 5: min cut enumeration gives 3.
  FlowNetwork diamond(4, 0, 3);
  diamond.add_arc(0, 1, 2);
  diamond.add_arc(0, 2, 2);
  diamond.add_arc(1, 3, 1);
  diamond.add_arc(2, 3, 5);
  FlowResult fr = max_flow(diamond);
  CHECK(fr.value == 3);
  CHECK_FALSE(fr.all_sink_arcs_saturated());  // b->t keeps slack

  FlowNetwork no_path(3, 0, 2);
  no_path.add_arc(0, 1, 4);
  CHECK(max_flow(no_path).value == 0);
}

TEST_CASE("residual-unreachable set on pinned examples") {
  FlowNetwork single(2, 0, 1);
  single.add_arc(0, 1, 3);
  FlowResult fr = max_flow(single);
  auto unreach = residual_unreachable(single, fr);
  CHECK(unreach == std::vector<bool>{false, true});

  FlowNetwork zero(2, 0, 1);
  zero.add_arc(0, 1, 0);
  fr = max_flow(zero);
  CHECK(residual_unreachable(zero, fr) == std::vector<bool>{false, true});

  // Every max flow sends 1 through a and 2 through b, so s->a keeps slack
  // while s->b saturates: the unreachable side is {b, t} (cut value 3).
  FlowNetwork diamond(4, 0, 3);
  diamond.add_arc(0, 1, 2);
  diamond.add_arc(0, 2, 2);
  diamond.add_arc(1, 3, 1);
  diamond.add_arc(2, 3, 5);
  fr = max_flow(diamond);
  auto v = residual_unreachable(diamond, fr);
  CHECK(v == std::vector<bool>{false, false, true, true});
}

TEST_CASE("non-maximum flow input is rejected by cut analysis") {
  FlowNetwork single(2, 0, 1);
  single.add_arc(0, 1, 3);
  FlowResult fake;
  fake.flow = {1};
  fake.value = 1;
  CHECK_THROWS_AS(residual_unreachable(single, fake), MisuseError);
}

TEST_CASE("max flow equals brute-force min cut on 500 random networks") {
  fixtures::Rng rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    int n = static_cast<int>(rng.range(3, 8));
    FlowNetwork net = random_net(rng, n);
    FlowResult fr = max_flow(net);
    CHECK(fr.value == brute_min_cut(net));

    // The unreachable set certifies a minimum cut of the same value.
    auto unreach = residual_unreachable(net, fr);
    std::int64_t cut = 0;
    for (const auto& a : net.arcs())
      if (!unreach[a.from] && unreach[a.to]) cut += a.capacity;
    CHECK(cut == fr.value);

    // Conservation and capacity at every node/arc.
    std::vector<std::int64_t> balance(n, 0);
    const auto& arcs = net.arcs();
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      CHECK(fr.flow[i] >= 0);
      CHECK(fr.flow[i] <= arcs[i].capacity);
      balance[arcs[i].from] -= fr.flow[i];
      balance[arcs[i].to] += fr.flow[i];
    }
    for (int v2 = 0; v2 < n; ++v2)
      if (v2 != net.source() && v2 != net.sink()) CHECK(balance[v2] == 0);
  }
}

TEST_CASE("flows decompose into at most |E| integral s-t paths") {
  fixtures::Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    int n = static_cast<int>(rng.range(3, 7));
    FlowNetwork net = random_net(rng, n);
    FlowResult fr = max_flow(net);
    auto residual = fr.flow;
    const auto& arcs = net.arcs();
    std::int64_t decomposed = 0;
    int paths = 0;
    while (true) {
      // Walk greedily from s along arcs with remaining flow.
      std::vector<int> arc_path;
      int at = net.source();
      std::vector<bool> seen(n, false);
      while (at != net.sink()) {
        seen[at] = true;
        int chosen = -1;
        for (std::size_t i = 0; i < arcs.size(); ++i)
          if (arcs[i].from == at && residual[i] > 0 && !seen[arcs[i].to]) {
            chosen = static_cast<int>(i);
            break;
          }
        if (chosen == -1) break;
        arc_path.push_back(chosen);
        at = arcs[chosen].to;
      }
      if (at != net.sink() || arc_path.empty()) break;
      std::int64_t amt = INT64_MAX;
      for (int i : arc_path) amt = std::min(amt, residual[i]);
      for (int i : arc_path) residual[i] -= amt;
      decomposed += amt;
      ++paths;
      CHECK(paths <= static_cast<int>(arcs.size()));
    }
    CHECK(decomposed == fr.value);
  }
}

TEST_CASE("network construction rejects malformed arcs") {
  FlowNetwork net(3, 0, 2);
  CHECK_THROWS_AS(net.add_arc(1, 0, 1), MisuseError);  // into source
  CHECK_THROWS_AS(net.add_arc(2, 1, 1), MisuseError);  // out of sink
  CHECK_THROWS_AS(net.add_arc(1, 1, 1), MisuseError);  // self loop
  CHECK_THROWS_AS(net.add_arc(0, 1, -2), MisuseError);
  net.add_arc(0, 1, 2);
  CHECK_THROWS_AS(net.add_arc(0, 1, 1), MisuseError);  // duplicate pair
}
