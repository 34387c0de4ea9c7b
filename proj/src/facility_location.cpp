// Copyright 2026 privclust developers
// SPDX-License-Identifier: Apache-2.0
#include "privclust/facility_location.hpp"

#include <algorithm>

namespace privclust {

FLSolution fl_evaluate(const Instance& inst, std::vector<Cluster> clusters) {
  FLSolution sol;
  std::vector<bool> seen(inst.num_points(), false);
  for (Cluster& c : clusters) {
    std::sort(c.members.begin(), c.members.end());
    for (int p : c.members) {
      if (p < 0 || p >= inst.num_points() || seen[p])
        throw MalformedSolutionError("facility solution reuses or misses a point");
      seen[p] = true;
      sol.connection_cost += inst.point_loc(p, c.location);
    }
  }
  for (int p = 0; p < inst.num_points(); ++p)
    if (!seen[p]) throw MalformedSolutionError("facility solution leaves a point unassigned");
  if (!inst.has_opening_cost())
    throw InvalidInstanceError("facility solution needs an opening cost");
  sol.opening_cost = inst.opening_cost() * Rational(static_cast<std::int64_t>(clusters.size()));
  sol.total_cost = sol.connection_cost + sol.opening_cost;
  sol.clusters = std::move(clusters);
  return sol;
}

FLSolution privatize_fl(const Instance& inst, const FLSolution& base) {
  if (!inst.locations_are_points())
    throw MisuseError("capacitated facility pipeline requires P = L");
  if (!inst.has_capacities() || !inst.capacities_uniform())
    throw InvalidInstanceError("capacitated facility pipeline needs uniform capacities");
  if (!inst.has_opening_cost())
    throw InvalidInstanceError("capacitated facility pipeline needs an opening cost");
  const std::int64_t u = inst.capacity(0);
  const std::int64_t ell = inst.lower_bound();
  if (2 * ell > u)
    throw MisuseError("capacitated facility pipeline requires 2*ell <= u");
  for (const Cluster& c : base.clusters)
    if (static_cast<std::int64_t>(c.members.size()) < ell)
      throw MisuseError("base solution is not private");

  // Repack every base cluster at its own location: a remainder slot first,
  // then full slots of size u. Shifting points between colocated slots is
  // free, so a short remainder slot borrows from the first full one until
  // both hold at least ceil(u/2) >= ell.
  struct Slot {
    int location;
    std::vector<int> members;
    int base_cluster;
  };
  std::vector<Slot> slots;
  const int k_base = static_cast<int>(base.clusters.size());
  std::int64_t full_slots = 0;
  for (int i = 0; i < k_base; ++i) {
    const Cluster& c = base.clusters[i];
    const std::int64_t size = static_cast<std::int64_t>(c.members.size());
    const std::int64_t rem = size % u;
    Slot first{c.location, {}, i};
    std::int64_t cursor = 0;
    for (; cursor < rem; ++cursor) first.members.push_back(c.members[cursor]);
    std::vector<Slot> fulls;
    while (cursor < size) {
      Slot s{c.location, {}, i};
      for (std::int64_t j = 0; j < u; ++j) s.members.push_back(c.members[cursor++]);
      fulls.push_back(std::move(s));
    }
    full_slots += static_cast<std::int64_t>(fulls.size());
    if (!fulls.empty() && static_cast<std::int64_t>(first.members.size()) < ell) {
      std::int64_t want = (u + 1) / 2 - static_cast<std::int64_t>(first.members.size());
      for (std::int64_t j = 0; j < want; ++j) {
        first.members.push_back(fulls[0].members.back());
        fulls[0].members.pop_back();
      }
    }
    internal_check(fulls.empty() || static_cast<std::int64_t>(first.members.size()) >= ell,
                   "remainder slot still below the lower bound");
    slots.push_back(std::move(first));
    for (Slot& s : fulls) slots.push_back(std::move(s));
  }
  internal_check(static_cast<std::int64_t>(slots.size()) <=
                     k_base + static_cast<std::int64_t>(inst.num_points()) / u,
                 "slot count exceeded base opens plus floor(n/u)");

  // De-soften: re-center each slot at the member minimizing its connection
  // cost; distinct slots have disjoint members, so centers stay distinct.
  std::vector<Cluster> out;
  for (const Slot& s : slots) {
    internal_check(static_cast<std::int64_t>(s.members.size()) >= ell &&
                       static_cast<std::int64_t>(s.members.size()) <= u,
                   "slot size escaped [ell, u]");
    int best = -1;
    Rational best_cost(0);
    for (int candidate : s.members) {
      Rational cost(0);
      for (int p : s.members) cost += inst.point_point(p, candidate);
      if (best == -1 || cost < best_cost) {
        best = candidate;
        best_cost = cost;
      }
    }
    // Re-centering at most doubles this slot's cost against the base centers.
    Rational base_cost(0);
    for (int p : s.members)
      base_cost += inst.point_loc(p, base.clusters[s.base_cluster].location);
    internal_check(best_cost <= base_cost + base_cost,
                   "re-centering more than doubled a slot's cost");
    out.push_back({best, s.members});
  }
  std::sort(out.begin(), out.end(),
            [](const Cluster& a, const Cluster& b) { return a.location < b.location; });
  return fl_evaluate(inst, std::move(out));
}

// ---------------------------------------------------------------------------
// Exact oracle: subset enumeration + min-cost assignment with lower bounds.
// ---------------------------------------------------------------------------

namespace {

struct CostArc {
  int from, to;
  std::int64_t cap;
  Rational cost;
};

// Successive shortest augmenting paths with Bellman–Ford distances; sizes
// here are tiny so no potentials are needed.
struct MinCostFlow {
  int n;
  std::vector<CostArc> arcs;        // forward arcs; arc i pairs with back i
  std::vector<std::int64_t> flow;

  explicit MinCostFlow(int nodes) : n(nodes) {}
  int add(int from, int to, std::int64_t cap, Rational cost) {
    arcs.push_back({from, to, cap, cost});
    flow.push_back(0);
    return static_cast<int>(arcs.size()) - 1;
  }

  // Sends up to `want` units s->t at minimum cost; returns the amount sent.
  std::int64_t run(int s, int t, std::int64_t want) {
    std::int64_t sent = 0;
    while (sent < want) {
      std::vector<Rational> dist(n, Rational(0));
      std::vector<bool> ok(n, false);
      std::vector<std::pair<int, bool>> pred(n, {-1, true});
      ok[s] = true;
      for (int round = 0; round < n; ++round) {
        bool changed = false;
        for (std::size_t i = 0; i < arcs.size(); ++i) {
          const CostArc& a = arcs[i];
          if (ok[a.from] && flow[i] < a.cap) {
            Rational nd = dist[a.from] + a.cost;
            if (!ok[a.to] || nd < dist[a.to]) {
              ok[a.to] = true;
              dist[a.to] = nd;
              pred[a.to] = {static_cast<int>(i), true};
              changed = true;
            }
          }
          if (ok[a.to] && flow[i] > 0) {
            Rational nd = dist[a.to] - a.cost;
            if (!ok[a.from] || nd < dist[a.from]) {
              ok[a.from] = true;
              dist[a.from] = nd;
              pred[a.from] = {static_cast<int>(i), false};
              changed = true;
            }
          }
        }
        if (!changed) break;
      }
      if (!ok[t]) break;
      std::int64_t push = want - sent;
      for (int v = t; v != s;) {
        auto [i, fwd] = pred[v];
        push = std::min(push, fwd ? arcs[i].cap - flow[i] : flow[i]);
        v = fwd ? arcs[i].from : arcs[i].to;
      }
      for (int v = t; v != s;) {
        auto [i, fwd] = pred[v];
        flow[i] += fwd ? push : -push;
        v = fwd ? arcs[i].from : arcs[i].to;
      }
      sent += push;
    }
    return sent;
  }
};

}  // namespace

std::optional<FLSolution> brute_force_private_fl(const Instance& inst, bool with_capacities) {
  if (!inst.locations_are_points())
    throw MisuseError("facility oracle requires P = L");
  if (inst.num_points() > 10)
    throw SizeCapError("facility oracle capped at 10 points");
  if (!inst.has_opening_cost())
    throw InvalidInstanceError("facility oracle needs an opening cost");
  if (with_capacities && !inst.has_capacities())
    throw InvalidInstanceError("capacitated oracle needs capacities");
  const int n = inst.num_points();
  const std::int64_t ell = inst.lower_bound();

  std::optional<FLSolution> best;
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<int> centers;
    for (int l = 0; l < n; ++l)
      if (mask >> l & 1) centers.push_back(l);
    const int kc = static_cast<int>(centers.size());
    if (ell * kc > n) continue;
    std::int64_t cap_total = 0;
    for (int c : centers) cap_total += with_capacities ? inst.capacity(c) : n;
    if (cap_total < n) continue;

    // Min-cost assignment with per-center lower bounds, via the standard
    // demand transform: every lower bound moves onto super-source/sink arcs
    // and a free t->s return arc closes the circulation.
    // Nodes: s=0, points 1..n, centers n+1..n+kc, t, S*, T*.
    const int s = 0, t = n + kc + 1, SS = n + kc + 2, TT = n + kc + 3;
    MinCostFlow mcf(n + kc + 4);
    // s->p with bounds [1,1]: all demand goes to the transform arcs.
    // c->t with bounds [ell, hi]: residual capacity hi - ell.
    std::vector<std::vector<std::pair<int, int>>> assign_arcs(kc);  // (arc id, point)
    for (int p = 0; p < n; ++p)
      for (int j = 0; j < kc; ++j)
        assign_arcs[j].push_back({mcf.add(1 + p, 1 + n + j, 1, inst.point_loc(p, centers[j])), p});
    for (int j = 0; j < kc; ++j) {
      std::int64_t hi = with_capacities ? inst.capacity(centers[j]) : n;
      mcf.add(1 + n + j, t, hi - ell, Rational(0));
    }
    mcf.add(t, s, n, Rational(0));
    std::int64_t need = 0;
    for (int p = 0; p < n; ++p) {
      mcf.add(SS, 1 + p, 1, Rational(0));  // demand from s->p lower bound 1
      ++need;
    }
    mcf.add(s, TT, n, Rational(0));
    for (int j = 0; j < kc; ++j) {
      mcf.add(SS, t, ell, Rational(0));  // demand from c->t lower bound ell
      mcf.add(1 + n + j, TT, ell, Rational(0));
      need += ell;
    }
    if (mcf.run(SS, TT, need) != need) continue;

    std::vector<Cluster> clusters(kc);
    for (int j = 0; j < kc; ++j) {
      clusters[j].location = centers[j];
      for (auto [arc_id, p] : assign_arcs[j])
        if (mcf.flow[arc_id] == 1) clusters[j].members.push_back(p);
    }
    FLSolution sol = fl_evaluate(inst, std::move(clusters));
    if (!best || sol.total_cost < best->total_cost) best = std::move(sol);
  }
  return best;
}

}  // namespace privclust
