// Copyright 2026 privclust developers
// SPDX-License-Identifier: Apache-2.0
#include "privclust/base_solvers.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "privclust/flow.hpp"

namespace privclust {

namespace {

std::vector<int> sorted_copy(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

Clustering finish(const Instance& inst, std::vector<Cluster> clusters, std::vector<int> outliers) {
  // Empty clusters carry no information; drop them so |C| means what it says.
  std::vector<Cluster> kept;
  for (Cluster& c : clusters)
    if (!c.members.empty()) {
      std::sort(c.members.begin(), c.members.end());
      kept.push_back(std::move(c));
    }
  Clustering sol;
  sol.clusters = std::move(kept);
  sol.outliers = sorted_copy(std::move(outliers));
  sol.radius = eval_radius(inst, sol);
  return sol;
}

}  // namespace

Clustering gonzalez_kcenter(const Instance& inst, int k) {
  if (k < 1) throw MisuseError("gonzalez: k must be positive");
  if (!inst.locations_are_points()) throw MisuseError("gonzalez: requires L = P");
  const int n = inst.num_points();
  std::vector<int> centers{0};
  std::vector<bool> is_center(n, false);
  is_center[0] = true;
  while (static_cast<int>(centers.size()) < std::min(k, n)) {
    int far = -1;
    Rational far_d(-1);
    for (int p = 0; p < n; ++p) {
      if (is_center[p]) continue;
      Rational d = inst.point_point(p, centers[0]);
      for (int c : centers) d = std::min(d, inst.point_point(p, c));
      if (far == -1 || d > far_d) {
        far = p;
        far_d = d;
      }
    }
    centers.push_back(far);
    is_center[far] = true;
  }
  std::sort(centers.begin(), centers.end());
  std::vector<Cluster> clusters;
  for (int c : centers) clusters.push_back({c, {}});
  for (int p = 0; p < n; ++p) {
    int best = 0;
    for (std::size_t j = 1; j < centers.size(); ++j)
      if (inst.point_point(p, centers[j]) < inst.point_point(p, centers[best])) best = static_cast<int>(j);
    clusters[best].members.push_back(p);
  }
  return finish(inst, std::move(clusters), {});
}

Clustering hochbaum_shmoys_ksupplier(const Instance& inst, int k) {
  if (k < 1) throw MisuseError("k-supplier: k must be positive");
  const int n = inst.num_points();
  const int m = inst.num_locations();
  for (const Rational& tau : candidate_radii(inst)) {
    const Rational two_tau = tau + tau;
    const Rational three_tau = two_tau + tau;
    // Maximal 2*tau-separated point set, scanned in id order.
    std::vector<int> heads;
    for (int p = 0; p < n; ++p) {
      bool apart = true;
      for (int h : heads)
        if (inst.point_point(p, h) <= two_tau) {
          apart = false;
          break;
        }
      if (apart) heads.push_back(p);
    }
    if (static_cast<int>(heads.size()) > k) continue;
    std::vector<int> opened;
    bool ok = true;
    for (int h : heads) {
      int best = -1;
      for (int l = 0; l < m; ++l) {
        if (inst.point_loc(h, l) > tau) continue;
        if (best == -1 || inst.point_loc(h, l) < inst.point_loc(h, best)) best = l;
      }
      if (best == -1) {
        ok = false;  // tau below the optimum: this head reaches no location
        break;
      }
      opened.push_back(best);
    }
    if (!ok) continue;
    std::sort(opened.begin(), opened.end());
    opened.erase(std::unique(opened.begin(), opened.end()), opened.end());
    std::vector<Cluster> clusters;
    for (int l : opened) clusters.push_back({l, {}});
    for (int p = 0; p < n; ++p) {
      int best = 0;
      for (std::size_t j = 1; j < opened.size(); ++j)
        if (inst.point_loc(p, opened[j]) < inst.point_loc(p, opened[best])) best = static_cast<int>(j);
      if (inst.point_loc(p, opened[best]) > three_tau) {
        ok = false;
        break;
      }
      clusters[best].members.push_back(p);
    }
    if (!ok) continue;
    return finish(inst, std::move(clusters), {});
  }
  throw InternalError("k-supplier threshold sweep found no radius");
}

Clustering outliers_greedy_kcenter(const Instance& inst, int k, std::int64_t o) {
  if (k < 1) throw MisuseError("outliers k-center: k must be positive");
  if (o < 0) throw MisuseError("outliers k-center: negative outlier budget");
  if (!inst.locations_are_points()) throw MisuseError("outliers k-center: requires L = P");
  const int n = inst.num_points();
  for (const Rational& tau : candidate_radii(inst)) {
    const Rational three_tau = tau + tau + tau;
    std::vector<bool> covered(n, false);
    int covered_count = 0;
    std::vector<Cluster> clusters;
    for (int round = 0; round < k && covered_count < n; ++round) {
      int best = -1;
      int best_gain = -1;
      for (int g = 0; g < n; ++g) {
        int gain = 0;
        for (int q = 0; q < n; ++q)
          if (!covered[q] && inst.point_point(g, q) <= tau) ++gain;
        if (gain > best_gain) {
          best_gain = gain;
          best = g;
        }
      }
      Cluster cl{best, {}};
      for (int q = 0; q < n; ++q)
        if (!covered[q] && inst.point_point(best, q) <= three_tau) {
          covered[q] = true;
          ++covered_count;
          cl.members.push_back(q);
        }
      clusters.push_back(std::move(cl));
    }
    if (n - covered_count > o) continue;
    std::vector<int> outliers;
    for (int p = 0; p < n; ++p)
      if (!covered[p]) outliers.push_back(p);
    return finish(inst, std::move(clusters), std::move(outliers));
  }
  throw InternalError("outlier threshold sweep found no radius");
}

// ---------------------------------------------------------------------------
// Soft uniform capacities: monarch/empire decomposition per threshold, with
// the leftover routing between tree-adjacent empires solved exactly.
// ---------------------------------------------------------------------------

namespace {

constexpr int kInf = 1 << 28;

struct MonarchForest {
  std::vector<int> monarch_point;         // per monarch
  std::vector<int> parent;                // per monarch, -1 at component roots
  std::vector<std::vector<int>> children; // per monarch, in creation order
  std::vector<std::vector<int>> empire;   // per monarch, sorted point ids
};

MonarchForest build_monarchs(const Instance& inst, const Rational& tau) {
  const int n = inst.num_points();
  auto adjacent = [&](int a, int b) { return inst.point_point(a, b) <= tau; };
  MonarchForest f;
  std::vector<int> monarch_of(n, -1);
  auto crown = [&](int m, int par) {
    int id = static_cast<int>(f.monarch_point.size());
    f.monarch_point.push_back(m);
    f.parent.push_back(par);
    f.children.emplace_back();
    f.empire.emplace_back();
    if (par >= 0) f.children[par].push_back(id);
    // Empire: uncovered vertices within graph distance 2 of the monarch.
    std::vector<int> ring1;
    for (int q = 0; q < n; ++q)
      if (monarch_of[q] == -1 && adjacent(m, q)) ring1.push_back(q);
    for (int q : ring1) {
      monarch_of[q] = id;
      f.empire[id].push_back(q);
    }
    for (int q = 0; q < n; ++q) {
      if (monarch_of[q] != -1) continue;
      for (int w : ring1)
        if (adjacent(w, q)) {
          monarch_of[q] = id;
          f.empire[id].push_back(q);
          break;
        }
    }
    std::sort(f.empire[id].begin(), f.empire[id].end());
    return id;
  };
  while (true) {
    // New component root: the lowest uncovered vertex with no covered
    // neighbor; otherwise the lowest uncovered vertex adjacent to a covered
    // one becomes a child monarch of that neighbor's monarch.
    int child = -1, child_parent = -1, root = -1;
    for (int p = 0; p < n && child == -1; ++p) {
      if (monarch_of[p] != -1) continue;
      int via = -1;
      for (int q = 0; q < n; ++q)
        if (monarch_of[q] != -1 && adjacent(p, q)) {
          via = q;
          break;
        }
      if (via != -1) {
        child = p;
        child_parent = monarch_of[via];
      } else if (root == -1) {
        root = p;
      }
    }
    if (child != -1)
      crown(child, child_parent);
    else if (root != -1)
      crown(root, -1);
    else
      break;
  }
  return f;
}

// Exact leftover routing on one monarch tree. Each empire's points may be
// served at their own monarch or shipped across one tree edge; shipments
// across an edge come from the sending monarch's own empire. Minimizes the
// number of opened slots of size cap.
struct TreeRouting {
  const MonarchForest& f;
  std::int64_t cap;
  int n;  // total points in this forest

  // g[m][t + n]: best slot count of m's subtree when m ships t points up
  // (t < 0: receives -t of the parent's points).
  std::vector<std::vector<int>> g;
  // Stage tables for reconstruction: stage[m][i][R][G] = best slot count of
  // children 0..i-1 of m when m received R and gave G of its own away.
  std::vector<std::vector<std::vector<std::vector<int>>>> stage;

  TreeRouting(const MonarchForest& forest, std::int64_t c, int total)
      : f(forest), cap(c), n(total), g(forest.monarch_point.size()),
        stage(forest.monarch_point.size()) {}

  int esize(int m) const { return static_cast<int>(f.empire[m].size()); }
  static int ceil_div(int a, std::int64_t b) {
    return static_cast<int>((a + b - 1) / b);
  }

  void solve(int m) {
    for (int c : f.children[m]) solve(c);
    const int em = esize(m);
    auto& st = stage[m];
    st.assign(f.children[m].size() + 1, {});
    st[0].assign(n + 1, std::vector<int>(em + 1, kInf));
    st[0][0][0] = 0;
    for (std::size_t i = 0; i < f.children[m].size(); ++i) {
      int c = f.children[m][i];
      st[i + 1].assign(n + 1, std::vector<int>(em + 1, kInf));
      for (int R = 0; R <= n; ++R)
        for (int G = 0; G <= em; ++G) {
          if (st[i][R][G] >= kInf) continue;
          for (int t = -(em - G); t <= esize(c); ++t) {
            int gc = g[c][t + n];
            if (gc >= kInf) continue;
            int R2 = R + std::max(0, t);
            int G2 = G + std::max(0, -t);
            if (R2 > n) continue;
            int& slot = st[i + 1][R2][G2];
            slot = std::min(slot, st[i][R][G] + gc);
          }
        }
    }
    g[m].assign(2 * n + 1, kInf);
    const auto& last = st.back();
    for (int R = 0; R <= n; ++R)
      for (int G = 0; G <= em; ++G) {
        if (last[R][G] >= kInf) continue;
        for (int t = -n; t <= em - G; ++t) {
          int served = em - G + R - std::max(0, t) + std::max(0, -t);
          int& slot = g[m][t + n];
          slot = std::min(slot, last[R][G] + ceil_div(served, cap));
        }
      }
  }

  // Chosen transfers, filled by reconstruct(): per monarch, points shipped up
  // are taken from its own empire; ship_down[m] counts the parent's points it
  // receives.
  std::vector<int> ship_up, ship_down;

  void reconstruct(int m, int t) {
    const int em = esize(m);
    ship_up[m] = std::max(0, t);
    ship_down[m] = std::max(0, -t);
    const auto& st = stage[m];
    // Recover a (R, G) state achieving g[m][t+n], lexicographically first.
    int target = g[m][t + n];
    int Rb = -1, Gb = -1;
    for (int R = 0; R <= n && Rb == -1; ++R)
      for (int G = 0; G <= em - std::max(0, t); ++G)
        if (st.back()[R][G] < kInf &&
            st.back()[R][G] + ceil_div(em - G + R - std::max(0, t) + std::max(0, -t), cap) == target) {
          Rb = R;
          Gb = G;
          break;
        }
    internal_check(Rb != -1, "soft-capacity routing lost its own optimum");
    // Walk the child stages backwards recovering each edge transfer.
    for (int i = static_cast<int>(f.children[m].size()) - 1; i >= 0; --i) {
      int c = f.children[m][i];
      bool found = false;
      for (int t2 = -(em); t2 <= esize(c) && !found; ++t2) {
        if (g[c][t2 + n] >= kInf) continue;
        int R1 = Rb - std::max(0, t2);
        int G1 = Gb - std::max(0, -t2);
        if (R1 < 0 || G1 < 0 || G1 > em) continue;
        if (st[i][R1][G1] < kInf && st[i][R1][G1] + g[c][t2 + n] == st[i + 1][Rb][Gb]) {
          reconstruct(c, t2);
          Rb = R1;
          Gb = G1;
          found = true;
        }
      }
      internal_check(found, "soft-capacity routing reconstruction failed");
    }
  }
};

std::optional<Clustering> try_soft_threshold(const Instance& inst, int k, std::int64_t cap,
                                             const Rational& tau) {
  const int n = inst.num_points();
  MonarchForest f = build_monarchs(inst, tau);
  TreeRouting dp(f, cap, n);
  const int num_m = static_cast<int>(f.monarch_point.size());
  std::vector<int> roots;
  for (int m = 0; m < num_m; ++m)
    if (f.parent[m] == -1) roots.push_back(m);
  int total = 0;
  for (int r : roots) {
    dp.solve(r);
    total += dp.g[r][0 + n];
  }
  if (total > k) return std::nullopt;

  dp.ship_up.assign(num_m, 0);
  dp.ship_down.assign(num_m, 0);
  for (int r : roots) dp.reconstruct(r, 0);

  // Materialize shipments: each monarch hands out its own lowest-id empire
  // points, children first (in child order), then the parent shipment.
  std::vector<std::vector<int>> served(num_m);
  std::vector<std::vector<int>> own = f.empire;
  for (int m = 0; m < num_m; ++m) {
    std::size_t cursor = 0;
    for (int c : f.children[m]) {
      for (int i = 0; i < dp.ship_down[c]; ++i) {
        internal_check(cursor < own[m].size(), "soft-capacity shipment exceeds empire");
        served[c].push_back(own[m][cursor++]);
      }
    }
    if (f.parent[m] != -1)
      for (int i = 0; i < dp.ship_up[m]; ++i) {
        internal_check(cursor < own[m].size(), "soft-capacity shipment exceeds empire");
        served[f.parent[m]].push_back(own[m][cursor++]);
      }
    for (; cursor < own[m].size(); ++cursor) served[m].push_back(own[m][cursor]);
  }

  std::vector<Cluster> clusters;
  const Rational reach = tau + tau + tau + tau + tau;
  for (int m = 0; m < num_m; ++m) {
    std::sort(served[m].begin(), served[m].end());
    for (int p : served[m])
      internal_check(inst.point_point(p, f.monarch_point[m]) <= reach,
                     "soft-capacity slot outside its radius bound");
    for (std::size_t i = 0; i < served[m].size(); i += cap) {
      Cluster cl{f.monarch_point[m], {}};
      for (std::size_t j = i; j < std::min(served[m].size(), i + cap); ++j)
        cl.members.push_back(served[m][j]);
      clusters.push_back(std::move(cl));
    }
  }
  internal_check(static_cast<int>(clusters.size()) <= k, "soft-capacity slot count breached k");
  return finish(inst, std::move(clusters), {});
}

}  // namespace

Clustering soft_capacitated_kcenter(const Instance& inst, int k, std::int64_t soft_cap) {
  if (k < 1) throw MisuseError("soft capacitated: k must be positive");
  if (soft_cap < 1) throw MisuseError("soft capacitated: capacity must be positive");
  if (!inst.locations_are_points()) throw MisuseError("soft capacitated: requires L = P");
  if (static_cast<std::int64_t>(k) * soft_cap < inst.num_points())
    throw InfeasibleError("soft capacitated: k * cap below the number of points");
  for (const Rational& tau : candidate_radii(inst))
    if (auto sol = try_soft_threshold(inst, k, soft_cap, tau)) return *sol;
  throw InternalError("soft-capacity threshold sweep found no radius");
}

// ---------------------------------------------------------------------------
// Exact solver.
// ---------------------------------------------------------------------------

namespace {

struct LBArc {
  int from, to;
  std::int64_t lo, hi;
};

// Feasible s-t flow with arc lower bounds, via the usual excess transform
// onto a plain max-flow. Returns per-arc flows in input order.
std::optional<std::vector<std::int64_t>> feasible_st_flow(int num_nodes, int s, int t,
                                                          const std::vector<LBArc>& arcs) {
  const int S = num_nodes, T = num_nodes + 1;
  std::vector<std::int64_t> excess(num_nodes, 0);
  std::map<std::pair<int, int>, std::int64_t> caps;
  for (const LBArc& a : arcs) {
    internal_check(a.lo >= 0 && a.lo <= a.hi, "bad arc bounds");
    if (a.hi - a.lo > 0) caps[{a.from, a.to}] += a.hi - a.lo;
    excess[a.to] += a.lo;
    excess[a.from] -= a.lo;
  }
  caps[{t, s}] += static_cast<std::int64_t>(1) << 40;
  std::int64_t need = 0;
  for (int v = 0; v < num_nodes; ++v) {
    if (excess[v] > 0) {
      caps[{S, v}] += excess[v];
      need += excess[v];
    } else if (excess[v] < 0) {
      caps[{v, T}] += -excess[v];
    }
  }
  FlowNetwork net(num_nodes + 2, S, T);
  for (const auto& [key, cap] : caps) net.add_arc(key.first, key.second, cap);
  FlowResult fr = max_flow(net);
  if (fr.value != need) return std::nullopt;
  std::map<std::pair<int, int>, std::int64_t> got;
  const auto& narcs = net.arcs();
  for (std::size_t i = 0; i < narcs.size(); ++i) got[{narcs[i].from, narcs[i].to}] = fr.flow[i];
  std::vector<std::int64_t> out;
  std::map<std::pair<int, int>, std::int64_t> remaining = got;
  for (const LBArc& a : arcs) {
    std::int64_t extra = 0;
    auto it = remaining.find({a.from, a.to});
    if (it != remaining.end()) {
      extra = std::min(it->second, a.hi - a.lo);
      it->second -= extra;
    }
    out.push_back(a.lo + extra);
  }
  return out;
}

struct AssignProblem {
  const Instance& inst;
  ConstraintSet cs;
  const std::vector<int>& centers;  // distinct location ids, ascending
  Rational r;
  std::int64_t o;
  // reach[j] = points within r of centers[j]
  std::vector<std::vector<char>> reach;

  AssignProblem(const Instance& i, const ConstraintSet& c, const std::vector<int>& ctr,
                const Rational& rad, std::int64_t out)
      : inst(i), cs(c), centers(ctr), r(rad), o(out) {
    reach.assign(centers.size(), std::vector<char>(inst.num_points(), 0));
    for (std::size_t j = 0; j < centers.size(); ++j)
      for (int p = 0; p < inst.num_points(); ++p)
        reach[j][p] = inst.point_loc(p, centers[j]) <= r ? 1 : 0;
  }

  std::optional<Clustering> solve() const {
    if (cs.strong_privacy) return solve_strong();
    if (cs.fairness) return solve_fair();
    if (cs.capacities) return solve_capacitated();
    return solve_plain();
  }

  Clustering pack(const std::vector<std::vector<int>>& members, std::vector<int> outliers) const {
    std::vector<Cluster> clusters;
    for (std::size_t j = 0; j < centers.size(); ++j) clusters.push_back({centers[j], members[j]});
    return finish(inst, std::move(clusters), std::move(outliers));
  }

  // No capacities/fairness: satisfy the privacy demand with a flow, then
  // hand every other reachable point to its nearest center.
  std::optional<Clustering> solve_plain() const {
    const int n = inst.num_points();
    const int kc = static_cast<int>(centers.size());
    std::vector<std::vector<int>> members(kc);
    std::vector<bool> placed(n, false);
    if (cs.privacy && inst.lower_bound() > 0) {
      const std::int64_t ell = inst.lower_bound();
      // s=0, centers 1..kc, points kc+1.., t=kc+n+1
      FlowNetwork net(kc + n + 2, 0, kc + n + 1);
      for (int j = 0; j < kc; ++j) net.add_arc(0, 1 + j, ell);
      for (int j = 0; j < kc; ++j)
        for (int p = 0; p < n; ++p)
          if (reach[j][p]) net.add_arc(1 + j, 1 + kc + p, 1);
      for (int p = 0; p < n; ++p) net.add_arc(1 + kc + p, kc + n + 1, 1);
      FlowResult fr = max_flow(net);
      if (fr.value != static_cast<std::int64_t>(kc) * ell) return std::nullopt;
      const auto& arcs = net.arcs();
      for (std::size_t i = 0; i < arcs.size(); ++i)
        if (fr.flow[i] == 1 && arcs[i].from >= 1 && arcs[i].from <= kc &&
            arcs[i].to > kc && arcs[i].to <= kc + n) {
          int j = arcs[i].from - 1, p = arcs[i].to - kc - 1;
          members[j].push_back(p);
          placed[p] = true;
        }
    }
    std::vector<int> outliers;
    for (int p = 0; p < n; ++p) {
      if (placed[p]) continue;
      int best = -1;
      for (int j = 0; j < kc; ++j)
        if (reach[j][p] &&
            (best == -1 || inst.point_loc(p, centers[j]) < inst.point_loc(p, centers[best])))
          best = j;
      if (best == -1)
        outliers.push_back(p);
      else
        members[best].push_back(p);
    }
    std::int64_t budget = cs.outliers ? o : 0;
    if (static_cast<std::int64_t>(outliers.size()) > budget) return std::nullopt;
    return pack(members, std::move(outliers));
  }

  std::optional<Clustering> solve_capacitated() const {
    const int n = inst.num_points();
    const int kc = static_cast<int>(centers.size());
    const std::int64_t ell = cs.privacy ? inst.lower_bound() : 0;
    // s=0, points 1..n, centers n+1.., t last
    std::vector<LBArc> arcs;
    for (int p = 0; p < n; ++p) arcs.push_back({0, 1 + p, 1, 1});
    for (int p = 0; p < n; ++p)
      for (int j = 0; j < kc; ++j)
        if (reach[j][p]) arcs.push_back({1 + p, 1 + n + j, 0, 1});
    for (int j = 0; j < kc; ++j)
      arcs.push_back({1 + n + j, 1 + n + kc, ell, inst.capacity(centers[j])});
    auto flow = feasible_st_flow(n + kc + 2, 0, 1 + n + kc, arcs);
    if (!flow) return std::nullopt;
    std::vector<std::vector<int>> members(kc);
    for (std::size_t i = 0; i < arcs.size(); ++i)
      if ((*flow)[i] == 1 && arcs[i].from >= 1 && arcs[i].from <= n && arcs[i].to > n &&
          arcs[i].to <= n + kc)
        members[arcs[i].to - n - 1].push_back(arcs[i].from - 1);
    return pack(members, {});
  }

  std::optional<Clustering> solve_strong() const {
    const int n = inst.num_points();
    const int kc = static_cast<int>(centers.size());
    std::vector<std::vector<int>> members(kc);
    for (int col = 0; col < inst.num_colors(); ++col) {
      std::vector<int> pts;
      for (int p = 0; p < n; ++p)
        if (inst.color_of(p) == col) pts.push_back(p);
      const int nc = static_cast<int>(pts.size());
      std::vector<LBArc> arcs;
      for (int i = 0; i < nc; ++i) arcs.push_back({0, 1 + i, 1, 1});
      for (int i = 0; i < nc; ++i)
        for (int j = 0; j < kc; ++j)
          if (reach[j][pts[i]]) arcs.push_back({1 + i, 1 + nc + j, 0, 1});
      for (int j = 0; j < kc; ++j)
        arcs.push_back({1 + nc + j, 1 + nc + kc, inst.color_bound(col), nc});
      auto flow = feasible_st_flow(nc + kc + 2, 0, 1 + nc + kc, arcs);
      if (!flow) return std::nullopt;
      for (std::size_t i = 0; i < arcs.size(); ++i)
        if ((*flow)[i] == 1 && arcs[i].from >= 1 && arcs[i].from <= nc && arcs[i].to > nc &&
            arcs[i].to <= nc + kc)
          members[arcs[i].to - nc - 1].push_back(pts[arcs[i].from - 1]);
    }
    return pack(members, {});
  }

  // Fairness: every cluster takes an integer number of fair blocks. Try all
  // block compositions; each one splits into independent per-color flows.
  std::optional<Clustering> solve_fair() const {
    const int n = inst.num_points();
    const int kc = static_cast<int>(centers.size());
    FairQuotas q = fair_structure(inst);
    const std::int64_t blocks = n / q.block;
    std::vector<std::int64_t> lo(kc, 0), hi(kc, blocks);
    if (cs.privacy && inst.lower_bound() > 0)
      for (int j = 0; j < kc; ++j)
        lo[j] = (inst.lower_bound() + q.block - 1) / q.block;
    if (cs.capacities)
      for (int j = 0; j < kc; ++j)
        hi[j] = std::min(hi[j], inst.capacity(centers[j]) / q.block);
    // Reachable points per (cluster, color) cap the block count further.
    std::vector<std::vector<std::int64_t>> reach_count(kc,
                                                       std::vector<std::int64_t>(inst.num_colors(), 0));
    for (int j = 0; j < kc; ++j)
      for (int p = 0; p < n; ++p)
        if (reach[j][p]) ++reach_count[j][inst.color_of(p)];
    for (int j = 0; j < kc; ++j)
      for (int c = 0; c < inst.num_colors(); ++c)
        if (q.per_color[c] > 0)
          hi[j] = std::min(hi[j], reach_count[j][c] / q.per_color[c]);

    std::vector<std::int64_t> m(kc, 0);
    std::optional<Clustering> found;
    auto try_composition = [&]() -> bool {
      std::vector<std::vector<int>> members(kc);
      for (int col = 0; col < inst.num_colors(); ++col) {
        std::vector<int> pts;
        for (int p = 0; p < n; ++p)
          if (inst.color_of(p) == col) pts.push_back(p);
        const int nc = static_cast<int>(pts.size());
        FlowNetwork net(nc + kc + 2, 0, 1 + nc + kc);
        for (int i = 0; i < nc; ++i) net.add_arc(0, 1 + i, 1);
        for (int i = 0; i < nc; ++i)
          for (int j = 0; j < kc; ++j)
            if (reach[j][pts[i]]) net.add_arc(1 + i, 1 + nc + j, 1);
        for (int j = 0; j < kc; ++j)
          net.add_arc(1 + nc + j, 1 + nc + kc, m[j] * q.per_color[col]);
        FlowResult fr = max_flow(net);
        if (fr.value != nc) return false;
        const auto& arcs = net.arcs();
        for (std::size_t i = 0; i < arcs.size(); ++i)
          if (fr.flow[i] == 1 && arcs[i].from >= 1 && arcs[i].from <= nc && arcs[i].to > nc &&
              arcs[i].to <= nc + kc)
            members[arcs[i].to - nc - 1].push_back(pts[arcs[i].from - 1]);
      }
      found = pack(members, {});
      return true;
    };
    // Depth-first over compositions in lexicographic order.
    std::function<bool(int, std::int64_t)> rec = [&](int j, std::int64_t left) -> bool {
      if (j == kc) return left == 0 && try_composition();
      for (m[j] = lo[j]; m[j] <= std::min(hi[j], left); ++m[j])
        if (rec(j + 1, left - m[j])) return true;
      return false;
    };
    if (!rec(0, blocks)) return std::nullopt;
    return found;
  }
};

}  // namespace

std::optional<Clustering> exact_solve(const Instance& inst, const ConstraintSet& cs, int k,
                                      std::int64_t o, const ExactCaps& caps) {
  cs.validate();
  if (k < 1) throw MisuseError("exact solver: k must be positive");
  const int n = inst.num_points();
  const int m = inst.num_locations();
  if (n > caps.max_points || m > caps.max_locations || k > caps.max_k)
    throw SizeCapError("exact solver: instance exceeds its size caps (" + std::to_string(n) +
                       " points, " + std::to_string(m) + " locations, k=" + std::to_string(k) + ")");
  if (cs.capacities && !inst.has_capacities())
    throw InvalidInstanceError("exact solver: capacities requested but absent");
  if ((cs.fairness || cs.strong_privacy) && !inst.has_colors())
    throw InvalidInstanceError("exact solver: colors requested but absent");
  if (cs.strong_privacy && !inst.has_color_bounds())
    throw InvalidInstanceError("exact solver: per-color bounds requested but absent");

  // Pigeonhole gates, mirroring the parse-time rule: a k-budget private
  // request needs k*ell assignable points.
  if (cs.privacy && inst.lower_bound() > 0) {
    std::int64_t ell = inst.lower_bound();
    if (cs.fairness) {
      FairQuotas q = fair_structure(inst);
      std::int64_t rounded = (ell + q.block - 1) / q.block * q.block;
      if (static_cast<std::int64_t>(k) * rounded > n) return std::nullopt;
    } else if (static_cast<std::int64_t>(k) * ell > n - (cs.outliers ? o : 0)) {
      return std::nullopt;
    }
  }
  if (cs.strong_privacy) {
    std::int64_t total = 0;
    for (int c = 0; c < inst.num_colors(); ++c) total += inst.color_bound(c);
    if (static_cast<std::int64_t>(k) * total > n) return std::nullopt;
  }

  std::vector<Rational> radii = candidate_radii(inst);
  if (radii.empty() || !radii.front().is_zero()) radii.insert(radii.begin(), Rational(0));

  std::optional<Clustering> best;
  int best_idx = static_cast<int>(radii.size());  // exclusive upper bound

  std::vector<int> subset;
  auto consider = [&]() {
    // Coverage lower bound on any feasible radius for this center set.
    std::vector<Rational> mind;
    for (int p = 0; p < n; ++p) {
      Rational d = inst.point_loc(p, subset[0]);
      for (int c : subset) d = std::min(d, inst.point_loc(p, c));
      mind.push_back(d);
    }
    std::sort(mind.begin(), mind.end());
    std::int64_t skip = cs.outliers ? std::min<std::int64_t>(o, n - 1) : 0;
    Rational cover = n > skip ? mind[n - 1 - skip] : Rational(0);
    int lo = static_cast<int>(std::lower_bound(radii.begin(), radii.end(), cover) - radii.begin());
    int hi = best_idx - 1;
    if (lo > hi) return;
    auto feasible_at = [&](int idx) {
      return AssignProblem(inst, cs, subset, radii[idx], o).solve();
    };
    if (!feasible_at(hi)) return;
    while (lo < hi) {
      int mid = lo + (hi - lo) / 2;
      if (feasible_at(mid))
        hi = mid;
      else
        lo = mid + 1;
    }
    if (lo < best_idx) {
      best_idx = lo;
      best = feasible_at(lo);
      internal_check(best.has_value(), "exact solver lost a feasible assignment");
    }
  };

  std::function<void(int, int)> choose = [&](int start, int remaining) {
    if (remaining == 0) {
      consider();
      return;
    }
    for (int l = start; l <= m - remaining; ++l) {
      subset.push_back(l);
      choose(l + 1, remaining - 1);
      subset.pop_back();
    }
  };
  for (int size = 1; size <= std::min(k, m); ++size) choose(0, size);
  return best;
}

}  // namespace privclust
