// Copyright 2026 privclust developers
// SPDX-License-Identifier: Apache-2.0
#include "privclust/privacy.hpp"

#include <algorithm>
#include <sstream>

#include "privclust/base_solvers.hpp"

namespace privclust {

namespace {

Rational min_dist_point_to_set(const Instance& inst, int p, const std::vector<int>& set) {
  Rational best = inst.point_point(p, set[0]);
  for (int q : set) best = std::min(best, inst.point_point(p, q));
  return best;
}

Rational min_dist_set_to_set(const Instance& inst, const std::vector<int>& a,
                             const std::vector<int>& b) {
  Rational best = inst.point_point(a[0], b[0]);
  for (int p : a)
    for (int q : b) best = std::min(best, inst.point_point(p, q));
  return best;
}

bool unit_in_cluster(const std::vector<int>& unit, const std::vector<int>& members) {
  for (int p : unit)
    if (std::binary_search(members.begin(), members.end(), p)) return true;
  return false;
}

}  // namespace

ThresholdGraph build_threshold_graph(const Instance& inst, const Clustering& sol,
                                     const Rational& tau, const GraphSpec& spec) {
  const int num_clusters = sol.num_clusters();
  const Rational two_tau = tau + tau;

  // Unit catalogue.
  std::vector<std::vector<int>> units;
  std::vector<int> unit_owner;
  std::int64_t block = 1;
  std::int64_t demand = spec.lower_bound;
  switch (spec.kind) {
    case GraphKind::Points: {
      for (int j = 0; j < num_clusters; ++j)
        for (int p : sol.clusters[j].members) {
          units.push_back({p});
          unit_owner.push_back(j);
        }
      if (spec.with_outliers)
        for (int p : sol.outliers) {
          units.push_back({p});
          unit_owner.push_back(-1);
        }
      else
        internal_check(sol.outliers.empty(), "outlier-free variant given outliers");
      break;
    }
    case GraphKind::FairSets: {
      internal_check(spec.fairlets && spec.fairlet_cluster, "fair graph needs the fairlets");
      FairQuotas q = fair_structure(inst);
      block = q.block;
      internal_check(spec.lower_bound % block == 0, "fair bound must be pre-rounded to the block");
      demand = spec.lower_bound / block;
      units = *spec.fairlets;
      unit_owner = *spec.fairlet_cluster;
      internal_check(sol.outliers.empty(), "fair variant given outliers");
      break;
    }
    case GraphKind::SingleColor: {
      internal_check(spec.color >= 0 && spec.color < inst.num_colors(), "bad graph color");
      for (int j = 0; j < num_clusters; ++j)
        for (int p : sol.clusters[j].members)
          if (inst.color_of(p) == spec.color) {
            units.push_back({p});
            unit_owner.push_back(j);
          }
      internal_check(sol.outliers.empty(), "strongly private variant given outliers");
      break;
    }
  }
  const int num_units = static_cast<int>(units.size());

  std::vector<std::int64_t> cluster_units(num_clusters, 0);
  for (int u = 0; u < num_units; ++u)
    if (unit_owner[u] >= 0) ++cluster_units[unit_owner[u]];
  if (spec.kind == GraphKind::FairSets)
    for (int j = 0; j < num_clusters; ++j)
      internal_check(cluster_units[j] * block ==
                         static_cast<std::int64_t>(sol.clusters[j].members.size()),
                     "fairlets do not tile their clusters");

  // Node layout: s, t, clusters, optional outlier pool, units.
  const bool with_out = spec.kind == GraphKind::Points && spec.with_outliers;
  const int s = 0, t = 1;
  int next = 2;
  std::vector<int> cluster_node(num_clusters);
  for (int j = 0; j < num_clusters; ++j) cluster_node[j] = next++;
  int outlier_node = with_out ? next++ : -1;
  std::vector<int> unit_node(num_units);
  for (int u = 0; u < num_units; ++u) unit_node[u] = next++;

  FlowNetwork net(next, s, t);
  const std::int64_t cap_limit = inst.num_points() + inst.outlier_budget();
  auto add = [&](int from, int to, std::int64_t cap) {
    internal_check(cap <= cap_limit, "threshold-graph capacity above |P| + o");
    net.add_arc(from, to, cap);
  };

  for (int j = 0; j < num_clusters; ++j) {
    std::int64_t diff = cluster_units[j] - demand;
    if (diff > 0) add(s, cluster_node[j], diff);
    if (diff < 0) add(cluster_node[j], t, -diff);
  }
  if (with_out) add(s, outlier_node, spec.outlier_budget);

  ThresholdGraph tg(std::move(net));
  for (int u = 0; u < num_units; ++u) {
    if (unit_owner[u] >= 0)
      tg.net.add_arc(cluster_node[unit_owner[u]], unit_node[u], 1);
    else
      tg.net.add_arc(outlier_node, unit_node[u], 1);
    for (int j = 0; j < num_clusters; ++j) {
      if (unit_owner[u] == j) continue;
      // Distances measure against the snapshot cluster contents.
      if (spec.kind == GraphKind::FairSets) {
        if (unit_in_cluster(units[u], sol.clusters[j].members)) continue;
        if (min_dist_set_to_set(inst, sol.clusters[j].members, units[u]) <= two_tau)
          tg.net.add_arc(unit_node[u], cluster_node[j], 1);
      } else {
        int p = units[u][0];
        if (std::binary_search(sol.clusters[j].members.begin(), sol.clusters[j].members.end(), p))
          continue;
        if (min_dist_point_to_set(inst, p, sol.clusters[j].members) <= two_tau)
          tg.net.add_arc(unit_node[u], cluster_node[j], 1);
      }
    }
  }

  tg.spec = spec;
  tg.tau = tau;
  tg.block = block;
  tg.unit_demand = demand;
  tg.cluster_node = std::move(cluster_node);
  tg.outlier_node = outlier_node;
  tg.units = std::move(units);
  tg.unit_owner = std::move(unit_owner);
  tg.unit_node = std::move(unit_node);
  tg.cluster_units = std::move(cluster_units);

  // Arc-id lookup for the reassignment arcs (forces the sorted arc order).
  const auto& arcs = tg.net.arcs();
  std::map<std::pair<int, int>, int> by_pair;
  for (std::size_t i = 0; i < arcs.size(); ++i) by_pair[{arcs[i].from, arcs[i].to}] = static_cast<int>(i);
  for (int u = 0; u < num_units; ++u)
    for (int j = 0; j < static_cast<int>(tg.cluster_node.size()); ++j) {
      auto it = by_pair.find({tg.unit_node[u], tg.cluster_node[j]});
      if (it != by_pair.end()) tg.move_arcs[it->second] = {u, j};
    }
  return tg;
}

std::vector<UnitMove> flow_moves(const ThresholdGraph& tg, const FlowResult& fr) {
  std::vector<UnitMove> moves;
  std::vector<bool> moved(tg.units.size(), false);
  for (const auto& [arc_id, um] : tg.move_arcs) {
    if (fr.flow[arc_id] != 1) continue;
    auto [u, j] = um;
    internal_check(!moved[u], "unit reassigned twice");
    moved[u] = true;
    moves.push_back({tg.units[u], tg.unit_owner[u], j});
  }
  return moves;
}

Clustering apply_moves(const Instance& inst, const Clustering& sol,
                       const std::vector<UnitMove>& moves) {
  Clustering out = sol;
  for (const UnitMove& mv : moves) {
    for (int p : mv.points) {
      if (mv.from_cluster >= 0) {
        auto& src = out.clusters[mv.from_cluster].members;
        auto it = std::find(src.begin(), src.end(), p);
        internal_check(it != src.end(), "moved point missing from its cluster");
        src.erase(it);
      } else {
        auto it = std::find(out.outliers.begin(), out.outliers.end(), p);
        internal_check(it != out.outliers.end(), "moved point missing from the outliers");
        out.outliers.erase(it);
      }
      out.clusters[mv.to_cluster].members.push_back(p);
    }
  }
  for (Cluster& c : out.clusters) std::sort(c.members.begin(), c.members.end());
  out.radius = eval_radius(inst, out);
  return out;
}

Clustering reassign_from_flow(const Instance& inst, const Clustering& sol,
                              const ThresholdGraph& tg, const FlowResult& fr) {
  if (!fr.all_sink_arcs_saturated())
    throw MisuseError("reassignment needs every sink arc saturated; analyze the cut instead");
  Clustering out = apply_moves(inst, sol, flow_moves(tg, fr));

  const Rational two_tau = tg.tau + tg.tau;
  Rational bound = tg.spec.kind == GraphKind::FairSets
                       ? sol.radius + sol.radius + sol.radius + two_tau
                       : sol.radius + two_tau;
  internal_check(out.radius <= bound, "reassignment exceeded its radius bound");

  for (std::size_t j = 0; j < out.clusters.size(); ++j) {
    std::int64_t have;
    if (tg.spec.kind == GraphKind::SingleColor) {
      have = 0;
      for (int p : out.clusters[j].members)
        if (inst.color_of(p) == tg.spec.color) ++have;
    } else {
      have = static_cast<std::int64_t>(out.clusters[j].members.size()) / tg.block;
    }
    internal_check(have >= tg.unit_demand, "saturated flow left a deficit cluster");
  }
  return out;
}

CutAnalysis analyze_cut(const Instance& inst, const Clustering& sol, const ThresholdGraph& tg,
                        const FlowResult& fr) {
  (void)inst;
  if (fr.all_sink_arcs_saturated())
    throw MisuseError("cut analysis is for unsaturated flows; reassign instead");
  CutAnalysis cut;
  cut.unreachable = residual_unreachable(tg.net, fr);
  internal_check(cut.unreachable[tg.net.sink()], "sink must sit in the unreachable side");
  cut.current_outliers = static_cast<std::int64_t>(sol.outliers.size());

  std::vector<bool> cluster_in(sol.num_clusters(), false);
  for (int j = 0; j < sol.num_clusters(); ++j)
    if (cut.unreachable[tg.cluster_node[j]]) {
      cluster_in[j] = true;
      cut.clusters_in_cut.push_back(j);
      for (int p : sol.clusters[j].members) cut.points_in_cut.push_back(p);
      cut.units_in_cut += tg.cluster_units[j];
    }
  internal_check(!cut.clusters_in_cut.empty(), "unsaturated sink arc outside the cut");
  std::sort(cut.points_in_cut.begin(), cut.points_in_cut.end());

  for (std::size_t u = 0; u < tg.units.size(); ++u) {
    int owner = tg.unit_owner[u];
    if (cut.unreachable[tg.unit_node[u]] && owner >= 0 && !cluster_in[owner]) {
      ++cut.units_adjacent;
      for (int p : tg.units[u]) cut.points_adjacent.push_back(p);
    }
  }
  std::sort(cut.points_adjacent.begin(), cut.points_adjacent.end());

  // Structural residual-cut properties.
  const auto& arcs = tg.net.arcs();
  for (const auto& [arc_id, um] : tg.move_arcs) {
    auto [u, j] = um;
    if (cut.unreachable[tg.cluster_node[j]])
      internal_check(cut.unreachable[tg.unit_node[u]],
                     "cut cluster keeps a reachable in-neighbor unit");
    if (fr.flow[arc_id] > 0 && cut.unreachable[tg.unit_node[u]])
      internal_check(cut.unreachable[tg.cluster_node[j]],
                     "moved unit in the cut targets a reachable cluster");
  }
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    // owner arcs cluster->unit: unit in cut with owner outside must be drained
    if (arcs[i].capacity != 1) continue;
    for (std::size_t u = 0; u < tg.units.size(); ++u) {
      if (tg.unit_owner[u] < 0) continue;
      if (arcs[i].from == tg.cluster_node[tg.unit_owner[u]] && arcs[i].to == tg.unit_node[u]) {
        if (cut.unreachable[tg.unit_node[u]] && !cluster_in[tg.unit_owner[u]])
          internal_check(fr.flow[i] == 1, "adjacent unit not drained by the flow");
      }
    }
  }
  internal_check(cut.units_in_cut + cut.units_adjacent <
                     static_cast<std::int64_t>(cut.clusters_in_cut.size()) * tg.unit_demand,
                 "cut counting bound failed");
  return cut;
}

bool is_special_cluster(const CutAnalysis& cut, const std::vector<int>& members,
                        const std::vector<int>& former_outliers) {
  for (int p : members)
    if (std::binary_search(cut.points_in_cut.begin(), cut.points_in_cut.end(), p)) return true;
  if (members.empty()) return false;
  for (int p : members)
    if (!std::binary_search(former_outliers.begin(), former_outliers.end(), p)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Underlying solvers.
// ---------------------------------------------------------------------------

UnderlyingSolver make_exact_underlying() {
  UnderlyingSolver a;
  a.id = "exact";
  a.alpha = Rational(1);
  a.needs_L_eq_P = false;
  a.solve = [](const Instance& inst, int k, std::int64_t o) {
    ConstraintSet cs;
    cs.outliers = o > 0;
    return exact_solve(inst, cs, k, o);
  };
  return a;
}

UnderlyingSolver make_exact_capacitated_underlying() {
  UnderlyingSolver a;
  a.id = "exact";
  a.alpha = Rational(1);
  a.needs_L_eq_P = false;
  a.solve = [](const Instance& inst, int k, std::int64_t) {
    ConstraintSet cs{.capacities = true};
    return exact_solve(inst, cs, k, 0);
  };
  return a;
}

UnderlyingSolver make_gonzalez_underlying() {
  UnderlyingSolver a;
  a.id = "gonzalez";
  a.alpha = Rational(2);
  a.needs_L_eq_P = true;
  a.solve = [](const Instance& inst, int k, std::int64_t) -> std::optional<Clustering> {
    return gonzalez_kcenter(inst, k);
  };
  return a;
}

UnderlyingSolver make_hs_supplier_underlying() {
  UnderlyingSolver a;
  a.id = "hs-supplier";
  a.alpha = Rational(3);
  a.needs_L_eq_P = false;
  a.solve = [](const Instance& inst, int k, std::int64_t) -> std::optional<Clustering> {
    return hochbaum_shmoys_ksupplier(inst, k);
  };
  return a;
}

UnderlyingSolver make_outliers_greedy_underlying() {
  UnderlyingSolver a;
  a.id = "outliers-greedy";
  a.alpha = Rational(3);
  a.needs_L_eq_P = true;
  a.solve = [](const Instance& inst, int k, std::int64_t o) -> std::optional<Clustering> {
    return outliers_greedy_kcenter(inst, k, o);
  };
  return a;
}

FairUnderlying make_fairlet_fair_underlying(bool supplier) {
  FairUnderlying b;
  b.id = supplier ? "fair-fairlet-supplier" : "fair-fairlet-center";
  b.supplier = supplier;
  b.needs_L_eq_P = !supplier;
  b.solve = [supplier](const Instance& inst, int k) -> std::optional<FairSolveOutput> {
    try {
      return fair_center_via_fairlets(inst, k, supplier);
    } catch (const InfeasibleError&) {
      return std::nullopt;
    }
  };
  return b;
}

FairUnderlying make_exact_fair_underlying() {
  FairUnderlying b;
  b.id = "exact";
  b.supplier = false;
  b.needs_L_eq_P = false;
  b.solve = [](const Instance& inst, int k) { return exact_fair_solver(inst, k); };
  return b;
}

PrivateCapacitatedUnderlying make_exact_private_capacitated_underlying() {
  PrivateCapacitatedUnderlying a;
  a.id = "exact";
  a.alpha = Rational(1);
  a.solve = [](const Instance& inst) {
    ConstraintSet cs;
    cs.privacy = inst.lower_bound() > 0;
    cs.capacities = true;
    return exact_solve(inst, cs, inst.k(), 0);
  };
  return a;
}

std::string format_trace(const TauTrace& trace) {
  std::ostringstream out;
  for (const TauTraceEntry& e : trace)
    out << "tau=" << e.tau.str() << " iteration=" << e.iteration << " clusters=" << e.clusters
        << " outliers=" << e.outliers << " cut_clusters=" << e.cut_clusters
        << " event=" << e.event << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Shared solve-loop machinery.
// ---------------------------------------------------------------------------

namespace {

// Radius of a clustering that may cover only a point subset of inst.
Rational partial_radius(const Instance& inst, const Clustering& c) {
  Rational r(0);
  for (const Cluster& cl : c.clusters)
    for (int p : cl.members) r = std::max(r, inst.point_loc(p, cl.location));
  return r;
}

struct SubCall {
  std::vector<int> points;  // sorted parent ids
  int k;
  std::int64_t o;
  bool operator<(const SubCall& other) const {
    if (k != other.k) return k < other.k;
    if (o != other.o) return o < other.o;
    return points < other.points;
  }
};

// Runs an underlying solver on a point subset of the parent and maps the
// result back to parent ids. Results are cached per solve call: the same
// relaxed subproblem recurs across thresholds.
struct UnderlyingRunner {
  const Instance& parent;
  const UnderlyingSolver& A;
  bool keep_capacities;
  std::map<SubCall, std::optional<Clustering>> cache;

  std::optional<Clustering> run(const std::vector<int>& points, int k, std::int64_t o) {
    if (k < 1) return std::nullopt;
    SubCall key{points, k, o};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Instance::Restriction r;
    r.points = points;
    r.keep_all_locations = !A.needs_L_eq_P;
    r.k = k;
    r.outlier_budget = o;
    r.keep_capacities = keep_capacities;
    Instance sub = parent.restrict(r);
    std::optional<Clustering> sub_sol = A.solve(sub, k, o);
    std::optional<Clustering> mapped;
    if (sub_sol) {
      Clustering out;
      for (const Cluster& c : sub_sol->clusters) {
        Cluster mc;
        mc.location = A.needs_L_eq_P ? points[c.location] : c.location;
        for (int p : c.members) mc.members.push_back(points[p]);
        std::sort(mc.members.begin(), mc.members.end());
        out.clusters.push_back(std::move(mc));
      }
      for (int p : sub_sol->outliers) out.outliers.push_back(points[p]);
      std::sort(out.outliers.begin(), out.outliers.end());
      out.radius = partial_radius(parent, out);
      mapped = std::move(out);
    }
    cache.emplace(key, mapped);
    return mapped;
  }
};

std::vector<int> all_points(const Instance& inst) {
  std::vector<int> v(inst.num_points());
  for (int i = 0; i < inst.num_points(); ++i) v[i] = i;
  return v;
}

void trace_event(TauTrace* trace, const Rational& tau, int iter, const Clustering& sol,
                 int cut_clusters, const char* event) {
  if (!trace) return;
  trace->push_back({tau, iter, sol.num_clusters(),
                    static_cast<std::int64_t>(sol.outliers.size()), cut_clusters, event});
}

// Splices replacement clusters over the cut clusters of the current solution.
Clustering splice(const Instance& inst, const Clustering& cur, const std::vector<int>& cut_clusters,
                  const Clustering& replacement, bool replace_outliers) {
  std::vector<bool> drop(cur.clusters.size(), false);
  for (int j : cut_clusters) drop[j] = true;
  Clustering next;
  for (std::size_t j = 0; j < cur.clusters.size(); ++j)
    if (!drop[j]) next.clusters.push_back(cur.clusters[j]);
  for (const Cluster& c : replacement.clusters) next.clusters.push_back(c);
  next.outliers = replace_outliers ? replacement.outliers : cur.outliers;
  next.radius = eval_radius(inst, next);
  return next;
}

}  // namespace

// ---------------------------------------------------------------------------
// Private k-center with outliers.
// ---------------------------------------------------------------------------

namespace {

std::optional<Clustering> private_outliers_once(const Instance& inst, const UnderlyingSolver& A,
                                                const Rational& tau, UnderlyingRunner& runner,
                                                TauTrace* trace) {
  const int k = inst.k();
  const std::int64_t ell = inst.lower_bound();
  const std::int64_t o = inst.outlier_budget();
  const Rational alpha_tau = A.alpha * tau;

  std::optional<Clustering> start = runner.run(all_points(inst), k, o);
  if (!start || start->radius > alpha_tau) {
    if (start) trace_event(trace, tau, 0, *start, 0, "rejected");
    return std::nullopt;
  }
  Clustering cur = *start;
  const int iteration_cap = k * static_cast<int>(o + 1);
  for (int iter = 0;; ++iter) {
    internal_check(iter <= iteration_cap, "outlier loop exceeded its iteration bound");
    GraphSpec spec{.kind = GraphKind::Points, .with_outliers = true, .lower_bound = ell,
                   .outlier_budget = o};
    ThresholdGraph tg = build_threshold_graph(inst, cur, tau, spec);
    FlowResult fr = max_flow(tg.net);
    if (fr.all_sink_arcs_saturated()) {
      Clustering res = reassign_from_flow(inst, cur, tg, fr);
      trace_event(trace, tau, iter, res, 0, "accepted");
      return res;
    }
    CutAnalysis cut = analyze_cut(inst, cur, tg, fr);
    const int k2 = static_cast<int>(cut.clusters_in_cut.size());
    std::vector<int> region = cut.points_in_cut;
    region.insert(region.end(), cur.outliers.begin(), cur.outliers.end());
    std::sort(region.begin(), region.end());

    // Replacement with the same cluster count but one outlier fewer wins
    // over dropping a cluster.
    std::optional<Clustering> keep_count;
    if (cut.current_outliers >= 1) {
      keep_count = runner.run(region, k2, cut.current_outliers - 1);
      if (keep_count && keep_count->radius > alpha_tau) keep_count.reset();
    }
    std::optional<Clustering> drop_cluster;
    if (!keep_count) {
      if (k2 - 1 >= 1) {
        drop_cluster = runner.run(region, k2 - 1, o);
        if (drop_cluster && drop_cluster->radius > alpha_tau) drop_cluster.reset();
      } else if (static_cast<std::int64_t>(region.size()) <= o) {
        Clustering all_out;
        all_out.outliers = region;
        all_out.radius = Rational(0);
        drop_cluster = std::move(all_out);
      }
    }
    const std::optional<Clustering>& pick = keep_count ? keep_count : drop_cluster;
    if (!pick) {
      trace_event(trace, tau, iter, cur, k2, "rejected");
      return std::nullopt;
    }
    Clustering next = splice(inst, cur, cut.clusters_in_cut, *pick, /*replace_outliers=*/true);
    internal_check(next.radius <= alpha_tau, "spliced solution exceeded alpha*tau");
    internal_check(
        next.num_clusters() < cur.num_clusters() ||
            (next.num_clusters() == cur.num_clusters() &&
             static_cast<std::int64_t>(next.outliers.size()) < cut.current_outliers),
        "outlier iteration made no lexicographic progress");
    trace_event(trace, tau, iter, next, k2, "recompute");
    cur = std::move(next);
  }
}

}  // namespace

std::optional<Clustering> private_outliers_at_tau(const Instance& inst, const UnderlyingSolver& A,
                                                  const Rational& tau) {
  UnderlyingRunner runner{inst, A, /*keep_capacities=*/false, {}};
  return private_outliers_once(inst, A, tau, runner, nullptr);
}

Clustering solve_private_outliers(const Instance& inst, const UnderlyingSolver& A,
                                  TauTrace* trace) {
  UnderlyingRunner runner{inst, A, /*keep_capacities=*/false, {}};
  for (const Rational& tau : candidate_radii(inst))
    if (auto sol = private_outliers_once(inst, A, tau, runner, trace)) return *sol;
  throw InfeasibleError("private k-center with outliers: no threshold accepted");
}

// ---------------------------------------------------------------------------
// Private capacitated k-center.
// ---------------------------------------------------------------------------

namespace {

std::optional<Clustering> private_capacitated_once(const Instance& inst,
                                                   const UnderlyingSolver& A, const Rational& tau,
                                                   UnderlyingRunner& runner, TauTrace* trace) {
  const int k = inst.k();
  const std::int64_t ell = inst.lower_bound();
  const Rational alpha_tau = A.alpha * tau;

  std::optional<Clustering> start = runner.run(all_points(inst), k, 0);
  if (!start || start->radius > alpha_tau) {
    if (start) trace_event(trace, tau, 0, *start, 0, "rejected");
    return std::nullopt;
  }
  Clustering cur = *start;
  for (int iter = 0;; ++iter) {
    internal_check(iter <= k, "capacitated loop exceeded its iteration bound");
    GraphSpec spec{.kind = GraphKind::Points, .with_outliers = false, .lower_bound = ell};
    ThresholdGraph tg = build_threshold_graph(inst, cur, tau, spec);
    FlowResult fr = max_flow(tg.net);
    if (fr.all_sink_arcs_saturated()) {
      Clustering res = reassign_from_flow(inst, cur, tg, fr);
      trace_event(trace, tau, iter, res, 0, "accepted");
      return res;
    }
    CutAnalysis cut = analyze_cut(inst, cur, tg, fr);
    const int k2 = static_cast<int>(cut.clusters_in_cut.size());
    std::optional<Clustering> repl;
    if (k2 - 1 >= 1) {
      repl = runner.run(cut.points_in_cut, k2 - 1, 0);
      if (repl && repl->radius > alpha_tau) repl.reset();
    }
    if (!repl) {
      trace_event(trace, tau, iter, cur, k2, "rejected");
      return std::nullopt;
    }
    Clustering next = splice(inst, cur, cut.clusters_in_cut, *repl, /*replace_outliers=*/false);
    internal_check(next.radius <= alpha_tau, "spliced solution exceeded alpha*tau");
    internal_check(next.num_clusters() < cur.num_clusters(),
                   "capacitated iteration did not drop a cluster");
    trace_event(trace, tau, iter, next, k2, "recompute");
    cur = std::move(next);
  }
}

}  // namespace

std::optional<Clustering> private_capacitated_at_tau(const Instance& inst,
                                                     const UnderlyingSolver& A,
                                                     const Rational& tau) {
  UnderlyingRunner runner{inst, A, /*keep_capacities=*/true, {}};
  return private_capacitated_once(inst, A, tau, runner, nullptr);
}

Clustering solve_private_capacitated(const Instance& inst, const UnderlyingSolver& A,
                                     TauTrace* trace) {
  if (!inst.has_capacities())
    throw InvalidInstanceError("private capacitated solve needs capacities");
  std::int64_t total_cap = 0;
  for (int l = 0; l < inst.num_locations(); ++l) total_cap += inst.capacity(l);
  if (total_cap < inst.num_points())
    throw InfeasibleError("capacities cannot absorb every point");
  UnderlyingRunner runner{inst, A, /*keep_capacities=*/true, {}};
  for (const Rational& tau : candidate_radii(inst))
    if (auto sol = private_capacitated_once(inst, A, tau, runner, trace)) return *sol;
  throw InfeasibleError("private capacitated k-center: no threshold accepted");
}

// ---------------------------------------------------------------------------
// Private fair k-center.
// ---------------------------------------------------------------------------

namespace {

struct FairState {
  Clustering clustering;
  std::vector<std::vector<int>> fairlets;
  std::vector<int> fairlet_cluster;
};

struct FairRunner {
  const Instance& parent;
  const FairUnderlying& B;
  std::map<std::pair<std::vector<int>, int>, std::optional<FairSolveOutput>> cache;

  std::optional<FairSolveOutput> run(const std::vector<int>& points, int k) {
    if (k < 1) return std::nullopt;
    auto key = std::make_pair(points, k);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Instance::Restriction r;
    r.points = points;
    r.keep_all_locations = !B.needs_L_eq_P;
    r.k = k;
    r.keep_colors = true;
    Instance sub = parent.restrict(r);
    std::optional<FairSolveOutput> raw = B.solve(sub, k);
    std::optional<FairSolveOutput> mapped;
    if (raw) {
      FairSolveOutput out = *raw;
      for (Cluster& c : out.clustering.clusters) {
        if (B.needs_L_eq_P) c.location = points[c.location];
        for (int& p : c.members) p = points[p];
        std::sort(c.members.begin(), c.members.end());
      }
      out.clustering.radius = partial_radius(parent, out.clustering);
      for (auto& f : out.fairlets) {
        for (int& p : f) p = points[p];
        std::sort(f.begin(), f.end());
      }
      mapped = std::move(out);
    }
    cache.emplace(key, mapped);
    return mapped;
  }
};

std::optional<Clustering> private_fair_once(const Instance& inst, const Rational& tau,
                                            FairRunner& runner, std::int64_t ell_rounded,
                                            TauTrace* trace) {
  const int k = inst.k();
  std::optional<FairSolveOutput> start = runner.run(all_points(inst), k);
  if (!start) return std::nullopt;
  auto acceptable = [&](const FairSolveOutput& out) {
    if (out.clustering.radius > out.declared_factor * tau) return false;
    if (!out.declared_partition_factor.is_zero() &&
        out.partition_bottleneck > out.declared_partition_factor * tau)
      return false;
    return true;
  };
  if (!acceptable(*start)) {
    trace_event(trace, tau, 0, start->clustering, 0, "rejected");
    return std::nullopt;
  }
  FairState cur{start->clustering, start->fairlets, start->fairlet_cluster};
  for (int iter = 0;; ++iter) {
    internal_check(iter <= k, "fair loop exceeded its iteration bound");
    GraphSpec spec{.kind = GraphKind::FairSets, .lower_bound = ell_rounded};
    spec.fairlets = &cur.fairlets;
    spec.fairlet_cluster = &cur.fairlet_cluster;
    ThresholdGraph tg = build_threshold_graph(inst, cur.clustering, tau, spec);
    FlowResult fr = max_flow(tg.net);
    if (fr.all_sink_arcs_saturated()) {
      Clustering res = reassign_from_flow(inst, cur.clustering, tg, fr);
      trace_event(trace, tau, iter, res, 0, "accepted");
      return res;
    }
    CutAnalysis cut = analyze_cut(inst, cur.clustering, tg, fr);
    const int k2 = static_cast<int>(cut.clusters_in_cut.size());
    std::optional<FairSolveOutput> repl;
    if (k2 - 1 >= 1) {
      repl = runner.run(cut.points_in_cut, k2 - 1);
      if (repl && !acceptable(*repl)) repl.reset();
    }
    if (!repl) {
      trace_event(trace, tau, iter, cur.clustering, k2, "rejected");
      return std::nullopt;
    }
    // Splice clustering and fairlets together.
    std::vector<bool> drop(cur.clustering.clusters.size(), false);
    for (int j : cut.clusters_in_cut) drop[j] = true;
    std::vector<int> new_index(cur.clustering.clusters.size(), -1);
    FairState next;
    for (std::size_t j = 0; j < cur.clustering.clusters.size(); ++j)
      if (!drop[j]) {
        new_index[j] = static_cast<int>(next.clustering.clusters.size());
        next.clustering.clusters.push_back(cur.clustering.clusters[j]);
      }
    const int offset = static_cast<int>(next.clustering.clusters.size());
    for (const Cluster& c : repl->clustering.clusters) next.clustering.clusters.push_back(c);
    for (std::size_t f = 0; f < cur.fairlets.size(); ++f)
      if (!drop[cur.fairlet_cluster[f]]) {
        next.fairlets.push_back(cur.fairlets[f]);
        next.fairlet_cluster.push_back(new_index[cur.fairlet_cluster[f]]);
      }
    for (std::size_t f = 0; f < repl->fairlets.size(); ++f) {
      next.fairlets.push_back(repl->fairlets[f]);
      next.fairlet_cluster.push_back(offset + repl->fairlet_cluster[f]);
    }
    next.clustering.radius = eval_radius(inst, next.clustering);
    internal_check(next.clustering.num_clusters() < cur.clustering.num_clusters(),
                   "fair iteration did not drop a cluster");
    trace_event(trace, tau, iter, next.clustering, k2, "recompute");
    cur = std::move(next);
  }
}

}  // namespace

std::optional<Clustering> private_fair_at_tau(const Instance& inst, const FairUnderlying& B,
                                              const Rational& tau) {
  FairQuotas q = fair_structure(inst);
  std::int64_t ell_rounded = (inst.lower_bound() + q.block - 1) / q.block * q.block;
  FairRunner runner{inst, B, {}};
  return private_fair_once(inst, tau, runner, ell_rounded, nullptr);
}

Clustering solve_private_fair(const Instance& inst, const FairUnderlying& B, TauTrace* trace) {
  if (!inst.has_colors()) throw InvalidInstanceError("private fair solve needs colors");
  FairQuotas q = fair_structure(inst);
  const std::int64_t ell_rounded = (inst.lower_bound() + q.block - 1) / q.block * q.block;
  if (static_cast<std::int64_t>(inst.k()) * ell_rounded > inst.num_points())
    throw InfeasibleError("private fair k-center: rounded bound exceeds the point supply");
  FairRunner runner{inst, B, {}};
  for (const Rational& tau : candidate_radii(inst))
    if (auto sol = private_fair_once(inst, tau, runner, ell_rounded, trace)) return *sol;
  throw InfeasibleError("private fair k-center: no threshold accepted");
}

// ---------------------------------------------------------------------------
// Private fair capacitated k-center via fairlet contraction.
// ---------------------------------------------------------------------------

Clustering solve_private_fair_capacitated(const Instance& inst,
                                          const PrivateCapacitatedUnderlying& A,
                                          TauTrace* trace) {
  if (!inst.has_colors()) throw InvalidInstanceError("fair capacitated solve needs colors");
  if (!inst.has_capacities()) throw InvalidInstanceError("fair capacitated solve needs capacities");
  FairQuotas q = fair_structure(inst);
  const std::int64_t b = q.block;
  const std::int64_t ell_rounded = (inst.lower_bound() + b - 1) / b * b;

  FairSubsets fs = fair_subset_partition(inst);
  const int groups = static_cast<int>(fs.subsets.size());

  // Locations survive when their rounded-down capacity still fits a cluster:
  // at least one block and at least the rounded lower bound.
  std::vector<int> usable;
  for (int l = 0; l < inst.num_locations(); ++l) {
    std::int64_t down = inst.capacity(l) / b * b;
    if (down >= std::max<std::int64_t>(b, ell_rounded)) usable.push_back(l);
  }
  if (usable.empty())
    throw InfeasibleError("fair capacitated: no location survives the block rounding");

  Instance::Data cd;
  cd.num_points = groups;
  cd.locations_are_points = false;
  cd.num_locations = static_cast<int>(usable.size());
  cd.k = inst.k();
  cd.lower_bound = ell_rounded / b;
  std::vector<std::int64_t> caps;
  for (int l : usable) caps.push_back(inst.capacity(l) / b);
  cd.capacities = std::move(caps);
  cd.capacities_uniform = inst.capacities_uniform();
  const int side = groups + cd.num_locations;
  cd.matrix.assign(side * side, Rational(0));
  // Contracted distance to a location: the farthest member. Between groups:
  // the farthest pair, which keeps the triangle inequality intact.
  auto group_loc = [&](int g, int l) {
    Rational worst(0);
    for (int p : fs.subsets[g]) worst = std::max(worst, inst.point_loc(p, l));
    return worst;
  };
  for (int a = 0; a < groups; ++a)
    for (int bb = 0; bb < groups; ++bb) {
      if (a == bb) continue;
      Rational worst(0);
      for (int p : fs.subsets[a])
        for (int p2 : fs.subsets[bb]) worst = std::max(worst, inst.point_point(p, p2));
      cd.matrix[a * side + bb] = worst;
    }
  for (int a = 0; a < groups; ++a)
    for (int l = 0; l < cd.num_locations; ++l) {
      cd.matrix[a * side + groups + l] = group_loc(a, usable[l]);
      cd.matrix[(groups + l) * side + a] = cd.matrix[a * side + groups + l];
    }
  for (int l = 0; l < cd.num_locations; ++l)
    for (int m = 0; m < cd.num_locations; ++m)
      cd.matrix[(groups + l) * side + groups + m] = inst.loc_loc(usable[l], usable[m]);

  Instance contracted(std::move(cd));
  std::optional<Clustering> csol = A.solve(contracted);
  if (!csol) throw InfeasibleError("fair capacitated: contracted instance is infeasible");

  Clustering out;
  for (const Cluster& cc : csol->clusters) {
    Cluster c;
    c.location = usable[cc.location];
    for (int g : cc.members)
      for (int p : fs.subsets[g]) c.members.push_back(p);
    std::sort(c.members.begin(), c.members.end());
    out.clusters.push_back(std::move(c));
  }
  out.radius = eval_radius(inst, out);
  internal_check(out.radius == csol->radius, "contracted radius mismatch after expansion");
  if (trace) trace->push_back({out.radius, 0, out.num_clusters(), 0, 0, "accepted"});
  return out;
}

// ---------------------------------------------------------------------------
// Strongly private k-center.
// ---------------------------------------------------------------------------

namespace {

std::optional<Clustering> strongly_private_once(const Instance& inst, const UnderlyingSolver& A,
                                                const Rational& tau, UnderlyingRunner& runner,
                                                TauTrace* trace) {
  const int k = inst.k();
  const Rational alpha_tau = A.alpha * tau;
  std::optional<Clustering> start = runner.run(all_points(inst), k, 0);
  if (!start || start->radius > alpha_tau) {
    if (start) trace_event(trace, tau, 0, *start, 0, "rejected");
    return std::nullopt;
  }
  Clustering cur = *start;
  for (int iter = 0;; ++iter) {
    internal_check(iter <= k, "strongly private loop exceeded its iteration bound");
    std::vector<ThresholdGraph> graphs;
    std::vector<FlowResult> flows;
    int deficient = -1;
    for (int col = 0; col < inst.num_colors(); ++col) {
      GraphSpec spec{.kind = GraphKind::SingleColor, .lower_bound = inst.color_bound(col),
                     .color = col};
      graphs.push_back(build_threshold_graph(inst, cur, tau, spec));
      flows.push_back(max_flow(graphs.back().net));
      if (deficient == -1 && !flows.back().all_sink_arcs_saturated()) deficient = col;
    }
    if (deficient == -1) {
      // Per-color moves touch disjoint point sets, so apply them together.
      std::vector<UnitMove> moves;
      std::vector<bool> touched(inst.num_points(), false);
      for (int col = 0; col < inst.num_colors(); ++col)
        for (UnitMove& mv : flow_moves(graphs[col], flows[col])) {
          for (int p : mv.points) {
            internal_check(!touched[p], "per-color reassignments interfered");
            touched[p] = true;
          }
          moves.push_back(std::move(mv));
        }
      Clustering res = apply_moves(inst, cur, moves);
      internal_check(res.radius <= cur.radius + tau + tau,
                     "reassignment exceeded its radius bound");
      Verdict v = check_feasible(inst, ConstraintSet{.strong_privacy = true}, res);
      internal_check(v.feasible, "strongly private reassignment left a deficit");
      trace_event(trace, tau, iter, res, 0, "accepted");
      return res;
    }
    CutAnalysis cut = analyze_cut(inst, cur, graphs[deficient], flows[deficient]);
    const int k2 = static_cast<int>(cut.clusters_in_cut.size());
    std::optional<Clustering> repl;
    if (k2 - 1 >= 1) {
      repl = runner.run(cut.points_in_cut, k2 - 1, 0);
      if (repl && repl->radius > alpha_tau) repl.reset();
    }
    if (!repl) {
      trace_event(trace, tau, iter, cur, k2, "rejected");
      return std::nullopt;
    }
    Clustering next = splice(inst, cur, cut.clusters_in_cut, *repl, /*replace_outliers=*/false);
    internal_check(next.radius <= alpha_tau, "spliced solution exceeded alpha*tau");
    internal_check(next.num_clusters() < cur.num_clusters(),
                   "strongly private iteration did not drop a cluster");
    trace_event(trace, tau, iter, next, k2, "recompute");
    cur = std::move(next);
  }
}

}  // namespace

std::optional<Clustering> strongly_private_at_tau(const Instance& inst, const UnderlyingSolver& A,
                                                  const Rational& tau) {
  UnderlyingRunner runner{inst, A, /*keep_capacities=*/false, {}};
  return strongly_private_once(inst, A, tau, runner, nullptr);
}

Clustering solve_strongly_private(const Instance& inst, const UnderlyingSolver& A,
                                  TauTrace* trace) {
  if (!inst.has_colors() || !inst.has_color_bounds())
    throw InvalidInstanceError("strongly private solve needs colors and per-color bounds");
  std::int64_t total = 0;
  for (int c = 0; c < inst.num_colors(); ++c) total += inst.color_bound(c);
  if (static_cast<std::int64_t>(inst.k()) * total > inst.num_points())
    throw InfeasibleError("strongly private k-center: k * sum of bounds exceeds |P|");
  UnderlyingRunner runner{inst, A, /*keep_capacities=*/false, {}};
  for (const Rational& tau : candidate_radii(inst))
    if (auto sol = strongly_private_once(inst, A, tau, runner, trace)) return *sol;
  throw InfeasibleError("strongly private k-center: no threshold accepted");
}

}  // namespace privclust
