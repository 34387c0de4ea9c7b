// Copyright 2026 privclust developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "privclust/fair_partition.hpp"
#include "privclust/flow.hpp"
#include "privclust/instance.hpp"

namespace privclust {

// ---------------------------------------------------------------------------
// Threshold graphs: the flow networks that shift units (points, fair sets,
// or one color's points) from surplus clusters to deficit clusters while
// moving nothing farther than 2*tau from its target cluster.
// ---------------------------------------------------------------------------

enum class GraphKind { Points, FairSets, SingleColor };

struct GraphSpec {
  GraphKind kind = GraphKind::Points;
  bool with_outliers = false;        // Points only
  std::int64_t lower_bound = 0;      // per-cluster point bound (FairSets: pre-rounded)
  std::int64_t outlier_budget = 0;   // capacity of the source->outlier-pool arc
  int color = -1;                    // SingleColor
  const std::vector<std::vector<int>>* fairlets = nullptr;  // FairSets
  const std::vector<int>* fairlet_cluster = nullptr;        // cluster index per fairlet
};

struct ThresholdGraph {
  explicit ThresholdGraph(FlowNetwork n) : net(std::move(n)) {}

  GraphSpec spec;
  Rational tau;
  std::int64_t block = 1;        // points per unit
  std::int64_t unit_demand = 0;  // per-cluster lower bound measured in units

  FlowNetwork net;
  std::vector<int> cluster_node;  // node id per snapshot cluster
  int outlier_node = -1;

  std::vector<std::vector<int>> units;  // unit -> sorted point ids
  std::vector<int> unit_owner;          // cluster index, -1 = outlier pool
  std::vector<int> unit_node;
  std::vector<std::int64_t> cluster_units;

  // arc id -> (unit, cluster) for reassignment arcs unit->cluster
  std::map<int, std::pair<int, int>> move_arcs;
};

/// Builds the variant's threshold graph against a snapshot of sol. Arc
/// existence follows the 2*tau reassignment rule on the snapshot's original
/// cluster contents; surplus/deficit arcs carry |C_i| - bound (in units).
ThresholdGraph build_threshold_graph(const Instance& inst, const Clustering& sol,
                                     const Rational& tau, const GraphSpec& spec);

/// One applied reassignment: a unit's points leave their owner (cluster or
/// the outlier pool) for a target cluster.
struct UnitMove {
  std::vector<int> points;
  int from_cluster;  // -1 = outlier pool
  int to_cluster;
};
std::vector<UnitMove> flow_moves(const ThresholdGraph& tg, const FlowResult& fr);

Clustering apply_moves(const Instance& inst, const Clustering& sol,
                       const std::vector<UnitMove>& moves);

/// Applies every unit arc carrying flow, provided the flow saturates all
/// sink arcs (MisuseError otherwise). Asserts the radius accounting
/// (<= r + 2*tau per point unit, <= 3r + 2*tau for fair sets) and that the
/// moved dimension now meets its lower bounds.
Clustering reassign_from_flow(const Instance& inst, const Clustering& sol,
                              const ThresholdGraph& tg, const FlowResult& fr);

/// Residual cut bookkeeping when some sink arc stays unsaturated.
struct CutAnalysis {
  std::vector<bool> unreachable;     // node mask (V')
  std::vector<int> clusters_in_cut;  // cluster indices
  std::vector<int> points_in_cut;    // all points of those clusters
  std::vector<int> points_adjacent;  // unit points pulled toward the cut
  std::int64_t units_in_cut = 0;
  std::int64_t units_adjacent = 0;
  std::int64_t current_outliers = 0;
};

/// Computes the cut sets and asserts the structural residual-cut properties
/// plus the counting bound units_in_cut + units_adjacent < k'' * demand.
/// MisuseError when every sink arc is saturated.
CutAnalysis analyze_cut(const Instance& inst, const Clustering& sol, const ThresholdGraph& tg,
                        const FlowResult& fr);

/// Outlier-variant predicate: a candidate cluster is special when it touches
/// the cut's points or consists purely of the former outliers.
bool is_special_cluster(const CutAnalysis& cut, const std::vector<int>& members,
                        const std::vector<int>& former_outliers);

// ---------------------------------------------------------------------------
// Pluggable underlying solvers.
// ---------------------------------------------------------------------------

struct UnderlyingSolver {
  std::string id;
  Rational alpha{1};
  bool needs_L_eq_P = false;
  // Solves the relaxed problem on a (sub)instance; nullopt = no solution.
  std::function<std::optional<Clustering>(const Instance&, int k, std::int64_t o)> solve;
};

UnderlyingSolver make_exact_underlying();           // alpha 1, supplier-capable
UnderlyingSolver make_exact_capacitated_underlying();
UnderlyingSolver make_gonzalez_underlying();        // alpha 2, L = P
UnderlyingSolver make_hs_supplier_underlying();     // alpha 3
UnderlyingSolver make_outliers_greedy_underlying(); // alpha 3, L = P

struct FairUnderlying {
  std::string id;
  bool supplier = false;
  bool needs_L_eq_P = false;
  std::function<std::optional<FairSolveOutput>(const Instance&, int k)> solve;
};
FairUnderlying make_fairlet_fair_underlying(bool supplier);
FairUnderlying make_exact_fair_underlying();

struct PrivateCapacitatedUnderlying {
  std::string id;
  Rational alpha{1};
  // Consumes the instance's own k / ell / capacities.
  std::function<std::optional<Clustering>(const Instance&)> solve;
};
PrivateCapacitatedUnderlying make_exact_private_capacitated_underlying();

// ---------------------------------------------------------------------------
// Per-threshold iteration traces.
// ---------------------------------------------------------------------------

struct TauTraceEntry {
  Rational tau;
  int iteration = 0;
  int clusters = 0;
  std::int64_t outliers = 0;
  int cut_clusters = 0;  // k'' when a recompute happened
  std::string event;     // rejected | recompute | accepted
};
using TauTrace = std::vector<TauTraceEntry>;

std::string format_trace(const TauTrace& trace);

// ---------------------------------------------------------------------------
// The five privatizing solvers. Each sweeps the candidate thresholds in
// ascending order and returns the first accepted clustering; InfeasibleError
// when no threshold is accepted.
// ---------------------------------------------------------------------------

Clustering solve_private_outliers(const Instance&, const UnderlyingSolver& A,
                                  TauTrace* trace = nullptr);
Clustering solve_private_capacitated(const Instance&, const UnderlyingSolver& A,
                                     TauTrace* trace = nullptr);
Clustering solve_private_fair(const Instance&, const FairUnderlying& B,
                              TauTrace* trace = nullptr);
Clustering solve_private_fair_capacitated(const Instance&, const PrivateCapacitatedUnderlying& A,
                                          TauTrace* trace = nullptr);
Clustering solve_strongly_private(const Instance&, const UnderlyingSolver& A,
                                  TauTrace* trace = nullptr);

// Single-threshold attempts, exposed so tests can verify the accept set is
// upward closed in tau.
std::optional<Clustering> private_outliers_at_tau(const Instance&, const UnderlyingSolver& A,
                                                  const Rational& tau);
std::optional<Clustering> private_capacitated_at_tau(const Instance&, const UnderlyingSolver& A,
                                                     const Rational& tau);
std::optional<Clustering> private_fair_at_tau(const Instance&, const FairUnderlying& B,
                                              const Rational& tau);
std::optional<Clustering> strongly_private_at_tau(const Instance&, const UnderlyingSolver& A,
                                                  const Rational& tau);

}  // namespace privclust
