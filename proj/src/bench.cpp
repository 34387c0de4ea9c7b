// Copyright 2026 privclust developers
// SPDX-License-Identifier: Apache-2.0
#include "privclust/bench.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "privclust/base_solvers.hpp"
#include "privclust/guarantees.hpp"
#include "privclust/instance_io.hpp"

namespace privclust {

std::vector<std::string> known_variants() {
  return {"private-outliers",  "private-capacitated", "private-fair",
          "private-fair-capacitated", "strongly-private", "fair",
          "fair-subset-partition", "private-capacitated-fl", "gonzalez",
          "hs-supplier", "outliers-greedy", "soft-capacitated"};
}

std::vector<std::string> underlying_options(const std::string& variant) {
  if (variant == "private-outliers") return {"exact", "outliers-greedy"};
  if (variant == "private-capacitated") return {"exact"};
  if (variant == "private-fair")
    return {"fair-fairlet-center", "fair-fairlet-supplier", "exact"};
  if (variant == "private-fair-capacitated") return {"exact"};
  if (variant == "strongly-private") return {"gonzalez", "hs-supplier", "exact"};
  if (variant == "fair") return {"fair-fairlet-center", "fair-fairlet-supplier", "exact"};
  if (variant == "private-capacitated-fl") return {"exact"};
  return {"-"};
}

std::string default_underlying(const std::string& variant, const Instance& inst) {
  const bool supplier = !inst.locations_are_points();
  if (variant == "private-fair" || variant == "fair")
    return supplier ? "fair-fairlet-supplier" : "fair-fairlet-center";
  if (variant == "strongly-private") return supplier ? "hs-supplier" : "gonzalez";
  auto opts = underlying_options(variant);
  return opts.front();
}

ConstraintSet constraints_for(const std::string& variant, const Instance& inst) {
  ConstraintSet cs;
  if (variant == "private-outliers") {
    cs.privacy = true;
    cs.outliers = true;
  } else if (variant == "private-capacitated") {
    cs.privacy = true;
    cs.capacities = true;
  } else if (variant == "private-fair") {
    cs.privacy = true;
    cs.fairness = true;
  } else if (variant == "private-fair-capacitated") {
    cs.privacy = true;
    cs.fairness = true;
    cs.capacities = true;
  } else if (variant == "strongly-private") {
    cs.strong_privacy = true;
  } else if (variant == "fair" || variant == "fair-subset-partition") {
    cs.fairness = true;
  } else if (variant == "outliers-greedy") {
    cs.outliers = true;
  } else if (variant == "soft-capacitated" || variant == "gonzalez" ||
             variant == "hs-supplier" || variant == "private-capacitated-fl") {
    // structural checks only (facility bounds are checked by fl paths)
  } else {
    throw MisuseError("unknown variant: " + variant);
  }
  (void)inst;
  return cs;
}

namespace {

UnderlyingSolver pick_point_underlying(const std::string& id) {
  if (id == "exact") return make_exact_underlying();
  if (id == "gonzalez") return make_gonzalez_underlying();
  if (id == "hs-supplier") return make_hs_supplier_underlying();
  if (id == "outliers-greedy") return make_outliers_greedy_underlying();
  throw MisuseError("unknown underlying solver: " + id);
}

FairUnderlying pick_fair_underlying(const std::string& id) {
  if (id == "fair-fairlet-center") return make_fairlet_fair_underlying(false);
  if (id == "fair-fairlet-supplier") return make_fairlet_fair_underlying(true);
  if (id == "exact") return make_exact_fair_underlying();
  throw MisuseError("unknown fair underlying solver: " + id);
}

void require_center_flavor(const Instance& inst, const std::string& who) {
  if (!inst.locations_are_points())
    throw MisuseError(who + " requires an instance with locations = points");
}

}  // namespace

SolveOutcome dispatch_solve(const Instance& inst, const std::string& variant,
                            std::string underlying) {
  if (underlying.empty() || underlying == "-") underlying = default_underlying(variant, inst);
  SolveOutcome out;
  out.variant = variant;
  out.underlying = underlying;

  if (variant == "private-outliers") {
    UnderlyingSolver a = pick_point_underlying(underlying);
    if (a.needs_L_eq_P) require_center_flavor(inst, underlying);
    out.clustering = solve_private_outliers(inst, a, &out.trace);
  } else if (variant == "private-capacitated") {
    if (underlying != "exact") throw MisuseError("private-capacitated supports underlying=exact");
    UnderlyingSolver a = make_exact_capacitated_underlying();
    out.clustering = solve_private_capacitated(inst, a, &out.trace);
  } else if (variant == "private-fair") {
    FairUnderlying b = pick_fair_underlying(underlying);
    if (b.needs_L_eq_P) require_center_flavor(inst, underlying);
    out.clustering = solve_private_fair(inst, b, &out.trace);
  } else if (variant == "private-fair-capacitated") {
    if (underlying != "exact")
      throw MisuseError("private-fair-capacitated supports underlying=exact");
    out.clustering =
        solve_private_fair_capacitated(inst, make_exact_private_capacitated_underlying(), &out.trace);
  } else if (variant == "strongly-private") {
    UnderlyingSolver a = pick_point_underlying(underlying);
    if (a.needs_L_eq_P) require_center_flavor(inst, underlying);
    out.clustering = solve_strongly_private(inst, a, &out.trace);
  } else if (variant == "fair") {
    if (underlying == "exact") {
      auto res = exact_fair_solver(inst, inst.k());
      if (!res) throw InfeasibleError("no fair clustering within this budget");
      out.clustering = res->clustering;
    } else {
      bool supplier = underlying == "fair-fairlet-supplier";
      if (underlying != "fair-fairlet-center" && !supplier)
        throw MisuseError("unknown fair underlying solver: " + underlying);
      if (!supplier) require_center_flavor(inst, underlying);
      out.clustering = fair_center_via_fairlets(inst, inst.k(), supplier).clustering;
    }
  } else if (variant == "fair-subset-partition") {
    require_center_flavor(inst, variant);
    FairSubsets fs = fair_subset_partition(inst);
    if (static_cast<int>(fs.subsets.size()) > inst.k())
      throw MisuseError("fair-subset-partition needs k at least the fairlet count");
    for (std::size_t i = 0; i < fs.subsets.size(); ++i)
      out.clustering.clusters.push_back({fs.representatives[i], fs.subsets[i]});
    out.clustering.radius = fs.bottleneck;
    out.underlying = "-";
  } else if (variant == "private-capacitated-fl") {
    if (underlying != "exact")
      throw MisuseError("private-capacitated-fl supports underlying=exact");
    auto base = brute_force_private_fl(inst, /*with_capacities=*/false);
    if (!base) throw InfeasibleError("private facility location is infeasible");
    out.fl = privatize_fl(inst, *base);
    out.is_fl = true;
  } else if (variant == "gonzalez") {
    require_center_flavor(inst, variant);
    out.clustering = gonzalez_kcenter(inst, inst.k());
    out.underlying = "-";
  } else if (variant == "hs-supplier") {
    out.clustering = hochbaum_shmoys_ksupplier(inst, inst.k());
    out.underlying = "-";
  } else if (variant == "outliers-greedy") {
    require_center_flavor(inst, variant);
    out.clustering = outliers_greedy_kcenter(inst, inst.k(), inst.outlier_budget());
    out.underlying = "-";
  } else if (variant == "soft-capacitated") {
    require_center_flavor(inst, variant);
    if (!inst.has_capacities() || !inst.capacities_uniform())
      throw MisuseError("soft-capacitated needs uniform capacities");
    out.clustering = soft_capacitated_kcenter(inst, inst.k(), inst.capacity(0));
    out.underlying = "-";
  } else {
    throw MisuseError("unknown variant: " + variant);
  }
  return out;
}

std::optional<Rational> oracle_value(const Instance& inst, const std::string& variant) {
  if (variant == "private-capacitated-fl") {
    auto best = brute_force_private_fl(inst, /*with_capacities=*/true);
    if (!best) return std::nullopt;
    return best->total_cost;
  }
  if (variant == "fair-subset-partition") return fair_partition_oracle(inst);
  ConstraintSet cs = constraints_for(variant, inst);
  if (variant == "gonzalez" || variant == "hs-supplier") cs = ConstraintSet{};
  if (variant == "soft-capacitated") {
    // Soft capacities: enumerate location multiplicity vectors.
    require_center_flavor(inst, variant);
    const int n = inst.num_points();
    const std::int64_t cap = inst.capacity(0);
    std::vector<Rational> radii = candidate_radii(inst);
    for (const Rational& r : radii) {
      // Greedy feasibility: every point needs a slot within r; slot counts
      // found by a flow per multiplicity-relaxation: assignment with each
      // location allowed ceil(n/cap) slots is equivalent to capacities
      // cap * k at each location subject to total slots <= k. Search all
      // multiplicity vectors on the distinct locations actually within
      // range; n is small here.
      std::vector<std::vector<int>> reach(n);
      for (int l = 0; l < n; ++l)
        for (int p = 0; p < n; ++p)
          if (inst.point_point(p, l) <= r) reach[l].push_back(p);
      // DFS over multiplicities with pruning.
      std::vector<std::int64_t> mult(n, 0);
      std::function<bool(int, std::int64_t)> dfs = [&](int l, std::int64_t slots) -> bool {
        if (slots > inst.k()) return false;
        if (l == n) {
          // b-matching feasibility via a greedy flow: points to locations.
          FlowNetwork net(n + n + 2, 0, n + n + 1);
          for (int p = 0; p < n; ++p) net.add_arc(0, 1 + p, 1);
          for (int ll = 0; ll < n; ++ll) {
            if (mult[ll] == 0) continue;
            for (int p : reach[ll]) net.add_arc(1 + p, 1 + n + ll, 1);
            net.add_arc(1 + n + ll, n + n + 1, mult[ll] * cap);
          }
          return max_flow(net).value == n;
        }
        for (std::int64_t m = 0; m <= std::min<std::int64_t>(inst.k() - slots,
                                                             (n + cap - 1) / cap);
             ++m) {
          mult[l] = m;
          if (dfs(l + 1, slots + m)) return true;
        }
        mult[l] = 0;
        return false;
      };
      if (dfs(0, 0)) return r;
    }
    return std::nullopt;
  }
  auto sol = exact_solve(inst, cs, inst.k(), inst.outlier_budget());
  if (!sol) return std::nullopt;
  return sol->radius;
}

std::optional<Rational> fair_partition_oracle(const Instance& inst) {
  FairQuotas q = fair_structure(inst);
  const int n = inst.num_points();
  const int groups = static_cast<int>(n / q.block);
  // Assign points to groups respecting per-color quotas; minimize over
  // partitions of the best representative's eccentricity.
  std::vector<int> group_of(n, -1);
  std::vector<std::vector<std::int64_t>> used(groups,
                                              std::vector<std::int64_t>(inst.num_colors(), 0));
  Rational best(-1);
  std::function<void(int)> rec = [&](int p) {
    if (p == n) {
      Rational worst(0);
      for (int g = 0; g < groups; ++g) {
        Rational grp_best(-1);
        for (int y = 0; y < n; ++y) {
          Rational ecc(0);
          for (int x = 0; x < n; ++x)
            if (group_of[x] == g) ecc = std::max(ecc, inst.point_point(y, x));
          if (grp_best.is_negative() || ecc < grp_best) grp_best = ecc;
        }
        worst = std::max(worst, grp_best);
      }
      if (best.is_negative() || worst < best) best = worst;
      return;
    }
    int col = inst.color_of(p);
    // Symmetry break: a point may only open the next empty group.
    bool opened_empty = false;
    for (int g = 0; g < groups; ++g) {
      bool empty = true;
      for (int c = 0; c < inst.num_colors(); ++c)
        if (used[g][c] > 0) empty = false;
      if (empty) {
        if (opened_empty) continue;
        opened_empty = true;
      }
      if (used[g][col] >= q.per_color[col]) continue;
      ++used[g][col];
      group_of[p] = g;
      rec(p + 1);
      group_of[p] = -1;
      --used[g][col];
    }
  };
  rec(0);
  if (best.is_negative()) return std::nullopt;
  return best;
}

std::string format_report(const RunReport& r) {
  std::ostringstream out;
  out << "privclust report v1\n";
  out << "instance " << r.instance_digest << "\n";
  out << "variant " << r.variant << "\n";
  out << "underlying " << r.underlying << "\n";
  out << "value " << r.value << "\n";
  out << "oracle " << r.oracle << "\n";
  out << "ratio " << r.ratio << "\n";
  out << "feasible " << (r.feasible ? "yes" : "no") << "\n";
  out << "recompute_steps " << r.recompute_steps << "\n";
  out << "seed " << r.seed << "\n";
  out << "end\n";
  return out.str();
}

namespace {

// Instance generator settings per variant, kept inside the regime where the
// solver and the oracle agree on feasibility.
GenSpec bench_spec(const BenchConfig& cfg, std::uint64_t seed, SplitMix& rng) {
  const std::string& variant = cfg.variant;
  const int max_n = cfg.max_n;
  GenSpec g;
  g.seed = seed;
  g.metric = rng.chance(50) ? MetricKind::Euclidean : MetricKind::GraphShortestPath;
  g.num_points = static_cast<int>(rng.range(4, std::max(4, max_n)));
  g.k = static_cast<int>(rng.range(1, 3));
  // Supplier-flavored underlyings get supplier instances.
  if (cfg.underlying.find("supplier") != std::string::npos)
    g.num_locations = static_cast<int>(rng.range(2, 5));
  if (variant == "private-outliers") {
    g.ell = rng.range(1, 3);
    g.outliers = rng.range(1, 2);
  } else if (variant == "private-capacitated") {
    g.ell = rng.range(1, 3);
    g.capacities = true;
    g.uniform_caps = rng.chance(60);
  } else if (variant == "private-fair" || variant == "fair") {
    g.color_mode = rng.chance(60) ? ColorMode::ForceQuotaOne : ColorMode::Balanced;
    if (rng.chance(20)) g.color_mode = ColorMode::General;
    g.num_colors = static_cast<int>(rng.range(2, 3));
    g.ell = variant == "fair" ? 0 : rng.range(1, 3);
  } else if (variant == "private-fair-capacitated") {
    g.color_mode = rng.chance(70) ? ColorMode::Balanced : ColorMode::ForceQuotaOne;
    g.num_colors = 2;
    g.ell = rng.range(1, 2);
    g.capacities = true;
    g.uniform_caps = rng.chance(60);
  } else if (variant == "strongly-private") {
    g.color_mode = rng.chance(50) ? ColorMode::Balanced : ColorMode::Skewed;
    g.num_colors = static_cast<int>(rng.range(2, 3));
    g.color_bounds = true;
  } else if (variant == "fair-subset-partition") {
    g.color_mode = rng.chance(50) ? ColorMode::Balanced
                                  : (rng.chance(50) ? ColorMode::ForceQuotaOne : ColorMode::General);
    g.num_colors = 2;
  } else if (variant == "private-capacitated-fl") {
    g.ell = rng.range(1, 2);
    g.opening_cost = true;
  } else if (variant == "outliers-greedy") {
    g.outliers = rng.range(0, 2);
  } else if (variant == "soft-capacitated") {
    g.capacities = true;
  }
  return g;
}

Instance bench_instance(const std::string& variant, const GenSpec& spec0) {
  if (variant == "private-capacitated-fl") {
    // Facility pipeline: uniform capacities with 2*ell <= u, no k budget.
    SplitMix rng(spec0.seed ^ 0xf1f1f1f1ULL);
    GenSpec g = spec0;
    g.capacities = false;
    Instance base = generate_instance(g);
    Instance::Data d = base.data();
    std::int64_t u = rng.range(std::max<std::int64_t>(2 * d.lower_bound, 2), d.num_points + 2);
    d.capacities = std::vector<std::int64_t>(base.num_locations(), u);
    d.capacities_uniform = true;
    d.k = d.num_points;  // the pipeline ignores k; keep the pigeonhole gate off
    d.outlier_budget = 0;
    return Instance(std::move(d));
  }
  Instance inst = generate_instance(spec0);
  if (variant == "fair-subset-partition") {
    Instance::Data d = inst.data();
    FairQuotas q = fair_structure(inst);
    d.k = static_cast<int>(d.num_points / q.block);
    d.lower_bound = 0;
    return Instance(std::move(d));
  }
  if (variant == "fair" || variant == "private-fair" || variant == "private-fair-capacitated") {
    // The fairlet pipeline opens at most one cluster per fairlet; keep the
    // budget inside that regime so solver and oracle agree on feasibility.
    FairQuotas q = fair_structure(inst);
    int max_k = static_cast<int>(inst.num_points() / q.block);
    if (inst.k() > max_k) {
      Instance::Data d = inst.data();
      d.k = std::max(1, max_k);
      return Instance(std::move(d));
    }
  }
  return inst;
}

int count_recomputes(const TauTrace& trace) {
  int total = 0;
  for (const TauTraceEntry& e : trace)
    if (e.event == "recompute") ++total;
  return total;
}

}  // namespace

BenchOutcome run_bench(const BenchConfig& cfg) {
  BenchOutcome out;
  std::ostringstream rep;
  SplitMix master(cfg.seed);
  Rational worst_ratio(0);
  int worst_recomputes = 0;
  int completed = 0;
  int attempts = 0;
  const int attempt_cap = cfg.trials * 60;

  while (completed < cfg.trials && attempts < attempt_cap) {
    ++attempts;
    std::uint64_t trial_seed = master.next();
    SplitMix trial_rng(trial_seed);
    GenSpec spec = bench_spec(cfg, trial_seed, trial_rng);
    Instance inst = bench_instance(cfg.variant, spec);

    std::optional<Rational> opt;
    if (cfg.with_oracle) {
      opt = oracle_value(inst, cfg.variant);
      if (!opt) continue;  // infeasible draw; take the next seed
    }

    SolveOutcome sol;
    try {
      sol = dispatch_solve(inst, cfg.variant, cfg.underlying);
    } catch (const InfeasibleError&) {
      if (!cfg.with_oracle) continue;
      out.ok = false;
      rep << "FAIL solver infeasible where the oracle is feasible (seed " << trial_seed << ")\n";
      out.replay = serialize_instance(inst);
      break;
    }

    Rational value;
    bool feasible;
    if (sol.is_fl) {
      FLSolution check = fl_evaluate(inst, sol.fl.clusters);
      feasible = check.total_cost == sol.fl.total_cost;
      const std::int64_t u = inst.capacity(0);
      for (const Cluster& c : sol.fl.clusters)
        if (static_cast<std::int64_t>(c.members.size()) < inst.lower_bound() ||
            static_cast<std::int64_t>(c.members.size()) > u)
          feasible = false;
      value = sol.fl.total_cost;
    } else {
      Verdict v = check_feasible(inst, constraints_for(cfg.variant, inst), sol.clustering);
      feasible = v.feasible && eval_radius(inst, sol.clustering) == sol.clustering.radius;
      value = sol.clustering.radius;
    }
    if (!feasible) {
      out.ok = false;
      rep << "FAIL infeasible output (seed " << trial_seed << ")\n";
      out.replay = serialize_instance(inst);
      break;
    }

    if (cfg.with_oracle) {
      FactorTraits traits = factor_traits(inst);
      auto factor = guaranteed_factor(cfg.variant, sol.underlying, traits);
      if (!factor && sol.underlying == "-") factor = guaranteed_factor(cfg.variant, "-", traits);
      internal_check(factor.has_value(), "no declared factor for this bench pair");
      bool within = opt->is_zero() ? value.is_zero() : value <= *factor * *opt;
      if (!within) {
        out.ok = false;
        rep << "FAIL ratio breach (seed " << trial_seed << "): value " << value.str()
            << " oracle " << opt->str() << " factor " << factor->str() << "\n";
        out.replay = serialize_instance(inst);
        break;
      }
      if (!opt->is_zero()) worst_ratio = std::max(worst_ratio, value / *opt);
    }
    worst_recomputes = std::max(worst_recomputes, count_recomputes(sol.trace));
    ++completed;
  }

  if (out.ok && completed < cfg.trials) {
    out.ok = false;
    rep << "FAIL exhausted attempts before reaching " << cfg.trials << " feasible trials\n";
  }
  rep << "privclust bench v1\n";
  rep << "variant " << cfg.variant << "\n";
  rep << "underlying " << (cfg.underlying.empty() ? "default" : cfg.underlying) << "\n";
  rep << "trials " << completed << "\n";
  rep << "seed " << cfg.seed << "\n";
  rep << "max_n " << cfg.max_n << "\n";
  rep << "oracle " << (cfg.with_oracle ? "on" : "off") << "\n";
  rep << "worst_ratio " << (cfg.with_oracle ? worst_ratio.str() : std::string("-")) << "\n";
  rep << "max_recompute_steps " << worst_recomputes << "\n";
  rep << "status " << (out.ok ? "ok" : "fail") << "\n";
  rep << "end\n";
  out.report = rep.str();
  return out;
}

}  // namespace privclust
