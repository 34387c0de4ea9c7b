// Copyright 2026 privclust developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "privclust/facility_location.hpp"
#include "privclust/generator.hpp"
#include "privclust/instance.hpp"
#include "privclust/privacy.hpp"

namespace privclust {

/// Result of one dispatched solve: either a clustering or a facility
/// solution, plus the threshold trace.
struct SolveOutcome {
  std::string variant;
  std::string underlying;
  bool is_fl = false;
  Clustering clustering;
  FLSolution fl;
  TauTrace trace;
};

std::vector<std::string> known_variants();
std::vector<std::string> underlying_options(const std::string& variant);
/// Picks the default underlying for the variant on this instance flavor.
std::string default_underlying(const std::string& variant, const Instance& inst);

/// Runs a variant. Throws MisuseError for unknown names or incompatible
/// instances, InfeasibleError / SizeCapError as the solvers do.
SolveOutcome dispatch_solve(const Instance& inst, const std::string& variant,
                            std::string underlying);

/// The constraints a solution of this variant must satisfy.
ConstraintSet constraints_for(const std::string& variant, const Instance& inst);

/// Exact optimum (radius; facility variant: total cost); nullopt = infeasible.
std::optional<Rational> oracle_value(const Instance& inst, const std::string& variant);

/// Exhaustive fair-subset-partition optimum (the bottleneck objective).
std::optional<Rational> fair_partition_oracle(const Instance& inst);

struct RunReport {
  std::string instance_digest;
  std::string variant;
  std::string underlying;
  std::string value;            // realized radius or total cost
  std::string oracle = "-";     // "-" when not computed
  std::string ratio = "-";
  bool feasible = false;
  int recompute_steps = 0;      // total recompute events across thresholds
  std::uint64_t seed = 0;
};
std::string format_report(const RunReport& r);

struct BenchConfig {
  std::string variant = "private-outliers";
  std::string underlying;  // empty = default per instance
  int trials = 200;
  std::uint64_t seed = 1;
  int max_n = 8;
  bool with_oracle = true;
};

struct BenchOutcome {
  bool ok = true;
  std::string report;  // canonical text, byte-stable for a fixed config
  std::string replay;  // offending instance document when !ok
};
/// Generates admissible random instances for the variant, solves, verifies
/// feasibility, and (with the oracle on) enforces the declared factor. Any
/// breach stops the sweep and serializes the instance for replay.
BenchOutcome run_bench(const BenchConfig& cfg);

}  // namespace privclust
