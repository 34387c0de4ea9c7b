// Copyright 2026 privclust developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "privclust/instance.hpp"

namespace privclust {

/// A facility-location solution: open centers (several clusters may share a
/// location under soft capacities) with assignment and exact costs.
struct FLSolution {
  std::vector<Cluster> clusters;
  Rational connection_cost;
  Rational opening_cost;
  Rational total_cost;
};

/// Recomputes all three costs from the clusters; throws on unassigned points.
FLSolution fl_evaluate(const Instance& inst, std::vector<Cluster> clusters);

/// Adds uniform capacities to a private facility-location solution while
/// keeping the lower bound, under the standing assumption 2*ell <= u
/// (precondition error otherwise). Each base cluster is repacked at its
/// own location into full slots plus one remainder slot, slots below the
/// bound are topped up for free from a colocated full slot, and every slot
/// is finally re-centered at its best member. The result respects both
/// bounds at total cost <= 2 * base connection + f * (k' + floor(n/u)).
FLSolution privatize_fl(const Instance& inst, const FLSolution& base);

/// Exact private facility location (lower bound only, or also capacities)
/// by subset enumeration with min-cost assignment flows. |P| <= 10 and
/// P = L required; nullopt when infeasible.
std::optional<FLSolution> brute_force_private_fl(const Instance& inst, bool with_capacities);

}  // namespace privclust
