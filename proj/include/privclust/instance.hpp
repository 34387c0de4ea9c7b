// Copyright 2026 privclust developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "privclust/errors.hpp"
#include "privclust/rational.hpp"

namespace privclust {

/// Thrown when a solution document does not fit its instance.
class MalformedSolutionError : public std::runtime_error {
 public:
  explicit MalformedSolutionError(const std::string& what) : std::runtime_error(what) {}
};

/// A clustering instance: points, candidate center locations, an exact
/// rational metric, and whichever constraint parameters are active.
/// Immutable after construction; all accessors are const.
class Instance {
 public:
  struct Data {
    int num_points = 0;
    // Locations either reuse the point ids (classic k-center) or form their
    // own id range (supplier flavor).
    bool locations_are_points = true;
    int num_locations = 0;  // ignored when locations_are_points
    // Full symmetric matrix over point ids followed by location ids.
    std::vector<Rational> matrix;
    int k = 1;
    std::int64_t lower_bound = 0;   // privacy lower bound, 0 = off
    std::int64_t outlier_budget = 0;
    std::optional<std::vector<std::int64_t>> capacities;  // per location
    bool capacities_uniform = false;
    std::vector<std::string> color_names;  // in first-appearance order
    std::vector<int> colors;               // per point, index into color_names
    std::optional<std::vector<std::int64_t>> color_lower_bounds;  // per color
    std::optional<Rational> opening_cost;
  };

  /// Validates every instance invariant (metric axioms, bound relations,
  /// privacy pigeonhole) and freezes the data. Throws InvalidInstanceError
  /// or InfeasibleError.
  explicit Instance(Data data);

  int num_points() const { return d_.num_points; }
  int num_locations() const {
    return d_.locations_are_points ? d_.num_points : d_.num_locations;
  }
  bool locations_are_points() const { return d_.locations_are_points; }

  const Rational& point_point(int p, int q) const { return at(p, q); }
  const Rational& point_loc(int p, int l) const { return at(p, loc_entity(l)); }
  const Rational& loc_loc(int l, int m) const { return at(loc_entity(l), loc_entity(m)); }

  int k() const { return d_.k; }
  std::int64_t lower_bound() const { return d_.lower_bound; }
  std::int64_t outlier_budget() const { return d_.outlier_budget; }

  bool has_capacities() const { return d_.capacities.has_value(); }
  bool capacities_uniform() const { return d_.capacities_uniform; }
  std::int64_t capacity(int l) const { return (*d_.capacities)[l]; }

  bool has_colors() const { return !d_.colors.empty(); }
  int num_colors() const { return static_cast<int>(d_.color_names.size()); }
  int color_of(int p) const { return d_.colors[p]; }
  const std::string& color_name(int c) const { return d_.color_names[c]; }
  std::int64_t color_count(int c) const { return color_counts_[c]; }

  bool has_color_bounds() const { return d_.color_lower_bounds.has_value(); }
  std::int64_t color_bound(int c) const { return (*d_.color_lower_bounds)[c]; }

  bool has_opening_cost() const { return d_.opening_cost.has_value(); }
  const Rational& opening_cost() const { return *d_.opening_cost; }

  const Data& data() const { return d_; }

  /// Options for carving a sub-instance out of this one. Privacy parameters
  /// never survive into sub-instances: the framework re-solves relaxed
  /// subproblems and carries the bounds itself.
  struct Restriction {
    std::vector<int> points;        // sorted parent point ids
    bool keep_all_locations = false;  // keep the parent location set verbatim
    int k = 1;
    std::int64_t outlier_budget = 0;
    bool keep_capacities = false;
    bool keep_colors = false;
  };
  Instance restrict(const Restriction& r) const;

 private:
  int loc_entity(int l) const { return d_.locations_are_points ? l : d_.num_points + l; }
  int side() const {
    return d_.num_points + (d_.locations_are_points ? 0 : d_.num_locations);
  }
  const Rational& at(int a, int b) const { return d_.matrix[a * side() + b]; }
  void validate() const;

  Data d_;
  std::vector<std::int64_t> color_counts_;
};

/// One cluster: an open location and the points assigned to it. The same
/// location may host several clusters (soft capacities, spliced solutions).
struct Cluster {
  int location = -1;
  std::vector<int> members;  // sorted point ids
};

/// A solution to any of the supported variants.
struct Clustering {
  std::vector<Cluster> clusters;
  std::vector<int> outliers;  // sorted point ids
  Rational radius;            // must equal the recomputed assignment radius

  int num_clusters() const { return static_cast<int>(clusters.size()); }
};

/// Which constraints a check or solver run enforces.
struct ConstraintSet {
  bool privacy = false;
  bool outliers = false;
  bool capacities = false;
  bool fairness = false;
  bool strong_privacy = false;

  /// Rejects flag combinations outside the supported set:
  /// privacy x {none, outliers, capacities, fairness, fairness+capacities}
  /// and strong_privacy alone.
  void validate() const;
};

struct Verdict {
  bool feasible = true;
  std::vector<std::string> violations;
};

/// Sorted distinct values {d(p, l) : p in P, l in L}. Every solver's
/// returned radius is drawn from this sequence (or is 0).
std::vector<Rational> candidate_radii(const Instance& inst);

/// Recomputes the max assigned distance; 0 when nothing is assigned.
/// Throws MalformedSolutionError when a non-outlier point is unassigned.
Rational eval_radius(const Instance& inst, const Clustering& sol);

/// Checks exactly the active constraint flags plus structural validity and
/// reports every violation. Never throws on infeasibility.
Verdict check_feasible(const Instance& inst, const ConstraintSet& cs, const Clustering& sol);

/// Per-color fairlet quotas: quota[c] = |c(P)| / gcd of all color counts,
/// block = sum of quotas. Every cluster of a fair clustering has size a
/// multiple of block.
struct FairQuotas {
  std::vector<std::int64_t> per_color;
  std::int64_t block = 0;
};
FairQuotas fair_structure(const Instance& inst);

}  // namespace privclust
