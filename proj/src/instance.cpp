// Copyright 2026 privclust developers
// SPDX-License-Identifier: Apache-2.0
#include "privclust/instance.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace privclust {

Rational Rational::parse(const std::string& text) {
  auto bad = [&] { throw ParseError("bad rational: '" + text + "'"); };
  if (text.empty()) bad();
  std::size_t slash = text.find('/');
  auto parse_int = [&](const std::string& s) -> std::int64_t {
    if (s.empty() || (s[0] == '-' && s.size() == 1)) bad();
    for (std::size_t i = (s[0] == '-' ? 1 : 0); i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') bad();
    try {
      return std::stoll(s);
    } catch (const std::exception&) {
      throw OverflowError("rational literal out of range: '" + text + "'");
    }
  };
  if (slash == std::string::npos) return Rational(parse_int(text));
  std::int64_t n = parse_int(text.substr(0, slash));
  std::int64_t d = parse_int(text.substr(slash + 1));
  if (d <= 0) bad();
  Rational r(n, d);
  if (r.str() != text) throw ParseError("non-canonical rational: '" + text + "'");
  return r;
}

Instance::Instance(Data data) : d_(std::move(data)) {
  validate();
  if (has_colors()) {
    color_counts_.assign(d_.color_names.size(), 0);
    for (int c : d_.colors) ++color_counts_[c];
  }
}

void Instance::validate() const {
  const int n = d_.num_points;
  const int m = num_locations();
  if (n < 1) throw InvalidInstanceError("instance needs at least one point");
  if (!d_.locations_are_points && d_.num_locations < 1)
    throw InvalidInstanceError("instance needs at least one location");
  const int s = side();
  if (static_cast<int>(d_.matrix.size()) != s * s)
    throw InvalidInstanceError("metric matrix has wrong size");
  for (int a = 0; a < s; ++a) {
    if (!at(a, a).is_zero()) throw InvalidInstanceError("metric: d(x,x) != 0");
    for (int b = 0; b < s; ++b) {
      if (at(a, b).is_negative()) throw InvalidInstanceError("metric: negative distance");
      if (at(a, b) != at(b, a)) throw InvalidInstanceError("metric: not symmetric");
    }
  }
  for (int a = 0; a < s; ++a)
    for (int b = 0; b < s; ++b)
      for (int c = 0; c < s; ++c)
        if (at(a, b) > at(a, c) + at(c, b))
          throw InvalidInstanceError("metric: triangle inequality violated");

  if (d_.k < 1) throw InvalidInstanceError("k must be positive");
  if (d_.lower_bound < 0) throw InvalidInstanceError("ell must be nonnegative");
  if (d_.outlier_budget < 0) throw InvalidInstanceError("outlier budget must be nonnegative");

  if (d_.capacities) {
    if (static_cast<int>(d_.capacities->size()) != m)
      throw InvalidInstanceError("capacities list must cover every location");
    for (std::int64_t u : *d_.capacities) {
      if (u < 1) throw InvalidInstanceError("capacities must be positive");
      if (d_.lower_bound > u)
        throw InvalidInstanceError("ell exceeds a capacity; instances require ell <= u(x)");
    }
  }

  if (!d_.colors.empty()) {
    if (static_cast<int>(d_.colors.size()) != n)
      throw InvalidInstanceError("colors list must cover every point");
    std::vector<std::int64_t> counts(d_.color_names.size(), 0);
    for (int c : d_.colors) {
      if (c < 0 || c >= static_cast<int>(d_.color_names.size()))
        throw InvalidInstanceError("color id out of range");
      ++counts[c];
    }
    for (std::size_t c = 0; c < counts.size(); ++c)
      if (counts[c] == 0)
        throw InvalidInstanceError("empty color class: " + d_.color_names[c]);
  } else if (d_.color_names.size() > 0) {
    throw InvalidInstanceError("color names without point colors");
  }

  if (d_.color_lower_bounds) {
    if (d_.colors.empty())
      throw InvalidInstanceError("color lower bounds require point colors");
    if (d_.color_lower_bounds->size() != d_.color_names.size())
      throw InvalidInstanceError("color lower bounds must cover every color");
    for (std::int64_t b : *d_.color_lower_bounds)
      if (b < 0) throw InvalidInstanceError("color lower bounds must be nonnegative");
  }

  if (d_.opening_cost && d_.opening_cost->is_negative())
    throw InvalidInstanceError("opening cost must be nonnegative");

  // Privacy pigeonhole: with every opened center needing ell points, a
  // budget-k request on fewer than k*ell non-outlier points is refused up
  // front as a distinct error. Facility-location instances are exempt: the
  // opening cost replaces the center budget there.
  if (d_.lower_bound > 0 && !d_.opening_cost) {
    if (static_cast<std::int64_t>(d_.k) * d_.lower_bound >
        static_cast<std::int64_t>(n) - d_.outlier_budget)
      throw InfeasibleError("k*ell exceeds |P| - o; no private clustering requested this way");
  }
}

Instance Instance::restrict(const Restriction& r) const {
  Data nd;
  nd.num_points = static_cast<int>(r.points.size());
  if (nd.num_points < 1) throw InvalidInstanceError("sub-instance needs at least one point");
  nd.k = std::max(1, r.k);
  nd.outlier_budget = r.outlier_budget;
  nd.lower_bound = 0;

  std::vector<int> entities;  // parent entity ids, points then locations
  for (int p : r.points) entities.push_back(p);
  if (r.keep_all_locations) {
    nd.locations_are_points = false;
    nd.num_locations = num_locations();
    for (int l = 0; l < num_locations(); ++l) entities.push_back(loc_entity(l));
    if (r.keep_capacities && d_.capacities) {
      nd.capacities = d_.capacities;
      nd.capacities_uniform = d_.capacities_uniform;
    }
  } else {
    if (!d_.locations_are_points)
      throw MisuseError("point-restricted locations require a P=L instance");
    nd.locations_are_points = true;
    if (r.keep_capacities && d_.capacities) {
      std::vector<std::int64_t> caps;
      for (int p : r.points) caps.push_back((*d_.capacities)[p]);
      nd.capacities = std::move(caps);
      nd.capacities_uniform = d_.capacities_uniform;
    }
  }
  const int s = static_cast<int>(entities.size());
  nd.matrix.assign(s * s, Rational());
  for (int a = 0; a < s; ++a)
    for (int b = 0; b < s; ++b)
      nd.matrix[a * s + b] = d_.matrix[entities[a] * side() + entities[b]];

  if (r.keep_colors && has_colors()) {
    nd.color_names = d_.color_names;
    for (int p : r.points) nd.colors.push_back(d_.colors[p]);
    // Drop names with no remaining points so every color class is nonempty.
    std::vector<std::int64_t> counts(nd.color_names.size(), 0);
    for (int c : nd.colors) ++counts[c];
    std::vector<int> remap(nd.color_names.size(), -1);
    std::vector<std::string> kept;
    for (std::size_t c = 0; c < counts.size(); ++c)
      if (counts[c] > 0) {
        remap[c] = static_cast<int>(kept.size());
        kept.push_back(nd.color_names[c]);
      }
    for (int& c : nd.colors) c = remap[c];
    nd.color_names = std::move(kept);
  }
  return Instance(std::move(nd));
}

std::vector<Rational> candidate_radii(const Instance& inst) {
  std::set<Rational> vals;
  for (int p = 0; p < inst.num_points(); ++p)
    for (int l = 0; l < inst.num_locations(); ++l) vals.insert(inst.point_loc(p, l));
  return std::vector<Rational>(vals.begin(), vals.end());
}

namespace {

// -1 = unassigned, -2 = outlier, otherwise cluster index.
std::vector<int> point_owners(const Instance& inst, const Clustering& sol) {
  std::vector<int> owner(inst.num_points(), -1);
  for (std::size_t j = 0; j < sol.clusters.size(); ++j) {
    for (int p : sol.clusters[j].members) {
      if (p < 0 || p >= inst.num_points())
        throw MalformedSolutionError("cluster member out of range");
      if (owner[p] != -1) throw MalformedSolutionError("point assigned twice");
      owner[p] = static_cast<int>(j);
    }
  }
  for (int p : sol.outliers) {
    if (p < 0 || p >= inst.num_points())
      throw MalformedSolutionError("outlier out of range");
    if (owner[p] != -1) throw MalformedSolutionError("outlier also assigned");
    owner[p] = -2;
  }
  return owner;
}

}  // namespace

Rational eval_radius(const Instance& inst, const Clustering& sol) {
  std::vector<int> owner = point_owners(inst, sol);
  for (int p = 0; p < inst.num_points(); ++p)
    if (owner[p] == -1) throw MalformedSolutionError("non-outlier point unassigned");
  Rational r(0);
  for (const Cluster& c : sol.clusters) {
    if (c.location < 0 || c.location >= inst.num_locations())
      throw MalformedSolutionError("cluster location out of range");
    for (int p : c.members) r = std::max(r, inst.point_loc(p, c.location));
  }
  return r;
}

void ConstraintSet::validate() const {
  if (strong_privacy && (privacy || outliers || capacities || fairness))
    throw MisuseError("strong privacy does not combine with other flags");
  if (outliers && (capacities || fairness))
    throw MisuseError("outliers only combine with privacy");
}

Verdict check_feasible(const Instance& inst, const ConstraintSet& cs, const Clustering& sol) {
  cs.validate();
  Verdict v;
  auto flag = [&](std::string msg) {
    v.feasible = false;
    v.violations.push_back(std::move(msg));
  };

  std::vector<int> owner;
  try {
    owner = point_owners(inst, sol);
  } catch (const MalformedSolutionError& e) {
    flag(std::string("structure: ") + e.what());
    return v;
  }
  for (int p = 0; p < inst.num_points(); ++p)
    if (owner[p] == -1) flag("structure: point " + std::to_string(p) + " unassigned");
  for (const Cluster& c : sol.clusters) {
    if (c.location < 0 || c.location >= inst.num_locations()) {
      flag("structure: cluster location out of range");
      return v;
    }
    if (!std::is_sorted(c.members.begin(), c.members.end()))
      flag("structure: cluster members not sorted");
  }
  if (sol.num_clusters() > inst.k())
    flag("budget: " + std::to_string(sol.num_clusters()) + " clusters exceed k=" +
         std::to_string(inst.k()));

  if (cs.outliers) {
    if (static_cast<std::int64_t>(sol.outliers.size()) > inst.outlier_budget())
      flag("outliers: " + std::to_string(sol.outliers.size()) + " exceed budget " +
           std::to_string(inst.outlier_budget()));
  } else if (!sol.outliers.empty()) {
    flag("outliers: present but the variant allows none");
  }

  if (cs.privacy) {
    for (std::size_t j = 0; j < sol.clusters.size(); ++j)
      if (static_cast<std::int64_t>(sol.clusters[j].members.size()) < inst.lower_bound())
        flag("privacy: cluster " + std::to_string(j) + " has " +
             std::to_string(sol.clusters[j].members.size()) + " < ell=" +
             std::to_string(inst.lower_bound()));
  }

  if (cs.capacities) {
    if (!inst.has_capacities()) {
      flag("capacities: variant active but instance has none");
    } else {
      for (std::size_t j = 0; j < sol.clusters.size(); ++j)
        if (static_cast<std::int64_t>(sol.clusters[j].members.size()) >
            inst.capacity(sol.clusters[j].location))
          flag("capacities: cluster " + std::to_string(j) + " exceeds u=" +
               std::to_string(inst.capacity(sol.clusters[j].location)));
    }
  }

  if (cs.fairness || cs.strong_privacy) {
    if (!inst.has_colors()) {
      flag("colors: variant active but instance has none");
      return v;
    }
  }

  if (cs.fairness) {
    // Integer cross-multiplication per color pair; no rational division.
    for (std::size_t j = 0; j < sol.clusters.size(); ++j) {
      std::vector<std::int64_t> in_cluster(inst.num_colors(), 0);
      for (int p : sol.clusters[j].members) ++in_cluster[inst.color_of(p)];
      for (int c = 0; c < inst.num_colors(); ++c)
        for (int d = c + 1; d < inst.num_colors(); ++d)
          if (in_cluster[c] * inst.color_count(d) != in_cluster[d] * inst.color_count(c))
            flag("fairness: cluster " + std::to_string(j) + " breaks the " +
                 inst.color_name(c) + ":" + inst.color_name(d) + " ratio");
    }
  }

  if (cs.strong_privacy) {
    if (!inst.has_color_bounds()) {
      flag("colors: strong privacy needs per-color lower bounds");
      return v;
    }
    for (std::size_t j = 0; j < sol.clusters.size(); ++j) {
      std::vector<std::int64_t> in_cluster(inst.num_colors(), 0);
      for (int p : sol.clusters[j].members) ++in_cluster[inst.color_of(p)];
      for (int c = 0; c < inst.num_colors(); ++c)
        if (in_cluster[c] < inst.color_bound(c))
          flag("strong privacy: cluster " + std::to_string(j) + " has " +
               std::to_string(in_cluster[c]) + " " + inst.color_name(c) + " < " +
               std::to_string(inst.color_bound(c)));
    }
  }

  return v;
}

FairQuotas fair_structure(const Instance& inst) {
  if (!inst.has_colors()) throw InvalidInstanceError("fair structure needs colors");
  FairQuotas q;
  std::int64_t g = 0;
  for (int c = 0; c < inst.num_colors(); ++c) {
    if (inst.color_count(c) == 0)
      throw InvalidInstanceError("empty color class: " + inst.color_name(c));
    g = std::gcd(g, inst.color_count(c));
  }
  for (int c = 0; c < inst.num_colors(); ++c) {
    q.per_color.push_back(inst.color_count(c) / g);
    q.block += q.per_color.back();
  }
  return q;
}

}  // namespace privclust
