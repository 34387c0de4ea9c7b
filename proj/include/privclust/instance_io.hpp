// Copyright 2026 privclust developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "privclust/instance.hpp"

namespace privclust {

// Text documents for instances, solutions and run reports. Serialization is
// canonical (fixed field order, reduced rationals, one record per line) and
// parse(serialize(x)) == serialize-identical x.

/// Instance document grammar:
///
///   privclust instance v1
///   points <n>
///   locations {same | <m>}
///   metric {matrix | euclidean <dim> [denominator <D>]}
///   <matrix rows over points then locations, or one coordinate row per id>
///   k <int>
///   ell <int>
///   outliers <int>
///   capacities {none | uniform <u> | list <u_0> ... <u_{m-1}>}
///   colors {none | list <name_0> ... <name_{n-1}>}
///   color_ell {none | list <name> <bound> ...}
///   opening_cost {none | <rational>}
///   end
///
/// Euclidean coordinates are rationals; the matrix entry for a pair is the
/// Euclidean distance rounded UP to a multiple of 1/D (default D = 10^6),
/// which keeps the triangle inequality intact. Serialization always emits
/// the matrix form.
Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& inst);

/// Solution document: variant, underlying, clusters, outliers, radius, and
/// (facility-location variants only) the total cost.
struct SolutionDoc {
  std::string variant;
  std::string underlying;
  Clustering clustering;
  std::optional<Rational> cost;
};
SolutionDoc parse_solution(const std::string& text);
std::string serialize_solution(const SolutionDoc& doc);

/// FNV-1a hex digest of a document; reports key instances by this.
std::string text_digest(const std::string& text);

}  // namespace privclust
