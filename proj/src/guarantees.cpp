// Copyright 2026 privclust developers
// SPDX-License-Identifier: Apache-2.0
#include "privclust/guarantees.hpp"

#include <sstream>

namespace privclust {

FactorTraits factor_traits(const Instance& inst) {
  FactorTraits t;
  t.supplier = !inst.locations_are_points();
  if (inst.has_colors()) {
    FairQuotas q = fair_structure(inst);
    for (std::int64_t b : q.per_color)
      if (b == 1) t.quota_one = true;
  }
  t.uniform_caps = inst.has_capacities() && inst.capacities_uniform();
  return t;
}

namespace {

// Partition factor realized by the fairlet pipeline on this instance class.
Rational beta(const FactorTraits& t) { return t.quota_one ? Rational(2) : Rational(12); }

}  // namespace

std::optional<Rational> guaranteed_factor(const std::string& variant,
                                          const std::string& underlying,
                                          const FactorTraits& t) {
  const Rational b = beta(t);
  if (variant == "private-outliers") {
    if (underlying == "exact") return Rational(3);          // alpha + 2
    if (underlying == "outliers-greedy") return Rational(5);
  } else if (variant == "private-capacitated") {
    if (underlying == "exact") return Rational(3);
  } else if (variant == "private-fair") {
    if (underlying == "exact") return Rational(5);           // 3*alpha + 2
    if (underlying == "fair-fairlet-center" || underlying == "fair-fairlet-supplier")
      return Rational(3) * b + Rational(t.supplier ? 5 : 4);  // 3*beta + 4 / + 5
  } else if (variant == "private-fair-capacitated") {
    if (underlying == "exact") return Rational(2) * b + Rational(1);
  } else if (variant == "strongly-private") {
    if (underlying == "exact") return Rational(3);
    if (underlying == "gonzalez") return Rational(4);
    if (underlying == "hs-supplier") return Rational(5);
  } else if (variant == "fair") {
    if (underlying == "exact") return Rational(1);
    if (underlying == "fair-fairlet-center" || underlying == "fair-fairlet-supplier")
      return b + Rational(t.supplier ? 3 : 2);
  } else if (variant == "fair-subset-partition") {
    return b;
  } else if (variant == "private-capacitated-fl") {
    if (underlying == "exact") return Rational(3);           // 2*gamma + 1
  } else if (variant == "gonzalez") {
    return Rational(2);
  } else if (variant == "hs-supplier") {
    return Rational(3);
  } else if (variant == "outliers-greedy") {
    return Rational(3);
  } else if (variant == "soft-capacitated") {
    return Rational(5);
  }
  return std::nullopt;
}

std::string factor_table_text() {
  std::ostringstream out;
  out << "implemented guarantees (variant underlying class factor)\n";
  struct Row {
    const char* variant;
    const char* underlying;
    const char* cls;
    const char* factor;
  };
  const Row implemented[] = {
      {"private-outliers", "exact", "any", "3"},
      {"private-outliers", "outliers-greedy", "any", "5"},
      {"private-capacitated", "exact", "any", "3"},
      {"private-fair", "exact", "any", "5"},
      {"private-fair", "fair-fairlet-center", "quota1", "10"},
      {"private-fair", "fair-fairlet-center", "general", "40"},
      {"private-fair", "fair-fairlet-supplier", "quota1", "11"},
      {"private-fair", "fair-fairlet-supplier", "general", "41"},
      {"private-fair-capacitated", "exact", "quota1", "5"},
      {"private-fair-capacitated", "exact", "general", "25"},
      {"strongly-private", "exact", "any", "3"},
      {"strongly-private", "gonzalez", "center", "4"},
      {"strongly-private", "hs-supplier", "supplier", "5"},
      {"fair", "fair-fairlet-center", "quota1", "4"},
      {"fair", "fair-fairlet-center", "general", "14"},
      {"fair", "fair-fairlet-supplier", "quota1", "5"},
      {"fair", "fair-fairlet-supplier", "general", "15"},
      {"fair-subset-partition", "-", "quota1", "2"},
      {"fair-subset-partition", "-", "general", "12"},
      {"private-capacitated-fl", "exact", "any", "3"},
      {"gonzalez", "-", "center", "2"},
      {"hs-supplier", "-", "supplier", "3"},
      {"outliers-greedy", "-", "center", "3"},
      {"soft-capacitated", "-", "center", "5"},
  };
  for (const Row& r : implemented)
    out << r.variant << ' ' << r.underlying << ' ' << r.cls << ' ' << r.factor << "\n";
  out << "published-subroutine guarantees (variant class factor)\n";
  const Row published[] = {
      {"private-outliers", "-", "center", "4"},
      {"private-outliers", "-", "supplier", "5"},
      {"private-capacitated", "-", "center", "11"},
      {"private-capacitated", "-", "center-uniform", "8"},
      {"private-capacitated", "-", "supplier", "13"},
      {"fair", "-", "center", "14"},
      {"fair", "-", "supplier", "15"},
      {"fair", "-", "center-quota1", "4"},
      {"fair", "-", "supplier-quota1", "5"},
      {"private-fair", "-", "center", "40"},
      {"private-fair", "-", "supplier", "41"},
      {"private-fair", "-", "center-quota1", "10"},
      {"private-fair", "-", "supplier-quota1", "11"},
      {"private-fair-capacitated", "-", "center", "225"},
      {"private-fair-capacitated", "-", "center-uniform", "150"},
      {"private-fair-capacitated", "-", "center-quota1", "45"},
      {"private-fair-capacitated", "-", "center-uniform-quota1", "30"},
      {"private-fair-capacitated", "-", "supplier", "325"},
      {"private-fair-capacitated", "-", "supplier-uniform", "225"},
      {"private-fair-capacitated", "-", "supplier-quota1", "65"},
      {"private-fair-capacitated", "-", "supplier-uniform-quota1", "45"},
      {"strongly-private", "-", "center", "4"},
      {"strongly-private", "-", "supplier", "5"},
      {"private-capacitated-fl", "-", "base-gamma", "2*gamma+1"},
  };
  for (const Row& r : published) out << r.variant << ' ' << r.cls << ' ' << r.factor << "\n";
  return out.str();
}

}  // namespace privclust
