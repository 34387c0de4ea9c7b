// Copyright 2026 privclust developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>

#include "privclust/instance.hpp"

namespace privclust {

/// Traits of an instance that pick the row in the guarantee table.
struct FactorTraits {
  bool supplier = false;      // L differs from P
  bool quota_one = false;     // some color has fairlet quota 1
  bool uniform_caps = false;  // capacities are uniform
};
FactorTraits factor_traits(const Instance& inst);

/// Declared worst-case ratio for a (variant, underlying) pair on instances
/// with the given traits; nullopt for unknown combinations. These are the
/// bounds the bench and acceptance sweeps enforce against the exact oracle.
std::optional<Rational> guaranteed_factor(const std::string& variant,
                                          const std::string& underlying,
                                          const FactorTraits& traits);

/// Human-readable table of every guarantee: the implemented pairs plus the
/// best published bounds the framework inherits when stronger subroutines
/// are plugged in.
std::string factor_table_text();

}  // namespace privclust
