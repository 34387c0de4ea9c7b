// Copyright 2026 privclust developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace privclust {

/// Malformed instance or solution document.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Structurally valid input that violates an instance invariant
/// (metric axioms, bound relations, missing fields for a variant).
class InvalidInstanceError : public std::runtime_error {
 public:
  explicit InvalidInstanceError(const std::string& what) : std::runtime_error(what) {}
};

/// The instance admits no feasible clustering for the requested constraints.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

/// Exact solver / oracle refused because the instance exceeds its size caps.
class SizeCapError : public std::runtime_error {
 public:
  explicit SizeCapError(const std::string& what) : std::runtime_error(what) {}
};

/// A caller broke an API contract (e.g. cut analysis on a saturated flow).
class MisuseError : public std::logic_error {
 public:
  explicit MisuseError(const std::string& what) : std::logic_error(what) {}
};

/// An always-on internal consistency check failed. Any sighting is a bug.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

inline void internal_check(bool ok, const char* what) {
  if (!ok) throw InternalError(what);
}

}  // namespace privclust
