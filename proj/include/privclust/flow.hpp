// Copyright 2026 privclust developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "privclust/errors.hpp"

namespace privclust {

/// Directed s-t network with nonnegative integer capacities and at most one
/// arc per ordered node pair. Node ids are dense 0..num_nodes-1.
class FlowNetwork {
 public:
  FlowNetwork(int num_nodes, int source, int sink);

  /// Adds the arc (from, to). Duplicate ordered pairs, arcs into the source,
  /// arcs out of the sink, self-loops and negative capacities are refused.
  void add_arc(int from, int to, std::int64_t capacity);

  int num_nodes() const { return num_nodes_; }
  int source() const { return source_; }
  int sink() const { return sink_; }

  struct Arc {
    int from, to;
    std::int64_t capacity;
  };
  /// Arcs sorted by (from, to); index into this vector is the arc id.
  const std::vector<Arc>& arcs() const;

 private:
  friend struct FlowSolverAccess;
  int num_nodes_, source_, sink_;
  mutable std::vector<Arc> arcs_;
  mutable bool sorted_ = true;
};

/// An integral flow on a FlowNetwork, arc ids matching net.arcs().
struct FlowResult {
  std::vector<std::int64_t> flow;  // per arc
  std::int64_t value = 0;

  struct SinkArc {
    int arc_id;
    bool saturated;
  };
  std::vector<SinkArc> sink_arcs;  // every arc into t, in arc-id order

  bool all_sink_arcs_saturated() const {
    for (const SinkArc& a : sink_arcs)
      if (!a.saturated) return false;
    return true;
  }
};

/// Integral maximum s-t flow via shortest augmenting paths with a fixed
/// deterministic arc order, so equal inputs give byte-equal flows.
FlowResult max_flow(const FlowNetwork& net);

/// The set of nodes unreachable from s in the residual network of fr,
/// as a node-indexed mask. Throws MisuseError when fr is not maximum
/// (detected by a residual s-t path).
std::vector<bool> residual_unreachable(const FlowNetwork& net, const FlowResult& fr);

}  // namespace privclust
