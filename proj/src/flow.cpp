// Copyright 2026 privclust developers
// SPDX-License-Identifier: Apache-2.0
#include "privclust/flow.hpp"

#include <algorithm>
#include <queue>

namespace privclust {

FlowNetwork::FlowNetwork(int num_nodes, int source, int sink)
    : num_nodes_(num_nodes), source_(source), sink_(sink) {
  if (num_nodes < 2 || source < 0 || sink < 0 || source >= num_nodes ||
      sink >= num_nodes || source == sink)
    throw MisuseError("flow network needs distinct in-range source and sink");
}

void FlowNetwork::add_arc(int from, int to, std::int64_t capacity) {
  if (from < 0 || from >= num_nodes_ || to < 0 || to >= num_nodes_)
    throw MisuseError("arc endpoint out of range");
  if (from == to) throw MisuseError("self-loop arc");
  if (to == source_) throw MisuseError("arc into the source");
  if (from == sink_) throw MisuseError("arc out of the sink");
  if (capacity < 0) throw MisuseError("negative arc capacity");
  for (const Arc& a : arcs_)
    if (a.from == from && a.to == to) throw MisuseError("duplicate arc");
  arcs_.push_back({from, to, capacity});
  sorted_ = false;
}

const std::vector<FlowNetwork::Arc>& FlowNetwork::arcs() const {
  if (!sorted_) {
    std::sort(arcs_.begin(), arcs_.end(), [](const Arc& a, const Arc& b) {
      return a.from != b.from ? a.from < b.from : a.to < b.to;
    });
    sorted_ = true;
  }
  return arcs_;
}

namespace {

struct Residual {
  // Forward arc i has residual cap[i] - flow[i]; backward has flow[i].
  const FlowNetwork& net;
  const std::vector<FlowNetwork::Arc>& arcs;
  std::vector<std::vector<int>> out;  // node -> arc ids leaving it
  std::vector<std::vector<int>> in;   // node -> arc ids entering it

  explicit Residual(const FlowNetwork& n)
      : net(n), arcs(n.arcs()), out(n.num_nodes()), in(n.num_nodes()) {
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      out[arcs[i].from].push_back(static_cast<int>(i));
      in[arcs[i].to].push_back(static_cast<int>(i));
    }
    // arcs() is sorted by (from, to), so each adjacency list is already in
    // target order; 'in' lists get sorted by source for determinism.
    for (auto& lst : in)
      std::sort(lst.begin(), lst.end(),
                [&](int a, int b) { return arcs[a].from < arcs[b].from; });
  }

  // BFS over residual arcs from s; returns per-node predecessor step or an
  // empty vector once t is unreachable. step = (arc id, forward?).
  std::vector<std::pair<int, bool>> shortest_path(const std::vector<std::int64_t>& flow,
                                                  bool* sink_reached) const {
    std::vector<std::pair<int, bool>> pred(net.num_nodes(), {-1, true});
    std::vector<bool> seen(net.num_nodes(), false);
    std::queue<int> q;
    seen[net.source()] = true;
    q.push(net.source());
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      if (u == net.sink()) break;
      for (int id : out[u]) {
        int v = arcs[id].to;
        if (!seen[v] && flow[id] < arcs[id].capacity) {
          seen[v] = true;
          pred[v] = {id, true};
          q.push(v);
        }
      }
      for (int id : in[u]) {
        int v = arcs[id].from;
        if (!seen[v] && flow[id] > 0) {
          seen[v] = true;
          pred[v] = {id, false};
          q.push(v);
        }
      }
    }
    *sink_reached = seen[net.sink()];
    return pred;
  }

  std::vector<bool> reachable(const std::vector<std::int64_t>& flow) const {
    std::vector<bool> seen(net.num_nodes(), false);
    std::queue<int> q;
    seen[net.source()] = true;
    q.push(net.source());
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int id : out[u])
        if (!seen[arcs[id].to] && flow[id] < arcs[id].capacity) {
          seen[arcs[id].to] = true;
          q.push(arcs[id].to);
        }
      for (int id : in[u])
        if (!seen[arcs[id].from] && flow[id] > 0) {
          seen[arcs[id].from] = true;
          q.push(arcs[id].from);
        }
    }
    return seen;
  }
};

}  // namespace

FlowResult max_flow(const FlowNetwork& net) {
  const auto& arcs = net.arcs();
  Residual res(net);
  FlowResult fr;
  fr.flow.assign(arcs.size(), 0);
  while (true) {
    bool reached = false;
    auto pred = res.shortest_path(fr.flow, &reached);
    if (!reached) break;
    std::int64_t push = INT64_MAX;
    for (int v = net.sink(); v != net.source();) {
      auto [id, fwd] = pred[v];
      push = std::min(push, fwd ? arcs[id].capacity - fr.flow[id] : fr.flow[id]);
      v = fwd ? arcs[id].from : arcs[id].to;
    }
    for (int v = net.sink(); v != net.source();) {
      auto [id, fwd] = pred[v];
      fr.flow[id] += fwd ? push : -push;
      v = fwd ? arcs[id].from : arcs[id].to;
    }
    fr.value += push;
  }
  for (std::size_t i = 0; i < arcs.size(); ++i)
    if (arcs[i].to == net.sink())
      fr.sink_arcs.push_back({static_cast<int>(i), fr.flow[i] == arcs[i].capacity});
  return fr;
}

std::vector<bool> residual_unreachable(const FlowNetwork& net, const FlowResult& fr) {
  if (fr.flow.size() != net.arcs().size())
    throw MisuseError("flow result does not match the network");
  Residual res(net);
  std::vector<bool> reach = res.reachable(fr.flow);
  if (reach[net.sink()])
    throw MisuseError("flow is not maximum: residual path to the sink exists");
  std::vector<bool> unreachable(net.num_nodes());
  for (int v = 0; v < net.num_nodes(); ++v) unreachable[v] = !reach[v];
  return unreachable;
}

}  // namespace privclust
