#include "pgt/flow.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace pgt {

std::optional<std::size_t> FlatGraph::find(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t FlatGraph::index(const std::string& name) const {
  auto i = find(name);
  if (!i) throw UnknownVertex(name);
  return *i;
}

FlatGraph to_flat(const ConcreteGraph& g) {
  FlatGraph out;
  out.names.reserve(g.vertices.size());
  for (const auto& v : g.vertices) out.names.push_back(v.id);
  out.edges.reserve(g.edges.size());
  for (const auto& e : g.edges) out.edges.push_back({e.src, e.dst, e.weight});
  return out;
}

namespace {

struct Arc {
  std::size_t to;
  std::size_t rev;
  BigInt residual;
};

class Dinic {
 public:
  explicit Dinic(std::size_t n) : adj_(n), level_(n), next_(n) {}

  // Returns (vertex, position) of the forward arc.
  std::pair<std::size_t, std::size_t> add_arc(std::size_t u, std::size_t v,
                                              BigInt cap) {
    const std::size_t fwd = adj_[u].size();
    const std::size_t bwd = adj_[v].size();
    adj_[u].push_back({v, bwd, std::move(cap)});
    adj_[v].push_back({u, fwd, BigInt(0)});
    return {u, fwd};
  }

  BigInt run(std::size_t s, std::size_t t) {
    BigInt total = 0;
    while (build_levels(s, t)) {
      std::fill(next_.begin(), next_.end(), 0);
      total += blocking_flow(s, t);
    }
    return total;
  }

  const Arc& arc(std::pair<std::size_t, std::size_t> id) const {
    return adj_[id.first][id.second];
  }

  std::vector<bool> reachable(std::size_t s) const {
    std::vector<bool> seen(adj_.size(), false);
    std::deque<std::size_t> queue{s};
    seen[s] = true;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (const Arc& a : adj_[u]) {
        if (a.residual > 0 && !seen[a.to]) {
          seen[a.to] = true;
          queue.push_back(a.to);
        }
      }
    }
    return seen;
  }

 private:
  bool build_levels(std::size_t s, std::size_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::deque<std::size_t> queue{s};
    level_[s] = 0;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (const Arc& a : adj_[u]) {
        if (a.residual > 0 && level_[a.to] < 0) {
          level_[a.to] = level_[u] + 1;
          queue.push_back(a.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  // Path-at-a-time augmentation in the level graph, iterative so deep level
  // graphs do not exhaust the stack.
  BigInt blocking_flow(std::size_t s, std::size_t t) {
    BigInt pushed = 0;
    std::vector<std::size_t> path_vertices{s};
    std::vector<std::size_t> path_arcs;  // arc positions in adj_[vertex]
    while (true) {
      const std::size_t v = path_vertices.back();
      if (v == t) {
        BigInt bottleneck = adj_[path_vertices[0]][path_arcs[0]].residual;
        for (std::size_t i = 1; i < path_arcs.size(); ++i) {
          const BigInt& r = adj_[path_vertices[i]][path_arcs[i]].residual;
          if (r < bottleneck) bottleneck = r;
        }
        std::size_t cut_at = path_arcs.size();
        for (std::size_t i = 0; i < path_arcs.size(); ++i) {
          Arc& a = adj_[path_vertices[i]][path_arcs[i]];
          a.residual -= bottleneck;
          adj_[a.to][a.rev].residual += bottleneck;
          if (a.residual.is_zero() && cut_at == path_arcs.size()) cut_at = i;
        }
        pushed += bottleneck;
        path_vertices.resize(cut_at + 1);
        path_arcs.resize(cut_at);
        continue;
      }
      bool advanced = false;
      for (std::size_t& i = next_[v]; i < adj_[v].size(); ++i) {
        const Arc& a = adj_[v][i];
        if (a.residual > 0 && level_[a.to] == level_[v] + 1) {
          path_arcs.push_back(i);
          path_vertices.push_back(a.to);
          advanced = true;
          break;
        }
      }
      if (advanced) continue;
      if (v == s) break;
      level_[v] = -1;  // dead end for the rest of this phase
      path_vertices.pop_back();
      path_arcs.pop_back();
      ++next_[path_vertices.back()];
    }
    return pushed;
  }

  std::vector<std::vector<Arc>> adj_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

}  // namespace

FlowResult max_st_flow(const FlatGraph& g, std::size_t s, std::size_t t) {
  const std::size_t n = g.names.size();
  if (s >= n || t >= n) throw PgtError("source or sink out of range");
  if (s == t) throw SourceEqualsSink();

  BigInt saturation = 1;
  for (const FlatEdge& e : g.edges) {
    if (e.capacity.is_finite()) saturation += e.capacity.value();
  }
  auto effective = [&](const Weight& w) -> const BigInt& {
    return w.is_finite() ? w.value() : saturation;
  };

  // Merge parallel edges into one arc per ordered pair.
  std::map<std::pair<std::size_t, std::size_t>, BigInt> merged;
  for (const FlatEdge& e : g.edges) {
    if (e.src == e.dst) continue;
    merged[{e.src, e.dst}] += effective(e.capacity);
  }
  Dinic dinic(n);
  std::map<std::pair<std::size_t, std::size_t>,
           std::pair<std::size_t, std::size_t>>
      arc_of;
  for (const auto& [key, cap] : merged) {
    arc_of.emplace(key, dinic.add_arc(key.first, key.second, cap));
  }
  const BigInt total = dinic.run(s, t);

  FlowResult result;
  result.value = total >= saturation ? Weight::infinity() : Weight(total);
  result.source_side = dinic.reachable(s);

  // Split each merged arc's flow back over its parallel edges in input order.
  std::map<std::pair<std::size_t, std::size_t>, BigInt> remaining;
  for (const auto& [key, id] : arc_of) {
    remaining[key] = merged[key] - dinic.arc(id).residual;
  }
  result.edge_flow.reserve(g.edges.size());
  for (const FlatEdge& e : g.edges) {
    if (e.src == e.dst) {
      result.edge_flow.emplace_back(0);
      continue;
    }
    BigInt& left = remaining[{e.src, e.dst}];
    const BigInt& cap = effective(e.capacity);
    BigInt take = left < cap ? left : cap;
    left -= take;
    result.edge_flow.push_back(std::move(take));
  }
  return result;
}

FlowResult max_st_flow(const FlatGraph& g, const std::string& s,
                       const std::string& t) {
  return max_st_flow(g, g.index(s), g.index(t));
}

Weight cut_capacity(const FlatGraph& g, const std::vector<bool>& side) {
  Weight total = 0;
  for (const FlatEdge& e : g.edges) {
    if (side[e.src] && !side[e.dst]) total += e.capacity;
  }
  return total;
}

std::optional<std::string> check_flow(const FlatGraph& g, std::size_t s,
                                      std::size_t t, const FlowResult& r) {
  if (r.edge_flow.size() != g.edges.size()) return "edge_flow size mismatch";
  std::vector<BigInt> net(g.names.size(), 0);  // inflow - outflow
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const FlatEdge& e = g.edges[i];
    const BigInt& f = r.edge_flow[i];
    if (f < 0) return "negative flow on edge " + std::to_string(i);
    if (e.capacity.is_finite() && f > e.capacity.value()) {
      return "flow above capacity on edge " + std::to_string(i);
    }
    net[e.dst] += f;
    net[e.src] -= f;
  }
  for (std::size_t v = 0; v < g.names.size(); ++v) {
    if (v != s && v != t && !net[v].is_zero()) {
      return "conservation violated at " + g.names[v];
    }
  }
  if (r.value.is_infinite()) return std::nullopt;
  if (!r.source_side.at(s) || r.source_side.at(t)) {
    return "reported cut does not separate s from t";
  }
  if (-net[s] != r.value.value()) return "value differs from net outflow of s";
  if (cut_capacity(g, r.source_side) != r.value) {
    return "cut capacity differs from flow value";
  }
  return std::nullopt;
}

}  // namespace pgt
