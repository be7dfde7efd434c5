#pragma once

// Reference implementations used only by tests. None of them share code
// with the library beyond the data types.

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "pgt/flow.hpp"
#include "pgt/instantiate.hpp"
#include "pgt/template_graph.hpp"

namespace pgt::testing {

using LabeledEdge = std::tuple<Label, Label, Weight>;

struct ExpandedGraph {
  std::vector<Label> vertices;    // sorted
  std::vector<LabeledEdge> edges;  // sorted
  friend bool operator==(const ExpandedGraph&, const ExpandedGraph&) = default;
};

/// Instantiation by enumerating instance addresses directly (no rewriting).
ExpandedGraph expand(const ParametricGraphTemplate& pgt);

/// The same multisets read off a concrete graph.
ExpandedGraph labeled(const ConcreteGraph& g);

/// Product of the parameters of every template whose vertex set (including
/// descendants) contains an endpoint of edge e, found by walking the tree.
BigInt reweight_factor(const ParametricGraphTemplate& pgt, std::size_t e);

/// Edmonds-Karp on a capacity matrix. Infinite value iff s reaches t over
/// infinite edges only.
Weight reference_max_flow(const FlatGraph& g, std::size_t s, std::size_t t);

/// Minimum over all 2^(n-2) s-t cuts; only for tiny graphs.
Weight enumerated_min_cut(const FlatGraph& g, std::size_t s, std::size_t t);

/// Max flow on the address expansion from every instance of s matching
/// `addr_s` (every instance when nullopt) to every
/// instance of t matching `addr_t`, through infinite super terminals.
/// Uses expand() and reference_max_flow() only.
Weight expanded_flow(const ParametricGraphTemplate& pgt, const VertexId& s,
                     const std::optional<InstanceAddress>& addr_s,
                     const VertexId& t,
                     const std::optional<InstanceAddress>& addr_t);

/// True iff some simple path or simple cycle p1..pk has i < j < k with
/// T(p_i) == T(p_k) != T(p_j).
bool has_template_cycle_by_enumeration(const ParametricGraphTemplate& pgt);

}  // namespace pgt::testing
