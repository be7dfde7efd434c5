#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pgt/instantiate.hpp"
#include "pgt/template_graph.hpp"
#include "pgt/weight.hpp"

namespace pgt {

struct FlatEdge {
  std::size_t src = 0;
  std::size_t dst = 0;
  Weight capacity;
};

/// Plain directed multigraph with named vertices.
struct FlatGraph {
  std::vector<std::string> names;
  std::vector<FlatEdge> edges;

  std::optional<std::size_t> find(const std::string& name) const;
  std::size_t index(const std::string& name) const;  // throws UnknownVertex
};

FlatGraph to_flat(const ConcreteGraph& g);

struct FlowResult {
  /// Infinite only when every s-t cut contains an infinite edge.
  Weight value;
  /// One entry per input edge, 0 <= flow <= capacity.
  std::vector<BigInt> edge_flow;
  /// Vertices reachable from s in the final residual graph.
  std::vector<bool> source_side;
};

class SourceEqualsSink : public PgtError {
 public:
  SourceEqualsSink() : PgtError("source and sink must differ") {}
};

/// Exact maximum s-t flow. Parallel edges are merged on ingestion and self
/// loops ignored; infinite capacities are replaced by 1 + (sum of finite
/// capacities), which no finite cut can reach. The reported cut is the
/// residual-reachable set of s.
FlowResult max_st_flow(const FlatGraph& g, std::size_t s, std::size_t t);
FlowResult max_st_flow(const FlatGraph& g, const std::string& s,
                       const std::string& t);

/// Total capacity of edges leaving the vertex set `side`.
Weight cut_capacity(const FlatGraph& g, const std::vector<bool>& side);

/// Checks capacity bounds, conservation away from s and t, that the value is
/// the net outflow of s, and that the reported cut separates s from t with
/// capacity equal to the value. Returns a description of the first problem.
std::optional<std::string> check_flow(const FlatGraph& g, std::size_t s,
                                      std::size_t t, const FlowResult& r);

}  // namespace pgt
