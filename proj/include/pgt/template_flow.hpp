#pragma once

// Flow queries on parametric graph templates, and their brute-force
// counterparts on the instantiation.

#include "pgt/flow.hpp"
#include "pgt/instantiate.hpp"
#include "pgt/transforms.hpp"

namespace pgt {

/// A flat graph with designated source and sink.
struct FlowNetwork {
  FlatGraph graph;
  std::size_t source = 0;
  std::size_t sink = 0;
};

FlowResult solve(const FlowNetwork& network);

/// Reweighted template graph; never instantiates.
FlowNetwork all_st_network(const ParametricGraphTemplate& pgt,
                           const VertexId& s, const VertexId& t);

/// Partial instantiation from s, then from t (t's address carried through
/// the first relabeling), then reweighting.
FlowNetwork single_st_network(const ParametricGraphTemplate& pgt,
                              const VertexId& s, const InstanceAddress& addr_s,
                              const VertexId& t, const InstanceAddress& addr_t);

/// Instantiation plus a super-source feeding every instance of s and a
/// super-sink fed by every instance of t, all with infinite capacity.
FlowNetwork brute_force_all_st_network(const ParametricGraphTemplate& pgt,
                                       const VertexId& s, const VertexId& t,
                                       const BigInt& limit);

FlowNetwork brute_force_single_st_network(const ParametricGraphTemplate& pgt,
                                          const VertexId& s,
                                          const InstanceAddress& addr_s,
                                          const VertexId& t,
                                          const InstanceAddress& addr_t,
                                          const BigInt& limit);

FlowResult max_all_st_flow(const ParametricGraphTemplate& pgt,
                           const VertexId& s, const VertexId& t);

FlowResult max_single_st_flow(const ParametricGraphTemplate& pgt,
                              const VertexId& s, const InstanceAddress& addr_s,
                              const VertexId& t, const InstanceAddress& addr_t);

FlowResult brute_force_all_st_flow(
    const ParametricGraphTemplate& pgt, const VertexId& s, const VertexId& t,
    const BigInt& limit = kDefaultInstantiationLimit);

FlowResult brute_force_single_st_flow(
    const ParametricGraphTemplate& pgt, const VertexId& s,
    const InstanceAddress& addr_s, const VertexId& t,
    const InstanceAddress& addr_t,
    const BigInt& limit = kDefaultInstantiationLimit);

}  // namespace pgt
