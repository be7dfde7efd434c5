#include "pgt/template_flow.hpp"

#include "pgt/analysis.hpp"

namespace pgt {

FlowResult solve(const FlowNetwork& network) {
  return max_st_flow(network.graph, network.source, network.sink);
}

FlowNetwork all_st_network(const ParametricGraphTemplate& pgt,
                           const VertexId& s, const VertexId& t) {
  FlowNetwork n{edge_reweight(pgt), 0, 0};
  n.source = n.graph.index(s);
  n.sink = n.graph.index(t);
  if (n.source == n.sink) throw SourceEqualsSink();
  return n;
}

FlowNetwork single_st_network(const ParametricGraphTemplate& pgt,
                              const VertexId& s, const InstanceAddress& addr_s,
                              const VertexId& t, const InstanceAddress& addr_t) {
  require_valid(pgt);
  check_address(pgt, s, addr_s);
  check_address(pgt, t, addr_t);
  if (s == t && addr_s == addr_t) throw SourceEqualsSink();

  PartialInstantiation first = partial_instantiate_upwards(pgt, s, addr_s);
  const Label t_label = *first.relabeling.to_transformed({t, addr_t});
  PartialInstantiation second =
      partial_instantiate_upwards(first.pgt, t_label.origin, t_label.address);

  FlowNetwork n{edge_reweight(second.pgt), 0, 0};
  n.source = n.graph.index(first.vertex);
  n.sink = n.graph.index(second.vertex);
  return n;
}

namespace {

FlowNetwork super_terminal_network(const ConcreteGraph& g,
                                   const std::vector<std::size_t>& sources,
                                   const std::vector<std::size_t>& sinks) {
  FlowNetwork n{to_flat(g), 0, 0};
  n.source = n.graph.names.size();
  n.graph.names.push_back(std::string(kDummyPrefix) + "_source");
  n.sink = n.graph.names.size();
  n.graph.names.push_back(std::string(kDummyPrefix) + "_sink");
  for (std::size_t v : sources) {
    n.graph.edges.push_back({n.source, v, Weight::infinity()});
  }
  for (std::size_t v : sinks) {
    n.graph.edges.push_back({v, n.sink, Weight::infinity()});
  }
  return n;
}

}  // namespace

FlowNetwork brute_force_all_st_network(const ParametricGraphTemplate& pgt,
                                       const VertexId& s, const VertexId& t,
                                       const BigInt& limit) {
  pgt.vertex_index(s);
  pgt.vertex_index(t);
  if (s == t) throw SourceEqualsSink();
  const ConcreteGraph g = instantiate(pgt, limit);
  std::vector<std::size_t> sources, sinks;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    if (g.vertices[i].label.origin == s) sources.push_back(i);
    if (g.vertices[i].label.origin == t) sinks.push_back(i);
  }
  return super_terminal_network(g, sources, sinks);
}

FlowNetwork brute_force_single_st_network(const ParametricGraphTemplate& pgt,
                                          const VertexId& s,
                                          const InstanceAddress& addr_s,
                                          const VertexId& t,
                                          const InstanceAddress& addr_t,
                                          const BigInt& limit) {
  require_valid(pgt);
  check_address(pgt, s, addr_s);
  check_address(pgt, t, addr_t);
  if (s == t && addr_s == addr_t) throw SourceEqualsSink();
  const ConcreteGraph g = instantiate(pgt, limit);
  FlowNetwork n{to_flat(g), *g.find({s, addr_s}), *g.find({t, addr_t})};
  return n;
}

FlowResult max_all_st_flow(const ParametricGraphTemplate& pgt,
                           const VertexId& s, const VertexId& t) {
  return solve(all_st_network(pgt, s, t));
}

FlowResult max_single_st_flow(const ParametricGraphTemplate& pgt,
                              const VertexId& s, const InstanceAddress& addr_s,
                              const VertexId& t, const InstanceAddress& addr_t) {
  return solve(single_st_network(pgt, s, addr_s, t, addr_t));
}

FlowResult brute_force_all_st_flow(const ParametricGraphTemplate& pgt,
                                   const VertexId& s, const VertexId& t,
                                   const BigInt& limit) {
  return solve(brute_force_all_st_network(pgt, s, t, limit));
}

FlowResult brute_force_single_st_flow(const ParametricGraphTemplate& pgt,
                                      const VertexId& s,
                                      const InstanceAddress& addr_s,
                                      const VertexId& t,
                                      const InstanceAddress& addr_t,
                                      const BigInt& limit) {
  return solve(brute_force_single_st_network(pgt, s, addr_s, t, addr_t, limit));
}

}  // namespace pgt
