#pragma once

#include <cstddef>

#include "pgt/flow.hpp"
#include "pgt/relabeling.hpp"
#include "pgt/template_graph.hpp"

namespace pgt {

/// The template graph as a flat graph (vertex order and edge order as in the
/// template) with every edge weight multiplied by the parameters of all
/// templates containing one of its endpoints.
using ReweightedGraph = FlatGraph;

/// Throws InvalidTemplate.
ReweightedGraph edge_reweight(const ParametricGraphTemplate& pgt);

class BadAddress : public PgtError {
 public:
  BadAddress(const VertexId& v, const InstanceAddress& addr,
             const std::string& why);
};

class UnsupportedSiblingSplit : public PgtError {
 public:
  explicit UnsupportedSiblingSplit(const TemplateId& t)
      : PgtError("template '" + t +
                 "' must be split but carries sibling edges") {}
};

struct MergeResult {
  ParametricGraphTemplate pgt;
  Relabeling relabeling;
};

/// Moves v into the root, replacing each cross-template edge at v by a path
/// through a dummy vertex whose v-side edge has infinite weight. Sibling
/// edges at v become plain edges. Templates left without vertices are
/// removed.
MergeResult instance_merge(const ParametricGraphTemplate& pgt,
                           const VertexId& v);

struct PartialInstantiation {
  ParametricGraphTemplate pgt;
  /// Id of the addressed instance of v in `pgt` (owned by the root).
  VertexId vertex;
  Relabeling relabeling;
  /// Number of templates that were split.
  std::size_t splits = 0;
};

/// Pulls the instance `addr` of v up into the root: every template on the
/// root path with parameter P > 1 is split into a parameter-1 template
/// holding that instance and a parameter-(P-1) copy with fresh ids, then the
/// path templates are dissolved into their parents.
/// Throws BadAddress or UnsupportedSiblingSplit.
PartialInstantiation partial_instantiate_upwards(
    const ParametricGraphTemplate& pgt, const VertexId& v,
    const InstanceAddress& addr);

/// Throws BadAddress unless addr indexes an instance of v.
void check_address(const ParametricGraphTemplate& pgt, const VertexId& v,
                   const InstanceAddress& addr);

}  // namespace pgt
