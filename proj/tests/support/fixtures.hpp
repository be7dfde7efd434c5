#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pgt/template_graph.hpp"

namespace pgt::testing {

Edge edge(VertexId src, VertexId dst, Weight w = 1);
Edge sibling_edge(VertexId src, VertexId dst, Weight w, SiblingSpec spec);
TemplateNode node(TemplateId id, BigInt parameter, std::vector<VertexId> owned,
                  std::vector<TemplateNode> children = {});

/// T0 {a, f, g, i}; T1 {b} x2; T2 {c, d} x2 containing T3 {e} x3.
ParametricGraphTemplate four_templates();
/// Root {s, t}; T1 {v} x P; s->v and v->t with weight 1.
ParametricGraphTemplate fan(BigInt p = 3);
/// Root {s, t}; T1 {u} x4; s->u 1, u->u sibling shift 1 weight 2, u->t 1.
ParametricGraphTemplate ring();
/// Root {s}; T1 {u, t} x3; s->u 5, u->t 1.
ParametricGraphTemplate inner_sink();
/// Root {s, x}; T1 {u, t} x P; s->u 1, u->x 1, x->u 1, u->t 2.
/// Single flows from u differ between equal and different instances of t.
ParametricGraphTemplate inner_pair(BigInt p = 2);

struct NamedTemplate {
  std::string name;
  ParametricGraphTemplate pgt;
};

/// Every hand-written fixture above.
std::vector<NamedTemplate> all_fixtures();

/// Every instance address of v, in lexicographic order.
std::vector<InstanceAddress> all_addresses(const ParametricGraphTemplate& pgt,
                                           const VertexId& v);

struct RandomOptions {
  std::size_t max_vertices = 12;
  std::size_t max_edges = 24;
  std::size_t max_height = 3;
  int max_parameter = 4;
  int max_weight = 9;
  bool siblings = false;
  /// Put at least two vertices in the root.
  bool root_pair = false;
};

/// A random valid template. Vertex ids are v0, v1, ...; template ids T0, ...
ParametricGraphTemplate random_template(std::mt19937_64& rng,
                                        const RandomOptions& options);

}  // namespace pgt::testing
