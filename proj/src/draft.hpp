#pragma once

// Mutable working copy of a parametric graph template used by transforms.
// Template slots are never erased, only marked removed, so indices stay
// stable while a transform runs.

#include <set>
#include <unordered_map>
#include <vector>

#include "pgt/template_graph.hpp"

namespace pgt::detail {

struct DraftTemplate {
  TemplateId id;
  BigInt parameter;
  std::size_t parent = npos;
  std::vector<std::size_t> children;
  std::vector<VertexId> owned;
  bool removed = false;
};

class Draft {
 public:
  explicit Draft(const ParametricGraphTemplate& pgt);

  ParametricGraphTemplate build() const;

  std::vector<DraftTemplate> templates;
  std::vector<VertexId> vertices;
  std::vector<Edge> edges;
  std::set<VertexId> dummies;
  std::unordered_map<VertexId, std::size_t> owner;

  std::size_t depth(std::size_t t) const;
  /// Pre-order list of t and its live descendants.
  std::vector<std::size_t> subtree(std::size_t t) const;
  std::set<VertexId> subtree_vertices(std::size_t t) const;

  void move_vertex(const VertexId& v, std::size_t to);
  /// Returns `base` or `base#k`, unused as a vertex id, and reserves it.
  VertexId fresh_vertex_id(const VertexId& base);
  TemplateId fresh_template_id(const TemplateId& base);
  VertexId fresh_dummy_id();
  VertexId add_vertex(VertexId id, std::size_t t, bool dummy);

 private:
  std::set<std::string> used_vertex_ids_;
  std::set<std::string> used_template_ids_;
  std::size_t dummy_counter_ = 0;
  void build_node(std::size_t t, TemplateNode& out) const;
};

}  // namespace pgt::detail
