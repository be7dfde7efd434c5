#include "draft.hpp"

#include <algorithm>

namespace pgt::detail {

Draft::Draft(const ParametricGraphTemplate& pgt)
    : vertices(pgt.vertices()), edges(pgt.edges()), dummies(pgt.dummies()) {
  templates.reserve(pgt.template_count());
  for (std::size_t t = 0; t < pgt.template_count(); ++t) {
    const TemplateInfo& info = pgt.info(t);
    DraftTemplate d;
    d.id = info.id;
    d.parameter = info.parameter;
    d.parent = info.parent;
    d.children = info.children;
    for (std::size_t v : info.owned) {
      d.owned.push_back(pgt.vertices()[v]);
      owner[pgt.vertices()[v]] = t;
    }
    used_template_ids_.insert(info.id);
    templates.push_back(std::move(d));
  }
  used_vertex_ids_.insert(vertices.begin(), vertices.end());
}

void Draft::build_node(std::size_t t, TemplateNode& out) const {
  const DraftTemplate& d = templates[t];
  out.id = d.id;
  out.parameter = d.parameter;
  out.vertices = d.owned;
  for (std::size_t c : d.children) {
    if (templates[c].removed) continue;
    out.children.emplace_back();
    build_node(c, out.children.back());
  }
}

ParametricGraphTemplate Draft::build() const {
  TemplateNode root;
  build_node(0, root);
  return ParametricGraphTemplate(vertices, edges, std::move(root), dummies);
}

std::size_t Draft::depth(std::size_t t) const {
  std::size_t d = 0;
  for (; templates[t].parent != npos; t = templates[t].parent) ++d;
  return d;
}

std::vector<std::size_t> Draft::subtree(std::size_t t) const {
  std::vector<std::size_t> out{t};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t c : templates[out[i]].children) {
      if (!templates[c].removed) out.push_back(c);
    }
  }
  return out;
}

std::set<VertexId> Draft::subtree_vertices(std::size_t t) const {
  std::set<VertexId> out;
  for (std::size_t s : subtree(t)) {
    out.insert(templates[s].owned.begin(), templates[s].owned.end());
  }
  return out;
}

void Draft::move_vertex(const VertexId& v, std::size_t to) {
  auto& from = templates[owner.at(v)].owned;
  from.erase(std::find(from.begin(), from.end(), v));
  templates[to].owned.push_back(v);
  owner[v] = to;
}

VertexId Draft::fresh_vertex_id(const VertexId& base) {
  VertexId id = base;
  for (std::size_t k = 1; used_vertex_ids_.count(id); ++k) {
    id = base + "#" + std::to_string(k);
  }
  used_vertex_ids_.insert(id);
  return id;
}

TemplateId Draft::fresh_template_id(const TemplateId& base) {
  TemplateId id = base;
  for (std::size_t k = 1; used_template_ids_.count(id); ++k) {
    id = base + "#" + std::to_string(k);
  }
  used_template_ids_.insert(id);
  return id;
}

VertexId Draft::fresh_dummy_id() {
  VertexId id;
  do {
    id = std::string(kDummyPrefix) + std::to_string(dummy_counter_++);
  } while (used_vertex_ids_.count(id));
  used_vertex_ids_.insert(id);
  return id;
}

VertexId Draft::add_vertex(VertexId id, std::size_t t, bool dummy) {
  used_vertex_ids_.insert(id);
  vertices.push_back(id);
  templates[t].owned.push_back(id);
  owner[id] = t;
  if (dummy) dummies.insert(id);
  return id;
}

}  // namespace pgt::detail
