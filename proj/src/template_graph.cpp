#include "pgt/template_graph.hpp"

#include <algorithm>
#include <sstream>

namespace pgt {

std::string format_address(const InstanceAddress& address) {
  std::string out;
  for (std::size_t i = 0; i < address.size(); ++i) {
    if (i) out += '.';
    out += to_decimal(address[i]);
  }
  return out;
}

namespace {

BigInt floor_mod(const BigInt& x, const BigInt& m) {
  BigInt r = x % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace

BigInt apply_sibling(const SiblingSpec& spec, const BigInt& index,
                     const BigInt& parameter) {
  if (const auto* shift = std::get_if<CyclicShift>(&spec)) {
    return floor_mod(index + shift->delta, parameter);
  }
  const auto& map = std::get<Permutation>(spec).map;
  if (index < 0 || index >= map.size()) {
    throw std::out_of_range("permutation index " + to_decimal(index) +
                            " out of range");
  }
  return map[static_cast<std::size_t>(index)];
}

bool is_bijection(const SiblingSpec& spec, const BigInt& parameter) {
  if (parameter < 1) return false;
  if (std::holds_alternative<CyclicShift>(spec)) return true;
  const auto& map = std::get<Permutation>(spec).map;
  if (parameter != map.size()) return false;
  std::vector<bool> hit(map.size(), false);
  for (const BigInt& x : map) {
    if (x < 0 || x >= map.size()) return false;
    auto i = static_cast<std::size_t>(x);
    if (hit[i]) return false;
    hit[i] = true;
  }
  return true;
}

ParametricGraphTemplate::ParametricGraphTemplate(std::vector<VertexId> vertices,
                                                 std::vector<Edge> edges,
                                                 TemplateNode root,
                                                 std::set<VertexId> dummies)
    : vertices_(std::move(vertices)),
      edges_(std::move(edges)),
      root_(std::move(root)),
      dummies_(std::move(dummies)) {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    vertex_lookup_.emplace(vertices_[i], i);  // first occurrence wins
  }
  owner_.assign(vertices_.size(), npos);
  claims_.assign(vertices_.size(), 0);
  index_node(root_, npos, 0, BigInt(1));
  for (auto& owner : owner_) {
    if (owner == npos) owner = 0;
  }

  out_.resize(vertices_.size());
  in_.resize(vertices_.size());
  edge_ends_.reserve(edges_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    auto s = find_vertex(edges_[e].src);
    auto d = find_vertex(edges_[e].dst);
    edge_ends_.emplace_back(s.value_or(npos), d.value_or(npos));
    if (s && d) {
      out_[*s].push_back(e);
      in_[*d].push_back(e);
    }
  }
}

void ParametricGraphTemplate::index_node(const TemplateNode& node,
                                         std::size_t parent, std::size_t depth,
                                         const BigInt& instances) {
  const std::size_t self = templates_.size();
  if (!template_lookup_.emplace(node.id, self).second) {
    duplicate_template_ids_.push_back(node.id);
  }
  TemplateInfo info;
  info.id = node.id;
  info.parameter = node.parameter;
  info.parent = parent;
  info.depth = depth;
  info.instances = instances * node.parameter;
  for (const VertexId& v : node.vertices) {
    auto it = vertex_lookup_.find(v);
    if (it == vertex_lookup_.end()) {
      unknown_owned_.push_back(v);
      continue;
    }
    ++claims_[it->second];
    if (owner_[it->second] == npos) {
      owner_[it->second] = self;
      info.owned.push_back(it->second);
    }
  }
  templates_.push_back(std::move(info));
  if (parent != npos) templates_[parent].children.push_back(self);
  const BigInt child_instances = templates_[self].instances;
  for (const TemplateNode& child : node.children) {
    index_node(child, self, depth + 1, child_instances);
  }
}

std::optional<std::size_t> ParametricGraphTemplate::find_vertex(
    const VertexId& v) const {
  auto it = vertex_lookup_.find(v);
  if (it == vertex_lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t ParametricGraphTemplate::vertex_index(const VertexId& v) const {
  auto i = find_vertex(v);
  if (!i) throw UnknownVertex(v);
  return *i;
}

std::optional<std::size_t> ParametricGraphTemplate::find_template(
    const TemplateId& t) const {
  auto it = template_lookup_.find(t);
  if (it == template_lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t ParametricGraphTemplate::template_index(const TemplateId& t) const {
  auto i = find_template(t);
  if (!i) throw UnknownTemplate(t);
  return *i;
}

bool ParametricGraphTemplate::edge_resolved(std::size_t e) const {
  return edge_ends_.at(e).first != npos && edge_ends_.at(e).second != npos;
}

std::vector<std::size_t> ParametricGraphTemplate::path_from_root(
    std::size_t t) const {
  std::vector<std::size_t> path;
  for (std::size_t cur = t; cur != 0 && cur != npos;
       cur = templates_[cur].parent) {
    path.push_back(cur);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

bool ParametricGraphTemplate::is_ancestor_or_self(std::size_t ancestor,
                                                  std::size_t t) const {
  for (std::size_t cur = t; cur != npos; cur = templates_[cur].parent) {
    if (cur == ancestor) return true;
  }
  return false;
}

}  // namespace pgt
