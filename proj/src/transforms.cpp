#include "pgt/transforms.hpp"

#include <algorithm>

#include "draft.hpp"
#include "pgt/analysis.hpp"

namespace pgt {

using detail::Draft;

ReweightedGraph edge_reweight(const ParametricGraphTemplate& pgt) {
  require_valid(pgt);
  ReweightedGraph g;
  g.names = pgt.vertices();
  g.edges.reserve(pgt.edge_count());
  for (std::size_t e = 0; e < pgt.edge_count(); ++e) {
    // With no jumping, the templates containing an endpoint are exactly the
    // ancestors of the deeper endpoint template.
    const BigInt& factor = pgt.info(edge_template(pgt, e)).instances;
    g.edges.push_back({pgt.edge_src(e), pgt.edge_dst(e),
                       pgt.edges()[e].weight.scaled(factor)});
  }
  return g;
}

BadAddress::BadAddress(const VertexId& v, const InstanceAddress& addr,
                       const std::string& why)
    : PgtError("bad address " + format_label({v, addr}) + ": " + why) {}

void check_address(const ParametricGraphTemplate& pgt, const VertexId& v,
                   const InstanceAddress& addr) {
  const auto path = pgt.path_from_root(pgt.owner(pgt.vertex_index(v)));
  if (addr.size() != path.size()) {
    throw BadAddress(v, addr,
                     "expected " + std::to_string(path.size()) + " indices");
  }
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (addr[k] < 0 || addr[k] >= pgt.info(path[k]).parameter) {
      throw BadAddress(v, addr,
                       "index " + to_decimal(addr[k]) + " outside template '" +
                           pgt.info(path[k]).id + "'");
    }
  }
}

namespace {

bool touches(const Edge& e, const VertexId& v) {
  return e.src == v || e.dst == v;
}

void prune_empty(Draft& d, std::size_t t) {
  if (t == 0 || d.templates[t].removed) return;
  for (std::size_t s : d.subtree(t)) {
    if (!d.templates[s].owned.empty()) return;
  }
  for (std::size_t s : d.subtree(t)) d.templates[s].removed = true;
}

}  // namespace

MergeResult instance_merge(const ParametricGraphTemplate& pgt,
                           const VertexId& v) {
  require_valid(pgt);
  pgt.vertex_index(v);
  Draft d(pgt);
  if (d.owner.at(v) == 0) return {pgt, Relabeling::identity()};

  // All instances of v collapse into one, so sibling functions at v lose
  // their meaning. A loop at v is handled like an edge leaving T(v).
  for (Edge& e : d.edges) {
    if (touches(e, v)) e.sibling.reset();
  }

  std::set<VertexId> dummies;
  while (d.owner.at(v) != 0) {
    const std::size_t t = d.owner.at(v);
    const std::size_t n_edges = d.edges.size();
    for (std::size_t i = 0; i < n_edges; ++i) {
      Edge& e = d.edges[i];
      if (!touches(e, v)) continue;
      const bool loop = e.src == e.dst;
      const VertexId& other = e.src == v ? e.dst : e.src;
      if (!loop && d.owner.at(other) == t) continue;

      const VertexId dummy = d.add_vertex(d.fresh_dummy_id(), t, true);
      dummies.insert(dummy);
      Edge near{dummy, v, Weight::infinity(), std::nullopt, e.rank};
      if (e.dst == v) {
        // (u, v) -> (u, dummy) w, (dummy, v) inf
        e.dst = dummy;
        e.rank.reset();
      } else {
        // (v, u) -> (v, dummy) inf, (dummy, u) w
        near = Edge{v, dummy, Weight::infinity(), std::nullopt, std::nullopt};
        e.src = dummy;
      }
      d.edges.push_back(std::move(near));
    }
    d.move_vertex(v, d.templates[t].parent);
    prune_empty(d, t);
  }

  Relabeling relabeling;
  relabeling.add_new_vertices(std::move(dummies));
  return {d.build(), std::move(relabeling)};
}

namespace {

// Splits template t (parameter P > 1) into a parameter-1 template keeping
// the original ids and a parameter-(P-1) copy inserted right after it.
void split(Draft& d, std::size_t t, const BigInt& index,
           Relabeling& relabeling) {
  const std::vector<std::size_t> sub = d.subtree(t);
  std::set<VertexId> sub_vertices = d.subtree_vertices(t);

  std::map<std::size_t, std::size_t> template_copy;
  std::map<VertexId, VertexId> vertex_copy;  // original -> copy
  std::map<VertexId, VertexId> copy_of;      // copy -> original
  for (std::size_t s : sub) {
    detail::DraftTemplate c;
    c.id = d.fresh_template_id(d.templates[s].id);
    c.parameter = d.templates[s].parameter;
    c.parent = s == t ? d.templates[t].parent
                      : template_copy.at(d.templates[s].parent);
    const std::size_t ci = d.templates.size();
    d.templates.push_back(std::move(c));
    template_copy[s] = ci;
    if (s == t) {
      auto& siblings = d.templates[d.templates[t].parent].children;
      siblings.insert(std::find(siblings.begin(), siblings.end(), t) + 1, ci);
    } else {
      d.templates[d.templates[ci].parent].children.push_back(ci);
    }
    const std::vector<VertexId> owned = d.templates[s].owned;
    for (const VertexId& x : owned) {
      const VertexId y = d.add_vertex(d.fresh_vertex_id(x), ci, d.dummies.count(x));
      vertex_copy[x] = y;
      copy_of[y] = x;
    }
  }
  d.templates[template_copy.at(t)].parameter = d.templates[t].parameter - 1;
  d.templates[t].parameter = 1;

  const std::size_t n_edges = d.edges.size();
  for (std::size_t i = 0; i < n_edges; ++i) {
    const bool src_in = sub_vertices.count(d.edges[i].src) != 0;
    const bool dst_in = sub_vertices.count(d.edges[i].dst) != 0;
    if (!src_in && !dst_in) continue;
    Edge copy = d.edges[i];
    if (src_in) copy.src = vertex_copy.at(copy.src);
    if (dst_in) copy.dst = vertex_copy.at(copy.dst);
    d.edges.push_back(std::move(copy));
  }
  relabeling.add_split(d.depth(t), index, std::move(sub_vertices),
                       std::move(copy_of));
}

// Dissolves the parameter-1 template t into its parent.
void collapse(Draft& d, std::size_t t, Relabeling& relabeling) {
  relabeling.add_collapse(d.depth(t), d.subtree_vertices(t));
  const std::size_t parent = d.templates[t].parent;
  for (const VertexId& x : std::vector<VertexId>(d.templates[t].owned)) {
    d.move_vertex(x, parent);
  }
  for (Edge& e : d.edges) {
    if (e.sibling && d.owner.at(e.src) == parent &&
        d.owner.at(e.dst) == parent) {
      e.sibling.reset();  // only instance of a parameter-1 template
    }
  }
  auto& siblings = d.templates[parent].children;
  auto pos = siblings.erase(std::find(siblings.begin(), siblings.end(), t));
  siblings.insert(pos, d.templates[t].children.begin(),
                  d.templates[t].children.end());
  for (std::size_t c : d.templates[t].children) d.templates[c].parent = parent;
  d.templates[t].children.clear();
  d.templates[t].removed = true;
}

}  // namespace

PartialInstantiation partial_instantiate_upwards(
    const ParametricGraphTemplate& pgt, const VertexId& v,
    const InstanceAddress& addr) {
  require_valid(pgt);
  check_address(pgt, v, addr);
  const auto path = pgt.path_from_root(pgt.owner(pgt.vertex_index(v)));
  if (path.empty()) return {pgt, v, Relabeling::identity(), 0};

  for (std::size_t t : path) {
    if (pgt.info(t).parameter == 1) continue;
    for (std::size_t e = 0; e < pgt.edge_count(); ++e) {
      if (pgt.edges()[e].sibling && pgt.owner(pgt.edge_src(e)) == t) {
        throw UnsupportedSiblingSplit(pgt.info(t).id);
      }
    }
  }

  // Draft indices coincide with pgt's pre-order indices.
  Draft d(pgt);
  Relabeling relabeling;
  std::size_t splits = 0;
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (d.templates[path[k]].parameter == 1) continue;
    split(d, path[k], addr[k], relabeling);
    ++splits;
  }
  for (std::size_t k = path.size(); k-- > 0;) collapse(d, path[k], relabeling);
  return {d.build(), v, std::move(relabeling), splits};
}

}  // namespace pgt
