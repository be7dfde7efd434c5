#include "pgt/instantiate.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <tuple>

namespace pgt {

namespace {

std::atomic<std::uint64_t> g_instantiations{0};

std::string concrete_id(const Label& label) { return format_label(label); }

struct WorkVertex {
  std::size_t origin;  // template vertex index
  InstanceAddress address;
  std::size_t scope;  // deepest template not yet rewritten that contains it
};

struct WorkEdge {
  std::size_t src;
  std::size_t dst;
  std::size_t origin;  // template edge index
};

}  // namespace

SizeLimitExceeded::SizeLimitExceeded(InstantiationSize size, BigInt limit)
    : PgtError("instantiation has " + to_decimal(size.vertices) +
               " vertices and " + to_decimal(size.edges) +
               " edges, above the limit of " + to_decimal(limit)),
      size_(std::move(size)),
      limit_(std::move(limit)) {}

std::optional<std::size_t> ConcreteGraph::find(const Label& label) const {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i].label == label) return i;
  }
  return std::nullopt;
}

std::uint64_t instantiation_count() { return g_instantiations.load(); }

ConcreteGraph instantiate(const ParametricGraphTemplate& pgt,
                          const BigInt& limit, LeafOrder order) {
  require_valid(pgt);
  const InstantiationSize size = instantiation_size(pgt);
  if (size.vertices > limit || size.edges > limit) {
    throw SizeLimitExceeded(size, limit);
  }

  std::vector<WorkVertex> vertices;
  vertices.reserve(pgt.vertex_count());
  for (std::size_t v = 0; v < pgt.vertex_count(); ++v) {
    const std::size_t t = pgt.owner(v);
    vertices.push_back({v, InstanceAddress(pgt.info(t).depth), t});
  }
  std::vector<WorkEdge> edges;
  edges.reserve(pgt.edge_count());
  for (std::size_t e = 0; e < pgt.edge_count(); ++e) {
    edges.push_back({pgt.edge_src(e), pgt.edge_dst(e), e});
  }

  // Remaining templates and how many of their children are still present.
  std::vector<bool> alive(pgt.template_count(), true);
  std::vector<std::size_t> live_children(pgt.template_count());
  for (std::size_t t = 0; t < pgt.template_count(); ++t) {
    live_children[t] = pgt.info(t).children.size();
  }

  for (std::size_t remaining = pgt.template_count(); remaining > 1;
       --remaining) {
    std::size_t leaf = npos;
    for (std::size_t t = 1; t < pgt.template_count(); ++t) {
      if (!alive[t] || live_children[t] != 0) continue;
      leaf = t;
      if (order == LeafOrder::kFirst) break;
    }
    const TemplateInfo& info = pgt.info(leaf);
    const auto copies = static_cast<std::size_t>(info.parameter);
    const std::size_t slot = info.depth - 1;

    // copy_index[x] = index of copy 0 of x in the new vertex list, or npos
    // if x is outside the leaf and kept as is.
    std::vector<WorkVertex> next_vertices;
    std::vector<std::size_t> first_copy(vertices.size(), npos);
    std::vector<std::size_t> kept(vertices.size(), npos);
    for (std::size_t x = 0; x < vertices.size(); ++x) {
      if (vertices[x].scope != leaf) {
        kept[x] = next_vertices.size();
        next_vertices.push_back(std::move(vertices[x]));
        continue;
      }
      first_copy[x] = next_vertices.size();
      for (std::size_t j = 0; j < copies; ++j) {
        WorkVertex copy = vertices[x];
        copy.address[slot] = j;
        copy.scope = info.parent;
        next_vertices.push_back(std::move(copy));
      }
    }

    auto at = [&](std::size_t x, std::size_t j) {
      return first_copy[x] == npos ? kept[x] : first_copy[x] + j;
    };
    std::vector<WorkEdge> next_edges;
    next_edges.reserve(edges.size());
    for (const WorkEdge& e : edges) {
      const bool src_in = first_copy[e.src] != npos;
      const bool dst_in = first_copy[e.dst] != npos;
      if (!src_in && !dst_in) {
        next_edges.push_back({kept[e.src], kept[e.dst], e.origin});
        continue;
      }
      const Edge& tmpl = pgt.edges()[e.origin];
      const bool sibling_here =
          tmpl.sibling && pgt.owner(pgt.edge_src(e.origin)) == leaf;
      for (std::size_t j = 0; j < copies; ++j) {
        std::size_t dj = j;
        if (sibling_here) {
          dj = static_cast<std::size_t>(
              apply_sibling(*tmpl.sibling, BigInt(j), info.parameter));
        }
        next_edges.push_back({at(e.src, j), at(e.dst, dj), e.origin});
      }
    }
    vertices = std::move(next_vertices);
    edges = std::move(next_edges);
    alive[leaf] = false;
    --live_children[info.parent];
  }

  // Canonical order.
  std::vector<std::size_t> perm(vertices.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(vertices[a].origin, vertices[a].address) <
           std::tie(vertices[b].origin, vertices[b].address);
  });
  std::vector<std::size_t> rank(vertices.size());
  ConcreteGraph g;
  g.vertices.reserve(vertices.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    rank[perm[i]] = i;
    const WorkVertex& w = vertices[perm[i]];
    Label label{pgt.vertices()[w.origin], w.address};
    g.vertices.push_back(
        {concrete_id(label), label, pgt.is_dummy(label.origin)});
  }
  g.edges.reserve(edges.size());
  for (const WorkEdge& e : edges) {
    g.edges.push_back(
        {rank[e.src], rank[e.dst], pgt.edges()[e.origin].weight, e.origin});
  }
  std::sort(g.edges.begin(), g.edges.end(),
            [](const ConcreteEdge& a, const ConcreteEdge& b) {
              return std::tie(a.origin, a.src, a.dst) <
                     std::tie(b.origin, b.src, b.dst);
            });
  ++g_instantiations;
  return g;
}

ConcreteGraph merge_vertex_instances(const ConcreteGraph& g,
                                     const VertexId& v) {
  ConcreteGraph out;
  std::vector<std::size_t> map(g.vertices.size());
  std::size_t merged = npos;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    const ConcreteVertex& cv = g.vertices[i];
    if (cv.label.origin == v && !cv.dummy) {
      if (merged == npos) {
        merged = out.vertices.size();
        Label label{v, {}};
        out.vertices.push_back({concrete_id(label), label, false});
      }
      map[i] = merged;
    } else {
      map[i] = out.vertices.size();
      out.vertices.push_back(cv);
    }
  }
  if (merged == npos) throw UnknownVertex(v);
  out.edges = g.edges;
  for (ConcreteEdge& e : out.edges) {
    e.src = map[e.src];
    e.dst = map[e.dst];
  }
  return out;
}

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

ConcreteGraph contract_infinite_edges(const ConcreteGraph& g) {
  std::vector<std::size_t> parent(g.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (const ConcreteEdge& e : g.edges) {
    if (!e.weight.is_infinite()) continue;
    const std::size_t a = find_root(parent, e.src);
    const std::size_t b = find_root(parent, e.dst);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }

  // Representative label: first non-dummy member, else the first member.
  std::vector<std::size_t> label_source(g.vertices.size(), npos);
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    const std::size_t r = find_root(parent, i);
    if (label_source[r] == npos ||
        (g.vertices[label_source[r]].dummy && !g.vertices[i].dummy)) {
      label_source[r] = i;
    }
  }

  ConcreteGraph out;
  std::vector<std::size_t> new_index(g.vertices.size(), npos);
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    const std::size_t r = find_root(parent, i);
    if (new_index[r] == npos) {
      new_index[r] = out.vertices.size();
      out.vertices.push_back(g.vertices[label_source[r]]);
    }
  }
  for (const ConcreteEdge& e : g.edges) {
    if (e.weight.is_infinite()) continue;
    ConcreteEdge copy = e;
    copy.src = new_index[find_root(parent, e.src)];
    copy.dst = new_index[find_root(parent, e.dst)];
    out.edges.push_back(std::move(copy));
  }
  return out;
}

namespace {

using EdgeKey = std::tuple<Label, Label, Weight>;

}  // namespace

bool label_isomorphic(const ConcreteGraph& g1, const ConcreteGraph& g2,
                      const LabelMap& mapping) {
  if (g1.vertices.size() != g2.vertices.size() ||
      g1.edges.size() != g2.edges.size()) {
    return false;
  }
  std::vector<Label> mapped;
  mapped.reserve(g1.vertices.size());
  for (const ConcreteVertex& v : g1.vertices) {
    auto image = mapping(v.label);
    if (!image) throw IncompleteMapping(v.label);
    mapped.push_back(std::move(*image));
  }
  std::vector<Label> target;
  target.reserve(g2.vertices.size());
  for (const ConcreteVertex& v : g2.vertices) target.push_back(v.label);
  std::vector<Label> sorted_mapped = mapped;
  std::sort(sorted_mapped.begin(), sorted_mapped.end());
  std::sort(target.begin(), target.end());
  if (sorted_mapped != target) return false;

  std::vector<EdgeKey> e1, e2;
  e1.reserve(g1.edges.size());
  e2.reserve(g2.edges.size());
  for (const ConcreteEdge& e : g1.edges) {
    e1.emplace_back(mapped[e.src], mapped[e.dst], e.weight);
  }
  for (const ConcreteEdge& e : g2.edges) {
    e2.emplace_back(g2.vertices[e.src].label, g2.vertices[e.dst].label,
                    e.weight);
  }
  std::sort(e1.begin(), e1.end());
  std::sort(e2.begin(), e2.end());
  return e1 == e2;
}

bool label_isomorphic(const ConcreteGraph& g1, const ConcreteGraph& g2,
                      const Relabeling& relabeling) {
  return label_isomorphic(g1, g2, [&relabeling](const Label& l) {
    return relabeling.to_original(l);
  });
}

LabelMap identity_mapping() {
  return [](const Label& l) { return std::optional<Label>(l); };
}

}  // namespace pgt
