#include "fixtures.hpp"

#include <algorithm>
#include <numeric>

namespace pgt::testing {

Edge edge(VertexId src, VertexId dst, Weight w) {
  return Edge{std::move(src), std::move(dst), std::move(w), std::nullopt,
              std::nullopt};
}

Edge sibling_edge(VertexId src, VertexId dst, Weight w, SiblingSpec spec) {
  return Edge{std::move(src), std::move(dst), std::move(w), std::move(spec),
              std::nullopt};
}

TemplateNode node(TemplateId id, BigInt parameter, std::vector<VertexId> owned,
                  std::vector<TemplateNode> children) {
  return TemplateNode{std::move(id), std::move(parameter), std::move(owned),
                      std::move(children)};
}

ParametricGraphTemplate four_templates() {
  return ParametricGraphTemplate(
      {"a", "b", "c", "d", "e", "f", "g", "i"},
      {edge("a", "b"), edge("b", "g"), edge("a", "c"), edge("c", "e"),
       edge("e", "d"), edge("d", "f"), edge("f", "i"), edge("g", "i")},
      node("T0", 1, {"a", "f", "g", "i"},
           {node("T1", 2, {"b"}),
            node("T2", 2, {"c", "d"}, {node("T3", 3, {"e"})})}));
}

ParametricGraphTemplate fan(BigInt p) {
  return ParametricGraphTemplate(
      {"s", "t", "v"}, {edge("s", "v"), edge("v", "t")},
      node("T0", 1, {"s", "t"}, {node("T1", std::move(p), {"v"})}));
}

ParametricGraphTemplate ring() {
  return ParametricGraphTemplate(
      {"s", "t", "u"},
      {edge("s", "u"), sibling_edge("u", "u", 2, CyclicShift{1}),
       edge("u", "t")},
      node("T0", 1, {"s", "t"}, {node("T1", 4, {"u"})}));
}

ParametricGraphTemplate inner_sink() {
  return ParametricGraphTemplate(
      {"s", "u", "t"}, {edge("s", "u", 5), edge("u", "t")},
      node("T0", 1, {"s"}, {node("T1", 3, {"u", "t"})}));
}

ParametricGraphTemplate inner_pair(BigInt p) {
  return ParametricGraphTemplate(
      {"s", "x", "u", "t"},
      {edge("s", "u"), edge("u", "x"), edge("x", "u"), edge("u", "t", 2)},
      node("T0", 1, {"s", "x"}, {node("T1", std::move(p), {"u", "t"})}));
}

std::vector<NamedTemplate> all_fixtures() {
  return {{"four_templates", four_templates()},     {"fan", fan()}, {"ring", ring()},
          {"inner_sink", inner_sink()},   {"inner_pair", inner_pair()},   {"inner_pair_p3", inner_pair(3)}};
}

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

TemplateNode build_tree(std::size_t t, const std::vector<std::size_t>& parent,
                        const std::vector<int>& parameter,
                        const std::vector<std::vector<VertexId>>& owned) {
  TemplateNode out{"T" + std::to_string(t), parameter[t], owned[t], {}};
  for (std::size_t c = 0; c < parent.size(); ++c) {
    if (c != 0 && parent[c] == t) {
      out.children.push_back(build_tree(c, parent, parameter, owned));
    }
  }
  return out;
}

SiblingSpec random_sibling(std::mt19937_64& rng, int p) {
  if (uniform(rng, 0, 1) == 0) return CyclicShift{uniform(rng, 0, p - 1)};
  std::vector<int> perm(static_cast<std::size_t>(p));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  Permutation out;
  for (int x : perm) out.map.emplace_back(x);
  return out;
}

}  // namespace

ParametricGraphTemplate random_template(std::mt19937_64& rng,
                                        const RandomOptions& o) {
  const int min_n = o.root_pair ? 2 : 1;
  const int n = uniform(rng, std::max(min_n, 2), static_cast<int>(o.max_vertices));
  const int reserved = o.root_pair ? 2 : 0;
  const int k = uniform(rng, 1, std::min(5, n - reserved + 1));

  std::vector<std::size_t> parent(static_cast<std::size_t>(k), npos);
  std::vector<std::size_t> depth(static_cast<std::size_t>(k), 0);
  std::vector<int> parameter(static_cast<std::size_t>(k), 1);
  for (std::size_t t = 1; t < parent.size(); ++t) {
    std::vector<std::size_t> candidates;
    for (std::size_t p = 0; p < t; ++p) {
      if (depth[p] < o.max_height) candidates.push_back(p);
    }
    parent[t] = candidates[static_cast<std::size_t>(
        uniform(rng, 0, static_cast<int>(candidates.size()) - 1))];
    depth[t] = depth[parent[t]] + 1;
    parameter[t] = uniform(rng, 1, o.max_parameter);
  }

  std::vector<VertexId> vertices;
  for (int i = 0; i < n; ++i) vertices.push_back("v" + std::to_string(i));
  std::vector<std::size_t> owner(vertices.size());
  std::vector<std::size_t> order(vertices.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::size_t next = 0;
  for (std::size_t t = 1; t < parent.size(); ++t) owner[order[next++]] = t;
  for (int r = 0; r < reserved; ++r) owner[order[next++]] = 0;
  for (; next < order.size(); ++next) {
    owner[order[next]] = static_cast<std::size_t>(uniform(rng, 0, k - 1));
  }
  std::vector<std::vector<VertexId>> owned(parent.size());
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    owned[owner[v]].push_back(vertices[v]);
  }

  auto allowed = [&](std::size_t a, std::size_t b) {
    const std::size_t ta = owner[a], tb = owner[b];
    return ta == tb || parent[ta] == tb || parent[tb] == ta;
  };
  std::vector<Edge> edges;
  const int m = uniform(rng, 1, static_cast<int>(o.max_edges));
  for (int tries = 0; tries < 400 && static_cast<int>(edges.size()) < m;
       ++tries) {
    const auto a = static_cast<std::size_t>(uniform(rng, 0, n - 1));
    const auto b = static_cast<std::size_t>(uniform(rng, 0, n - 1));
    if (a == b && uniform(rng, 0, 5) != 0) continue;
    if (!allowed(a, b)) continue;
    Edge e = edge(vertices[a], vertices[b], uniform(rng, 0, o.max_weight));
    const std::size_t t = owner[a];
    if (o.siblings && t != 0 && owner[b] == t && parameter[t] > 1 &&
        uniform(rng, 0, 2) == 0) {
      e.sibling = random_sibling(rng, parameter[t]);
    }
    edges.push_back(std::move(e));
  }
  if (o.siblings) {
    // Guarantee at least one sibling edge when some template allows it.
    const bool has = std::any_of(edges.begin(), edges.end(),
                                 [](const Edge& e) { return e.sibling.has_value(); });
    for (std::size_t t = 1; !has && t < parent.size(); ++t) {
      if (parameter[t] < 2) continue;
      const VertexId& a = owned[t][static_cast<std::size_t>(
          uniform(rng, 0, static_cast<int>(owned[t].size()) - 1))];
      const VertexId& b = owned[t][static_cast<std::size_t>(
          uniform(rng, 0, static_cast<int>(owned[t].size()) - 1))];
      if (edges.size() >= o.max_edges) edges.pop_back();
      edges.push_back(sibling_edge(a, b, uniform(rng, 1, o.max_weight),
                                   random_sibling(rng, parameter[t])));
      break;
    }
  }

  return ParametricGraphTemplate(std::move(vertices), std::move(edges),
                                 build_tree(0, parent, parameter, owned));
}

std::vector<InstanceAddress> all_addresses(const ParametricGraphTemplate& pgt,
                                           const VertexId& v) {
  std::vector<InstanceAddress> out{{}};
  for (std::size_t t : pgt.path_from_root(pgt.owner(pgt.vertex_index(v)))) {
    std::vector<InstanceAddress> next;
    for (const auto& a : out) {
      for (BigInt i = 0; i < pgt.info(t).parameter; ++i) {
        next.push_back(a);
        next.back().push_back(i);
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace pgt::testing
