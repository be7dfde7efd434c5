#include "pgt/analysis.hpp"

#include <deque>
#include <unordered_set>

namespace pgt {

std::string_view rule_name(Rule rule) {
  switch (rule) {
    case Rule::kDuplicateVertex: return "DuplicateVertex";
    case Rule::kUnknownVertex: return "UnknownVertex";
    case Rule::kUnownedVertex: return "UnownedVertex";
    case Rule::kMultiplyOwnedVertex: return "MultiplyOwnedVertex";
    case Rule::kDuplicateTemplate: return "DuplicateTemplate";
    case Rule::kRootParameter: return "RootParameter";
    case Rule::kNonPositiveParameter: return "NonPositiveParameter";
    case Rule::kEmptyTemplate: return "EmptyTemplate";
    case Rule::kNoJumping: return "NoJumping";
    case Rule::kSiblingOwner: return "SiblingOwner";
    case Rule::kSiblingNotBijective: return "SiblingNotBijective";
    case Rule::kReservedId: return "ReservedId";
  }
  return "?";
}

std::string to_string(const Violation& v) {
  return std::string(rule_name(v.rule)) + " [" + v.subject + "]: " + v.message;
}

namespace {

std::string edge_subject(const ParametricGraphTemplate& pgt, std::size_t e) {
  const Edge& edge = pgt.edges()[e];
  return "#" + std::to_string(e) + " " + edge.src + "->" + edge.dst;
}

std::string describe(const std::vector<Violation>& violations) {
  std::string msg = "invalid parametric graph template";
  for (const auto& v : violations) msg += "\n  " + to_string(v);
  return msg;
}

// Number of vertices owned by t or any of its descendants.
std::size_t subtree_vertex_count(const ParametricGraphTemplate& pgt,
                                 std::size_t t) {
  std::size_t total = pgt.info(t).owned.size();
  for (std::size_t c : pgt.info(t).children) {
    total += subtree_vertex_count(pgt, c);
  }
  return total;
}

std::size_t lca_index(const ParametricGraphTemplate& pgt, std::size_t a,
                      std::size_t b) {
  while (pgt.info(a).depth > pgt.info(b).depth) a = pgt.info(a).parent;
  while (pgt.info(b).depth > pgt.info(a).depth) b = pgt.info(b).parent;
  while (a != b) {
    a = pgt.info(a).parent;
    b = pgt.info(b).parent;
  }
  return a;
}

}  // namespace

InvalidTemplate::InvalidTemplate(std::vector<Violation> violations)
    : PgtError(describe(violations)), violations_(std::move(violations)) {}

std::vector<Violation> validate(const ParametricGraphTemplate& pgt) {
  std::vector<Violation> out;
  auto add = [&](Rule r, std::string subject, std::string message) {
    out.push_back({r, std::move(subject), std::move(message)});
  };

  std::unordered_set<VertexId> seen;
  for (const VertexId& v : pgt.vertices()) {
    if (!seen.insert(v).second) {
      add(Rule::kDuplicateVertex, v, "vertex listed more than once");
    }
    if (v.rfind(kDummyPrefix, 0) == 0 && !pgt.is_dummy(v)) {
      add(Rule::kReservedId, v, "prefix '__dummy' is reserved for dummies");
    }
  }
  for (const VertexId& v : pgt.dummies()) {
    if (!pgt.find_vertex(v)) {
      add(Rule::kUnknownVertex, v, "dummy marker names no vertex");
    }
  }
  for (const VertexId& v : pgt.unknown_owned_vertices()) {
    add(Rule::kUnknownVertex, v, "template owns a vertex that does not exist");
  }
  for (std::size_t v = 0; v < pgt.vertex_count(); ++v) {
    if (pgt.find_vertex(pgt.vertices()[v]) != v) continue;  // duplicate entry
    if (pgt.ownership_claims(v) == 0) {
      add(Rule::kUnownedVertex, pgt.vertices()[v],
          "vertex is owned by no template");
    } else if (pgt.ownership_claims(v) > 1) {
      add(Rule::kMultiplyOwnedVertex, pgt.vertices()[v],
          "vertex is owned by more than one template");
    }
  }

  for (const TemplateId& t : pgt.duplicate_template_ids()) {
    add(Rule::kDuplicateTemplate, t, "template id used more than once");
  }
  for (std::size_t t = 0; t < pgt.template_count(); ++t) {
    const TemplateInfo& info = pgt.info(t);
    if (t == 0 && info.parameter != 1) {
      add(Rule::kRootParameter, info.id, "root parameter must be 1");
    } else if (info.parameter < 1) {
      add(Rule::kNonPositiveParameter, info.id, "parameter must be >= 1");
    }
    if (t != 0 && subtree_vertex_count(pgt, t) == 0) {
      add(Rule::kEmptyTemplate, info.id, "non-root template contains no vertex");
    }
  }

  for (std::size_t e = 0; e < pgt.edge_count(); ++e) {
    const Edge& edge = pgt.edges()[e];
    if (!pgt.edge_resolved(e)) {
      add(Rule::kUnknownVertex, edge_subject(pgt, e),
          "edge endpoint does not exist");
      continue;
    }
    const std::size_t tu = pgt.owner(pgt.edge_src(e));
    const std::size_t tv = pgt.owner(pgt.edge_dst(e));
    if (edge.sibling) {
      if (tu != tv) {
        add(Rule::kSiblingOwner, edge_subject(pgt, e),
            "sibling edge endpoints belong to different templates");
      } else if (!is_bijection(*edge.sibling, pgt.info(tu).parameter)) {
        add(Rule::kSiblingNotBijective, edge_subject(pgt, e),
            "sibling function is not a bijection on the template's "
            "instances");
      }
      continue;
    }
    if (tu != tv && pgt.info(tu).parent != tv && pgt.info(tv).parent != tu) {
      add(Rule::kNoJumping, edge_subject(pgt, e),
          "cross-template edge between " + pgt.info(tu).id + " and " +
              pgt.info(tv).id + ", which are not parent and child");
    }
  }
  return out;
}

void require_valid(const ParametricGraphTemplate& pgt) {
  auto violations = validate(pgt);
  if (!violations.empty()) throw InvalidTemplate(std::move(violations));
}

TemplateId template_of(const ParametricGraphTemplate& pgt, const VertexId& v) {
  return pgt.info(pgt.owner(pgt.vertex_index(v))).id;
}

std::set<VertexId> boundary_vertices(const ParametricGraphTemplate& pgt,
                                     const TemplateId& t) {
  const std::size_t ti = pgt.template_index(t);
  std::set<VertexId> out;
  if (ti == 0) return out;
  const std::size_t parent = pgt.info(ti).parent;
  for (std::size_t e = 0; e < pgt.edge_count(); ++e) {
    if (!pgt.edge_resolved(e)) continue;
    const std::size_t s = pgt.edge_src(e);
    const std::size_t d = pgt.edge_dst(e);
    if (pgt.owner(s) == ti && pgt.owner(d) == parent) {
      out.insert(pgt.vertices()[d]);
    } else if (pgt.owner(d) == ti && pgt.owner(s) == parent) {
      out.insert(pgt.vertices()[s]);
    }
  }
  return out;
}

TemplateCycleCheck is_template_acyclic(const ParametricGraphTemplate& pgt) {
  const std::size_t n = pgt.vertex_count();
  for (std::size_t e = 0; e < pgt.edge_count(); ++e) {
    if (!pgt.edge_resolved(e)) continue;
    const std::size_t u = pgt.edge_src(e);
    const std::size_t x = pgt.edge_dst(e);
    const std::size_t home = pgt.owner(u);
    if (pgt.owner(x) == home) continue;

    std::vector<std::size_t> pred(n, npos);
    std::vector<bool> visited(n, false);
    std::deque<std::size_t> queue{x};
    visited[x] = true;
    std::size_t hit = npos;
    while (!queue.empty() && hit == npos) {
      const std::size_t cur = queue.front();
      queue.pop_front();
      if (pgt.owner(cur) == home) {
        hit = cur;
        break;
      }
      for (std::size_t oe : pgt.out_edges(cur)) {
        const std::size_t next = pgt.edge_dst(oe);
        if (visited[next]) continue;
        // u itself is a valid hit: the closed path u, x, ..., u re-enters
        // another instance of T(u).
        visited[next] = true;
        pred[next] = cur;
        queue.push_back(next);
      }
    }
    if (hit == npos) continue;

    TemplateCycleCheck result;
    result.acyclic = false;
    std::vector<VertexId> tail;
    for (std::size_t cur = hit; cur != x; cur = pred[cur]) {
      tail.push_back(pgt.vertices()[cur]);
    }
    tail.push_back(pgt.vertices()[x]);
    result.witness.push_back(pgt.vertices()[u]);
    result.witness.insert(result.witness.end(), tail.rbegin(), tail.rend());
    return result;
  }
  return {};
}

namespace {

// Number of instances of edge e: the product of parameters over all templates
// that contain an endpoint.
BigInt edge_instances(const ParametricGraphTemplate& pgt, std::size_t e) {
  const std::size_t a = pgt.owner(pgt.edge_src(e));
  const std::size_t b = pgt.owner(pgt.edge_dst(e));
  const std::size_t l = lca_index(pgt, a, b);
  return pgt.info(a).instances * pgt.info(b).instances / pgt.info(l).instances;
}

}  // namespace

InstantiationSize instantiation_size(const ParametricGraphTemplate& pgt) {
  InstantiationSize size{0, 0};
  for (std::size_t v = 0; v < pgt.vertex_count(); ++v) {
    size.vertices += pgt.info(pgt.owner(v)).instances;
  }
  for (std::size_t e = 0; e < pgt.edge_count(); ++e) {
    if (pgt.edge_resolved(e)) size.edges += edge_instances(pgt, e);
  }
  return size;
}

TemplateId lca_template(const ParametricGraphTemplate& pgt, const VertexId& u,
                        const VertexId& v) {
  const std::size_t a = pgt.owner(pgt.vertex_index(u));
  const std::size_t b = pgt.owner(pgt.vertex_index(v));
  return pgt.info(lca_index(pgt, a, b)).id;
}

std::size_t tree_height(const ParametricGraphTemplate& pgt) {
  std::size_t h = 0;
  for (std::size_t t = 0; t < pgt.template_count(); ++t) {
    h = std::max(h, pgt.info(t).depth);
  }
  return h;
}

std::size_t edge_template(const ParametricGraphTemplate& pgt, std::size_t e) {
  const std::size_t a = pgt.owner(pgt.edge_src(e));
  const std::size_t b = pgt.owner(pgt.edge_dst(e));
  return pgt.info(b).depth > pgt.info(a).depth ? b : a;
}

}  // namespace pgt
