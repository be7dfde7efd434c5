#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pgt/template_graph.hpp"

namespace pgt {

enum class Rule {
  kDuplicateVertex,
  kUnknownVertex,
  kUnownedVertex,
  kMultiplyOwnedVertex,
  kDuplicateTemplate,
  kRootParameter,
  kNonPositiveParameter,
  kEmptyTemplate,
  kNoJumping,
  kSiblingOwner,
  kSiblingNotBijective,
  kReservedId,
};

std::string_view rule_name(Rule rule);

struct Violation {
  Rule rule;
  std::string subject;  // offending vertex, edge ("#3 a->b") or template
  std::string message;
};

std::string to_string(const Violation& v);

/// Empty iff every structural invariant of a parametric graph template holds.
std::vector<Violation> validate(const ParametricGraphTemplate& pgt);

class InvalidTemplate : public PgtError {
 public:
  explicit InvalidTemplate(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Throws InvalidTemplate unless validate() is empty.
void require_valid(const ParametricGraphTemplate& pgt);

/// The deepest template owning v.
TemplateId template_of(const ParametricGraphTemplate& pgt, const VertexId& v);

/// Vertices owned by t's parent that share an edge with a vertex owned by t.
/// Empty for the root.
std::set<VertexId> boundary_vertices(const ParametricGraphTemplate& pgt,
                                     const TemplateId& t);

struct TemplateCycleCheck {
  bool acyclic = true;
  /// u, x, ..., w with (u, x) a cross-template edge and T(w) == T(u).
  std::vector<VertexId> witness;
};

/// A template-cycle is a path that leaves a template and comes back to it
/// (closed paths included: u -> x -> u re-enters a different instance of
/// T(u) in the instantiation). Detection searches, for every cross-template
/// edge (u, x), for a vertex of T(u) reachable from x.
TemplateCycleCheck is_template_acyclic(const ParametricGraphTemplate& pgt);

struct InstantiationSize {
  BigInt vertices;
  BigInt edges;
  friend bool operator==(const InstantiationSize&,
                         const InstantiationSize&) = default;
};

/// Exact vertex and edge counts of the instantiation, computed on the
/// template: every vertex (edge) contributes the instance count of its
/// deepest template (deepest endpoint template).
InstantiationSize instantiation_size(const ParametricGraphTemplate& pgt);

TemplateId lca_template(const ParametricGraphTemplate& pgt, const VertexId& u,
                        const VertexId& v);

std::size_t tree_height(const ParametricGraphTemplate& pgt);

/// Index of the deeper of the two endpoint templates of edge e (ties: the
/// source's). Every instance of e is attached to one instance of it.
std::size_t edge_template(const ParametricGraphTemplate& pgt, std::size_t e);

}  // namespace pgt
