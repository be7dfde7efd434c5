#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "pgt/weight.hpp"

namespace pgt {

using VertexId = std::string;
using TemplateId = std::string;

/// One instance index per template on the path from the root (exclusive)
/// down to the template a vertex belongs to. Indices are 0-based and follow
/// instantiation order.
using InstanceAddress = std::vector<BigInt>;

std::string format_address(const InstanceAddress& address);

/// Vertex ids starting with this prefix are reserved for generated dummies.
inline constexpr std::string_view kDummyPrefix = "__dummy";

/// f(x) = (x + delta) mod P.
struct CyclicShift {
  BigInt delta;
  friend bool operator==(const CyclicShift&, const CyclicShift&) = default;
};

/// f(x) = map[x]; must be a bijection on {0, ..., P-1}.
struct Permutation {
  std::vector<BigInt> map;
  friend bool operator==(const Permutation&, const Permutation&) = default;
};

using SiblingSpec = std::variant<CyclicShift, Permutation>;

/// Evaluates the sibling function at `index` for a template with `parameter`
/// instances. Throws std::out_of_range if a permutation is too short.
BigInt apply_sibling(const SiblingSpec& spec, const BigInt& index,
                     const BigInt& parameter);

bool is_bijection(const SiblingSpec& spec, const BigInt& parameter);

struct Edge {
  VertexId src;
  VertexId dst;
  Weight weight;
  std::optional<SiblingSpec> sibling;
  /// Input order at `dst`; only meaningful for loop programs.
  std::optional<int> rank;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct TemplateNode {
  TemplateId id;
  BigInt parameter = 1;
  std::vector<VertexId> vertices;  // owned directly, not by a descendant
  std::vector<TemplateNode> children;

  friend bool operator==(const TemplateNode&, const TemplateNode&) = default;
};

class PgtError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownVertex : public PgtError {
 public:
  explicit UnknownVertex(const VertexId& v)
      : PgtError("unknown vertex '" + v + "'") {}
};

class UnknownTemplate : public PgtError {
 public:
  explicit UnknownTemplate(const TemplateId& t)
      : PgtError("unknown template '" + t + "'") {}
};

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

/// Indexed, immutable view of a template tree node.
struct TemplateInfo {
  TemplateId id;
  BigInt parameter;
  std::size_t parent = npos;
  std::size_t depth = 0;
  /// Product of the parameters from the root down to and including this node.
  BigInt instances;
  std::vector<std::size_t> children;
  std::vector<std::size_t> owned;  // vertex indices
};

/// A template graph together with its laminar family of templates (stored as
/// a tree) and their repetition parameters.
///
/// Construction never throws on structural problems: the indexes are built
/// leniently (an unowned vertex is treated as owned by the root, a doubly
/// owned vertex by the first owner seen in pre-order) and validate() reports
/// every violated rule. Operations that need a well-formed template call
/// require_valid().
class ParametricGraphTemplate {
 public:
  ParametricGraphTemplate(std::vector<VertexId> vertices,
                          std::vector<Edge> edges, TemplateNode root,
                          std::set<VertexId> dummies = {});

  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const TemplateNode& root() const { return root_; }
  /// Vertices generated by transforms; exempt from the reserved-id rule.
  const std::set<VertexId>& dummies() const { return dummies_; }
  bool is_dummy(const VertexId& v) const { return dummies_.count(v) != 0; }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t template_count() const { return templates_.size(); }

  std::optional<std::size_t> find_vertex(const VertexId& v) const;
  std::size_t vertex_index(const VertexId& v) const;  // throws UnknownVertex
  std::optional<std::size_t> find_template(const TemplateId& t) const;
  std::size_t template_index(const TemplateId& t) const;  // UnknownTemplate

  /// Pre-order; index 0 is the root.
  const TemplateInfo& info(std::size_t t) const { return templates_.at(t); }
  std::size_t owner(std::size_t v) const { return owner_.at(v); }
  std::size_t edge_src(std::size_t e) const { return edge_ends_.at(e).first; }
  std::size_t edge_dst(std::size_t e) const { return edge_ends_.at(e).second; }
  /// False if an endpoint of edge e names no vertex.
  bool edge_resolved(std::size_t e) const;

  /// Templates from the root (exclusive) down to t (inclusive).
  std::vector<std::size_t> path_from_root(std::size_t t) const;
  bool is_ancestor_or_self(std::size_t ancestor, std::size_t t) const;

  /// Out- and in-incidence lists (edge indices), by vertex index.
  const std::vector<std::size_t>& out_edges(std::size_t v) const {
    return out_.at(v);
  }
  const std::vector<std::size_t>& in_edges(std::size_t v) const {
    return in_.at(v);
  }

  /// Number of distinct (owner, vertex) ownership claims for v, for
  /// validation.
  std::size_t ownership_claims(std::size_t v) const { return claims_.at(v); }
  const std::vector<TemplateId>& duplicate_template_ids() const {
    return duplicate_template_ids_;
  }
  const std::vector<VertexId>& unknown_owned_vertices() const {
    return unknown_owned_;
  }

  friend bool operator==(const ParametricGraphTemplate& a,
                         const ParametricGraphTemplate& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_ &&
           a.root_ == b.root_ && a.dummies_ == b.dummies_;
  }

 private:
  void index_node(const TemplateNode& node, std::size_t parent,
                  std::size_t depth, const BigInt& instances);

  std::vector<VertexId> vertices_;
  std::vector<Edge> edges_;
  TemplateNode root_;
  std::set<VertexId> dummies_;

  std::unordered_map<VertexId, std::size_t> vertex_lookup_;
  std::unordered_map<TemplateId, std::size_t> template_lookup_;
  std::vector<TemplateInfo> templates_;
  std::vector<std::size_t> owner_;
  std::vector<std::size_t> claims_;
  std::vector<std::pair<std::size_t, std::size_t>> edge_ends_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::vector<TemplateId> duplicate_template_ids_;
  std::vector<VertexId> unknown_owned_;
};

}  // namespace pgt
