#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "pgt/template_graph.hpp"

namespace pgt {

/// Provenance of an instantiated vertex: the template vertex it copies and
/// the instance it sits in.
struct Label {
  VertexId origin;
  InstanceAddress address;

  friend bool operator==(const Label&, const Label&) = default;
  friend std::weak_ordering operator<=>(const Label& a, const Label& b) {
    if (auto c = a.origin <=> b.origin; c != 0) return c;
    return a.address <=> b.address;
  }
};

/// Parses "name" or "name@i0.i1..." (see format_label).
Label parse_label(std::string_view text);
std::string format_label(const Label& label);

/// Bidirectional map between the instantiation labels of a template and of
/// an isomorphic template produced from it by a transform. Built as a list
/// of elementary rewriting steps; to_transformed applies them in order and
/// to_original in reverse.
class Relabeling {
 public:
  static Relabeling identity() { return {}; }

  /// Template at `depth` with parameter P was split: instance `index` stays
  /// with the original vertex ids (parameter 1), the other P-1 instances are
  /// represented by fresh copies renumbered 0..P-2 in order.
  /// `subtree` holds the original vertex ids of the split subtree and
  /// `copy_of` maps each copy id to its original id.
  void add_split(std::size_t depth, BigInt index, std::set<VertexId> subtree,
                 std::map<VertexId, VertexId> copy_of);

  /// A parameter-1 template at `depth` holding `subtree` was dissolved into
  /// its parent, dropping one address component.
  void add_collapse(std::size_t depth, std::set<VertexId> subtree);

  /// Vertices that exist only in the transformed template (dummies).
  void add_new_vertices(std::set<VertexId> vertices);

  std::optional<Label> to_transformed(const Label& label) const;
  std::optional<Label> to_original(const Label& label) const;

  /// Relabeling for applying `this` and then `next`.
  Relabeling then(const Relabeling& next) const;

  bool empty() const { return steps_.empty(); }

 private:
  struct Step {
    enum class Kind { kSplit, kCollapse, kNew } kind;
    std::size_t depth = 0;
    BigInt index;
    std::set<VertexId> subtree;
    std::map<VertexId, VertexId> copy_of;
    std::map<VertexId, VertexId> copy_for;  // inverse of copy_of
  };
  std::vector<Step> steps_;
};

}  // namespace pgt
