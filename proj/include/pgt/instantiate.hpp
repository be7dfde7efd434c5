#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pgt/analysis.hpp"
#include "pgt/relabeling.hpp"
#include "pgt/template_graph.hpp"

namespace pgt {

struct ConcreteVertex {
  /// Canonical "origin@i0.i1..." ("origin" for root vertices).
  std::string id;
  Label label;
  bool dummy = false;
};

struct ConcreteEdge {
  std::size_t src = 0;
  std::size_t dst = 0;
  Weight weight;
  /// Index of the template edge this edge instantiates, if any.
  std::optional<std::size_t> origin;
};

/// A flat graph whose vertices carry instantiation provenance. Parallel edges
/// are kept.
struct ConcreteGraph {
  std::vector<ConcreteVertex> vertices;
  std::vector<ConcreteEdge> edges;

  std::optional<std::size_t> find(const Label& label) const;
};

class SizeLimitExceeded : public PgtError {
 public:
  SizeLimitExceeded(InstantiationSize size, BigInt limit);
  const InstantiationSize& size() const { return size_; }
  const BigInt& limit() const { return limit_; }

 private:
  InstantiationSize size_;
  BigInt limit_;
};

inline const BigInt kDefaultInstantiationLimit = 1'000'000;

/// Which leaf template the rewriting procedure picks next. The result is
/// label-identical for every order; the knob exists so tests can check that.
enum class LeafOrder { kFirst, kLast };

/// Materializes the instantiation by repeatedly rewriting a leaf template.
/// Vertices are returned sorted by (template vertex, address) and edges by
/// (template edge, endpoints), so the output is canonical.
/// Throws InvalidTemplate or SizeLimitExceeded (N or M above `limit`).
ConcreteGraph instantiate(const ParametricGraphTemplate& pgt,
                          const BigInt& limit = kDefaultInstantiationLimit,
                          LeafOrder order = LeafOrder::kFirst);

/// Number of successful instantiate() calls in this process.
std::uint64_t instantiation_count();

/// Collapses every vertex whose origin is v into one vertex labelled (v, []).
/// Throws UnknownVertex when no vertex has that origin.
ConcreteGraph merge_vertex_instances(const ConcreteGraph& g, const VertexId& v);

/// Contracts every infinite-weight edge. A contracted class keeps the label
/// of its first non-dummy member.
ConcreteGraph contract_infinite_edges(const ConcreteGraph& g);

using LabelMap = std::function<std::optional<Label>(const Label&)>;

class IncompleteMapping : public PgtError {
 public:
  explicit IncompleteMapping(const Label& label)
      : PgtError("mapping has no image for " + format_label(label)) {}
};

/// True iff relabelling g1's vertices through `mapping` yields exactly g2's
/// labelled vertex multiset and (src label, dst label, weight) edge multiset.
/// Throws IncompleteMapping if `mapping` has no image for a vertex of g1.
bool label_isomorphic(const ConcreteGraph& g1, const ConcreteGraph& g2,
                      const LabelMap& mapping);

/// Uses relabeling.to_original as the mapping.
bool label_isomorphic(const ConcreteGraph& g1, const ConcreteGraph& g2,
                      const Relabeling& relabeling);

LabelMap identity_mapping();

}  // namespace pgt
