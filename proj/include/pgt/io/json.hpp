#pragma once

// On-disk JSON forms. Numbers that may exceed 64 bits (weights, parameters,
// sizes, addresses, array values) are decimal strings; keys come out sorted
// and vertices, edges and templates in id order, so serialization is a fixed
// point of parse-then-serialize.

#include <optional>
#include <string>
#include <string_view>

#include "pgt/flow.hpp"
#include "pgt/instantiate.hpp"
#include "pgt/loop/interpret.hpp"
#include "pgt/template_graph.hpp"

namespace pgt::io {

class ParseError : public PgtError {
 public:
  using PgtError::PgtError;
};

/// A template, or a loop program when any vertex carries an operation kind.
struct TemplateDocument {
  ParametricGraphTemplate pgt;
  std::optional<std::map<VertexId, loop::VertexSpec>> specs;

  bool is_program() const { return specs.has_value(); }
  /// Precondition: is_program().
  loop::LoopProgram program() const { return {pgt, *specs}; }
};

/// Throws ParseError on malformed JSON or fields outside the schema.
/// Structural rules are left to validate().
TemplateDocument parse_document(std::string_view text);

std::string serialize(const TemplateDocument& doc);
std::string serialize(const ParametricGraphTemplate& pgt);
std::string serialize(const loop::LoopProgram& lp);
/// Vertices with origin and address, edges by concrete id.
std::string serialize(const ConcreteGraph& g);

/// Vertex names and weighted edges, in graph order.
std::string serialize(const FlatGraph& g);

/// {"name": nested arrays of rationals as strings, ...}
loop::ArrayMap parse_arrays(std::string_view text);
std::string serialize(const loop::ArrayMap& arrays);

}  // namespace pgt::io
