#pragma once

#include <string>

#include "pgt/instantiate.hpp"
#include "pgt/template_graph.hpp"

namespace pgt::io {

/// Graphviz text. Non-root templates become nested clusters captioned with
/// their parameter; vertices appear in id order.
std::string to_dot(const ParametricGraphTemplate& pgt);

/// One node per concrete vertex in instantiation order.
std::string to_dot(const ConcreteGraph& g);

}  // namespace pgt::io
