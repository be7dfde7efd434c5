#pragma once

#include "pgt/loop/program.hpp"
#include "pgt/template_flow.hpp"

namespace pgt::loop {

/// Upper bound on the data moved between the processors running s's
/// instances and t's instances: max all-s-t flow under dataflow weights.
FlowResult data_movement_bound(const LoopProgram& lp, const VertexId& s,
                               const VertexId& t);

/// Same, for one instance of s and one instance of t.
FlowResult data_movement_bound(const LoopProgram& lp, const VertexId& s,
                               const InstanceAddress& addr_s, const VertexId& t,
                               const InstanceAddress& addr_t);

}  // namespace pgt::loop
