#include "pgt/loop/bound.hpp"

namespace pgt::loop {

FlowResult data_movement_bound(const LoopProgram& lp, const VertexId& s,
                               const VertexId& t) {
  require_well_formed(lp);
  return max_all_st_flow(assign_dataflow_weights(lp), s, t);
}

FlowResult data_movement_bound(const LoopProgram& lp, const VertexId& s,
                               const InstanceAddress& addr_s, const VertexId& t,
                               const InstanceAddress& addr_t) {
  require_well_formed(lp);
  return max_single_st_flow(assign_dataflow_weights(lp), s, addr_s, t, addr_t);
}

}  // namespace pgt::loop
