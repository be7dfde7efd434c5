#include "loop_fixtures.hpp"

namespace pgt::testing {

using loop::Op;
using loop::VertexKind;

ProgramBuilder& ProgramBuilder::add(VertexId id, VertexKind kind,
                                    std::size_t depth) {
  specs[id].kind = kind;
  vertices.push_back(id);
  owned[depth].push_back(std::move(id));
  return *this;
}

ProgramBuilder& ProgramBuilder::memory(VertexId id, VertexKind kind,
                                       std::vector<BigInt> sizes) {
  specs[id].sizes = std::move(sizes);
  return add(std::move(id), kind);
}

ProgramBuilder& ProgramBuilder::binop(VertexId id, Op op, std::size_t depth) {
  specs[id].op = op;
  return add(std::move(id), VertexKind::kBinOp, depth);
}

ProgramBuilder& ProgramBuilder::constant(VertexId id, loop::Value c,
                                         std::size_t depth) {
  specs[id].constant = std::move(c);
  return add(std::move(id), VertexKind::kConst, depth);
}

ProgramBuilder& ProgramBuilder::edge(VertexId a, VertexId b,
                                     std::optional<int> rank) {
  edges.push_back({std::move(a), std::move(b), 1, std::nullopt, rank});
  return *this;
}

loop::LoopProgram ProgramBuilder::build(std::vector<BigInt> parameters) const {
  auto at = [&](std::size_t d) {
    auto it = owned.find(d);
    return it == owned.end() ? std::vector<VertexId>{} : it->second;
  };
  TemplateNode node;
  for (std::size_t d = parameters.size(); d > 0; --d) {
    TemplateNode up{"T" + std::to_string(d), parameters[d - 1], at(d), {}};
    if (d < parameters.size()) up.children.push_back(std::move(node));
    node = std::move(up);
  }
  TemplateNode root{"T0", 1, at(0), {}};
  if (!parameters.empty()) root.children.push_back(std::move(node));
  return {ParametricGraphTemplate(vertices, edges, std::move(root)), specs};
}

loop::LoopProgram double_write() {
  ProgramBuilder b;
  b.memory("B", VertexKind::kOutputMem, {1})
      .add("for_i", VertexKind::kParfor)
      .add("i", VertexKind::kCopy, 1)
      .constant("zero", 0, 1)
      .add("write_B", VertexKind::kWrite, 1)
      .edge("for_i", "i")
      .edge("i", "write_B", 0)
      .edge("zero", "write_B", 1)
      .edge("write_B", "B");
  return b.build({2});
}

loop::LoopProgram identity_write(BigInt p) {
  ProgramBuilder b;
  b.memory("B", VertexKind::kOutputMem, {p})
      .add("for_i", VertexKind::kParfor)
      .add("i", VertexKind::kCopy, 1)
      .add("i2", VertexKind::kCopy, 1)
      .add("write_B", VertexKind::kWrite, 1)
      .edge("for_i", "i")
      .edge("i", "i2")
      .edge("i", "write_B", 0)
      .edge("i2", "write_B", 1)
      .edge("write_B", "B");
  return b.build({p});
}

loop::LoopProgram chained_write() {
  ProgramBuilder b;
  b.memory("C", VertexKind::kTempMem, {1})
      .memory("B", VertexKind::kOutputMem, {1})
      .constant("five", 5)
      .constant("z1", 0)
      .constant("z2", 0)
      .constant("z3", 0)
      .add("write_C", VertexKind::kWrite)
      .add("read_C", VertexKind::kRead)
      .add("write_B", VertexKind::kWrite)
      .edge("five", "write_C", 0)
      .edge("z1", "write_C", 1)
      .edge("write_C", "C")
      .edge("C", "read_C", 0)
      .edge("z2", "read_C", 1)
      .edge("read_C", "write_B", 0)
      .edge("z3", "write_B", 1)
      .edge("write_B", "B");
  return b.build();
}

loop::LoopProgram read_past_end() {
  ProgramBuilder b;
  b.memory("A", VertexKind::kInputMem, {2})
      .memory("B", VertexKind::kOutputMem, {1})
      .constant("two", 2)
      .constant("zero", 0)
      .add("read_A", VertexKind::kRead)
      .add("write_B", VertexKind::kWrite)
      .edge("A", "read_A", 0)
      .edge("two", "read_A", 1)
      .edge("read_A", "write_B", 0)
      .edge("zero", "write_B", 1)
      .edge("write_B", "B");
  return b.build();
}

loop::Array random_array(std::mt19937_64& rng, std::vector<std::size_t> sizes,
                         int lo, int hi) {
  loop::Array a = loop::Array::zeros(std::move(sizes));
  std::uniform_int_distribution<int> pick(lo, hi);
  for (auto& v : a.values) v = pick(rng);
  return a;
}

}  // namespace pgt::testing
