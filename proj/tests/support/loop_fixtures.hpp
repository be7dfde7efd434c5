#pragma once

#include <random>

#include "pgt/loop/interpret.hpp"

namespace pgt::testing {

/// Small programs built by hand. Ids follow the loop builders' style.
struct ProgramBuilder {
  std::vector<VertexId> vertices;
  std::vector<Edge> edges;
  std::map<VertexId, loop::VertexSpec> specs;
  std::map<std::size_t, std::vector<VertexId>> owned;  // by depth

  ProgramBuilder& add(VertexId id, loop::VertexKind kind, std::size_t depth = 0);
  ProgramBuilder& memory(VertexId id, loop::VertexKind kind,
                         std::vector<BigInt> sizes);
  ProgramBuilder& binop(VertexId id, loop::Op op, std::size_t depth = 0);
  ProgramBuilder& constant(VertexId id, loop::Value c, std::size_t depth = 0);
  ProgramBuilder& edge(VertexId a, VertexId b, std::optional<int> rank = {});

  /// A chain of templates T0 > T1 > ... with the given parameters below root.
  loop::LoopProgram build(std::vector<BigInt> parameters = {}) const;
};

/// Parfor(2) whose two iterations both write B[0].
loop::LoopProgram double_write();
/// Parfor(p) writing B[i] = i.
loop::LoopProgram identity_write(BigInt p = 2);
/// Writes C[0] = 5, then copies C[0] into B[0] through a read.
loop::LoopProgram chained_write();
/// Reads A[2] from a two-element array.
loop::LoopProgram read_past_end();

loop::Array random_array(std::mt19937_64& rng, std::vector<std::size_t> sizes,
                         int lo = -5, int hi = 5);

}  // namespace pgt::testing
