#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pgt/instantiate.hpp"
#include "pgt/loop/program.hpp"

namespace pgt::loop {

/// Dense row-major array.
struct Array {
  std::vector<std::size_t> sizes;
  std::vector<Value> values;

  static Array zeros(std::vector<std::size_t> sizes);
  std::size_t element_count() const;
  /// nullopt if idx has the wrong length or leaves the bounds.
  std::optional<std::size_t> offset(const std::vector<BigInt>& idx) const;

  friend bool operator==(const Array&, const Array&) = default;
};

using ArrayMap = std::map<VertexId, Array>;

class InputShapeMismatch : public PgtError {
 public:
  using PgtError::PgtError;
};

/// Two unordered writes of the same array element.
struct Race {
  std::string first;   // concrete write vertex ids
  std::string second;
  VertexId array;
  std::vector<BigInt> index;

  friend bool operator==(const Race&, const Race&) = default;
};

struct ExecutionReport {
  /// Output arrays; empty when the execution is undefined.
  ArrayMap outputs;
  std::vector<Race> races;
  /// Why the execution is undefined (out of bounds, division by zero, ...).
  std::optional<std::string> undefined;
  /// Total dataflow weight of the instantiation's edges.
  BigInt movement_weight_total;
};

/// Which ready vertex a serial execution picks next.
enum class Schedule { kLowestFirst, kHighestFirst };

/// Serial execution of the instantiation. Pass-through vertices are spliced
/// out first, Parfor hands index j to child instance j.
/// Throws InvalidProgram, InputShapeMismatch or SizeLimitExceeded.
ExecutionReport interpret(const LoopProgram& lp, const ArrayMap& inputs,
                          const BigInt& limit = kDefaultInstantiationLimit,
                          Schedule schedule = Schedule::kLowestFirst);

std::vector<Race> detect_races(const LoopProgram& lp, const ArrayMap& inputs,
                               const BigInt& limit = kDefaultInstantiationLimit);

/// True iff a directed path leads from `from` to `to`.
bool reachable(const ConcreteGraph& g, std::size_t from, std::size_t to);

}  // namespace pgt::loop
