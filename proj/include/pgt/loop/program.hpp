#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pgt/template_graph.hpp"

namespace pgt::loop {

/// Exact rational; arrays and intermediate results hold these.
using Value = boost::multiprecision::cpp_rational;

/// "3", "-3", "7/2". Throws std::invalid_argument.
Value parse_value(std::string_view text);
std::string format_value(const Value& v);

enum class VertexKind {
  kInputMem,
  kOutputMem,
  kTempMem,
  kParfor,
  kReduce,
  kCopy,
  kPassThrough,
  kRead,
  kWrite,
  kBinOp,
  kConst,
};

enum class Op { kAdd, kSub, kMul, kDiv };

std::string_view kind_name(VertexKind k);
std::optional<VertexKind> parse_kind(std::string_view name);
std::string_view op_symbol(Op op);
std::optional<Op> parse_op(std::string_view symbol);

bool is_memory(VertexKind k);

struct VertexSpec {
  VertexKind kind = VertexKind::kCopy;
  /// Reduce and BinOp only.
  Op op = Op::kAdd;
  /// Const only.
  Value constant = 0;
  /// Memory vertices only; one entry per dimension.
  std::vector<BigInt> sizes;

  friend bool operator==(const VertexSpec&, const VertexSpec&) = default;
};

/// A parallel loop graph template: a parametric graph template whose vertices
/// carry operation kinds. Edge ranks give the input order at the target.
struct LoopProgram {
  ParametricGraphTemplate pgt;
  std::map<VertexId, VertexSpec> specs;

  const VertexSpec& spec(const VertexId& v) const;
  VertexKind kind(const VertexId& v) const { return spec(v).kind; }

  friend bool operator==(const LoopProgram&, const LoopProgram&) = default;
};

enum class ProgramRule {
  kTemplate,         // structural template rule, see validate()
  kMissingKind,
  kMemoryNotInRoot,
  kMemoryShape,
  kOutDegree,
  kInputRanks,
  kParfor,
  kReduce,
  kCopy,
  kPassThrough,
  kRead,
  kWrite,
  kOperator,
  kConstant,
  kCyclic,
};

std::string_view rule_name(ProgramRule rule);

struct ProgramViolation {
  ProgramRule rule;
  std::string subject;
  std::string message;
};

std::string to_string(const ProgramViolation& v);

/// Empty iff the program is well-formed.
std::vector<ProgramViolation> validate_program(const LoopProgram& lp);

class InvalidProgram : public PgtError {
 public:
  explicit InvalidProgram(std::vector<ProgramViolation> violations);
  const std::vector<ProgramViolation>& violations() const { return violations_; }

 private:
  std::vector<ProgramViolation> violations_;
};

void require_well_formed(const LoopProgram& lp);

/// B = A1 * A2 for an n x k matrix A1 and a k x m matrix A2. Loop templates
/// Ti (n) > Tj (m) > Tl (k). Throws std::invalid_argument on a zero size.
LoopProgram build_matmul(const BigInt& n, const BigInt& k, const BigInt& m);

/// B[i] = sum_l A1[i + l] * A2[l] for i < n - k + 1. Loop templates
/// Ti (n - k + 1) > Tl (k). Throws std::invalid_argument unless 0 < k <= n.
LoopProgram build_cross_correlation(const BigInt& n, const BigInt& k);

/// Zero on Parfor output edges, one everywhere else.
ParametricGraphTemplate assign_dataflow_weights(const LoopProgram& lp);

}  // namespace pgt::loop
