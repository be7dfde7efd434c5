#include "pgt/loop/program.hpp"

#include <deque>
#include <regex>
#include <stdexcept>

#include "pgt/analysis.hpp"

namespace pgt::loop {

Value parse_value(std::string_view text) {
  static const std::regex pattern("(-?[0-9]+)(/([0-9]+))?");
  std::cmatch m;
  if (!std::regex_match(text.begin(), text.end(), m, pattern)) {
    throw std::invalid_argument("not a rational number: '" +
                                std::string(text) + "'");
  }
  const BigInt num(m[1].str());
  const BigInt den = m[3].matched ? BigInt(m[3].str()) : BigInt(1);
  if (den.is_zero()) throw std::invalid_argument("zero denominator");
  return Value(num, den);
}

std::string format_value(const Value& v) {
  const BigInt& num = boost::multiprecision::numerator(v);
  const BigInt& den = boost::multiprecision::denominator(v);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

constexpr std::pair<VertexKind, std::string_view> kKindNames[] = {
    {VertexKind::kInputMem, "input"},    {VertexKind::kOutputMem, "output"},
    {VertexKind::kTempMem, "temp"},      {VertexKind::kParfor, "parfor"},
    {VertexKind::kReduce, "reduce"},     {VertexKind::kCopy, "copy"},
    {VertexKind::kPassThrough, "pass"},  {VertexKind::kRead, "read"},
    {VertexKind::kWrite, "write"},       {VertexKind::kBinOp, "binop"},
    {VertexKind::kConst, "const"},
};

constexpr std::pair<Op, std::string_view> kOpSymbols[] = {
    {Op::kAdd, "+"}, {Op::kSub, "-"}, {Op::kMul, "*"}, {Op::kDiv, "/"}};

}  // namespace

std::string_view kind_name(VertexKind k) {
  for (const auto& [kind, name] : kKindNames) {
    if (kind == k) return name;
  }
  return "?";
}

std::optional<VertexKind> parse_kind(std::string_view name) {
  for (const auto& [kind, n] : kKindNames) {
    if (n == name) return kind;
  }
  return std::nullopt;
}

std::string_view op_symbol(Op op) {
  for (const auto& [o, s] : kOpSymbols) {
    if (o == op) return s;
  }
  return "?";
}

std::optional<Op> parse_op(std::string_view symbol) {
  for (const auto& [o, s] : kOpSymbols) {
    if (s == symbol) return o;
  }
  return std::nullopt;
}

bool is_memory(VertexKind k) {
  return k == VertexKind::kInputMem || k == VertexKind::kOutputMem ||
         k == VertexKind::kTempMem;
}

const VertexSpec& LoopProgram::spec(const VertexId& v) const {
  auto it = specs.find(v);
  if (it == specs.end()) throw UnknownVertex(v);
  return it->second;
}

std::string_view rule_name(ProgramRule rule) {
  switch (rule) {
    case ProgramRule::kTemplate: return "Template";
    case ProgramRule::kMissingKind: return "MissingKind";
    case ProgramRule::kMemoryNotInRoot: return "MemoryNotInRoot";
    case ProgramRule::kMemoryShape: return "MemoryShape";
    case ProgramRule::kOutDegree: return "OutDegree";
    case ProgramRule::kInputRanks: return "InputRanks";
    case ProgramRule::kParfor: return "Parfor";
    case ProgramRule::kReduce: return "Reduce";
    case ProgramRule::kCopy: return "Copy";
    case ProgramRule::kPassThrough: return "PassThrough";
    case ProgramRule::kRead: return "Read";
    case ProgramRule::kWrite: return "Write";
    case ProgramRule::kOperator: return "Operator";
    case ProgramRule::kConstant: return "Constant";
    case ProgramRule::kCyclic: return "Cyclic";
  }
  return "?";
}

std::string to_string(const ProgramViolation& v) {
  return std::string(rule_name(v.rule)) + " [" + v.subject + "]: " + v.message;
}

namespace {

std::string describe(const std::vector<ProgramViolation>& violations) {
  std::string msg = "malformed loop program";
  for (const auto& v : violations) msg += "\n  " + to_string(v);
  return msg;
}

class Checker {
 public:
  explicit Checker(const LoopProgram& lp) : lp_(lp), g_(lp.pgt) {}

  std::vector<ProgramViolation> run() {
    for (const Violation& v : validate(g_)) {
      add(ProgramRule::kTemplate, v.subject, to_string(v));
    }
    if (!out_.empty()) return out_;
    for (const VertexId& v : g_.vertices()) {
      if (!lp_.specs.count(v)) add(ProgramRule::kMissingKind, v, "no kind");
    }
    for (const auto& [v, spec] : lp_.specs) {
      if (!g_.find_vertex(v)) {
        add(ProgramRule::kMissingKind, v, "kind given for an unknown vertex");
      }
    }
    if (!out_.empty()) return out_;
    for (std::size_t v = 0; v < g_.vertex_count(); ++v) check_vertex(v);
    check_acyclic();
    return out_;
  }

 private:
  VertexKind kind(std::size_t v) const {
    return lp_.specs.at(g_.vertices()[v]).kind;
  }
  bool memory(std::size_t v) const { return is_memory(kind(v)); }
  const VertexId& name(std::size_t v) const { return g_.vertices()[v]; }
  std::size_t src(std::size_t e) const { return g_.edge_src(e); }
  std::size_t dst(std::size_t e) const { return g_.edge_dst(e); }

  void add(ProgramRule r, std::string subject, std::string message) {
    out_.push_back({r, std::move(subject), std::move(message)});
  }

  // Follows single-edge pass-through chains; npos if the chain breaks.
  std::size_t chain_end(std::size_t v, bool backwards) const {
    for (std::size_t steps = 0; steps <= g_.vertex_count(); ++steps) {
      if (kind(v) != VertexKind::kPassThrough) return v;
      const auto& next = backwards ? g_.in_edges(v) : g_.out_edges(v);
      if (next.size() != 1) return npos;
      v = backwards ? src(next[0]) : dst(next[0]);
    }
    return npos;
  }

  // The edge with input rank `r` at v, if ranks are well-formed.
  std::optional<std::size_t> input_with_rank(std::size_t v, int r) const {
    const auto& ins = g_.in_edges(v);
    if (ins.size() == 1 && !g_.edges()[ins[0]].rank) {
      return r == 0 ? std::optional(ins[0]) : std::nullopt;
    }
    for (std::size_t e : ins) {
      if (g_.edges()[e].rank == r) return e;
    }
    return std::nullopt;
  }

  bool touches_memory(std::size_t v) const {
    for (std::size_t e : g_.in_edges(v)) {
      if (memory(src(e))) return true;
    }
    for (std::size_t e : g_.out_edges(v)) {
      if (memory(dst(e))) return true;
    }
    return false;
  }

  void check_ranks(std::size_t v) {
    const auto& ins = g_.in_edges(v);
    if (ins.size() == 1 && !g_.edges()[ins[0]].rank) return;
    std::vector<bool> seen(ins.size(), false);
    for (std::size_t e : ins) {
      const auto& r = g_.edges()[e].rank;
      if (!r || *r < 0 || static_cast<std::size_t>(*r) >= ins.size() ||
          seen[static_cast<std::size_t>(*r)]) {
        add(ProgramRule::kInputRanks, name(v),
            "input ranks must be exactly 0.." + std::to_string(ins.size() - 1));
        return;
      }
      seen[static_cast<std::size_t>(*r)] = true;
    }
  }

  void check_vertex(std::size_t v) {
    const VertexSpec& spec = lp_.specs.at(name(v));
    const auto& ins = g_.in_edges(v);
    const auto& outs = g_.out_edges(v);
    const std::size_t t = g_.owner(v);
    const VertexKind k = spec.kind;

    if (is_memory(k)) {
      if (t != 0) {
        add(ProgramRule::kMemoryNotInRoot, name(v),
            "memory vertices belong to the root template");
      }
      bool bad = spec.sizes.empty();
      for (const BigInt& s : spec.sizes) bad = bad || s < 1;
      if (bad) {
        add(ProgramRule::kMemoryShape, name(v),
            "memory needs at least one dimension, each of positive size");
      }
      return;
    }
    if (k != VertexKind::kCopy && outs.size() != 1) {
      add(ProgramRule::kOutDegree, name(v), "out-degree must be 1");
    }
    if (k != VertexKind::kReduce && !ins.empty()) check_ranks(v);

    switch (k) {
      case VertexKind::kParfor:
        if (!ins.empty()) add(ProgramRule::kParfor, name(v), "has an input edge");
        for (std::size_t e : outs) {
          if (g_.info(g_.owner(dst(e))).parent != t) {
            add(ProgramRule::kParfor, name(v),
                "output must lead into a child template");
          }
        }
        break;
      case VertexKind::kReduce:
        if (ins.size() != 1 || g_.info(g_.owner(src(ins[0]))).parent != t) {
          add(ProgramRule::kReduce, name(v),
              "needs a single input from a child template");
        }
        for (std::size_t e : outs) {
          if (memory(dst(e))) {
            add(ProgramRule::kReduce, name(v), "output leads to memory");
          }
        }
        if (spec.op != Op::kAdd && spec.op != Op::kMul) {
          add(ProgramRule::kReduce, name(v), "operator must be + or *");
        }
        break;
      case VertexKind::kCopy:
        if (ins.size() != 1) add(ProgramRule::kCopy, name(v), "needs one input");
        for (std::size_t e : outs) {
          const std::size_t u = dst(e);
          if (g_.info(t).parent == g_.owner(u)) {
            add(ProgramRule::kCopy, name(v),
                "output " + name(u) + " lies in the parent template");
          }
          if (memory(u)) {
            add(ProgramRule::kCopy, name(v), "output " + name(u) + " is memory");
          }
        }
        break;
      case VertexKind::kPassThrough:
        if (ins.size() != 1 || outs.size() != 1) {
          add(ProgramRule::kPassThrough, name(v),
              "in-degree and out-degree must be 1");
        } else if (memory(src(ins[0])) && memory(dst(outs[0]))) {
          add(ProgramRule::kPassThrough, name(v),
              "at most one neighbor may be memory");
        }
        break;
      case VertexKind::kRead: {
        if (ins.size() < 2) {
          add(ProgramRule::kRead, name(v), "needs an array and an index");
          break;
        }
        const auto first = input_with_rank(v, 0);
        if (first) {
          const std::size_t end = chain_end(src(*first), true);
          if (end == npos || !memory(end)) {
            add(ProgramRule::kRead, name(v),
                "first input must come from memory");
          }
        }
        for (std::size_t e : ins) {
          if (first && e == *first) continue;
          if (memory(src(e))) {
            add(ProgramRule::kRead, name(v), "index input from memory");
          }
        }
        for (std::size_t e : outs) {
          if (memory(dst(e))) {
            add(ProgramRule::kRead, name(v), "output leads to memory");
          }
        }
        break;
      }
      case VertexKind::kWrite:
        if (ins.size() < 2) {
          add(ProgramRule::kWrite, name(v), "needs a value and an index");
        }
        for (std::size_t e : ins) {
          if (memory(src(e))) {
            add(ProgramRule::kWrite, name(v), "input from memory");
          }
        }
        for (std::size_t e : outs) {
          const std::size_t end = chain_end(dst(e), false);
          if (end == npos || !memory(end)) {
            add(ProgramRule::kWrite, name(v), "output must lead to memory");
          }
        }
        break;
      case VertexKind::kBinOp:
        if (ins.size() != 2) {
          add(ProgramRule::kOperator, name(v), "needs exactly two inputs");
        }
        if (touches_memory(v)) {
          add(ProgramRule::kOperator, name(v), "connected to memory");
        }
        break;
      case VertexKind::kConst:
        if (!ins.empty()) add(ProgramRule::kConstant, name(v), "has an input");
        if (touches_memory(v)) {
          add(ProgramRule::kConstant, name(v), "connected to memory");
        }
        break;
      default:
        break;
    }
  }

  void check_acyclic() {
    std::vector<std::size_t> indegree(g_.vertex_count(), 0);
    for (std::size_t e = 0; e < g_.edge_count(); ++e) ++indegree[dst(e)];
    std::deque<std::size_t> ready;
    for (std::size_t v = 0; v < indegree.size(); ++v) {
      if (indegree[v] == 0) ready.push_back(v);
    }
    std::size_t done = 0;
    while (!ready.empty()) {
      const std::size_t v = ready.front();
      ready.pop_front();
      ++done;
      for (std::size_t e : g_.out_edges(v)) {
        if (--indegree[dst(e)] == 0) ready.push_back(dst(e));
      }
    }
    if (done != g_.vertex_count()) {
      add(ProgramRule::kCyclic, "", "template graph has a directed cycle");
    }
  }

  const LoopProgram& lp_;
  const ParametricGraphTemplate& g_;
  std::vector<ProgramViolation> out_;
};

}  // namespace

std::vector<ProgramViolation> validate_program(const LoopProgram& lp) {
  return Checker(lp).run();
}

InvalidProgram::InvalidProgram(std::vector<ProgramViolation> violations)
    : PgtError(describe(violations)), violations_(std::move(violations)) {}

void require_well_formed(const LoopProgram& lp) {
  auto v = validate_program(lp);
  if (!v.empty()) throw InvalidProgram(std::move(v));
}

namespace {

class Builder {
 public:
  void add(VertexId id, VertexKind kind, std::size_t owner_slot) {
    VertexSpec s;
    s.kind = kind;
    specs[id] = s;
    vertices.push_back(id);
    owned.resize(std::max(owned.size(), owner_slot + 1));
    owned[owner_slot].push_back(std::move(id));
  }
  void memory(VertexId id, VertexKind kind, std::vector<BigInt> sizes) {
    add(id, kind, 0);
    specs[id].sizes = std::move(sizes);
  }
  void op(VertexId id, VertexKind kind, Op o, std::size_t slot) {
    add(id, kind, slot);
    specs[id].op = o;
  }
  void edge(VertexId a, VertexId b, std::optional<int> rank = std::nullopt) {
    edges.push_back({std::move(a), std::move(b), 1, std::nullopt, rank});
  }

  std::vector<VertexId> vertices;
  std::vector<Edge> edges;
  std::map<VertexId, VertexSpec> specs;
  std::vector<std::vector<VertexId>> owned;  // by template slot
};

void require_positive(const BigInt& x, const char* what) {
  if (x < 1) throw std::invalid_argument(std::string(what) + " must be positive");
}

}  // namespace

LoopProgram build_matmul(const BigInt& n, const BigInt& k, const BigInt& m) {
  require_positive(n, "n");
  require_positive(k, "k");
  require_positive(m, "m");
  using K = VertexKind;
  enum Slot : std::size_t { kRoot, kI, kJ, kL };
  Builder b;
  b.memory("A1", K::kInputMem, {n, k});
  b.memory("A2", K::kInputMem, {k, m});
  b.memory("B", K::kOutputMem, {n, m});
  b.add("for_i", K::kParfor, kRoot);

  b.add("A1_i", K::kPassThrough, kI);
  b.add("A2_i", K::kPassThrough, kI);
  b.add("i", K::kCopy, kI);
  b.add("for_j", K::kParfor, kI);
  b.add("B_i", K::kPassThrough, kI);

  b.add("A1_ij", K::kPassThrough, kJ);
  b.add("A2_ij", K::kPassThrough, kJ);
  b.add("i_j", K::kCopy, kJ);
  b.add("j", K::kCopy, kJ);
  b.add("for_l", K::kParfor, kJ);
  b.op("sum", K::kReduce, Op::kAdd, kJ);
  b.add("write_B", K::kWrite, kJ);

  b.add("l", K::kCopy, kL);
  b.add("read_A1", K::kRead, kL);
  b.add("read_A2", K::kRead, kL);
  b.op("mul", K::kBinOp, Op::kMul, kL);

  b.edge("A1", "A1_i");
  b.edge("A1_i", "A1_ij");
  b.edge("A1_ij", "read_A1", 0);
  b.edge("A2", "A2_i");
  b.edge("A2_i", "A2_ij");
  b.edge("A2_ij", "read_A2", 0);
  b.edge("for_i", "i");
  b.edge("i", "i_j");
  b.edge("i_j", "read_A1", 1);
  b.edge("i_j", "write_B", 1);
  b.edge("for_j", "j");
  b.edge("j", "read_A2", 2);
  b.edge("j", "write_B", 2);
  b.edge("for_l", "l");
  b.edge("l", "read_A1", 2);
  b.edge("l", "read_A2", 1);
  b.edge("read_A1", "mul", 0);
  b.edge("read_A2", "mul", 1);
  b.edge("mul", "sum");
  b.edge("sum", "write_B", 0);
  b.edge("write_B", "B_i");
  b.edge("B_i", "B");

  TemplateNode tl{"Tl", k, b.owned[kL], {}};
  TemplateNode tj{"Tj", m, b.owned[kJ], {std::move(tl)}};
  TemplateNode ti{"Ti", n, b.owned[kI], {std::move(tj)}};
  TemplateNode root{"T0", 1, b.owned[kRoot], {std::move(ti)}};
  return {ParametricGraphTemplate(b.vertices, b.edges, std::move(root)),
          std::move(b.specs)};
}

LoopProgram build_cross_correlation(const BigInt& n, const BigInt& k) {
  require_positive(n, "n");
  require_positive(k, "k");
  if (k > n) throw std::invalid_argument("k must not exceed n");
  const BigInt outputs = n - k + 1;
  using K = VertexKind;
  enum Slot : std::size_t { kRoot, kI, kL };
  Builder b;
  b.memory("A1", K::kInputMem, {n});
  b.memory("A2", K::kInputMem, {k});
  b.memory("B", K::kOutputMem, {outputs});
  b.add("for_i", K::kParfor, kRoot);

  b.add("A1_i", K::kPassThrough, kI);
  b.add("A2_i", K::kPassThrough, kI);
  b.add("i", K::kCopy, kI);
  b.add("for_l", K::kParfor, kI);
  b.op("sum", K::kReduce, Op::kAdd, kI);
  b.add("write_B", K::kWrite, kI);

  b.add("l", K::kCopy, kL);
  b.op("i_plus_l", K::kBinOp, Op::kAdd, kL);
  b.add("read_A1", K::kRead, kL);
  b.add("read_A2", K::kRead, kL);
  b.op("mul", K::kBinOp, Op::kMul, kL);

  b.edge("A1", "A1_i");
  b.edge("A1_i", "read_A1", 0);
  b.edge("A2", "A2_i");
  b.edge("A2_i", "read_A2", 0);
  b.edge("for_i", "i");
  b.edge("i", "i_plus_l", 0);
  b.edge("i", "write_B", 1);
  b.edge("for_l", "l");
  b.edge("l", "i_plus_l", 1);
  b.edge("l", "read_A2", 1);
  b.edge("i_plus_l", "read_A1", 1);
  b.edge("read_A1", "mul", 0);
  b.edge("read_A2", "mul", 1);
  b.edge("mul", "sum");
  b.edge("sum", "write_B", 0);
  b.edge("write_B", "B");

  TemplateNode tl{"Tl", k, b.owned[kL], {}};
  TemplateNode ti{"Ti", outputs, b.owned[kI], {std::move(tl)}};
  TemplateNode root{"T0", 1, b.owned[kRoot], {std::move(ti)}};
  return {ParametricGraphTemplate(b.vertices, b.edges, std::move(root)),
          std::move(b.specs)};
}

ParametricGraphTemplate assign_dataflow_weights(const LoopProgram& lp) {
  std::vector<Edge> edges = lp.pgt.edges();
  for (Edge& e : edges) {
    e.weight = lp.kind(e.src) == VertexKind::kParfor ? 0 : 1;
  }
  return ParametricGraphTemplate(lp.pgt.vertices(), std::move(edges),
                                 lp.pgt.root(), lp.pgt.dummies());
}

}  // namespace pgt::loop
