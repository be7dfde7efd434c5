#include "pgt/loop/interpret.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <queue>

namespace pgt::loop {

Array Array::zeros(std::vector<std::size_t> sizes) {
  Array a;
  a.sizes = std::move(sizes);
  a.values.assign(a.element_count(), Value(0));
  return a;
}

std::size_t Array::element_count() const {
  std::size_t n = 1;
  for (std::size_t s : sizes) n *= s;
  return n;
}

std::optional<std::size_t> Array::offset(const std::vector<BigInt>& idx) const {
  if (idx.size() != sizes.size()) return std::nullopt;
  std::size_t off = 0;
  for (std::size_t d = 0; d < idx.size(); ++d) {
    if (idx[d] < 0 || idx[d] >= sizes[d]) return std::nullopt;
    off = off * sizes[d] + idx[d].convert_to<std::size_t>();
  }
  return off;
}

bool reachable(const ConcreteGraph& g, std::size_t from, std::size_t to) {
  std::vector<std::vector<std::size_t>> succ(g.vertices.size());
  for (const auto& e : g.edges) succ[e.src].push_back(e.dst);
  std::vector<bool> seen(g.vertices.size(), false);
  std::deque<std::size_t> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    if (u == to) return true;
    for (std::size_t v : succ[u]) {
      if (!seen[v]) {
        seen[v] = true;
        queue.push_back(v);
      }
    }
  }
  return false;
}

namespace {

std::vector<std::size_t> declared_sizes(const VertexId& v,
                                        const VertexSpec& spec) {
  std::vector<std::size_t> out;
  BigInt total = 1;
  for (const BigInt& s : spec.sizes) {
    total *= s;
    if (total > BigInt(std::numeric_limits<std::uint32_t>::max())) {
      throw PgtError("array " + v + " is too large to execute");
    }
    out.push_back(s.convert_to<std::size_t>());
  }
  return out;
}

std::string format_index(const std::vector<BigInt>& idx) {
  std::string s;
  for (const BigInt& i : idx) s += "[" + i.str() + "]";
  return s;
}

struct Input {
  std::size_t src;
  int rank;
};

class Execution {
 public:
  Execution(const LoopProgram& lp, const ArrayMap& inputs, const BigInt& limit)
      : lp_(lp), g_(instantiate(lp.pgt, limit)) {
    const std::size_t n = g_.vertices.size();
    kinds_.reserve(n);
    for (const auto& v : g_.vertices) kinds_.push_back(lp.kind(v.label.origin));
    load_arrays(inputs);
    splice();
  }

  ExecutionReport run(Schedule schedule) {
    ExecutionReport report;
    for (const auto& e : g_.edges) {
      if (kinds_[e.src] != VertexKind::kParfor) report.movement_weight_total += 1;
    }
    vals_.assign(g_.vertices.size(), Value(0));
    for (std::size_t v : order(schedule)) {
      report.undefined = step(v);
      if (report.undefined) break;
    }
    report.races = races();
    if (!report.undefined) {
      for (const auto& [id, spec] : lp_.specs) {
        if (spec.kind == VertexKind::kOutputMem) report.outputs[id] = arrays_.at(id);
      }
    }
    return report;
  }

 private:
  struct WriteEvent {
    std::size_t write;
    std::size_t target;
    std::vector<BigInt> index;
  };

  void load_arrays(const ArrayMap& inputs) {
    for (const auto& [id, spec] : lp_.specs) {
      if (!is_memory(spec.kind)) continue;
      const auto sizes = declared_sizes(id, spec);
      if (spec.kind != VertexKind::kInputMem) {
        arrays_[id] = Array::zeros(sizes);
        continue;
      }
      auto it = inputs.find(id);
      if (it == inputs.end()) throw InputShapeMismatch("missing input " + id);
      if (it->second.sizes != sizes ||
          it->second.values.size() != it->second.element_count()) {
        throw InputShapeMismatch("input " + id + " has the wrong shape");
      }
      arrays_[id] = it->second;
    }
    for (const auto& [id, array] : inputs) {
      auto s = lp_.specs.find(id);
      if (s == lp_.specs.end() || s->second.kind != VertexKind::kInputMem) {
        throw InputShapeMismatch(id + " is not an input array");
      }
    }
  }

  int rank_of(const ConcreteEdge& e) const {
    if (!e.origin) return 0;
    return lp_.pgt.edges()[*e.origin].rank.value_or(0);
  }

  bool pass(std::size_t v) const { return kinds_[v] == VertexKind::kPassThrough; }

  // Connects every non-pass-through producer to every consumer across a
  // pass-through chain.
  void splice() {
    const std::size_t n = g_.vertices.size();
    std::vector<std::vector<std::size_t>> preds(n);
    for (const auto& e : g_.edges) preds[e.dst].push_back(e.src);
    std::vector<std::optional<std::vector<std::size_t>>> memo(n);
    std::function<const std::vector<std::size_t>&(std::size_t)> sources =
        [&](std::size_t p) -> const std::vector<std::size_t>& {
      if (!memo[p]) {
        std::vector<std::size_t> out;
        for (std::size_t a : preds[p]) {
          if (pass(a)) {
            const auto& more = sources(a);
            out.insert(out.end(), more.begin(), more.end());
          } else {
            out.push_back(a);
          }
        }
        memo[p] = std::move(out);
      }
      return *memo[p];
    };

    inputs_.assign(n, {});
    succ_.assign(n, {});
    for (const auto& e : g_.edges) {
      if (pass(e.dst)) continue;
      const int r = rank_of(e);
      if (pass(e.src)) {
        for (std::size_t s : sources(e.src)) {
          inputs_[e.dst].push_back({s, r});
          succ_[s].push_back(e.dst);
        }
      } else {
        inputs_[e.dst].push_back({e.src, r});
        succ_[e.src].push_back(e.dst);
      }
    }
    for (auto& ins : inputs_) {
      std::stable_sort(ins.begin(), ins.end(), [](const Input& a, const Input& b) {
        return a.rank != b.rank ? a.rank < b.rank : a.src < b.src;
      });
    }
  }

  std::vector<std::size_t> order(Schedule schedule) const {
    const std::size_t n = g_.vertices.size();
    std::vector<std::size_t> indegree(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
      if (!pass(v)) indegree[v] = inputs_[v].size();
    }
    std::function<bool(std::size_t, std::size_t)> later =
        schedule == Schedule::kLowestFirst
            ? std::function<bool(std::size_t, std::size_t)>(std::greater<>())
            : std::function<bool(std::size_t, std::size_t)>(std::less<>());
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(later)>
        ready(later);
    for (std::size_t v = 0; v < n; ++v) {
      if (!pass(v) && indegree[v] == 0) ready.push(v);
    }
    std::vector<std::size_t> out;
    while (!ready.empty()) {
      const std::size_t v = ready.top();
      ready.pop();
      out.push_back(v);
      for (std::size_t w : succ_[v]) {
        if (--indegree[w] == 0) ready.push(w);
      }
    }
    return out;
  }

  // The value flowing along input `in` into v.
  Value value(const Input& in, std::size_t v) const {
    if (kinds_[in.src] == VertexKind::kParfor) {
      return Value(g_.vertices[v].label.address.back());
    }
    return vals_[in.src];
  }

  std::optional<std::string> index_of(std::size_t v, std::vector<BigInt>& idx) {
    for (std::size_t i = 1; i < inputs_[v].size(); ++i) {
      const Value x = value(inputs_[v][i], v);
      if (boost::multiprecision::denominator(x) != 1) {
        return "NonIntegralIndex: " + g_.vertices[v].id + " got index " +
               format_value(x);
      }
      idx.push_back(boost::multiprecision::numerator(x));
    }
    return std::nullopt;
  }

  std::optional<std::string> step(std::size_t v) {
    const VertexSpec& spec = lp_.spec(g_.vertices[v].label.origin);
    const auto& ins = inputs_[v];
    switch (spec.kind) {
      case VertexKind::kCopy:
        vals_[v] = value(ins.at(0), v);
        break;
      case VertexKind::kConst:
        vals_[v] = spec.constant;
        break;
      case VertexKind::kReduce: {
        Value acc = spec.op == Op::kMul ? 1 : 0;
        for (const Input& in : ins) {
          if (spec.op == Op::kMul) {
            acc *= value(in, v);
          } else {
            acc += value(in, v);
          }
        }
        vals_[v] = acc;
        break;
      }
      case VertexKind::kBinOp: {
        const Value x = value(ins.at(0), v);
        const Value y = value(ins.at(1), v);
        switch (spec.op) {
          case Op::kAdd: vals_[v] = x + y; break;
          case Op::kSub: vals_[v] = x - y; break;
          case Op::kMul: vals_[v] = x * y; break;
          case Op::kDiv:
            if (y == 0) return "DivisionByZero: " + g_.vertices[v].id;
            vals_[v] = x / y;
            break;
        }
        break;
      }
      case VertexKind::kRead: {
        const std::size_t mem = ins.at(0).src;
        const VertexId& name = g_.vertices[mem].label.origin;
        std::vector<BigInt> idx;
        if (auto bad = index_of(v, idx)) return bad;
        const Array& a = arrays_.at(name);
        const auto off = a.offset(idx);
        if (!off) {
          return "OutOfBounds: " + g_.vertices[v].id + " reads " + name +
                 format_index(idx);
        }
        vals_[v] = a.values[*off];
        break;
      }
      case VertexKind::kWrite: {
        const Value x = value(ins.at(0), v);
        std::vector<BigInt> idx;
        if (auto bad = index_of(v, idx)) return bad;
        std::size_t target = npos;
        for (std::size_t w : succ_[v]) {
          if (is_memory(kinds_[w])) target = w;
        }
        const VertexId& name = g_.vertices.at(target).label.origin;
        Array& a = arrays_.at(name);
        const auto off = a.offset(idx);
        if (!off) {
          return "OutOfBounds: " + g_.vertices[v].id + " writes " + name +
                 format_index(idx);
        }
        a.values[*off] = x;
        vals_[v] = x;
        writes_.push_back({v, target, std::move(idx)});
        break;
      }
      default:
        break;  // memory and Parfor carry no vertex value
    }
    return std::nullopt;
  }

  std::vector<Race> races() const {
    std::map<std::pair<std::size_t, std::vector<BigInt>>, std::vector<std::size_t>>
        groups;
    for (const WriteEvent& w : writes_) {
      groups[{w.target, w.index}].push_back(w.write);
    }
    std::vector<Race> out;
    for (const auto& [key, ws] : groups) {
      for (std::size_t a = 0; a < ws.size(); ++a) {
        for (std::size_t b = a + 1; b < ws.size(); ++b) {
          if (reachable(g_, ws[a], ws[b]) || reachable(g_, ws[b], ws[a])) {
            continue;
          }
          out.push_back({g_.vertices[ws[a]].id, g_.vertices[ws[b]].id,
                         g_.vertices[key.first].label.origin, key.second});
        }
      }
    }
    return out;
  }

  const LoopProgram& lp_;
  ConcreteGraph g_;
  std::vector<VertexKind> kinds_;
  ArrayMap arrays_;
  std::vector<std::vector<Input>> inputs_;
  std::vector<std::vector<std::size_t>> succ_;
  std::vector<Value> vals_;
  std::vector<WriteEvent> writes_;
};

}  // namespace

ExecutionReport interpret(const LoopProgram& lp, const ArrayMap& inputs,
                          const BigInt& limit, Schedule schedule) {
  require_well_formed(lp);
  return Execution(lp, inputs, limit).run(schedule);
}

std::vector<Race> detect_races(const LoopProgram& lp, const ArrayMap& inputs,
                               const BigInt& limit) {
  return interpret(lp, inputs, limit).races;
}

}  // namespace pgt::loop
