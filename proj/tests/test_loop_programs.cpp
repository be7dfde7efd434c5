#include <doctest.h>

#include "loop_fixtures.hpp"
#include "oracles.hpp"
#include "pgt/analysis.hpp"
#include "pgt/loop/bound.hpp"

using namespace pgt;
using namespace pgt::loop;
using namespace pgt::testing;

namespace {

Array matrix(std::size_t rows, std::size_t cols, std::vector<int> values) {
  Array a = Array::zeros({rows, cols});
  for (std::size_t i = 0; i < values.size(); ++i) a.values[i] = values[i];
  return a;
}

Array reference_matmul(const Array& a, const Array& b) {
  const std::size_t n = a.sizes[0], k = a.sizes[1], m = b.sizes[1];
  Array out = Array::zeros({n, m});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t l = 0; l < k; ++l) {
        out.values[i * m + j] += a.values[i * k + l] * b.values[l * m + j];
      }
    }
  }
  return out;
}

Array reference_correlation(const Array& a, const Array& w) {
  const std::size_t n = a.sizes[0], k = w.sizes[0];
  Array out = Array::zeros({n - k + 1});
  for (std::size_t i = 0; i + k <= n; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      out.values[i] += a.values[i + l] * w.values[l];
    }
  }
  return out;
}

bool has_rule(const LoopProgram& lp, ProgramRule rule) {
  for (const auto& v : validate_program(lp)) {
    if (v.rule == rule) return true;
  }
  return false;
}

LoopProgram with_kind(LoopProgram lp, const VertexId& v, VertexKind k) {
  lp.specs[v].kind = k;
  return lp;
}

LoopProgram with_edges(const LoopProgram& lp, std::vector<Edge> edges) {
  return {ParametricGraphTemplate(lp.pgt.vertices(), std::move(edges),
                                  lp.pgt.root()),
          lp.specs};
}

std::size_t edge_index(const LoopProgram& lp, const VertexId& a,
                       const VertexId& b) {
  for (std::size_t e = 0; e < lp.pgt.edges().size(); ++e) {
    if (lp.pgt.edges()[e].src == a && lp.pgt.edges()[e].dst == b) return e;
  }
  FAIL("no edge " << a << "->" << b);
  return 0;
}

}  // namespace

TEST_CASE("values are exact rationals") {
  CHECK(parse_value("7/2") == Value(7) / 2);
  CHECK(format_value(parse_value("-6/4")) == "-3/2");
  CHECK(format_value(Value(12)) == "12");
  CHECK_THROWS_AS(parse_value("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_value("1/0"), std::invalid_argument);
  for (auto k : {VertexKind::kInputMem, VertexKind::kParfor, VertexKind::kBinOp,
                 VertexKind::kPassThrough, VertexKind::kConst}) {
    CHECK(parse_kind(kind_name(k)) == k);
  }
  CHECK(parse_op("/") == Op::kDiv);
  CHECK_FALSE(parse_kind("loop"));
}

TEST_CASE("builders produce well-formed programs") {
  for (int n = 1; n <= 3; ++n) {
    for (int k = 1; k <= 3; ++k) {
      CHECK(validate_program(build_matmul(n, k, 2)).empty());
      if (k <= n) CHECK(validate_program(build_cross_correlation(n, k)).empty());
    }
  }
  for (const auto& lp : {double_write(), identity_write(), chained_write(),
                         read_past_end()}) {
    CHECK(validate_program(lp).empty());
  }
  CHECK_THROWS_AS(build_matmul(0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_cross_correlation(2, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_cross_correlation(2, 0), std::invalid_argument);

  const auto mm = build_matmul(2, 3, 4);
  CHECK(tree_height(mm.pgt) == 3);
  CHECK(mm.pgt.info(mm.pgt.template_index("Ti")).parameter == 2);
  CHECK(mm.pgt.info(mm.pgt.template_index("Tj")).parameter == 4);
  CHECK(mm.pgt.info(mm.pgt.template_index("Tl")).parameter == 3);

  const auto xc = build_cross_correlation(3, 2);
  const auto size = instantiation_size(xc.pgt);
  const auto g = instantiate(xc.pgt);
  CHECK(size.vertices == g.vertices.size());
  CHECK(size.edges == g.edges.size());
  CHECK(labeled(g) == expand(xc.pgt));
}

TEST_CASE("matmul 1x1x1 is a single multiply-accumulate") {
  const auto lp = build_matmul(1, 1, 1);
  const auto g = instantiate(lp.pgt);
  std::size_t muls = 0;
  for (const auto& v : g.vertices) muls += v.label.origin == "mul";
  CHECK(muls == 1);
  const auto r = interpret(lp, {{"A1", matrix(1, 1, {3})}, {"A2", matrix(1, 1, {-4})}});
  CHECK(r.outputs.at("B") == matrix(1, 1, {-12}));
}

TEST_CASE("matmul 2x2x2 example") {
  const auto r = interpret(build_matmul(2, 2, 2), {{"A1", matrix(2, 2, {1, 2, 3, 4})},
                                                   {"A2", matrix(2, 2, {5, 6, 7, 8})}});
  CHECK_FALSE(r.undefined);
  CHECK(r.races.empty());
  CHECK(r.outputs.at("B") == matrix(2, 2, {19, 22, 43, 50}));
}

TEST_CASE("matmul agrees with a dense product") {
  std::mt19937_64 rng(3);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t k = 1; k <= 3; ++k) {
      for (std::size_t m = 1; m <= 3; ++m) {
        CAPTURE(n);
        CAPTURE(k);
        CAPTURE(m);
        const Array a = random_array(rng, {n, k});
        const Array b = random_array(rng, {k, m});
        const auto lp = build_matmul(n, k, m);
        const auto r = interpret(lp, {{"A1", a}, {"A2", b}});
        CHECK_FALSE(r.undefined);
        CHECK(r.races.empty());
        CHECK(r.outputs.at("B") == reference_matmul(a, b));
        const auto later =
            interpret(lp, {{"A1", a}, {"A2", b}}, kDefaultInstantiationLimit,
                      Schedule::kHighestFirst);
        CHECK(later.outputs == r.outputs);
      }
    }
  }
}

TEST_CASE("cross-correlation example and formula") {
  Array a = Array::zeros({3}), w = Array::zeros({2});
  a.values = {1, 2, 3};
  w.values = {10, 20};
  const auto r = interpret(build_cross_correlation(3, 2), {{"A1", a}, {"A2", w}});
  Array want = Array::zeros({2});
  want.values = {50, 80};
  CHECK(r.outputs.at("B") == want);

  std::mt19937_64 rng(5);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::size_t k = 1; k <= n; ++k) {
      const Array x = random_array(rng, {n});
      const Array y = random_array(rng, {k});
      const auto lp = build_cross_correlation(n, k);
      const auto got = interpret(lp, {{"A1", x}, {"A2", y}});
      CHECK(got.outputs.at("B") == reference_correlation(x, y));
      CHECK(interpret(lp, {{"A1", x}, {"A2", y}}, kDefaultInstantiationLimit,
                      Schedule::kHighestFirst)
                .outputs == got.outputs);
    }
  }
}

TEST_CASE("rational arithmetic and undefined executions") {
  ProgramBuilder div;
  div.memory("B", VertexKind::kOutputMem, {1})
      .constant("one", 1)
      .constant("three", 3)
      .constant("zero", 0)
      .binop("q", Op::kDiv)
      .add("write_B", VertexKind::kWrite)
      .edge("one", "q", 0)
      .edge("three", "q", 1)
      .edge("q", "write_B", 0)
      .edge("zero", "write_B", 1)
      .edge("write_B", "B");
  const auto third = interpret(div.build(), {});
  REQUIRE_FALSE(third.undefined);
  CHECK(third.outputs.at("B").values[0] == Value(1) / 3);

  div.specs["three"].constant = 0;
  const auto by_zero = interpret(div.build(), {});
  REQUIRE(by_zero.undefined);
  CHECK(by_zero.undefined->rfind("DivisionByZero", 0) == 0);
  CHECK(by_zero.outputs.empty());

  div.specs["three"].constant = 3;
  div.specs["zero"].constant = Value(1) / 2;
  const auto half = interpret(div.build(), {});
  REQUIRE(half.undefined);
  CHECK(half.undefined->rfind("NonIntegralIndex", 0) == 0);

  Array a = Array::zeros({2});
  const auto past = interpret(read_past_end(), {{"A", a}});
  REQUIRE(past.undefined);
  CHECK(past.undefined->rfind("OutOfBounds", 0) == 0);
  CHECK(past.outputs.empty());
}

TEST_CASE("input shapes are checked") {
  const auto lp = build_matmul(2, 2, 2);
  const Array ok = Array::zeros({2, 2});
  CHECK_THROWS_AS(interpret(lp, {{"A1", ok}}), InputShapeMismatch);
  CHECK_THROWS_AS(interpret(lp, {{"A1", ok}, {"A2", Array::zeros({2, 3})}}),
                  InputShapeMismatch);
  CHECK_THROWS_AS(interpret(lp, {{"A1", ok}, {"A2", ok}, {"B", ok}}),
                  InputShapeMismatch);
  CHECK_THROWS_AS(interpret(lp, {{"A1", ok}, {"A2", ok}, {"Q", ok}}),
                  InputShapeMismatch);
  CHECK_THROWS_AS(interpret(build_matmul(100, 100, 100), {}, 1000),
                  SizeLimitExceeded);
}

TEST_CASE("races") {
  const auto twice = interpret(double_write(), {});
  REQUIRE(twice.races.size() == 1);
  CHECK(twice.races[0].array == "B");
  CHECK(twice.races[0].index == std::vector<BigInt>{0});
  CHECK(twice.races[0].first != twice.races[0].second);
  CHECK(detect_races(double_write(), {}) == twice.races);

  const auto ident = interpret(identity_write(3), {});
  CHECK(ident.races.empty());
  Array want = Array::zeros({3});
  want.values = {0, 1, 2};
  CHECK(ident.outputs.at("B") == want);

  const auto chained = interpret(chained_write(), {});
  CHECK(chained.races.empty());
  CHECK(chained.outputs.at("B").values[0] == 5);

  const Array zero = Array::zeros({2, 2});
  CHECK(detect_races(build_matmul(2, 2, 2), {{"A1", zero}, {"A2", zero}}).empty());
}

TEST_CASE("matmul writes every element exactly once") {
  // Enumerates the write instances directly: (i, j) from the address.
  const auto g = instantiate(build_matmul(2, 2, 2).pgt);
  std::map<std::pair<BigInt, BigInt>, int> hits;
  for (const auto& v : g.vertices) {
    if (v.label.origin == "write_B") ++hits[{v.label.address[0], v.label.address[1]}];
  }
  CHECK(hits.size() == 4);
  for (const auto& [ij, n] : hits) CHECK(n == 1);
}

TEST_CASE("reachability") {
  ConcreteGraph g;
  for (const char* id : {"a", "b", "c", "d"}) g.vertices.push_back({id, {id, {}}});
  g.edges.push_back({0, 1, 1, std::nullopt});
  g.edges.push_back({1, 2, 1, std::nullopt});
  CHECK(reachable(g, 0, 2));
  CHECK_FALSE(reachable(g, 2, 0));
  CHECK_FALSE(reachable(g, 0, 3));
  CHECK(reachable(g, 3, 3));
}

TEST_CASE("validation rules") {
  const auto mm = build_matmul(2, 2, 2);

  CHECK(has_rule(with_kind(mm, "for_j", VertexKind::kInputMem),
                 ProgramRule::kMemoryNotInRoot));
  auto shape = mm;
  shape.specs["B"].sizes = {2, 0};
  CHECK(has_rule(shape, ProgramRule::kMemoryShape));

  auto missing = mm;
  missing.specs.erase("mul");
  CHECK(has_rule(missing, ProgramRule::kMissingKind));

  // Parfor with an input edge.
  auto edges = mm.pgt.edges();
  edges.push_back({"A1", "for_i", 1, std::nullopt, std::nullopt});
  CHECK(has_rule(with_edges(mm, edges), ProgramRule::kParfor));

  // Write with only a value input.
  edges = mm.pgt.edges();
  edges.erase(edges.begin() + edge_index(mm, "j", "write_B"));
  edges.erase(edges.begin() + edge_index(mm, "i_j", "write_B"));
  CHECK(has_rule(with_edges(mm, edges), ProgramRule::kWrite));

  // Duplicate rank.
  edges = mm.pgt.edges();
  edges[edge_index(mm, "l", "read_A1")].rank = 1;
  CHECK(has_rule(with_edges(mm, edges), ProgramRule::kInputRanks));

  // Extra output of a multiply.
  edges = mm.pgt.edges();
  edges.push_back({"mul", "sum", 1, std::nullopt, std::nullopt});
  CHECK(has_rule(with_edges(mm, edges), ProgramRule::kOutDegree));

  CHECK(has_rule(with_kind(mm, "mul", VertexKind::kReduce), ProgramRule::kReduce));
  auto prod = mm;
  prod.specs["sum"].op = Op::kSub;
  CHECK(has_rule(prod, ProgramRule::kReduce));

  // Copy whose output sits in the parent template.
  edges = mm.pgt.edges();
  edges.push_back({"i_j", "for_j", 1, std::nullopt, std::nullopt});
  auto up = with_edges(mm, edges);
  CHECK(has_rule(up, ProgramRule::kCopy));

  // Pass-through between two memory vertices.
  ProgramBuilder pt;
  pt.memory("A", VertexKind::kInputMem, {1})
      .memory("B", VertexKind::kOutputMem, {1})
      .add("p", VertexKind::kPassThrough)
      .edge("A", "p")
      .edge("p", "B");
  CHECK(has_rule(pt.build(), ProgramRule::kPassThrough));

  // Read whose array input is not memory.
  CHECK(has_rule(with_kind(mm, "A1", VertexKind::kConst), ProgramRule::kRead));

  // Multiply fed straight from memory.
  ProgramBuilder bin;
  bin.memory("A", VertexKind::kInputMem, {1})
      .constant("c", 1)
      .binop("x", Op::kAdd)
      .edge("A", "x", 0)
      .edge("c", "x", 1);
  CHECK(has_rule(bin.build(), ProgramRule::kOperator));

  ProgramBuilder cst;
  cst.constant("a", 1).constant("b", 2).edge("a", "b");
  CHECK(has_rule(cst.build(), ProgramRule::kConstant));

  ProgramBuilder cyc;
  cyc.add("x", VertexKind::kCopy).add("y", VertexKind::kCopy).edge("x", "y").edge("y", "x");
  CHECK(has_rule(cyc.build(), ProgramRule::kCyclic));

  // Jumping edge from root into the innermost template.
  edges = mm.pgt.edges();
  edges.push_back({"A1", "mul", 1, std::nullopt, std::nullopt});
  CHECK(has_rule(with_edges(mm, edges), ProgramRule::kTemplate));

  CHECK_THROWS_AS(interpret(up, {}), InvalidProgram);
}

TEST_CASE("dataflow weights") {
  const auto mm = build_matmul(2, 2, 2);
  const auto w = assign_dataflow_weights(mm);
  std::size_t zeros = 0, ones = 0;
  for (const Edge& e : w.edges()) {
    zeros += e.weight == Weight(0);
    ones += e.weight == Weight(1);
  }
  CHECK(zeros == 3);
  CHECK(ones == mm.pgt.edges().size() - 3);
  const LoopProgram again{w, mm.specs};
  CHECK(assign_dataflow_weights(again) == w);

  const auto plain = assign_dataflow_weights(chained_write());
  for (const Edge& e : plain.edges()) {
    CHECK(e.weight == Weight(1));
  }
}

TEST_CASE("data-movement bound matches the expanded oracle") {
  const auto mm = build_matmul(2, 2, 2);
  const auto weighted = assign_dataflow_weights(mm);
  const auto bound = data_movement_bound(mm, "A1", "B");
  CHECK(bound.value == expanded_flow(weighted, "A1", std::nullopt, "B", std::nullopt));
  CHECK(bound.value == brute_force_all_st_flow(weighted, "A1", "B").value);
  CHECK(bound.value == Weight(2));  // the two A1 -> A1_i instances

  const std::vector<LoopProgram> programs{
      build_matmul(2, 3, 2), build_matmul(3, 1, 2), build_cross_correlation(4, 2),
      build_cross_correlation(5, 3), double_write(), identity_write(3),
      chained_write()};
  for (const LoopProgram& lp : programs) {
    const auto wp = assign_dataflow_weights(lp);
    REQUIRE(instantiation_size(wp).edges <= 10000);
    for (const VertexId& s : lp.pgt.vertices()) {
      for (const VertexId& t : lp.pgt.vertices()) {
        if (s == t || lp.pgt.owner(lp.pgt.vertex_index(s)) != 0 ||
            lp.pgt.owner(lp.pgt.vertex_index(t)) != 0) {
          continue;
        }
        CAPTURE(s);
        CAPTURE(t);
        CHECK(data_movement_bound(lp, s, t).value ==
              expanded_flow(wp, s, std::nullopt, t, std::nullopt));
      }
    }
  }
}

TEST_CASE("single-instance bound") {
  const auto xc = build_cross_correlation(4, 2);
  const auto wp = assign_dataflow_weights(xc);
  for (int i = 0; i < 3; ++i) {
    for (int l = 0; l < 2; ++l) {
      const InstanceAddress at{i, l};
      CHECK(data_movement_bound(xc, "read_A1", at, "B", {}).value ==
            expanded_flow(wp, "read_A1", at, "B", InstanceAddress{}));
    }
  }
}

TEST_CASE("bound is monotone when an edge is zeroed") {
  const auto mm = build_matmul(2, 2, 2);
  const auto base = data_movement_bound(mm, "A1", "B").value;
  const auto weighted = assign_dataflow_weights(mm);
  for (std::size_t e = 0; e < weighted.edges().size(); ++e) {
    auto edges = weighted.edges();
    edges[e].weight = 0;
    const ParametricGraphTemplate cut(weighted.vertices(), edges, weighted.root());
    CHECK(max_all_st_flow(cut, "A1", "B").value <= base);
  }

  ProgramBuilder pair;
  pair.constant("c", 1)
      .memory("B", VertexKind::kOutputMem, {1})
      .constant("z", 0)
      .add("w", VertexKind::kWrite)
      .edge("c", "w", 0)
      .edge("z", "w", 1)
      .edge("w", "B");
  CHECK(data_movement_bound(pair.build(), "w", "B").value == Weight(1));
}
