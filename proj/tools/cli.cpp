#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "pgt/analysis.hpp"
#include "pgt/io/dot.hpp"
#include "pgt/io/json.hpp"
#include "pgt/loop/bound.hpp"
#include "pgt/relabeling.hpp"
#include "pgt/template_flow.hpp"
#include "pgt/transforms.hpp"

namespace pgt::cli {

namespace {

class UsageError : public PgtError {
 public:
  using PgtError::PgtError;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io::ParseError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

io::TemplateDocument load(const std::string& path) {
  return io::parse_document(read_file(path));
}

loop::LoopProgram load_program(const std::string& path) {
  const auto doc = load(path);
  if (!doc.is_program()) throw UsageError(path + " is not a loop program");
  return doc.program();
}

BigInt parse_limit(const std::string& s) {
  try {
    return parse_decimal(s);
  } catch (const std::invalid_argument&) {
    throw UsageError("--limit must be a decimal integer");
  }
}

Label parse_endpoint(const std::string& s, const char* what) {
  try {
    return parse_label(s);
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string("bad ") + what + " '" + s + "'");
  }
}

struct Options {
  std::string file;
  std::string second_file;
  std::string limit = "1000000";
  std::string format = "json";
  std::string mode = "all";
  std::string source;
  std::string sink;
  std::string vertex;
  std::string addr;
  std::string schedule = "lowest";
  std::string example;
  std::vector<std::string> sizes;
  bool oracle = false;
  bool cut = false;
};

int cmd_validate(const Options& o, std::ostream& out) {
  const auto doc = load(o.file);
  std::vector<std::string> problems;
  for (const Violation& v : validate(doc.pgt)) problems.push_back(to_string(v));
  if (problems.empty() && doc.is_program()) {
    for (const auto& v : loop::validate_program(doc.program())) {
      problems.push_back(loop::to_string(v));
    }
  }
  if (problems.empty()) {
    out << "OK\n";
    return kOk;
  }
  for (const auto& p : problems) out << p << "\n";
  return kInvalid;
}

int cmd_info(const Options& o, std::ostream& out) {
  const auto doc = load(o.file);
  const auto& pgt = doc.pgt;
  require_valid(pgt);
  std::size_t siblings = 0;
  for (const Edge& e : pgt.edges()) siblings += e.sibling.has_value();
  const auto cycle = is_template_acyclic(pgt);
  const auto size = instantiation_size(pgt);
  out << "vertices: " << pgt.vertex_count() << "\n"
      << "edges: " << pgt.edge_count() << "\n"
      << "height: " << tree_height(pgt) << "\n"
      << "templates: " << pgt.template_count() << "\n"
      << "sibling_edges: " << siblings << "\n"
      << "template_acyclic: " << (cycle.acyclic ? "yes" : "no") << "\n";
  if (!cycle.acyclic) {
    out << "template_cycle:";
    for (const VertexId& v : cycle.witness) out << " " << v;
    out << "\n";
  }
  out << "instantiation_vertices: " << to_decimal(size.vertices) << "\n"
      << "instantiation_edges: " << to_decimal(size.edges) << "\n";
  if (doc.is_program()) out << "loop_program: yes\n";
  return kOk;
}

int cmd_instantiate(const Options& o, std::ostream& out) {
  const auto g = instantiate(load(o.file).pgt, parse_limit(o.limit));
  out << (o.format == "dot" ? io::to_dot(g) : io::serialize(g));
  return kOk;
}

void print_cut(const FlowNetwork& net, const FlowResult& r, std::ostream& out) {
  std::vector<std::string> side;
  for (std::size_t v = 0; v < net.graph.names.size(); ++v) {
    if (r.source_side[v]) side.push_back(net.graph.names[v]);
  }
  std::sort(side.begin(), side.end());
  out << "source_side:";
  for (const auto& v : side) out << " " << v;
  out << "\n";
}

int cmd_flow(const Options& o, std::ostream& out) {
  const auto pgt = load(o.file).pgt;
  const Label s = parse_endpoint(o.source, "--source");
  const Label t = parse_endpoint(o.sink, "--sink");
  const bool single = o.mode == "single";
  if (!single && (!s.address.empty() || !t.address.empty())) {
    throw UsageError("instance addresses need --mode single");
  }
  const FlowNetwork net =
      single ? single_st_network(pgt, s.origin, s.address, t.origin, t.address)
             : all_st_network(pgt, s.origin, t.origin);
  if (single && s == t) throw SourceEqualsSink();
  const FlowResult r = solve(net);
  out << r.value.to_string() << "\n";
  if (o.cut) print_cut(net, r, out);
  if (!o.oracle) return kOk;

  const BigInt limit = parse_limit(o.limit);
  const FlowResult brute =
      single ? brute_force_single_st_flow(pgt, s.origin, s.address, t.origin,
                                          t.address, limit)
             : brute_force_all_st_flow(pgt, s.origin, t.origin, limit);
  if (brute.value == r.value) {
    out << "oracle: " << brute.value.to_string() << " MATCH\n";
    return kOk;
  }
  out << "oracle: " << brute.value.to_string() << " MISMATCH\n";
  return kInvalid;
}

std::vector<BigInt> example_sizes(const Options& o, std::size_t want) {
  if (o.sizes.size() != want) {
    throw UsageError(o.example + " takes " + std::to_string(want) + " sizes");
  }
  std::vector<BigInt> out;
  for (const auto& s : o.sizes) out.push_back(parse_limit(s));
  return out;
}

int cmd_loop_example(const Options& o, std::ostream& out) {
  try {
    if (o.example == "matmul") {
      const auto n = example_sizes(o, 3);
      out << io::serialize(loop::build_matmul(n[0], n[1], n[2]));
    } else {
      const auto n = example_sizes(o, 2);
      out << io::serialize(loop::build_cross_correlation(n[0], n[1]));
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return kOk;
}

std::string describe(const loop::Race& r) {
  std::string s = r.first + " " + r.second + " " + r.array;
  for (const BigInt& i : r.index) s += "[" + to_decimal(i) + "]";
  return s;
}

int cmd_loop_run(const Options& o, std::ostream& out, std::ostream& err) {
  const auto lp = load_program(o.file);
  const auto inputs = io::parse_arrays(read_file(o.second_file));
  const auto schedule = o.schedule == "highest" ? loop::Schedule::kHighestFirst
                                                : loop::Schedule::kLowestFirst;
  const auto report = loop::interpret(lp, inputs, parse_limit(o.limit), schedule);
  for (const auto& r : report.races) err << "race: " << describe(r) << "\n";
  if (report.undefined) {
    err << "undefined: " << *report.undefined << "\n";
    return kRuntime;
  }
  out << io::serialize(report.outputs);
  return kOk;
}

int cmd_loop_races(const Options& o, std::ostream& out, std::ostream& err) {
  const auto lp = load_program(o.file);
  const auto inputs = io::parse_arrays(read_file(o.second_file));
  const auto report = loop::interpret(lp, inputs, parse_limit(o.limit));
  if (report.undefined) {
    err << "undefined: " << *report.undefined << "\n";
    return kRuntime;
  }
  if (report.races.empty()) out << "no races\n";
  for (const auto& r : report.races) out << "race: " << describe(r) << "\n";
  return kOk;
}

int cmd_loop_bound(const Options& o, std::ostream& out) {
  const auto lp = load_program(o.file);
  const Label s = parse_endpoint(o.source, "--source");
  const Label t = parse_endpoint(o.sink, "--sink");
  if (o.mode == "single") {
    if (s == t) throw SourceEqualsSink();
    out << loop::data_movement_bound(lp, s.origin, s.address, t.origin, t.address)
               .value.to_string()
        << "\n";
    return kOk;
  }
  if (!s.address.empty() || !t.address.empty()) {
    throw UsageError("instance addresses need --mode single");
  }
  out << loop::data_movement_bound(lp, s.origin, t.origin).value.to_string()
      << "\n";
  return kOk;
}

int cmd_reweight(const Options& o, std::ostream& out) {
  out << io::serialize(edge_reweight(load(o.file).pgt));
  return kOk;
}

int cmd_merge(const Options& o, std::ostream& out) {
  out << io::serialize(instance_merge(load(o.file).pgt, o.vertex).pgt);
  return kOk;
}

int cmd_partial(const Options& o, std::ostream& out) {
  const Label l =
      parse_endpoint(o.addr.empty() ? o.vertex : o.vertex + "@" + o.addr, "--addr");
  const auto r = partial_instantiate_upwards(load(o.file).pgt, l.origin, l.address);
  out << io::serialize(r.pgt);
  return kOk;
}

int cmd_dot(const Options& o, std::ostream& out) {
  out << io::to_dot(load(o.file).pgt);
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  Options o;
  CLI::App app{"Parametric graph templates: validate, instantiate, transform, "
               "solve flows and run loop programs.",
               "pgt"};
  app.require_subcommand(1);

  auto file_arg = [&](CLI::App* c, const char* help = "template JSON") {
    c->add_option("file", o.file, help)->required();
  };
  auto limit_opt = [&](CLI::App* c) {
    c->add_option("--limit", o.limit, "instantiation size limit")->capture_default_str();
  };

  auto* validate_cmd = app.add_subcommand("validate", "check structural rules");
  file_arg(validate_cmd);
  auto* info_cmd = app.add_subcommand("info", "sizes, height, acyclicity");
  file_arg(info_cmd);

  auto* inst_cmd = app.add_subcommand("instantiate", "expand to a flat graph");
  file_arg(inst_cmd);
  limit_opt(inst_cmd);
  inst_cmd->add_option("--format", o.format, "json or dot")->capture_default_str()
      ->check(CLI::IsMember({"json", "dot"}));

  auto* flow_cmd = app.add_subcommand("flow", "maximum s-t flow");
  file_arg(flow_cmd);
  flow_cmd->add_option("--mode", o.mode, "all or single")->capture_default_str()
      ->check(CLI::IsMember({"all", "single"}));
  flow_cmd->add_option("--source", o.source, "S or S@i0.i1")->required();
  flow_cmd->add_option("--sink", o.sink, "T or T@i0.i1")->required();
  flow_cmd->add_flag("--oracle", o.oracle, "compare with the instantiation");
  flow_cmd->add_flag("--cut", o.cut, "print the source side of a minimum cut");
  limit_opt(flow_cmd);

  auto* loop_cmd = app.add_subcommand("loop", "parallel loop programs");
  loop_cmd->require_subcommand(1);
  auto* example_cmd = loop_cmd->add_subcommand("example", "print a built-in program");
  example_cmd->add_option("name", o.example, "matmul or xcorr")
      ->required()
      ->check(CLI::IsMember({"matmul", "xcorr"}));
  example_cmd->add_option("sizes", o.sizes, "n k m, or n k")->required();
  auto* run_cmd = loop_cmd->add_subcommand("run", "execute serially");
  file_arg(run_cmd, "program JSON");
  run_cmd->add_option("inputs", o.second_file, "input arrays JSON")->required();
  run_cmd->add_option("--schedule", o.schedule, "lowest or highest")->capture_default_str()
      ->check(CLI::IsMember({"lowest", "highest"}));
  limit_opt(run_cmd);
  auto* races_cmd = loop_cmd->add_subcommand("races", "report unordered writes");
  file_arg(races_cmd, "program JSON");
  races_cmd->add_option("inputs", o.second_file, "input arrays JSON")->required();
  limit_opt(races_cmd);
  auto* bound_cmd = loop_cmd->add_subcommand("bound", "data-movement upper bound");
  file_arg(bound_cmd, "program JSON");
  bound_cmd->add_option("--mode", o.mode, "all or single")->capture_default_str()
      ->check(CLI::IsMember({"all", "single"}));
  bound_cmd->add_option("--source", o.source, "S or S@i0.i1")->required();
  bound_cmd->add_option("--sink", o.sink, "T or T@i0.i1")->required();

  auto* transform_cmd = app.add_subcommand("transform", "rewrite a template");
  transform_cmd->require_subcommand(1);
  auto* reweight_cmd =
      transform_cmd->add_subcommand("reweight", "scale edges by instance counts");
  file_arg(reweight_cmd);
  auto* merge_cmd = transform_cmd->add_subcommand("merge", "merge a vertex's instances");
  file_arg(merge_cmd);
  merge_cmd->add_option("--vertex", o.vertex)->required();
  auto* partial_cmd =
      transform_cmd->add_subcommand("partial", "move one instance to the root");
  file_arg(partial_cmd);
  partial_cmd->add_option("--vertex", o.vertex)->required();
  partial_cmd->add_option("--addr", o.addr, "i0.i1...");

  auto* dot_cmd = app.add_subcommand("dot", "Graphviz rendering of a template");
  file_arg(dot_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(o, out);
    if (info_cmd->parsed()) return cmd_info(o, out);
    if (inst_cmd->parsed()) return cmd_instantiate(o, out);
    if (flow_cmd->parsed()) return cmd_flow(o, out);
    if (example_cmd->parsed()) return cmd_loop_example(o, out);
    if (run_cmd->parsed()) return cmd_loop_run(o, out, err);
    if (races_cmd->parsed()) return cmd_loop_races(o, out, err);
    if (bound_cmd->parsed()) return cmd_loop_bound(o, out);
    if (reweight_cmd->parsed()) return cmd_reweight(o, out);
    if (merge_cmd->parsed()) return cmd_merge(o, out);
    if (partial_cmd->parsed()) return cmd_partial(o, out);
    if (dot_cmd->parsed()) return cmd_dot(o, out);
  } catch (const SizeLimitExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kTooLarge;
  } catch (const UnsupportedSiblingSplit& e) {
    err << "error: " << e.what() << "\n";
    return kRuntime;
  } catch (const PgtError& e) {
    // Parse, validation, shape and lookup failures.
    err << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kInvalid;
}

}  // namespace pgt::cli
