#include "pgt/io/json.hpp"

#include <algorithm>
#include <tuple>

#include <json.hpp>

namespace pgt::io {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

const json& field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(where + ": missing \"" + key + "\"");
  return *it;
}

void only_keys(const json& obj, std::initializer_list<const char*> allowed,
               const std::string& where) {
  if (!obj.is_object()) fail(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) {
          return key == a;
        }) == allowed.end()) {
      fail(where + ": unexpected field \"" + key + "\"");
    }
  }
}

std::string text(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where + ": expected a string");
  return j.get<std::string>();
}

BigInt decimal(const json& j, const std::string& where) {
  try {
    return parse_decimal(text(j, where));
  } catch (const std::invalid_argument&) {
    fail(where + ": expected a decimal string");
  }
}

int small_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where + ": expected an integer");
  return j.get<int>();
}

std::vector<BigInt> decimals(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where + ": expected an array");
  std::vector<BigInt> out;
  for (const json& x : j) out.push_back(decimal(x, where));
  return out;
}

json decimals_json(const std::vector<BigInt>& xs) {
  json out = json::array();
  for (const BigInt& x : xs) out.push_back(to_decimal(x));
  return out;
}

TemplateNode parse_node(const json& j) {
  only_keys(j, {"id", "parameter", "vertices", "children"}, "template");
  TemplateNode node;
  node.id = text(field(j, "id", "template"), "template id");
  const std::string where = "template " + node.id;
  node.parameter = decimal(field(j, "parameter", where), where + " parameter");
  const json& vs = field(j, "vertices", where);
  if (!vs.is_array()) fail(where + ": vertices must be an array");
  for (const json& v : vs) node.vertices.push_back(text(v, where + " vertex"));
  const json& cs = field(j, "children", where);
  if (!cs.is_array()) fail(where + ": children must be an array");
  for (const json& c : cs) node.children.push_back(parse_node(c));
  return node;
}

json node_json(const TemplateNode& node) {
  std::vector<VertexId> vs = node.vertices;
  std::sort(vs.begin(), vs.end());
  std::vector<const TemplateNode*> cs;
  for (const auto& c : node.children) cs.push_back(&c);
  std::sort(cs.begin(), cs.end(),
            [](const TemplateNode* a, const TemplateNode* b) { return a->id < b->id; });
  json children = json::array();
  for (const TemplateNode* c : cs) children.push_back(node_json(*c));
  return {{"id", node.id},
          {"parameter", to_decimal(node.parameter)},
          {"vertices", vs},
          {"children", std::move(children)}};
}

SiblingSpec parse_sibling(const json& j, const std::string& where) {
  const std::string type = text(field(j, "type", where), where + " type");
  if (type == "cyclic_shift") {
    only_keys(j, {"type", "delta"}, where);
    return CyclicShift{decimal(field(j, "delta", where), where + " delta")};
  }
  if (type == "permutation") {
    only_keys(j, {"type", "map"}, where);
    return Permutation{decimals(field(j, "map", where), where + " map")};
  }
  fail(where + ": unknown sibling type \"" + type + "\"");
}

json sibling_json(const SiblingSpec& s) {
  if (const auto* c = std::get_if<CyclicShift>(&s)) {
    return {{"type", "cyclic_shift"}, {"delta", to_decimal(c->delta)}};
  }
  return {{"type", "permutation"},
          {"map", decimals_json(std::get<Permutation>(s).map)}};
}

json edge_json(const Edge& e) {
  json out = {{"src", e.src}, {"dst", e.dst}, {"weight", e.weight.to_string()}};
  if (e.rank) out["rank"] = *e.rank;
  if (e.sibling) out["sibling"] = sibling_json(*e.sibling);
  return out;
}

json parse_json(std::string_view s) {
  try {
    return json::parse(s);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json document_json(const ParametricGraphTemplate& pgt,
                   const std::map<VertexId, loop::VertexSpec>* specs) {
  std::vector<VertexId> ids = pgt.vertices();
  std::sort(ids.begin(), ids.end());
  json vertices = json::array();
  for (const VertexId& v : ids) {
    json obj = {{"id", v}};
    if (pgt.is_dummy(v)) obj["kind"] = "dummy";
    if (specs) {
      auto it = specs->find(v);
      if (it != specs->end()) {
        const loop::VertexSpec& s = it->second;
        obj["kind"] = loop::kind_name(s.kind);
        if (loop::is_memory(s.kind)) {
          obj["dims"] = s.sizes.size();
          obj["sizes"] = decimals_json(s.sizes);
        }
        if (s.kind == loop::VertexKind::kReduce ||
            s.kind == loop::VertexKind::kBinOp) {
          obj["op"] = loop::op_symbol(s.op);
        }
        if (s.kind == loop::VertexKind::kConst) {
          obj["value"] = loop::format_value(s.constant);
        }
      }
    }
    vertices.push_back(std::move(obj));
  }
  std::vector<json> edges;
  for (const Edge& e : pgt.edges()) edges.push_back(edge_json(e));
  std::sort(edges.begin(), edges.end(), [](const json& a, const json& b) {
    return std::make_tuple(a["src"], a["dst"], a.dump()) <
           std::make_tuple(b["src"], b["dst"], b.dump());
  });
  return {{"vertices", std::move(vertices)},
          {"edges", std::move(edges)},
          {"templates", node_json(pgt.root())}};
}

}  // namespace

TemplateDocument parse_document(std::string_view s) {
  const json doc = parse_json(s);
  only_keys(doc, {"vertices", "edges", "templates"}, "document");

  std::vector<VertexId> vertices;
  std::set<VertexId> dummies;
  std::map<VertexId, loop::VertexSpec> specs;
  const json& vs = field(doc, "vertices", "document");
  if (!vs.is_array()) fail("vertices must be an array");
  for (const json& v : vs) {
    only_keys(v, {"id", "kind", "dims", "sizes", "op", "value"}, "vertex");
    const VertexId id = text(field(v, "id", "vertex"), "vertex id");
    const std::string where = "vertex " + id;
    vertices.push_back(id);
    if (!v.contains("kind")) {
      for (const char* k : {"dims", "sizes", "op", "value"}) {
        if (v.contains(k)) fail(where + ": \"" + k + "\" needs a kind");
      }
      continue;
    }
    const std::string kind = text(v["kind"], where + " kind");
    if (kind == "dummy") {
      dummies.insert(id);
      continue;
    }
    const auto k = loop::parse_kind(kind);
    if (!k) fail(where + ": unknown kind \"" + kind + "\"");
    loop::VertexSpec spec;
    spec.kind = *k;
    const bool memory = loop::is_memory(*k);
    const bool has_op =
        *k == loop::VertexKind::kReduce || *k == loop::VertexKind::kBinOp;
    const bool has_value = *k == loop::VertexKind::kConst;
    if (memory) {
      spec.sizes = decimals(field(v, "sizes", where), where + " sizes");
      if (v.contains("dims") &&
          small_int(v["dims"], where + " dims") != static_cast<int>(spec.sizes.size())) {
        fail(where + ": dims disagrees with sizes");
      }
    } else if (v.contains("dims") || v.contains("sizes")) {
      fail(where + ": only memory vertices have dims and sizes");
    }
    if (has_op) {
      const auto op = loop::parse_op(text(field(v, "op", where), where + " op"));
      if (!op) fail(where + ": unknown operator");
      spec.op = *op;
    } else if (v.contains("op")) {
      fail(where + ": only reduce and binop vertices have an op");
    }
    if (has_value) {
      try {
        spec.constant =
            loop::parse_value(text(field(v, "value", where), where + " value"));
      } catch (const std::invalid_argument& e) {
        fail(where + ": " + e.what());
      }
    } else if (v.contains("value")) {
      fail(where + ": only const vertices have a value");
    }
    specs[id] = std::move(spec);
  }

  std::vector<Edge> edges;
  const json& es = field(doc, "edges", "document");
  if (!es.is_array()) fail("edges must be an array");
  for (const json& e : es) {
    only_keys(e, {"src", "dst", "weight", "rank", "sibling"}, "edge");
    Edge edge;
    edge.src = text(field(e, "src", "edge"), "edge src");
    edge.dst = text(field(e, "dst", "edge"), "edge dst");
    const std::string where = "edge " + edge.src + "->" + edge.dst;
    try {
      edge.weight = Weight::parse(text(field(e, "weight", where), where));
    } catch (const std::invalid_argument&) {
      fail(where + ": weight must be a decimal string or \"inf\"");
    }
    if (e.contains("rank")) edge.rank = small_int(e["rank"], where + " rank");
    if (e.contains("sibling")) edge.sibling = parse_sibling(e["sibling"], where);
    edges.push_back(std::move(edge));
  }

  TemplateNode root = parse_node(field(doc, "templates", "document"));
  TemplateDocument out{
      ParametricGraphTemplate(std::move(vertices), std::move(edges),
                              std::move(root), std::move(dummies)),
      std::nullopt};
  if (!specs.empty()) out.specs = std::move(specs);
  return out;
}

std::string serialize(const TemplateDocument& doc) {
  return dump(document_json(doc.pgt, doc.specs ? &*doc.specs : nullptr));
}

std::string serialize(const ParametricGraphTemplate& pgt) {
  return dump(document_json(pgt, nullptr));
}

std::string serialize(const loop::LoopProgram& lp) {
  return dump(document_json(lp.pgt, &lp.specs));
}

std::string serialize(const ConcreteGraph& g) {
  json vertices = json::array();
  for (const auto& v : g.vertices) {
    json obj = {{"id", v.id},
                {"origin", v.label.origin},
                {"address", decimals_json(v.label.address)}};
    if (v.dummy) obj["dummy"] = true;
    vertices.push_back(std::move(obj));
  }
  json edges = json::array();
  for (const auto& e : g.edges) {
    edges.push_back({{"src", g.vertices[e.src].id},
                     {"dst", g.vertices[e.dst].id},
                     {"weight", e.weight.to_string()}});
  }
  return dump({{"vertices", std::move(vertices)}, {"edges", std::move(edges)}});
}

std::string serialize(const FlatGraph& g) {
  json edges = json::array();
  for (const FlatEdge& e : g.edges) {
    edges.push_back({{"src", g.names[e.src]},
                     {"dst", g.names[e.dst]},
                     {"weight", e.capacity.to_string()}});
  }
  return dump({{"vertices", g.names}, {"edges", std::move(edges)}});
}

namespace {

json nested(const loop::Array& a, std::size_t dim, std::size_t& next) {
  json out = json::array();
  for (std::size_t i = 0; i < a.sizes[dim]; ++i) {
    if (dim + 1 == a.sizes.size()) {
      out.push_back(loop::format_value(a.values[next++]));
    } else {
      out.push_back(nested(a, dim + 1, next));
    }
  }
  return out;
}

void flatten(const json& j, std::size_t dim, loop::Array& a,
             const std::string& where) {
  if (!j.is_array() || j.size() != a.sizes[dim]) {
    fail(where + ": array is not rectangular");
  }
  for (const json& x : j) {
    if (dim + 1 == a.sizes.size()) {
      try {
        a.values.push_back(loop::parse_value(text(x, where)));
      } catch (const std::invalid_argument& e) {
        fail(where + ": " + e.what());
      }
    } else {
      flatten(x, dim + 1, a, where);
    }
  }
}

}  // namespace

loop::ArrayMap parse_arrays(std::string_view s) {
  const json doc = parse_json(s);
  if (!doc.is_object()) fail("arrays: expected an object");
  loop::ArrayMap out;
  for (const auto& [name, value] : doc.items()) {
    const std::string where = "array " + name;
    loop::Array a;
    for (const json* j = &value; j->is_array(); j = &(*j)[0]) {
      a.sizes.push_back(j->size());
      if (j->empty()) fail(where + ": empty dimension");
    }
    if (a.sizes.empty()) fail(where + ": expected a nested array");
    flatten(value, 0, a, where);
    out[name] = std::move(a);
  }
  return out;
}

std::string serialize(const loop::ArrayMap& arrays) {
  json out = json::object();
  for (const auto& [name, a] : arrays) {
    std::size_t next = 0;
    out[name] = nested(a, 0, next);
  }
  return dump(out);
}

}  // namespace pgt::io
