#include "pgt/io/dot.hpp"

#include <algorithm>
#include <sstream>

namespace pgt::io {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string indent(std::size_t depth) { return std::string(2 * depth, ' '); }

std::string edge_label(const Edge& e) {
  std::string label = e.weight.to_string();
  if (!e.sibling) return label;
  if (const auto* c = std::get_if<CyclicShift>(&*e.sibling)) {
    return label + " +" + to_decimal(c->delta);
  }
  return label + " perm";
}

void write_node(std::ostream& os, const TemplateNode& node, std::size_t depth,
                const ParametricGraphTemplate& pgt) {
  std::vector<VertexId> vs = node.vertices;
  std::sort(vs.begin(), vs.end());
  for (const VertexId& v : vs) {
    os << indent(depth) << quote(v);
    if (pgt.is_dummy(v)) os << " [style=dashed]";
    os << ";\n";
  }
  std::vector<const TemplateNode*> cs;
  for (const auto& c : node.children) cs.push_back(&c);
  std::sort(cs.begin(), cs.end(),
            [](const TemplateNode* a, const TemplateNode* b) { return a->id < b->id; });
  for (const TemplateNode* c : cs) {
    os << indent(depth) << "subgraph " << quote("cluster_" + c->id) << " {\n";
    os << indent(depth + 1) << "label=" << quote(c->id + " ×" + to_decimal(c->parameter))
       << ";\n";
    write_node(os, *c, depth + 1, pgt);
    os << indent(depth) << "}\n";
  }
}

}  // namespace

std::string to_dot(const ParametricGraphTemplate& pgt) {
  std::ostringstream os;
  os << "digraph " << quote(pgt.root().id) << " {\n";
  write_node(os, pgt.root(), 1, pgt);
  for (const Edge& e : pgt.edges()) {
    os << "  " << quote(e.src) << " -> " << quote(e.dst)
       << " [label=" << quote(edge_label(e)) << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string to_dot(const ConcreteGraph& g) {
  std::ostringstream os;
  os << "digraph instantiation {\n";
  for (const auto& v : g.vertices) {
    os << "  " << quote(v.id);
    if (v.dummy) os << " [style=dashed]";
    os << ";\n";
  }
  for (const auto& e : g.edges) {
    os << "  " << quote(g.vertices[e.src].id) << " -> "
       << quote(g.vertices[e.dst].id) << " [label=" << quote(e.weight.to_string())
       << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace pgt::io
