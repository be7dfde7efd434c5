#include "pgt/relabeling.hpp"

#include <stdexcept>

namespace pgt {

Label parse_label(std::string_view text) {
  Label label;
  const auto at = text.find('@');
  label.origin = std::string(text.substr(0, at));
  if (label.origin.empty()) throw std::invalid_argument("empty vertex name");
  if (at == std::string_view::npos) return label;
  std::string_view rest = text.substr(at + 1);
  while (true) {
    const auto dot = rest.find('.');
    label.address.push_back(parse_decimal(rest.substr(0, dot)));
    if (dot == std::string_view::npos) break;
    rest = rest.substr(dot + 1);
  }
  return label;
}

std::string format_label(const Label& label) {
  if (label.address.empty()) return label.origin;
  return label.origin + "@" + format_address(label.address);
}

void Relabeling::add_split(std::size_t depth, BigInt index,
                           std::set<VertexId> subtree,
                           std::map<VertexId, VertexId> copy_of) {
  Step step{Step::Kind::kSplit, depth, std::move(index), std::move(subtree),
            std::move(copy_of), {}};
  for (const auto& [copy, original] : step.copy_of) {
    step.copy_for.emplace(original, copy);
  }
  steps_.push_back(std::move(step));
}

void Relabeling::add_collapse(std::size_t depth, std::set<VertexId> subtree) {
  steps_.push_back({Step::Kind::kCollapse, depth, 0, std::move(subtree), {}, {}});
}

void Relabeling::add_new_vertices(std::set<VertexId> vertices) {
  steps_.push_back({Step::Kind::kNew, 0, 0, std::move(vertices), {}, {}});
}

std::optional<Label> Relabeling::to_transformed(const Label& label) const {
  Label cur = label;
  for (const Step& step : steps_) {
    if (!step.subtree.count(cur.origin) || step.kind == Step::Kind::kNew) {
      continue;
    }
    const std::size_t pos = step.depth - 1;
    if (pos >= cur.address.size()) {
      throw std::invalid_argument("address too short for " + format_label(label));
    }
    if (step.kind == Step::Kind::kCollapse) {
      cur.address.erase(cur.address.begin() + static_cast<std::ptrdiff_t>(pos));
      continue;
    }
    BigInt& j = cur.address[pos];
    if (j == step.index) {
      j = 0;
    } else {
      cur.origin = step.copy_for.at(cur.origin);
      if (j > step.index) j -= 1;
    }
  }
  return cur;
}

std::optional<Label> Relabeling::to_original(const Label& label) const {
  Label cur = label;
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    const Step& step = *it;
    const std::size_t pos = step.depth - 1;
    switch (step.kind) {
      case Step::Kind::kNew:
        if (step.subtree.count(cur.origin)) return std::nullopt;
        break;
      case Step::Kind::kCollapse:
        if (step.subtree.count(cur.origin)) {
          if (pos > cur.address.size()) {
            throw std::invalid_argument("address too short");
          }
          cur.address.insert(cur.address.begin() + static_cast<std::ptrdiff_t>(pos),
                             BigInt(0));
        }
        break;
      case Step::Kind::kSplit:
        if (step.subtree.count(cur.origin)) {
          cur.address.at(pos) = step.index;
        } else if (auto c = step.copy_of.find(cur.origin);
                   c != step.copy_of.end()) {
          cur.origin = c->second;
          BigInt& j = cur.address.at(pos);
          if (j >= step.index) j += 1;
        }
        break;
    }
  }
  return cur;
}

Relabeling Relabeling::then(const Relabeling& next) const {
  Relabeling out = *this;
  out.steps_.insert(out.steps_.end(), next.steps_.begin(), next.steps_.end());
  return out;
}

}  // namespace pgt
