#include "lg/partite_label.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace lg {

bool LabelBlock::has_edge(int left, int right) const {
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(left, right));
}

void LabelBlock::add_edge(int left, int right) {
  auto e = std::make_pair(left, right);
  auto it = std::lower_bound(edges.begin(), edges.end(), e);
  if (it == edges.end() || *it != e) edges.insert(it, e);
}

int LabelBlock::degree(int host_vertex) const {
  int d = 0;
  for (auto [a, b] : edges) d += (a == host_vertex) + (b == host_vertex);
  return d;
}

void PartiteLabel::insert_member(int cls, int host_vertex) {
  auto& c = classes_.at(static_cast<std::size_t>(cls));
  c.insert(std::lower_bound(c.begin(), c.end(), host_vertex), host_vertex);
}

void PartiteLabel::set_members(int cls, std::vector<int> host_vertices) {
  std::sort(host_vertices.begin(), host_vertices.end());
  classes_.at(static_cast<std::size_t>(cls)) = std::move(host_vertices);
}

void PartiteLabel::remove_vertex(int host_vertex) {
  for (auto& c : classes_) {
    auto it = std::lower_bound(c.begin(), c.end(), host_vertex);
    if (it != c.end() && *it == host_vertex) c.erase(it);
  }
  for (auto& b : blocks_) {
    std::erase_if(b.edges, [&](const auto& e) { return e.first == host_vertex || e.second == host_vertex; });
  }
}

LabelBlock& PartiteLabel::block(int pattern_edge, int left_class, int right_class) {
  auto it = std::lower_bound(blocks_.begin(), blocks_.end(), pattern_edge,
                             [](const LabelBlock& b, int e) { return b.pattern_edge < e; });
  if (it != blocks_.end() && it->pattern_edge == pattern_edge) return *it;
  LabelBlock fresh;
  fresh.pattern_edge = pattern_edge;
  fresh.left_class = left_class;
  fresh.right_class = right_class;
  return *blocks_.insert(it, std::move(fresh));
}

const LabelBlock* PartiteLabel::find_block(int pattern_edge) const {
  for (const auto& b : blocks_) {
    if (b.pattern_edge == pattern_edge) return &b;
  }
  return nullptr;
}

int PartiteLabel::class_of(int host_vertex) const {
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    if (std::binary_search(classes_[c].begin(), classes_[c].end(), host_vertex)) return static_cast<int>(c);
  }
  return -1;
}

int PartiteLabel::degree_in_block(int pattern_edge, int host_vertex) const {
  const LabelBlock* b = find_block(pattern_edge);
  return b == nullptr ? 0 : b->degree(host_vertex);
}

std::pair<std::vector<int>, std::vector<int>> PartiteLabel::block_degrees(const LabelBlock& b) const {
  const auto& left = members(b.left_class);
  const auto& right = members(b.right_class);
  std::vector<int> dl(left.size(), 0);
  std::vector<int> dr(right.size(), 0);
  for (auto [x, y] : b.edges) {
    auto li = std::lower_bound(left.begin(), left.end(), x) - left.begin();
    auto ri = std::lower_bound(right.begin(), right.end(), y) - right.begin();
    if (static_cast<std::size_t>(li) < dl.size()) ++dl[static_cast<std::size_t>(li)];
    if (static_cast<std::size_t>(ri) < dr.size()) ++dr[static_cast<std::size_t>(ri)];
  }
  return {dl, dr};
}

bool PartiteLabel::block_matches(int pattern_edge, const BipartiteType& type) const {
  const LabelBlock* b = find_block(pattern_edge);
  if (b == nullptr) return type.edge_count() == 0;
  auto [dl, dr] = block_degrees(*b);
  return type.matches(std::move(dl), std::move(dr));
}

std::vector<SlotId> PartiteLabel::variables() const {
  std::vector<SlotId> out;
  for (const auto& b : blocks_) {
    for (auto [x, y] : b.edges) out.push_back(slot_id(x, y));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t PartiteLabel::edge_count() const {
  std::size_t total = 0;
  for (const auto& b : blocks_) total += b.edges.size();
  return total;
}

PartiteLabel PartiteLabel::permuted(std::span<const int> sigma) const {
  auto map = [&](int v) { return sigma[static_cast<std::size_t>(v)]; };
  PartiteLabel out(class_count());
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    std::vector<int> members;
    members.reserve(classes_[c].size());
    for (int v : classes_[c]) members.push_back(map(v));
    out.set_members(static_cast<int>(c), std::move(members));
  }
  for (const auto& b : blocks_) {
    LabelBlock& nb = out.block(b.pattern_edge, b.left_class, b.right_class);
    nb.edges.reserve(b.edges.size());
    for (auto [x, y] : b.edges) nb.edges.emplace_back(map(x), map(y));
    std::sort(nb.edges.begin(), nb.edges.end());
  }
  return out;
}

std::string PartiteLabel::violation(std::span<const PatternEdge> pattern_edges) const {
  std::set<int> seen;
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    for (int v : classes_[c]) {
      if (!seen.insert(v).second) {
        return "host vertex " + std::to_string(v + 1) + " lies in two classes";
      }
    }
  }
  for (const auto& b : blocks_) {
    if (b.pattern_edge < 0 || static_cast<std::size_t>(b.pattern_edge) >= pattern_edges.size()) {
      return "block for unknown pattern edge " + std::to_string(b.pattern_edge);
    }
    const auto& e = pattern_edges[static_cast<std::size_t>(b.pattern_edge)];
    if (e.a != b.left_class || e.b != b.right_class) {
      return "block " + std::to_string(b.pattern_edge) + " joins classes that are not its pattern edge";
    }
    if (b.right_class >= class_count()) return "block references a missing class";
    const auto& left = members(b.left_class);
    const auto& right = members(b.right_class);
    for (auto [x, y] : b.edges) {
      if (!std::binary_search(left.begin(), left.end(), x) || !std::binary_search(right.begin(), right.end(), y)) {
        return "block " + std::to_string(b.pattern_edge) + " has an edge outside its classes";
      }
    }
  }
  return {};
}

std::string PartiteLabel::to_string() const {
  std::ostringstream out;
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    out << "X" << c + 1 << "={";
    for (std::size_t i = 0; i < classes_[c].size(); ++i) out << (i ? "," : "") << classes_[c][i] + 1;
    out << "} ";
  }
  for (const auto& b : blocks_) {
    out << "Q" << b.pattern_edge + 1 << "=[";
    for (std::size_t i = 0; i < b.edges.size(); ++i) {
      out << (i ? " " : "") << b.edges[i].first + 1 << "-" << b.edges[i].second + 1;
    }
    out << "] ";
  }
  std::string s = out.str();
  if (!s.empty()) s.pop_back();
  return s;
}

std::size_t PartiteLabel::hash() const {
  std::size_t h = 0xcbf29ce484222325ULL;
  auto mix = [&](std::size_t v) { h = (h ^ v) * 0x100000001b3ULL; };
  for (const auto& c : classes_) {
    mix(c.size());
    for (int v : c) mix(static_cast<std::size_t>(v));
  }
  for (const auto& b : blocks_) {
    mix(static_cast<std::size_t>(b.pattern_edge) + 0x9e37);
    for (auto [x, y] : b.edges) mix((static_cast<std::size_t>(x) << 16) ^ static_cast<std::size_t>(y));
  }
  return h;
}

}  // namespace lg
