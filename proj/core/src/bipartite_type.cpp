#include "lg/bipartite_type.hpp"

#include <algorithm>
#include <sstream>

namespace lg {
namespace {

int side_size(const std::vector<DegreeClass>& side) {
  int total = 0;
  for (const auto& c : side) total += c.count;
  return total;
}

int degree_sum(const std::vector<DegreeClass>& side) {
  int total = 0;
  for (const auto& c : side) total += c.count * c.degree;
  return total;
}

}  // namespace

int BipartiteType::left_size() const { return side_size(left); }
int BipartiteType::right_size() const { return side_size(right); }
int BipartiteType::edge_count() const { return degree_sum(left); }

std::string BipartiteType::violation() const {
  for (const auto* side : {&left, &right}) {
    for (const auto& c : *side) {
      if (c.count < 0 || c.degree < 0) return "negative count or degree in " + to_string();
    }
  }
  if (left_size() <= 0 || right_size() <= 0) return "empty side in " + to_string();
  if (degree_sum(left) != degree_sum(right)) return "handshake fails for " + to_string();
  for (const auto& c : left) {
    if (c.count > 0 && c.degree > right_size()) return "left degree exceeds right side in " + to_string();
  }
  for (const auto& c : right) {
    if (c.count > 0 && c.degree > left_size()) return "right degree exceeds left side in " + to_string();
  }
  return {};
}

std::vector<int> BipartiteType::expand(const std::vector<DegreeClass>& side) {
  std::vector<int> out;
  for (const auto& c : side) out.insert(out.end(), static_cast<std::size_t>(std::max(c.count, 0)), c.degree);
  return out;
}

bool BipartiteType::matches(std::vector<int> left_degrees, std::vector<int> right_degrees) const {
  auto want_left = expand(left);
  auto want_right = expand(right);
  std::sort(want_left.begin(), want_left.end());
  std::sort(want_right.begin(), want_right.end());
  std::sort(left_degrees.begin(), left_degrees.end());
  std::sort(right_degrees.begin(), right_degrees.end());
  return want_left == left_degrees && want_right == right_degrees;
}

std::string BipartiteType::to_string() const {
  std::ostringstream out;
  auto side = [&](const std::vector<DegreeClass>& s) {
    out << '{';
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) out << ',';
      out << '(' << s[i].count << ',' << s[i].degree << ')';
    }
    out << '}';
  };
  out << '(';
  side(left);
  out << ',';
  side(right);
  out << ')';
  return out.str();
}

namespace block_types {

BipartiteType setup(int r, int rs) {
  std::vector<DegreeClass> side{{r - 1 - rs, rs}, {rs, rs - 1}};
  return {side, side};
}

BipartiteType half_loaded(int r, int rs) { return {{{r - rs, rs}, {rs, rs - 1}}, {{r - 1, rs}}}; }

BipartiteType regular(int r, int rs) { return {{{r, rs}}, {{r, rs}}}; }

BipartiteType hidden(int r, int rs) {
  std::vector<DegreeClass> side{{r / 2, rs}, {r / 2, rs + 1}};
  return {side, side};
}

BipartiteType hidden_loaded(int r, int rs) {
  std::vector<DegreeClass> side{{r / 2 - 1, rs}, {r / 2 + 1, rs + 1}};
  return {side, side};
}

BipartiteType collision(int r, int edges) { return {{{edges, 1}, {r - edges, 0}}, {{1, edges}}}; }

}  // namespace block_types
}  // namespace lg
