#include "lg/host_graph.hpp"

#include <bit>
#include <sstream>

#include "lg/errors.hpp"

namespace lg {

HostGraph::HostGraph(int n) : n_(n), words_((static_cast<std::size_t>(n) + 63) / 64) {
  if (n < 0 || n > 0xFFFF) throw InvalidHostGraph("host vertex count out of range");
  bits_.assign(static_cast<std::size_t>(n) * words_, 0);
}

void HostGraph::add_edge(int a, int b) {
  if (a < 0 || b < 0 || a >= n_ || b >= n_) throw InvalidHostGraph("host edge endpoint out of range");
  if (a == b) throw InvalidHostGraph("host graphs have no loops");
  bits_[word(a, b)] |= std::uint64_t{1} << (b % 64);
  bits_[word(b, a)] |= std::uint64_t{1} << (a % 64);
}

void HostGraph::remove_edge(int a, int b) {
  bits_[word(a, b)] &= ~(std::uint64_t{1} << (b % 64));
  bits_[word(b, a)] &= ~(std::uint64_t{1} << (a % 64));
}

bool HostGraph::has_edge(int a, int b) const {
  if (a < 0 || b < 0 || a >= n_ || b >= n_ || a == b) return false;
  return ((bits_[word(a, b)] >> (b % 64)) & 1U) != 0;
}

int HostGraph::degree(int v) const {
  int d = 0;
  for (std::size_t w = 0; w < words_; ++w) {
    d += std::popcount(bits_[static_cast<std::size_t>(v) * words_ + w]);
  }
  return d;
}

std::size_t HostGraph::edge_count() const {
  std::size_t total = 0;
  for (int v = 0; v < n_; ++v) total += static_cast<std::size_t>(degree(v));
  return total / 2;
}

std::vector<std::pair<int, int>> HostGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n_; ++a) {
    for (int b = a + 1; b < n_; ++b) {
      if (has_edge(a, b)) out.emplace_back(a, b);
    }
  }
  return out;
}

HostGraph HostGraph::parse_edge_list(std::string_view text, int n) {
  std::vector<std::pair<int, int>> edges;
  int max_vertex = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    int a = 0;
    int b = 0;
    if (!(fields >> a)) continue;
    if (!(fields >> b)) {
      throw InvalidHostGraph("line " + std::to_string(line_no) + ": expected 'u v'");
    }
    if (a < 1 || b < 1) throw InvalidHostGraph("line " + std::to_string(line_no) + ": vertices are 1-based");
    edges.emplace_back(a - 1, b - 1);
    max_vertex = std::max({max_vertex, a, b});
  }
  if (n == 0) n = max_vertex;
  if (max_vertex > n) throw InvalidHostGraph("edge endpoint exceeds the declared vertex count");
  HostGraph g(n);
  for (auto [a, b] : edges) g.add_edge(a, b);
  return g;
}

std::string HostGraph::to_edge_list() const {
  std::ostringstream out;
  for (auto [a, b] : edges()) out << a + 1 << ' ' << b + 1 << '\n';
  return out.str();
}

}  // namespace lg
