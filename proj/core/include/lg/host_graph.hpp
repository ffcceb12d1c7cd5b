#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lg {

/// Undirected simple graph on vertices 0..n-1 with one adjacency bitset per vertex.
class HostGraph {
 public:
  explicit HostGraph(int n);

  int n() const noexcept { return n_; }
  void add_edge(int a, int b);
  void remove_edge(int a, int b);
  bool has_edge(int a, int b) const;
  int degree(int v) const;
  std::size_t edge_count() const;
  std::vector<std::pair<int, int>> edges() const;

  /// "u v" per line, 1-based; blank lines and '#' comments are skipped. When `n`
  /// is zero the vertex count is the largest endpoint seen.
  static HostGraph parse_edge_list(std::string_view text, int n = 0);
  std::string to_edge_list() const;

 private:
  std::size_t word(int v, int w) const {
    return static_cast<std::size_t>(v) * words_ + static_cast<std::size_t>(w) / 64;
  }

  int n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

/// Index of a query variable: the edge slot {a, b} of the input graph.
using SlotId = std::uint32_t;

inline SlotId slot_id(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<SlotId>(a) << 16) | static_cast<SlotId>(b);
}

inline std::pair<int, int> slot_endpoints(SlotId id) {
  return {static_cast<int>(id >> 16), static_cast<int>(id & 0xFFFF)};
}

}  // namespace lg
