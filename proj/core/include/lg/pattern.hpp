#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lg {

/// Unordered pair of pattern vertices, stored with a < b (0-based).
struct PatternEdge {
  int a = 0;
  int b = 0;
  friend bool operator==(const PatternEdge&, const PatternEdge&) = default;
};

/// The fixed graph H being searched for. Vertices are 0..k-1 internally and the
/// edge order is the one given by the caller. A vertex of minimum degree always
/// sits in the last position.
class PatternGraph {
 public:
  /// Validates and canonicalizes: moves the minimum-degree vertex with the largest
  /// index to position k-1, keeping the relative order of the others.
  static PatternGraph from_edges(int k, const std::vector<std::pair<int, int>>& edges);

  int k() const noexcept { return k_; }
  int m() const noexcept { return static_cast<int>(edges_.size()); }
  int min_degree() const noexcept { return min_degree_; }
  const std::vector<PatternEdge>& edges() const noexcept { return edges_; }
  int degree(int v) const { return degrees_.at(static_cast<std::size_t>(v)); }
  bool has_edge(int a, int b) const;
  std::vector<int> neighbors(int v) const;

  /// Edges of the subgraph induced by vertices 0..u-1, in the fixed edge order.
  std::vector<PatternEdge> prefix_edges(int u) const;

  /// original_vertex()[i] is the caller's 0-based index of canonical vertex i.
  const std::vector<int>& original_vertex() const noexcept { return original_; }

  /// {"k": ..., "edges": [[i, j], ...]}, 1-based, canonical numbering.
  std::string to_json() const;

 private:
  PatternGraph() = default;

  int k_ = 0;
  int min_degree_ = 0;
  std::vector<PatternEdge> edges_;
  std::vector<int> degrees_;
  std::vector<int> original_;
};

/// Parses the pattern JSON format {"k": int, "edges": [[int, int], ...]} (1-based).
/// Throws InvalidPattern on k < 3, isolated vertices, loops, duplicates or
/// out-of-range endpoints.
PatternGraph parse_pattern(std::string_view json_text);

PatternGraph load_pattern_file(const std::string& path);

namespace patterns {
PatternGraph triangle();
PatternGraph path3();
PatternGraph complete(int k);
PatternGraph star(int leaves);
PatternGraph cycle(int k);
}  // namespace patterns

}  // namespace lg
