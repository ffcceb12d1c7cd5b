#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lg/bipartite_type.hpp"
#include "lg/host_graph.hpp"
#include "lg/pattern.hpp"

namespace lg {

/// Bipartite block Q_l between the classes of the two endpoints of pattern edge l.
struct LabelBlock {
  int pattern_edge = 0;
  int left_class = 0;   // smaller pattern vertex
  int right_class = 0;  // larger pattern vertex
  std::vector<std::pair<int, int>> edges;  // (left host vertex, right host vertex), sorted

  bool has_edge(int left, int right) const;
  void add_edge(int left, int right);
  int degree(int host_vertex) const;
  friend bool operator==(const LabelBlock&, const LabelBlock&) = default;
};

/// Label of an L-vertex: disjoint classes X_1..X_c of host vertices (class i belongs
/// to pattern vertex i) and one bipartite block per loaded pattern edge.
class PartiteLabel {
 public:
  PartiteLabel() = default;
  explicit PartiteLabel(int class_count) : classes_(static_cast<std::size_t>(class_count)) {}

  int class_count() const noexcept { return static_cast<int>(classes_.size()); }
  const std::vector<int>& members(int cls) const { return classes_.at(static_cast<std::size_t>(cls)); }
  const std::vector<std::vector<int>>& classes() const noexcept { return classes_; }
  const std::vector<LabelBlock>& blocks() const noexcept { return blocks_; }

  void add_class() { classes_.emplace_back(); }
  void insert_member(int cls, int host_vertex);
  void set_members(int cls, std::vector<int> host_vertices);
  /// Drops the vertex from its class and every block edge touching it.
  void remove_vertex(int host_vertex);

  /// Block for pattern edge `pattern_edge`, created on first use.
  LabelBlock& block(int pattern_edge, int left_class, int right_class);
  const LabelBlock* find_block(int pattern_edge) const;

  /// -1 when the host vertex is in no class.
  int class_of(int host_vertex) const;
  int degree_in_block(int pattern_edge, int host_vertex) const;

  /// Degree lists of both sides of a block, in class member order.
  std::pair<std::vector<int>, std::vector<int>> block_degrees(const LabelBlock& b) const;
  bool block_matches(int pattern_edge, const BipartiteType& type) const;

  /// S(label): union of block edges as sorted query slots.
  std::vector<SlotId> variables() const;
  std::size_t edge_count() const;

  /// sigma(label): classes and edges mapped through the host permutation.
  PartiteLabel permuted(std::span<const int> sigma) const;

  /// Empty when classes are disjoint, every block joins the endpoint classes of
  /// its pattern edge, and edges stay inside their block's classes.
  std::string violation(std::span<const PatternEdge> pattern_edges) const;

  std::string to_string() const;
  std::size_t hash() const;

  friend bool operator==(const PartiteLabel&, const PartiteLabel&) = default;

 private:
  std::vector<std::vector<int>> classes_;  // sorted members
  std::vector<LabelBlock> blocks_;         // sorted by pattern edge
};

struct PartiteLabelHash {
  std::size_t operator()(const PartiteLabel& l) const { return l.hash(); }
};

}  // namespace lg
