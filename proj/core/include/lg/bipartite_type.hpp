#pragma once

#include <string>
#include <vector>

namespace lg {

/// `count` vertices of degree `degree`.
struct DegreeClass {
  int count = 0;
  int degree = 0;
  friend bool operator==(const DegreeClass&, const DegreeClass&) = default;
};

/// Degree-sequence descriptor of a bipartite graph between Y1 (left) and Y2 (right):
/// ({(n_1,d_1),...}, {(m_1,g_1),...}).
struct BipartiteType {
  std::vector<DegreeClass> left;
  std::vector<DegreeClass> right;

  int left_size() const;
  int right_size() const;
  int edge_count() const;  // left-side degree sum

  /// Empty when the type is realizable-shaped: positive side sizes, handshake,
  /// every degree at most the opposite side size. Otherwise the first violation.
  std::string violation() const;
  bool valid() const { return violation().empty(); }

  /// Per-vertex degree list of one side, classes expanded in order.
  static std::vector<int> expand(const std::vector<DegreeClass>& side);

  /// True iff the degree multisets of both sides equal the type's.
  bool matches(std::vector<int> left_degrees, std::vector<int> right_degrees) const;

  std::string to_string() const;

  friend bool operator==(const BipartiteType&, const BipartiteType&) = default;
};

/// The block types used by the staged construction (rs = r*s).
namespace block_types {
/// Stage 0 and untouched blocks: ({(r-1-rs, rs), (rs, rs-1)}, same).
BipartiteType setup(int r, int rs);
/// Block between a completed class B_i and a pending class A_j.
BipartiteType half_loaded(int r, int rs);
/// Both endpoint classes completed: ({(r, rs)}, {(r, rs)}).
BipartiteType regular(int r, int rs);
/// After hiding: ({(r/2, rs), (r/2, rs+1)}, same).
BipartiteType hidden(int r, int rs);
/// After loading the witness edge: ({(r/2-1, rs), (r/2+1, rs+1)}, same).
BipartiteType hidden_loaded(int r, int rs);
/// Collision block between B_i (left) and the single searched vertex (right).
BipartiteType collision(int r, int edges);
}  // namespace block_types

}  // namespace lg
