#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lg/bipartite_type.hpp"
#include "lg/rng.hpp"

namespace lg {

/// Edges (i, j) with i indexing the left side and j the right side.
using BipartiteEdges = std::vector<std::pair<int, int>>;

/// Random simple bipartite graph with the given degree sequences. Uses the
/// configuration model with rejection (on the complement when the graph is dense)
/// and falls back to a Havel-Hakimi realization randomized by degree-preserving
/// switches. Throws Error when the sequences are not realizable.
BipartiteEdges sample_bipartite(Rng& rng, const std::vector<int>& left_degrees,
                                const std::vector<int>& right_degrees);

/// Degree sequences of `type` shuffled over the side positions, then sampled.
BipartiteEdges sample_bipartite(Rng& rng, const BipartiteType& type);

/// Every simple bipartite graph with exactly these degree sequences, in a fixed
/// order. Intended for tiny sides only.
std::vector<BipartiteEdges> enumerate_bipartite(const std::vector<int>& left_degrees,
                                                const std::vector<int>& right_degrees);

/// Every graph whose degree multisets match `type` (all placements of the classes).
std::vector<BipartiteEdges> enumerate_bipartite(const BipartiteType& type);

/// Perfect matching between the rows and columns of a square 0/1 matrix, using only
/// allowed cells, found by augmenting paths in random order. `match[i]` is the
/// column of row i; nullopt when none exists.
std::optional<std::vector<int>> random_perfect_matching(Rng& rng, const std::vector<std::vector<char>>& allowed);

/// Gale-Ryser test.
bool is_bigraphic(std::vector<int> left_degrees, std::vector<int> right_degrees);

}  // namespace lg
