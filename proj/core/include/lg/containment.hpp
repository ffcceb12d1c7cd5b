#pragma once

#include <optional>
#include <span>
#include <vector>

#include "lg/host_graph.hpp"
#include "lg/pattern.hpp"

namespace lg {

struct ContainmentOptions {
  /// The explicit oracle refuses hosts larger than this.
  int max_vertices = 64;
};

/// Witness a_1..a_k: witness[i] is the host vertex playing pattern vertex i.
using Witness = std::vector<int>;

/// Subgraph (not induced) containment by backtracking over injections in
/// lexicographic order; the returned witness is the lexicographically smallest.
std::optional<Witness> contains_subgraph(const HostGraph& host, const PatternGraph& pattern,
                                         const ContainmentOptions& options = {});

/// Same search for an arbitrary edge list over `vertex_count` pattern vertices
/// (used for prefix subgraphs, which may have isolated vertices).
std::optional<Witness> find_embedding(const HostGraph& host, int vertex_count,
                                      std::span<const PatternEdge> edges,
                                      const ContainmentOptions& options = {});

/// True iff the positive answers inside the queried slots already contain a copy
/// of the pattern, so that every host agreeing with `host` on `slots` contains it.
bool is_certificate(std::span<const SlotId> slots, const HostGraph& host, const PatternGraph& pattern);

bool is_certificate(std::span<const SlotId> slots, const HostGraph& host, int vertex_count,
                    std::span<const PatternEdge> edges);

}  // namespace lg
