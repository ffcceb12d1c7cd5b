#pragma once

#include <cstdint>

#include "lg/learning_graph.hpp"
#include "lg/lemmas.hpp"

namespace lg {

struct ToyGraphOptions {
  int max_levels = 6;     // levels below the root, at least 2
  int max_vertices = 50;  // including the root
  int max_flows = 4;
};

/// Random layered learning graph with exact weights and flows for property tests.
/// Every edge joins consecutive levels, every non-final vertex has a child, and
/// S(v) is the union of the parents' sets plus at least one new element. The flows
/// are consistent with `classes` (a random partition of level `pinned_level`): each
/// class receives the same mass under every flow, distributed differently inside it.
struct ToyGraph {
  LearningGraph<Rational> graph;
  int pinned_level = 1;
  OrbitPartition classes;
  EdgeSet pinned_stage;  // edges leaving level `pinned_level`
};

ToyGraph make_toy_graph(std::uint64_t seed, const ToyGraphOptions& options = {});

}  // namespace lg
