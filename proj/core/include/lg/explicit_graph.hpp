#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "lg/constructions.hpp"
#include "lg/containment.hpp"
#include "lg/learning_graph.hpp"
#include "lg/partite_label.hpp"
#include "lg/rational.hpp"

namespace lg {

/// A fully materialized learning graph whose vertices are partite labels.
/// Flow y belongs to witnesses[y]; vertex ids are topologically ordered.
struct LabeledLearningGraph {
  ConstructionPlan plan;
  int n = 0;
  int r = 0;
  int rs = 0;
  LearningGraph<Rational> graph;
  std::vector<PartiteLabel> labels;  // per vertex
  std::vector<int> level;            // per vertex, root = 0
  std::vector<Witness> witnesses;    // per flow
  std::unordered_map<PartiteLabel, VertexId, PartiteLabelHash> index;
  std::map<std::pair<VertexId, VertexId>, EdgeId> edge_index;

  std::optional<VertexId> find(const PartiteLabel& label) const;
  std::optional<EdgeId> find_edge(VertexId from, VertexId to) const;
  /// True iff the sink variables hold a copy of the loaded pattern on witnesses[y].
  bool certificate(const VarSet& vars, FlowId y) const;
};

/// Every L-vertex and transition of the first construction with u = k for a tiny
/// host size, one flow per ordered witness. Each flow leaves a flow-carrying
/// vertex uniformly over the out-edges allowed by its witness. Throws Error when
/// more than `max_vertices` labels would be generated.
LabeledLearningGraph explicit_g1(const PatternGraph& h, int n, int r, const Rational& s,
                                 std::size_t max_vertices = 200000);

}  // namespace lg
