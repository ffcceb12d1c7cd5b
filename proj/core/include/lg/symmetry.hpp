#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lg/explicit_graph.hpp"
#include "lg/learning_graph.hpp"
#include "lg/rational.hpp"

namespace lg {

/// Action of S_n on the vertices of an explicit learning graph. `apply` returns
/// the image of v under sigma, or nullopt when the image is not a vertex.
struct PermutationAction {
  int n = 0;
  std::function<std::optional<VertexId>(VertexId, std::span<const int>)> apply;
};

/// Acts on labels of a labeled graph.
PermutationAction label_action(const LabeledLearningGraph& g);

/// Acts on variable sets: v maps to the unique vertex holding sigma(S(v)).
/// Vertices sharing a variable set are left without image.
PermutationAction variable_action(const LearningGraph<Rational>& g, int n);

/// Union-find orbits of the vertices under adjacent transpositions.
std::vector<int> orbit_classes(const LearningGraph<Rational>& g, const PermutationAction& action);

struct TransitivityReport {
  bool transitive = false;
  bool exhaustive = false;             // brute force covered all of S_n
  std::vector<std::vector<int>> taus;  // taus[y] maps flow 0 to flow y
  std::optional<std::size_t> failed_flow;
  bool consistent = false;             // p_y([u]^+) equal across flows for every orbit
  std::string detail;
  nlohmann::json to_json() const;
};

/// Searches, for every flow y, a tau with p_0(e) = p_y(tau(e)) on every edge.
/// Candidates come from `hints` (tau built from witness correspondences) and,
/// for n <= 8, from all of S_n. On success also compares the orbit outflows.
TransitivityReport check_transitive_action(const LearningGraph<Rational>& g, const PermutationAction& action,
                                           const std::vector<std::vector<int>>& hints = {});

/// Witness-correspondence taus for a labeled graph: taus[y] sends witnesses[0] to
/// witnesses[y] and the remaining vertices in increasing order.
std::vector<std::vector<int>> witness_taus(const LabeledLearningGraph& g);

struct SymmetryReport {
  int target_class = 0;
  bool uniform_split = true;     // hypothesis 1
  bool in_degree_counts = true;  // hypothesis 2
  bool conclusion = true;        // incoming flow in {0, alpha_y([u])}
  bool common_w_size = true;     // |W_{y,[u]}| independent of y
  std::vector<std::size_t> w_sizes;
  std::vector<Rational> alphas;
  std::vector<std::string> violations;
  bool ok() const { return uniform_split && in_degree_counts && conclusion && common_w_size; }
  nlohmann::json to_json() const;
};

/// Checks, for the vertex class `target` of `classes`: every flow-carrying
/// predecessor sends its flow into [u] uniformly over a common number of edges
/// g+([w],[u]); every flow-receiving vertex of [u] has a common number
/// g-([w],[u]) of flow-carrying incoming edges from each class [w]; and the
/// conclusion of the lemma.
SymmetryReport check_symmetry_hypotheses(const LearningGraph<Rational>& g, const std::vector<int>& classes, int target);

}  // namespace lg
