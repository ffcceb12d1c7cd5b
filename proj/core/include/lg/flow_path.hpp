#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lg/constructions.hpp"
#include "lg/containment.hpp"
#include "lg/learning_graph.hpp"
#include "lg/partite_label.hpp"
#include "lg/rational.hpp"

namespace lg {

struct StageRecord {
  int stage_id = 0;
  StageKind kind = StageKind::Setup;
  int index = 0;
  std::string note;
  std::vector<SlotId> added;  // query variables added by the stage, sorted
};

/// One root-to-sink path of the flow for a fixed witness a_1..a_k.
/// labels[0] is the root (empty label); labels[i+1] is the label after stage i.
struct FlowPath {
  std::string construction;
  int n = 0;
  int r = 0;
  int rs = 0;
  int lambda = 0;  // collision load, 0 for the first construction
  Witness witness;
  std::vector<PartiteLabel> labels;
  std::vector<StageRecord> stages;

  const PartiteLabel& sink() const { return labels.back(); }

  /// Stage-annotated edge-list log (1-based host vertices).
  std::string dump() const;
};

/// Largest lambda with lambda^(d+1) <= r^d, i.e. floor(r^(d/(d+1))).
int default_lambda(int r, int d);

/// Samples a uniformly random flow path stage by stage for `witness` (k distinct
/// host vertices, 0-based). Throws InfeasibleParameters when (r, s) is off the
/// feasible lattice or n is below min_feasible_n, and WitnessClash when a
/// flow-respecting choice cannot be found within the retry budget.
FlowPath materialize_flow_path(const ConstructionPlan& plan, int n, int r, const Rational& s, const Witness& witness,
                               std::uint64_t seed, std::optional<int> lambda = std::nullopt);

struct PathAudit {
  std::vector<std::string> failures;
  int degree_checks = 0;
  int length_checks = 0;
  bool ok() const { return failures.empty(); }
};

/// Vertex-by-vertex degree audit of every block against the stage's type, exact
/// stage lengths, per-stage flow rules, the sink certificate, and the path as a
/// one-flow learning graph passed through validate().
PathAudit audit_flow_path(const ConstructionPlan& plan, const FlowPath& path);

/// The path as a chain learning graph with unit weights and a single unit flow.
LearningGraph<Rational> path_learning_graph(const FlowPath& path);

/// Host graph holding exactly the witness copy of the loaded pattern.
HostGraph witness_host(const ConstructionPlan& plan, int n, const Witness& witness);

/// True iff `label`, an L-vertex at the start of stage t (1 <= t <= u+1), lies on
/// a flow path of witness `a`: undoing the vertex loads a_{t-1}, ..., a_1 in turn
/// must pass through labels of the earlier stages' types, each load joined to
/// exactly the degree rs-1 vertices, and the setup must avoid all of a.
bool on_flow_before_hiding(const ConstructionPlan& plan, const PartiteLabel& label, int t, const Witness& a, int r,
                           int rs);

/// Monte Carlo check of the vertex ratio at the start of stages 1..max_stage: the
/// fraction of random sigma in S_n for which sigma(label) carries flow of a fixed
/// witness, against the exact fraction by enumeration of witnesses.
struct VertexRatioEstimate {
  int stage = 0;
  std::size_t samples = 0;
  double monte_carlo = 0.0;    // mean indicator over (label, sigma) samples
  double exact = 0.0;          // mean exact fraction over the same labels
  double standard_error = 0.0; // of the paired difference, floored at its null value
  double leading_order = 0.0;  // (r/n)^(t-1)
  bool within_3se() const;
};

std::vector<VertexRatioEstimate> vertex_ratio_audit(const ConstructionPlan& plan, int n, int r, const Rational& s,
                                                    std::size_t samples, std::uint64_t seed, int max_stage);

}  // namespace lg
