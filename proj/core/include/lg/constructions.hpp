#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "lg/bipartite_type.hpp"
#include "lg/cost_term.hpp"
#include "lg/pattern.hpp"

namespace lg {

enum class StageKind {
  Setup,          // stage 0
  LoadVertex,     // stage t, 1 <= t <= u
  Hiding,         // stage u+1
  LoadEdge,       // stage u+1+t, 1 <= t <= m
  Collision,      // final stage of the second construction (subroutine at optimal lambda)
  CollisionSetup, // subroutine stage 0
  CollisionEdge,  // subroutine stage t, 1 <= t <= d
};

std::string to_string(StageKind kind);

/// Orbit-compressed description of one stage: leading-order length, degree ratio
/// d/g and maximum vertex ratio, with cost = length * sqrt(degree_ratio * vertex_ratio).
struct StageSpec {
  int id = 0;
  StageKind kind = StageKind::Setup;
  int index = 0;  // t for the indexed kinds
  CostTerm length;
  CostTerm degree_ratio;
  CostTerm vertex_ratio;
  std::string description;

  CostTerm cost() const { return length * (degree_ratio * vertex_ratio).sqrt(); }
  friend bool operator==(const StageSpec&, const StageSpec&) = default;
};

/// Search plus d-wise collision attached below every vertex at the end of the first
/// construction. The final stage costs outer * (subroutine cost).
struct CollisionSubroutine {
  int d = 0;
  CostTerm outer;  // sqrt of the maximum vertex ratio over [u]
  std::vector<StageSpec> stages;
};

struct ConstructionPlan {
  PatternGraph pattern;
  std::string construction;  // "g1" or "g2"
  int u = 0;
  std::vector<int> loaded_edges;  // indices into pattern.edges() of H_[1,u], in load order
  std::vector<StageSpec> stages;
  std::optional<CollisionSubroutine> subroutine;

  int m() const { return static_cast<int>(loaded_edges.size()); }
  /// Big-O constants are dropped from every CostTerm.
  static constexpr bool leading_order = true;

  nlohmann::json to_json() const;
};

/// Stages 0..u+m+1 of the first construction over H_[1,u].
ConstructionPlan g1_stage_specs(const PatternGraph& h, int u);

/// First construction with u = k-1 followed by the collision stage.
ConstructionPlan g2_plan(const PatternGraph& h);

/// Subroutine stage costs [lambda sqrt(n)] ++ [sqrt(nr) (r/lambda)^((t-1)/2), t = 1..d].
std::vector<StageSpec> collision_subroutine_specs(int d);

/// lambda* = r^(d/(d+1)) and the subroutine cost sqrt(n) r^(d/(d+1)) there.
CostTerm optimal_lambda(int d);
CostTerm optimal_collision_cost(int d);

/// Numeric subroutine stage costs at concrete (n, r, lambda); 1 <= lambda <= r.
std::vector<double> collision_stage_costs(int d, double n, double r, double lambda);

/// Setup S, aggregated update U and aggregated checking C of the Johnson-graph walk.
struct WalkCosts {
  CostTerm setup;
  CostTerm update;
  CostTerm check;
};

WalkCosts quantum_walk_costs(const PatternGraph& h);

/// Exponents of S, U, C at r = n^x.
struct WalkExponents {
  Rational setup;
  Rational update;
  Rational check;
};

WalkExponents walk_exponents(const WalkCosts& costs, const Rational& x);

// ---------------------------------------------------------------------------
// Exact (verification-mode) stage data

/// Number of query variables added by stage `stage_id` of `plan` at concrete r, rs
/// (and lambda for the collision stages, whose ids follow the first construction).
long exact_stage_length(const ConstructionPlan& plan, int stage_id, int r, int rs, int lambda = 0);

/// Total stage count of a materialized path: the first construction's stages, then
/// for "g2" the d+1 subroutine stages.
int materialized_stage_count(const ConstructionPlan& plan);

/// Kind and index of materialized stage `stage_id`.
std::pair<StageKind, int> materialized_stage(const ConstructionPlan& plan, int stage_id);

/// Expected type of every block (keyed by pattern edge index) at the end of
/// materialized stage `stage_id`.
std::vector<std::pair<int, BipartiteType>> expected_block_types(const ConstructionPlan& plan, int stage_id, int r,
                                                                int rs, int lambda = 0);

/// Smallest n for which the setup stage can avoid all k witness vertices.
int min_feasible_n(const ConstructionPlan& plan, int r);

}  // namespace lg
