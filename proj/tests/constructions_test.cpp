#include <gtest/gtest.h>

#include <algorithm>

#include "lg/constructions.hpp"
#include "lg/errors.hpp"
#include "lg/flow_path.hpp"
#include "lg/lemmas.hpp"
#include "lg/rng.hpp"

namespace lg {
namespace {

using Q = Rational;

Q frac(long a, long b) { return make_rational(a, b); }

// n^a r^b s^g lambda^d
CostTerm monomial(Q a, Q b, Q g, Q d = 0) { return {1.0, a, b, g, d}; }

bool same_exponents(const CostTerm& x, const CostTerm& y) {
  return x.n_exp == y.n_exp && x.r_exp == y.r_exp && x.s_exp == y.s_exp && x.lambda_exp == y.lambda_exp;
}

#define EXPECT_TERM(actual, expected) \
  EXPECT_TRUE(same_exponents((actual), (expected))) << (actual).to_string() << " vs " << (expected).to_string()

TEST(CostTerm, Algebra) {
  auto t = CostTerm::s() * CostTerm::r(2);
  EXPECT_EQ(t.to_string(), "r^2*s");
  EXPECT_TERM(CostTerm::n_over_r(Q(3, 2)).sqrt(), monomial(Q(3, 4), Q(-3, 4), 0));
  EXPECT_DOUBLE_EQ(t.evaluate(100, 10, 0.5), 50.0);
  EXPECT_EQ(t.exponent_at({Q(2, 3), Q(1, 27), 0}), Q(4, 3) - Q(1, 27));
  EXPECT_TERM(t / CostTerm::r(), CostTerm::s() * CostTerm::r());
}

TEST(G1Plan, TriangleFull) {
  auto plan = g1_stage_specs(patterns::triangle(), 3);
  ASSERT_EQ(plan.stages.size(), 8u);  // u + m + 2
  EXPECT_EQ(plan.u, 3);
  EXPECT_EQ(plan.m(), 3);
  EXPECT_TERM(plan.stages[0].cost(), monomial(0, 2, 1));
  for (int t = 1; t <= 3; ++t) {
    // s r sqrt(n) (n/r)^((t-1)/2)
    EXPECT_TERM(plan.stages[t].cost(), monomial(Q(1, 2) + frac(t - 1, 2), 1 - frac(t - 1, 2), 1));
  }
  EXPECT_TERM(plan.stages[4].cost(), monomial(Q(3, 2), 1 - Q(3, 2), 0));
  for (int t = 1; t <= 3; ++t) {
    EXPECT_TERM(plan.stages[4 + t].cost(), monomial(Q(3, 2), 1 - Q(3, 2), -frac(t - 1, 2)));
  }
  EXPECT_EQ(plan.stages.back().kind, StageKind::LoadEdge);
  EXPECT_FALSE(plan.subroutine);
}

TEST(G1Plan, TrianglePrefix) {
  auto plan = g1_stage_specs(patterns::triangle(), 2);
  ASSERT_EQ(plan.stages.size(), 5u);
  EXPECT_EQ(plan.m(), 1);
  EXPECT_TERM(plan.stages.back().cost(), monomial(1, 0, 0));  // r (n/r)
}

TEST(G1Plan, DensityOneFlattensEdgeStages) {
  for (const auto& h : {patterns::triangle(), patterns::complete(4), patterns::cycle(5)}) {
    auto plan = g1_stage_specs(h, h.k());
    int hiding = plan.u + 1;
    double ref = plan.stages[static_cast<std::size_t>(hiding)].cost().evaluate(1e4, 40, 1.0);
    for (std::size_t i = static_cast<std::size_t>(hiding); i < plan.stages.size(); ++i) {
      EXPECT_NEAR(plan.stages[i].cost().evaluate(1e4, 40, 1.0) / ref, 1.0, 1e-12);
    }
  }
}

TEST(G1Plan, RejectsEdgelessPrefix) {
  EXPECT_THROW(g1_stage_specs(patterns::triangle(), 1), Error);
  EXPECT_THROW(g1_stage_specs(patterns::triangle(), 4), Error);
}

TEST(G2Plan, FinalStageCosts) {
  auto tri = g2_plan(patterns::triangle());
  ASSERT_TRUE(tri.subroutine);
  EXPECT_EQ(tri.subroutine->d, 2);
  // s^(-1/2) (n/r) sqrt(n) r^(2/3)
  EXPECT_TERM(tri.stages.back().cost(), monomial(Q(3, 2), Q(-1, 3), Q(-1, 2)));
  auto k4 = g2_plan(patterns::complete(4));
  EXPECT_EQ(k4.m(), 3);
  // s^(-3/2) (n/r)^(3/2) sqrt(n) r^(3/4)
  EXPECT_TERM(k4.stages.back().cost(), monomial(2, Q(-3, 4), Q(-3, 2)));
}

TEST(G2Plan, StarLoadsTwoEdges) {
  auto plan = g2_plan(patterns::star(3));
  EXPECT_EQ(plan.m(), 2);
  EXPECT_EQ(plan.subroutine->d, 1);
}

TEST(G2Plan, PrefixStagesMatchFirstConstruction) {
  for (const auto& h : {patterns::triangle(), patterns::complete(4), patterns::complete(5), patterns::cycle(5),
                        patterns::path3()}) {
    auto g2 = g2_plan(h);
    auto g1 = g1_stage_specs(h, h.k() - 1);
    ASSERT_EQ(g2.stages.size(), g1.stages.size() + 1);
    for (std::size_t i = 0; i < g1.stages.size(); ++i) EXPECT_EQ(g2.stages[i], g1.stages[i]) << i;
    EXPECT_EQ(g2.stages.back().kind, StageKind::Collision);
  }
}

TEST(Collision, StageCosts) {
  auto specs = collision_subroutine_specs(3);
  ASSERT_EQ(specs.size(), 4u);
  EXPECT_TERM(specs[0].cost(), monomial(Q(1, 2), 0, 0, 1));
  for (int t = 1; t <= 3; ++t) {
    EXPECT_TERM(specs[static_cast<std::size_t>(t)].cost(),
                monomial(Q(1, 2), Q(1, 2) + frac(t - 1, 2), 0, -frac(t - 1, 2)));
  }
}

TEST(Collision, OptimalLambda) {
  EXPECT_TERM(optimal_lambda(2), monomial(0, Q(2, 3), 0));
  EXPECT_TERM(optimal_collision_cost(2), monomial(Q(1, 2), Q(2, 3), 0));
  EXPECT_EQ(optimal_collision_cost(2).exponent_at({Q(2, 3), 0, 0}), Q(17, 18));
  EXPECT_TERM(optimal_lambda(1), monomial(0, Q(1, 2), 0));
  auto d1 = collision_stage_costs(1, 1e6, 1e4, 100);
  EXPECT_NEAR(*std::max_element(d1.begin(), d1.end()), std::sqrt(1e6 * 1e4), 1e-6);
}

TEST(Collision, LambdaEqualsR) {
  auto c = collision_stage_costs(4, 1e6, 64, 64);
  for (std::size_t t = 1; t < c.size(); ++t) EXPECT_NEAR(c[t], std::sqrt(1e6 * 64), 1e-6);
  EXPECT_THROW(collision_stage_costs(2, 1e6, 64, 65), Error);
  EXPECT_THROW(collision_stage_costs(2, 1e6, 64, 0), Error);
}

TEST(Walk, TriangleAtThreeFifths) {
  auto w = walk_exponents(quantum_walk_costs(patterns::triangle()), Q(3, 5));
  EXPECT_EQ(w.setup, Q(6, 5));
  EXPECT_EQ(w.update, Q(13, 10));
  EXPECT_EQ(w.check, Q(13, 10));
}

TEST(Walk, BalancedAtOneMinusOneOverK) {
  for (int k = 3; k <= 9; ++k) {
    auto h = patterns::complete(k);  // d = k - 1
    auto w = walk_exponents(quantum_walk_costs(h), 1 - Q(1, k));
    EXPECT_EQ(w.setup, 2 - frac(2, k));
    EXPECT_EQ(w.update, 2 - frac(2, k));
    EXPECT_LT(w.check, 2 - frac(2, k));
  }
}

TEST(Plan, Json) {
  auto j = g2_plan(patterns::triangle()).to_json();
  EXPECT_EQ(j["construction"], "g2");
  EXPECT_EQ(j["stages"].size(), 6u);  // stages 0..4 plus the collision stage
  EXPECT_TRUE(j["stages"][0].contains("cost"));
}

TEST(ExactLengths, TriangleGolden) {
  auto plan = g1_stage_specs(patterns::triangle(), 3);
  const int r = 4, rs = 2;
  // setup: per block (r-1-rs)*rs + rs*(rs-1) edges
  EXPECT_EQ(exact_stage_length(plan, 0, r, rs), 3 * ((r - 1 - rs) * rs + rs * (rs - 1)));
  for (int t = 1; t <= 3; ++t) EXPECT_EQ(exact_stage_length(plan, t, r, rs), 2 * rs);
  EXPECT_EQ(exact_stage_length(plan, 4, r, rs), 3 * r / 2);
  for (int t = 5; t <= 7; ++t) EXPECT_EQ(exact_stage_length(plan, t, r, rs), 1);
  EXPECT_EQ(min_feasible_n(plan, r), 3 * (r - 1) + 3);
}

Witness random_witness(std::uint64_t seed, int n, int k) {
  Rng rng = make_stream(seed, 77);
  auto w = sample_subset(rng, n, k);
  shuffle(w, rng);
  return w;
}

TEST(FlowPath, TriangleFirstConstruction) {
  auto h = patterns::triangle();
  auto plan = g1_stage_specs(h, 3);
  Witness w{0, 1, 2};
  auto path = materialize_flow_path(plan, 14, 4, Q(1, 2), w, 1);
  auto audit = audit_flow_path(plan, path);
  EXPECT_TRUE(audit.ok()) << (audit.failures.empty() ? "" : audit.failures.front());
  EXPECT_GT(audit.degree_checks, 0);
  EXPECT_EQ(static_cast<int>(path.labels.size()), materialized_stage_count(plan) + 1);
  EXPECT_TRUE(is_certificate(path.sink().variables(), witness_host(plan, 14, w), h));
  for (std::size_t e = 0; e < h.edges().size(); ++e) {
    const auto& pe = h.edges()[e];
    EXPECT_TRUE(path.sink().find_block(static_cast<int>(e))->has_edge(w[pe.a], w[pe.b]));
    EXPECT_EQ(path.sink().degree_in_block(static_cast<int>(e), w[pe.a]), 3);
    EXPECT_EQ(path.sink().degree_in_block(static_cast<int>(e), w[pe.b]), 3);
  }
  EXPECT_TRUE(validate(path_learning_graph(path)).ok());
}

TEST(FlowPath, TriangleSecondConstruction) {
  auto h = patterns::triangle();
  auto plan = g2_plan(h);
  Witness w{5, 9, 2};
  auto path = materialize_flow_path(plan, 14, 4, Q(1, 2), w, 3);
  auto audit = audit_flow_path(plan, path);
  EXPECT_TRUE(audit.ok()) << (audit.failures.empty() ? "" : audit.failures.front());
  EXPECT_GT(path.lambda, 0);
  auto vars = path.sink().variables();
  for (auto [a, b] : {std::pair{5, 9}, std::pair{5, 2}, std::pair{9, 2}}) {
    EXPECT_TRUE(std::binary_search(vars.begin(), vars.end(), slot_id(a, b)));
  }
  EXPECT_TRUE(is_certificate(vars, witness_host(plan, 14, w), h));
}

TEST(FlowPath, NearCompleteDensity) {
  auto plan = g1_stage_specs(patterns::triangle(), 3);
  auto path = materialize_flow_path(plan, 14, 4, Q(3, 4), {3, 7, 11}, 5);
  EXPECT_TRUE(audit_flow_path(plan, path).ok());
}

TEST(FlowPath, ManySeedsAudit) {
  for (const auto& h : {patterns::triangle(), patterns::path3(), patterns::cycle(4)}) {
    for (const auto& plan : {g1_stage_specs(h, h.k()), g2_plan(h)}) {
      int n = min_feasible_n(plan, 4) + 2;
      for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto path = materialize_flow_path(plan, n, 4, Q(1, 2), random_witness(seed, n, h.k()), seed);
        auto audit = audit_flow_path(plan, path);
        ASSERT_TRUE(audit.ok()) << plan.construction << " k=" << h.k() << " seed " << seed << ": "
                                << audit.failures.front();
      }
    }
  }
}

TEST(FlowPath, Deterministic) {
  auto plan = g2_plan(patterns::complete(4));
  auto a = materialize_flow_path(plan, 20, 4, Q(1, 2), {1, 4, 8, 12}, 42);
  auto b = materialize_flow_path(plan, 20, 4, Q(1, 2), {1, 4, 8, 12}, 42);
  EXPECT_EQ(a.dump(), b.dump());
  auto c = materialize_flow_path(plan, 20, 4, Q(1, 2), {1, 4, 8, 12}, 43);
  EXPECT_NE(a.dump(), c.dump());
}

TEST(FlowPath, Infeasible) {
  auto plan = g1_stage_specs(patterns::triangle(), 3);
  EXPECT_THROW(materialize_flow_path(plan, 14, 5, Q(2, 5), {0, 1, 2}, 1), InfeasibleParameters);
  EXPECT_THROW(materialize_flow_path(plan, 11, 4, Q(1, 2), {0, 1, 2}, 1), InfeasibleParameters);
  EXPECT_THROW(materialize_flow_path(plan, 14, 4, Q(1, 2), {0, 1, 1}, 1), Error);
}

TEST(FlowPath, BrokenPathFailsAudit) {
  auto plan = g1_stage_specs(patterns::triangle(), 3);
  auto path = materialize_flow_path(plan, 14, 4, Q(1, 2), {0, 1, 2}, 1);
  path.labels.back().remove_vertex(0);
  EXPECT_FALSE(audit_flow_path(plan, path).ok());
}

TEST(FlowPath, DefaultLambda) {
  EXPECT_EQ(default_lambda(8, 2), 4);   // 4^3 = 64 = 8^2
  EXPECT_EQ(default_lambda(9, 1), 3);
  EXPECT_EQ(default_lambda(10, 1), 3);
  EXPECT_EQ(default_lambda(2, 3), 1);
}

TEST(VertexRatio, MonteCarloMatchesEnumeration) {
  auto plan = g1_stage_specs(patterns::triangle(), 3);
  auto est = vertex_ratio_audit(plan, 14, 4, Q(1, 2), 2000, 7, plan.u);
  ASSERT_EQ(est.size(), 3u);
  for (const auto& e : est) {
    EXPECT_TRUE(e.within_3se()) << "stage " << e.stage << " mc " << e.monte_carlo << " exact " << e.exact;
    EXPECT_GT(e.exact, 0.0);
  }
  EXPECT_DOUBLE_EQ(est[0].leading_order, 1.0);
  EXPECT_DOUBLE_EQ(est[1].leading_order, 4.0 / 14.0);
  // each further load constrains the label more
  EXPECT_GT(est[0].exact, est[1].exact);
  EXPECT_GT(est[1].exact, est[2].exact);
}

}  // namespace
}  // namespace lg
