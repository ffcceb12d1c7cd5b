#include <gtest/gtest.h>

#include "lg/lemmas.hpp"
#include "lg/rng.hpp"
#include "lg/toy_graphs.hpp"

namespace lg {
namespace {

using Q = Rational;

// Chain root -> a -> b whose single edges cost exactly their lengths (unit weight).
LearningGraph<Q> two_stage_chain(int l1, int l2) {
  LearningGraph<Q> g;
  auto a = g.add_vertex("a");
  auto b = g.add_vertex("b");
  auto e0 = g.add_edge(0, a, Q(1), l1);
  auto e1 = g.add_edge(a, b, Q(1), l2);
  auto y = g.add_flow("y");
  g.set_flow(y, e0, Q(1));
  g.set_flow(y, e1, Q(1));
  return g;
}

// Root splits evenly to a and b; a -> c has length la, b -> d length lb. An extra
// flowless branch root -> z -> w hangs off the root when `dead` is set.
struct ClassFixture {
  LearningGraph<Q> g;
  EdgeSet stage;
  OrbitPartition classes;
};

ClassFixture class_fixture(int la, int lb, bool dead) {
  ClassFixture f;
  auto& g = f.g;
  auto a = g.add_vertex("a");
  auto b = g.add_vertex("b");
  auto c = g.add_vertex("c");
  auto d = g.add_vertex("d");
  auto y = g.add_flow("y");
  auto y2 = g.add_flow("y2");
  auto e0 = g.add_edge(0, a, Q(1), 1);
  auto e1 = g.add_edge(0, b, Q(1), 1);
  auto e2 = g.add_edge(a, c, Q(1), la);
  auto e3 = g.add_edge(b, d, Q(1), lb);
  for (auto yy : {y, y2}) {
    for (auto e : {e0, e1, e2, e3}) g.set_flow(yy, e, Q(1, 2));
  }
  f.stage = {e2, e3};
  f.classes.classes = {{a}, {b}};
  if (dead) {
    auto z = g.add_vertex("z");
    auto w = g.add_vertex("w");
    g.add_edge(0, z, Q(1), 1);
    f.stage.push_back(g.add_edge(z, w, Q(1), 5));
    f.classes.classes.push_back({z});
  }
  return f;
}

TEST(BalanceStages, TwoStagesBoundedBySum) {
  auto g = two_stage_chain(10, 40);
  auto p = consecutive_level_stages(g);
  auto b = balance_stages(g, p);
  EXPECT_EQ(b.stage_complexity[0], RadicalSum(Q(10)));
  EXPECT_EQ(b.stage_complexity[1], RadicalSum(Q(40)));
  EXPECT_EQ(b.bound, RadicalSum(Q(50)));
  auto all = b.graph.all_edges();
  EXPECT_LE(c0(b.graph, all) * c1(b.graph, all), RadicalSum(Q(2500)));
}

TEST(BalanceStages, SingleStageKeepsComplexity) {
  LearningGraph<Q> g;
  auto v = g.add_vertex("v");
  auto e = g.add_edge(0, v, Q(7), 3);
  g.set_flow(g.add_flow("y"), e, Q(1));
  auto b = balance_stages(g, consecutive_level_stages(g));
  EXPECT_EQ(c0(b.graph, b.graph.all_edges()) * c1(b.graph, b.graph.all_edges()), RadicalSum(Q(9)));
  EXPECT_EQ(b.graph.edge(0).weight, RadicalSum(Q(1)));  // 7 * sqrt((3/7)/21)
}

TEST(BalanceStages, EqualStagesGetEqualNegativeComplexity) {
  LearningGraph<Q> g;
  auto a = g.add_vertex("a");
  auto b = g.add_vertex("b");
  auto e0 = g.add_edge(0, a, Q(2), 4);  // C = 4
  auto e1 = g.add_edge(a, b, Q(1, 3), 4);
  auto y = g.add_flow("y");
  g.set_flow(y, e0, Q(1));
  g.set_flow(y, e1, Q(1));
  auto bal = balance_stages(g, consecutive_level_stages(g));
  EXPECT_EQ(c0(bal.graph, EdgeSet{0}), c0(bal.graph, EdgeSet{1}));
}

TEST(BalanceStages, DegenerateStage) {
  LearningGraph<Q> g;
  auto a = g.add_vertex("a");
  auto b = g.add_vertex("b");
  auto e0 = g.add_edge(0, a, Q(1), 0);
  auto e1 = g.add_edge(a, b, Q(1), 1);
  auto y = g.add_flow("y");
  g.set_flow(y, e0, Q(1));
  g.set_flow(y, e1, Q(1));
  EXPECT_THROW(balance_stages(g, consecutive_level_stages(g)), DegenerateStage);
}

TEST(BalanceStages, RejectsOverlappingPartition) {
  auto g = two_stage_chain(1, 1);
  StagePartition p{{{0, 1}, {1}}};
  EXPECT_THROW(balance_stages(g, p), Error);
}

TEST(BalanceStages, ToyGraphsExact) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto toy = make_toy_graph(seed);
    auto p = consecutive_level_stages(toy.graph);
    auto b = balance_stages(toy.graph, p);
    auto all = b.graph.all_edges();
    for (std::size_t i = 0; i < p.stages.size(); ++i) {
      ASSERT_EQ(c0(b.graph, p.stages[i]), b.stage_complexity[i]) << "seed " << seed << " stage " << i;
    }
    RadicalSum whole = c0(b.graph, all) * c1(b.graph, all);
    ASSERT_LE(whole, b.bound * b.bound) << "seed " << seed;
  }
}

TEST(ReweightByClasses, TwoClassesBoundedByMax) {
  auto f = class_fixture(6, 8, false);
  auto rw = reweight_by_classes(f.g, f.stage, f.classes);
  EXPECT_EQ(rw.alpha, (std::vector<Q>{Q(1, 2), Q(1, 2)}));
  EXPECT_EQ(rw.max_class_complexity_squared, Q(64));
  Q sq = complexity_squared(rw.graph, rw.stage);
  EXPECT_LE(sq, Q(64));
  EXPECT_LE(c1(rw.graph, rw.stage), Q(1));
  EXPECT_LE(c0(rw.graph, rw.stage), Q(64));
}

TEST(ReweightByClasses, SingleClassIsScaling) {
  auto f = class_fixture(6, 8, false);
  OrbitPartition one{{{1, 2}}};
  auto before = complexity_squared(f.g, f.stage);
  auto rw = reweight_by_classes(f.g, f.stage, one);
  EXPECT_EQ(complexity_squared(rw.graph, rw.stage), before);
}

TEST(ReweightByClasses, ZeroMassClassDeleted) {
  auto f = class_fixture(6, 8, true);
  auto rw = reweight_by_classes(f.g, f.stage, f.classes);
  ASSERT_EQ(rw.dropped.size(), 3u);
  EXPECT_TRUE(rw.dropped[2]);
  EXPECT_EQ(rw.stage.size(), 2u);
  EXPECT_EQ(rw.graph.edge_count(), f.g.edge_count() - 1);
  EXPECT_LE(complexity_squared(rw.graph, rw.stage), Q(64));
}

TEST(ReweightByClasses, InconsistentFlowsRejected) {
  auto f = class_fixture(6, 8, false);
  f.g.set_flow(1, 0, Q(1, 3));
  f.g.set_flow(1, 2, Q(1, 3));
  f.g.set_flow(1, 1, Q(2, 3));
  f.g.set_flow(1, 3, Q(2, 3));
  EXPECT_THROW(reweight_by_classes(f.g, f.stage, f.classes), Inconsistent);
}

TEST(ReweightByClasses, ToyGraphsExact) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto toy = make_toy_graph(seed);
    auto rw = reweight_by_classes(toy.graph, toy.pinned_stage, toy.classes);
    ASSERT_LE(c1(rw.graph, rw.stage), Q(1)) << "seed " << seed;
    ASSERT_LE(c0(rw.graph, rw.stage), rw.max_class_complexity_squared) << "seed " << seed;
    ASSERT_LE(complexity_squared(rw.graph, rw.stage), rw.max_class_complexity_squared) << "seed " << seed;
  }
}

// N level-1 vertices, one per flow, each with a single unit edge below it.
LearningGraph<Q> search_stage_fixture(int n) {
  LearningGraph<Q> g;
  for (int i = 0; i < n; ++i) {
    auto v = g.add_vertex("v" + std::to_string(i));
    auto w = g.add_vertex("w" + std::to_string(i));
    auto e0 = g.add_edge(0, v, Q(1), 1);
    auto e1 = g.add_edge(v, w, Q(1), 1);
    auto y = g.add_flow("y" + std::to_string(i));
    g.set_flow(y, e0, Q(1));
    g.set_flow(y, e1, Q(1));
  }
  return g;
}

TEST(SimpleStageBound, SearchFixtureIsSqrtN) {
  for (int n : {4, 16, 64}) {
    SimpleStageData<Q> data{Q(1), Q(1), static_cast<std::size_t>(n), 1};
    EXPECT_EQ(simple_stage_bound(data), RadicalSum::sqrt_of(Q(n)));
    auto g = search_stage_fixture(n);
    auto check = verify_simple_stage_bound(g, g.stage(1, 2), g.level_vertices(1));
    EXPECT_TRUE(check.holds);
    EXPECT_EQ(check.bound_squared, Q(n));
    EXPECT_EQ(check.exact_squared, Q(n));
  }
}

TEST(SimpleStageBound, AllVerticesCarryFlow) {
  // one flow spread evenly over every vertex: bound = C(v->)
  LearningGraph<Q> g;
  auto y = g.add_flow("y");
  for (int i = 0; i < 3; ++i) {
    auto v = g.add_vertex();
    auto w = g.add_vertex();
    g.set_flow(y, g.add_edge(0, v, Q(1), 1), Q(1, 3));
    g.set_flow(y, g.add_edge(v, w, Q(2), 5), Q(1, 3));
  }
  auto check = verify_simple_stage_bound(g, g.stage(1, 2), g.level_vertices(1));
  EXPECT_EQ(check.bound_squared, Q(10) * Q(5, 2));
  EXPECT_TRUE(check.holds);
}

TEST(SimpleStageBound, HypothesisViolations) {
  auto g = search_stage_fixture(3);
  // uneven split: flow 0 now uses two vertices with different masses
  g.set_flow(0, 0, Q(1, 3));
  g.set_flow(0, 1, Q(1, 3));
  g.set_flow(0, 2, Q(2, 3));
  g.set_flow(0, 3, Q(2, 3));
  try {
    verify_simple_stage_bound(g, g.stage(1, 2), g.level_vertices(1));
    FAIL() << "expected a violation";
  } catch (const HypothesisViolation& e) {
    EXPECT_EQ(e.clause(), "3");
  }
  // even split over two vertices for flow 0, one vertex for the others
  auto h = search_stage_fixture(3);
  for (EdgeId e : {0, 1, 2, 3}) h.set_flow(0, e, Q(1, 2));
  try {
    verify_simple_stage_bound(h, h.stage(1, 2), h.level_vertices(1));
    FAIL() << "expected a violation";
  } catch (const HypothesisViolation& e) {
    EXPECT_EQ(e.clause(), "2");
  }
  SimpleStageData<Q> empty{Q(1), Q(1), 3, 0};
  EXPECT_THROW(simple_stage_bound(empty), HypothesisViolation);
}

TEST(UniformStageCost, Examples) {
  EXPECT_EQ(uniform_stage_cost(Q(1), Q(3), Q(3), {Q(1)}).cost, RadicalSum(Q(1)));
  EXPECT_EQ(uniform_stage_cost(Q(1), Q(100), Q(1), {Q(1)}).cost, RadicalSum(Q(10)));
  auto three = uniform_stage_cost(Q(2), Q(9), Q(3), {Q(1), Q(4, 3), Q(1, 2)});
  EXPECT_EQ(three.degree_ratio, Q(3));
  EXPECT_EQ(three.max_vertex_ratio, Q(4, 3));
  EXPECT_EQ(three.cost, RadicalSum(Q(4)));
  EXPECT_THROW(uniform_stage_cost(Q(1), Q(1), Q(0), {Q(1)}), Error);
  EXPECT_THROW(uniform_stage_cost(Q(1), Q(1), Q(2), {Q(1)}), Error);
}

TEST(UniformStageCost, EqualsSimpleStageBound) {
  for (int l = 1; l <= 4; ++l) {
    for (int d = 1; d <= 6; ++d) {
      for (int g = 1; g <= d; ++g) {
        for (std::size_t v = 1; v <= 8; ++v) {
          for (std::size_t w = 1; w <= v; ++w) {
            Q ratio(static_cast<long>(v), static_cast<long>(w));
            ratio.canonicalize();
            auto uni = uniform_stage_cost(Q(l), Q(d), Q(g), {ratio});
            auto simple = uniform_stage_as_simple(Q(l), Q(d), Q(g), v, w);
            ASSERT_EQ(uni.cost_squared, simple_stage_bound_squared(simple));
          }
        }
      }
    }
  }
}

TEST(Feasibility, Predicate) {
  EXPECT_TRUE(is_feasible(4, Q(1, 2)));
  EXPECT_EQ(feasibility_violation(5, Q(2, 5)), "r must be even");
  EXPECT_FALSE(is_feasible(4, Q(1, 3)));
  EXPECT_FALSE(is_feasible(4, Q(1)));
  EXPECT_FALSE(is_feasible(4, Q(1, 8)));
  EXPECT_EQ(round_density_down(10, Q(1, 3)), Q(3, 10));
  EXPECT_EQ(round_density_down(10, Q(1, 100)), Q(1, 10));
  EXPECT_EQ(round_density_down(10, Q(1)), Q(9, 10));
}

TEST(EdgeProbability, PlainIsExactlyS) {
  auto p = uniform_edge_probability(4, Q(1, 2), EdgeProbabilityMode::Plain);
  EXPECT_TRUE(p.exact_known);
  EXPECT_EQ(p.exact, Q(1, 2));
  for (int r : {2, 4}) {
    for (int rs = 1; rs <= r; ++rs) {
      Q s(rs, r);
      s.canonicalize();
      EXPECT_EQ(enumerate_plain_edge_probability(r, rs), s) << "r=" << r << " rs=" << rs;
    }
  }
  // complete bipartite
  EXPECT_EQ(enumerate_plain_edge_probability(4, 4), Q(1));
}

TEST(EdgeProbability, PlainSamplingAgrees) {
  auto p = uniform_edge_probability(6, Q(1, 3), EdgeProbabilityMode::Plain, 2000, 3);
  EXPECT_NEAR(p.estimate, 1.0 / 3.0, 1e-12);  // every graph of the type has exactly r*rs edges
}

TEST(EdgeProbability, HiddenAtLeastQuarterOfS) {
  auto p = uniform_edge_probability(4, Q(1, 2), EdgeProbabilityMode::Hidden, 100000, 1);
  EXPECT_EQ(p.samples, 100000u);
  EXPECT_GT(p.standard_error, 0.0);
  EXPECT_GE(p.estimate + 3 * p.standard_error, 0.125);
  auto exact = enumerate_hidden_edge_probability(4, 2);
  EXPECT_LE(std::abs(p.estimate - to_double(exact.average)), 3 * p.standard_error);
  EXPECT_GE(exact.average, Q(1, 8));
}

TEST(EdgeProbability, Deterministic) {
  auto a = uniform_edge_probability(6, Q(1, 2), EdgeProbabilityMode::Hidden, 5000, 9);
  auto b = uniform_edge_probability(6, Q(1, 2), EdgeProbabilityMode::Hidden, 5000, 9);
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_EQ(a.standard_error, b.standard_error);
}

TEST(EdgeProbability, Infeasible) {
  EXPECT_THROW(uniform_edge_probability(3, Q(1, 3), EdgeProbabilityMode::Plain), InfeasibleParameters);
}

TEST(LemmaCheck, Json) {
  LemmaCheck c{"simple-stage", "bound", 2.0, 3.0, true};
  auto j = to_json(c);
  EXPECT_EQ(j["lemma"], "simple-stage");
  EXPECT_EQ(j["holds"], true);
}

}  // namespace
}  // namespace lg
