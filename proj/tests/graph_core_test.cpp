#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "lg/bipartite_sampler.hpp"
#include "lg/bipartite_type.hpp"
#include "lg/containment.hpp"
#include "lg/errors.hpp"
#include "lg/host_graph.hpp"
#include "lg/lemmas.hpp"
#include "lg/partite_label.hpp"
#include "lg/pattern.hpp"
#include "lg/rng.hpp"

namespace lg {
namespace {

// Independent oracle: tries every ordered k-tuple of distinct host vertices.
bool brute_contains(const HostGraph& g, const PatternGraph& h) {
  std::vector<int> perm(static_cast<std::size_t>(g.n()));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> pick(static_cast<std::size_t>(g.n()), 0);
  std::fill(pick.begin(), pick.begin() + h.k(), 1);
  std::sort(pick.begin(), pick.end());
  do {
    std::vector<int> chosen;
    for (int v = 0; v < g.n(); ++v) {
      if (pick[static_cast<std::size_t>(v)]) chosen.push_back(v);
    }
    do {
      bool ok = true;
      for (const auto& e : h.edges()) {
        if (!g.has_edge(chosen[static_cast<std::size_t>(e.a)], chosen[static_cast<std::size_t>(e.b)])) {
          ok = false;
          break;
        }
      }
      if (ok) return true;
    } while (std::next_permutation(chosen.begin(), chosen.end()));
  } while (std::next_permutation(pick.begin(), pick.end()));
  return false;
}

HostGraph random_host(Rng& rng, int n, double p) {
  HostGraph g(n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (uniform_real(rng) < p) g.add_edge(a, b);
    }
  }
  return g;
}

std::vector<SlotId> all_slots(const HostGraph& g) {
  std::vector<SlotId> out;
  for (auto [a, b] : g.edges()) out.push_back(slot_id(a, b));
  std::sort(out.begin(), out.end());
  return out;
}

TEST(PatternGraph, TriangleParses) {
  auto h = parse_pattern(R"({"k": 3, "edges": [[1,2],[1,3],[2,3]]})");
  EXPECT_EQ(h.k(), 3);
  EXPECT_EQ(h.m(), 3);
  EXPECT_EQ(h.min_degree(), 2);
}

TEST(PatternGraph, PathPutsLeafLast) {
  auto h = parse_pattern(R"({"k": 3, "edges": [[1,2],[2,3]]})");
  EXPECT_EQ(h.min_degree(), 1);
  EXPECT_EQ(h.degree(h.k() - 1), 1);
  // largest-index leaf is already last, so numbering is unchanged
  EXPECT_EQ(h.original_vertex().back(), 2);
}

TEST(PatternGraph, StarPutsLeafLast) {
  auto h = patterns::star(3);
  EXPECT_EQ(h.k(), 4);
  EXPECT_EQ(h.degree(3), 1);
  EXPECT_EQ(static_cast<int>(h.prefix_edges(3).size()), 2);
}

TEST(PatternGraph, Rejections) {
  EXPECT_THROW(parse_pattern(R"({"k": 2, "edges": [[1,2]]})"), InvalidPattern);
  EXPECT_THROW(parse_pattern(R"({"k": 3, "edges": [[1,2]]})"), InvalidPattern);            // isolated
  EXPECT_THROW(parse_pattern(R"({"k": 3, "edges": [[1,1],[1,2],[2,3]]})"), InvalidPattern);  // loop
  EXPECT_THROW(parse_pattern(R"({"k": 3, "edges": [[1,2],[2,1],[2,3]]})"), InvalidPattern);  // duplicate
  EXPECT_THROW(parse_pattern(R"({"k": 3, "edges": [[1,2],[2,4]]})"), InvalidPattern);        // range
  EXPECT_THROW(parse_pattern("not json"), InvalidPattern);
  try {
    parse_pattern(R"({"k": 2, "edges": [[1,2]]})");
  } catch (const InvalidPattern& e) {
    EXPECT_NE(std::string(e.what()).find("k must be >= 3"), std::string::npos);
  }
}

TEST(PatternGraph, JsonRoundTrip) {
  for (const auto& h : {patterns::triangle(), patterns::complete(5), patterns::cycle(6), patterns::star(4)}) {
    auto back = parse_pattern(h.to_json());
    EXPECT_EQ(back.edges(), h.edges());
    EXPECT_EQ(back.min_degree(), h.min_degree());
  }
}

TEST(HostGraph, EdgeListRoundTrip) {
  auto g = HostGraph::parse_edge_list("# square\n1 2\n2 3\n\n3 4\n4 1\n");
  EXPECT_EQ(g.n(), 4);
  EXPECT_EQ(g.edge_count(), 4u);
  EXPECT_TRUE(g.has_edge(0, 3));
  EXPECT_FALSE(g.has_edge(0, 2));
  auto back = HostGraph::parse_edge_list(g.to_edge_list(), 4);
  EXPECT_EQ(back.edges(), g.edges());
}

TEST(HostGraph, RejectsLoops) {
  HostGraph g(3);
  EXPECT_THROW(g.add_edge(1, 1), Error);
  EXPECT_THROW(g.add_edge(0, 3), Error);
}

TEST(Containment, CliqueContainsTriangle) {
  HostGraph k4(4);
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) k4.add_edge(a, b);
  }
  auto w = contains_subgraph(k4, patterns::triangle());
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, (Witness{0, 1, 2}));
}

TEST(Containment, FourCycleIsTriangleFree) {
  HostGraph c4(4);
  for (int v = 0; v < 4; ++v) c4.add_edge(v, (v + 1) % 4);
  EXPECT_FALSE(contains_subgraph(c4, patterns::triangle()));
}

TEST(Containment, AgreesWithBruteForceOnRandomHosts) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Rng rng = make_stream(seed, 1);
    auto g = random_host(rng, 8, 0.5);
    for (const auto& h : {patterns::path3(), patterns::triangle(), patterns::cycle(4)}) {
      auto w = contains_subgraph(g, h);
      ASSERT_EQ(w.has_value(), brute_contains(g, h)) << "seed " << seed;
      if (w) {
        for (const auto& e : h.edges()) {
          EXPECT_TRUE(g.has_edge((*w)[static_cast<std::size_t>(e.a)], (*w)[static_cast<std::size_t>(e.b)]));
        }
      }
    }
  }
}

TEST(Containment, MonotoneUnderEdgeAddition) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng = make_stream(seed, 2);
    auto g = random_host(rng, 9, 0.3);
    bool before = contains_subgraph(g, patterns::triangle()).has_value();
    int a = uniform_int(rng, 0, 8);
    int b = (a + uniform_int(rng, 1, 8)) % 9;
    if (!g.has_edge(a, b)) g.add_edge(a, b);
    bool after = contains_subgraph(g, patterns::triangle()).has_value();
    EXPECT_TRUE(!before || after);
  }
}

TEST(Containment, HostSizeCap) {
  HostGraph g(70);
  EXPECT_THROW(contains_subgraph(g, patterns::triangle()), Error);
}

TEST(Certificate, TriangleEdges) {
  HostGraph g(5);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 2);
  std::vector<SlotId> full{slot_id(0, 1), slot_id(0, 2), slot_id(1, 2)};
  std::vector<SlotId> partial{slot_id(0, 1), slot_id(0, 2)};
  EXPECT_TRUE(is_certificate(full, g, patterns::triangle()));
  EXPECT_FALSE(is_certificate(partial, g, patterns::triangle()));
}

TEST(Certificate, EquivalentToContainmentOnQueriedEdges) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng = make_stream(seed, 3);
    auto g = random_host(rng, 7, 0.5);
    auto slots = all_slots(g);
    std::vector<SlotId> queried;
    HostGraph restricted(7);
    for (SlotId s : slots) {
      if (uniform_real(rng) < 0.6) {
        queried.push_back(s);
        auto [a, b] = slot_endpoints(s);
        restricted.add_edge(a, b);
      }
    }
    bool cert = is_certificate(queried, g, patterns::triangle());
    EXPECT_EQ(cert, contains_subgraph(restricted, patterns::triangle()).has_value()) << "seed " << seed;
  }
}

TEST(BipartiteType, Invariants) {
  BipartiteType bad{{{2, 1}}, {{1, 1}}};
  EXPECT_FALSE(bad.valid());  // handshake 2 != 1
  BipartiteType too_dense{{{1, 3}}, {{2, 0}, {1, 3}}};
  EXPECT_FALSE(too_dense.valid());
  BipartiteType ok{{{2, 1}}, {{1, 2}}};
  EXPECT_TRUE(ok.valid());
  EXPECT_EQ(ok.edge_count(), 2);
  EXPECT_TRUE(ok.matches({1, 1}, {2}));
  EXPECT_FALSE(ok.matches({2, 0}, {2}));
}

TEST(BipartiteType, ConstructionTypesHandshakeForAllFeasibleParameters) {
  for (int r = 2; r <= 40; r += 2) {
    for (int rs = 1; rs <= r - 1; ++rs) {
      ASSERT_TRUE(is_feasible(r, Rational(rs, r)));
      for (const auto& t : {block_types::setup(r, rs), block_types::half_loaded(r, rs), block_types::regular(r, rs),
                            block_types::hidden(r, rs), block_types::hidden_loaded(r, rs)}) {
        EXPECT_TRUE(t.valid()) << "r=" << r << " rs=" << rs << " " << t.to_string() << ": " << t.violation();
      }
    }
  }
  for (int r = 1; r <= 12; ++r) {
    for (int e = 0; e <= r; ++e) EXPECT_TRUE(block_types::collision(r, e).valid());
  }
}

TEST(BipartiteSampler, MatchesRequestedType) {
  Rng rng = make_stream(11, 0);
  for (int r = 2; r <= 16; r += 2) {
    for (int rs = 1; rs < r; ++rs) {
      for (const auto& t : {block_types::setup(r, rs), block_types::hidden(r, rs)}) {
        auto edges = sample_bipartite(rng, t);
        std::vector<int> left(static_cast<std::size_t>(t.left_size())), right(static_cast<std::size_t>(t.right_size()));
        std::set<std::pair<int, int>> unique(edges.begin(), edges.end());
        EXPECT_EQ(unique.size(), edges.size());
        for (auto [a, b] : edges) {
          ++left[static_cast<std::size_t>(a)];
          ++right[static_cast<std::size_t>(b)];
        }
        EXPECT_TRUE(t.matches(left, right)) << t.to_string();
      }
    }
  }
}

TEST(BipartiteSampler, EnumerationCounts) {
  // 2-regular bipartite graphs on 3+3 vertices are complements of perfect matchings: 3! = 6
  EXPECT_EQ(enumerate_bipartite({2, 2, 2}, {2, 2, 2}).size(), 6u);
  // 1-regular on 4+4: 4! = 24
  EXPECT_EQ(enumerate_bipartite({1, 1, 1, 1}, {1, 1, 1, 1}).size(), 24u);
  EXPECT_TRUE(enumerate_bipartite({3}, {1, 1}).empty());
  EXPECT_FALSE(is_bigraphic({3}, {1, 1}));
  EXPECT_TRUE(is_bigraphic({2, 1}, {1, 1, 1}));
}

TEST(BipartiteSampler, UniformOverSmallType) {
  // every 1-regular 3+3 graph should appear with frequency near 1/6
  Rng rng = make_stream(5, 0);
  std::map<BipartiteEdges, int> hist;
  const int draws = 6000;
  for (int i = 0; i < draws; ++i) {
    auto e = sample_bipartite(rng, {1, 1, 1}, {1, 1, 1});
    std::sort(e.begin(), e.end());
    ++hist[e];
  }
  ASSERT_EQ(hist.size(), 6u);
  for (const auto& [g, c] : hist) EXPECT_NEAR(c / double(draws), 1.0 / 6.0, 0.025);
}

TEST(PartiteLabel, BlocksAndVariables) {
  auto h = patterns::triangle();
  PartiteLabel label(3);
  label.set_members(0, {0, 1});
  label.set_members(1, {2, 3});
  label.set_members(2, {4});
  label.block(0, 0, 1).add_edge(0, 2);
  label.block(0, 0, 1).add_edge(1, 3);
  EXPECT_TRUE(label.violation(h.edges()).empty());
  EXPECT_EQ(label.edge_count(), 2u);
  EXPECT_EQ(label.variables(), (std::vector<SlotId>{slot_id(0, 2), slot_id(1, 3)}));
  EXPECT_EQ(label.class_of(4), 2);
  EXPECT_EQ(label.class_of(5), -1);
  std::vector<int> sigma{1, 0, 2, 3, 4, 5};
  auto moved = label.permuted(sigma);
  EXPECT_TRUE(moved.find_block(0)->has_edge(1, 2));
  label.remove_vertex(0);
  EXPECT_EQ(label.edge_count(), 1u);
}

TEST(PartiteLabel, DetectsOverlap) {
  auto h = patterns::triangle();
  PartiteLabel label(3);
  label.set_members(0, {0, 1});
  label.set_members(1, {1, 2});
  EXPECT_FALSE(label.violation(h.edges()).empty());
}

}  // namespace
}  // namespace lg
