#include "lg/flow_path.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "lg/bipartite_sampler.hpp"
#include "lg/lemmas.hpp"
#include "lg/parallel.hpp"
#include "lg/rng.hpp"

namespace lg {
namespace {

constexpr int kHidingAttempts = 1000;

int pattern_edge_index(const PatternGraph& h, int a, int b) {
  if (a > b) std::swap(a, b);
  for (std::size_t i = 0; i < h.edges().size(); ++i) {
    if (h.edges()[i].a == a && h.edges()[i].b == b) return static_cast<int>(i);
  }
  throw InvalidPattern("missing pattern edge");
}

int integer_rs(int r, const Rational& s) {
  Rational rs = Rational(r) * s;
  return static_cast<int>(rs.get_num().get_si());
}

std::vector<SlotId> slot_difference(const std::vector<SlotId>& after, const std::vector<SlotId>& before) {
  std::vector<SlotId> out;
  std::set_difference(after.begin(), after.end(), before.begin(), before.end(), std::back_inserter(out));
  return out;
}

/// Blocks of `label` with `cls` as one side.
std::vector<const LabelBlock*> incident_blocks(const PartiteLabel& label, int cls) {
  std::vector<const LabelBlock*> out;
  for (const auto& b : label.blocks()) {
    if (b.left_class == cls || b.right_class == cls) out.push_back(&b);
  }
  return out;
}

std::vector<int> neighbours_in_block(const LabelBlock& b, int v) {
  std::vector<int> out;
  for (auto [x, y] : b.edges) {
    if (x == v) out.push_back(y);
    if (y == v) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Class sizes and block types expected at the end of first-construction stage
/// `stage_id` (0 <= stage_id <= u).
bool matches_load_stage(const ConstructionPlan& plan, const PartiteLabel& label, int stage_id, int r, int rs) {
  if (label.class_count() != plan.u) return false;
  for (int c = 0; c < plan.u; ++c) {
    int expected = c < stage_id ? r : r - 1;
    if (static_cast<int>(label.members(c).size()) != expected) return false;
  }
  if (label.blocks().size() != plan.loaded_edges.size()) return false;
  for (const auto& [e, type] : expected_block_types(plan, stage_id, r, rs)) {
    if (!label.block_matches(e, type)) return false;
  }
  return true;
}

/// Undo the loads of prefix[t-2], ..., prefix[0] from a label at the start of stage t.
bool peel_prefix(const ConstructionPlan& plan, PartiteLabel label, int t, const std::vector<int>& prefix, int r,
                 int rs) {
  if (!matches_load_stage(plan, label, t - 1, r, rs)) return false;
  for (int i = t - 1; i >= 1; --i) {
    const int v = i - 1;
    const int x = prefix[static_cast<std::size_t>(v)];
    if (label.class_of(x) != v) return false;
    std::vector<std::pair<int, std::vector<int>>> joined;
    for (const LabelBlock* b : incident_blocks(label, v)) joined.emplace_back(b->pattern_edge, neighbours_in_block(*b, x));
    label.remove_vertex(x);
    if (!matches_load_stage(plan, label, i - 1, r, rs)) return false;
    for (const auto& [e, nbrs] : joined) {
      const LabelBlock* b = label.find_block(e);
      int other = b->left_class == v ? b->right_class : b->left_class;
      std::vector<int> low;
      for (int y : label.members(other)) {
        if (b->degree(y) == rs - 1) low.push_back(y);
      }
      if (low != nbrs) return false;
    }
  }
  return true;
}

struct Materializer {
  const ConstructionPlan& plan;
  int n;
  int r;
  int rs;
  const Witness& a;
  Rng rng;
  FlowPath path;
  PartiteLabel label;

  void record(int stage_id, std::string note) {
    auto [kind, index] = materialized_stage(plan, stage_id);
    StageRecord rec{stage_id, kind, index, std::move(note), {}};
    rec.added = slot_difference(label.variables(), path.labels.back().variables());
    path.stages.push_back(std::move(rec));
    path.labels.push_back(label);
  }

  void setup() {
    std::vector<int> pool;
    for (int v = 0; v < n; ++v) {
      if (std::find(a.begin(), a.end(), v) == a.end()) pool.push_back(v);
    }
    shuffle(pool, rng);
    label = PartiteLabel(plan.u);
    for (int c = 0; c < plan.u; ++c) {
      auto first = pool.begin() + static_cast<std::ptrdiff_t>(c) * (r - 1);
      label.set_members(c, std::vector<int>(first, first + (r - 1)));
    }
    for (int e : plan.loaded_edges) {
      const auto& pe = plan.pattern.edges()[static_cast<std::size_t>(e)];
      auto local = sample_bipartite(rng, block_types::setup(r, rs));
      const auto left = label.members(pe.a);
      const auto right = label.members(pe.b);
      LabelBlock& b = label.block(e, pe.a, pe.b);
      for (auto [i, j] : local) b.add_edge(left[static_cast<std::size_t>(i)], right[static_cast<std::size_t>(j)]);
    }
    record(0, "classes of size " + std::to_string(r - 1) + " avoiding the witness");
  }

  void load_vertex(int t) {
    const int v = t - 1;
    const int x = a[static_cast<std::size_t>(v)];
    std::vector<std::tuple<int, int, int>> joins;  // (edge, left, right)
    for (int e : plan.loaded_edges) {
      const auto& pe = plan.pattern.edges()[static_cast<std::size_t>(e)];
      if (pe.a != v && pe.b != v) continue;
      int other = pe.a == v ? pe.b : pe.a;
      const LabelBlock* b = label.find_block(e);
      for (int y : label.members(other)) {
        if (b->degree(y) != rs - 1) continue;
        if (pe.a == v) {
          joins.emplace_back(e, x, y);
        } else {
          joins.emplace_back(e, y, x);
        }
      }
    }
    label.insert_member(v, x);
    for (auto [e, left, right] : joins) {
      const auto& pe = plan.pattern.edges()[static_cast<std::size_t>(e)];
      label.block(e, pe.a, pe.b).add_edge(left, right);
    }
    record(t, "a_" + std::to_string(t) + " = " + std::to_string(x + 1));
  }

  void hide(int stage_id) {
    const int half = r / 2;
    for (int e : plan.loaded_edges) {
      const auto& pe = plan.pattern.edges()[static_cast<std::size_t>(e)];
      const int ai = a[static_cast<std::size_t>(pe.a)];
      const int aj = a[static_cast<std::size_t>(pe.b)];
      const auto left = label.members(pe.a);
      const auto right = label.members(pe.b);
      const LabelBlock* b = label.find_block(e);
      bool placed = false;
      for (int attempt = 0; attempt < kHidingAttempts && !placed; ++attempt) {
        auto rows = sample_subset(rng, r, half);
        auto cols = sample_subset(rng, r, half);
        bool touches = false;
        for (int i : rows) touches |= left[static_cast<std::size_t>(i)] == ai;
        for (int j : cols) touches |= right[static_cast<std::size_t>(j)] == aj;
        if (touches) continue;
        std::vector<std::vector<char>> allowed(static_cast<std::size_t>(half), std::vector<char>(static_cast<std::size_t>(half), 0));
        for (int p = 0; p < half; ++p) {
          for (int q = 0; q < half; ++q) {
            allowed[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] =
                !b->has_edge(left[static_cast<std::size_t>(rows[static_cast<std::size_t>(p)])], right[static_cast<std::size_t>(cols[static_cast<std::size_t>(q)])]);
          }
        }
        auto match = random_perfect_matching(rng, allowed);
        if (!match) continue;
        std::vector<std::pair<int, int>> added;
        for (int p = 0; p < half; ++p) {
          added.emplace_back(left[static_cast<std::size_t>(rows[static_cast<std::size_t>(p)])],
                             right[static_cast<std::size_t>(cols[static_cast<std::size_t>((*match)[static_cast<std::size_t>(p)])])]);
        }
        LabelBlock& mb = label.block(e, pe.a, pe.b);
        for (auto [x, y] : added) mb.add_edge(x, y);
        b = &mb;
        placed = true;
      }
      if (!placed) {
        throw WitnessClash("hiding stage found no matching avoiding a_" + std::to_string(pe.a + 1) + " and a_" +
                           std::to_string(pe.b + 1) + " after " + std::to_string(kHidingAttempts) + " attempts");
      }
    }
    record(stage_id, "r/2 vertex-disjoint edges per block");
  }

  void load_edge(int stage_id, int t) {
    int e = plan.loaded_edges[static_cast<std::size_t>(t - 1)];
    const auto& pe = plan.pattern.edges()[static_cast<std::size_t>(e)];
    label.block(e, pe.a, pe.b).add_edge(a[static_cast<std::size_t>(pe.a)], a[static_cast<std::size_t>(pe.b)]);
    record(stage_id, "{a_" + std::to_string(pe.a + 1) + ",a_" + std::to_string(pe.b + 1) + "}");
  }

  int collide(int stage_id, std::optional<int> lambda) {
    const int last = plan.pattern.k() - 1;
    const int u = a[static_cast<std::size_t>(last)];
    const auto nbrs = plan.pattern.neighbors(last);
    std::vector<std::vector<int>> pools;
    for (int i : nbrs) {
      auto blocks = incident_blocks(label, i);
      std::vector<int> pool;
      for (int y : label.members(i)) {
        if (y == a[static_cast<std::size_t>(i)]) continue;
        bool raised = std::all_of(blocks.begin(), blocks.end(), [&](const LabelBlock* b) { return b->degree(y) == rs + 1; });
        if (raised) pool.push_back(y);
      }
      pools.push_back(std::move(pool));
    }
    std::size_t smallest = pools.empty() ? 0 : pools.front().size();
    for (const auto& p : pools) smallest = std::min(smallest, p.size());
    int lam = lambda.value_or(std::min(default_lambda(r, static_cast<int>(nbrs.size())), static_cast<int>(smallest)));
    if (lambda && (*lambda < 1 || *lambda > r)) throw InfeasibleParameters("lambda must lie in [1, r]");
    if (lam < 1 || static_cast<std::size_t>(lam) > smallest) {
      throw WitnessClash("collision stage needs " + std::to_string(std::max(lam, 1)) +
                         " degree rs+1 vertices besides the witness, found " + std::to_string(smallest));
    }
    label.add_class();
    label.insert_member(last, u);
    for (std::size_t p = 0; p < nbrs.size(); ++p) {
      int e = pattern_edge_index(plan.pattern, nbrs[p], last);
      auto chosen = sample_subset(rng, static_cast<int>(pools[p].size()), lam);
      LabelBlock& b = label.block(e, nbrs[p], last);
      for (int c : chosen) b.add_edge(pools[p][static_cast<std::size_t>(c)], u);
    }
    record(stage_id, "u = a_" + std::to_string(last + 1) + " = " + std::to_string(u + 1) + ", lambda = " + std::to_string(lam));
    for (std::size_t p = 0; p < nbrs.size(); ++p) {
      int e = pattern_edge_index(plan.pattern, nbrs[p], last);
      label.block(e, nbrs[p], last).add_edge(a[static_cast<std::size_t>(nbrs[p])], u);
      record(stage_id + 1 + static_cast<int>(p), "{a_" + std::to_string(nbrs[p] + 1) + ",u}");
    }
    return lam;
  }
};

FlowPath materialize(const ConstructionPlan& plan, int n, int r, const Rational& s, const Witness& witness,
                     std::uint64_t seed, std::optional<int> lambda, int stop_after) {
  if (auto why = feasibility_violation(r, s); !why.empty()) throw InfeasibleParameters(why);
  const int k = plan.pattern.k();
  if (static_cast<int>(witness.size()) != k) throw Error("witness must list k host vertices");
  {
    std::set<int> distinct(witness.begin(), witness.end());
    if (static_cast<int>(distinct.size()) != k || *distinct.begin() < 0 || *distinct.rbegin() >= n) {
      throw Error("witness vertices must be distinct and lie in [1, n]");
    }
  }
  if (n > 65535) throw InfeasibleParameters("materialization supports n <= 65535");
  int min_n = min_feasible_n(plan, r);
  if (n < min_n) {
    throw InfeasibleParameters("n = " + std::to_string(n) + " is below the smallest feasible n = " +
                               std::to_string(min_n) + " for r = " + std::to_string(r));
  }
  const int rs = integer_rs(r, s);
  Materializer mat{plan, n, r, rs, witness, make_stream(seed, 0), {}, PartiteLabel()};
  mat.path.construction = plan.construction;
  mat.path.n = n;
  mat.path.r = r;
  mat.path.rs = rs;
  mat.path.witness = witness;
  mat.path.labels.push_back(mat.label);

  const int u = plan.u;
  const int m = plan.m();
  int stage = 0;
  auto done = [&] { return stop_after >= 0 && stage > stop_after; };
  mat.setup();
  ++stage;
  for (int t = 1; t <= u && !done(); ++t, ++stage) mat.load_vertex(t);
  if (!done()) {
    mat.hide(stage);
    ++stage;
  }
  for (int t = 1; t <= m && !done(); ++t, ++stage) mat.load_edge(stage, t);
  if (plan.subroutine && !done()) mat.path.lambda = mat.collide(stage, lambda);
  return std::move(mat.path);
}

}  // namespace

int default_lambda(int r, int d) {
  auto ipow = [](long b, int e) {
    long out = 1;
    for (int i = 0; i < e; ++i) out *= b;
    return out;
  };
  long target = ipow(r, d);
  int lam = 1;
  while (ipow(lam + 1, d + 1) <= target) ++lam;
  return lam;
}

FlowPath materialize_flow_path(const ConstructionPlan& plan, int n, int r, const Rational& s, const Witness& witness,
                               std::uint64_t seed, std::optional<int> lambda) {
  return materialize(plan, n, r, s, witness, seed, lambda, -1);
}

std::string FlowPath::dump() const {
  std::ostringstream out;
  out << "# " << construction << " flow path, n=" << n << " r=" << r << " rs=" << rs;
  if (lambda > 0) out << " lambda=" << lambda;
  out << "\n# witness";
  for (int v : witness) out << ' ' << v + 1;
  out << '\n';
  for (const auto& st : stages) {
    out << "stage " << st.stage_id << ' ' << to_string(st.kind);
    if (st.index > 0) out << ' ' << st.index;
    out << " : " << st.note << '\n';
    for (SlotId slot : st.added) {
      auto [x, y] = slot_endpoints(slot);
      out << "+ " << x + 1 << ' ' << y + 1 << '\n';
    }
  }
  return out.str();
}

HostGraph witness_host(const ConstructionPlan& plan, int n, const Witness& witness) {
  HostGraph host(n);
  for (const auto& e : plan.pattern.edges()) {
    host.add_edge(witness[static_cast<std::size_t>(e.a)], witness[static_cast<std::size_t>(e.b)]);
  }
  return host;
}

LearningGraph<Rational> path_learning_graph(const FlowPath& path) {
  LearningGraph<Rational> g("root", path.labels.front().variables());
  FlowId y = g.add_flow("witness");
  VertexId prev = LearningGraph<Rational>::root();
  for (std::size_t i = 1; i < path.labels.size(); ++i) {
    VertexId v = g.add_vertex("stage " + std::to_string(i - 1), path.labels[i].variables());
    EdgeId e = g.add_edge(prev, v, Rational(1));
    g.set_flow(y, e, Rational(1));
    prev = v;
  }
  return g;
}

PathAudit audit_flow_path(const ConstructionPlan& plan, const FlowPath& path) {
  PathAudit audit;
  auto fail = [&](int stage, const std::string& what) {
    audit.failures.push_back("stage " + std::to_string(stage) + ": " + what);
  };
  const int r = path.r;
  const int rs = path.rs;
  const auto& a = path.witness;
  const int count = materialized_stage_count(plan);
  if (static_cast<int>(path.stages.size()) != count || path.labels.size() != path.stages.size() + 1) {
    audit.failures.push_back("path has " + std::to_string(path.stages.size()) + " stages, expected " +
                             std::to_string(count));
    return audit;
  }
  const int last = plan.pattern.k() - 1;
  const auto nbrs = plan.pattern.neighbors(last);
  for (int i = 0; i < count; ++i) {
    const auto& prev = path.labels[static_cast<std::size_t>(i)];
    const auto& cur = path.labels[static_cast<std::size_t>(i) + 1];
    auto [kind, t] = materialized_stage(plan, i);
    if (auto why = cur.violation(plan.pattern.edges()); !why.empty()) fail(i, why);
    auto before = prev.variables();
    auto after = cur.variables();
    if (!std::includes(after.begin(), after.end(), before.begin(), before.end())) fail(i, "S shrinks");
    long added = static_cast<long>(after.size() - before.size());
    long expected = exact_stage_length(plan, i, r, rs, path.lambda);
    ++audit.length_checks;
    if (added != expected || static_cast<long>(path.stages[static_cast<std::size_t>(i)].added.size()) != expected) {
      fail(i, "added " + std::to_string(added) + " variables, expected " + std::to_string(expected));
    }
    auto types = expected_block_types(plan, i, r, rs, path.lambda);
    if (cur.blocks().size() != types.size()) fail(i, "unexpected number of blocks");
    for (const auto& [e, type] : types) {
      ++audit.degree_checks;
      if (!cur.block_matches(e, type)) {
        const LabelBlock* b = cur.find_block(e);
        std::string have = "missing";
        if (b != nullptr) {
          auto [dl, dr] = cur.block_degrees(*b);
          have = std::to_string(dl.size()) + "x" + std::to_string(dr.size()) + " with " +
                 std::to_string(b->edges.size()) + " edges";
        }
        fail(i, "block " + std::to_string(e + 1) + " is not of type " + type.to_string() + " (" + have + ")");
      }
    }
    // class sizes
    for (int c = 0; c < plan.u; ++c) {
      int size = static_cast<int>(cur.members(c).size());
      int want = (kind == StageKind::Setup || (kind == StageKind::LoadVertex && c >= t)) ? r - 1 : r;
      if (size != want) fail(i, "class " + std::to_string(c + 1) + " has " + std::to_string(size) + " vertices");
    }
    // flow rule of the stage
    switch (kind) {
      case StageKind::Setup:
        for (int v : a) {
          if (cur.class_of(v) >= 0) fail(i, "setup classes contain witness vertex " + std::to_string(v + 1));
        }
        break;
      case StageKind::LoadVertex:
        if (prev.class_of(a[static_cast<std::size_t>(t - 1)]) != -1 || cur.class_of(a[static_cast<std::size_t>(t - 1)]) != t - 1) {
          fail(i, "a_" + std::to_string(t) + " was not the added vertex");
        }
        break;
      case StageKind::Hiding:
        for (int e : plan.loaded_edges) {
          const auto& pe = plan.pattern.edges()[static_cast<std::size_t>(e)];
          if (cur.degree_in_block(e, a[static_cast<std::size_t>(pe.a)]) != rs || cur.degree_in_block(e, a[static_cast<std::size_t>(pe.b)]) != rs) {
            fail(i, "hiding touched a witness vertex in block " + std::to_string(e + 1));
          }
        }
        break;
      case StageKind::LoadEdge: {
        int e = plan.loaded_edges[static_cast<std::size_t>(t - 1)];
        const auto& pe = plan.pattern.edges()[static_cast<std::size_t>(e)];
        int ai = a[static_cast<std::size_t>(pe.a)];
        int aj = a[static_cast<std::size_t>(pe.b)];
        const LabelBlock* b = cur.find_block(e);
        if (b == nullptr || !b->has_edge(ai, aj) || b->degree(ai) != rs + 1 || b->degree(aj) != rs + 1) {
          fail(i, "edge {a_" + std::to_string(pe.a + 1) + ",a_" + std::to_string(pe.b + 1) +
                      "} not loaded with degrees rs+1");
        }
        break;
      }
      case StageKind::CollisionSetup:
        if (cur.class_count() != plan.pattern.k() || cur.members(last) != std::vector<int>{a[static_cast<std::size_t>(last)]}) {
          fail(i, "collision vertex is not a_" + std::to_string(last + 1));
        }
        for (int nb : nbrs) {
          if (cur.degree_in_block(pattern_edge_index(plan.pattern, nb, last), a[static_cast<std::size_t>(nb)]) != 0) {
            fail(i, "collision load touches a_" + std::to_string(nb + 1));
          }
        }
        break;
      case StageKind::CollisionEdge: {
        int nb = nbrs[static_cast<std::size_t>(t - 1)];
        const LabelBlock* b = cur.find_block(pattern_edge_index(plan.pattern, nb, last));
        if (b == nullptr || !b->has_edge(a[static_cast<std::size_t>(nb)], a[static_cast<std::size_t>(last)])) {
          fail(i, "edge {a_" + std::to_string(nb + 1) + ",u} not loaded");
        }
        break;
      }
      case StageKind::Collision:
        break;
    }
  }

  HostGraph host = witness_host(plan, path.n, a);
  auto vars = path.sink().variables();
  std::vector<PatternEdge> prefix;
  int vertex_count = plan.pattern.k();
  if (plan.subroutine || plan.u == plan.pattern.k()) {
    prefix = plan.pattern.edges();
  } else {
    prefix = plan.pattern.prefix_edges(plan.u);
    vertex_count = plan.u;
  }
  auto checker = [&](const VarSet& s, FlowId) { return is_certificate(s, host, vertex_count, prefix); };
  if (!checker(vars, 0)) audit.failures.push_back("sink holds no certificate");
  auto report = validate(path_learning_graph(path), checker);
  for (const auto& entry : report.entries) {
    audit.failures.push_back("learning graph: " + to_string(entry.kind) + " " + entry.detail);
  }
  return audit;
}

bool on_flow_before_hiding(const ConstructionPlan& plan, const PartiteLabel& label, int t, const Witness& a, int r,
                           int rs) {
  if (t < 1 || t > plan.u + 1) throw Error("stage must lie in [1, u+1]");
  for (int j = t - 1; j < static_cast<int>(a.size()); ++j) {
    if (label.class_of(a[static_cast<std::size_t>(j)]) != -1) return false;
  }
  std::vector<int> prefix(a.begin(), a.begin() + (t - 1));
  return peel_prefix(plan, label, t, prefix, r, rs);
}

bool VertexRatioEstimate::within_3se() const {
  double diff = std::abs(monte_carlo - exact);
  if (standard_error == 0.0) return diff <= 1e-12;
  return diff <= 3.0 * standard_error;
}

std::vector<VertexRatioEstimate> vertex_ratio_audit(const ConstructionPlan& plan, int n, int r, const Rational& s,
                                                    std::size_t samples, std::uint64_t seed, int max_stage) {
  if (max_stage < 1 || max_stage > plan.u + 1) throw Error("max_stage must lie in [1, u+1]");
  const int k = plan.pattern.k();
  const int rs = integer_rs(r, s);
  auto falling = [](long top, int count) {
    double out = 1.0;
    for (int i = 0; i < count; ++i) out *= static_cast<double>(top - i);
    return out;
  };
  Witness fixed(static_cast<std::size_t>(k));
  std::iota(fixed.begin(), fixed.end(), 0);

  std::vector<VertexRatioEstimate> out;
  for (int t = 1; t <= max_stage; ++t) {
    struct Sums {
      double ind = 0, frac = 0, frac_sq = 0, diff = 0, diff_sq = 0;
      std::size_t count = 0;
    };
    const std::size_t chunk = 256;
    const std::size_t chunks = (samples + chunk - 1) / chunk;
    auto partial = run_chunks(chunks, [&](std::size_t c) {
      Sums sums;
      std::size_t todo = std::min(chunk, samples - c * chunk);
      for (std::size_t j = 0; j < todo; ++j) {
        Rng rng = make_stream(seed, (static_cast<std::uint64_t>(t) << 40) + c * chunk + j);
        auto chosen = sample_subset(rng, n, k);
        shuffle(chosen, rng);
        FlowPath path = materialize(plan, n, r, s, chosen, rng(), std::nullopt, t - 1);
        const PartiteLabel& label = path.labels[static_cast<std::size_t>(t)];

        std::vector<int> sigma(static_cast<std::size_t>(n));
        std::iota(sigma.begin(), sigma.end(), 0);
        shuffle(sigma, rng);
        double ind = on_flow_before_hiding(plan, label.permuted(sigma), t, fixed, r, rs) ? 1.0 : 0.0;

        // exact fraction: enumerate a_1..a_{t-1} in their classes; the rest range
        // over ordered tuples of vertices outside every class
        long used = 0;
        for (const auto& cls : label.classes()) used += static_cast<long>(cls.size());
        long good_prefixes = 0;
        std::vector<int> prefix(static_cast<std::size_t>(t - 1));
        std::function<void(int)> walk = [&](int i) {
          if (i == t - 1) {
            if (peel_prefix(plan, label, t, prefix, r, rs)) ++good_prefixes;
            return;
          }
          for (int x : label.members(i)) {
            prefix[static_cast<std::size_t>(i)] = x;
            walk(i + 1);
          }
        };
        walk(0);
        double frac = static_cast<double>(good_prefixes) * falling(n - used, k - (t - 1)) / falling(n, k);
        sums.ind += ind;
        sums.frac += frac;
        sums.frac_sq += frac * frac;
        sums.diff += ind - frac;
        sums.diff_sq += (ind - frac) * (ind - frac);
        ++sums.count;
      }
      return sums;
    });
    Sums total;
    for (const auto& p : partial) {
      total.ind += p.ind;
      total.frac += p.frac;
      total.frac_sq += p.frac_sq;
      total.diff += p.diff;
      total.diff_sq += p.diff_sq;
      total.count += p.count;
    }
    VertexRatioEstimate est;
    est.stage = t;
    est.samples = total.count;
    double cnt = static_cast<double>(total.count);
    est.monte_carlo = total.ind / cnt;
    est.exact = total.frac / cnt;
    double mean_diff = total.diff / cnt;
    double var = std::max(0.0, total.diff_sq / cnt - mean_diff * mean_diff) * cnt / std::max(1.0, cnt - 1);
    // floor at the null variance E[f(1-f)] so rare stages with no hits keep a usable error
    double null_var = std::max(0.0, (total.frac - total.frac_sq) / cnt);
    est.standard_error = std::sqrt(std::max(var, null_var) / cnt);
    est.leading_order = std::pow(static_cast<double>(r) / n, t - 1);
    out.push_back(est);
  }
  return out;
}

}  // namespace lg
