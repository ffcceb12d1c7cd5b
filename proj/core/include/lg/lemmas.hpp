#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "lg/learning_graph.hpp"

namespace lg {

/// Measured value against a lemma's bound, as emitted in JSON reports.
struct LemmaCheck {
  std::string lemma;
  std::string clause;
  double measured = 0.0;
  double bound = 0.0;
  bool holds = false;
};

nlohmann::json to_json(const LemmaCheck& check);

// ---------------------------------------------------------------------------
// Stage partitions

/// Ordered stages E_1..E_k partitioning all edges.
struct StagePartition {
  std::vector<EdgeSet> stages;
};

/// One stage per pair of consecutive levels.
template <typename Scalar>
StagePartition consecutive_level_stages(const LearningGraph<Scalar>& g) {
  auto lv = g.levels();
  int depth = g.depth();
  StagePartition p;
  p.stages.resize(static_cast<std::size_t>(std::max(depth, 0)));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    int from = lv[g.edge(e).from];
    if (from >= 0 && from < depth) p.stages[static_cast<std::size_t>(from)].push_back(e);
  }
  std::erase_if(p.stages, [](const EdgeSet& s) { return s.empty(); });
  return p;
}

/// Stages cut at the given level boundaries b_0 < b_1 < ... (E_i spans b_{i-1}..b_i).
template <typename Scalar>
StagePartition level_range_stages(const LearningGraph<Scalar>& g, const std::vector<int>& boundaries) {
  StagePartition p;
  for (std::size_t i = 1; i < boundaries.size(); ++i) {
    EdgeSet s;
    auto lv = g.levels();
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      int from = lv[g.edge(e).from];
      if (from >= boundaries[i - 1] && from < boundaries[i]) s.push_back(e);
    }
    p.stages.push_back(std::move(s));
  }
  return p;
}

/// Empty when the stages are disjoint, cover every edge, and are each flow-preserving.
template <typename Scalar>
std::string partition_violation(const LearningGraph<Scalar>& g, const StagePartition& p, double rel_tol = 1e-9) {
  std::vector<int> owner(g.edge_count(), -1);
  for (std::size_t i = 0; i < p.stages.size(); ++i) {
    for (EdgeId e : p.stages[i]) {
      if (e >= g.edge_count()) return "stage " + std::to_string(i) + " names an unknown edge";
      if (owner[e] >= 0) return "edge " + std::to_string(e) + " is in two stages";
      owner[e] = static_cast<int>(i);
    }
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (owner[e] < 0) return "edge " + std::to_string(e) + " is in no stage";
  }
  for (std::size_t i = 0; i < p.stages.size(); ++i) {
    if (!is_flow_preserving(g, p.stages[i], rel_tol)) return "stage " + std::to_string(i) + " is not flow-preserving";
  }
  return {};
}

// ---------------------------------------------------------------------------
// Stage balancing

template <typename Scalar>
struct BalancedGraph {
  using Root = typename ScalarTraits<Scalar>::sqrt_type;
  LearningGraph<Root> graph;
  std::vector<Root> stage_complexity;  // C(E_i) under the original weights
  std::vector<Root> scale;             // alpha_i
  Root bound;                          // sum of C(E_i)
};

/// Rescales stage i by alpha_i = sqrt(C1(E_i)/C0(E_i)). Afterwards C0(E_i) = C(E_i)
/// and C(whole graph) <= sum_i C(E_i). Exact for Rational input (weights become
/// radicals).
template <typename Scalar>
BalancedGraph<Scalar> balance_stages(const LearningGraph<Scalar>& g, const StagePartition& p,
                                     double rel_tol = 1e-9) {
  using Traits = ScalarTraits<Scalar>;
  using Root = typename Traits::sqrt_type;
  if (auto why = partition_violation(g, p, rel_tol); !why.empty()) throw Error("invalid stage partition: " + why);
  BalancedGraph<Scalar> out{g.template convert<Root>(), {}, {}, Root(0)};
  for (std::size_t i = 0; i < p.stages.size(); ++i) {
    Scalar neg = c0(g, p.stages[i]);
    Scalar pos = c1(g, p.stages[i], rel_tol);
    if (neg == Scalar(0) || pos == Scalar(0)) {
      throw DegenerateStage("stage " + std::to_string(i) + " has zero " + (neg == Scalar(0) ? "C0" : "C1"));
    }
    Root alpha = Traits::sqrt(Scalar(pos / neg));
    Root c = Traits::sqrt(Scalar(neg * pos));
    for (EdgeId e : p.stages[i]) out.graph.set_weight(e, out.graph.edge(e).weight * alpha);
    out.scale.push_back(alpha);
    out.stage_complexity.push_back(c);
    out.bound += c;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Convex-combination reweighting

/// Classes V_1..V_s of the vertices at the start of a stage.
struct OrbitPartition {
  std::vector<std::vector<VertexId>> classes;
};

/// E_V->: edges of `stage` leaving V or a descendant of V inside the stage.
template <typename Scalar>
EdgeSet descendant_edges(const LearningGraph<Scalar>& g, const EdgeSet& stage, const std::vector<VertexId>& from) {
  std::unordered_map<VertexId, std::vector<EdgeId>> out;
  for (EdgeId e : stage) out[g.edge(e).from].push_back(e);
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<VertexId> todo(from.begin(), from.end());
  for (VertexId v : todo) seen[v] = 1;
  EdgeSet result;
  while (!todo.empty()) {
    VertexId v = todo.back();
    todo.pop_back();
    auto it = out.find(v);
    if (it == out.end()) continue;
    for (EdgeId e : it->second) {
      result.push_back(e);
      VertexId w = g.edge(e).to;
      if (!seen[w]) {
        seen[w] = 1;
        todo.push_back(w);
      }
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

template <typename Scalar>
struct ReweightedStage {
  LearningGraph<Scalar> graph;  // zero-mass classes removed, class edges reweighted
  EdgeSet stage;                // the stage inside `graph`
  std::vector<Scalar> alpha;    // p_y(E_i), one per input class
  std::vector<Scalar> class_c0;
  std::vector<Scalar> class_c1;
  std::vector<bool> dropped;    // alpha_i == 0
  Scalar max_class_complexity_squared{};  // max_i C(E_i)^2, retained classes only
};

/// w'(e) = alpha_i C1(E_i) w(e) on E_i = E_{V_i}->. Classes with alpha_i = 0 carry no
/// flow and their edges are deleted. Throws Inconsistent when p_y(E_i) depends on y.
template <typename Scalar>
ReweightedStage<Scalar> reweight_by_classes(const LearningGraph<Scalar>& g, const EdgeSet& stage,
                                            const OrbitPartition& partition, double rel_tol = 1e-9) {
  using Traits = ScalarTraits<Scalar>;
  std::vector<EdgeSet> parts;
  std::vector<int> owner(g.edge_count(), -1);
  for (std::size_t i = 0; i < partition.classes.size(); ++i) {
    parts.push_back(descendant_edges(g, stage, partition.classes[i]));
    for (EdgeId e : parts.back()) {
      if (owner[e] >= 0) {
        throw HypothesisViolation("partition", "edge " + std::to_string(e) + " descends from two classes");
      }
      owner[e] = static_cast<int>(i);
    }
  }
  for (EdgeId e : stage) {
    if (owner[e] < 0) throw HypothesisViolation("partition", "edge " + std::to_string(e) + " descends from no class");
  }

  ReweightedStage<Scalar> out{g, {}, {}, {}, {}, {}, Scalar(0)};
  EdgeSet removed;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    Scalar alpha(0);
    for (FlowId y = 0; y < g.flow_count(); ++y) {
      Scalar value = flow_value(g, parts[i], y, rel_tol);
      if (y == 0) {
        alpha = value;
      } else if (!Traits::equal(alpha, value, rel_tol)) {
        throw Inconsistent("class " + std::to_string(i) + " receives " + Traits::to_string(alpha) + " under '" +
                           g.flows()[0].name + "' but " + Traits::to_string(value) + " under '" +
                           g.flows()[y].name + "'");
      }
    }
    out.alpha.push_back(alpha);
    bool drop = !(alpha > Scalar(0));
    out.dropped.push_back(drop);
    if (drop) {
      out.class_c0.push_back(Scalar(0));
      out.class_c1.push_back(Scalar(0));
      removed.insert(removed.end(), parts[i].begin(), parts[i].end());
      continue;
    }
    Scalar neg = c0(g, parts[i]);
    Scalar pos = c1(g, parts[i], rel_tol);
    if (pos == Scalar(0)) throw DegenerateStage("class " + std::to_string(i) + " has zero C1 but positive flow");
    out.class_c0.push_back(neg);
    out.class_c1.push_back(pos);
    Scalar sq = neg * pos;
    if (sq > out.max_class_complexity_squared) out.max_class_complexity_squared = sq;
    Scalar factor = alpha * pos;
    for (EdgeId e : parts[i]) out.graph.set_weight(e, g.edge(e).weight * factor);
  }
  std::sort(removed.begin(), removed.end());
  std::vector<std::optional<EdgeId>> map;
  out.graph = out.graph.without_edges(removed, &map);
  for (EdgeId e : stage) {
    if (map[e]) out.stage.push_back(*map[e]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Stage cost bounds

/// Inputs of the simple stage bound: the maxima of C0(E_v->) and C1(E_v->) over
/// v in V, |V|, and the common size of W_y.
template <typename Scalar>
struct SimpleStageData {
  Scalar max_c0{};
  Scalar max_c1{};
  std::size_t vertex_count = 0;
  std::size_t flow_vertex_count = 0;
};

/// max C0 * max C1 * |V| / |W_y|.
template <typename Scalar>
Scalar simple_stage_bound_squared(const SimpleStageData<Scalar>& data) {
  if (data.flow_vertex_count == 0) throw HypothesisViolation("2", "W_y is empty");
  if (data.flow_vertex_count > data.vertex_count) throw HypothesisViolation("2", "|W_y| exceeds |V|");
  return data.max_c0 * data.max_c1 * Scalar(static_cast<long>(data.vertex_count)) /
         Scalar(static_cast<long>(data.flow_vertex_count));
}

template <typename Scalar>
typename ScalarTraits<Scalar>::sqrt_type simple_stage_bound(const SimpleStageData<Scalar>& data) {
  return ScalarTraits<Scalar>::sqrt(simple_stage_bound_squared(data));
}

template <typename Scalar>
struct SimpleStageVerification {
  SimpleStageData<Scalar> data;
  Scalar bound_squared{};
  Scalar exact_squared{};  // C(E_V->)^2 under the current weights
  bool holds = false;
};

/// Checks the three hypotheses on an explicit graph (throwing HypothesisViolation
/// with clause "1", "2" or "3"), then recomputes C(E_V->) and compares.
template <typename Scalar>
SimpleStageVerification<Scalar> verify_simple_stage_bound(const LearningGraph<Scalar>& g, const EdgeSet& stage,
                                                          const std::vector<VertexId>& V, double rel_tol = 1e-9) {
  using Traits = ScalarTraits<Scalar>;
  if (V.empty()) throw HypothesisViolation("1", "V is empty");
  std::vector<EdgeSet> per_vertex;
  std::vector<int> owner(g.edge_count(), -1);
  for (std::size_t i = 0; i < V.size(); ++i) {
    per_vertex.push_back(descendant_edges(g, stage, {V[i]}));
    for (EdgeId e : per_vertex.back()) {
      if (owner[e] >= 0) {
        throw HypothesisViolation("1", "descendant edge sets of vertices " + std::to_string(V[owner[e]]) + " and " +
                                           std::to_string(V[i]) + " intersect");
      }
      owner[e] = static_cast<int>(i);
    }
  }
  EdgeSet all = descendant_edges(g, stage, V);

  SimpleStageVerification<Scalar> out;
  out.data.vertex_count = V.size();
  std::optional<std::size_t> w_size;
  for (FlowId y = 0; y < g.flow_count(); ++y) {
    Scalar total = flow_value(g, all, y, rel_tol);
    std::vector<Scalar> mass;
    for (const auto& part : per_vertex) {
      Scalar m = flow_value(g, part, y, rel_tol);
      if (m > Scalar(0)) mass.push_back(m);
    }
    if (!w_size) {
      w_size = mass.size();
    } else if (*w_size != mass.size()) {
      throw HypothesisViolation("2", "|W_y| is " + std::to_string(*w_size) + " for '" + g.flows()[0].name +
                                         "' but " + std::to_string(mass.size()) + " for '" + g.flows()[y].name + "'");
    }
    Scalar share = mass.empty() ? Scalar(0) : Scalar(total / Scalar(static_cast<long>(mass.size())));
    for (const auto& m : mass) {
      if (!Traits::equal(m, share, rel_tol)) {
        throw HypothesisViolation("3", "flow '" + g.flows()[y].name + "' splits unevenly over W_y");
      }
    }
  }
  out.data.flow_vertex_count = w_size.value_or(0);
  for (const auto& part : per_vertex) {
    if (part.empty()) continue;
    Scalar a = c0(g, part);
    Scalar b = c1(g, part, rel_tol);
    if (a > out.data.max_c0) out.data.max_c0 = a;
    if (b > out.data.max_c1) out.data.max_c1 = b;
  }
  out.bound_squared = simple_stage_bound_squared(out.data);
  out.exact_squared = complexity_squared(g, all, rel_tol);
  out.holds = out.exact_squared <= out.bound_squared ||
              (!Traits::exact && Traits::equal(out.exact_squared, out.bound_squared, rel_tol));
  return out;
}

/// The three factors of a uniform stage and their combination l * sqrt((d/g) * ratio).
template <typename Scalar>
struct UniformStageCost {
  Scalar length{};
  Scalar degree_ratio{};
  Scalar max_vertex_ratio{};
  Scalar cost_squared{};
  typename ScalarTraits<Scalar>::sqrt_type cost{};
};

template <typename Scalar>
UniformStageCost<Scalar> uniform_stage_cost(const Scalar& length, const Scalar& out_degree,
                                            const Scalar& flow_degree, const std::vector<Scalar>& vertex_ratios) {
  if (!(flow_degree > Scalar(0))) throw Error("flow degree g must be positive");
  if (out_degree < flow_degree) throw Error("out-degree d must be at least the flow degree g");
  if (vertex_ratios.empty()) throw Error("at least one vertex class is required");
  UniformStageCost<Scalar> out;
  out.length = length;
  out.degree_ratio = out_degree / flow_degree;
  out.max_vertex_ratio = *std::max_element(vertex_ratios.begin(), vertex_ratios.end());
  out.cost_squared = length * length * out.degree_ratio * out.max_vertex_ratio;
  out.cost = ScalarTraits<Scalar>::sqrt(out.cost_squared);
  return out;
}

/// Input of simple_stage_bound for one class of a uniform stage: C0(v+) = l d,
/// C1(v+) = l / g.
template <typename Scalar>
SimpleStageData<Scalar> uniform_stage_as_simple(const Scalar& length, const Scalar& out_degree,
                                                const Scalar& flow_degree, std::size_t class_size,
                                                std::size_t flow_vertices) {
  return {length * out_degree, length / flow_degree, class_size, flow_vertices};
}

// ---------------------------------------------------------------------------
// Parameter feasibility and edge probabilities

/// Empty when (r, s) is a feasible lattice point: r even, rs a positive integer,
/// rs <= r - 1 and r >= 2. Otherwise the violated constraint, e.g. "r must be even".
std::string feasibility_violation(long r, const Rational& s);
inline bool is_feasible(long r, const Rational& s) { return feasibility_violation(r, s).empty(); }

/// Largest feasible s' <= s for this r (rs rounded down, at least 1).
Rational round_density_down(long r, const Rational& s);

struct EdgeProbability {
  Rational exact;           // exact value when known (plain mode), else 0
  bool exact_known = false;
  double estimate = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
};

enum class EdgeProbabilityMode { Plain, Hidden };

/// Probability that a fixed slot (y1, y2) between two r-sets is an edge of a uniformly
/// random graph of the relevant type. Plain: the regular type ({(r,rs)},{(r,rs)}),
/// exactly s. Hidden: the joint event that the edge is present after loading and
/// both endpoints have degree rs+1, estimated by sampling the hiding process.
EdgeProbability uniform_edge_probability(long r, const Rational& s, EdgeProbabilityMode mode,
                                         std::size_t samples = 0, std::uint64_t seed = 1);

/// Exhaustive counterpart for plain mode: enumerates every bipartite graph of type
/// ({(r,rs)},{(r,rs)}) and returns the fraction containing slot (0, 0).
Rational enumerate_plain_edge_probability(int r, int rs);

struct HiddenEdgeEnumeration {
  Rational average;  // over the hiding process, each step uniform over its choices
  Rational minimum;  // worst single final graph K
  std::size_t final_graphs = 0;
};

/// Exhaustive counterpart for hidden mode: walks every regular graph, every hiding
/// matching and every loaded edge; the per-graph value is the fraction of the r*r
/// slots that are edges with both endpoints of degree rs+1.
HiddenEdgeEnumeration enumerate_hidden_edge_probability(int r, int rs);

/// Fraction of the |Y1|*|Y2| slots of `edges` that are edges joining two vertices
/// of degree `degree`.
Rational joint_edge_fraction(const std::vector<std::pair<int, int>>& edges, int left_size, int right_size,
                             int degree);

}  // namespace lg
