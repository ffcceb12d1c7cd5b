#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lg/errors.hpp"
#include "lg/host_graph.hpp"
#include "lg/scalar.hpp"

namespace lg {

using VertexId = std::size_t;
using EdgeId = std::size_t;
using FlowId = std::size_t;

/// Sorted set of query variable indices S(v).
using VarSet = std::vector<SlotId>;

/// Sorted, duplicate-free subset of learning-graph edges.
using EdgeSet = std::vector<EdgeId>;

inline int set_difference_size(const VarSet& to, const VarSet& from) {
  int n = 0;
  auto it = from.begin();
  for (SlotId v : to) {
    while (it != from.end() && *it < v) ++it;
    if (it == from.end() || *it != v) ++n;
  }
  return n;
}

inline bool is_subset(const VarSet& small, const VarSet& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

/// Rooted weighted DAG with edge lengths, optional variable sets S(v), and one
/// flow p_y per positive input. Vertex 0 is the root. Values are built up once
/// and then treated as immutable; reweighting returns a new graph.
template <typename Scalar>
class LearningGraph {
 public:
  struct Vertex {
    std::string name;
    std::optional<VarSet> vars;
  };
  struct Edge {
    VertexId from = 0;
    VertexId to = 0;
    Scalar weight{};
    int length = 0;
  };
  /// Sparse: only edges with nonzero flow are stored.
  struct Flow {
    std::string name;
    std::unordered_map<EdgeId, Scalar> values;
  };

  explicit LearningGraph(std::string root_name = "root", std::optional<VarSet> root_vars = VarSet{}) {
    vertices_.push_back({std::move(root_name), std::move(root_vars)});
    out_.emplace_back();
    in_.emplace_back();
  }

  static constexpr VertexId root() noexcept { return 0; }

  VertexId add_vertex(std::string name = {}, std::optional<VarSet> vars = std::nullopt) {
    if (vars) std::sort(vars->begin(), vars->end());
    vertices_.push_back({std::move(name), std::move(vars)});
    out_.emplace_back();
    in_.emplace_back();
    return vertices_.size() - 1;
  }

  /// Without an explicit length, both endpoints must carry variable sets and the
  /// length is |S(to) \ S(from)|.
  EdgeId add_edge(VertexId from, VertexId to, Scalar weight, std::optional<int> length = std::nullopt) {
    if (from >= vertices_.size() || to >= vertices_.size()) throw Error("edge endpoint out of range");
    int len = 0;
    if (length) {
      len = *length;
    } else {
      const auto& sf = vertices_[from].vars;
      const auto& st = vertices_[to].vars;
      if (!sf || !st) throw Error("edge length required when variable sets are absent");
      len = set_difference_size(*st, *sf);
    }
    edges_.push_back({from, to, std::move(weight), len});
    out_[from].push_back(edges_.size() - 1);
    in_[to].push_back(edges_.size() - 1);
    return edges_.size() - 1;
  }

  FlowId add_flow(std::string name) {
    flows_.push_back({std::move(name), {}});
    return flows_.size() - 1;
  }

  void set_flow(FlowId y, EdgeId e, const Scalar& value) {
    auto& values = flows_.at(y).values;
    if (value == Scalar(0)) {
      values.erase(e);
    } else {
      values[e] = value;
    }
  }

  Scalar flow(FlowId y, EdgeId e) const {
    const auto& values = flows_[y].values;
    auto it = values.find(e);
    return it == values.end() ? Scalar(0) : it->second;
  }

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t flow_count() const noexcept { return flows_.size(); }
  const Vertex& vertex(VertexId v) const { return vertices_.at(v); }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<Flow>& flows() const noexcept { return flows_; }
  const std::vector<EdgeId>& out_edges(VertexId v) const { return out_.at(v); }
  const std::vector<EdgeId>& in_edges(VertexId v) const { return in_.at(v); }

  EdgeSet all_edges() const {
    EdgeSet all(edges_.size());
    for (EdgeId e = 0; e < all.size(); ++e) all[e] = e;
    return all;
  }

  /// Distance from the root; -1 when unreachable.
  std::vector<int> levels() const {
    std::vector<int> level(vertices_.size(), -1);
    std::deque<VertexId> queue{root()};
    level[root()] = 0;
    while (!queue.empty()) {
      VertexId v = queue.front();
      queue.pop_front();
      for (EdgeId e : out_[v]) {
        VertexId w = edges_[e].to;
        if (level[w] < 0) {
          level[w] = level[v] + 1;
          queue.push_back(w);
        }
      }
    }
    return level;
  }

  std::vector<VertexId> level_vertices(int level) const {
    auto lv = levels();
    std::vector<VertexId> out;
    for (VertexId v = 0; v < lv.size(); ++v) {
      if (lv[v] == level) out.push_back(v);
    }
    return out;
  }

  /// Stage between level i and level j: edges (u, v) with i <= level(u), level(v) <= j.
  EdgeSet stage(int from_level, int to_level) const {
    auto lv = levels();
    EdgeSet out;
    for (EdgeId e = 0; e < edges_.size(); ++e) {
      int a = lv[edges_[e].from];
      int b = lv[edges_[e].to];
      if (a >= 0 && b >= 0 && a >= from_level && b <= to_level) out.push_back(e);
    }
    return out;
  }

  int depth() const {
    auto lv = levels();
    return lv.empty() ? 0 : *std::max_element(lv.begin(), lv.end());
  }

  void set_weight(EdgeId e, Scalar w) { edges_.at(e).weight = std::move(w); }

  /// Same graph and flows over another scalar type.
  template <typename To>
  LearningGraph<To> convert() const {
    LearningGraph<To> out(vertices_[0].name, vertices_[0].vars);
    for (VertexId v = 1; v < vertices_.size(); ++v) out.add_vertex(vertices_[v].name, vertices_[v].vars);
    for (const auto& e : edges_) out.add_edge(e.from, e.to, scalar_cast<To>(e.weight), e.length);
    for (const auto& f : flows_) {
      FlowId y = out.add_flow(f.name);
      for (const auto& [e, value] : f.values) out.set_flow(y, e, scalar_cast<To>(value));
    }
    return out;
  }

  /// Copy without the listed edges; `edge_map[old]` is the new id or nullopt.
  LearningGraph without_edges(const EdgeSet& removed, std::vector<std::optional<EdgeId>>* edge_map = nullptr) const {
    LearningGraph out(vertices_[0].name, vertices_[0].vars);
    for (VertexId v = 1; v < vertices_.size(); ++v) out.add_vertex(vertices_[v].name, vertices_[v].vars);
    std::vector<std::optional<EdgeId>> map(edges_.size());
    for (EdgeId e = 0; e < edges_.size(); ++e) {
      if (std::binary_search(removed.begin(), removed.end(), e)) continue;
      map[e] = out.add_edge(edges_[e].from, edges_[e].to, edges_[e].weight, edges_[e].length);
    }
    for (const auto& f : flows_) {
      FlowId y = out.add_flow(f.name);
      for (const auto& [e, value] : f.values) {
        if (map[e]) out.set_flow(y, *map[e], value);
      }
    }
    if (edge_map) *edge_map = std::move(map);
    return out;
  }

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<Flow> flows_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
};

/// Induced subgraph bookkeeping for an edge set: which vertices are sources
/// (no incoming edge in E) and sinks (no outgoing edge in E).
struct EdgeSetShape {
  std::vector<VertexId> vertices;
  std::vector<VertexId> sources;
  std::vector<VertexId> internal;
};

template <typename Scalar>
EdgeSetShape shape_of(const LearningGraph<Scalar>& g, const EdgeSet& edges) {
  std::unordered_map<VertexId, std::pair<int, int>> degree;  // (in, out) inside E
  for (EdgeId e : edges) {
    ++degree[g.edge(e).to].first;
    ++degree[g.edge(e).from].second;
  }
  EdgeSetShape shape;
  for (const auto& [v, io] : degree) shape.vertices.push_back(v);
  std::sort(shape.vertices.begin(), shape.vertices.end());
  for (VertexId v : shape.vertices) {
    auto [in, out] = degree[v];
    if (in == 0) shape.sources.push_back(v);
    if (in > 0 && out > 0) shape.internal.push_back(v);
  }
  return shape;
}

namespace detail {

template <typename Scalar>
std::unordered_map<VertexId, std::pair<Scalar, Scalar>> flow_balance(const LearningGraph<Scalar>& g,
                                                                     const EdgeSet& edges, FlowId y) {
  std::unordered_map<VertexId, std::pair<Scalar, Scalar>> balance;  // (in, out)
  for (EdgeId e : edges) {
    Scalar p = g.flow(y, e);
    balance[g.edge(e).to].first += p;
    balance[g.edge(e).from].second += p;
  }
  return balance;
}

template <typename Scalar>
void require_positive_weights(const LearningGraph<Scalar>& g, const EdgeSet& edges) {
  for (EdgeId e : edges) {
    if (!(g.edge(e).weight > Scalar(0))) {
      throw ZeroWeight("edge " + std::to_string(e) + " has non-positive weight");
    }
  }
}

}  // namespace detail

/// Conservation at every internal vertex of the subgraph induced by `edges`, for
/// every flow. `rel_tol` only matters for floating-point scalars.
template <typename Scalar>
bool is_flow_preserving(const LearningGraph<Scalar>& g, const EdgeSet& edges, double rel_tol = 1e-9) {
  auto shape = shape_of(g, edges);
  for (FlowId y = 0; y < g.flow_count(); ++y) {
    auto balance = detail::flow_balance(g, edges, y);
    for (VertexId v : shape.internal) {
      const auto& [in, out] = balance[v];
      if (!ScalarTraits<Scalar>::equal(in, out, rel_tol)) return false;
    }
  }
  return true;
}

/// p_y(E): total flow leaving the sources of the induced subgraph.
template <typename Scalar>
Scalar flow_value(const LearningGraph<Scalar>& g, const EdgeSet& edges, FlowId y, double rel_tol = 1e-9) {
  auto shape = shape_of(g, edges);
  auto balance = detail::flow_balance(g, edges, y);
  for (VertexId v : shape.internal) {
    const auto& [in, out] = balance[v];
    if (!ScalarTraits<Scalar>::equal(in, out, rel_tol)) {
      throw NotFlowPreserving("flow '" + g.flows()[y].name + "' is not conserved at vertex " +
                              std::to_string(v));
    }
  }
  Scalar total(0);
  for (VertexId s : shape.sources) total += balance[s].second;
  return total;
}

/// Negative complexity C0(E) = sum of length * weight.
template <typename Scalar>
Scalar c0(const LearningGraph<Scalar>& g, const EdgeSet& edges) {
  detail::require_positive_weights(g, edges);
  Scalar total(0);
  for (EdgeId e : edges) total += Scalar(g.edge(e).length) * g.edge(e).weight;
  return total;
}

/// Positive complexity under one flow: sum of (length / weight) (p_y(e) / p_y(E))^2,
/// zero when no flow enters E.
template <typename Scalar>
Scalar c1y(const LearningGraph<Scalar>& g, const EdgeSet& edges, FlowId y, double rel_tol = 1e-9) {
  detail::require_positive_weights(g, edges);
  Scalar value = flow_value(g, edges, y, rel_tol);
  if (value == Scalar(0)) return Scalar(0);
  Scalar total(0);
  for (EdgeId e : edges) {
    Scalar p = g.flow(y, e);
    if (p == Scalar(0) || g.edge(e).length == 0) continue;
    Scalar ratio = p / value;
    total += Scalar(g.edge(e).length) / g.edge(e).weight * ratio * ratio;
  }
  return total;
}

/// max over the stored flows only.
template <typename Scalar>
Scalar c1(const LearningGraph<Scalar>& g, const EdgeSet& edges, double rel_tol = 1e-9) {
  Scalar best(0);
  for (FlowId y = 0; y < g.flow_count(); ++y) {
    Scalar v = c1y(g, edges, y, rel_tol);
    if (v > best) best = v;
  }
  return best;
}

/// C(E)^2 = C0(E) C1(E); exact for exact scalars.
template <typename Scalar>
Scalar complexity_squared(const LearningGraph<Scalar>& g, const EdgeSet& edges, double rel_tol = 1e-9) {
  return c0(g, edges) * c1(g, edges, rel_tol);
}

/// C(E) = sqrt(C0 C1). Rational graphs yield an exact RadicalSum.
template <typename Scalar>
typename ScalarTraits<Scalar>::sqrt_type complexity(const LearningGraph<Scalar>& g, const EdgeSet& edges,
                                                    double rel_tol = 1e-9) {
  return ScalarTraits<Scalar>::sqrt(complexity_squared(g, edges, rel_tol));
}

template <typename Scalar>
double complexity_value(const LearningGraph<Scalar>& g, const EdgeSet& edges, double rel_tol = 1e-9) {
  return std::sqrt(ScalarTraits<Scalar>::to_double(complexity_squared(g, edges, rel_tol)));
}

// ---------------------------------------------------------------------------
// Validation

enum class Violation {
  Cycle,
  MultipleRoots,
  RootVarsNonEmpty,
  VarsNotMonotone,
  LengthMismatch,
  NonPositiveWeight,
  NegativeFlow,
  FlowNotUnit,
  ConservationViolated,
  SinkNotCertificate,
};

std::string to_string(Violation v);

struct ValidationEntry {
  Violation kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationEntry> entries;
  bool ok() const noexcept { return entries.empty(); }
  std::size_t count(Violation kind) const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [&](const auto& e) { return e.kind == kind; }));
  }
};

/// Decides whether S(sink) contains a 1-certificate for input y.
using CertificateChecker = std::function<bool(const VarSet& vars, FlowId y)>;

/// Lists every violated structural invariant; never throws on a malformed graph.
template <typename Scalar>
ValidationReport validate(const LearningGraph<Scalar>& g, const CertificateChecker& certificate = {},
                          double rel_tol = 1e-9) {
  ValidationReport report;
  auto add = [&](Violation kind, std::string detail) { report.entries.push_back({kind, std::move(detail)}); };

  // Kahn's algorithm for acyclicity
  std::vector<std::size_t> indegree(g.vertex_count(), 0);
  for (const auto& e : g.edges()) ++indegree[e.to];
  for (VertexId v = 1; v < g.vertex_count(); ++v) {
    if (indegree[v] == 0) add(Violation::MultipleRoots, "vertex " + std::to_string(v) + " has no parent");
  }
  {
    auto remaining = indegree;
    std::vector<VertexId> stack;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (remaining[v] == 0) stack.push_back(v);
    }
    std::size_t seen = 0;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      ++seen;
      for (EdgeId e : g.out_edges(v)) {
        if (--remaining[g.edge(e).to] == 0) stack.push_back(g.edge(e).to);
      }
    }
    if (seen != g.vertex_count()) add(Violation::Cycle, "graph contains a directed cycle");
  }

  const auto& root_vars = g.vertex(LearningGraph<Scalar>::root()).vars;
  if (root_vars && !root_vars->empty()) add(Violation::RootVarsNonEmpty, "S(root) is not empty");

  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    if (!(edge.weight > Scalar(0))) add(Violation::NonPositiveWeight, "edge " + std::to_string(e));
    const auto& sf = g.vertex(edge.from).vars;
    const auto& st = g.vertex(edge.to).vars;
    if (sf && st) {
      if (!is_subset(*sf, *st)) add(Violation::VarsNotMonotone, "edge " + std::to_string(e));
      int expected = set_difference_size(*st, *sf);
      if (edge.length != expected) {
        add(Violation::LengthMismatch, "edge " + std::to_string(e) + ": length " + std::to_string(edge.length) +
                                           " but |S(v)\\S(u)| = " + std::to_string(expected));
      }
    }
  }

  for (FlowId y = 0; y < g.flow_count(); ++y) {
    const std::string& name = g.flows()[y].name;
    std::vector<Scalar> in(g.vertex_count(), Scalar(0));
    std::vector<Scalar> out(g.vertex_count(), Scalar(0));
    for (const auto& [e, p] : g.flows()[y].values) {
      if (p < Scalar(0)) add(Violation::NegativeFlow, "flow '" + name + "' on edge " + std::to_string(e));
      in[g.edge(e).to] += p;
      out[g.edge(e).from] += p;
    }
    if (!ScalarTraits<Scalar>::equal(out[0], Scalar(1), rel_tol) || !(in[0] == Scalar(0))) {
      add(Violation::FlowNotUnit, "flow '" + name + "' leaves the root with value " +
                                      ScalarTraits<Scalar>::to_string(out[0]));
    }
    for (VertexId v = 1; v < g.vertex_count(); ++v) {
      if (out[v] == Scalar(0)) {
        if (in[v] > Scalar(0) && certificate) {
          const auto& vars = g.vertex(v).vars;
          if (!vars || !certificate(*vars, y)) {
            add(Violation::SinkNotCertificate,
                "sink " + std::to_string(v) + " of flow '" + name + "' holds no 1-certificate");
          }
        }
        continue;
      }
      if (!ScalarTraits<Scalar>::equal(in[v], out[v], rel_tol)) {
        add(Violation::ConservationViolated, "flow '" + name + "' at vertex " + std::to_string(v));
      }
    }
  }
  return report;
}

inline std::string to_string(Violation v) {
  switch (v) {
    case Violation::Cycle: return "Cycle";
    case Violation::MultipleRoots: return "MultipleRoots";
    case Violation::RootVarsNonEmpty: return "RootVarsNonEmpty";
    case Violation::VarsNotMonotone: return "VarsNotMonotone";
    case Violation::LengthMismatch: return "LengthMismatch";
    case Violation::NonPositiveWeight: return "NonPositiveWeight";
    case Violation::NegativeFlow: return "NegativeFlow";
    case Violation::FlowNotUnit: return "FlowNotUnit";
    case Violation::ConservationViolated: return "ConservationViolated";
    case Violation::SinkNotCertificate: return "SinkNotCertificate";
  }
  return "Unknown";
}

using ExactLearningGraph = LearningGraph<Rational>;

}  // namespace lg
