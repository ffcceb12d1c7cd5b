#include "lg/explicit_graph.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "lg/bipartite_sampler.hpp"
#include "lg/lemmas.hpp"

namespace lg {
namespace {

using Transition = std::function<void(const PartiteLabel&)>;

void for_each_subset(const std::vector<int>& pool, int size, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (static_cast<int>(pick.size()) == size) {
      f(pick);
      return;
    }
    for (std::size_t i = from; i < pool.size(); ++i) {
      pick.push_back(pool[i]);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
}

/// Perfect matchings rows -> cols avoiding existing edges of `block`.
void for_each_matching(const LabelBlock& block, const std::vector<int>& rows, const std::vector<int>& cols,
                       const std::function<void(const std::vector<std::pair<int, int>>&)>& f) {
  std::vector<std::pair<int, int>> chosen;
  std::vector<char> used(cols.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == rows.size()) {
      f(chosen);
      return;
    }
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (used[j] || block.has_edge(rows[i], cols[j])) continue;
      used[j] = 1;
      chosen.emplace_back(rows[i], cols[j]);
      rec(i + 1);
      chosen.pop_back();
      used[j] = 0;
    }
  };
  rec(0);
}

class Builder {
 public:
  Builder(const ConstructionPlan& plan, int n, int r, int rs) : plan_(plan), n_(n), r_(r), rs_(rs) {}

  void setup(const Transition& emit) const {
    PartiteLabel base(plan_.u);
    std::vector<int> all(static_cast<std::size_t>(n_));
    for (int v = 0; v < n_; ++v) all[static_cast<std::size_t>(v)] = v;
    std::function<void(int, PartiteLabel&)> classes = [&](int c, PartiteLabel& label) {
      if (c == plan_.u) {
        blocks(0, label, emit);
        return;
      }
      std::vector<int> pool;
      for (int v : all) {
        if (label.class_of(v) < 0) pool.push_back(v);
      }
      for_each_subset(pool, r_ - 1, [&](const std::vector<int>& pick) {
        label.set_members(c, pick);
        classes(c + 1, label);
        label.set_members(c, {});
      });
    };
    classes(0, base);
  }

  void load_vertex(int t, const PartiteLabel& from, const Transition& emit) const {
    const int v = t - 1;
    for (int x = 0; x < n_; ++x) {
      if (from.class_of(x) >= 0) continue;
      PartiteLabel label = from;
      std::vector<std::tuple<int, int, int>> joins;
      for (int e : plan_.loaded_edges) {
        const auto& pe = plan_.pattern.edges()[static_cast<std::size_t>(e)];
        if (pe.a != v && pe.b != v) continue;
        int other = pe.a == v ? pe.b : pe.a;
        const LabelBlock* b = from.find_block(e);
        for (int y : from.members(other)) {
          if (b->degree(y) != rs_ - 1) continue;
          if (pe.a == v) {
            joins.emplace_back(e, x, y);
          } else {
            joins.emplace_back(e, y, x);
          }
        }
      }
      label.insert_member(v, x);
      for (auto [e, a, b] : joins) {
        const auto& pe = plan_.pattern.edges()[static_cast<std::size_t>(e)];
        label.block(e, pe.a, pe.b).add_edge(a, b);
      }
      emit(label);
    }
  }

  void hide(const PartiteLabel& from, const Transition& emit) const {
    std::function<void(std::size_t, const PartiteLabel&)> rec = [&](std::size_t i, const PartiteLabel& label) {
      if (i == plan_.loaded_edges.size()) {
        emit(label);
        return;
      }
      int e = plan_.loaded_edges[i];
      const auto& pe = plan_.pattern.edges()[static_cast<std::size_t>(e)];
      const LabelBlock& block = *label.find_block(e);
      for_each_subset(label.members(pe.a), r_ / 2, [&](const std::vector<int>& rows) {
        for_each_subset(label.members(pe.b), r_ / 2, [&](const std::vector<int>& cols) {
          for_each_matching(block, rows, cols, [&](const std::vector<std::pair<int, int>>& match) {
            PartiteLabel next = label;
            LabelBlock& nb = next.block(e, pe.a, pe.b);
            for (auto [x, y] : match) nb.add_edge(x, y);
            rec(i + 1, next);
          });
        });
      });
    };
    rec(0, from);
  }

  void load_edge(int stage_id, int t, const PartiteLabel& from, const Transition& emit) const {
    int e = plan_.loaded_edges[static_cast<std::size_t>(t - 1)];
    const auto& pe = plan_.pattern.edges()[static_cast<std::size_t>(e)];
    const LabelBlock& block = *from.find_block(e);
    auto types = expected_block_types(plan_, stage_id, r_, rs_);
    BipartiteType type;
    for (const auto& [edge, ty] : types) {
      if (edge == e) type = ty;
    }
    for (int x : from.members(pe.a)) {
      for (int y : from.members(pe.b)) {
        if (block.has_edge(x, y)) continue;
        PartiteLabel label = from;
        label.block(e, pe.a, pe.b).add_edge(x, y);
        if (label.block_matches(e, type)) emit(label);
      }
    }
  }

  /// The setup blocks of every loaded edge, all placements.
  void blocks(std::size_t i, PartiteLabel& label, const Transition& emit) const {
    if (i == plan_.loaded_edges.size()) {
      emit(label);
      return;
    }
    int e = plan_.loaded_edges[i];
    const auto& pe = plan_.pattern.edges()[static_cast<std::size_t>(e)];
    const auto left = label.members(pe.a);
    const auto right = label.members(pe.b);
    for (const auto& local : enumerate_bipartite(block_types::setup(r_, rs_))) {
      PartiteLabel next = label;
      LabelBlock& b = next.block(e, pe.a, pe.b);
      for (auto [x, y] : local) b.add_edge(left[static_cast<std::size_t>(x)], right[static_cast<std::size_t>(y)]);
      blocks(i + 1, next, emit);
    }
  }

 private:
  const ConstructionPlan& plan_;
  int n_;
  int r_;
  int rs_;
};

/// Whether the transition into `to` at stage `stage_id` respects witness `a`.
bool allowed(const ConstructionPlan& plan, int stage_id, const PartiteLabel& to, const Witness& a, int rs) {
  auto [kind, t] = materialized_stage(plan, stage_id);
  switch (kind) {
    case StageKind::Setup:
      return std::none_of(a.begin(), a.end(), [&](int v) { return to.class_of(v) >= 0; });
    case StageKind::LoadVertex:
      return to.class_of(a[static_cast<std::size_t>(t - 1)]) == t - 1;
    case StageKind::Hiding:
      for (int e : plan.loaded_edges) {
        const auto& pe = plan.pattern.edges()[static_cast<std::size_t>(e)];
        if (to.degree_in_block(e, a[static_cast<std::size_t>(pe.a)]) != rs) return false;
        if (to.degree_in_block(e, a[static_cast<std::size_t>(pe.b)]) != rs) return false;
      }
      return true;
    case StageKind::LoadEdge: {
      int e = plan.loaded_edges[static_cast<std::size_t>(t - 1)];
      const auto& pe = plan.pattern.edges()[static_cast<std::size_t>(e)];
      const LabelBlock* b = to.find_block(e);
      return b != nullptr && b->has_edge(a[static_cast<std::size_t>(pe.a)], a[static_cast<std::size_t>(pe.b)]);
    }
    default:
      return false;
  }
}

}  // namespace

std::optional<VertexId> LabeledLearningGraph::find(const PartiteLabel& label) const {
  auto it = index.find(label);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeId> LabeledLearningGraph::find_edge(VertexId from, VertexId to) const {
  auto it = edge_index.find({from, to});
  if (it == edge_index.end()) return std::nullopt;
  return it->second;
}

bool LabeledLearningGraph::certificate(const VarSet& vars, FlowId y) const {
  HostGraph host(n);
  const auto& a = witnesses.at(y);
  for (const auto& e : plan.pattern.edges()) host.add_edge(a[static_cast<std::size_t>(e.a)], a[static_cast<std::size_t>(e.b)]);
  return is_certificate(vars, host, plan.pattern);
}

LabeledLearningGraph explicit_g1(const PatternGraph& h, int n, int r, const Rational& s, std::size_t max_vertices) {
  if (auto why = feasibility_violation(r, s); !why.empty()) throw InfeasibleParameters(why);
  const int k = h.k();
  LabeledLearningGraph out{g1_stage_specs(h, k), n, r, 0, LearningGraph<Rational>(), {}, {}, {}, {}, {}};
  out.rs = static_cast<int>(Rational(Rational(r) * s).get_num().get_si());
  if (n < min_feasible_n(out.plan, r)) {
    throw InfeasibleParameters("n = " + std::to_string(n) + " is below the smallest feasible n = " +
                               std::to_string(min_feasible_n(out.plan, r)));
  }
  const ConstructionPlan& plan = out.plan;
  Builder builder(plan, n, r, out.rs);

  PartiteLabel root_label;
  out.labels.push_back(root_label);
  out.level.push_back(0);
  out.index.emplace(root_label, LearningGraph<Rational>::root());

  std::vector<VertexId> frontier{LearningGraph<Rational>::root()};
  const int stages = materialized_stage_count(plan);
  for (int stage = 0; stage < stages; ++stage) {
    auto [kind, t] = materialized_stage(plan, stage);
    std::vector<VertexId> next;
    for (VertexId from : frontier) {
      const PartiteLabel source = out.labels[from];
      Transition emit = [&](const PartiteLabel& label) {
        VertexId to = 0;
        auto it = out.index.find(label);
        if (it == out.index.end()) {
          if (out.labels.size() >= max_vertices) {
            throw Error("explicit construction exceeds " + std::to_string(max_vertices) + " vertices");
          }
          to = out.graph.add_vertex(label.to_string(), label.variables());
          out.labels.push_back(label);
          out.level.push_back(stage + 1);
          out.index.emplace(label, to);
          next.push_back(to);
        } else {
          to = it->second;
        }
        if (!out.edge_index.count({from, to})) out.edge_index[{from, to}] = out.graph.add_edge(from, to, Rational(1));
      };
      switch (kind) {
        case StageKind::Setup:
          builder.setup(emit);
          break;
        case StageKind::LoadVertex:
          builder.load_vertex(t, source, emit);
          break;
        case StageKind::Hiding:
          builder.hide(source, emit);
          break;
        case StageKind::LoadEdge:
          builder.load_edge(stage, t, source, emit);
          break;
        default:
          throw Error("explicit construction supports the first construction only");
      }
    }
    frontier = std::move(next);
  }

  // one flow per ordered witness
  Witness a;
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::function<void()> witnesses = [&] {
    if (static_cast<int>(a.size()) == k) {
      out.witnesses.push_back(a);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      used[static_cast<std::size_t>(v)] = 1;
      a.push_back(v);
      witnesses();
      a.pop_back();
      used[static_cast<std::size_t>(v)] = 0;
    }
  };
  witnesses();

  for (const auto& w : out.witnesses) {
    std::string name = "a=";
    for (std::size_t i = 0; i < w.size(); ++i) name += (i ? "," : "") + std::to_string(w[i] + 1);
    FlowId y = out.graph.add_flow(name);
    std::map<VertexId, Rational> inflow{{LearningGraph<Rational>::root(), Rational(1)}};
    while (!inflow.empty()) {
      auto [v, amount] = *inflow.begin();
      inflow.erase(inflow.begin());
      if (out.level[v] == stages) continue;
      std::vector<EdgeId> permitted;
      for (EdgeId e : out.graph.out_edges(v)) {
        VertexId to = out.graph.edge(e).to;
        if (allowed(plan, out.level[v], out.labels[to], w, out.rs)) permitted.push_back(e);
      }
      if (permitted.empty()) throw Inconsistent("flow " + name + " is stuck at " + out.labels[v].to_string());
      Rational share = amount / Rational(static_cast<long>(permitted.size()));
      for (EdgeId e : permitted) {
        out.graph.set_flow(y, e, share);
        inflow[out.graph.edge(e).to] += share;
      }
    }
  }
  return out;
}

}  // namespace lg
