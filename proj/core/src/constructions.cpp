#include "lg/constructions.hpp"

#include <algorithm>
#include <cmath>

#include "lg/errors.hpp"

namespace lg {

std::string to_string(StageKind kind) {
  switch (kind) {
    case StageKind::Setup: return "setup";
    case StageKind::LoadVertex: return "load-vertex";
    case StageKind::Hiding: return "hiding";
    case StageKind::LoadEdge: return "load-edge";
    case StageKind::Collision: return "collision";
    case StageKind::CollisionSetup: return "collision-setup";
    case StageKind::CollisionEdge: return "collision-edge";
  }
  return "unknown";
}

namespace {

int edge_index(const PatternGraph& h, int a, int b) {
  if (a > b) std::swap(a, b);
  const auto& edges = h.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].a == a && edges[i].b == b) return static_cast<int>(i);
  }
  throw InvalidPattern("no pattern edge {" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "}");
}

StageSpec make_stage(int id, StageKind kind, int index, CostTerm length, CostTerm degree_ratio,
                     CostTerm vertex_ratio, std::string description) {
  return {id, kind, index, length, degree_ratio, vertex_ratio, std::move(description)};
}

nlohmann::json stage_json(const StageSpec& s) {
  return {{"id", s.id},
          {"kind", to_string(s.kind)},
          {"index", s.index},
          {"length", s.length.to_string()},
          {"degree_ratio", s.degree_ratio.to_string()},
          {"vertex_ratio", s.vertex_ratio.to_string()},
          {"cost", s.cost().to_string()},
          {"description", s.description}};
}

}  // namespace

ConstructionPlan g1_stage_specs(const PatternGraph& h, int u) {
  if (u < 1 || u > h.k()) throw InvalidPattern("u must lie in [1, k]");
  ConstructionPlan plan{h, "g1", u, {}, {}, std::nullopt};
  for (const auto& e : h.prefix_edges(u)) plan.loaded_edges.push_back(edge_index(h, e.a, e.b));
  const int m = plan.m();
  if (m < 1) throw InvalidPattern("H_[1,u] has no edges");

  int id = 0;
  plan.stages.push_back(make_stage(id++, StageKind::Setup, 0, CostTerm::s() * CostTerm::r(2), CostTerm::one(),
                                   CostTerm::one(),
                                   "choose A_1..A_u of size r-1; every block of type "
                                   "({(r-1-rs,rs),(rs,rs-1)},{(r-1-rs,rs),(rs,rs-1)})"));
  for (int t = 1; t <= u; ++t) {
    plan.stages.push_back(make_stage(id++, StageKind::LoadVertex, t, CostTerm::s() * CostTerm::r(), CostTerm::n(),
                                     CostTerm::n_over_r(t - 1),
                                     "add a_" + std::to_string(t) + " to A_" + std::to_string(t) +
                                         ", joined to the degree rs-1 vertices of each neighbouring class"));
  }
  plan.stages.push_back(make_stage(id++, StageKind::Hiding, 0, CostTerm::r(), CostTerm::one(), CostTerm::n_over_r(u),
                                   "add r/2 vertex-disjoint edges per block: ({(r,rs)},{(r,rs)}) -> "
                                   "({(r/2,rs),(r/2,rs+1)},{(r/2,rs),(r/2,rs+1)})"));
  for (int t = 1; t <= m; ++t) {
    const auto& e = h.edges()[static_cast<std::size_t>(plan.loaded_edges[static_cast<std::size_t>(t - 1)])];
    plan.stages.push_back(make_stage(
        id++, StageKind::LoadEdge, t, CostTerm::one(), CostTerm::r(2), CostTerm::n_over_r(u) * CostTerm::s(-(t - 1)),
        "load {a_" + std::to_string(e.a + 1) + ",a_" + std::to_string(e.b + 1) +
            "}: ({(r/2,rs),(r/2,rs+1)},..) -> ({(r/2-1,rs),(r/2+1,rs+1)},..)"));
  }
  return plan;
}

ConstructionPlan g2_plan(const PatternGraph& h) {
  const int k = h.k();
  const int d = h.min_degree();
  if (h.degree(k - 1) != d) throw InvalidPattern("vertex k must have minimum degree");
  ConstructionPlan plan = g1_stage_specs(h, k - 1);
  plan.construction = "g2";
  const int m_prime = plan.m();
  CostTerm vr = CostTerm::s(-m_prime) * CostTerm::n_over_r(k - 1);
  CostTerm length = optimal_collision_cost(d) / CostTerm::n(Rational(1, 2));  // r^(d/(d+1))
  plan.stages.push_back(make_stage(static_cast<int>(plan.stages.size()), StageKind::Collision, 0, length,
                                   CostTerm::n(), vr,
                                   "search a_" + std::to_string(k) + " and " + std::to_string(d) +
                                       "-wise collision at lambda = r^(" + to_string(make_rational(d, d + 1)) + ")"));
  plan.subroutine = CollisionSubroutine{d, vr.sqrt(), collision_subroutine_specs(d)};
  return plan;
}

std::vector<StageSpec> collision_subroutine_specs(int d) {
  if (d < 1) throw InvalidPattern("collision degree must be at least 1");
  std::vector<StageSpec> out;
  out.push_back(make_stage(0, StageKind::CollisionSetup, 0, CostTerm::lambda(), CostTerm::n(), CostTerm::one(),
                           "choose u outside every class and load lambda edges to each of B_1..B_d"));
  for (int t = 1; t <= d; ++t) {
    CostTerm vr = CostTerm::n() * (CostTerm::r() / CostTerm::lambda()).pow(t - 1);
    out.push_back(make_stage(t, StageKind::CollisionEdge, t, CostTerm::one(), CostTerm::r(), vr,
                             "load {u,a_" + std::to_string(t) + "}"));
  }
  return out;
}

CostTerm optimal_lambda(int d) { return CostTerm::r(make_rational(d, d + 1)); }

CostTerm optimal_collision_cost(int d) { return CostTerm::n(Rational(1, 2)) * CostTerm::r(make_rational(d, d + 1)); }

std::vector<double> collision_stage_costs(int d, double n, double r, double lambda) {
  if (lambda < 1.0 || lambda > r) throw InfeasibleParameters("lambda must lie in [1, r]");
  std::vector<double> out;
  for (const auto& s : collision_subroutine_specs(d)) out.push_back(s.cost().evaluate(n, r, 1.0, lambda));
  return out;
}

WalkCosts quantum_walk_costs(const PatternGraph& h) {
  const int k = h.k();
  const int d = h.min_degree();
  CostTerm nr = CostTerm::n_over_r(make_rational(k - 1, 2));
  return {CostTerm::r(2), nr * CostTerm::r(Rational(3, 2)), nr * optimal_collision_cost(d)};
}

WalkExponents walk_exponents(const WalkCosts& costs, const Rational& x) {
  ExponentPoint p{x, 0, 0};
  return {costs.setup.exponent_at(p), costs.update.exponent_at(p), costs.check.exponent_at(p)};
}

nlohmann::json ConstructionPlan::to_json() const {
  nlohmann::json j;
  j["pattern"] = nlohmann::json::parse(pattern.to_json());
  j["construction"] = construction;
  j["u"] = u;
  j["m"] = m();
  j["leading_order"] = leading_order;
  nlohmann::json loaded = nlohmann::json::array();
  for (int e : loaded_edges) {
    const auto& pe = pattern.edges()[static_cast<std::size_t>(e)];
    loaded.push_back({pe.a + 1, pe.b + 1});
  }
  j["loaded_edges"] = loaded;
  j["stages"] = nlohmann::json::array();
  for (const auto& s : stages) j["stages"].push_back(stage_json(s));
  if (subroutine) {
    nlohmann::json sub{{"d", subroutine->d}, {"outer", subroutine->outer.to_string()}};
    sub["stages"] = nlohmann::json::array();
    for (const auto& s : subroutine->stages) sub["stages"].push_back(stage_json(s));
    j["subroutine"] = sub;
  }
  return j;
}

// ---------------------------------------------------------------------------

int materialized_stage_count(const ConstructionPlan& plan) {
  int first = plan.u + plan.m() + 2;
  return plan.subroutine ? first + plan.subroutine->d + 1 : first;
}

std::pair<StageKind, int> materialized_stage(const ConstructionPlan& plan, int stage_id) {
  const int u = plan.u;
  const int m = plan.m();
  if (stage_id < 0 || stage_id >= materialized_stage_count(plan)) throw Error("stage id out of range");
  if (stage_id == 0) return {StageKind::Setup, 0};
  if (stage_id <= u) return {StageKind::LoadVertex, stage_id};
  if (stage_id == u + 1) return {StageKind::Hiding, 0};
  if (stage_id <= u + 1 + m) return {StageKind::LoadEdge, stage_id - u - 1};
  int t = stage_id - (u + m + 2);
  return {t == 0 ? StageKind::CollisionSetup : StageKind::CollisionEdge, t};
}

long exact_stage_length(const ConstructionPlan& plan, int stage_id, int r, int rs, int lambda) {
  auto [kind, t] = materialized_stage(plan, stage_id);
  switch (kind) {
    case StageKind::Setup:
      return static_cast<long>(plan.m()) * block_types::setup(r, rs).edge_count();
    case StageKind::LoadVertex: {
      long degree = 0;
      for (int e : plan.loaded_edges) {
        const auto& pe = plan.pattern.edges()[static_cast<std::size_t>(e)];
        if (pe.a == t - 1 || pe.b == t - 1) ++degree;
      }
      return degree * rs;
    }
    case StageKind::Hiding:
      return static_cast<long>(plan.m()) * (r / 2);
    case StageKind::LoadEdge:
      return 1;
    case StageKind::CollisionSetup:
      return static_cast<long>(plan.subroutine->d) * lambda;
    case StageKind::CollisionEdge:
      return 1;
    case StageKind::Collision:
      break;
  }
  throw Error("no exact length for this stage");
}

std::vector<std::pair<int, BipartiteType>> expected_block_types(const ConstructionPlan& plan, int stage_id, int r,
                                                                int rs, int lambda) {
  auto [kind, t] = materialized_stage(plan, stage_id);
  std::vector<std::pair<int, BipartiteType>> out;
  const auto& edges = plan.pattern.edges();
  for (std::size_t pos = 0; pos < plan.loaded_edges.size(); ++pos) {
    int e = plan.loaded_edges[pos];
    const auto& pe = edges[static_cast<std::size_t>(e)];
    BipartiteType type;
    switch (kind) {
      case StageKind::Setup:
        type = block_types::setup(r, rs);
        break;
      case StageKind::LoadVertex:
        if (pe.b <= t - 1) {
          type = block_types::regular(r, rs);
        } else if (pe.a <= t - 1) {
          type = block_types::half_loaded(r, rs);
        } else {
          type = block_types::setup(r, rs);
        }
        break;
      case StageKind::Hiding:
        type = block_types::hidden(r, rs);
        break;
      case StageKind::LoadEdge:
        type = static_cast<int>(pos) < t ? block_types::hidden_loaded(r, rs) : block_types::hidden(r, rs);
        break;
      default:
        type = block_types::hidden_loaded(r, rs);
        break;
    }
    out.emplace_back(e, type);
  }
  if (kind == StageKind::CollisionSetup || kind == StageKind::CollisionEdge) {
    const int last = plan.pattern.k() - 1;
    auto nbrs = plan.pattern.neighbors(last);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      int extra = static_cast<int>(i) < t ? 1 : 0;
      out.emplace_back(edge_index(plan.pattern, nbrs[i], last), block_types::collision(r, lambda + extra));
    }
  }
  return out;
}

int min_feasible_n(const ConstructionPlan& plan, int r) { return plan.u * (r - 1) + plan.pattern.k(); }

}  // namespace lg
