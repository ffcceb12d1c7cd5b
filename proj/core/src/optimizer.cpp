#include "lg/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "lg/errors.hpp"

namespace lg {
namespace {

/// Exponent of a term as c + a*x + b*t.
struct Linear {
  Rational c;
  Rational a;
  Rational b;
};

Linear linear(const CostTerm& term) {
  if (term.depends_on_lambda()) throw DegenerateSystem("term " + term.to_string() + " still depends on lambda");
  return {term.n_exp, term.r_exp, Rational(-term.s_exp)};
}

void check_pattern(const PatternGraph& h) {
  if (h.k() < 3) throw InvalidPattern("k must be at least 3, got " + std::to_string(h.k()));
  if (h.min_degree() < 1) throw InvalidPattern("every vertex needs degree at least 1");
}

std::string fraction(const Rational& q) { return to_string(q); }

}  // namespace

Rational theorem1_t(int k, int m) { return make_rational(k, (k + 1) * (m + 1)); }

Rational theorem1_total(int k, int m) {
  Rational out = Rational(2) - make_rational(2, k + 1) - theorem1_t(k, m);
  out.canonicalize();
  return out;
}

Rational theorem2_t(int k, int d, int m) {
  const int m_prime = m - d;
  Rational out(2 * k - d - 3, k * (d + 1) * (m_prime + 2));
  out.canonicalize();
  return out;
}

Rational theorem2_total(int k, int d, int m) {
  Rational out = Rational(2) - make_rational(2, k) - theorem2_t(k, d, m);
  out.canonicalize();
  return out;
}

Theorem3Exponent theorem3_exponent(const PatternGraph& h) {
  check_pattern(h);
  const int k = h.k();
  const int m = h.m();
  const int d = h.min_degree();
  Theorem3Exponent out;
  out.t1 = Rational(k * k - 2 * (m + 1), k * (k + 1) * (m + 1));
  out.t1.canonicalize();
  out.t2 = theorem2_t(k, d, m);
  out.tie = out.t1 == out.t2;
  out.construction = out.t1 > out.t2 ? "g1" : "g2";
  out.t = std::max(out.t1, out.t2);
  out.total = Rational(2) - make_rational(2, k) - out.t;
  out.total.canonicalize();
  return out;
}

nlohmann::json ExponentSolution::to_json() const {
  nlohmann::json terms_json = nlohmann::json::array();
  for (const auto& term : terms) {
    terms_json.push_back({{"stage", term.stage}, {"name", term.name}, {"exponent", fraction(term.exponent)}});
  }
  return {{"x", fraction(x)}, {"t", fraction(t)}, {"total", fraction(total)}, {"terms", terms_json}};
}

ExponentSolution balance_exponents(const ConstructionPlan& plan) {
  const auto& stages = plan.stages;
  auto find = [&](StageKind kind, int index) -> const StageSpec& {
    for (const auto& s : stages) {
      if (s.kind == kind && s.index == index) return s;
    }
    throw DegenerateSystem("plan has no " + to_string(kind) + " stage " + std::to_string(index));
  };
  const StageSpec& setup = find(StageKind::Setup, 0);
  const StageSpec& update = find(StageKind::LoadVertex, plan.u);
  const StageSpec& last = stages.back();

  Linear s0 = linear(setup.cost());
  Linear s1 = linear(update.cost());
  Linear s2 = linear(last.cost());
  // (s0 - s1) . (x, t) = s1.c - s0.c and likewise for s2
  Rational a1 = s0.a - s1.a, b1 = s0.b - s1.b, c1 = s1.c - s0.c;
  Rational a2 = s0.a - s2.a, b2 = s0.b - s2.b, c2 = s2.c - s0.c;
  Rational det = a1 * b2 - a2 * b1;
  if (det == 0) throw DegenerateSystem("balancing equations are parallel");
  ExponentSolution out;
  out.x = (c1 * b2 - c2 * b1) / det;
  out.t = (a1 * c2 - a2 * c1) / det;
  out.x.canonicalize();
  out.t.canonicalize();
  ExponentPoint point{out.x, out.t, 0};
  out.total = setup.cost().exponent_at(point);

  for (const auto& s : stages) {
    Rational e = s.cost().exponent_at(point);
    out.terms.push_back({s.id, to_string(s.kind) + (s.index > 0 ? " " + std::to_string(s.index) : ""), e});
    if (e > out.total) {
      throw Inconsistent("stage " + std::to_string(s.id) + " (" + to_string(s.kind) + ") has exponent " +
                         fraction(e) + " above the balanced " + fraction(out.total));
    }
  }
  if (!(out.x > 0 && out.x < 1)) throw Inconsistent("balanced x = " + fraction(out.x) + " is outside (0, 1)");
  if (out.t < 0) throw Inconsistent("balanced t = " + fraction(out.t) + " is negative");
  if (plan.subroutine) {
    const int d = plan.subroutine->d;
    Rational guard = out.x / Rational(d + 1) - out.t / 2;
    if (guard > Rational(1, 2)) throw Inconsistent("guard r^(1/(d+1)) s^(1/2) <= n^(1/2) fails");
  }
  return out;
}

std::string to_string(Objective o) { return o == Objective::Max ? "max" : "sum"; }

Objective parse_objective(const std::string& text) {
  if (text == "max") return Objective::Max;
  if (text == "sum") return Objective::Sum;
  throw Error("objective must be max or sum, got '" + text + "'");
}

namespace {

/// Stage costs with double exponents, for fast repeated evaluation.
struct CompiledTerm {
  double coeff = 1.0;
  double n_exp = 0.0;
  double r_exp = 0.0;
  double s_exp = 0.0;
  double lambda_exp = 0.0;

  explicit CompiledTerm(const CostTerm& t)
      : coeff(t.coeff),
        n_exp(to_double(t.n_exp)),
        r_exp(to_double(t.r_exp)),
        s_exp(to_double(t.s_exp)),
        lambda_exp(to_double(t.lambda_exp)) {}

  double log_value(double log_n, double log_r, double log_s, double log_lambda) const {
    return std::log(coeff) + n_exp * log_n + r_exp * log_r + s_exp * log_s + lambda_exp * log_lambda;
  }
};

struct CompiledPlan {
  std::vector<CompiledTerm> stages;
  std::vector<char> collision;
  std::optional<CompiledTerm> outer;
  std::vector<CompiledTerm> inner;

  explicit CompiledPlan(const ConstructionPlan& plan) {
    for (const auto& stage : plan.stages) {
      stages.emplace_back(stage.cost());
      collision.push_back(stage.kind == StageKind::Collision && plan.subroutine);
    }
    if (plan.subroutine) {
      outer.emplace(plan.subroutine->outer);
      for (const auto& s : plan.subroutine->stages) inner.emplace_back(s.cost());
    }
  }

  double cost(double n, int r, int rs, int lambda, Objective objective, std::vector<double>* stage_costs) const {
    if (outer && (lambda < 1 || lambda > r)) throw InfeasibleParameters("lambda must lie in [1, r]");
    const double ln = std::log(n);
    const double lr = std::log(static_cast<double>(r));
    const double ls = std::log(static_cast<double>(rs) / r);
    const double ll = outer ? std::log(static_cast<double>(lambda)) : 0.0;
    double total = 0.0;
    if (stage_costs) stage_costs->clear();
    for (std::size_t i = 0; i < stages.size(); ++i) {
      double c = 0.0;
      if (collision[i]) {
        double sub = 0.0;
        for (const auto& part : inner) {
          double v = std::exp(part.log_value(ln, lr, ls, ll));
          sub = objective == Objective::Max ? std::max(sub, v) : sub + v;
        }
        c = std::exp(outer->log_value(ln, lr, ls, ll)) * sub;
      } else {
        c = std::exp(stages[i].log_value(ln, lr, ls, ll));
      }
      if (stage_costs) stage_costs->push_back(c);
      total = objective == Objective::Max ? std::max(total, c) : total + c;
    }
    return total;
  }
};

}  // namespace

double plan_cost(const ConstructionPlan& plan, double n, int r, int rs, int lambda, Objective objective,
                 std::vector<double>* stage_costs) {
  return CompiledPlan(plan).cost(n, r, rs, lambda, objective, stage_costs);
}

nlohmann::json NumericOptimum::to_json() const {
  return {{"r", r},
          {"rs", rs},
          {"s", s()},
          {"lambda", lambda},
          {"cost", cost},
          {"log_cost", log_cost},
          {"predicted", fraction(predicted)},
          {"predicted_value", to_double(predicted)},
          {"stage_costs", stage_costs},
          {"evaluations", evaluations}};
}

namespace {

struct Point {
  int r = 0;
  int rs = 0;
  int lambda = 0;
  double cost = 0.0;
};

/// a better than b: lower cost, then smaller r, then larger s.
bool better(const Point& a, const Point& b) {
  double scale = std::max(std::abs(a.cost), std::abs(b.cost));
  if (std::abs(a.cost - b.cost) > 1e-12 * scale) return a.cost < b.cost;
  if (a.r != b.r) return a.r < b.r;
  // larger s = rs / r, compared exactly
  long lhs = static_cast<long>(a.rs) * b.r;
  long rhs = static_cast<long>(b.rs) * a.r;
  if (lhs != rhs) return lhs > rhs;
  return a.lambda < b.lambda;
}

/// Integers round(lo * (hi/lo)^(i/steps)) for i = 0..steps, deduplicated, optionally even.
std::vector<int> log_grid(int lo, int hi, int per_decade, bool even) {
  std::set<int> out;
  if (hi < lo) return {};
  double span = std::log10(static_cast<double>(hi) / lo);
  int steps = std::max(1, static_cast<int>(std::ceil(span * per_decade)));
  for (int i = 0; i <= steps; ++i) {
    double v = lo * std::pow(static_cast<double>(hi) / lo, static_cast<double>(i) / steps);
    int q = static_cast<int>(std::llround(v));
    if (even) q = std::max(2, static_cast<int>(2 * std::llround(v / 2.0)));
    q = std::clamp(q, lo, hi);
    if (even && q % 2) --q;
    if (q >= lo) out.insert(q);
  }
  return {out.begin(), out.end()};
}

class Search {
 public:
  Search(const ConstructionPlan& plan, double n, Objective objective)
      : plan_(plan), compiled_(plan), n_(n), objective_(objective) {
    int by_n = static_cast<int>(std::min(n, 1e9));
    // u classes of r-1 vertices plus k witness vertices must fit in n
    max_r_ = plan.u > 0 ? (by_n - plan.pattern.k()) / plan.u + 1 : by_n;
    max_r_ = std::min(max_r_, by_n);
    if (max_r_ % 2) --max_r_;
  }

  bool feasible() const { return max_r_ >= 2; }

  Point evaluate(int r, int rs, int lambda) {
    ++evaluations;
    return {r, rs, lambda, compiled_.cost(n_, r, rs, lambda, objective_, nullptr)};
  }

  /// Best lambda for (r, rs) on a grid plus the rounded continuous optimum.
  Point best_lambda(int r, int rs, int per_decade) {
    if (!plan_.subroutine) return evaluate(r, rs, 0);
    auto lambdas = log_grid(1, r, per_decade, false);
    double star = std::pow(static_cast<double>(r), static_cast<double>(plan_.subroutine->d) / (plan_.subroutine->d + 1));
    lambdas.push_back(std::clamp(static_cast<int>(std::floor(star)), 1, r));
    lambdas.push_back(std::clamp(static_cast<int>(std::ceil(star)), 1, r));
    std::optional<Point> best;
    for (int lam : lambdas) {
      Point p = evaluate(r, rs, lam);
      if (!best || better(p, *best)) best = p;
    }
    return *best;
  }

  Point grid(int per_decade) {
    std::optional<Point> best;
    for (int r : log_grid(2, max_r_, per_decade, true)) {
      for (int rs : log_grid(1, r - 1, per_decade, false)) {
        Point p = best_lambda(r, rs, per_decade);
        if (!best || better(p, *best)) best = p;
      }
    }
    return *best;
  }

  /// Coordinate descent with shrinking steps.
  Point descend(Point p) {
    int step_r = std::max(2, (p.r / 4) & ~1);
    int step_s = std::max(1, p.rs / 4);
    int step_l = std::max(1, p.lambda / 4);
    while (true) {
      bool moved = false;
      std::vector<std::tuple<int, int, int>> moves;
      for (int dr : {-step_r, step_r}) moves.emplace_back(p.r + dr, p.rs, p.lambda);
      for (int ds : {-step_s, step_s}) moves.emplace_back(p.r, p.rs + ds, p.lambda);
      for (int dr : {-step_r, step_r}) {
        // keep s roughly fixed while moving r
        int rs = static_cast<int>(std::llround(static_cast<double>(p.rs) * (p.r + dr) / p.r));
        moves.emplace_back(p.r + dr, rs, p.lambda);
      }
      if (plan_.subroutine) {
        for (int dl : {-step_l, step_l}) moves.emplace_back(p.r, p.rs, p.lambda + dl);
      }
      for (auto [r, rs, lam] : moves) {
        if (r < 2 || r > max_r_ || rs < 1 || rs > r - 1) continue;
        if (plan_.subroutine) {
          lam = std::clamp(lam, 1, r);
        } else {
          lam = 0;
        }
        Point q = evaluate(r, rs, lam);
        if (better(q, p)) {
          p = q;
          moved = true;
        }
      }
      if (!moved) {
        if (step_r == 2 && step_s == 1 && step_l == 1) break;
        step_r = std::max(2, (step_r / 2) & ~1);
        step_s = std::max(1, step_s / 2);
        step_l = std::max(1, step_l / 2);
      }
    }
    return p;
  }

  std::size_t evaluations = 0;

 private:
  const ConstructionPlan& plan_;
  CompiledPlan compiled_;
  double n_;
  Objective objective_;
  int max_r_ = 0;
};

}  // namespace

NumericOptimum numeric_optimize(const ConstructionPlan& plan, double n, Objective objective, int level) {
  if (level < 0 || level > 6) throw Error("refinement level must lie in [0, 6]");
  Search search(plan, n, objective);
  if (!search.feasible()) {
    throw NoFeasiblePoint("no even r >= 2 fits n = " + std::to_string(static_cast<long long>(n)));
  }
  std::optional<Point> best;
  for (int l = 0; l <= level; ++l) {
    Point p = search.descend(search.grid(4 << l));
    if (!best || better(p, *best)) best = p;
  }
  NumericOptimum out;
  out.r = best->r;
  out.rs = best->rs;
  out.lambda = best->lambda;
  out.cost = plan_cost(plan, n, out.r, out.rs, out.lambda, objective, &out.stage_costs);
  out.log_cost = std::log(out.cost) / std::log(n);
  try {
    out.predicted = balance_exponents(plan).total;
  } catch (const Error&) {
    out.predicted = plan.construction == "g1" ? theorem1_total(plan.pattern.k(), plan.m())
                                              : theorem2_total(plan.pattern.k(), plan.pattern.min_degree(),
                                                               plan.pattern.m());
  }
  out.evaluations = search.evaluations;
  return out;
}

nlohmann::json ComparisonRow::to_json() const {
  return {{"name", name}, {"exponent", fraction(exponent)}, {"value", to_double(exponent)}};
}

WalkComparison compare_with_walk(const PatternGraph& h, double n, std::optional<Rational> walk_x) {
  check_pattern(h);
  const int k = h.k();
  WalkComparison out{h, n, Rational(1) - make_rational(1, k), {}, 0, 0};
  out.x.canonicalize();
  auto walk = walk_exponents(quantum_walk_costs(h), out.x);
  out.walk_total = std::max({walk.setup, walk.update, walk.check});
  Rational expected = Rational(2) - make_rational(2, k);
  expected.canonicalize();
  if (out.walk_total != expected) {
    throw Inconsistent("walk total " + fraction(out.walk_total) + " differs from 2-2/k = " + fraction(expected));
  }
  auto g1 = balance_exponents(g1_stage_specs(h, k));
  auto g2 = balance_exponents(g2_plan(h));
  auto th3 = theorem3_exponent(h);
  out.learning_graph_total = th3.total;
  out.rows = {{"walk_setup", walk.setup},
              {"walk_update", walk.update},
              {"walk_check", walk.check},
              {"walk_total", out.walk_total},
              {"g1_total", g1.total},
              {"g2_total", g2.total},
              {"theorem3_total", th3.total}};
  if (walk_x) {
    auto at = walk_exponents(quantum_walk_costs(h), *walk_x);
    std::string suffix = "@x=" + fraction(*walk_x);
    out.rows.push_back({"walk_setup" + suffix, at.setup});
    out.rows.push_back({"walk_update" + suffix, at.update});
    out.rows.push_back({"walk_check" + suffix, at.check});
  }
  return out;
}

nlohmann::json WalkComparison::to_json() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& row : rows) rows_json.push_back(row.to_json());
  return {{"pattern", nlohmann::json::parse(pattern.to_json())},
          {"n", n},
          {"walk_x", fraction(x)},
          {"rows", rows_json}};
}

std::string WalkComparison::to_tsv() const {
  std::ostringstream out;
  out << "k\tm\td\tquantity\texponent\tvalue\tn_power\n";
  for (const auto& row : rows) {
    char value[32];
    std::snprintf(value, sizeof value, "%.6f", to_double(row.exponent));
    char power[32];
    std::snprintf(power, sizeof power, "%.6g", std::pow(n, to_double(row.exponent)));
    out << pattern.k() << '\t' << pattern.m() << '\t' << pattern.min_degree() << '\t' << row.name << '\t'
        << fraction(row.exponent) << '\t' << value << '\t' << power << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// isomorphism classes

namespace {

using Adjacency = std::vector<unsigned>;  // bitmask rows

/// Smallest upper-triangle code over the vertex orders that sort vertices by degree.
std::uint32_t canonical_code(int k, const Adjacency& adj) {
  std::vector<int> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  auto deg = [&](int v) { return __builtin_popcount(adj[static_cast<std::size_t>(v)]); };
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return deg(a) < deg(b); });
  std::vector<std::pair<int, int>> cells;  // [begin, end)
  for (int i = 0; i < k;) {
    int j = i;
    while (j < k && deg(order[static_cast<std::size_t>(j)]) == deg(order[static_cast<std::size_t>(i)])) ++j;
    cells.emplace_back(i, j);
    i = j;
  }
  std::uint32_t best = ~0u;
  std::function<void(std::size_t)> rec = [&](std::size_t c) {
    if (c == cells.size()) {
      std::uint32_t code = 0;
      int bit = 0;
      for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j, ++bit) {
          if (adj[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] >> order[static_cast<std::size_t>(j)] & 1u) {
            code |= 1u << bit;
          }
        }
      }
      best = std::min(best, code);
      return;
    }
    auto first = order.begin() + cells[c].first;
    auto last = order.begin() + cells[c].second;
    std::sort(first, last);
    do {
      rec(c + 1);
    } while (std::next_permutation(first, last));
  };
  rec(0);
  return best;
}

Adjacency from_code(int k, std::uint32_t code) {
  Adjacency adj(static_cast<std::size_t>(k), 0);
  int bit = 0;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j, ++bit) {
      if (code >> bit & 1u) {
        adj[static_cast<std::size_t>(i)] |= 1u << j;
        adj[static_cast<std::size_t>(j)] |= 1u << i;
      }
    }
  }
  return adj;
}

}  // namespace

std::vector<std::vector<std::pair<int, int>>> graph_classes(int k) {
  if (k < 1 || k > 7) throw Error("graph classes are enumerated for 1 <= k <= 7");
  const int pairs = k * (k - 1) / 2;
  // grow classes one edge at a time from the empty graph
  std::vector<std::set<std::uint32_t>> by_edges(static_cast<std::size_t>(pairs) + 1);
  by_edges[0].insert(0);
  for (int m = 0; m < pairs; ++m) {
    for (std::uint32_t code : by_edges[static_cast<std::size_t>(m)]) {
      for (int bit = 0; bit < pairs; ++bit) {
        if (code >> bit & 1u) continue;
        by_edges[static_cast<std::size_t>(m) + 1].insert(canonical_code(k, from_code(k, code | (1u << bit))));
      }
    }
  }
  std::vector<std::vector<std::pair<int, int>>> out;
  for (const auto& level : by_edges) {
    for (std::uint32_t code : level) {
      std::vector<std::pair<int, int>> edges;
      int bit = 0;
      for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j, ++bit) {
          if (code >> bit & 1u) edges.emplace_back(i, j);
        }
      }
      out.push_back(std::move(edges));
    }
  }
  return out;
}

bool has_isolated_vertex(int k, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> deg(static_cast<std::size_t>(k), 0);
  for (auto [a, b] : edges) {
    ++deg[static_cast<std::size_t>(a)];
    ++deg[static_cast<std::size_t>(b)];
  }
  return std::find(deg.begin(), deg.end(), 0) != deg.end();
}

bool is_connected(int k, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> parent(static_cast<std::size_t>(k));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]);
  };
  int components = k;
  for (auto [a, b] : edges) {
    int ra = find(a), rb = find(b);
    if (ra != rb) {
      parent[static_cast<std::size_t>(ra)] = rb;
      --components;
    }
  }
  return components <= 1;
}

}  // namespace lg
