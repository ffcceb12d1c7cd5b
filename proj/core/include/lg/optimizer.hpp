#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lg/constructions.hpp"
#include "lg/pattern.hpp"
#include "lg/rational.hpp"

namespace lg {

struct Theorem3Exponent {
  Rational t1;  // first construction branch
  Rational t2;  // second construction branch
  Rational t;
  Rational total;  // 2 - 2/k - t
  std::string construction;  // branch attaining t; "g2" on a tie
  bool tie = false;
};

/// Throws InvalidPattern when k < 3 or the minimum degree is 0.
Theorem3Exponent theorem3_exponent(const PatternGraph& h);

/// Closed forms of the two constructions' exponents.
Rational theorem1_t(int k, int m);
Rational theorem1_total(int k, int m);
Rational theorem2_t(int k, int d, int m);
Rational theorem2_total(int k, int d, int m);

struct TermExponent {
  int stage = 0;
  std::string name;
  Rational exponent;
};

struct ExponentSolution {
  Rational x;      // r = n^x
  Rational t;      // s = n^-t
  Rational total;  // max of the term exponents
  std::vector<TermExponent> terms;
  nlohmann::json to_json() const;
};

/// Equates the setup cost with the last vertex load (fixing x) and with the final
/// stage (fixing t), solving the 2x2 linear system in exact rationals. Every other
/// stage is then checked not to exceed the balanced value, and for the second
/// construction the guard r^(1/(d+1)) s^(1/2) <= n^(1/2) is checked. Throws
/// DegenerateSystem when the equations are parallel and Inconsistent when a check
/// fails.
ExponentSolution balance_exponents(const ConstructionPlan& plan);

enum class Objective { Max, Sum };
std::string to_string(Objective o);
Objective parse_objective(const std::string& text);

struct NumericOptimum {
  int r = 0;
  int rs = 0;
  int lambda = 0;  // 0 for the first construction
  double cost = 0.0;
  double log_cost = 0.0;            // log_n(cost)
  Rational predicted;               // asymptotic exponent of the plan
  std::vector<double> stage_costs;  // per plan stage, the final one including the subroutine
  std::size_t evaluations = 0;
  double s() const { return static_cast<double>(rs) / r; }
  nlohmann::json to_json() const;
};

/// Cost of the plan at a concrete lattice point.
double plan_cost(const ConstructionPlan& plan, double n, int r, int rs, int lambda, Objective objective,
                 std::vector<double>* stage_costs = nullptr);

/// Nested logarithmic grids over r (even), rs in [1, r-1] and lambda in [1, r],
/// followed by coordinate descent; level L uses 4 * 2^L points per decade and also
/// considers every coarser level, so the cost never increases with L. Ties go to
/// smaller r, then larger s. Throws NoFeasiblePoint when no lattice point fits n.
NumericOptimum numeric_optimize(const ConstructionPlan& plan, double n, Objective objective, int level = 2);

struct ComparisonRow {
  std::string name;
  Rational exponent;
  nlohmann::json to_json() const;
};

struct WalkComparison {
  PatternGraph pattern;
  double n = 0.0;
  Rational x;  // walk parameter r = n^(1-1/k)
  std::vector<ComparisonRow> rows;
  Rational walk_total;
  Rational learning_graph_total;
  nlohmann::json to_json() const;
  std::string to_tsv() const;
};

/// Quantum walk S, U, C at r = n^(1-1/k) against both constructions and the
/// best-of exponent. Throws Inconsistent if the walk total is not 2 - 2/k there.
/// With `walk_x`, the walk rows are also reported at r = n^walk_x.
WalkComparison compare_with_walk(const PatternGraph& h, double n, std::optional<Rational> walk_x = std::nullopt);

/// Edge lists (0-based) of one representative per isomorphism class of graphs on
/// k vertices, ordered by edge count then canonical code. k <= 7.
std::vector<std::vector<std::pair<int, int>>> graph_classes(int k);

bool has_isolated_vertex(int k, const std::vector<std::pair<int, int>>& edges);
bool is_connected(int k, const std::vector<std::pair<int, int>>& edges);

}  // namespace lg
