#include "lg/lemmas.hpp"

#include <cmath>

#include "lg/bipartite_sampler.hpp"
#include "lg/parallel.hpp"
#include "lg/rng.hpp"

namespace lg {

nlohmann::json to_json(const LemmaCheck& check) {
  return {{"lemma", check.lemma},
          {"clause", check.clause},
          {"measured", check.measured},
          {"bound", check.bound},
          {"holds", check.holds}};
}

std::string feasibility_violation(long r, const Rational& s) {
  if (r < 2) return "r must be at least 2";
  if (r % 2 != 0) return "r must be even";
  if (s <= 0 || s > 1) return "s must lie in (0, 1]";
  Rational rs = Rational(r) * s;
  if (rs.get_den() != 1) return "r*s must be an integer";
  if (rs < 1) return "r*s must be at least 1";
  if (rs > r - 1) return "r*s must be at most r-1";
  return {};
}

Rational round_density_down(long r, const Rational& s) {
  mpz_class rs;
  Rational prod = Rational(r) * s;
  mpz_fdiv_q(rs.get_mpz_t(), prod.get_num_mpz_t(), prod.get_den_mpz_t());
  if (rs < 1) rs = 1;
  if (rs > r - 1) rs = r - 1;
  Rational out(rs, mpz_class(r));
  out.canonicalize();
  return out;
}

Rational joint_edge_fraction(const std::vector<std::pair<int, int>>& edges, int left_size, int right_size,
                             int degree) {
  std::vector<int> ldeg(static_cast<std::size_t>(left_size), 0);
  std::vector<int> rdeg(static_cast<std::size_t>(right_size), 0);
  for (auto [i, j] : edges) {
    ++ldeg[static_cast<std::size_t>(i)];
    ++rdeg[static_cast<std::size_t>(j)];
  }
  long good = 0;
  for (auto [i, j] : edges) {
    if (ldeg[static_cast<std::size_t>(i)] == degree && rdeg[static_cast<std::size_t>(j)] == degree) ++good;
  }
  Rational out(good, static_cast<long>(left_size) * right_size);
  out.canonicalize();
  return out;
}

namespace {

using Matrix = std::vector<std::vector<char>>;

Matrix adjacency(const BipartiteEdges& edges, int r) {
  Matrix m(static_cast<std::size_t>(r), std::vector<char>(static_cast<std::size_t>(r), 0));
  for (auto [i, j] : edges) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
  return m;
}

/// One pass of the hiding process: a perfect matching between random halves in
/// the complement, then one loaded edge between two remaining degree-rs vertices.
std::optional<BipartiteEdges> hide_and_load(Rng& rng, BipartiteEdges edges, int r) {
  const int half = r / 2;
  Matrix adj = adjacency(edges, r);
  for (int attempt = 0; attempt < 64; ++attempt) {
    auto rows = sample_subset(rng, r, half);
    auto cols = sample_subset(rng, r, half);
    Matrix allowed(static_cast<std::size_t>(half), std::vector<char>(static_cast<std::size_t>(half), 0));
    for (int a = 0; a < half; ++a) {
      for (int b = 0; b < half; ++b) {
        allowed[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
            !adj[static_cast<std::size_t>(rows[static_cast<std::size_t>(a)])][static_cast<std::size_t>(cols[static_cast<std::size_t>(b)])];
      }
    }
    auto match = random_perfect_matching(rng, allowed);
    if (!match) continue;
    std::vector<char> raised_l(static_cast<std::size_t>(r), 0);
    std::vector<char> raised_r(static_cast<std::size_t>(r), 0);
    for (int a = 0; a < half; ++a) {
      int i = rows[static_cast<std::size_t>(a)];
      int j = cols[static_cast<std::size_t>((*match)[static_cast<std::size_t>(a)])];
      edges.emplace_back(i, j);
      adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
      raised_l[static_cast<std::size_t>(i)] = 1;
      raised_r[static_cast<std::size_t>(j)] = 1;
    }
    std::vector<std::pair<int, int>> loadable;
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < r; ++j) {
        if (!raised_l[static_cast<std::size_t>(i)] && !raised_r[static_cast<std::size_t>(j)] &&
            !adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
          loadable.emplace_back(i, j);
        }
      }
    }
    if (loadable.empty()) return std::nullopt;
    edges.push_back(loadable[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(loadable.size()) - 1))]);
    std::sort(edges.begin(), edges.end());
    return edges;
  }
  return std::nullopt;
}

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t count = 0;
};

}  // namespace

EdgeProbability uniform_edge_probability(long r, const Rational& s, EdgeProbabilityMode mode, std::size_t samples,
                                         std::uint64_t seed) {
  if (auto why = feasibility_violation(r, s); !why.empty()) throw InfeasibleParameters(why);
  const int ri = static_cast<int>(r);
  const int rs = static_cast<int>(Rational(Rational(r) * s).get_num().get_si());
  EdgeProbability out;
  if (mode == EdgeProbabilityMode::Plain) {
    out.exact = s;
    out.exact_known = true;
  }
  if (samples == 0) {
    out.estimate = to_double(out.exact);
    return out;
  }
  const std::size_t chunk = 4096;
  const std::size_t chunks = (samples + chunk - 1) / chunk;
  auto type = block_types::regular(ri, rs);
  auto partial = run_chunks(chunks, [&](std::size_t c) {
    Rng rng = make_stream(seed, c);
    Moments m;
    std::size_t todo = std::min(chunk, samples - c * chunk);
    for (std::size_t i = 0; i < todo; ++i) {
      auto edges = sample_bipartite(rng, type);
      double value = 0.0;
      if (mode == EdgeProbabilityMode::Plain) {
        value = static_cast<double>(edges.size()) / (r * r);
      } else {
        auto hidden = hide_and_load(rng, std::move(edges), ri);
        if (!hidden) throw Error("hiding process found no admissible matching");
        value = to_double(joint_edge_fraction(*hidden, ri, ri, rs + 1));
      }
      m.sum += value;
      m.sum_sq += value * value;
      ++m.count;
    }
    return m;
  });
  Moments total;
  for (const auto& m : partial) {
    total.sum += m.sum;
    total.sum_sq += m.sum_sq;
    total.count += m.count;
  }
  double n = static_cast<double>(total.count);
  out.samples = total.count;
  out.estimate = total.sum / n;
  double var = std::max(0.0, total.sum_sq / n - out.estimate * out.estimate) * n / std::max(1.0, n - 1);
  out.standard_error = std::sqrt(var / n);
  return out;
}

Rational enumerate_plain_edge_probability(int r, int rs) {
  auto graphs = enumerate_bipartite(block_types::regular(r, rs));
  if (graphs.empty()) throw InfeasibleParameters("no graph of the regular type exists");
  long hits = 0;
  for (const auto& g : graphs) {
    if (std::binary_search(g.begin(), g.end(), std::pair<int, int>{0, 0})) ++hits;
  }
  Rational out(hits, static_cast<long>(graphs.size()));
  out.canonicalize();
  return out;
}

HiddenEdgeEnumeration enumerate_hidden_edge_probability(int r, int rs) {
  if (r % 2 != 0) throw InfeasibleParameters("r must be even");
  auto graphs = enumerate_bipartite(block_types::regular(r, rs));
  if (graphs.empty()) throw InfeasibleParameters("no graph of the regular type exists");
  const int half = r / 2;
  // all half-subsets of [r]
  std::vector<std::vector<int>> subsets;
  for (unsigned mask = 0; mask < (1u << r); ++mask) {
    if (__builtin_popcount(mask) != half) continue;
    std::vector<int> s;
    for (int i = 0; i < r; ++i) {
      if (mask & (1u << i)) s.push_back(i);
    }
    subsets.push_back(std::move(s));
  }
  std::vector<int> perm(static_cast<std::size_t>(half));

  HiddenEdgeEnumeration out;
  out.minimum = 2;
  Rational graph_weight(1, static_cast<long>(graphs.size()));
  graph_weight.canonicalize();
  for (const auto& base : graphs) {
    Matrix adj = adjacency(base, r);
    // hiding choices: (rows, cols, matching) with the matching inside the complement
    std::vector<BipartiteEdges> hidings;
    for (const auto& rows : subsets) {
      for (const auto& cols : subsets) {
        std::iota(perm.begin(), perm.end(), 0);
        do {
          bool ok = true;
          for (int a = 0; a < half && ok; ++a) {
            ok = !adj[static_cast<std::size_t>(rows[static_cast<std::size_t>(a)])]
                     [static_cast<std::size_t>(cols[static_cast<std::size_t>(perm[static_cast<std::size_t>(a)])])];
          }
          if (!ok) continue;
          BipartiteEdges added;
          for (int a = 0; a < half; ++a) {
            added.emplace_back(rows[static_cast<std::size_t>(a)], cols[static_cast<std::size_t>(perm[static_cast<std::size_t>(a)])]);
          }
          hidings.push_back(std::move(added));
        } while (std::next_permutation(perm.begin(), perm.end()));
      }
    }
    if (hidings.empty()) continue;
    Rational hiding_weight = graph_weight / Rational(static_cast<long>(hidings.size()));
    for (const auto& added : hidings) {
      BipartiteEdges edges = base;
      edges.insert(edges.end(), added.begin(), added.end());
      Matrix hidden = adjacency(edges, r);
      std::vector<char> raised_l(static_cast<std::size_t>(r), 0);
      std::vector<char> raised_r(static_cast<std::size_t>(r), 0);
      for (auto [i, j] : added) {
        raised_l[static_cast<std::size_t>(i)] = 1;
        raised_r[static_cast<std::size_t>(j)] = 1;
      }
      std::vector<std::pair<int, int>> loadable;
      for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
          if (!raised_l[static_cast<std::size_t>(i)] && !raised_r[static_cast<std::size_t>(j)] &&
              !hidden[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
            loadable.emplace_back(i, j);
          }
        }
      }
      if (loadable.empty()) continue;
      Rational load_weight = hiding_weight / Rational(static_cast<long>(loadable.size()));
      for (auto slot : loadable) {
        BipartiteEdges final_edges = edges;
        final_edges.push_back(slot);
        Rational value = joint_edge_fraction(final_edges, r, r, rs + 1);
        out.average += load_weight * value;
        if (value < out.minimum) out.minimum = value;
        ++out.final_graphs;
      }
    }
  }
  return out;
}

}  // namespace lg
