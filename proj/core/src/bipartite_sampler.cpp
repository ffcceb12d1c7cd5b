#include "lg/bipartite_sampler.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <set>

#include "lg/errors.hpp"

namespace lg {

bool is_bigraphic(std::vector<int> left, std::vector<int> right) {
  long sl = std::accumulate(left.begin(), left.end(), 0L);
  long sr = std::accumulate(right.begin(), right.end(), 0L);
  if (sl != sr) return false;
  for (int d : left) {
    if (d < 0 || d > static_cast<int>(right.size())) return false;
  }
  for (int d : right) {
    if (d < 0 || d > static_cast<int>(left.size())) return false;
  }
  std::sort(left.begin(), left.end(), std::greater<>());
  long prefix = 0;
  for (std::size_t k = 1; k <= left.size(); ++k) {
    prefix += left[k - 1];
    long cap = 0;
    for (int b : right) cap += std::min<long>(b, static_cast<long>(k));
    if (prefix > cap) return false;
  }
  return true;
}

namespace {

void check_sequences(const std::vector<int>& left, const std::vector<int>& right) {
  if (!is_bigraphic(left, right)) throw Error("degree sequences are not realizable by a simple bipartite graph");
}

BipartiteEdges complement(const BipartiteEdges& edges, int left_size, int right_size) {
  std::vector<char> present(static_cast<std::size_t>(left_size * right_size), 0);
  for (auto [i, j] : edges) present[static_cast<std::size_t>(i * right_size + j)] = 1;
  BipartiteEdges out;
  for (int i = 0; i < left_size; ++i) {
    for (int j = 0; j < right_size; ++j) {
      if (!present[static_cast<std::size_t>(i * right_size + j)]) out.emplace_back(i, j);
    }
  }
  return out;
}

std::optional<BipartiteEdges> configuration_model(Rng& rng, const std::vector<int>& left,
                                                  const std::vector<int>& right, int attempts) {
  std::vector<int> lstubs;
  std::vector<int> rstubs;
  for (int i = 0; i < static_cast<int>(left.size()); ++i) lstubs.insert(lstubs.end(), static_cast<std::size_t>(left[static_cast<std::size_t>(i)]), i);
  for (int j = 0; j < static_cast<int>(right.size()); ++j) rstubs.insert(rstubs.end(), static_cast<std::size_t>(right[static_cast<std::size_t>(j)]), j);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    shuffle(rstubs, rng);
    BipartiteEdges edges;
    edges.reserve(lstubs.size());
    for (std::size_t s = 0; s < lstubs.size(); ++s) edges.emplace_back(lstubs[s], rstubs[s]);
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) == edges.end()) return edges;
  }
  return std::nullopt;
}

BipartiteEdges havel_hakimi(const std::vector<int>& left, std::vector<int> right) {
  std::vector<int> order(left.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return left[static_cast<std::size_t>(a)] > left[static_cast<std::size_t>(b)]; });
  BipartiteEdges edges;
  for (int i : order) {
    std::vector<int> targets(right.size());
    std::iota(targets.begin(), targets.end(), 0);
    std::stable_sort(targets.begin(), targets.end(), [&](int a, int b) { return right[static_cast<std::size_t>(a)] > right[static_cast<std::size_t>(b)]; });
    for (int c = 0; c < left[static_cast<std::size_t>(i)]; ++c) {
      int j = targets[static_cast<std::size_t>(c)];
      if (right[static_cast<std::size_t>(j)] == 0) throw Error("degree sequences are not realizable");
      --right[static_cast<std::size_t>(j)];
      edges.emplace_back(i, j);
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

void randomize_by_switches(Rng& rng, BipartiteEdges& edges, int rounds) {
  if (edges.size() < 2) return;
  std::set<std::pair<int, int>> present(edges.begin(), edges.end());
  int last = static_cast<int>(edges.size()) - 1;
  for (int round = 0; round < rounds; ++round) {
    auto& e1 = edges[static_cast<std::size_t>(uniform_int(rng, 0, last))];
    auto& e2 = edges[static_cast<std::size_t>(uniform_int(rng, 0, last))];
    if (e1.first == e2.first || e1.second == e2.second) continue;
    std::pair<int, int> f1{e1.first, e2.second};
    std::pair<int, int> f2{e2.first, e1.second};
    if (present.count(f1) || present.count(f2)) continue;
    present.erase(e1);
    present.erase(e2);
    present.insert(f1);
    present.insert(f2);
    e1 = f1;
    e2 = f2;
  }
  std::sort(edges.begin(), edges.end());
}

}  // namespace

BipartiteEdges sample_bipartite(Rng& rng, const std::vector<int>& left, const std::vector<int>& right) {
  check_sequences(left, right);
  const int ls = static_cast<int>(left.size());
  const int rs = static_cast<int>(right.size());
  long edges_total = std::accumulate(left.begin(), left.end(), 0L);
  if (2 * edges_total > static_cast<long>(ls) * rs) {
    std::vector<int> cl(left.size());
    std::vector<int> cr(right.size());
    for (std::size_t i = 0; i < left.size(); ++i) cl[i] = rs - left[i];
    for (std::size_t j = 0; j < right.size(); ++j) cr[j] = ls - right[j];
    return complement(sample_bipartite(rng, cl, cr), ls, rs);
  }
  if (auto edges = configuration_model(rng, left, right, 64)) return *edges;
  auto edges = havel_hakimi(left, right);
  randomize_by_switches(rng, edges, 20 * static_cast<int>(edges.size()) + 100);
  return edges;
}

BipartiteEdges sample_bipartite(Rng& rng, const BipartiteType& type) {
  if (auto why = type.violation(); !why.empty()) throw Error("invalid bipartite type: " + why);
  auto left = BipartiteType::expand(type.left);
  auto right = BipartiteType::expand(type.right);
  shuffle(left, rng);
  shuffle(right, rng);
  return sample_bipartite(rng, left, right);
}

std::vector<BipartiteEdges> enumerate_bipartite(const std::vector<int>& left, const std::vector<int>& right) {
  std::vector<BipartiteEdges> out;
  if (!is_bigraphic(left, right)) return out;
  const int ls = static_cast<int>(left.size());
  const int rs = static_cast<int>(right.size());
  std::vector<int> remaining(right);
  BipartiteEdges current;
  std::function<void(int)> place_row = [&](int i) {
    if (i == ls) {
      if (std::all_of(remaining.begin(), remaining.end(), [](int d) { return d == 0; })) out.push_back(current);
      return;
    }
    // remaining left demand must fit in the remaining right capacity
    std::function<void(int, int)> choose = [&](int j, int need) {
      if (need == 0) {
        place_row(i + 1);
        return;
      }
      if (rs - j < need) return;
      if (remaining[static_cast<std::size_t>(j)] > 0) {
        --remaining[static_cast<std::size_t>(j)];
        current.emplace_back(i, j);
        choose(j + 1, need - 1);
        current.pop_back();
        ++remaining[static_cast<std::size_t>(j)];
      }
      choose(j + 1, need);
    };
    choose(0, left[static_cast<std::size_t>(i)]);
  };
  place_row(0);
  return out;
}

std::vector<BipartiteEdges> enumerate_bipartite(const BipartiteType& type) {
  auto left = BipartiteType::expand(type.left);
  auto right = BipartiteType::expand(type.right);
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  std::vector<BipartiteEdges> out;
  do {
    auto r = right;
    do {
      auto part = enumerate_bipartite(left, r);
      out.insert(out.end(), part.begin(), part.end());
    } while (std::next_permutation(r.begin(), r.end()));
  } while (std::next_permutation(left.begin(), left.end()));
  return out;
}

}  // namespace lg

namespace lg {

std::optional<std::vector<int>> random_perfect_matching(Rng& rng, const std::vector<std::vector<char>>& allowed) {
  const int size = static_cast<int>(allowed.size());
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      if (allowed[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) adj[static_cast<std::size_t>(i)].push_back(j);
    }
    shuffle(adj[static_cast<std::size_t>(i)], rng);
  }
  std::vector<int> row_order(static_cast<std::size_t>(size));
  std::iota(row_order.begin(), row_order.end(), 0);
  shuffle(row_order, rng);
  std::vector<int> col_match(static_cast<std::size_t>(size), -1);
  std::vector<char> visited;
  std::function<bool(int)> augment = [&](int i) {
    for (int j : adj[static_cast<std::size_t>(i)]) {
      if (visited[static_cast<std::size_t>(j)]) continue;
      visited[static_cast<std::size_t>(j)] = 1;
      if (col_match[static_cast<std::size_t>(j)] < 0 || augment(col_match[static_cast<std::size_t>(j)])) {
        col_match[static_cast<std::size_t>(j)] = i;
        return true;
      }
    }
    return false;
  };
  for (int i : row_order) {
    visited.assign(static_cast<std::size_t>(size), 0);
    if (!augment(i)) return std::nullopt;
  }
  std::vector<int> match(static_cast<std::size_t>(size), -1);
  for (int j = 0; j < size; ++j) match[static_cast<std::size_t>(col_match[static_cast<std::size_t>(j)])] = j;
  return match;
}

}  // namespace lg
