#include "lg/symmetry.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace lg {
namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

using EdgeLookup = std::map<std::pair<VertexId, VertexId>, EdgeId>;

EdgeLookup edge_lookup(const LearningGraph<Rational>& g) {
  EdgeLookup out;
  for (EdgeId e = 0; e < g.edge_count(); ++e) out.emplace(std::make_pair(g.edge(e).from, g.edge(e).to), e);
  return out;
}

/// Whether tau carries flow 0 onto flow y edge by edge.
bool carries(const LearningGraph<Rational>& g, const PermutationAction& action, const EdgeLookup& lookup,
             std::span<const int> tau, FlowId y) {
  const auto& src = g.flows()[0].values;
  const auto& dst = g.flows()[y].values;
  if (src.size() != dst.size()) return false;
  std::map<VertexId, std::optional<VertexId>> image;
  auto img = [&](VertexId v) {
    auto it = image.find(v);
    if (it != image.end()) return it->second;
    return image[v] = action.apply(v, tau);
  };
  for (const auto& [e, value] : src) {
    auto from = img(g.edge(e).from);
    auto to = img(g.edge(e).to);
    if (!from || !to) return false;
    auto it = lookup.find({*from, *to});
    if (it == lookup.end() || g.flow(y, it->second) != value) return false;
  }
  return true;
}

}  // namespace

PermutationAction label_action(const LabeledLearningGraph& g) {
  return {g.n, [&g](VertexId v, std::span<const int> sigma) { return g.find(g.labels.at(v).permuted(sigma)); }};
}

PermutationAction variable_action(const LearningGraph<Rational>& g, int n) {
  auto by_vars = std::make_shared<std::map<VarSet, std::optional<VertexId>>>();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const auto& vars = g.vertex(v).vars;
    if (!vars) continue;
    auto [it, fresh] = by_vars->emplace(*vars, v);
    if (!fresh) it->second.reset();
  }
  return {n, [&g, by_vars](VertexId v, std::span<const int> sigma) -> std::optional<VertexId> {
            const auto& vars = g.vertex(v).vars;
            if (!vars) return std::nullopt;
            VarSet mapped;
            for (SlotId slot : *vars) {
              auto [a, b] = slot_endpoints(slot);
              mapped.push_back(slot_id(sigma[static_cast<std::size_t>(a)], sigma[static_cast<std::size_t>(b)]));
            }
            std::sort(mapped.begin(), mapped.end());
            auto it = by_vars->find(mapped);
            if (it == by_vars->end()) return std::nullopt;
            return it->second;
          }};
}

std::vector<int> orbit_classes(const LearningGraph<Rational>& g, const PermutationAction& action) {
  UnionFind uf(g.vertex_count());
  std::vector<int> sigma(static_cast<std::size_t>(action.n));
  for (int i = 0; i + 1 < action.n; ++i) {
    std::iota(sigma.begin(), sigma.end(), 0);
    std::swap(sigma[static_cast<std::size_t>(i)], sigma[static_cast<std::size_t>(i) + 1]);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (auto w = action.apply(v, sigma)) uf.unite(v, *w);
    }
  }
  std::map<std::size_t, int> ids;
  std::vector<int> out(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    auto [it, fresh] = ids.emplace(uf.find(v), static_cast<int>(ids.size()));
    out[v] = it->second;
  }
  return out;
}

std::vector<std::vector<int>> witness_taus(const LabeledLearningGraph& g) {
  std::vector<std::vector<int>> out;
  if (g.witnesses.empty()) return out;
  const auto& base = g.witnesses.front();
  for (const auto& w : g.witnesses) {
    std::vector<int> tau(static_cast<std::size_t>(g.n), -1);
    std::vector<char> taken(static_cast<std::size_t>(g.n), 0);
    for (std::size_t i = 0; i < w.size(); ++i) {
      tau[static_cast<std::size_t>(base[i])] = w[i];
      taken[static_cast<std::size_t>(w[i])] = 1;
    }
    int next = 0;
    for (int v = 0; v < g.n; ++v) {
      if (tau[static_cast<std::size_t>(v)] >= 0) continue;
      while (taken[static_cast<std::size_t>(next)]) ++next;
      tau[static_cast<std::size_t>(v)] = next;
      taken[static_cast<std::size_t>(next)] = 1;
    }
    out.push_back(std::move(tau));
  }
  return out;
}

TransitivityReport check_transitive_action(const LearningGraph<Rational>& g, const PermutationAction& action,
                                           const std::vector<std::vector<int>>& hints) {
  TransitivityReport out;
  if (g.flow_count() < 2) {
    out.detail = "at least two flows are required";
    return out;
  }
  const auto lookup = edge_lookup(g);
  out.exhaustive = action.n <= 8;
  out.taus.assign(g.flow_count(), {});
  out.taus[0].resize(static_cast<std::size_t>(action.n));
  std::iota(out.taus[0].begin(), out.taus[0].end(), 0);
  for (FlowId y = 1; y < g.flow_count(); ++y) {
    bool found = false;
    if (y < hints.size() && carries(g, action, lookup, hints[y], y)) {
      out.taus[y] = hints[y];
      found = true;
    }
    if (!found && out.exhaustive) {
      std::vector<int> tau(static_cast<std::size_t>(action.n));
      std::iota(tau.begin(), tau.end(), 0);
      do {
        if (carries(g, action, lookup, tau, y)) {
          out.taus[y] = tau;
          found = true;
          break;
        }
      } while (std::next_permutation(tau.begin(), tau.end()));
    }
    if (!found) {
      out.failed_flow = y;
      out.detail = "no permutation carries flow '" + g.flows()[0].name + "' onto '" + g.flows()[y].name + "'" +
                   (out.exhaustive ? "" : " among the candidates (inconclusive)");
      return out;
    }
  }
  out.transitive = true;

  // p_y([u]^+) and p_y([u]^-) per orbit must agree across flows
  auto classes = orbit_classes(g, action);
  int class_count = classes.empty() ? 0 : *std::max_element(classes.begin(), classes.end()) + 1;
  auto totals = [&](FlowId y) {
    std::vector<Rational> sums(static_cast<std::size_t>(2 * class_count));
    for (const auto& [e, value] : g.flows()[y].values) {
      sums[static_cast<std::size_t>(2 * classes[g.edge(e).from])] += value;
      sums[static_cast<std::size_t>(2 * classes[g.edge(e).to] + 1)] += value;
    }
    return sums;
  };
  auto reference = totals(0);
  out.consistent = true;
  for (FlowId y = 1; y < g.flow_count() && out.consistent; ++y) {
    if (totals(y) != reference) {
      out.consistent = false;
      out.detail = "orbit flow totals of '" + g.flows()[y].name + "' differ from '" + g.flows()[0].name + "'";
    }
  }
  return out;
}

nlohmann::json TransitivityReport::to_json() const {
  nlohmann::json j{{"lemma", "transitive-action"},
                   {"transitive", transitive},
                   {"exhaustive", exhaustive},
                   {"consistent", consistent},
                   {"detail", detail}};
  if (failed_flow) j["failed_flow"] = *failed_flow;
  return j;
}

SymmetryReport check_symmetry_hypotheses(const LearningGraph<Rational>& g, const std::vector<int>& classes,
                                         int target) {
  SymmetryReport out;
  out.target_class = target;
  std::vector<VertexId> members;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (classes.at(v) == target) members.push_back(v);
  }
  std::map<int, std::size_t> split_count;   // g+([w],[u])
  std::map<int, std::size_t> indegree;      // g-([w],[u])
  std::optional<std::size_t> w_size;
  auto violate = [&](bool& flag, std::string what) {
    flag = false;
    if (out.violations.size() < 20) out.violations.push_back(std::move(what));
  };

  for (FlowId y = 0; y < g.flow_count(); ++y) {
    const auto& name = g.flows()[y].name;
    // hypothesis 1 on every predecessor carrying flow into [u]
    std::map<VertexId, std::vector<Rational>> into;
    for (VertexId v : members) {
      for (EdgeId e : g.in_edges(v)) {
        Rational f = g.flow(y, e);
        if (f != 0) into[g.edge(e).from].push_back(f);
      }
    }
    for (const auto& [w, values] : into) {
      if (std::any_of(values.begin(), values.end(), [&](const Rational& f) { return f != values.front(); })) {
        violate(out.uniform_split, "flow '" + name + "' splits unevenly from vertex " + std::to_string(w));
      }
      auto [it, fresh] = split_count.emplace(classes[w], values.size());
      if (!fresh && it->second != values.size()) {
        violate(out.uniform_split, "flow '" + name + "' leaves vertex " + std::to_string(w) + " over " +
                                       std::to_string(values.size()) + " edges into the class, expected " +
                                       std::to_string(it->second));
      }
    }
    // hypothesis 2 and the conclusion on the members of [u]
    std::vector<Rational> incoming;
    for (VertexId v : members) {
      Rational total = 0;
      std::map<int, std::size_t> counts;
      for (EdgeId e : g.in_edges(v)) {
        Rational f = g.flow(y, e);
        if (f == 0) continue;
        total += f;
        ++counts[classes[g.edge(e).from]];
      }
      if (total == 0) continue;
      incoming.push_back(total);
      for (const auto& [cls, c] : counts) {
        auto [it, fresh] = indegree.emplace(cls, c);
        if (!fresh && it->second != c) {
          violate(out.in_degree_counts, "vertex " + std::to_string(v) + " receives flow '" + name + "' over " +
                                            std::to_string(c) + " edges from class " + std::to_string(cls) +
                                            ", expected " + std::to_string(it->second));
        }
      }
    }
    if (classes.at(LearningGraph<Rational>::root()) == target) incoming.insert(incoming.begin(), Rational(1));
    Rational alpha = incoming.empty() ? Rational(0) : incoming.front();
    for (const auto& f : incoming) {
      if (f != alpha) {
        violate(out.conclusion, "flow '" + name + "' enters the class with unequal amounts");
        break;
      }
    }
    out.alphas.push_back(alpha);
    out.w_sizes.push_back(incoming.size());
    if (!w_size) {
      w_size = incoming.size();
    } else if (*w_size != incoming.size()) {
      violate(out.common_w_size, "|W_y| is " + std::to_string(incoming.size()) + " for '" + name + "', expected " +
                                     std::to_string(*w_size));
    }
  }
  return out;
}

nlohmann::json SymmetryReport::to_json() const {
  nlohmann::json alpha = nlohmann::json::array();
  for (const auto& a : alphas) alpha.push_back(lg::to_string(a));
  return {{"lemma", "symmetry"},
          {"class", target_class},
          {"hypothesis_1_uniform_split", uniform_split},
          {"hypothesis_2_in_degree", in_degree_counts},
          {"conclusion", conclusion},
          {"common_w_size", common_w_size},
          {"w_sizes", w_sizes},
          {"alphas", alpha},
          {"violations", violations}};
}

}  // namespace lg
