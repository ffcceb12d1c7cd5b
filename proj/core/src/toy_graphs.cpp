#include "lg/toy_graphs.hpp"

#include <numeric>

#include "lg/rng.hpp"

namespace lg {
namespace {

Rational random_weight(Rng& rng) {
  Rational w(uniform_int(rng, 1, 5), uniform_int(rng, 1, 4));
  w.canonicalize();
  return w;
}

/// Random positive rational proportions summing to one.
std::vector<Rational> random_split(Rng& rng, std::size_t parts) {
  std::vector<long> raw(parts);
  long total = 0;
  for (auto& x : raw) {
    x = uniform_int(rng, 1, 6);
    total += x;
  }
  std::vector<Rational> out;
  for (long x : raw) {
    Rational q(x, total);
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

/// Nonempty random subset of `items`.
std::vector<std::size_t> random_nonempty_subset(Rng& rng, std::size_t size) {
  std::vector<std::size_t> out;
  while (out.empty()) {
    for (std::size_t i = 0; i < size; ++i) {
      if (uniform_int(rng, 0, 1)) out.push_back(i);
    }
  }
  return out;
}

}  // namespace

ToyGraph make_toy_graph(std::uint64_t seed, const ToyGraphOptions& options) {
  Rng rng = make_stream(seed, 0);
  const int levels = uniform_int(rng, 2, std::max(2, options.max_levels));
  const int budget = options.max_vertices - 1;
  // vertices per level, at least one each, total <= budget
  std::vector<int> width(static_cast<std::size_t>(levels), 1);
  int spare = std::max(0, uniform_int(rng, levels, std::max(levels, budget)) - levels);
  while (spare-- > 0) ++width[static_cast<std::size_t>(uniform_int(rng, 0, levels - 1))];

  ToyGraph toy;
  auto& g = toy.graph;
  std::vector<std::vector<VertexId>> layer{{LearningGraph<Rational>::root()}};
  SlotId next_var = 0;
  for (int l = 0; l < levels; ++l) {
    const auto& prev = layer.back();
    std::vector<std::vector<std::size_t>> parents(static_cast<std::size_t>(width[static_cast<std::size_t>(l)]));
    for (auto& ps : parents) {
      ps = random_nonempty_subset(rng, prev.size());
      if (ps.size() > 3) ps.resize(3);
    }
    // every previous vertex gets at least one child
    for (std::size_t p = 0; p < prev.size(); ++p) {
      bool has_child = std::any_of(parents.begin(), parents.end(), [&](const auto& ps) {
        return std::find(ps.begin(), ps.end(), p) != ps.end();
      });
      if (!has_child) parents[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(parents.size()) - 1))].push_back(p);
    }
    std::vector<VertexId> current;
    for (auto& ps : parents) {
      std::sort(ps.begin(), ps.end());
      ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
      VarSet vars;
      for (std::size_t p : ps) {
        const auto& pv = *g.vertex(prev[p]).vars;
        vars.insert(vars.end(), pv.begin(), pv.end());
      }
      int fresh = uniform_int(rng, 1, 2);
      for (int f = 0; f < fresh; ++f) vars.push_back(next_var++);
      std::sort(vars.begin(), vars.end());
      vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
      VertexId v = g.add_vertex("v" + std::to_string(g.vertex_count()), vars);
      for (std::size_t p : ps) g.add_edge(prev[p], v, random_weight(rng));
      current.push_back(v);
    }
    layer.push_back(std::move(current));
  }

  // pinned level and its class partition
  toy.pinned_level = uniform_int(rng, 1, levels - 1);
  const auto& pinned = layer[static_cast<std::size_t>(toy.pinned_level)];
  int class_count = uniform_int(rng, 1, static_cast<int>(pinned.size()));
  toy.classes.classes.resize(static_cast<std::size_t>(class_count));
  for (std::size_t i = 0; i < pinned.size(); ++i) {
    std::size_t c = i < static_cast<std::size_t>(class_count) ? i : static_cast<std::size_t>(uniform_int(rng, 0, class_count - 1));
    toy.classes.classes[c].push_back(pinned[i]);
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (std::find(pinned.begin(), pinned.end(), g.edge(e).from) != pinned.end()) toy.pinned_stage.push_back(e);
  }

  // class masses: some classes may carry nothing
  std::vector<Rational> class_mass(toy.classes.classes.size(), Rational(0));
  {
    std::vector<std::size_t> carrying;
    for (std::size_t c = 0; c < class_mass.size(); ++c) {
      if (c == 0 || uniform_int(rng, 0, 3) > 0) carrying.push_back(c);
    }
    auto split = random_split(rng, carrying.size());
    for (std::size_t i = 0; i < carrying.size(); ++i) class_mass[carrying[i]] = split[i];
  }

  auto parent_edges = [&](VertexId v) { return g.in_edges(v); };
  auto child_edges = [&](VertexId v) { return g.out_edges(v); };

  int flows = uniform_int(rng, 1, std::max(1, options.max_flows));
  for (int f = 0; f < flows; ++f) {
    FlowId y = g.add_flow("y" + std::to_string(f));
    std::unordered_map<EdgeId, Rational> value;
    std::unordered_map<VertexId, Rational> mass;
    for (std::size_t c = 0; c < toy.classes.classes.size(); ++c) {
      if (class_mass[c] == 0) continue;
      const auto& members = toy.classes.classes[c];
      auto chosen = random_nonempty_subset(rng, members.size());
      auto split = random_split(rng, chosen.size());
      for (std::size_t i = 0; i < chosen.size(); ++i) mass[members[chosen[i]]] += class_mass[c] * split[i];
    }
    // backwards to the root
    for (int l = toy.pinned_level; l >= 1; --l) {
      std::unordered_map<VertexId, Rational> up;
      for (VertexId v : layer[static_cast<std::size_t>(l)]) {
        auto it = mass.find(v);
        if (it == mass.end() || it->second == 0) continue;
        auto in = parent_edges(v);
        auto chosen = random_nonempty_subset(rng, in.size());
        auto split = random_split(rng, chosen.size());
        for (std::size_t i = 0; i < chosen.size(); ++i) {
          EdgeId e = in[chosen[i]];
          Rational part = it->second * split[i];
          value[e] += part;
          up[g.edge(e).from] += part;
        }
      }
      for (auto& [v, m] : up) mass[v] = m;
    }
    // forwards to the last level
    for (int l = toy.pinned_level; l < levels; ++l) {
      for (VertexId v : layer[static_cast<std::size_t>(l)]) {
        auto it = mass.find(v);
        if (it == mass.end() || it->second == 0) continue;
        auto out = child_edges(v);
        auto chosen = random_nonempty_subset(rng, out.size());
        auto split = random_split(rng, chosen.size());
        for (std::size_t i = 0; i < chosen.size(); ++i) {
          EdgeId e = out[chosen[i]];
          Rational part = it->second * split[i];
          value[e] += part;
          mass[g.edge(e).to] += part;
        }
      }
    }
    for (const auto& [e, p] : value) g.set_flow(y, e, p);
  }
  return toy;
}

}  // namespace lg
