#include "lg/containment.hpp"

#include "lg/errors.hpp"

namespace lg {
namespace {

class EmbeddingSearch {
 public:
  EmbeddingSearch(const HostGraph& host, int vertex_count, std::span<const PatternEdge> edges)
      : host_(host),
        earlier_(static_cast<std::size_t>(vertex_count)),
        assignment_(static_cast<std::size_t>(vertex_count), -1),
        used_(static_cast<std::size_t>(host.n()), false) {
    for (const auto& e : edges) earlier_[static_cast<std::size_t>(e.b)].push_back(e.a);
  }

  std::optional<Witness> run() {
    if (extend(0)) return assignment_;
    return std::nullopt;
  }

 private:
  bool extend(std::size_t i) {
    if (i == assignment_.size()) return true;
    for (int v = 0; v < host_.n(); ++v) {
      if (used_[static_cast<std::size_t>(v)]) continue;
      bool ok = true;
      for (int j : earlier_[i]) {
        if (!host_.has_edge(assignment_[static_cast<std::size_t>(j)], v)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      assignment_[i] = v;
      used_[static_cast<std::size_t>(v)] = true;
      if (extend(i + 1)) return true;
      used_[static_cast<std::size_t>(v)] = false;
    }
    assignment_[i] = -1;
    return false;
  }

  const HostGraph& host_;
  std::vector<std::vector<int>> earlier_;  // neighbours with a smaller pattern index
  Witness assignment_;
  std::vector<bool> used_;
};

}  // namespace

std::optional<Witness> find_embedding(const HostGraph& host, int vertex_count,
                                      std::span<const PatternEdge> edges,
                                      const ContainmentOptions& options) {
  if (host.n() > options.max_vertices) {
    throw InvalidHostGraph("host has " + std::to_string(host.n()) +
                           " vertices; the explicit oracle is capped at " +
                           std::to_string(options.max_vertices));
  }
  if (host.n() < vertex_count) return std::nullopt;
  return EmbeddingSearch(host, vertex_count, edges).run();
}

std::optional<Witness> contains_subgraph(const HostGraph& host, const PatternGraph& pattern,
                                         const ContainmentOptions& options) {
  return find_embedding(host, pattern.k(), pattern.edges(), options);
}

bool is_certificate(std::span<const SlotId> slots, const HostGraph& host, int vertex_count,
                    std::span<const PatternEdge> edges) {
  HostGraph positive(host.n());
  for (SlotId id : slots) {
    auto [a, b] = slot_endpoints(id);
    if (host.has_edge(a, b)) positive.add_edge(a, b);
  }
  ContainmentOptions unlimited;
  unlimited.max_vertices = host.n();
  return find_embedding(positive, vertex_count, edges, unlimited).has_value();
}

bool is_certificate(std::span<const SlotId> slots, const HostGraph& host, const PatternGraph& pattern) {
  return is_certificate(slots, host, pattern.k(), pattern.edges());
}

}  // namespace lg
