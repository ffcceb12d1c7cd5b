#include "lg/pattern.hpp"

#include <algorithm>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "lg/errors.hpp"

namespace lg {

PatternGraph PatternGraph::from_edges(int k, const std::vector<std::pair<int, int>>& edges) {
  if (k < 3) throw InvalidPattern("k must be >= 3 (got k=" + std::to_string(k) + ")");
  std::set<std::pair<int, int>> seen;
  std::vector<int> degree(static_cast<std::size_t>(k), 0);
  for (auto [a, b] : edges) {
    if (a < 0 || a >= k || b < 0 || b >= k) {
      throw InvalidPattern("edge endpoint out of range: {" + std::to_string(a + 1) + "," +
                           std::to_string(b + 1) + "}");
    }
    if (a == b) throw InvalidPattern("loop at vertex " + std::to_string(a + 1));
    auto key = std::minmax(a, b);
    if (!seen.insert(key).second) {
      throw InvalidPattern("duplicate edge {" + std::to_string(key.first + 1) + "," +
                           std::to_string(key.second + 1) + "}");
    }
    ++degree[static_cast<std::size_t>(a)];
    ++degree[static_cast<std::size_t>(b)];
  }
  for (int v = 0; v < k; ++v) {
    if (degree[static_cast<std::size_t>(v)] == 0) {
      throw InvalidPattern("isolated vertex " + std::to_string(v + 1) +
                           " (strip isolated vertices before building a pattern)");
    }
  }

  const int min_deg = *std::min_element(degree.begin(), degree.end());
  const int last = k - 1 - static_cast<int>(std::find(degree.rbegin(), degree.rend(), min_deg) - degree.rbegin());

  // canonical position of each original vertex
  std::vector<int> position(static_cast<std::size_t>(k));
  PatternGraph g;
  g.k_ = k;
  g.min_degree_ = min_deg;
  for (int v = 0, next = 0; v < k; ++v) {
    if (v == last) continue;
    position[static_cast<std::size_t>(v)] = next++;
    g.original_.push_back(v);
  }
  position[static_cast<std::size_t>(last)] = k - 1;
  g.original_.push_back(last);

  g.degrees_.assign(static_cast<std::size_t>(k), 0);
  for (auto [a, b] : edges) {
    int pa = position[static_cast<std::size_t>(a)];
    int pb = position[static_cast<std::size_t>(b)];
    if (pa > pb) std::swap(pa, pb);
    g.edges_.push_back({pa, pb});
    ++g.degrees_[static_cast<std::size_t>(pa)];
    ++g.degrees_[static_cast<std::size_t>(pb)];
  }
  return g;
}

bool PatternGraph::has_edge(int a, int b) const {
  if (a > b) std::swap(a, b);
  return std::find(edges_.begin(), edges_.end(), PatternEdge{a, b}) != edges_.end();
}

std::vector<int> PatternGraph::neighbors(int v) const {
  std::vector<int> out;
  for (const auto& e : edges_) {
    if (e.a == v) out.push_back(e.b);
    if (e.b == v) out.push_back(e.a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PatternEdge> PatternGraph::prefix_edges(int u) const {
  std::vector<PatternEdge> out;
  for (const auto& e : edges_) {
    if (e.b < u) out.push_back(e);
  }
  return out;
}

std::string PatternGraph::to_json() const {
  nlohmann::json j;
  j["k"] = k_;
  j["edges"] = nlohmann::json::array();
  for (const auto& e : edges_) j["edges"].push_back({e.a + 1, e.b + 1});
  return j.dump();
}

PatternGraph parse_pattern(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidPattern(std::string("malformed pattern JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("k") || !j["k"].is_number_integer() || !j.contains("edges") ||
      !j["edges"].is_array()) {
    throw InvalidPattern(R"(pattern JSON must look like {"k": int, "edges": [[int,int], ...]})");
  }
  const int k = j["k"].get<int>();
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw InvalidPattern("each edge must be a pair of integers");
    }
    edges.emplace_back(e[0].get<int>() - 1, e[1].get<int>() - 1);
  }
  return PatternGraph::from_edges(k, edges);
}

PatternGraph load_pattern_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidPattern("cannot open pattern file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_pattern(buf.str());
}

namespace patterns {

PatternGraph triangle() { return PatternGraph::from_edges(3, {{0, 1}, {0, 2}, {1, 2}}); }

PatternGraph path3() { return PatternGraph::from_edges(3, {{0, 1}, {1, 2}}); }

PatternGraph complete(int k) {
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) edges.emplace_back(a, b);
  }
  return PatternGraph::from_edges(k, edges);
}

PatternGraph star(int leaves) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return PatternGraph::from_edges(leaves + 1, edges);
}

PatternGraph cycle(int k) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < k; ++i) edges.emplace_back(i, (i + 1) % k);
  return PatternGraph::from_edges(k, edges);
}

}  // namespace patterns
}  // namespace lg
