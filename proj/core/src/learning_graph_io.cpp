#include "lg/learning_graph_io.hpp"

namespace lg {
namespace {

nlohmann::json encode(double v) { return v; }
nlohmann::json encode(const Rational& v) { return to_string(v); }

template <typename Scalar>
Scalar decode(const nlohmann::json& j) {
  if constexpr (std::is_same_v<Scalar, double>) {
    if (j.is_string()) return to_double(parse_rational(j.get<std::string>()));
    return j.get<double>();
  } else {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    return parse_rational(j.dump());
  }
}

template <typename Scalar>
nlohmann::json encode_graph(const LearningGraph<Scalar>& g) {
  nlohmann::json vertices = nlohmann::json::array();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    nlohmann::json jv{{"name", g.vertex(v).name}};
    if (g.vertex(v).vars) jv["vars"] = *g.vertex(v).vars;
    vertices.push_back(std::move(jv));
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges()) {
    edges.push_back({{"from", e.from}, {"to", e.to}, {"weight", encode(e.weight)}, {"length", e.length}});
  }
  nlohmann::json flows = nlohmann::json::array();
  for (const auto& f : g.flows()) {
    std::vector<EdgeId> keys;
    for (const auto& [e, value] : f.values) keys.push_back(e);
    std::sort(keys.begin(), keys.end());
    nlohmann::json values = nlohmann::json::object();
    for (EdgeId e : keys) values[std::to_string(e)] = encode(f.values.at(e));
    flows.push_back({{"name", f.name}, {"values", std::move(values)}});
  }
  return {{"vertices", std::move(vertices)}, {"edges", std::move(edges)}, {"flows", std::move(flows)}};
}

template <typename Scalar>
LearningGraph<Scalar> decode_graph(const nlohmann::json& j) {
  try {
    const auto& vertices = j.at("vertices");
    if (vertices.empty()) throw Error("learning graph needs at least the root vertex");
    auto vars_of = [](const nlohmann::json& jv) -> std::optional<VarSet> {
      if (!jv.contains("vars")) return std::nullopt;
      return jv.at("vars").get<VarSet>();
    };
    LearningGraph<Scalar> g(vertices[0].value("name", std::string("root")), vars_of(vertices[0]));
    for (std::size_t v = 1; v < vertices.size(); ++v) {
      g.add_vertex(vertices[v].value("name", std::string()), vars_of(vertices[v]));
    }
    for (const auto& je : j.at("edges")) {
      std::optional<int> length;
      if (je.contains("length")) length = je.at("length").get<int>();
      g.add_edge(je.at("from").get<VertexId>(), je.at("to").get<VertexId>(), decode<Scalar>(je.at("weight")),
                 length);
    }
    if (j.contains("flows")) {
      for (const auto& jf : j.at("flows")) {
        FlowId y = g.add_flow(jf.value("name", std::string()));
        for (const auto& [key, value] : jf.at("values").items()) {
          EdgeId e = std::stoul(key);
          if (e >= g.edge_count()) throw Error("flow refers to unknown edge " + key);
          g.set_flow(y, e, decode<Scalar>(value));
        }
      }
    }
    return g;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(std::string("malformed learning graph JSON: ") + ex.what());
  }
}

}  // namespace

nlohmann::json to_json(const LearningGraph<double>& g) { return encode_graph(g); }
nlohmann::json to_json(const LearningGraph<Rational>& g) { return encode_graph(g); }

LearningGraph<double> learning_graph_from_json(const nlohmann::json& j) { return decode_graph<double>(j); }
LearningGraph<Rational> exact_learning_graph_from_json(const nlohmann::json& j) {
  return decode_graph<Rational>(j);
}

}  // namespace lg
