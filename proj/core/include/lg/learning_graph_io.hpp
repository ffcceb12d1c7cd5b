#pragma once

#include <nlohmann/json.hpp>

#include <string>

#include "lg/learning_graph.hpp"

namespace lg {

/// Fixture format:
/// {"vertices": [{"name": "root", "vars": [..]}, ...],
///  "edges": [{"from": 0, "to": 1, "weight": w, "length": l}, ...],
///  "flows": [{"name": "y", "values": {"<edge>": p, ...}}, ...]}
/// Vertex 0 is the root. Rational values are written as "p/q" strings; double
/// values as numbers. Missing "vars" means the vertex has no variable set.
nlohmann::json to_json(const LearningGraph<double>& g);
nlohmann::json to_json(const LearningGraph<Rational>& g);

LearningGraph<double> learning_graph_from_json(const nlohmann::json& j);
LearningGraph<Rational> exact_learning_graph_from_json(const nlohmann::json& j);

}  // namespace lg
