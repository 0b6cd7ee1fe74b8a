#pragma once

#include <string>

#include <json.hpp>

#include "cdforge/graph.hpp"
#include "cdforge/scalar_field.hpp"

namespace cdforge {

// Graph document: {"vertices":[{"id":"a","mu":1.0},...],
//                  "edges":[{"u":"a","v":"b","w":1.0},...]}
// "mu" and "w" are optional and default to 1.0.  Unknown top-level keys are
// ignored so versioned documents round-trip.
WeightedGraph parse_graph(const std::string& text);
WeightedGraph graph_from_json(const nlohmann::json& doc);
nlohmann::json graph_to_json(const WeightedGraph& g);

// Field document: {"values":{"a":0.5,...},"default":0.0}
ScalarField parse_field(const std::string& text);
ScalarField field_from_json(const nlohmann::json& doc);
nlohmann::json field_to_json(const ScalarField& f);

WeightedGraph load_graph(const std::string& path);
ScalarField load_field(const std::string& path);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace cdforge
