#include "cdforge/io.hpp"

#include <fstream>
#include <sstream>

namespace cdforge {

namespace {

double number_field(const nlohmann::json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) throw validation_error(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

std::string string_field(const nlohmann::json& obj, const char* key) {
  if (!obj.contains(key) || !obj.at(key).is_string())
    throw validation_error(std::string("missing string field '") + key + "'");
  return obj.at(key).get<std::string>();
}

}  // namespace

WeightedGraph graph_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("edges"))
    throw validation_error("graph document must contain 'vertices' and 'edges'");
  if (!doc.at("vertices").is_array() || !doc.at("edges").is_array())
    throw validation_error("'vertices' and 'edges' must be arrays");

  std::vector<VertexInput> vs;
  for (const auto& v : doc.at("vertices")) {
    if (!v.is_object()) throw validation_error("vertex entries must be objects");
    vs.push_back({string_field(v, "id"), number_field(v, "mu", 1.0)});
  }
  std::vector<EdgeInput> es;
  for (const auto& e : doc.at("edges")) {
    if (!e.is_object()) throw validation_error("edge entries must be objects");
    es.push_back({string_field(e, "u"), string_field(e, "v"), number_field(e, "w", 1.0)});
  }
  return WeightedGraph(std::move(vs), std::move(es));
}

WeightedGraph parse_graph(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw validation_error("malformed JSON");
  return graph_from_json(doc);
}

nlohmann::json graph_to_json(const WeightedGraph& g) {
  nlohmann::json vertices = nlohmann::json::array();
  for (int i = 0; i < g.num_vertices(); ++i)
    vertices.push_back({{"id", g.id(i)}, {"mu", g.mu(i)}});
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges())
    edges.push_back({{"u", g.id(e.u)}, {"v", g.id(e.v)}, {"w", e.w}});
  return {{"schema", 1}, {"vertices", vertices}, {"edges", edges}};
}

ScalarField field_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("values") || !doc.at("values").is_object())
    throw validation_error("field document must contain a 'values' object");
  std::map<std::string, double> values;
  for (auto it = doc.at("values").begin(); it != doc.at("values").end(); ++it) {
    if (!it.value().is_number()) throw validation_error("field values must be numbers");
    values[it.key()] = it.value().get<double>();
  }
  return ScalarField(std::move(values), number_field(doc, "default", 0.0));
}

ScalarField parse_field(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw validation_error("malformed JSON");
  return field_from_json(doc);
}

nlohmann::json field_to_json(const ScalarField& f) {
  nlohmann::json values = nlohmann::json::object();
  for (const auto& [id, v] : f.values()) values[id] = v;
  return {{"values", values}, {"default", f.default_value()}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("file not found: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw validation_error("cannot write file: " + path);
  out << content;
}

WeightedGraph load_graph(const std::string& path) { return parse_graph(read_file(path)); }

ScalarField load_field(const std::string& path) { return parse_field(read_file(path)); }

}  // namespace cdforge
