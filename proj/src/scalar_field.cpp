#include "cdforge/scalar_field.hpp"

#include <cmath>

#include "cdforge/rng.hpp"

namespace cdforge {

ScalarField::ScalarField(std::map<std::string, double> values, double default_value)
    : values_(std::move(values)), default_(default_value) {
  if (!std::isfinite(default_)) throw validation_error("field default must be finite");
  for (const auto& [id, v] : values_)
    if (!std::isfinite(v)) throw validation_error("field value at " + id + " is not finite");
}

void ScalarField::set(const std::string& id, double v) {
  if (!std::isfinite(v)) throw validation_error("field value at " + id + " is not finite");
  values_[id] = v;
}

double ScalarField::at(const std::string& id) const {
  auto it = values_.find(id);
  return it == values_.end() ? default_ : it->second;
}

Eigen::VectorXd ScalarField::on(const WeightedGraph& g) const {
  Eigen::VectorXd v = Eigen::VectorXd::Constant(g.num_vertices(), default_);
  for (const auto& [id, val] : values_) {
    int i = g.find(id);
    if (i >= 0) v[i] = val;
  }
  return v;
}

Eigen::VectorXd ScalarField::on(const WeightedGraph& g, const VertexSet& s) const {
  Eigen::VectorXd v(s.size());
  for (int i = 0; i < s.size(); ++i) v[i] = at(g.id(s[i]));
  return v;
}

ScalarField ScalarField::from_dense(const WeightedGraph& g, const Eigen::VectorXd& v,
                                    double default_value) {
  if (v.size() != g.num_vertices())
    throw validation_error("dense vector length does not match vertex count");
  ScalarField f(default_value);
  for (int i = 0; i < g.num_vertices(); ++i) f.set(g.id(i), v[i]);
  return f;
}

ScalarField ScalarField::from_dense(const WeightedGraph& g, const VertexSet& s,
                                    const Eigen::VectorXd& v, double default_value) {
  if (v.size() != s.size())
    throw validation_error("dense vector length does not match subset size");
  ScalarField f(default_value);
  for (int i = 0; i < s.size(); ++i) f.set(g.id(s[i]), v[i]);
  return f;
}

ScalarField random_positive_field(const WeightedGraph& g, std::uint64_t seed) {
  ScalarField f(1.0);
  for (int i = 0; i < g.num_vertices(); ++i) {
    SplitMix64 rng(derive_seed(seed, g.id(i)));
    f.set(g.id(i), std::exp(rng.uniform(-1.0, 1.0)));
  }
  return f;
}

ScalarField random_field(const WeightedGraph& g, std::uint64_t seed) {
  ScalarField f(0.0);
  for (int i = 0; i < g.num_vertices(); ++i) {
    SplitMix64 rng(derive_seed(seed, g.id(i)));
    f.set(g.id(i), rng.uniform(-1.0, 1.0));
  }
  return f;
}

}  // namespace cdforge
