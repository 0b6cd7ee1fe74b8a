#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <Eigen/Core>

#include "cdforge/graph.hpp"

namespace cdforge {

// Real-valued function on vertex ids; unlisted vertices take the default.
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(double default_value) : default_(default_value) {}
  ScalarField(std::map<std::string, double> values, double default_value);

  double default_value() const { return default_; }
  const std::map<std::string, double>& values() const { return values_; }
  void set(const std::string& id, double v);
  double at(const std::string& id) const;

  // Dense vector in graph index order (default-filled).
  Eigen::VectorXd on(const WeightedGraph& g) const;
  Eigen::VectorXd on(const WeightedGraph& g, const VertexSet& s) const;

  static ScalarField from_dense(const WeightedGraph& g, const Eigen::VectorXd& v,
                                double default_value = 0.0);
  static ScalarField from_dense(const WeightedGraph& g, const VertexSet& s,
                                const Eigen::VectorXd& v, double default_value = 0.0);

 private:
  std::map<std::string, double> values_;
  double default_ = 0.0;
};

// f = exp(u) with u(x) ~ Uniform(-1, 1) per vertex: positive, bounded in
// [1/e, e], deterministic in (seed, vertex id).
ScalarField random_positive_field(const WeightedGraph& g, std::uint64_t seed);

// u(x) ~ Uniform(-1, 1); general-purpose random test field.
ScalarField random_field(const WeightedGraph& g, std::uint64_t seed);

}  // namespace cdforge
