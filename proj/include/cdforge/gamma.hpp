#pragma once

#include <Eigen/Core>

#include "cdforge/graph.hpp"
#include "cdforge/scalar_field.hpp"

namespace cdforge {

// Pointwise mu-Laplacian:  Lf(x) = (1/mu(x)) sum_{y~x} w_xy (f(y) - f(x)).
// Reads f on the 1-ball of x.  Dense vectors are indexed in graph vertex
// order; neighbor sums accumulate in sorted-neighbor order for cross-run
// determinism.
double laplacian_at(const WeightedGraph& g, const Eigen::VectorXd& f, int x);
Eigen::VectorXd laplacian(const WeightedGraph& g, const Eigen::VectorXd& f);
Eigen::VectorXd laplacian(const WeightedGraph& g, const Eigen::VectorXd& f, const VertexSet& onto);

// Gradient form:  G(f,h)(x) = (1/2mu(x)) sum_{y~x} w_xy (f(y)-f(x))(h(y)-h(x)).
// Reads its arguments on the 1-ball of x.
double gamma_at(const WeightedGraph& g, const Eigen::VectorXd& f, const Eigen::VectorXd& h, int x);
double gamma_at(const WeightedGraph& g, const Eigen::VectorXd& f, int x);
Eigen::VectorXd gamma(const WeightedGraph& g, const Eigen::VectorXd& f, const Eigen::VectorXd& h);
Eigen::VectorXd gamma(const WeightedGraph& g, const Eigen::VectorXd& f);

// Iterated form:  2 G2(f,h) = L G(f,h) - G(f, Lh) - G(Lf, h).
// Reads f and h on the 2-ball of x.
double gamma2_at(const WeightedGraph& g, const Eigen::VectorXd& f, const Eigen::VectorXd& h, int x);
double gamma2_at(const WeightedGraph& g, const Eigen::VectorXd& f, int x);

// Modified iterated form for positive f:
//   G2~(f) = (1/2) L G(f) - G(f, L(f^2) / (2f)),
// which coincides with G2(f) - G(f, G(f)/f).  Requires f > 0 on the 2-ball.
double gamma2_tilde_at(const WeightedGraph& g, const Eigen::VectorXd& f, int x);

// Quadratic-form matrices of the pointwise operators at x over its 2-ball.
struct LocalForms {
  int vertex;
  VertexSet support;            // ball(x, 2)
  Eigen::VectorXd laplacian_row;  // row of L at x over support; sums to zero
  Eigen::MatrixXd gamma_form;     // PSD; kernel contains the all-ones vector
  Eigen::MatrixXd gamma2_form;
};

LocalForms local_forms(const WeightedGraph& g, int x);

// ScalarField-facing wrappers (vertices by id).
double laplacian(const WeightedGraph& g, const ScalarField& f, const std::string& x);
double gamma(const WeightedGraph& g, const ScalarField& f, const ScalarField& h, const std::string& x);
double gamma2(const WeightedGraph& g, const ScalarField& f, const ScalarField& h, const std::string& x);
double gamma2_tilde(const WeightedGraph& g, const ScalarField& f, const std::string& x);

}  // namespace cdforge
