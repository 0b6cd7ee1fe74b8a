#pragma once

#include <functional>

#include <Eigen/Core>

namespace cdforge {

// Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree 2*order-1.
struct GaussLegendreRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

const GaussLegendreRule& gauss_legendre(int order);

struct QuadratureOptions {
  int order = 8;
  int max_doublings = 10;
  double refine_tol = 1e-10;  // stop when successive refinements agree to this
  double fail_tol = 1e-9;     // nonconvergence if still above this at the end
};

// Composite Gauss-Legendre over [a, b] for a vector-valued integrand,
// doubling the panel count until successive results agree in max norm.
// Throws numerical_error on nonconvergence.
Eigen::VectorXd integrate_adaptive(const std::function<Eigen::VectorXd(double)>& f,
                                   double a, double b, int initial_panels,
                                   const QuadratureOptions& opts = {});

double integrate_adaptive_scalar(const std::function<double(double)>& f,
                                 double a, double b, int initial_panels,
                                 const QuadratureOptions& opts = {});

}  // namespace cdforge
