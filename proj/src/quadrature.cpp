#include "cdforge/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "cdforge/errors.hpp"

namespace cdforge {

namespace {

GaussLegendreRule compute_rule(int order) {
  if (order < 1) throw validation_error("quadrature order must be >= 1");
  const int n = order;
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Newton on P_n with the classic Chebyshev initial guess.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * x * p1 - k * p2) / (k + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

Eigen::VectorXd composite(const std::function<Eigen::VectorXd(double)>& f,
                          double a, double b, int panels, const GaussLegendreRule& rule) {
  const double width = (b - a) / panels;
  Eigen::VectorXd acc;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double mid = lo + 0.5 * width;
    const double half = 0.5 * width;
    for (int i = 0; i < rule.nodes.size(); ++i) {
      Eigen::VectorXd v = f(mid + half * rule.nodes[i]);
      if (acc.size() == 0) acc = Eigen::VectorXd::Zero(v.size());
      acc += (half * rule.weights[i]) * v;
    }
  }
  return acc;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int order) {
  static std::mutex mtx;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
  return it->second;
}

Eigen::VectorXd integrate_adaptive(const std::function<Eigen::VectorXd(double)>& f,
                                   double a, double b, int initial_panels,
                                   const QuadratureOptions& opts) {
  if (!(b > a)) {
    Eigen::VectorXd z = f(a);
    z.setZero();
    return z;
  }
  const GaussLegendreRule& rule = gauss_legendre(opts.order);
  int panels = initial_panels < 1 ? 1 : initial_panels;
  Eigen::VectorXd prev = composite(f, a, b, panels, rule);
  double diff = std::numeric_limits<double>::infinity();
  for (int d = 0; d < opts.max_doublings; ++d) {
    panels *= 2;
    Eigen::VectorXd cur = composite(f, a, b, panels, rule);
    diff = (cur - prev).cwiseAbs().maxCoeff();
    prev = std::move(cur);
    if (diff <= opts.refine_tol) return prev;
  }
  if (diff > opts.fail_tol)
    throw numerical_error("quadrature did not converge: last refinement changed by " +
                          std::to_string(diff));
  return prev;
}

double integrate_adaptive_scalar(const std::function<double(double)>& f,
                                 double a, double b, int initial_panels,
                                 const QuadratureOptions& opts) {
  auto wrap = [&](double s) {
    Eigen::VectorXd v(1);
    v[0] = f(s);
    return v;
  };
  return integrate_adaptive(wrap, a, b, initial_panels, opts)[0];
}

}  // namespace cdforge
