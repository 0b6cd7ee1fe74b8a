#include "cdforge/heat.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "cdforge/gamma.hpp"

namespace cdforge {

SpectralDecomposition dirichlet_spectrum(const WeightedGraph& g, const VertexSet& u,
                                         int max_vertices) {
  auto [interior, boundary] = interior_boundary(g, u);
  if (interior.empty()) throw validation_error("subset has empty interior");
  if (interior.size() > max_vertices)
    throw numerical_error("interior exceeds the dense eigensolver cap of " +
                          std::to_string(max_vertices) + " vertices");

  const int n = interior.size();
  Eigen::VectorXd mu(n), inv_sqrt_mu(n);
  for (int i = 0; i < n; ++i) {
    mu[i] = g.mu(interior[i]);
    inv_sqrt_mu[i] = 1.0 / std::sqrt(mu[i]);
  }

  // H = M^{1/2} (-L_U) M^{-1/2}: symmetric, PSD.  Diagonal keeps the full
  // weighted degree; boundary neighbors only add mass there (Dirichlet data).
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const int x = interior[i];
    h(i, i) = g.weighted_degree(x) / g.mu(x);
    for (const Neighbor& nb : g.neighbors(x)) {
      const int j = interior.position_of(nb.vertex);
      if (j >= 0) h(i, j) = -nb.weight * inv_sqrt_mu[i] * inv_sqrt_mu[j];
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) throw numerical_error("Dirichlet eigensolver failed");

  SpectralDecomposition sd;
  sd.subset = interior;
  sd.mu = std::move(mu);
  sd.eigenvalues = solver.eigenvalues().cwiseMax(0.0);
  sd.eigenvectors = inv_sqrt_mu.asDiagonal() * solver.eigenvectors();
  return sd;
}

double heat_kernel_value(const SpectralDecomposition& sd, double t, int x, int y) {
  const int px = sd.subset.position_of(x);
  const int py = sd.subset.position_of(y);
  if (px < 0 || py < 0) throw validation_error("vertex outside interior");
  double acc = 0.0;
  for (int i = 0; i < sd.eigenvalues.size(); ++i)
    acc += std::exp(-sd.eigenvalues[i] * t) * sd.eigenvectors(px, i) * sd.eigenvectors(py, i);
  return acc;
}

Eigen::VectorXd semigroup_apply(const SpectralDecomposition& sd, double t,
                                const Eigen::VectorXd& f_on_subset) {
  if (f_on_subset.size() != sd.subset.size())
    throw validation_error("field length does not match subset size");
  Eigen::VectorXd coeffs =
      sd.eigenvectors.transpose() * sd.mu.cwiseProduct(f_on_subset);
  for (int i = 0; i < coeffs.size(); ++i) coeffs[i] *= std::exp(-sd.eigenvalues[i] * t);
  return sd.eigenvectors * coeffs;
}

HeatKernelValue heat_kernel(const WeightedGraph& g, const VertexSet& u, double t,
                            const std::string& x, const std::string& y,
                            int subset_radius) {
  if (!(t > 0.0)) throw validation_error("heat kernel requires t > 0");
  SpectralDecomposition sd = dirichlet_spectrum(g, u);
  double v = heat_kernel_value(sd, t, g.index_of(x), g.index_of(y));
  if (v < 0.0 && v >= -kKernelClampThreshold) v = 0.0;
  return {t, x, y, v, subset_radius};
}

ScalarField apply_semigroup(const WeightedGraph& g, const VertexSet& u, double t,
                            const ScalarField& f) {
  if (t < 0.0) throw validation_error("apply_semigroup requires t >= 0");
  SpectralDecomposition sd = dirichlet_spectrum(g, u);
  Eigen::VectorXd fv = f.on(g, sd.subset);
  if (t == 0.0) return ScalarField::from_dense(g, sd.subset, fv);
  return ScalarField::from_dense(g, sd.subset, semigroup_apply(sd, t, fv));
}

std::pair<HeatKernelValue, ExhaustionDiagnostics> exhaustion_kernel(
    const WeightedGraph& g, const ExhaustionPlan& plan, double t,
    const std::string& x, const std::string& y, double tol) {
  validate_plan(g, plan);
  if (!(t > 0.0)) throw validation_error("heat kernel requires t > 0");
  if (!(tol > 0.0)) throw validation_error("tolerance must be positive");
  const int center = g.index_of(plan.center);
  const int xi = g.index_of(x);
  const int yi = g.index_of(y);

  {
    VertexSet first = ball(g, center, plan.radii.front());
    auto [interior, boundary] = interior_boundary(g, first);
    if (!interior.contains(xi) || !interior.contains(yi))
      throw validation_error("vertex outside interior of the smallest ball");
  }

  ExhaustionDiagnostics diag;
  diag.converged = false;
  diag.used_radius = plan.radii.back();
  double value = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < plan.radii.size(); ++k) {
    const int r = plan.radii[k];
    SpectralDecomposition sd = dirichlet_spectrum(g, ball(g, center, r));
    value = heat_kernel_value(sd, t, xi, yi);
    diag.radii.push_back(r);
    diag.values.push_back(value);
    if (k > 0 && std::abs(value - prev) < tol) {
      diag.converged = true;
      diag.used_radius = r;
      break;
    }
    prev = value;
  }

  double reported = value;
  if (reported < 0.0 && reported >= -kKernelClampThreshold) reported = 0.0;
  return {HeatKernelValue{t, x, y, reported, diag.used_radius}, diag};
}

HeatSemigroup::HeatSemigroup(const WeightedGraph& g)
    : g_(&g), sd_(dirichlet_spectrum(g, VertexSet::all(g))) {}

Eigen::VectorXd expm_apply(const WeightedGraph& g, double t, const Eigen::VectorXd& f) {
  if (f.size() != g.num_vertices())
    throw validation_error("field vector length does not match vertex count");
  const int n = g.num_vertices();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int x = 0; x < n; ++x) {
    a(x, x) = -t * g.weighted_degree(x) / g.mu(x);
    for (const Neighbor& nb : g.neighbors(x)) a(x, nb.vertex) = t * nb.weight / g.mu(x);
  }
  // Scale so the infinity norm is <= 1/2, Taylor to machine precision, square back.
  double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    a /= std::pow(2.0, squarings);
  }
  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
  for (int k = 1; k <= 40; ++k) {
    term = (term * a / static_cast<double>(k)).eval();
    result += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  for (int s = 0; s < squarings; ++s) result = (result * result).eval();
  return result * f;
}

double sqrt_ratio_sup(const WeightedGraph& g, const Eigen::VectorXd& u) {
  double sup = 0.0;
  for (int x = 0; x < g.num_vertices(); ++x) {
    if (!(u[x] > 0.0)) throw validation_error("sqrt_ratio_sup requires a positive function");
    sup = std::max(sup, std::abs(laplacian_at(g, u, x)) / (2.0 * std::sqrt(u[x])));
  }
  return sup;
}

}  // namespace cdforge
