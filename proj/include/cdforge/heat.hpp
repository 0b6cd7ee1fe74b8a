#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "cdforge/graph.hpp"
#include "cdforge/scalar_field.hpp"

namespace cdforge {

// Eigenpairs of the Dirichlet Laplacian -L_U on the interior of a finite
// subset, mu-orthonormalized.  Eigenvalues ascend and are >= 0.
struct SpectralDecomposition {
  VertexSet subset;             // interior vertices carrying Dirichlet data
  Eigen::VectorXd eigenvalues;  // of -L_U
  Eigen::MatrixXd eigenvectors; // columns phi_i over subset, <phi_i,phi_j>_mu = delta_ij
  Eigen::VectorXd mu;           // measure restricted to subset
};

// Dense symmetric eigendecomposition after conjugating by mu^(1/2).
// Throws validation_error on empty interior, numerical_error above the size
// cap or on solver failure.
SpectralDecomposition dirichlet_spectrum(const WeightedGraph& g, const VertexSet& u,
                                         int max_vertices = 2000);

// p_U(t,x,y) = sum_i e^{-lambda_i t} phi_i(x) phi_i(y); x, y graph indices,
// must lie in the subset.  Raw value (no clamping).
double heat_kernel_value(const SpectralDecomposition& sd, double t, int x, int y);

// P_t f on the subset from values of f on the subset.  Negative t is allowed
// here (spectral extrapolation, used by finite-difference probes); public
// entry points validate t >= 0.
Eigen::VectorXd semigroup_apply(const SpectralDecomposition& sd, double t,
                                const Eigen::VectorXd& f_on_subset);

struct HeatKernelValue {
  double t;
  std::string x, y;
  double value;           // clamped: negatives of magnitude <= 1e-12 report as 0
  int subset_radius;      // -1 = FULL graph
};

constexpr double kKernelClampThreshold = 1e-12;

// subset_radius labels the report row when U is a ball; pass -1 for the full
// graph (the default when U = V).
HeatKernelValue heat_kernel(const WeightedGraph& g, const VertexSet& u, double t,
                            const std::string& x, const std::string& y,
                            int subset_radius = -1);

// Spectral application of P_t with zero Dirichlet data on the boundary of U.
// t = 0 returns the restriction of f to interior(U).
ScalarField apply_semigroup(const WeightedGraph& g, const VertexSet& u, double t,
                            const ScalarField& f);

struct ExhaustionDiagnostics {
  std::vector<int> radii;       // radii actually evaluated
  std::vector<double> values;   // raw kernel values per radius
  bool converged;
  int used_radius;
};

// Dirichlet kernels on successive balls until |p_{k+1} - p_k| < tol.
// Nonconvergence is reported in the diagnostics, not thrown.
std::pair<HeatKernelValue, ExhaustionDiagnostics> exhaustion_kernel(
    const WeightedGraph& g, const ExhaustionPlan& plan, double t,
    const std::string& x, const std::string& y, double tol = 1e-8);

// Full-graph heat semigroup (boundaryless finite graph); the decomposition is
// computed once and shared by every evaluation.
class HeatSemigroup {
 public:
  explicit HeatSemigroup(const WeightedGraph& g);

  const WeightedGraph& graph() const { return *g_; }
  const SpectralDecomposition& spectrum() const { return sd_; }
  double max_eigenvalue() const { return sd_.eigenvalues[sd_.eigenvalues.size() - 1]; }

  Eigen::VectorXd apply(double t, const Eigen::VectorXd& f) const {
    return semigroup_apply(sd_, t, f);
  }
  double kernel(double t, int x, int y) const { return heat_kernel_value(sd_, t, x, y); }

 private:
  const WeightedGraph* g_;
  SpectralDecomposition sd_;
};

// e^{tL} f by scaling-and-squaring with a truncated Taylor series; an
// algebraic route independent of the spectral path.
Eigen::VectorXd expm_apply(const WeightedGraph& g, double t, const Eigen::VectorXd& f);

// sup_x |Lu(x)| / (2 sqrt(u(x))) for positive u; finite on finite graphs.
double sqrt_ratio_sup(const WeightedGraph& g, const Eigen::VectorXd& u);

}  // namespace cdforge
