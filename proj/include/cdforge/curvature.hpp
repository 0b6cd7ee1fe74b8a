#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cdforge/gamma.hpp"
#include "cdforge/graph.hpp"
#include "cdforge/scalar_field.hpp"

namespace cdforge {

// Dimension parameter n in (0, inf].  Infinity is explicit: the (1/n)
// rank-one term is omitted, never approximated by a large n.
class Dimension {
 public:
  static Dimension finite(double n) {
    if (!(n > 0.0)) throw validation_error("dimension must be positive");
    return Dimension(n, false);
  }
  static Dimension infinite() { return Dimension(0.0, true); }
  static Dimension parse(const std::string& s);

  bool is_infinite() const { return infinite_; }
  double value() const { return n_; }
  // 1/n, exactly 0 for n = inf.
  double inv() const { return infinite_ ? 0.0 : 1.0 / n_; }
  std::string str() const;

 private:
  Dimension(double n, bool inf) : n_(n), infinite_(inf) {}
  double n_;
  bool infinite_;
};

// margin = G2(f)(x) - (1/n)(Lf(x))^2 - K G(f)(x); CD(n,K) holds at x for
// this f iff margin >= 0.
double cd_check(const WeightedGraph& g, int x, Dimension n, double k, const Eigen::VectorXd& f);
double cd_check(const WeightedGraph& g, const std::string& x, Dimension n, double k,
                const ScalarField& f);

// margin = G2~(f)(x) - (1/n) f(x)^2 (L log f)(x)^2 - K G(f)(x) for f > 0 on
// the 2-ball; 2-homogeneous in f.
double cde_check(const WeightedGraph& g, int x, Dimension n, double k, const Eigen::VectorXd& f);
double cde_check(const WeightedGraph& g, const std::string& x, Dimension n, double k,
                 const ScalarField& f);

enum class CurvatureMethod { generalized_eigen, heuristic_search };

std::string method_name(CurvatureMethod m);

struct CurvatureResult {
  int vertex;
  double k_max;
  ScalarField minimizer;  // field on the 2-ball achieving (or approximating) the infimum
  CurvatureMethod method;
  bool certified;
  bool converged;
};

// Best K with CD(n,K) at x:
//   k_max = inf over f with G(f)(x) > 0 of [G2(f)(x) - (1/n)(Lf(x))^2] / G(f)(x),
// the smallest generalized eigenvalue of the pencil (gamma2_form - (1/n) l l^T,
// gamma_form) on the 2-ball.  The gamma_form kernel (fields constant on the
// closed 1-ball) is eliminated by a Schur complement, which realizes the
// minimization over those free directions exactly.
CurvatureResult cd_max_k(const WeightedGraph& g, int x, Dimension n);
CurvatureResult cd_max_k(const WeightedGraph& g, const std::string& x, Dimension n);

struct CdeSearchOptions {
  int starts = 16;
  std::uint64_t seed = 1;
  int max_iter = 2000;
  double tol = 1e-9;  // gradient-norm stopping threshold
};

// Heuristic minimization of the CDE' Rayleigh quotient over positive f on the
// 2-ball, parameterized f = exp(u) with the gauge u(x) = 0.  The result is an
// UPPER bound on the true infimum; certified = false.
CurvatureResult cde_search_k(const WeightedGraph& g, int x, Dimension n,
                             const CdeSearchOptions& opts = {});
CurvatureResult cde_search_k(const WeightedGraph& g, const std::string& x, Dimension n,
                             const CdeSearchOptions& opts = {});

// Per-vertex sweeps; deterministic regardless of thread count (per-vertex
// seeds derive from (opts.seed, vertex id)).
std::vector<CurvatureResult> cd_max_k_all(const WeightedGraph& g, Dimension n, int threads = 1);
std::vector<CurvatureResult> cde_search_k_all(const WeightedGraph& g, Dimension n,
                                              const CdeSearchOptions& opts = {}, int threads = 1);

// Certified graph-level lower bound: min over vertices of cd_max_k.
double graph_cd_lower_bound(const WeightedGraph& g, Dimension n, int threads = 1);

}  // namespace cdforge
