#include "cdforge/gamma.hpp"

namespace cdforge {

namespace {

void check_vertex(const WeightedGraph& g, int x) {
  if (x < 0 || x >= g.num_vertices()) throw validation_error("unknown vertex index");
}

void check_size(const WeightedGraph& g, const Eigen::VectorXd& f) {
  if (f.size() != g.num_vertices())
    throw validation_error("field vector length does not match vertex count");
}

}  // namespace

double laplacian_at(const WeightedGraph& g, const Eigen::VectorXd& f, int x) {
  check_vertex(g, x);
  check_size(g, f);
  double acc = 0.0;
  for (const Neighbor& nb : g.neighbors(x)) acc += nb.weight * (f[nb.vertex] - f[x]);
  return acc / g.mu(x);
}

Eigen::VectorXd laplacian(const WeightedGraph& g, const Eigen::VectorXd& f) {
  check_size(g, f);
  Eigen::VectorXd out(g.num_vertices());
  for (int x = 0; x < g.num_vertices(); ++x) out[x] = laplacian_at(g, f, x);
  return out;
}

Eigen::VectorXd laplacian(const WeightedGraph& g, const Eigen::VectorXd& f, const VertexSet& onto) {
  Eigen::VectorXd out(onto.size());
  for (int i = 0; i < onto.size(); ++i) out[i] = laplacian_at(g, f, onto[i]);
  return out;
}

double gamma_at(const WeightedGraph& g, const Eigen::VectorXd& f, const Eigen::VectorXd& h, int x) {
  check_vertex(g, x);
  check_size(g, f);
  check_size(g, h);
  double acc = 0.0;
  for (const Neighbor& nb : g.neighbors(x))
    acc += nb.weight * (f[nb.vertex] - f[x]) * (h[nb.vertex] - h[x]);
  return acc / (2.0 * g.mu(x));
}

double gamma_at(const WeightedGraph& g, const Eigen::VectorXd& f, int x) {
  return gamma_at(g, f, f, x);
}

Eigen::VectorXd gamma(const WeightedGraph& g, const Eigen::VectorXd& f, const Eigen::VectorXd& h) {
  Eigen::VectorXd out(g.num_vertices());
  for (int x = 0; x < g.num_vertices(); ++x) out[x] = gamma_at(g, f, h, x);
  return out;
}

Eigen::VectorXd gamma(const WeightedGraph& g, const Eigen::VectorXd& f) { return gamma(g, f, f); }

double gamma2_at(const WeightedGraph& g, const Eigen::VectorXd& f, const Eigen::VectorXd& h, int x) {
  check_vertex(g, x);
  check_size(g, f);
  check_size(g, h);
  // L G(f,h)(x); every gamma_at below reads only within the 2-ball of x.
  const double gfh_x = gamma_at(g, f, h, x);
  double lap_gfh = 0.0;
  for (const Neighbor& nb : g.neighbors(x))
    lap_gfh += nb.weight * (gamma_at(g, f, h, nb.vertex) - gfh_x);
  lap_gfh /= g.mu(x);

  // G(f, Lh)(x) + G(Lf, h)(x), expanding Lh / Lf only where needed.
  const double lh_x = laplacian_at(g, h, x);
  const double lf_x = laplacian_at(g, f, x);
  double cross = 0.0;
  for (const Neighbor& nb : g.neighbors(x)) {
    const int y = nb.vertex;
    cross += nb.weight * (f[y] - f[x]) * (laplacian_at(g, h, y) - lh_x);
    cross += nb.weight * (h[y] - h[x]) * (laplacian_at(g, f, y) - lf_x);
  }
  cross /= (2.0 * g.mu(x));

  return 0.5 * (lap_gfh - cross);
}

double gamma2_at(const WeightedGraph& g, const Eigen::VectorXd& f, int x) {
  return gamma2_at(g, f, f, x);
}

double gamma2_tilde_at(const WeightedGraph& g, const Eigen::VectorXd& f, int x) {
  check_vertex(g, x);
  check_size(g, f);
  for (int v : ball(g, x, 2))
    if (!(f[v] > 0.0))
      throw validation_error("gamma2_tilde requires positive values on the 2-ball of " + g.id(x));

  // (1/2) L G(f)(x)
  const double gf_x = gamma_at(g, f, x);
  double lap_gf = 0.0;
  for (const Neighbor& nb : g.neighbors(x))
    lap_gf += nb.weight * (gamma_at(g, f, nb.vertex) - gf_x);
  lap_gf /= g.mu(x);

  // G(f, q)(x) with q = L(f^2) / (2f); q is needed at x and its neighbors.
  const Eigen::VectorXd f2 = f.cwiseProduct(f);
  auto q_at = [&](int v) { return laplacian_at(g, f2, v) / (2.0 * f[v]); };
  const double q_x = q_at(x);
  double cross = 0.0;
  for (const Neighbor& nb : g.neighbors(x))
    cross += nb.weight * (f[nb.vertex] - f[x]) * (q_at(nb.vertex) - q_x);
  cross /= (2.0 * g.mu(x));

  return 0.5 * lap_gf - cross;
}

LocalForms local_forms(const WeightedGraph& g, int x) {
  check_vertex(g, x);
  LocalForms lf;
  lf.vertex = x;
  lf.support = ball(g, x, 2);
  const int d = lf.support.size();
  const int px = lf.support.position_of(x);

  // Laplacian row of any vertex in the closed 1-ball of x is supported on
  // the 2-ball, so these local rows are exact.
  auto lap_row = [&](int v) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(d);
    const int pv = lf.support.position_of(v);
    for (const Neighbor& nb : g.neighbors(v)) {
      const int pn = lf.support.position_of(nb.vertex);
      row[pn] += nb.weight / g.mu(v);
      row[pv] -= nb.weight / g.mu(v);
    }
    return row;
  };

  // Gamma form of any vertex in the closed 1-ball of x over the support.
  auto gamma_form_of = [&](int v) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
    const int pv = lf.support.position_of(v);
    for (const Neighbor& nb : g.neighbors(v)) {
      const int pn = lf.support.position_of(nb.vertex);
      const double c = nb.weight / (2.0 * g.mu(v));
      m(pn, pn) += c;
      m(pv, pv) += c;
      m(pn, pv) -= c;
      m(pv, pn) -= c;
    }
    return m;
  };

  lf.laplacian_row = lap_row(x);

  const Eigen::MatrixXd gx = gamma_form_of(x);
  lf.gamma_form = gx;

  // 2 G2(f)(x) = L G(f)(x) - 2 G(f, Lf)(x) as quadratic forms.
  Eigen::MatrixXd lap_gamma = Eigen::MatrixXd::Zero(d, d);
  for (const Neighbor& nb : g.neighbors(x))
    lap_gamma += (nb.weight / g.mu(x)) * (gamma_form_of(nb.vertex) - gx);

  Eigen::MatrixXd cross = Eigen::MatrixXd::Zero(d, d);
  const Eigen::VectorXd lx = lf.laplacian_row;
  for (const Neighbor& nb : g.neighbors(x)) {
    const int pn = lf.support.position_of(nb.vertex);
    Eigen::VectorXd e_diff = Eigen::VectorXd::Zero(d);
    e_diff[pn] = 1.0;
    e_diff[px] -= 1.0;
    cross += (nb.weight / (2.0 * g.mu(x))) * e_diff * (lap_row(nb.vertex) - lx).transpose();
  }
  Eigen::MatrixXd cross_sym = 0.5 * (cross + cross.transpose());

  lf.gamma2_form = 0.5 * lap_gamma - cross_sym;
  lf.gamma2_form = 0.5 * (lf.gamma2_form + lf.gamma2_form.transpose()).eval();
  return lf;
}

double laplacian(const WeightedGraph& g, const ScalarField& f, const std::string& x) {
  return laplacian_at(g, f.on(g), g.index_of(x));
}

double gamma(const WeightedGraph& g, const ScalarField& f, const ScalarField& h, const std::string& x) {
  return gamma_at(g, f.on(g), h.on(g), g.index_of(x));
}

double gamma2(const WeightedGraph& g, const ScalarField& f, const ScalarField& h, const std::string& x) {
  return gamma2_at(g, f.on(g), h.on(g), g.index_of(x));
}

double gamma2_tilde(const WeightedGraph& g, const ScalarField& f, const std::string& x) {
  return gamma2_tilde_at(g, f.on(g), g.index_of(x));
}

}  // namespace cdforge
