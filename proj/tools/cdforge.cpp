// cdforge: curvature-dimension constants, heat kernels, and semigroup
// inequality verification on weighted graphs.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cdforge/curvature.hpp"
#include "cdforge/gamma.hpp"
#include "cdforge/heat.hpp"
#include "cdforge/inequalities.hpp"
#include "cdforge/io.hpp"
#include "cdforge/numfmt.hpp"
#include "cdforge/parallel.hpp"

using nlohmann::json;
using namespace cdforge;

namespace {

struct CommonOpts {
  std::string out;  // empty = stdout
  std::string format = "json";
  int threads = 0;  // 0 = auto (CDFORGE_THREADS, then hardware)
  std::uint64_t seed = 0;
};

void add_output_opts(CLI::App* cmd, CommonOpts& c, bool with_format = true) {
  cmd->add_option("--out", c.out, "Write output to this path instead of stdout");
  cmd->add_option("--threads", c.threads,
                  "Worker threads (0 = auto; CDFORGE_THREADS overrides auto)");
  cmd->add_option("--seed", c.seed, "Seed for randomized inputs");
  if (with_format)
    cmd->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
}

void emit(const CommonOpts& c, const std::string& text) {
  if (c.out.empty())
    std::cout << text;
  else
    write_file(c.out, text);
}

std::vector<double> split_doubles(const std::string& s, char sep) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) {
    if (tok.empty()) continue;
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw validation_error("invalid number: " + tok);
    out.push_back(v);
  }
  return out;
}

std::vector<std::string> split_strings(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(tok);
  return out;
}

// --t "0.1,0.5,1" or --t-range "start:stop:count" (geometric spacing)
std::vector<double> resolve_t_grid(const std::string& t_list, const std::string& t_range) {
  if (!t_list.empty() && !t_range.empty())
    throw validation_error("--t and --t-range are mutually exclusive");
  if (!t_list.empty()) return split_doubles(t_list, ',');
  if (!t_range.empty()) {
    auto parts = split_doubles(t_range, ':');
    if (parts.size() != 3) throw validation_error("--t-range expects start:stop:count");
    const double start = parts[0], stop = parts[1];
    const int count = static_cast<int>(parts[2]);
    if (!(start > 0.0) || !(stop > 0.0) || count < 1)
      throw validation_error("--t-range requires positive start/stop and count >= 1");
    std::vector<double> grid;
    for (int i = 0; i < count; ++i)
      grid.push_back(count == 1 ? start
                                : start * std::pow(stop / start, double(i) / (count - 1)));
    return grid;
  }
  throw validation_error("a time grid is required (--t or --t-range)");
}

VertexSet resolve_vertices(const WeightedGraph& g, const std::string& spec) {
  if (spec.empty() || spec == "all") return VertexSet::all(g);
  std::vector<int> idx;
  for (const std::string& id : split_strings(spec, ','))
    if (!id.empty()) idx.push_back(g.index_of(id));
  return VertexSet(std::move(idx));
}

json kernel_row(const HeatKernelValue& v) {
  json row{{"t", v.t}, {"x", v.x}, {"y", v.y}, {"value", v.value}};
  if (v.subset_radius < 0)
    row["radius"] = "full";
  else
    row["radius"] = v.subset_radius;
  return row;
}

std::string csv_radius(int r) { return r < 0 ? "full" : std::to_string(r); }

// ---------------------------------------------------------------- generate

int run_generate(const std::string& family, const GenerateParams& params, const CommonOpts& c) {
  WeightedGraph g = generate(parse_family(family), params);
  emit(c, dump_json17(graph_to_json(g)));
  return 0;
}

// -------------------------------------------------------------------- info

int run_info(const std::string& path, const CommonOpts& c) {
  WeightedGraph g = load_graph(path);
  GraphStats s = graph_stats(g);
  json doc{{"schema", 1},
           {"num_vertices", s.num_vertices},
           {"num_edges", s.num_edges},
           {"omega_min", s.omega_min},
           {"d_mu", s.d_mu}};
  emit(c, dump_json17(doc));
  return 0;
}

// --------------------------------------------------------------- curvature

struct CurvatureArgs {
  std::string graph_path;
  std::string dim = "inf";
  std::string vertex;
  bool all = false;
  CdeSearchOptions cde;
};

int run_curvature(const CurvatureArgs& a, bool cde_mode, const CommonOpts& c) {
  WeightedGraph g = load_graph(a.graph_path);
  Dimension n = Dimension::parse(a.dim);
  if (a.all == !a.vertex.empty())
    throw validation_error("specify exactly one of --vertex ID or --all");

  CdeSearchOptions cde_opts = a.cde;
  if (c.seed != 0) cde_opts.seed = c.seed;

  std::vector<CurvatureResult> results;
  if (a.all) {
    results = cde_mode ? cde_search_k_all(g, n, cde_opts, c.threads)
                       : cd_max_k_all(g, n, c.threads);
  } else {
    results.push_back(cde_mode ? cde_search_k(g, a.vertex, n, cde_opts)
                               : cd_max_k(g, a.vertex, n));
  }

  bool all_converged = true;
  json rows = json::array();
  std::string csv = "vertex,n,k_max,certified,method\n";
  for (const auto& r : results) {
    all_converged = all_converged && r.converged;
    json row{{"vertex", g.id(r.vertex)},
             {"n", n.is_infinite() ? json("inf") : json(n.value())},
             {"k_max", r.k_max},
             {"certified", r.certified},
             {"method", method_name(r.method)}};
    if (cde_mode) row["converged"] = r.converged;
    rows.push_back(row);
    csv += g.id(r.vertex) + "," + n.str() + "," + format_double(r.k_max) + "," +
           (r.certified ? "true" : "false") + "," + method_name(r.method) + "\n";
  }
  if (c.format == "csv")
    emit(c, csv);
  else
    emit(c, dump_json17(json{{"schema", 1}, {"results", rows}}));
  if (!all_converged) {
    std::cerr << "warning: optimizer did not converge at every vertex\n";
    return 2;
  }
  return 0;
}

// -------------------------------------------------------------------- heat

struct HeatKernelArgs {
  std::string graph_path;
  std::string t_list, t_range;
  std::string x, y;
  std::string ball_spec;     // center:radius
  std::string exhaust_spec;  // center:r0:r1[:tol]
};

int run_heat_kernel(const HeatKernelArgs& a, const CommonOpts& c) {
  WeightedGraph g = load_graph(a.graph_path);
  std::vector<double> t_grid = resolve_t_grid(a.t_list, a.t_range);
  if (!a.ball_spec.empty() && !a.exhaust_spec.empty())
    throw validation_error("--ball and --exhaust are mutually exclusive");

  json rows = json::array();
  json diagnostics = json::array();
  std::string csv = "t,x,y,value,radius\n";

  auto add_row = [&](const HeatKernelValue& v) {
    rows.push_back(kernel_row(v));
    csv += format_double(v.t) + "," + v.x + "," + v.y + "," + format_double(v.value) + "," +
           csv_radius(v.subset_radius) + "\n";
  };

  if (!a.exhaust_spec.empty()) {
    auto parts = split_strings(a.exhaust_spec, ':');
    if (parts.size() != 3 && parts.size() != 4)
      throw validation_error("--exhaust expects center:r0:r1[:tol]");
    ExhaustionPlan plan;
    plan.center = parts[0];
    const int r0 = std::stoi(parts[1]), r1 = std::stoi(parts[2]);
    for (int r = r0; r <= r1; ++r) plan.radii.push_back(r);
    const double tol = parts.size() == 4 ? std::stod(parts[3]) : 1e-8;
    for (double t : t_grid) {
      auto [value, diag] = exhaustion_kernel(g, plan, t, a.x, a.y, tol);
      add_row(value);
      diagnostics.push_back(json{{"t", t},
                                 {"converged", diag.converged},
                                 {"radii", diag.radii},
                                 {"values", diag.values}});
    }
  } else {
    VertexSet u = VertexSet::all(g);
    int radius_label = -1;
    if (!a.ball_spec.empty()) {
      auto parts = split_strings(a.ball_spec, ':');
      if (parts.size() != 2) throw validation_error("--ball expects center:radius");
      radius_label = std::stoi(parts[1]);
      u = ball(g, parts[0], radius_label);
    }
    for (double t : t_grid) add_row(heat_kernel(g, u, t, a.x, a.y, radius_label));
  }

  if (c.format == "csv") {
    emit(c, csv);
  } else {
    json doc{{"schema", 1}, {"rows", rows}};
    if (!diagnostics.empty()) doc["diagnostics"] = diagnostics;
    emit(c, dump_json17(doc));
  }
  return 0;
}

struct HeatApplyArgs {
  std::string graph_path, field_path;
  double t = 0.0;
  std::string ball_spec;
};

int run_heat_apply(const HeatApplyArgs& a, const CommonOpts& c) {
  WeightedGraph g = load_graph(a.graph_path);
  ScalarField f = load_field(a.field_path);
  VertexSet u = VertexSet::all(g);
  if (!a.ball_spec.empty()) {
    auto parts = split_strings(a.ball_spec, ':');
    if (parts.size() != 2) throw validation_error("--ball expects center:radius");
    u = ball(g, parts[0], std::stoi(parts[1]));
  }
  ScalarField out = apply_semigroup(g, u, a.t, f);
  json doc = field_to_json(out);
  doc["schema"] = 1;
  emit(c, dump_json17(doc));
  return 0;
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
  std::string graph_path;
  std::string dim = "inf";
  std::string kappa = "auto";
  std::string t_list, t_range;
  std::string field_path;
  int random_fields = 0;
  std::string vertices;
};

json reports_to_json(const WeightedGraph& g, const std::vector<InequalityReport>& reports,
                     int field_index, std::string& csv) {
  json rows = json::array();
  for (const auto& r : reports) {
    rows.push_back(json{{"field", field_index},
                        {"item", item_name(r.item)},
                        {"vertex", g.id(r.vertex)},
                        {"t", r.t},
                        {"lhs", r.lhs},
                        {"rhs", r.rhs},
                        {"margin", r.margin}});
    csv += std::to_string(field_index) + "," + item_name(r.item) + "," + g.id(r.vertex) + "," +
           format_double(r.t) + "," + format_double(r.lhs) + "," + format_double(r.rhs) + "," +
           format_double(r.margin) + "\n";
  }
  return rows;
}

int run_verify_thm(const VerifyArgs& a, bool thm32, const CommonOpts& c) {
  WeightedGraph g = load_graph(a.graph_path);
  Dimension n = Dimension::parse(a.dim);
  std::vector<double> t_grid = resolve_t_grid(a.t_list, a.t_range);
  VertexSet verts = resolve_vertices(g, a.vertices);
  HeatSemigroup sg(g);

  double kappa;
  if (a.kappa == "auto") {
    if (thm32) {
      CdeSearchOptions opts;
      opts.seed = c.seed == 0 ? 1 : c.seed;
      std::vector<double> per_vertex(static_cast<std::size_t>(g.num_vertices()));
      parallel_for(g.num_vertices(), c.threads, [&](int x) {
        per_vertex[x] = cde_search_k(g, x, Dimension::infinite(), opts).k_max;
      });
      kappa = *std::min_element(per_vertex.begin(), per_vertex.end());
    } else {
      kappa = graph_cd_lower_bound(g, n, c.threads);
    }
  } else {
    std::size_t pos = 0;
    kappa = std::stod(a.kappa, &pos);
    if (pos != a.kappa.size()) throw validation_error("invalid --kappa: " + a.kappa);
  }

  std::vector<ScalarField> fields;
  if (!a.field_path.empty()) {
    fields.push_back(load_field(a.field_path));
  } else {
    const int count = a.random_fields > 0 ? a.random_fields : 1;
    for (int i = 0; i < count; ++i)
      fields.push_back(random_positive_field(g, c.seed + static_cast<std::uint64_t>(i)));
  }

  json all_rows = json::array();
  std::string csv = "field,item,vertex,t,lhs,rhs,margin\n";
  double min_margin = std::numeric_limits<double>::infinity();
  json argmin;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    std::vector<InequalityReport> reports =
        thm32 ? verify_thm32(sg, fields[i], kappa, t_grid, verts, c.threads)
              : verify_thm31(sg, fields[i], n, kappa, t_grid, verts, c.threads);
    for (const auto& r : reports) {
      if (r.margin < min_margin) {
        min_margin = r.margin;
        argmin = json{{"field", static_cast<int>(i)},
                      {"item", item_name(r.item)},
                      {"vertex", g.id(r.vertex)},
                      {"t", r.t}};
      }
    }
    json rows = reports_to_json(g, reports, static_cast<int>(i), csv);
    for (auto& row : rows) all_rows.push_back(std::move(row));
  }

  if (c.format == "csv") {
    emit(c, csv);
  } else {
    json doc{{"schema", 1},
             {"kappa", kappa},
             {"reports", all_rows},
             {"summary", json{{"min_margin", min_margin}, {"argmin", argmin}}}};
    if (!thm32) doc["dim"] = n.is_infinite() ? json("inf") : json(n.value());
    emit(c, dump_json17(doc));
  }
  return 0;
}

struct SemigroupArgs {
  std::string graph_path;
  std::string t_list = "0.2,1.0";
  std::string t_range;
};

int run_verify_semigroup(const SemigroupArgs& a, const CommonOpts& c) {
  WeightedGraph g = load_graph(a.graph_path);
  std::vector<double> t_grid = resolve_t_grid(a.t_list, a.t_range);
  HeatSemigroup sg(g);
  const int n = g.num_vertices();
  const SpectralDecomposition& sd = sg.spectrum();

  double sym = 0.0, pos = 0.0, row_dev = 0.0, ck = 0.0, heat_res = 0.0;
  double law = 0.0, comm = 0.0, expm_gap = 0.0;
  Eigen::VectorXd f = random_positive_field(g, c.seed).on(g);

  for (double t : t_grid) {
    if (!(t > 0.0)) throw validation_error("time grid entries must be positive");
    Eigen::MatrixXd p(n, n);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) p(x, y) = sg.kernel(t, x, y);
    sym = std::max(sym, (p - p.transpose()).cwiseAbs().maxCoeff());
    pos = std::min(pos, p.minCoeff());
    row_dev = std::max(row_dev, ((p * g.mu_vector()).array() - 1.0).abs().maxCoeff());

    Eigen::MatrixXd composed = p * g.mu_vector().asDiagonal() * p;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        ck = std::max(ck, std::abs(composed(x, y) - sg.kernel(2.0 * t, x, y)));

    const double h = 2.5e-4 / std::max(1.0, sd.eigenvalues.maxCoeff());
    Eigen::MatrixXd dspec(n, n);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
          acc -= sd.eigenvalues[i] * std::exp(-sd.eigenvalues[i] * t) *
                 sd.eigenvectors(x, i) * sd.eigenvectors(y, i);
        dspec(x, y) = acc;
      }
    const double dscale = std::max(dspec.cwiseAbs().maxCoeff(), 1e-300);
    for (int x = 0; x < n; ++x) {
      Eigen::VectorXd row = p.row(x);
      for (int y = 0; y < n; ++y) {
        const double fd = (sg.kernel(t + h, x, y) - sg.kernel(t - h, x, y)) / (2.0 * h);
        heat_res = std::max(heat_res, std::abs(fd - dspec(x, y)) / dscale);
        heat_res = std::max(heat_res, std::abs(laplacian_at(g, row, y) - dspec(x, y)) / dscale);
      }
    }

    law = std::max(law,
                   (sg.apply(t, sg.apply(t, f)) - sg.apply(2.0 * t, f)).cwiseAbs().maxCoeff());
    comm = std::max(comm, (laplacian(g, sg.apply(t, f)) - sg.apply(t, laplacian(g, f)))
                              .cwiseAbs().maxCoeff());
    expm_gap = std::max(expm_gap, (sg.apply(t, f) - expm_apply(g, t, f)).cwiseAbs().maxCoeff());
  }

  double sqrt_sup = 0.0;
  for (double t : t_grid) sqrt_sup = std::max(sqrt_sup, sqrt_ratio_sup(g, sg.apply(t, f)));

  auto check = [](const char* name, double value, double threshold, bool ok) {
    return json{{"name", name}, {"value", value}, {"threshold", threshold}, {"pass", ok}};
  };
  json checks = json::array();
  checks.push_back(check("kernel_symmetry", sym, 1e-10, sym <= 1e-10));
  checks.push_back(check("kernel_positivity_min", pos, -1e-12, pos >= -1e-12));
  checks.push_back(check("row_sum_deviation", row_dev, 1e-10, row_dev <= 1e-10));
  checks.push_back(check("chapman_kolmogorov", ck, 1e-9, ck <= 1e-9));
  checks.push_back(check("heat_equation_residual", heat_res, 1e-6, heat_res <= 1e-6));
  checks.push_back(check("semigroup_law", law, 1e-9, law <= 1e-9));
  checks.push_back(check("laplacian_commutation", comm, 1e-9, comm <= 1e-9));
  checks.push_back(check("expm_agreement", expm_gap, 1e-9, expm_gap <= 1e-9));
  checks.push_back(check("sqrt_ratio_sup_finite", sqrt_sup, 0.0, std::isfinite(sqrt_sup)));

  bool all_pass = true;
  for (const auto& row : checks) all_pass = all_pass && row.at("pass").get<bool>();
  emit(c, dump_json17(json{{"schema", 1}, {"checks", checks}, {"pass", all_pass}}));
  return all_pass ? 0 : 2;
}

struct Lemma32Args {
  std::string graph_path, field_path;
  double t = 1.0;
  std::string s_list = "0,0.25,0.5";
  std::string vertex;
};

int run_verify_lemma32(const Lemma32Args& a, const CommonOpts& c) {
  WeightedGraph g = load_graph(a.graph_path);
  ScalarField f = load_field(a.field_path);
  HeatSemigroup sg(g);
  std::vector<Lemma32Row> rows;
  const double worst = lemma32_derivative_check(sg, f, a.t, split_doubles(a.s_list, ','),
                                                g.index_of(a.vertex), &rows);
  json out_rows = json::array();
  for (const auto& r : rows)
    out_rows.push_back(json{{"s", r.s},
                            {"err_sq", r.err_sq},
                            {"err_gamma", r.err_gamma},
                            {"err_sqrt", r.err_sqrt}});
  emit(c, dump_json17(json{{"schema", 1},
                           {"vertex", a.vertex},
                           {"t", a.t},
                           {"rows", out_rows},
                           {"max_rel_err", worst}}));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curvature-dimension analysis on weighted graphs"};
  app.require_subcommand(1);

  CommonOpts common;

  // generate
  auto* gen = app.add_subcommand("generate", "Emit a graph from a named family");
  std::string gen_family;
  GenerateParams gen_params;
  gen->add_option("family", gen_family, "path|cycle|complete|star|hypercube|lattice_ball")
      ->required();
  gen->add_option("--n", gen_params.n, "Vertex count (star: leaf count)");
  gen->add_option("--dim", gen_params.dim, "Dimension (hypercube, lattice_ball)");
  gen->add_option("--radius", gen_params.radius, "Radius (lattice_ball)");
  gen->add_option("--omega", gen_params.omega, "Uniform edge weight (default 1)");
  gen->add_option("--mu", gen_params.mu, "Uniform vertex measure (default 1)");
  add_output_opts(gen, common, false);

  // info
  auto* info = app.add_subcommand("info", "Validate a graph file and print its stats");
  std::string info_path;
  info->add_option("graph", info_path, "Graph JSON path")->required();
  add_output_opts(info, common, false);

  // curvature cd / cde
  auto* curv = app.add_subcommand("curvature", "Optimal curvature constants");
  curv->require_subcommand(1);
  CurvatureArgs curv_args;
  auto add_curv_common = [&](CLI::App* cmd) {
    cmd->add_option("--graph", curv_args.graph_path, "Graph JSON path")->required();
    cmd->add_option("--dim", curv_args.dim, "Dimension n > 0 or 'inf'");
    cmd->add_option("--vertex", curv_args.vertex, "Single vertex id");
    cmd->add_flag("--all", curv_args.all, "Every vertex");
    add_output_opts(cmd, common);
  };
  auto* cd = curv->add_subcommand("cd", "Certified CD(n,K) constants (eigen solver)");
  add_curv_common(cd);
  auto* cde = curv->add_subcommand("cde", "Heuristic CDE'(n,K) upper bounds");
  add_curv_common(cde);
  cde->add_option("--starts", curv_args.cde.starts, "Multi-start count");
  cde->add_option("--max-iter", curv_args.cde.max_iter, "Iteration cap per start");
  cde->add_option("--tol", curv_args.cde.tol, "Gradient-norm stopping tolerance");

  // heat kernel / apply
  auto* heat = app.add_subcommand("heat", "Heat kernels and semigroup application");
  heat->require_subcommand(1);
  HeatKernelArgs hk;
  auto* kernel = heat->add_subcommand("kernel", "Kernel values p_t(x, y)");
  kernel->add_option("--graph", hk.graph_path, "Graph JSON path")->required();
  kernel->add_option("--t", hk.t_list, "Comma-separated times");
  kernel->add_option("--t-range", hk.t_range, "start:stop:count geometric grid");
  kernel->add_option("--x", hk.x, "Source vertex id")->required();
  kernel->add_option("--y", hk.y, "Target vertex id")->required();
  kernel->add_option("--ball", hk.ball_spec, "Dirichlet subset center:radius");
  kernel->add_option("--exhaust", hk.exhaust_spec,
                     "Exhaustion center:r0:r1[:tol] with convergence diagnostics");
  add_output_opts(kernel, common);

  HeatApplyArgs ha;
  auto* apply = heat->add_subcommand("apply", "P_t f for a scalar field f");
  apply->add_option("--graph", ha.graph_path, "Graph JSON path")->required();
  apply->add_option("--field", ha.field_path, "Field JSON path")->required();
  apply->add_option("--t", ha.t, "Time >= 0")->required();
  apply->add_option("--ball", ha.ball_spec, "Dirichlet subset center:radius");
  add_output_opts(apply, common, false);

  // verify thm31 / thm32 / semigroup / lemma32
  auto* verify = app.add_subcommand("verify", "Numerical verification suites");
  verify->require_subcommand(1);
  VerifyArgs va;
  auto add_verify_common = [&](CLI::App* cmd, bool with_dim) {
    cmd->add_option("--graph", va.graph_path, "Graph JSON path")->required();
    if (with_dim) cmd->add_option("--dim", va.dim, "Dimension n > 0 or 'inf'");
    cmd->add_option("--kappa", va.kappa,
                    "Curvature lower bound, or 'auto' for the solver-certified value");
    cmd->add_option("--t", va.t_list, "Comma-separated times");
    cmd->add_option("--t-range", va.t_range, "start:stop:count geometric grid");
    cmd->add_option("--field", va.field_path, "Field JSON path");
    cmd->add_option("--random-fields", va.random_fields,
                    "Verify this many seeded random positive fields");
    cmd->add_option("--vertices", va.vertices, "all (default) or comma-separated ids");
    add_output_opts(cmd, common);
  };
  auto* thm31 = verify->add_subcommand("thm31", "Gradient/Poincare equivalence margins");
  add_verify_common(thm31, true);
  auto* thm32 = verify->add_subcommand("thm32", "CDE' gradient bound margins");
  add_verify_common(thm32, false);

  SemigroupArgs sa;
  auto* semi = verify->add_subcommand("semigroup", "Heat kernel and semigroup identities");
  semi->add_option("--graph", sa.graph_path, "Graph JSON path")->required();
  semi->add_option("--t", sa.t_list, "Comma-separated times");
  semi->add_option("--t-range", sa.t_range, "start:stop:count geometric grid");
  add_output_opts(semi, common, false);

  Lemma32Args la;
  auto* lem = verify->add_subcommand("lemma32", "Derivative identities of the functionals");
  lem->add_option("--graph", la.graph_path, "Graph JSON path")->required();
  lem->add_option("--field", la.field_path, "Field JSON path")->required();
  lem->add_option("--t", la.t, "Terminal time t > 0");
  lem->add_option("--s", la.s_list, "Comma-separated s grid in [0, t)");
  lem->add_option("--vertex", la.vertex, "Vertex id")->required();
  add_output_opts(lem, common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) return run_generate(gen_family, gen_params, common);
    if (info->parsed()) return run_info(info_path, common);
    if (cd->parsed()) return run_curvature(curv_args, false, common);
    if (cde->parsed()) return run_curvature(curv_args, true, common);
    if (kernel->parsed()) return run_heat_kernel(hk, common);
    if (apply->parsed()) return run_heat_apply(ha, common);
    if (thm31->parsed()) return run_verify_thm(va, false, common);
    if (thm32->parsed()) return run_verify_thm(va, true, common);
    if (semi->parsed()) return run_verify_semigroup(sa, common);
    if (lem->parsed()) return run_verify_lemma32(la, common);
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
