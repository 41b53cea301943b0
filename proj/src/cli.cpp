#include "gsbdlab/cli.hpp"

#include "gsbdlab/chainrule.hpp"
#include "gsbdlab/degiorgi.hpp"
#include "gsbdlab/energy.hpp"
#include "gsbdlab/griffith.hpp"
#include "gsbdlab/jointconvex.hpp"
#include "gsbdlab/lsc.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>

namespace gsbdlab {

namespace {

using Task = std::function<RunOutcome()>;

template <typename T>
T finished(ConfigReader& parent, const std::string& key, ConfigReader& child, T value) {
  child.finish();
  parent.adopt(key, child);
  return value;
}

Vec numbers_to_vec(const std::vector<double>& v) {
  Vec out(Eigen::Index(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(Eigen::Index(i)) = v[i];
  return out;
}

std::vector<double> vec_to_numbers(const VecRef& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Json condition_table(const ConditionReport& rep) {
  Json rows = Json::array();
  for (const auto& c : rep.results) {
    rows.push_back({{"condition", std::string(to_string(c.condition))},
                    {"passed", c.passed},
                    {"witness", c.witness},
                    {"bound", c.bound},
                    {"potential_gap", c.potential_gap},
                    {"detail", c.detail}});
  }
  return {{"field", rep.field}, {"restricted_validity", rep.restricted_validity}, {"results", rows}};
}

void append_condition_rows(const ConditionReport& rep, double member, std::vector<std::vector<double>>& rows) {
  for (const auto& c : rep.results)
    rows.push_back({member, double(int(c.condition)), c.passed ? 1.0 : 0.0, c.witness, c.bound});
}

Json ledger_json(const EnergyLedger& l) {
  return {{"bulk", l.bulk}, {"surface", l.surface}, {"confinement", l.confinement}, {"boundary", l.boundary},
          {"total", l.total}};
}

// ---------------------------------------------------------------------------------------------------------------
// degiorgi

Task prepare_degiorgi(const RunConfig&, ConfigReader& r, const QuadratureSpec& quad) {
  const int dim = r.integer("dim", 1);
  if (dim != 1 && dim != 2) r.fail("dim", "must be 1 or 2");
  ConfigReader fr = r.child_or_empty("f");
  const std::string type = fr.text("type", "norm");
  ConfigReader nr = fr.child_or_empty("norm");
  const std::string norm_name = nr.text("name", "euclidean");
  const auto norm_params = nr.numbers("params", {});
  NormEval norm;
  try {
    norm = norms::by_name(norm_name, norm_params);
  } catch (const Error& e) {
    nr.fail("name", e.what());
  }
  nr.finish();
  fr.adopt("norm", nr);
  ConvexIntegrand f;
  if (type == "norm") {
    f = [norm](const VecRef&, const VecRef& xi) { return norm(xi); };
  } else if (type == "weighted_norm") {
    f = [norm](const VecRef& x, const VecRef& xi) { return (1.0 + x.squaredNorm()) * norm(xi); };
  } else if (type == "square") {
    f = [norm](const VecRef&, const VecRef& xi) {
      const double n = norm(xi);
      return n * n;
    };
  } else {
    fr.fail("type", "expected 'norm', 'weighted_norm' or 'square'");
  }
  fr.finish();
  r.adopt("f", fr);

  const auto x = r.numbers("x", std::vector<double>(std::size_t(dim), 0.5));
  if (int(x.size()) != dim) r.fail("x", "needs one coordinate per dimension");
  const bool homogeneous = r.boolean("homogeneous", type != "square");
  const int j_max = r.integer("j_max", 64);
  const double spacing = r.number("spacing", 1.0 / 16);
  const double radius = r.number("radius", 2.0);
  const auto kinks = r.numbers("kinks", {0.0});
  const double lo = r.number("xi_lo", -2.0), hi = r.number("xi_hi", 2.0);
  const int count = r.integer("xi_count", 100);
  const double tol = r.number("tolerance", 1e-2);
  const double below_tol = r.number("from_below_tolerance", 1e-8);
  if (j_max < 1) r.fail("j_max", "must be positive");
  if (!(spacing > 0) || !(radius > 0)) r.fail("spacing", "spacing and radius must be positive");
  if (count < 2 || !(lo < hi)) r.fail("xi_count", "need at least two grid points on a non-empty interval");

  return [=]() {
    const MollifierAlpha alpha = MollifierAlpha::canonical(dim);
    const auto indices = index_lattice(dim, j_max, spacing, radius);
    const Vec xv = numbers_to_vec(x);
    const DeGiorgiEnvelope env(f, alpha, indices, xv, quad, homogeneous, kinks);
    RunOutcome out;
    out.series_header = dim == 1 ? std::vector<std::string>{"xi", "f", "reconstruction", "gap"}
                                 : std::vector<std::string>{"xi_1", "xi_2", "f", "reconstruction", "gap"};
    double max_gap = 0.0, max_over = 0.0;
    auto visit = [&](const Vec& xi) {
      const double fv = f(xv, xi), rv = env(xi);
      max_gap = std::max(max_gap, fv - rv);
      max_over = std::max(max_over, rv - fv);
      std::vector<double> row = vec_to_numbers(xi);
      row.insert(row.end(), {fv, rv, fv - rv});
      out.series.push_back(row);
    };
    auto grid = [&](int i) { return lo + (hi - lo) * i / (count - 1); };
    if (dim == 1) {
      for (int i = 0; i < count; ++i) visit(vec1(grid(i)));
    } else {
      for (int i = 0; i < count; ++i)
        for (int k = 0; k < count; ++k) visit(vec2(grid(i), grid(k)));
    }
    const bool pass = max_gap <= tol && max_over <= below_tol;
    out.verdict = pass ? "PASS" : "FAIL";
    out.report = {{"indices", indices.size()}, {"max_gap", max_gap}, {"max_over_shoot", max_over},
                  {"tolerance", tol}, {"from_below_tolerance", below_tol}};
    return out;
  };
}

// ---------------------------------------------------------------------------------------------------------------
// certify

Task prepare_certify(const RunConfig& cfg, ConfigReader& r, const QuadratureSpec& quad) {
  ConfigReader ir = r.child_or_empty("integrand");
  const SurfaceIntegrand phi = finished(r, "integrand", ir, integrand_from_config(ir));
  SjcMode mode;
  try {
    mode = sjc_mode_from_string(r.text("mode", "NA"));
  } catch (const Error& e) {
    r.fail("mode", e.what());
  }
  CertifyOptions o;
  o.seed = cfg.seed;
  o.quad = quad;
  const int samples = r.integer("samples", 200);
  if (samples < 1) r.fail("samples", "must be positive");
  o.samples = std::size_t(samples);
  o.eps_target = r.number("eps_target", o.eps_target);
  o.h_grid = r.numbers("h_grid", o.h_grid);
  o.x_lo = r.number("x_lo", o.x_lo);
  o.x_hi = r.number("x_hi", o.x_hi);
  o.r_lo = r.number("r_lo", o.r_lo);
  o.r_hi = r.number("r_hi", o.r_hi);
  o.min_jump = r.number("min_jump", o.min_jump);
  o.anchor_levels = r.integer("anchor_levels", o.anchor_levels);
  o.validate_grid = r.integer("validate_grid", o.validate_grid);
  o.representative_members = r.integer("representative_members", o.representative_members);
  ConfigReader dg = r.child_or_empty("degiorgi");
  o.degiorgi.j_max = dg.integer("j_max", o.degiorgi.j_max);
  o.degiorgi.spacing = dg.number("spacing", o.degiorgi.spacing);
  o.degiorgi.radius = dg.number("radius", o.degiorgi.radius);
  const int k_min = dg.integer("sigma_k_min", 2), k_max = dg.integer("sigma_k_max", 6);
  if (k_min > k_max) dg.fail("sigma_k_min", "must not exceed sigma_k_max");
  o.degiorgi.sigmas = dyadic_sigmas(k_min, k_max);
  o.degiorgi.direction_level = dg.integer("direction_level", o.degiorgi.direction_level);
  o.degiorgi.kinks = dg.numbers("kinks", o.degiorgi.kinks);
  dg.finish();
  r.adopt("degiorgi", dg);

  return [=]() {
    const CertificationReport rep = certify_sjc(phi, mode, o);
    RunOutcome out;
    out.verdict = rep.verdict();
    Json tables = Json::array();
    out.series_header = {"member", "condition", "passed", "witness", "bound"};
    for (std::size_t i = 0; i < rep.condition_tables.size(); ++i) {
      tables.push_back(condition_table(rep.condition_tables[i]));
      append_condition_rows(rep.condition_tables[i], double(i), out.series);
    }
    out.report = {{"mode", std::string(to_string(rep.mode))},
                  {"tag", rep.tag},
                  {"family_size", rep.family_size},
                  {"over_shoot", rep.over_shoot},
                  {"under_shoot", rep.under_shoot},
                  {"condition_tables", tables},
                  {"triangle_gap", rep.triangle_gap},
                  {"triangle_relative_gap", rep.triangle_relative_gap},
                  {"triangle_witness", rep.triangle_witness},
                  {"swap_gap", rep.swap_gap},
                  {"b3_sampled", rep.b3_sampled},
                  {"lower_value_gap", rep.lower_value_gap},
                  {"amplitude_gap", rep.amplitude_gap},
                  {"certified", rep.certified},
                  {"failing_clause", rep.failing_clause}};
    if (rep.b3_declared) out.report["b3_declared"] = *rep.b3_declared;
    return out;
  };
}

// ---------------------------------------------------------------------------------------------------------------
// chainrule

AffineMap affine_from(ConfigReader& r, const std::string& a_key, const std::string& b_key,
                      const std::vector<double>& a_default, const std::vector<double>& b_default) {
  const auto A = r.numbers(a_key, a_default);
  const auto b = r.numbers(b_key, b_default);
  if (A.size() != 4) r.fail(a_key, "expected four entries (row-major 2x2)");
  if (b.size() != 2) r.fail(b_key, "expected two entries");
  AffineMap m;
  m.A << A[0], A[1], A[2], A[3];
  m.b = Vec2(b[0], b[1]);
  return m;
}

Field2D field2d_from(ConfigReader& r) {
  const auto rect = r.numbers("rect", {0.0, 1.0, 0.0, 1.0});
  if (rect.size() != 4) r.fail("rect", "expected [x_lo, x_hi, y_lo, y_hi]");
  const auto p = r.numbers("chord_start", {0.5, 0.0});
  const auto q = r.numbers("chord_end", {0.5, 1.0});
  const auto nu = r.numbers("normal", {1.0, 0.0});
  if (p.size() != 2 || q.size() != 2 || nu.size() != 2) r.fail("chord_start", "chord points and normal are 2-vectors");
  const AffineMap minus = affine_from(r, "minus_A", "minus_b", {1.0, 0.5, 0.0, 2.0}, {0.0, 0.0});
  const AffineMap plus = affine_from(r, "plus_A", "plus_b", {1.0, 0.5, 0.0, 2.0}, {1.0, -0.5});
  try {
    return Field2D(Rectangle{rect[0], rect[1], rect[2], rect[3]}, Vec2(p[0], p[1]), Vec2(q[0], q[1]),
                   Vec2(nu[0], nu[1]), minus, plus);
  } catch (const Error& e) {
    r.fail("rect", e.what());
  }
}

Json chain_ledger_json(const ChainRuleLedger& l) {
  return {{"lhs", l.lhs}, {"term_divx", l.term_divx}, {"term_e", l.term_e}, {"term_jump", l.term_jump},
          {"residual", l.residual}};
}

Task prepare_chainrule(const RunConfig&, ConfigReader& r, const QuadratureSpec& quad) {
  const int dim = r.integer("dim", 1);
  if (dim != 1 && dim != 2) r.fail("dim", "must be 1 or 2");
  const std::string field_name = r.text("field", dim == 1 ? "x_times_r" : "identity");
  VectorFieldNA g;
  try {
    g = fields::by_name(field_name, dim);
  } catch (const Error& e) {
    r.fail("field", e.what());
  }
  const double scale = r.number("test_scale", 1.0);
  const int levels = r.integer("levels", 4);
  if (levels < 1) r.fail("levels", "must be positive");
  const double tol = r.number("tolerance", 1e-10);
  ChainRuleOptions opts;
  opts.validate = r.boolean("validate", true);
  opts.validate_grid = r.integer("validate_grid", 8);

  auto finish = [tol](RunOutcome out, const ChainRuleLedger& l) {
    out.verdict = std::abs(l.residual) <= tol ? "PASS" : "FAIL";
    out.report["ledger"] = chain_ledger_json(l);
    Json rows = Json::array();
    for (const auto& row : out.series) rows.push_back({{"panels", row[0]}, {"residual", row[1]}});
    out.report["convergence"] = rows;
    out.report["tolerance"] = tol;
    return out;
  };

  if (dim == 1) {
    ConfigReader ur = r.child_or_empty("u");
    const PiecewiseFn1D u = finished(r, "u", ur, function_from_config(ur));
    return [=]() {
      const TestFunction phi = test_functions::bubble(u.x_lo(), u.x_hi(), scale);
      const ChainRuleLedger l = chain_rule_ledger(g, u, phi, quad, opts);
      RunOutcome out;
      out.series_header = {"panels", "residual"};
      if (levels >= 3) {
        ChainRuleOptions later = opts;
        for (const auto& row : residual_convergence(g, u, phi, levels, quad, later))
          out.series.push_back({double(row.panels), row.residual});
      } else {
        out.series.push_back({double(quad.n_panels), std::abs(l.residual)});
      }
      return finish(out, l);
    };
  }

  ConfigReader ur = r.child_or_empty("u");
  const Field2D u = finished(r, "u", ur, field2d_from(ur));
  return [=]() {
    const TestFunction phi = test_functions::bubble(u.rectangle(), scale);
    const ChainRuleLedger l = chain_rule_ledger(g, u, phi, quad, opts);
    RunOutcome out;
    out.series_header = {"panels", "residual"};
    QuadratureSpec q = quad;
    ChainRuleOptions later = opts;
    for (int k = 0; k < levels; ++k) {
      const ChainRuleLedger lk = chain_rule_ledger(g, u, phi, q, later);
      later.validate = false;
      out.series.push_back({double(q.n_panels), std::abs(lk.residual)});
      q.n_panels *= 2;
    }
    std::vector<Vec2> samples;
    const Rectangle& rect = u.rectangle();
    for (double s : {0.2, 0.45, 0.7})
      for (double t : {0.15, 0.55, 0.85}) {
        const Vec2 y(rect.x_lo + s * (rect.x_hi - rect.x_lo), rect.y_lo + t * (rect.y_hi - rect.y_lo));
        if (std::abs(u.signed_distance(y)) > 1e-9) samples.push_back(y);
      }
    out.report["trace_discrepancy"] = trace_identity_check(g, u, samples);
    return finish(out, l);
  };
}

// ---------------------------------------------------------------------------------------------------------------
// lsc

Json lsc_json(const LscReport& rep) {
  return {{"n", rep.n},
          {"values", rep.values},
          {"limit_value", rep.limit_value},
          {"liminf_estimate", rep.liminf_estimate},
          {"gap", rep.gap},
          {"bound_C", rep.bound_C},
          {"bound_sup", rep.bound_sup},
          {"kyfan_final", rep.kyfan_final},
          {"kyfan_half", rep.kyfan_half},
          {"verdict", std::string(to_string(rep.verdict))}};
}

Task prepare_lsc(const RunConfig&, ConfigReader& r, const QuadratureSpec& quad) {
  ConfigReader ir = r.child_or_empty("integrand");
  const SurfaceIntegrand phi = finished(r, "integrand", ir, integrand_from_config(ir));
  ConfigReader rr = r.child_or_empty("recipe");
  const SequenceRecipe recipe = finished(r, "recipe", rr, recipe_from_config(rr));
  std::optional<PiecewiseFn1D> limit;
  if (r.has("limit")) {
    ConfigReader lr = r.child("limit");
    limit = finished(r, "limit", lr, function_from_config(lr));
  }
  LscOptions opts;
  opts.tau = r.number("tau", 1e-8);
  opts.quad = quad;

  ConfigReader sr = r.child_or_empty("splitting");
  const bool split = sr.boolean("enabled", false);
  std::optional<PiecewiseFn1D> a;
  std::vector<double> h_grid;
  if (split) {
    ConfigReader ar = sr.child_or_empty("amplitude");
    const Amplitude amp = finished(sr, "amplitude", ar, amplitude_from_config(ar, "piecewise_constant"));
    if (!amp.piecewise_function()) sr.fail("amplitude", "the splitting suite needs a piecewise amplitude");
    a = *amp.piecewise_function();
    h_grid = sr.numbers("h_grid", {2.0, 8.0});
  }
  sr.finish();
  r.adopt("splitting", sr);

  return [=]() {
    const PiecewiseFn1D u = limit.value_or(recipe.base);
    const LscReport rep = check_liminf(phi, recipe, u, opts);
    RunOutcome out;
    out.verdict = std::string(to_string(rep.verdict));
    out.report = lsc_json(rep);
    out.series_header = {"n", "F"};
    for (std::size_t i = 0; i < rep.n.size(); ++i) out.series.push_back({double(rep.n[i]), rep.values[i]});
    if (split) {
      SequenceRecipe rs = recipe;
      rs.base = u;
      const SplittingSuiteReport suite = splitting_lsc_suite(*a, phi, {rs}, h_grid, opts);
      Json rows = Json::array();
      for (const auto& row : suite.rows)
        rows.push_back({{"h", row.h}, {"limit_value", row.limit_value},
                        {"verdict", std::string(to_string(row.verdict))}});
      out.report["splitting"] = {{"rows", rows},
                                 {"full_limit_value", suite.full.front().limit_value},
                                 {"monotone", suite.monotone},
                                 {"all_hold", suite.all_hold},
                                 {"limit_gap", suite.limit_gap}};
      if (out.verdict == "HOLDS" && !suite.all_hold) out.verdict = "VIOLATED";
      if (out.verdict == "HOLDS" && !suite.monotone) out.verdict = "FAIL";
    }
    return out;
  };
}

// ---------------------------------------------------------------------------------------------------------------
// minimize

Task prepare_minimize(const RunConfig&, ConfigReader& r, const QuadratureSpec& quad) {
  ConfigReader mr = r.child_or_empty("model");
  const DiscreteModel model = finished(r, "model", mr, model_from_config(mr, quad));
  const bool oracle = r.boolean("oracle", false);
  const int levels = r.integer("refinement_levels", 0);
  if (levels == 1 || levels < 0) r.fail("refinement_levels", "use 0 (off) or at least 2");
  const double tol = r.number("tolerance", 1e-10);

  return [=]() {
    const MinimizerResult res = minimize_dp(model);
    RunOutcome out;
    bool pass = true;
    const PiecewiseFn1D u = reconstruct(model, res);
    const EnergyLedger again = eval_energy(model.energy, u, model.quad);
    const double recon_gap = std::abs(again.total - res.ledger.total);
    pass = pass && recon_gap <= tol;
    if (!res.degenerate_surface) pass = pass && res.griffith_bound <= res.ledger.total + tol;
    out.report = {{"ledger", ledger_json(res.ledger)},
                  {"jump_nodes", res.jump_nodes},
                  {"jump_count", res.jump_nodes.size()},
                  {"griffith_bound", res.griffith_bound},
                  {"compactness_quantity", res.compactness_quantity},
                  {"degenerate_surface", res.degenerate_surface},
                  {"reconstruction_gap", recon_gap},
                  {"start_values", res.start_values(model)},
                  {"end_values", res.end_values(model)}};
    if (oracle) {
      const MinimizerResult bf = brute_force_oracle(model);
      const bool same = bf.ledger.total == res.ledger.total;
      pass = pass && same;
      out.report["oracle"] = {{"total", bf.ledger.total}, {"visited", bf.visited}, {"matches", same}};
    }
    if (levels >= 2) {
      const RefinementReport ref = refinement_study(model, levels);
      pass = pass && ref.non_increasing && ref.bound_holds;
      out.series_header = {"N", "V", "bulk", "surface", "confinement", "boundary", "total", "bound_2_1"};
      for (const auto& row : ref.rows)
        out.series.push_back({double(row.N), double(row.V), row.ledger.bulk, row.ledger.surface,
                              row.ledger.confinement, row.ledger.boundary, row.ledger.total, row.bound_2_1});
      out.report["refinement"] = {{"M", ref.M}, {"non_increasing", ref.non_increasing},
                                  {"bound_holds", ref.bound_holds}};
    } else {
      out.series_header = {"element", "x_left", "x_right", "u_start", "u_end"};
      const auto s = res.start_values(model), e = res.end_values(model);
      for (int i = 0; i < model.N; ++i)
        out.series.push_back({double(i), model.node(i), model.node(i + 1), s[std::size_t(i)], e[std::size_t(i)]});
    }
    out.verdict = pass ? "PASS" : "FAIL";
    return out;
  };
}

// ---------------------------------------------------------------------------------------------------------------
// validate

Task prepare_validate(const RunConfig&, ConfigReader& r, const QuadratureSpec&) {
  const int dim = r.integer("dim", 1);
  if (dim != 1 && dim != 2) r.fail("dim", "must be 1 or 2");
  const std::string name = r.text("field", dim == 1 ? "sin_tanh" : "skew_shear");
  VectorFieldNA g;
  try {
    g = fields::by_name(name, dim);
  } catch (const Error& e) {
    r.fail("field", e.what());
  }
  const double x_lo = r.number("x_lo", 0.0), x_hi = r.number("x_hi", 1.0);
  const double r_lo = r.number("r_lo", -2.0), r_hi = r.number("r_hi", 2.0);
  const int grid = r.integer("grid", 8);
  if (grid < 8) r.fail("grid", "needs at least 8 points per axis");
  ConfigReader tr = r.child_or_empty("tolerances");
  ValidationTolerances tol;
  tol.grad = tr.number("grad", tol.grad);
  tol.fd_step = tr.number("fd_step", tol.fd_step);
  tol.sym = tr.number("sym", tol.sym);
  tol.lip = tr.number("lip", tol.lip);
  tr.finish();
  r.adopt("tolerances", tr);
  Mat2 A = Mat2::Zero();
  if (dim == 2) {
    const auto a = r.numbers("trace_gradient", {0.0, -1.0, 1.0, 0.0});
    if (a.size() != 4) r.fail("trace_gradient", "expected four entries (row-major 2x2)");
    A << a[0], a[1], a[2], a[3];
  }

  return [=]() {
    const SamplingBox box = SamplingBox::cube(dim, x_lo, x_hi, r_lo, r_hi);
    const ConditionReport rep = validate_conditions(g, box, grid, grid, tol);
    RunOutcome out;
    bool pass = rep.all_passed();
    out.report = {{"conditions", condition_table(rep)}};
    out.series_header = {"member", "condition", "passed", "witness", "bound"};
    append_condition_rows(rep, 0.0, out.series);
    if (dim == 2) {
      // u(y) = A y on the unit square; both sides carry the same map so there is no jump.
      const AffineMap m{A, Vec2::Zero()};
      const Field2D u(Rectangle{}, Vec2(0.5, 0.0), Vec2(0.5, 1.0), Vec2(1.0, 0.0), m, m);
      std::vector<Vec2> samples;
      for (double s : {0.2, 0.4, 0.6, 0.8})
        for (double t : {0.2, 0.4, 0.6, 0.8}) samples.push_back(Vec2(s, t));
      const double d = trace_identity_check(g, u, samples);
      out.report["trace_discrepancy"] = d;
      pass = pass && d <= 1e-10;
    }
    out.verdict = pass ? "PASS" : "FAIL";
    return out;
  };
}

Task prepare(const RunConfig& cfg, ConfigReader& r) {
  const QuadratureSpec& q = cfg.quad;
  if (cfg.subcommand == "degiorgi") return prepare_degiorgi(cfg, r, q);
  if (cfg.subcommand == "certify") return prepare_certify(cfg, r, q);
  if (cfg.subcommand == "chainrule") return prepare_chainrule(cfg, r, q);
  if (cfg.subcommand == "lsc") return prepare_lsc(cfg, r, q);
  if (cfg.subcommand == "minimize") return prepare_minimize(cfg, r, q);
  if (cfg.subcommand == "validate") return prepare_validate(cfg, r, q);
  throw Error(ErrorKind::ConfigError, "unknown subcommand '" + cfg.subcommand + "'");
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::ConfigError, "cannot write '" + path.string() + "'");
  f << text;
}

}  // namespace

Json normalize_subcommand(const RunConfig& cfg) {
  ConfigReader r(cfg.body, cfg.subcommand);
  prepare(cfg, r);
  r.finish();
  return r.normalized();
}

int exit_code_for(const std::string& verdict, bool expect_violation) {
  const bool good = verdict == "PASS" || verdict == "HOLDS";
  return good != expect_violation ? 0 : 2;
}

RunOutcome execute(const RunConfig& cfg) {
  ConfigReader r(cfg.body, cfg.subcommand);
  const Task task = prepare(cfg, r);
  r.finish();
  RunOutcome out = task();
  out.exit_code = exit_code_for(out.verdict, cfg.expect_violation);
  Json result = std::move(out.report);
  out.report = {{"subcommand", cfg.subcommand},
                {"verdict", out.verdict},
                {"exit_code", out.exit_code},
                {"expect_violation", cfg.expect_violation},
                {"config", cfg.normalized},
                {"result", result}};
  return out;
}

int run(const RunConfig& cfg, std::ostream& log) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::absolute(cfg.out_dir);
  try {
    fs::create_directories(dir);
  } catch (const fs::filesystem_error& e) {
    log << "ConfigError: cannot create output directory '" << dir.string() << "': " << e.what() << "\n";
    return 1;
  }
  try {
    const RunOutcome out = execute(cfg);
    write_file(dir / "report.json", render_json(out.report));
    write_file(dir / "series.csv", render_csv(out.series_header, out.series));
    if (cfg.verbose) log << cfg.subcommand << ": " << out.verdict << " (exit " << out.exit_code << ")\n";
    return out.exit_code;
  } catch (const Error& e) {
    log << e.what() << "\n";
    const Json report = {{"subcommand", cfg.subcommand},
                         {"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}},
                         {"exit_code", 1}};
    try {
      write_file(dir / "report.json", render_json(report));
    } catch (const Error&) {
    }
    return 1;
  }
}

}  // namespace gsbdlab
