// End-to-end acceptance: drives the gsbdlab binary on fixed configs and prints one PASS/FAIL line per criterion.
// Every run is executed twice into separate directories; the last criterion compares the two byte for byte.
//
//   acceptance <path-to-gsbdlab> <run-dir>

#include <json.hpp>
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

fs::path g_cli;
fs::path g_root;
std::vector<std::string> g_nondeterministic;
int g_runs = 0;

struct Run {
  int exit_code = -1;
  Json report;
  double seconds = 0.0;  // first execution only
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string shell_quote(const fs::path& p) { return "'" + p.string() + "'"; }

int exec(const std::string& sc, const fs::path& cfg, const fs::path& out) {
  const std::string cmd = shell_quote(g_cli) + " " + sc + " --config " + shell_quote(cfg) + " --out " + shell_quote(out) +
                          " 2>" + shell_quote(out.string() + ".log");
  const int status = std::system(cmd.c_str());
  return status == -1 ? -1 : WEXITSTATUS(status);
}

Run run(const std::string& name, const std::string& sc, const Json& cfg) {
  const fs::path dir = g_root / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path cfg_path = dir / "config.json";
  std::ofstream(cfg_path) << cfg.dump(2) << "\n";

  Run r;
  const auto t0 = std::chrono::steady_clock::now();
  r.exit_code = exec(sc, cfg_path, dir / "a");
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const int again = exec(sc, cfg_path, dir / "b");
  ++g_runs;

  bool same = again == r.exit_code;
  for (const char* f : {"report.json", "series.csv"}) {
    const bool ea = fs::exists(dir / "a" / f), eb = fs::exists(dir / "b" / f);
    same = same && ea == eb && (!ea || slurp(dir / "a" / f) == slurp(dir / "b" / f));
  }
  if (!same) g_nondeterministic.push_back(name);

  try {
    r.report = Json::parse(slurp(dir / "a" / "report.json"));
  } catch (const Json::exception&) {
    r.report = Json::object();
  }
  return r;
}

Json config(const std::string& sc, Json block) {
  Json c = {{"subcommand", sc}, {"quadrature", Json::object()}};
  if (!block.is_null()) c[sc] = std::move(block);
  return c;
}

double num(const Json& j, std::initializer_list<const char*> path) {
  const Json* p = &j;
  for (const char* k : path) {
    if (!p->is_object() || !p->contains(k)) return NAN;
    p = &(*p)[k];
  }
  return p->is_number() ? p->get<double>() : NAN;
}

struct Criterion {
  std::string name;
  bool ok = true;
  double seconds = 0.0;
  std::vector<std::string> notes;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
  void add(const Run& r) { seconds += r.seconds; }
};

int g_failed = 0;

void report(const Criterion& c, double limit_s) {
  Criterion out = c;
  if (limit_s > 0) out.require(c.seconds <= limit_s, "runtime " + std::to_string(c.seconds) + " s over budget");
  std::printf("%s  %-28s (%.2f s)\n", out.ok ? "PASS" : "FAIL", out.name.c_str(), out.seconds);
  for (const auto& n : out.notes) std::printf("      %s\n", n.c_str());
  if (!out.ok) ++g_failed;
}

// ---------------------------------------------------------------------------------------------------------------

void chain_rule() {
  Criterion c{"chain rule identity"};
  const double tol = 1e-10;
  auto residuals_ok = [&](const Run& r, const std::string& tag) {
    c.add(r);
    c.require(r.exit_code == 0 && r.report.value("verdict", "") == "PASS", tag + ": verdict");
    const Json& l = r.report["result"]["ledger"];
    c.require(std::abs(num(l, {"residual"})) <= tol, tag + ": residual");
    for (const auto& row : r.report["result"]["convergence"])
      c.require(row["residual"].get<double>() <= tol, tag + ": residual under refinement");
  };

  const Run step = run("chain_step", "chainrule", config("chainrule", {{"dim", 1}, {"field", "x_times_r"}}));
  residuals_ok(step, "1D step");
  const Json& l = step.report["result"]["ledger"];
  c.require(std::abs(num(l, {"lhs"}) - 5.0 / 24) <= tol, "1D step: lhs");
  c.require(std::abs(num(l, {"term_jump"}) - 0.125) <= tol, "1D step: jump term");

  const Json affine = {{"dim", 2},
                       {"field", "identity"},
                       {"u", {{"minus_A", {0, 0, 0, 0}}, {"minus_b", {0, 0}}, {"plus_A", {0, 0, 0, 0}}, {"plus_b", {1, 0}}}}};
  const Run id = run("chain_affine", "chainrule", config("chainrule", affine));
  residuals_ok(id, "2D affine");
  c.require(std::abs(num(id.report["result"]["ledger"], {"term_jump"}) - 1.0 / 24) <= tol, "2D affine: jump term");

  Json smooth = config("chainrule", {{"dim", 1}, {"field", "sin_tanh"}, {"levels", 6}});
  smooth["quadrature"] = {{"n_gauss", 2}, {"n_panels", 2}};
  const Run st = run("chain_smooth", "chainrule", smooth);
  c.add(st);
  const Json& rows = st.report["result"]["convergence"];
  c.require(rows.size() == 6, "smooth: six levels");
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const double prev = rows[k - 1]["residual"].get<double>(), cur = rows[k]["residual"].get<double>();
    if (prev > 1e-12) c.require(cur <= 0.25 * prev, "smooth: ratio at level " + std::to_string(k));
  }
  c.require(!rows.empty() && rows.back()["residual"].get<double>() <= 1e-10, "smooth: final residual");
  report(c, 5.0);
}

void degiorgi() {
  Criterion c{"De Giorgi reconstruction"};
  const Run r = run("degiorgi_abs", "degiorgi",
                    config("degiorgi", {{"dim", 1}, {"f", {{"type", "norm"}}}, {"j_max", 64}, {"xi_count", 100}}));
  c.add(r);
  c.require(r.exit_code == 0 && r.report.value("verdict", "") == "PASS", "verdict");
  c.require(num(r.report["result"], {"max_gap"}) <= 1e-2, "gap above 1e-2");
  c.require(num(r.report["result"], {"max_over_shoot"}) <= 1e-8, "over-shoot above 1e-8");

  const Run w = run("degiorgi_weighted", "degiorgi",
                    config("degiorgi", {{"dim", 1}, {"f", {{"type", "weighted_norm"}}}, {"x", {0.7}}}));
  c.add(w);
  c.require(w.exit_code == 0, "weighted norm: verdict");
  report(c, 30.0);
}

void representation() {
  Criterion c{"representation"};
  const Run r = run("representation", "certify",
                    config("certify", {{"integrand", {{"kind", "kappa_x_xi"}, {"weight", {{"type", "one_plus_x2"}}}}},
                                       {"samples", 200},
                                       {"h_grid", {1, 4, 16, 64, 256, 1000}}}));
  c.add(r);
  const Json& res = r.report["result"];
  c.require(r.exit_code == 0 && r.report.value("verdict", "") == "PASS", "certification");
  c.require(num(res, {"over_shoot"}) <= 1e-8, "over-shoot above 1e-8");
  c.require(num(res, {"under_shoot"}) <= 1e-2, "under-shoot above 1e-2");
  report(c, 60.0);
}

void lsc_suite() {
  Criterion c{"lsc suite"};
  struct Entry {
    std::string name;
    Json integrand;
    std::string mode = "NA";
  };
  const Json a_x = {{"type", "one_plus_x2"}};
  const Json a_1 = {{"type", "constant"}, {"value", 1}};
  const std::vector<Entry> catalog{
      {"model_x_r", {{"kind", "model_case"}, {"field", "x_times_r"}}},
      {"model_sin_tanh", {{"kind", "model_case"}, {"field", "sin_tanh"}}},
      {"gamma_linear", {{"kind", "amp_times_gamma"}, {"amplitude", a_x}, {"profile", {{"name", "linear"}}}}},
      {"gamma_capped", {{"kind", "amp_times_gamma"}, {"amplitude", a_1}, {"profile", {{"name", "capped"}}}}},
      {"gamma_sqrt", {{"kind", "amp_times_gamma"}, {"amplitude", a_x}, {"profile", {{"name", "sqrt"}}}}},
      {"gamma_arctan", {{"kind", "amp_times_gamma"}, {"amplitude", a_1}, {"profile", {{"name", "arctan"}, {"param", 2}}}}},
      {"convex_normal", {{"kind", "convex_normal_jump"}, {"amplitude", a_x}}},
      {"ortho_sup", {{"kind", "ortho_sup"}, {"amplitude", a_x}}},
      {"kappa_amp", {{"kind", "amp_times_kappa_xi"}, {"amplitude", a_x}}},
      {"kappa_x", {{"kind", "kappa_x_xi"}}},
      {"splitting", {{"kind", "splitting"}, {"amplitude", {{"type", "piecewise_constant"}}}}, "BV"},
  };
  const Json base = {{"type", "step"}, {"at", 0.5}, {"left", 0}, {"right", 1}};
  const std::vector<std::string> recipes{"jump_translation", "amplitude_vanishing", "jump_splitting",
                                         "piecewise_perturbation"};
  int holds = 0, total = 0;
  for (const auto& e : catalog) {
    const Run cert = run("lsc_cert_" + e.name, "certify",
                         config("certify", {{"integrand", e.integrand}, {"mode", e.mode}, {"samples", 60}}));
    c.add(cert);
    if (cert.exit_code != 0) {
      c.require(false, e.name + ": not certified (" + cert.report.value("verdict", "no report") + ")");
      continue;
    }
    for (const auto& kind : recipes) {
      const Run r = run("lsc_" + e.name + "_" + kind, "lsc",
                        config("lsc", {{"integrand", e.integrand}, {"recipe", {{"kind", kind}, {"base", base}}}}));
      c.add(r);
      ++total;
      if (r.exit_code == 0 && r.report.value("verdict", "") == "HOLDS") ++holds;
      else c.require(false, e.name + " x " + kind + ": " + r.report.value("verdict", "no report"));
    }
  }
  c.notes.insert(c.notes.begin(), std::to_string(holds) + "/" + std::to_string(total) + " certified pairs hold");

  Json sup = config("lsc", {{"integrand", {{"kind", "amp_times_gamma"}, {"profile", {{"name", "superadditive"}}}}},
                            {"recipe", {{"kind", "jump_splitting"}, {"base", {{"type", "step"}, {"right", 2}}}}}});
  sup["expect_violation"] = true;
  const Run v = run("lsc_superadditive", "lsc", sup);
  c.add(v);
  c.require(v.exit_code == 0 && v.report.value("verdict", "") == "VIOLATED", "superadditive: not VIOLATED");
  c.require(std::abs(num(v.report["result"], {"gap"}) - 1.0) <= 1e-12, "superadditive: gap is not 1");

  const Json split = {
      {"integrand", {{"kind", "amp_times_gamma"}, {"amplitude", a_1}}},
      {"recipe", {{"kind", "jump_translation"}, {"scale", 0.1}, {"base", {{"type", "step"}, {"at", 0.75}}}}},
      {"splitting", {{"enabled", true}, {"h_grid", {2, 8}}}}};
  const Run s = run("lsc_bv_splitting", "lsc", config("lsc", split));
  c.add(s);
  const Json& sr = s.report["result"]["splitting"];
  c.require(s.exit_code == 0, "splitting suite: " + s.report.value("verdict", "no report"));
  c.require(sr.is_object() && sr["rows"].size() == 2, "splitting suite: two rows");
  if (sr.is_object() && sr["rows"].size() == 2) {
    c.require(std::abs(num(sr["rows"][0], {"limit_value"}) - 1.5) <= 1e-12, "splitting suite: h = 2 value");
    c.require(std::abs(num(sr["rows"][1], {"limit_value"}) - 2.0) <= 1e-12, "splitting suite: h = 8 value");
    c.require(std::abs(num(sr, {"full_limit_value"}) - 2.0) <= 1e-12, "splitting suite: limit value");
    c.require(sr.value("monotone", false), "splitting suite: not monotone");
  }
  c.ok = c.ok && holds == total;
  if (c.ok) c.notes.clear();
  report(c, 60.0);
}

void griffith() {
  Criterion c{"griffith minimizer"};
  int matched = 0;
  for (int seed = 1; seed <= 20; ++seed) {
    const int N = 4 + seed % 3, V = 6 + seed % 3;
    const Run r = run("griffith_oracle_" + std::to_string(seed), "minimize",
                      config("minimize", {{"model", {{"kind", "random"}, {"seed", seed}, {"N", N}, {"V", V}}},
                                          {"oracle", true}}));
    c.add(r);
    if (r.exit_code == 0 && r.report["result"]["oracle"].value("matches", false)) ++matched;
    else c.require(false, "seed " + std::to_string(seed) + ": DP and oracle differ");
  }

  const Run elastic = run("griffith_pull_04", "minimize", config("minimize", {{"model", {{"delta", 0.4}}}}));
  const Run cracked = run("griffith_pull_06", "minimize", config("minimize", {{"model", {{"delta", 0.6}}}}));
  c.add(elastic);
  c.add(cracked);
  c.require(num(elastic.report["result"], {"jump_count"}) == 0, "delta 0.4: expected no jump");
  c.require(std::abs(num(elastic.report["result"], {"ledger", "total"}) - 0.16) <= 2e-2, "delta 0.4: total");
  c.require(num(cracked.report["result"], {"jump_count"}) == 1, "delta 0.6: expected one jump");
  c.require(std::abs(num(cracked.report["result"], {"ledger", "total"}) - 0.25) <= 2e-2, "delta 0.6: total");

  for (const auto& [name, model] : {std::pair<std::string, Json>{"pull", {{"delta", 0.6}, {"N", 4}, {"V", 8}}},
                                    std::pair<std::string, Json>{"random", {{"kind", "random"}, {"seed", 9}, {"N", 4}}}}) {
    const Run r = run("griffith_refine_" + name, "minimize",
                      config("minimize", {{"model", model}, {"refinement_levels", 4}}));
    c.add(r);
    const Json& ref = r.report["result"]["refinement"];
    c.require(r.exit_code == 0, name + " refinement: " + r.report.value("verdict", "no report"));
    c.require(ref.is_object() && ref.value("non_increasing", false), name + " refinement: energy increased");
    c.require(ref.is_object() && ref.value("bound_holds", false), name + " refinement: bound fails");
  }
  report(c, 120.0);
}

void validators() {
  Criterion c{"condition validators"};
  Json cfg = config("validate", {{"dim", 2}, {"field", "skew_shear"}});
  cfg["expect_violation"] = true;
  const Run r = run("validate_skew", "validate", cfg);
  c.add(r);
  c.require(r.exit_code == 0 && r.report.value("verdict", "") == "FAIL", "negative control did not fail");
  bool g6 = false;
  for (const auto& row : r.report["result"]["conditions"]["results"])
    if (row.value("condition", "") == "G6") {
      g6 = true;
      c.require(!row.value("passed", true), "G6 passed");
      c.require(std::abs(row.value("witness", NAN) - 1.0) <= 1e-12, "G6 witness is not 1");
    }
  c.require(g6, "no G6 row");
  c.require(std::abs(num(r.report["result"], {"trace_discrepancy"}) - 1.0) <= 1e-12, "trace discrepancy is not 1");

  const Run ok = run("validate_identity", "validate", config("validate", {{"dim", 2}, {"field", "identity"}}));
  c.add(ok);
  c.require(ok.exit_code == 0, "identity field does not validate");
  report(c, 0.0);
}

void determinism() {
  Criterion c{"determinism"};
  for (const auto& n : g_nondeterministic) c.require(false, n + ": runs differ");
  c.notes.insert(c.notes.begin(), std::to_string(g_runs) + " runs repeated");
  if (c.ok) c.notes.clear();
  report(c, 0.0);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: acceptance <gsbdlab> <run-dir>\n";
    return 1;
  }
  g_cli = fs::absolute(argv[1]);
  g_root = fs::absolute(argv[2]);
  fs::create_directories(g_root);

  chain_rule();
  degiorgi();
  representation();
  lsc_suite();
  griffith();
  validators();
  determinism();
  return g_failed == 0 ? 0 : 1;
}
