#include "gsbdlab/config.hpp"

#include "gsbdlab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gsbdlab {

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorKind::ConfigError, what); }

std::string type_name(const Json& j) { return j.type_name(); }

}  // namespace

ConfigReader::ConfigReader(const Json& node, std::string path) : node_(node), path_(std::move(path)) {
  if (!node_.is_object()) config_error("'" + (path_.empty() ? std::string("<root>") : path_) + "' must be an object");
}

std::string ConfigReader::key_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

void ConfigReader::fail(const std::string& key, const std::string& what) const {
  config_error("key '" + key_path(key) + "': " + what);
}

const Json& ConfigReader::raw(const std::string& key) const {
  if (!node_.contains(key)) fail(key, "missing required key");
  return node_.at(key);
}

double ConfigReader::number(const std::string& key) {
  const Json& v = raw(key);
  if (!v.is_number()) fail(key, "expected a number, got " + type_name(v));
  used_.insert(key);
  out_[key] = v.get<double>();
  return v.get<double>();
}

double ConfigReader::number(const std::string& key, double fallback) {
  if (!node_.contains(key)) {
    used_.insert(key);
    out_[key] = fallback;
    return fallback;
  }
  return number(key);
}

int ConfigReader::integer(const std::string& key, int fallback) {
  if (!node_.contains(key)) {
    used_.insert(key);
    out_[key] = fallback;
    return fallback;
  }
  const Json& v = node_.at(key);
  if (!v.is_number_integer()) fail(key, "expected an integer, got " + type_name(v));
  used_.insert(key);
  out_[key] = v.get<int>();
  return v.get<int>();
}

bool ConfigReader::boolean(const std::string& key, bool fallback) {
  used_.insert(key);
  if (!node_.contains(key)) {
    out_[key] = fallback;
    return fallback;
  }
  const Json& v = node_.at(key);
  if (!v.is_boolean()) fail(key, "expected true or false, got " + type_name(v));
  out_[key] = v.get<bool>();
  return v.get<bool>();
}

std::string ConfigReader::text(const std::string& key) {
  const Json& v = raw(key);
  if (!v.is_string()) fail(key, "expected a string, got " + type_name(v));
  used_.insert(key);
  out_[key] = v.get<std::string>();
  return v.get<std::string>();
}

std::string ConfigReader::text(const std::string& key, const std::string& fallback) {
  if (!node_.contains(key)) {
    used_.insert(key);
    out_[key] = fallback;
    return fallback;
  }
  return text(key);
}

std::vector<double> ConfigReader::numbers(const std::string& key) {
  const Json& v = raw(key);
  if (!v.is_array()) fail(key, "expected an array of numbers, got " + type_name(v));
  std::vector<double> out;
  for (const Json& e : v) {
    if (!e.is_number()) fail(key, "expected an array of numbers");
    out.push_back(e.get<double>());
  }
  used_.insert(key);
  out_[key] = out;
  return out;
}

std::vector<std::vector<double>> ConfigReader::matrix(const std::string& key) {
  const Json& v = raw(key);
  if (!v.is_array()) fail(key, "expected an array of number arrays, got " + type_name(v));
  std::vector<std::vector<double>> out;
  for (const Json& row : v) {
    if (!row.is_array()) fail(key, "expected an array of number arrays");
    out.emplace_back();
    for (const Json& e : row) {
      if (!e.is_number()) fail(key, "expected an array of number arrays");
      out.back().push_back(e.get<double>());
    }
  }
  used_.insert(key);
  out_[key] = out;
  return out;
}

std::vector<std::string> ConfigReader::texts(const std::string& key, const std::vector<std::string>& fallback) {
  used_.insert(key);
  if (!node_.contains(key)) {
    out_[key] = fallback;
    return fallback;
  }
  const Json& v = node_.at(key);
  if (!v.is_array()) fail(key, "expected an array of strings, got " + type_name(v));
  std::vector<std::string> out;
  for (const Json& e : v) {
    if (!e.is_string()) fail(key, "expected an array of strings");
    out.push_back(e.get<std::string>());
  }
  out_[key] = out;
  return out;
}

std::vector<double> ConfigReader::numbers(const std::string& key, const std::vector<double>& fallback) {
  if (!node_.contains(key)) {
    used_.insert(key);
    out_[key] = fallback;
    return fallback;
  }
  return numbers(key);
}

ConfigReader ConfigReader::child(const std::string& key) {
  const Json& v = raw(key);
  if (!v.is_object()) fail(key, "expected an object, got " + type_name(v));
  used_.insert(key);
  return ConfigReader(v, key_path(key));
}

ConfigReader ConfigReader::child_or_empty(const std::string& key) {
  used_.insert(key);
  if (!node_.contains(key)) return ConfigReader(Json::object(), key_path(key));
  return child(key);
}

std::vector<ConfigReader> ConfigReader::children(const std::string& key) {
  const Json& v = raw(key);
  if (!v.is_array()) fail(key, "expected an array of objects, got " + type_name(v));
  used_.insert(key);
  std::vector<ConfigReader> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.emplace_back(v[i], key_path(key) + "[" + std::to_string(i) + "]");
  return out;
}

void ConfigReader::adopt(const std::string& key, const ConfigReader& child) { out_[key] = child.normalized(); }

void ConfigReader::adopt(const std::string& key, const std::vector<ConfigReader>& list) {
  Json arr = Json::array();
  for (const auto& c : list) arr.push_back(c.normalized());
  out_[key] = arr;
}

void ConfigReader::finish() const {
  for (const auto& [key, value] : node_.items())
    if (!used_.count(key)) fail(key, "unknown key");
}

// ---------------------------------------------------------------------------------------------------------------
// Rendering

std::string format_double(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
  if (v == 0.0) return std::signbit(v) ? "-0" : "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void render(const Json& j, int depth, std::string& out) {
  const std::string pad(std::size_t(2 * (depth + 1)), ' ');
  const std::string close(std::size_t(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {  // std::map storage: keys already sorted
        out += pad + Json(it.key()).dump() + ": ";
        render(it.value(), depth + 1, out);
        out += i + 1 < j.size() ? ",\n" : "\n";
      }
      out += close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        out += pad;
        render(j[i], depth + 1, out);
        out += i + 1 < j.size() ? ",\n" : "\n";
      }
      out += close + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      // Non-finite values are not JSON numbers; emit them as strings.
      out += std::isfinite(v) ? format_double(v) : "\"" + format_double(v) + "\"";
      return;
    }
    default: out += j.dump(); return;
  }
}

}  // namespace

std::string render_json(const Json& j) {
  std::string out;
  render(j, 0, out);
  out += "\n";
  return out;
}

std::string render_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_double(row[i]);
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------------------------------------------
// Builders

PiecewiseFn1D function_from_config(ConfigReader& r) {
  const std::string type = r.text("type", "step");
  const double lo = r.number("x_lo", 0.0), hi = r.number("x_hi", 1.0);
  if (type == "step") {
    const double at = r.number("at", 0.5);
    const double left = r.number("left", 0.0), right = r.number("right", 1.0);
    return PiecewiseFn1D::step(lo, hi, at, left, right);
  }
  if (type == "constant") return PiecewiseFn1D::constant(lo, hi, r.number("value", 0.0));
  if (type == "affine") {
    const double offset = r.number("offset", 0.0);
    return PiecewiseFn1D::affine(lo, hi, offset, r.number("slope", 1.0));
  }
  if (type == "piecewise_constant") {
    const auto bps = r.numbers("breakpoints");
    return PiecewiseFn1D::piecewise_constant(lo, hi, bps, r.numbers("values"));
  }
  if (type == "piecewise") {
    // one coefficient list per subinterval, ascending powers of the global x
    const auto bps = r.numbers("breakpoints");
    std::vector<std::vector<Polynomial>> pieces;
    for (const auto& c : r.matrix("pieces")) {
      Vec coeffs(Eigen::Index(c.size()));
      for (std::size_t i = 0; i < c.size(); ++i) coeffs(Eigen::Index(i)) = c[i];
      pieces.push_back({Polynomial(coeffs)});
    }
    return PiecewiseFn1D(lo, hi, bps, pieces);
  }
  r.fail("type", "unknown function type '" + type + "'");
}

Amplitude amplitude_from_config(ConfigReader& r, const std::string& default_type) {
  const std::string type = r.text("type", default_type);
  if (type == "constant") return Amplitude::constant(r.number("value", 1.0));
  if (type == "one_plus_x2") {
    return Amplitude::smooth([](const VecRef& x) { return 1.0 + x.squaredNorm(); }, "one_plus_x2");
  }
  if (type == "piecewise_constant") {
    const double lo = r.number("x_lo", 0.0), hi = r.number("x_hi", 1.0);
    const auto bps = r.numbers("breakpoints", {0.5});
    const auto vals = r.numbers("values", {1.0, 2.0});
    try {
      return Amplitude::piecewise(PiecewiseFn1D::piecewise_constant(lo, hi, bps, vals));
    } catch (const Error& e) {
      r.fail("values", e.what());
    }
  }
  r.fail("type", "unknown amplitude type '" + type + "'");
}

JumpProfile profile_from_config(ConfigReader& r, const std::string& default_name) {
  const std::string name = r.text("name", default_name);
  const double param = r.number("param", 1.0);
  try {
    return profiles::by_name(name, param);
  } catch (const Error& e) {
    r.fail("name", e.what());
  }
}

namespace {

NormEval norm_from_config(ConfigReader& r) {
  const std::string name = r.text("name", "euclidean");
  const auto params = r.numbers("params", {});
  try {
    return norms::by_name(name, params);
  } catch (const Error& e) {
    r.fail("name", e.what());
  }
}

VectorFieldNA named_field(ConfigReader& r, const std::string& key, const std::string& fallback, int dim) {
  const std::string name = r.text(key, fallback);
  try {
    return fields::by_name(name, dim);
  } catch (const Error& e) {
    r.fail(key, e.what());
  }
}

}  // namespace

SurfaceIntegrand integrand_from_config(ConfigReader& r) {
  const std::string kind_name = r.text("kind", "amp_times_gamma");
  CatalogKind kind;
  try {
    kind = catalog_kind_from_tag(kind_name);
  } catch (const Error& e) {
    r.fail("kind", e.what());
  }
  CatalogParams p;
  p.dim = r.integer("dim", 1);
  if (p.dim != 1 && p.dim != 2) r.fail("dim", "must be 1 or 2");
  p.x_lo = r.number("x_lo", 0.0);
  p.x_hi = r.number("x_hi", 1.0);

  auto amplitude = [&] {
    ConfigReader c = r.child_or_empty("amplitude");
    p.amplitude = amplitude_from_config(c);
    c.finish();
    r.adopt("amplitude", c);
  };
  auto profile = [&](const std::string& fallback) {
    ConfigReader c = r.child_or_empty("profile");
    p.profile = profile_from_config(c, fallback);
    c.finish();
    r.adopt("profile", c);
  };

  switch (kind) {
    case CatalogKind::ModelCase: p.field = named_field(r, "field", "x_times_r", p.dim); break;
    case CatalogKind::Splitting: {
      amplitude();
      const std::string source = r.text("source", "profile");
      if (source == "profile") {
        profile("linear");
      } else if (source == "family") {
        for (const auto& name : r.texts("family", {"identity"})) {
          try {
            p.family.push_back(fields::by_name(name, p.dim));
          } catch (const Error& e) {
            r.fail("family", e.what());
          }
        }
      } else {
        r.fail("source", "expected 'profile' or 'family'");
      }
      break;
    }
    case CatalogKind::AmpTimesGamma:
      amplitude();
      profile("linear");
      break;
    case CatalogKind::ConvexNormalJump:
      amplitude();
      profile("linear");
      break;
    case CatalogKind::OrthoSup: {
      amplitude();
      ConfigReader c = r.child_or_empty("thetas");
      for (int k = 0; k < p.dim; ++k) {
        const std::string key = "theta_" + std::to_string(k);
        ConfigReader t = c.child_or_empty(key);
        p.thetas.push_back(profile_from_config(t, "capped"));
        t.finish();
        c.adopt(key, t);
      }
      c.finish();
      r.adopt("thetas", c);
      break;
    }
    case CatalogKind::AmpTimesKappaXi: {
      amplitude();
      ConfigReader c = r.child_or_empty("norm");
      p.norm = norm_from_config(c);
      c.finish();
      r.adopt("norm", c);
      break;
    }
    case CatalogKind::KappaXXi: {
      // kappa(x, xi) = w(x) |xi|_norm
      ConfigReader w = r.child_or_empty("weight");
      const Amplitude a = amplitude_from_config(w, "one_plus_x2");
      w.finish();
      r.adopt("weight", w);
      p.kappa_discontinuities = a.discontinuities();
      ConfigReader n = r.child_or_empty("norm");
      const NormEval k = norm_from_config(n);
      n.finish();
      r.adopt("norm", n);
      p.kappa = [a, k](const VecRef& x, const VecRef& xi) { return a(x) * k(xi); };
      break;
    }
  }
  try {
    return make_catalog_integrand(kind, p);
  } catch (const Error& e) {
    r.fail("kind", e.what());
  }
}

DiscreteModel model_from_config(ConfigReader& r, const QuadratureSpec& quad) {
  const std::string kind = r.text("kind", "pull");
  DiscreteModel m;
  try {
    if (kind == "pull") {
      const double delta = r.number("delta", 0.6);
      const double kappa0 = r.number("kappa0", 0.25);
      const int N = r.integer("N", 32), V = r.integer("V", 64);
      const double lo = r.number("u_min", -0.1), hi = r.number("u_max", 0.6);
      const double beta = r.number("beta", 1e4);
      const double psi = r.number("confinement_weight", 0.0);
      m = griffith_pull_model(delta, kappa0, N, V, lo, hi, beta);
      if (psi != 0.0) m.energy.psi = confinement::quadratic(psi);
    } else if (kind == "random") {
      const double seed = r.number("seed", 42);
      const int N = r.integer("N", 5), V = r.integer("V", 6);
      if (seed < 0 || seed != std::floor(seed)) r.fail("seed", "expected a non-negative integer");
      m = random_model(std::uint64_t(seed), N, V);
    } else {
      r.fail("kind", "expected 'pull' or 'random'");
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ConfigError) throw;
    r.fail("kind", e.what());
  }
  m.quad = quad;
  return m;
}

SequenceRecipe recipe_from_config(ConfigReader& r) {
  SequenceRecipe rec;
  try {
    rec.kind = recipe_kind_from_string(r.text("kind", "jump_translation"));
  } catch (const Error& e) {
    r.fail("kind", e.what());
  }
  ConfigReader b = r.child_or_empty("base");
  try {
    rec.base = function_from_config(b);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ConfigError) throw;
    r.fail("base", e.what());
  }
  b.finish();
  r.adopt("base", b);
  const int ji = r.integer("jump_index", 0);
  if (ji < 0) r.fail("jump_index", "must be non-negative");
  rec.jump_index = std::size_t(ji);
  rec.scale = r.number("scale", 1.0);
  rec.n_min = r.integer("n_min", 4);  // a unit-scale translation of a midpoint jump stays inside from n = 3 on
  rec.n_max = r.integer("n_max", 64);
  if (r.has("bound_C")) rec.bound_C = r.number("bound_C");
  rec.p = r.number("p", 2.0);
  return rec;
}

// ---------------------------------------------------------------------------------------------------------------
// Run configs

namespace {

bool known_subcommand(std::string_view s) {
  return std::find(std::begin(kSubcommands), std::end(kSubcommands), s) != std::end(kSubcommands);
}

}  // namespace

RunConfig parse_run_config(const Json& doc, const std::string& subcommand_hint) {
  ConfigReader root(doc, "");
  RunConfig cfg;
  std::string sc = subcommand_hint;
  if (root.has("subcommand")) {
    const std::string declared = root.text("subcommand");
    if (!sc.empty() && declared != sc)
      root.fail("subcommand", "config is for '" + declared + "' but '" + sc + "' was requested");
    sc = declared;
  } else {
    if (sc.empty()) root.fail("subcommand", "missing required key (or pass the subcommand on the command line)");
    root.text("subcommand", sc);
  }
  if (!known_subcommand(sc)) root.fail("subcommand", "unknown subcommand '" + sc + "'");
  cfg.subcommand = sc;

  ConfigReader q = root.child("quadrature");
  cfg.quad.n_gauss = q.integer("n_gauss", 8);
  cfg.quad.n_panels = q.integer("n_panels", 16);
  cfg.quad.levels = q.integer("levels", 3);
  q.finish();
  try {
    cfg.quad.validate();
  } catch (const Error& e) {
    root.fail("quadrature", e.what());
  }
  root.adopt("quadrature", q);

  const double seed = root.number("seed", 42);
  if (seed < 0 || seed != std::floor(seed) || seed > 9.007199254740992e15)
    root.fail("seed", "expected a non-negative integer");
  cfg.seed = std::uint64_t(seed);
  cfg.out_dir = root.text("output_dir", "gsbdlab_out");
  cfg.verbose = root.boolean("verbose", false);
  cfg.expect_violation = root.boolean("expect_violation", false);

  // The subcommand block is validated here so schema errors surface before any work starts.
  const Json block = root.has(sc) ? doc.at(sc) : Json::object();
  if (!block.is_object()) root.fail(sc, "expected an object");
  root.child_or_empty(sc);  // marks the key as known
  for (const auto& other : kSubcommands)
    if (other != sc && root.has(std::string(other)))
      root.fail(std::string(other), "block does not belong to subcommand '" + sc + "'");
  root.finish();
  cfg.body = block;
  cfg.body = normalize_subcommand(cfg);
  cfg.normalized = root.normalized();
  cfg.normalized[sc] = cfg.body;
  return cfg;
}

Json default_config(std::string_view subcommand) {
  const Json doc = {{"subcommand", std::string(subcommand)}, {"quadrature", Json::object()}};
  return parse_run_config(doc).normalized;
}

RunConfig load_run_config(const std::filesystem::path& path, const std::string& subcommand_hint) {
  std::ifstream in(path, std::ios::binary);
  if (!in) config_error("cannot open config file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    config_error(path.string() + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON");
  }
  return parse_run_config(doc, subcommand_hint);
}

}  // namespace gsbdlab
