#pragma once

#include "gsbdlab/catalog.hpp"
#include "gsbdlab/griffith.hpp"
#include "gsbdlab/lsc.hpp"
#include "gsbdlab/piecewise.hpp"
#include "gsbdlab/quadrature.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace gsbdlab {

using Json = nlohmann::json;

/// Reads one JSON object, filling defaults and recording every value it hands out.
/// finish() rejects keys that were never read.
class ConfigReader {
 public:
  ConfigReader(const Json& node, std::string path);

  double number(const std::string& key, double fallback);
  double number(const std::string& key);
  int integer(const std::string& key, int fallback);
  bool boolean(const std::string& key, bool fallback);
  std::string text(const std::string& key, const std::string& fallback);
  std::string text(const std::string& key);
  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback);
  std::vector<double> numbers(const std::string& key);
  std::vector<std::vector<double>> matrix(const std::string& key);
  std::vector<std::string> texts(const std::string& key, const std::vector<std::string>& fallback);
  bool has(const std::string& key) const { return node_.contains(key); }
  ConfigReader child(const std::string& key);
  /// Child object, or an empty object when absent.
  ConfigReader child_or_empty(const std::string& key);
  std::vector<ConfigReader> children(const std::string& key);
  /// Stores a nested normalized object produced by a child reader.
  void adopt(const std::string& key, const ConfigReader& child);
  void adopt(const std::string& key, const std::vector<ConfigReader>& list);

  void finish() const;
  const Json& normalized() const { return out_; }
  const std::string& path() const { return path_; }
  [[noreturn]] void fail(const std::string& key, const std::string& what) const;

 private:
  const Json& raw(const std::string& key) const;
  std::string key_path(const std::string& key) const;

  Json node_;
  std::string path_;
  Json out_ = Json::object();
  std::set<std::string> used_;
};

inline constexpr std::string_view kSubcommands[] = {"degiorgi", "certify", "chainrule", "lsc", "minimize", "validate"};

struct RunConfig {
  std::string subcommand;
  std::filesystem::path out_dir = "gsbdlab_out";
  std::uint64_t seed = 42;
  QuadratureSpec quad;
  bool verbose = false;
  bool expect_violation = false;
  Json body = Json::object();        // the subcommand block with defaults filled in
  Json normalized = Json::object();  // the whole config with defaults filled in
};

/// Parses a config document; throws ConfigError with the offending key path.
RunConfig parse_run_config(const Json& doc, const std::string& subcommand_hint = "");
/// Reads and parses a file; JSON syntax errors report line and column.
RunConfig load_run_config(const std::filesystem::path& path, const std::string& subcommand_hint = "");
/// Every key of a subcommand schema at its default value.
Json default_config(std::string_view subcommand);

/// Deterministic JSON: sorted keys, two-space indent, floats with 17 significant digits, LF line endings.
std::string render_json(const Json& j);
/// Header row then data rows, 17 significant digits, LF line endings.
std::string render_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);
std::string format_double(double v);

// Builders shared by the subcommands.
PiecewiseFn1D function_from_config(ConfigReader& r);
Amplitude amplitude_from_config(ConfigReader& r, const std::string& default_type = "constant");
JumpProfile profile_from_config(ConfigReader& r, const std::string& default_name = "linear");
SurfaceIntegrand integrand_from_config(ConfigReader& r);
DiscreteModel model_from_config(ConfigReader& r, const QuadratureSpec& quad);
SequenceRecipe recipe_from_config(ConfigReader& r);

}  // namespace gsbdlab
