#include "gsbdlab/quadrature.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace gsbdlab {

void QuadratureSpec::validate() const {
  if (n_gauss < 2) throw Error(ErrorKind::InvalidParams, "n_gauss must be at least 2");
  if (n_panels < 1) throw Error(ErrorKind::InvalidParams, "n_panels must be at least 1");
  if (levels < 1) throw Error(ErrorKind::InvalidParams, "levels must be at least 1");
}

const GaussRule<double>& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, GaussRule<double>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    // Extended precision for the Newton solve, rounded once.
    const auto wide = compute_gauss_legendre<long double>(n);
    GaussRule<double> rule;
    for (auto v : wide.nodes) rule.nodes.push_back(double(v));
    for (auto v : wide.weights) rule.weights.push_back(double(v));
    it = cache.emplace(n, std::move(rule)).first;
  }
  return it->second;
}

int panel_count(double length, const QuadratureSpec& spec) {
  const double want = std::ceil(spec.n_panels * length - 1e-12);
  return std::max(1, int(want));
}

namespace detail {
void throw_non_finite(double where) {
  std::ostringstream os;
  os << "integrand is not finite near " << where;
  throw Error(ErrorKind::NonFiniteIntegrand, os.str());
}
}  // namespace detail

}  // namespace gsbdlab
