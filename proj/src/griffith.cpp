#include "gsbdlab/griffith.hpp"

#include "gsbdlab/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace gsbdlab {

void DiscreteModel::validate() const {
  energy.validate();
  if (energy.dim != 1 || energy.phi.dim != 1) throw Error(ErrorKind::InvalidParams, "the discrete model is scalar 1D");
  if (N < 1) throw Error(ErrorKind::InvalidParams, "N must be at least 1");
  if (V < 2) throw Error(ErrorKind::InvalidParams, "V must be at least 2");
  if (!(u_min < u_max)) throw Error(ErrorKind::InvalidParams, "value grid must be increasing");
  if (!jump_allowed.empty() && int(jump_allowed.size()) != N - 1)
    throw Error(ErrorKind::InvalidParams, "jump permissions must list the N - 1 interior nodes");
}

std::vector<double> MinimizerResult::start_values(const DiscreteModel& m) const {
  std::vector<double> out;
  for (int k : start_index) out.push_back(m.level(k));
  return out;
}

std::vector<double> MinimizerResult::end_values(const DiscreteModel& m) const {
  std::vector<double> out;
  for (int k : end_index) out.push_back(m.level(k));
  return out;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Cost tables shared by the DP and the oracle so both sum identical numbers in the same order.
struct CostTables {
  int N = 0, V = 0;
  std::vector<double> element;  // [e][a][b]: bulk + confinement
  std::vector<double> bulk;     // [e][a][b]
  std::vector<double> jump;     // [i][w][v] for interior nodes i = 1..N-1 (index i - 1); +inf when not allowed
  std::vector<double> pen_lo, pen_hi;

  double el(int e, int a, int b) const { return element[(std::size_t(e) * V + a) * V + b]; }
  double bk(int e, int a, int b) const { return bulk[(std::size_t(e) * V + a) * V + b]; }
  double jp(int i, int w, int v) const { return jump[(std::size_t(i - 1) * V + w) * V + v]; }
};

Polynomial element_affine(const DiscreteModel& m, int e, double a, double b) {
  const double x0 = m.node(e), slope = (b - a) / m.h();
  return Polynomial::affine(a - slope * x0, slope);
}

CostTables build_tables(const DiscreteModel& m) {
  m.validate();
  CostTables t;
  t.N = m.N;
  t.V = m.V;
  const auto& E = m.energy;
  const std::size_t V = std::size_t(m.V);
  t.element.assign(std::size_t(m.N) * V * V, kInf);
  t.bulk.assign(std::size_t(m.N) * V * V, kInf);
  for (int e = 0; e < m.N; ++e) {
    const double x0 = m.node(e), x1 = m.node(e + 1);
    for (int a = 0; a < m.V; ++a)
      for (int b = 0; b < m.V; ++b) {
        const Polynomial p = element_affine(m, e, m.level(a), m.level(b));
        const Vec slope = vec1(p.derivative()(0.0));
        try {
          const double bulk = integrate_interval([&](double x) { return E.W(x, slope); }, x0, x1, m.quad);
          const double conf = integrate_interval([&](double x) { return E.psi(std::abs(p(x))); }, x0, x1, m.quad);
          const std::size_t k = (std::size_t(e) * V + std::size_t(a)) * V + std::size_t(b);
          t.bulk[k] = bulk;
          t.element[k] = bulk + conf;
        } catch (const Error& err) {
          if (err.kind() != ErrorKind::NonFiniteIntegrand) throw;
        }
      }
  }
  t.jump.assign(std::size_t(std::max(m.N - 1, 0)) * V * V, kInf);
  const Vec nu = vec1(1.0);
  for (int i = 1; i < m.N; ++i) {
    if (!m.may_jump(i)) continue;
    const Vec x = vec1(m.node(i));
    for (int w = 0; w < m.V; ++w)
      for (int v = 0; v < m.V; ++v)
        if (w != v) t.jump[(std::size_t(i - 1) * V + std::size_t(w)) * V + std::size_t(v)] =
            E.phi(x, vec1(m.level(w)), vec1(m.level(v)), nu);
  }
  t.pen_lo.assign(V, 0.0);
  t.pen_hi.assign(V, 0.0);
  if (E.boundary) {
    const auto& bc = *E.boundary;
    for (int k = 0; k < m.V; ++k) {
      t.pen_lo[std::size_t(k)] = bc.beta * (m.level(k) - bc.lo(0)) * (m.level(k) - bc.lo(0));
      t.pen_hi[std::size_t(k)] = bc.beta * (m.level(k) - bc.hi(0)) * (m.level(k) - bc.hi(0));
    }
  }
  return t;
}

// Ledger and bounds for a path, recomputed from the tables in solver order.
void finalize(const DiscreteModel& m, const CostTables& t, MinimizerResult& r) {
  EnergyLedger& L = r.ledger;
  L = {};
  double total = t.pen_lo[std::size_t(r.start_index[0])];
  L.boundary = total;
  for (int e = 0; e < m.N; ++e) {
    if (e > 0 && r.start_index[std::size_t(e)] != r.end_index[std::size_t(e - 1)]) {
      const double j = t.jp(e, r.start_index[std::size_t(e)], r.end_index[std::size_t(e - 1)]);
      L.surface += j;
      total += j;
      r.jump_nodes.push_back(e);
    }
    const double c = t.el(e, r.start_index[std::size_t(e)], r.end_index[std::size_t(e)]);
    const double b = t.bk(e, r.start_index[std::size_t(e)], r.end_index[std::size_t(e)]);
    L.bulk += b;
    L.confinement += c - b;
    total += c;
  }
  const double ph = t.pen_hi[std::size_t(r.end_index.back())];
  L.boundary += ph;
  total += ph;
  L.total = total;
  if (!std::isfinite(total)) throw Error(ErrorKind::InfeasibleGrid, "no finite-cost path through the grid");

  const PiecewiseFn1D u = reconstruct(m, r);
  const double grif = griffith_quantity(u, m.energy.p, m.quad);
  const double conf = confinement_integral(m.energy.psi, u, m.quad);
  const double c_phi = m.energy.phi.strictly_positive_c.value_or(0.0);
  r.degenerate_surface = !(c_phi > 0);
  const double c_min = std::min(m.energy.coercive ? m.energy.c_W : 0.0, c_phi);
  r.griffith_bound = c_min * grif + conf;
  r.compactness_quantity = conf + grif;
}

}  // namespace

PiecewiseFn1D reconstruct(const DiscreteModel& m, const MinimizerResult& r) {
  std::vector<double> bps;
  std::vector<std::vector<Polynomial>> pieces;
  for (int e = 0; e < m.N; ++e) {
    if (e > 0) bps.push_back(m.node(e));
    pieces.push_back({element_affine(m, e, m.level(r.start_index[std::size_t(e)]),
                                     m.level(r.end_index[std::size_t(e)]))});
  }
  return PiecewiseFn1D(m.energy.x_lo, m.energy.x_hi, bps, pieces);
}

MinimizerResult minimize_dp(const DiscreteModel& m) {
  const CostTables t = build_tables(m);
  const int N = m.N, V = m.V;
  // E[i][w]: best cost with right trace w at node i; D[i][v]: best cost with left trace v at node i.
  std::vector<std::vector<double>> Ecost(std::size_t(N), std::vector<double>(std::size_t(V), kInf));
  std::vector<std::vector<int>> Efrom(std::size_t(N), std::vector<int>(std::size_t(V), -1));  // pre-jump trace
  std::vector<std::vector<double>> Dcost(std::size_t(N) + 1, std::vector<double>(std::size_t(V), kInf));
  std::vector<std::vector<int>> Dfrom(std::size_t(N) + 1, std::vector<int>(std::size_t(V), -1));

  for (int w = 0; w < V; ++w) {
    Ecost[0][std::size_t(w)] = t.pen_lo[std::size_t(w)];
    Efrom[0][std::size_t(w)] = w;
  }
  for (int e = 0; e < N; ++e) {
    if (e > 0) {
      for (int w = 0; w < V; ++w) {
        double best = Dcost[std::size_t(e)][std::size_t(w)];
        int arg = w;
        if (m.may_jump(e))
          for (int v = 0; v < V; ++v) {
            if (v == w) continue;
            const double c = Dcost[std::size_t(e)][std::size_t(v)] + t.jp(e, w, v);
            if (c < best) {
              best = c;
              arg = v;
            }
          }
        Ecost[std::size_t(e)][std::size_t(w)] = best;
        Efrom[std::size_t(e)][std::size_t(w)] = arg;
      }
    }
    for (int b = 0; b < V; ++b) {
      double best = kInf;
      int arg = -1;
      for (int a = 0; a < V; ++a) {
        const double c = Ecost[std::size_t(e)][std::size_t(a)] + t.el(e, a, b);
        if (c < best) {
          best = c;
          arg = a;
        }
      }
      Dcost[std::size_t(e) + 1][std::size_t(b)] = best;
      Dfrom[std::size_t(e) + 1][std::size_t(b)] = arg;
    }
  }
  double best = kInf;
  int arg = -1;
  for (int b = 0; b < V; ++b) {
    const double c = Dcost[std::size_t(N)][std::size_t(b)] + t.pen_hi[std::size_t(b)];
    if (c < best) {
      best = c;
      arg = b;
    }
  }
  if (arg < 0) throw Error(ErrorKind::InfeasibleGrid, "every transition has infinite cost");

  MinimizerResult r;
  r.start_index.assign(std::size_t(N), 0);
  r.end_index.assign(std::size_t(N), 0);
  int b = arg;
  for (int e = N - 1; e >= 0; --e) {
    r.end_index[std::size_t(e)] = b;
    const int a = Dfrom[std::size_t(e) + 1][std::size_t(b)];
    r.start_index[std::size_t(e)] = a;
    b = Efrom[std::size_t(e)][std::size_t(a)];
  }
  finalize(m, t, r);
  return r;
}

MinimizerResult brute_force_oracle(const DiscreteModel& m) {
  if (m.N > 6 || m.V > 8) throw Error(ErrorKind::SearchSpaceTooLarge, "the oracle handles N <= 6 and V <= 8");
  const CostTables t = build_tables(m);
  bool non_negative = true;
  for (const auto* tab : {&t.element, &t.jump, &t.pen_lo, &t.pen_hi})
    for (double c : *tab) non_negative = non_negative && c >= 0.0;
  constexpr std::uint64_t cap = std::uint64_t(1) << 32;

  const int N = m.N, V = m.V;
  std::vector<int> start(static_cast<std::size_t>(N)), end(static_cast<std::size_t>(N));
  MinimizerResult best;
  double best_total = kInf;
  std::uint64_t visited = 0;

  // Enumerate (start_e, end_e) element by element, summing in the same order as the DP.
  auto dfs = [&](auto&& self, int e, double acc) -> void {
    if (++visited > cap) throw Error(ErrorKind::SearchSpaceTooLarge, "oracle search exceeded its node budget");
    if (non_negative && acc > best_total) return;
    if (e == N) {
      const double total = acc + t.pen_hi[std::size_t(end.back())];
      if (total < best_total) {
        best_total = total;
        best.start_index = start;
        best.end_index = end;
      }
      return;
    }
    for (int a = 0; a < V; ++a) {
      double with_jump = acc;
      if (e == 0) {
        with_jump = t.pen_lo[std::size_t(a)];
      } else if (a != end[std::size_t(e - 1)]) {
        if (!m.may_jump(e)) continue;
        with_jump = acc + t.jp(e, a, end[std::size_t(e - 1)]);
      }
      start[std::size_t(e)] = a;
      for (int b = 0; b < V; ++b) {
        end[std::size_t(e)] = b;
        self(self, e + 1, with_jump + t.el(e, a, b));
      }
    }
  };
  dfs(dfs, 0, 0.0);
  if (!std::isfinite(best_total)) throw Error(ErrorKind::InfeasibleGrid, "every path has infinite cost");
  finalize(m, t, best);
  best.visited = visited;
  return best;
}

RefinementReport refinement_study(const DiscreteModel& model, int levels) {
  if (levels < 2) throw Error(ErrorKind::InvalidParams, "a refinement study needs at least 2 levels");
  RefinementReport rep;
  DiscreteModel m = model;
  for (int k = 0; k < levels; ++k) {
    if (k > 0) {
      if (!m.jump_allowed.empty()) {
        std::vector<bool> finer(std::size_t(2 * m.N - 1), true);
        for (int i = 1; i < m.N; ++i) finer[std::size_t(2 * i - 1)] = m.jump_allowed[std::size_t(i - 1)];
        m.jump_allowed = std::move(finer);
      }
      m.N *= 2;
      m.V = 2 * (m.V - 1) + 1;
    }
    const MinimizerResult r = minimize_dp(m);
    rep.rows.push_back({m.N, m.V, r.ledger, r.compactness_quantity});
  }
  const double c_phi = model.energy.phi.strictly_positive_c.value_or(0.0);
  const double c = std::min({model.energy.c_W, c_phi, 1.0});
  rep.M = c > 0 ? rep.rows.front().ledger.total / c + 1.0 : kInf;
  for (std::size_t k = 0; k < rep.rows.size(); ++k) {
    if (k > 0 && rep.rows[k].ledger.total > rep.rows[k - 1].ledger.total + 1e-9) rep.non_increasing = false;
    if (!(rep.rows[k].bound_2_1 <= rep.M)) rep.bound_holds = false;
  }
  return rep;
}

DiscreteModel griffith_pull_model(double delta, double kappa0, int N, int V, double u_min, double u_max, double beta) {
  CatalogParams p;
  p.dim = 1;
  p.amplitude = Amplitude::constant(kappa0);
  p.norm = norms::euclidean();
  DiscreteModel m;
  m.energy.W = bulk::quadratic();
  m.energy.phi = make_catalog_integrand(CatalogKind::AmpTimesKappaXi, p);
  m.energy.psi = confinement::zero();
  m.energy.boundary = BoundaryPenalty{vec1(0.0), vec1(delta), beta};
  m.N = N;
  m.V = V;
  m.u_min = u_min;
  m.u_max = u_max;
  return m;
}

DiscreteModel random_model(std::uint64_t seed, int N, int V) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double c_W = 0.5 + 1.5 * unit(rng);
  const int pieces = 1 + int(rng() % 3);
  std::vector<double> bps, vals;
  for (int i = 1; i < pieces; ++i) bps.push_back(double(i) / pieces);
  for (int i = 0; i < pieces; ++i) vals.push_back(0.05 + 0.5 * unit(rng));
  CatalogParams p;
  p.dim = 1;
  p.amplitude = Amplitude::piecewise(PiecewiseFn1D::piecewise_constant(0.0, 1.0, bps, vals));
  p.norm = norms::euclidean();
  DiscreteModel m;
  m.energy.W = bulk::quadratic(c_W);
  m.energy.c_W = c_W;
  m.energy.phi = make_catalog_integrand(CatalogKind::AmpTimesKappaXi, p);
  m.energy.psi = confinement::quadratic(unit(rng));
  const double lo = -0.5 + unit(rng), hi = -0.5 + unit(rng);
  m.energy.boundary = BoundaryPenalty{vec1(lo), vec1(hi), 1.0 + 9.0 * unit(rng)};
  m.N = N;
  m.V = V;
  m.u_min = -0.5;
  m.u_max = 0.5;
  return m;
}

}  // namespace gsbdlab
