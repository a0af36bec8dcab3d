// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <optional>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "hjlab/checks.hpp"
#include "hjlab/experiments.hpp"
#include "hjlab/kernel.hpp"
#include "hjlab/studies.hpp"

using namespace hjlab;

namespace {

int failures = 0;

struct Clock {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void report(int id, bool pass, const std::string& what, const std::string& measured, double secs) {
  if (!pass) ++failures;
  std::printf("[%s] criterion %2d: %s | %s | %.1f s\n", pass ? "PASS" : "FAIL", id, what.c_str(), measured.c_str(), secs);
  std::fflush(stdout);
}

std::string str(const char* fmt, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, a, b, c, d);
  return buf;
}

const std::vector<double> kBetas = {1.5, 2.0, 3.0};
const std::vector<double> kFractions = {0.01, 0.1, 0.5, 1.0};
const std::vector<double> kHorizons = {1e2, 1e4};

double K_of(double beta, double C) { return std::pow(C * beta / 5.0, 1.0 / beta); }

// g_T(s) = K T Gamma(1 + 2/beta, log(T/s)).
double g_oracle(double s, double K, double T, double beta) {
  if (s <= 0.0) return 0.0;
  return K * T * boost::math::tgamma(1.0 + 2.0 / beta, std::log(T / s));
}

double energy_closed(double s, double K, double T, double beta) {
  const double z = std::log(T / s);
  return std::pow(K, beta) / beta * s * (z * z + 2.0 * z + 2.0);
}

// ---------------------------------------------------------------------------

void criterion_1() {
  Clock c;
  double worst = 0.0;
  for (double beta : kBetas) {
    const double K = K_of(beta, 1.0);
    for (double T : kHorizons) {
      const PaceCurve g(K, T, beta);
      for (double f : kFractions) {
        const double s = f * T;
        // Adaptive Gauss-Kronrod in v = log(T/u); the integrand is (K v^(2/beta))^beta / beta * T e^-v.
        auto integrand = [&](double v) {
          const double u = T * std::exp(-v);
          return std::pow(g.rate(u), beta) / beta * u;
        };
        const double z = std::log(T / s);
        const double head = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, z, z + 60.0, 15, 1e-14);
        const double tail = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, z + 60.0, z + 200.0, 15, 1e-14);
        const double closed = pace_energy_closed(s, g);
        worst = std::max(worst, std::abs(closed - (head + tail)) / closed);
        worst = std::max(worst, std::abs(closed - energy_closed(s, K, T, beta)) / closed);
      }
    }
  }
  const double t = c.seconds();
  report(1, worst <= 1e-8 && t < 5.0, "pace energy closed form vs adaptive quadrature <= 1e-8 rel",
         str("max rel diff %.3g", worst), t);
}

void criterion_2() {
  Clock c;
  double lo = kInf, hi = kInf, lib = 0.0;
  for (double beta : {1.5, 3.0}) {
    const double K = K_of(beta, 1.0);
    for (double T : kHorizons) {
      const PaceCurve g(K, T, beta);
      for (double f : kFractions) {
        if (f == 1.0) continue;  // z = 0: the remainder bound is vacuous
        const double s = f * T, z = std::log(T / s);
        const double ratio = g_oracle(s, K, T, beta) / (K * s * std::pow(z, 2.0 / beta));
        const double r = (ratio - 1.0 - 2.0 / (beta * z)) * beta * beta / (2.0 * (2.0 - beta));
        lo = std::min(lo, r);
        hi = std::min(hi, 1.0 / (z * z) + 1e-10 - r);
        lib = std::max(lib, std::abs(pace_residue(s, g).remainder - r));
      }
    }
  }
  const double t = c.seconds();
  report(2, lo >= 0.0 && hi >= 0.0 && lib <= 1e-6 && t < 5.0, "remainder 0 <= r <= (log(T/s))^-2 + 1e-10, beta != 2",
         str("min r %.4g, min upper margin %.4g, |r_lib - r_oracle| %.2g", lo, hi, lib), t);
}

void criterion_3() {
  Clock c;
  double main_lo = kInf, main_hi = kInf;
  for (double beta : kBetas) {
    const double K = K_of(beta, 1.0);
    for (double T : kHorizons) {
      for (double f : kFractions) {
        const double s = f * T;
        const double gap = energy_closed(s, K, T, beta) - std::pow(s, 1.0 - beta) * std::pow(g_oracle(s, K, T, beta), beta) / beta;
        main_lo = std::min(main_lo, gap);
        main_hi = std::min(main_hi, 4.0 * std::pow(K, beta) * s / beta - gap);
      }
    }
  }
  // s2 gap normalized by K^beta (log T)^2, at s = (log T)^2 and its sup over 3 < s <= T.
  bool s2_ok = true;
  std::ostringstream s2;
  for (double beta : kBetas) {
    const double K = K_of(beta, 1.0);
    std::vector<double> at, sup;
    for (double T : {1e3, 1e4, 1e5}) {
      const double L = std::log(T), norm = std::pow(K, beta) * L * L;
      auto gap = [&](double s) {
        const double gs = g_oracle(s, K, T, beta), g1 = g_oracle(1.0, K, T, beta);
        return (std::pow(gs - g1, beta) / std::pow(s - 1.0, beta - 1.0) - std::pow(gs, beta) / std::pow(s, beta - 1.0)) / norm;
      };
      at.push_back(gap(L * L));
      double m = -kInf;
      for (int i = 1; i <= 400; ++i) m = std::max(m, gap(3.0 * std::pow(T / 3.0, i / 400.0)));
      sup.push_back(m);
    }
    const double Mbar = 2.0 * std::max(sup.front(), 0.0);
    for (std::size_t i = 0; i < at.size(); ++i) {
      s2_ok = s2_ok && at[i] <= Mbar && sup[i] <= Mbar;
      if (i > 0) s2_ok = s2_ok && std::max(at[i], 0.0) <= std::max(at[i - 1], 0.0);
    }
    s2 << " beta=" << beta << ": ratio " << at[0] << "," << at[1] << "," << at[2] << " sup " << sup.back() << " Mbar " << Mbar << ";";
  }
  const double t = c.seconds();
  report(3, main_lo >= 0.0 && main_hi > 0.0 && s2_ok && t < 10.0,
         "0 <= main gap < 4K^b s/b; s2 gap ratio bounded and not growing",
         str("main gap min %.4g, upper margin %.4g;", main_lo, main_hi) + s2.str(), t);
}

// ---------------------------------------------------------------------------

struct ZeroKernel {
  double dx = 0.0, deviation = 0.0, slope = 0.0;
  std::size_t nodes = 0;
};

ZeroKernel zero_kernel(std::size_t nodes, std::size_t steps) {
  const ModelParams p(2.0, 1.0);
  GridSpec g;
  g.x_min = -5.0;
  g.dx = 10.0 / static_cast<double>(nodes - 1);
  g.x_max = g.x_min + static_cast<double>(nodes - 1) * g.dx;
  g.t1 = 0.0;
  g.t2 = 1.0;
  g.dt = 1.0 / static_cast<double>(steps);
  g.v_max = 6.0;
  const Kernel k = kernel(ZeroPotential(), g, p);
  ZeroKernel z;
  z.dx = g.dx;
  z.nodes = k.num_sources();
  z.slope = kernel_local_slope(k);
  for (std::size_t i = 0; i < k.num_sources(); ++i) {
    const KernelRow& r = k.row(i);
    for (std::size_t m = 0; m < r.values.size(); ++m) {
      const double d = k.target_nodes()[r.first + m] - k.source_nodes()[i];
      z.deviation = std::max(z.deviation, std::abs(r.values[m] - d * d / 2.0));
    }
  }
  return z;
}

void criterion_4() {
  Clock c;
  // dt scales like sqrt(dx): the velocity quantum dx/dt then shrinks with the grid.
  const ZeroKernel a = zero_kernel(400, 10);
  const ZeroKernel b = zero_kernel(799, 14);
  const double ratio = b.deviation / a.deviation;
  const bool pass = a.deviation <= 2.0 * a.dx * a.slope && b.deviation <= 2.0 * b.dx * b.slope &&
                    ratio >= 0.35 && ratio <= 0.65;
  const double t = c.seconds();
  report(4, pass && t < 30.0, "U == 0 kernel within 2 dx K_loc of |x-y|^2/(2 tau); halving dx halves it (+-30%)",
         str("dev %.4g (tol %.4g) on 400 nodes, dev %.4g after halving, ratio %.3f", a.deviation, 2.0 * a.dx * a.slope,
             b.deviation, ratio),
         t);
}

int odd_steps(double x) {
  const int n = static_cast<int>(std::lround(x));
  return n % 2 ? n : n + 1;
}

void criterion_5() {
  Clock c;
  const ModelParams p(2.0, 1.0);
  const ZeroPotential zero;
  const AcceleratingPotential acc(0.0, 0.0, 50.0, K_of(2.0, 1.0), 1.0, 2.0);
  bool pass = true;
  std::ostringstream os;
  struct Case {
    std::string name;
    const PotentialField* U;
    GridSpec base;
    int n0;
    int levels;
  };
  GridSpec gz;
  gz.x_min = -4.0;
  gz.x_max = 4.0;
  gz.dx = 0.1;
  gz.t1 = 0.0;
  gz.t2 = 2.0;
  gz.v_max = 10.0;
  GridSpec ga = gz;
  ga.x_min = -acc.curve().value(50.0) - 4.0;
  ga.dx = 0.2;
  ga.t2 = 50.0;
  for (const Case& cs : {Case{"zero", &zero, gz, 5, 4}, Case{"accelerating T=50", &acc, ga, 63, 3}}) {
    std::vector<double> defects;
    os << cs.name << ":";
    for (int h = 0; h < cs.levels; ++h) {
      GridSpec g = cs.base;
      g.dx = cs.base.dx / std::ldexp(1.0, h);
      g.dt = (g.t2 - g.t1) / odd_steps(cs.n0 * std::pow(std::sqrt(2.0), h));
      const FlowLevel f = flow_level(*cs.U, g, p);
      pass = pass && f.defect <= f.tolerance;
      defects.push_back(f.defect);
      os << " " << f.defect << " (tol " << f.tolerance << ")";
    }
    for (double o : observed_orders(defects)) {
      pass = pass && o >= 0.5 && o <= 1.5;
      os << " order " << o;
    }
    os << ";";
  }
  const double t = c.seconds();
  report(5, pass && t < 120.0, "flow defect <= 5(dx+dt)K_loc, first-order decay in dx (dt ~ sqrt(dx), odd step counts)",
         os.str(), t);
}

// ---------------------------------------------------------------------------

void criterion_6() {
  Clock c;
  const ModelParams p(2.0, 1.0);
  std::mt19937_64 rng(2718);
  std::uniform_int_distribution<int> ncell(2, 5), nstep(1, 6), nband(1, 4);
  std::uniform_real_distribution<double> unit(-1.0, 1.0), len(1.0, 6.0);
  int instances = 0, mismatches = 0;
  for (; instances < 120; ++instances) {
    GridSpec g;
    g.dx = 0.5;
    g.dt = 0.25;
    g.x_min = -0.5;
    g.x_max = g.x_min + 0.5 * (ncell(rng) - 1);
    g.t1 = 0.0;
    g.t2 = 0.25 * nstep(rng);
    g.v_max = 2.0 * nband(rng);
    const Potential U = random_potential(static_cast<std::uint64_t>(instances), {Profile{Profile::Kind::Cosine, 1.0, len(rng), unit(rng)}},
                                         0.5, g.t1, g.t2, 1.0);
    const std::size_t n = g.num_cells(), N = g.num_steps();
    const long band = static_cast<long>(g.band());
    std::vector<double> init(n);
    for (double& v : init) v = unit(rng);
    const InitialValue S0 = [&](double x) { return init[g.nearest_cell(x)]; };
    const ValueTable table = solve_dp(*U, g, S0, p);

    // Every cell path, summed in the order of the recurrence.
    std::vector<double> best(n, kInf);
    std::vector<std::size_t> path(N + 1);
    std::function<void(std::size_t, double)> walk = [&](std::size_t k, double acc) {
      if (k == N) {
        best[path[N]] = std::min(best[path[N]], acc);
        return;
      }
      const double kicked = acc - g.step() * U->eval(g.x(path[k]), g.t(k));
      for (std::size_t j = 0; j < n; ++j) {
        const long d = std::labs(static_cast<long>(j) - static_cast<long>(path[k]));
        if (d > band) continue;
        path[k + 1] = j;
        walk(k + 1, kicked + segment_kinetic(static_cast<double>(d) * g.dx, g.step(), p));
      }
    };
    for (std::size_t i = 0; i < n; ++i) {
      path[0] = i;
      walk(0, init[i]);
    }
    for (std::size_t j = 0; j < n; ++j) {
      const Trajectory tr = backtrack(table, g.x(j));
      double along = init[g.nearest_cell(tr.positions()[0])];
      for (std::size_t k = 0; k < N; ++k) {
        const std::size_t a = g.nearest_cell(tr.positions()[k]), b = g.nearest_cell(tr.positions()[k + 1]);
        along = along - g.step() * U->eval(g.x(a), g.t(k)) +
                segment_kinetic(std::abs(static_cast<double>(b) - static_cast<double>(a)) * g.dx, g.step(), p);
      }
      if (table.final_slice().at(j) != best[j] || along != best[j]) ++mismatches;
    }
  }
  const double t = c.seconds();
  report(6, mismatches == 0 && t < 10.0, "solve_dp + backtrack equals exhaustive enumeration exactly",
         str("%.0f toy instances, %.0f mismatches", instances, mismatches), t);
}

// ---------------------------------------------------------------------------

struct SweepStats {
  std::size_t trajectories = 0;
  double w_margin = kInf;
  std::size_t pairs = 0;
  double progression = kInf;
};

// Independent recomputation of the average-speed lemma and the beta=2 progression.
void account(SweepStats& st, const Trajectory& tr, double dx, const ModelParams& p) {
  const auto& x = tr.positions();
  const auto& t = tr.times();
  const std::size_t N = tr.segments();
  const double T = t[N] - t[0];
  ++st.trajectories;
  st.w_margin = std::min(st.w_margin, std::sqrt(2.0 * p.C()) + 2.0 * dx / T - std::abs(x[N] - x[0]) / T);

  std::vector<std::size_t> ks;
  if (N <= 1500) {
    for (std::size_t k = 1; k <= N; ++k) ks.push_back(k);
  } else {
    for (int m = 0; m < 1500; ++m) ks.push_back(static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(N), m / 1499.0))));
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  }
  std::vector<double> s(ks.size()), w(ks.size());
  for (std::size_t m = 0; m < ks.size(); ++m) {
    s[m] = t[N] - t[N - ks[m]];
    w[m] = std::abs(x[N] - x[N - ks[m]]) / s[m];
  }
  for (std::size_t a = 0; a < ks.size(); ++a) {
    for (std::size_t b = a + 1; b < ks.size(); ++b) {
      if (!(w[a] > w[b])) continue;
      const double dw = w[a] - w[b];
      const double margin = s[b] / s[a] + 4.0 * dx * (w[a] + 1.0) / (s[a] * p.C()) - 1.0 - dw * dw / (2.0 * p.C());
      st.progression = std::min(st.progression, margin);
      ++st.pairs;
    }
  }
}

void criteria_7_8() {
  Clock c;
  const ModelParams p(2.0, 1.0);
  const GridPolicy pol;
  SweepStats st;

  for (double T : {50.0, 200.0, 1000.0}) {
    const auto targets = scaling_targets(T, p, 3);
    auto U = std::make_shared<AcceleratingPotential>(0.0, 0.0, T, K_of(2.0, 1.0), 1.0, 2.0);
    const auto out = solve_minimizers(*U, accelerating_grid(T, p, pol, targets.back()), targets, p, pol,
                                      [U](double t) { return U->edge(t); });
    for (const auto& m : out.minimizers) account(st, m.dp, out.grid.dx, p);
  }
  const Potential per = periodic_potential(Profile{Profile::Kind::Cosine, 1.0, 4.0, 0.0}, 1.0, Modulation::RaisedCosine);
  auto box = [&](double T, double hw) {
    GridSpec g;
    g.dx = pol.dx_max;
    g.dt = g.dx / pol.speed_quantum;
    g.x_min = -hw;
    g.x_max = hw;
    g.t1 = 0.0;
    g.t2 = T;
    g.v_max = pol.v_max_factor * velocity_bound_upper(T, p);
    return g;
  };
  for (double T : {10.0, 100.0, 1000.0}) {
    const auto out = solve_minimizers(*per, box(T, 10.0), {-1.5, -0.5, 0.5, 1.5, 2.5}, p, pol);
    for (const auto& m : out.minimizers) account(st, m.dp, out.grid.dx, p);
  }
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> len(2.0, 8.0), ph(0.0, 8.0), wid(0.5, 2.0), ctr(-3.0, 3.0);
  for (int i = 0; i < 25; ++i) {
    for (double T : {10.0, 30.0}) {
      const std::vector<Profile> prof = {Profile{Profile::Kind::Cosine, 1.0, len(rng), ph(rng)},
                                         Profile{Profile::Kind::Gaussian, 1.0, wid(rng), ctr(rng)},
                                         Profile{Profile::Kind::Cosine, 1.0, len(rng), ph(rng)}};
      const Potential U = random_potential(500 + i, prof, 5.0, 0.0, T, 1.0);
      const auto out = solve_minimizers(*U, box(T, 6.0), {-1.5, -0.5, 0.5, 1.5}, p, pol);
      for (const auto& m : out.minimizers) account(st, m.dp, out.grid.dx, p);
    }
  }
  const double t = c.seconds();
  report(7, st.trajectories >= 200 && st.w_margin >= 0.0, "w(T) <= (C beta)^(1/beta) with margin >= -2dx/T",
         str("%.0f trajectories (scaling, periodic, random), worst margin incl. 2dx/T %.4g", static_cast<double>(st.trajectories),
             st.w_margin),
         t);
  report(8, st.pairs > 0 && st.progression >= 0.0, "beta=2 progression inequality with grid slack on all pairs",
         str("%.0f pairs with w(s1) > w(s2), worst margin %.4g", static_cast<double>(st.pairs), st.progression), 0.0);
}

// ---------------------------------------------------------------------------

void criterion_9() {
  Clock c;
  const ExperimentConfig cfg = default_config("scaling", "ci");
  const Report rep = run_scaling(cfg);
  const auto& recs = rep.series.at(0).records;
  const ModelParams p(2.0, 1.0);
  const double K2 = std::sqrt(0.4);

  bool increasing = true;
  for (std::size_t i = 1; i < recs.size(); ++i) increasing = increasing && recs[i].speed > recs[i - 1].speed;

  // Onset: smallest T from which v >= K2 log T / 4 - slack at every larger tested T.
  std::optional<double> onset;
  for (auto it = recs.rbegin(); it != recs.rend(); ++it) {
    if (it->speed < K2 * std::log(it->T) / 4.0 - it->slack) break;
    onset = it->T;
  }
  const std::optional<double> recorded = rep.series.at(0).onset;

  // Least squares of log v on log log T.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(recs.size());
  for (const auto& r : recs) {
    const double X = std::log(std::log(r.T)), Y = std::log(r.speed);
    sx += X;
    sy += Y;
    sxx += X * X;
    sxy += X * Y;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double rel = slope / (2.0 / p.beta());

  double upper_margin = kInf;
  for (const auto& r : recs) upper_margin = std::min(upper_margin, velocity_bound_upper(r.T, p) - r.speed);

  std::ostringstream speeds;
  for (const auto& r : recs) speeds << " v(" << r.T << ")=" << r.speed;
  const double t = c.seconds();
  report(9, increasing, "(a) v(T) strictly increasing, CI horizons", speeds.str(), t);
  report(9, onset.has_value() && recorded == onset, "(b) v(T) >= K2 (log T)/4 - slack past the recorded onset",
         onset ? str("onset T = %.0f (recorded %.0f)", *onset, recorded.value_or(std::nan(""))) : std::string("no onset"), 0.0);
  report(9, rel >= 0.8 && rel <= 1.2, "(c) fitted exponent in [0.8, 1.2] x 2/beta",
         str("p = %.4f, p/(2/beta) = %.4f", slope, rel), 0.0);
  std::printf("[INFO] criterion  9: (d) advisory upper-bound margin %.4g (min over T)\n", upper_margin);
}

void criterion_10() {
  Clock c;
  const ExperimentConfig cfg = default_config("periodic-control", "ci");
  const Report rep = run_periodic_control(cfg);
  const auto& recs = rep.series.at(0).records;
  auto at = [&](double T) {
    for (const auto& r : recs) {
      if (r.T == T) return r.speed;
    }
    return std::nan("");
  };
  const double ratio = at(1000.0) / at(100.0);
  bool increasing = true;
  for (std::size_t i = 1; i < recs.size(); ++i) increasing = increasing && recs[i].speed > recs[i - 1].speed;
  const bool monotone_growth = increasing && recs.back().speed / recs.front().speed > 1.1;

  const Potential per = periodic_potential(cfg.periodic_profile, cfg.period, Modulation::RaisedCosine);
  const OperatorSuite ops = iterate_operator(*per, cfg.period, cfg.half_width, 0.1, 20, ModelParams(2.0, 1.0));
  const bool ops_ok = ops.worst_domination <= ops.slack && ops.max_lipschitz <= ops.lipschitz_bound + ops.slack;
  const double t = c.seconds();
  report(10, ratio >= 0.9 && ratio <= 1.1 && !monotone_growth && ops_ok && t < 300.0,
         "periodic U: v(1e3)/v(1e2) in [0.9,1.1], no monotone growth, operator suite over 20 periods",
         str("ratio %.4f; domination %.3g (slack %.3g); Lipschitz-in-the-large %.4g", ratio, ops.worst_domination, ops.slack,
             ops.max_lipschitz),
         t);
}

RefineOptions converged() {
  RefineOptions o;
  o.passes = 20000;
  o.rel_tol = 1e-13;
  return o;
}

void criterion_11() {
  Clock c;
  const ModelParams p(2.0, 1.0);
  const Potential U = periodic_potential(Profile{Profile::Kind::Cosine, 1.0, 4.0, 0.0}, 1.0, Modulation::Constant);
  GridSpec g;
  g.dx = 0.02;
  g.dt = 0.1;
  g.x_min = -4.0;
  g.x_max = 4.0;
  g.t1 = 0.0;
  g.t2 = 5.0;
  g.v_max = 10.0;
  const auto lv = refined_levels(*U, g, {1.0}, p, 3, converged());
  std::vector<double> dh;
  for (const auto& l : lv) dh.push_back(l.energy_variation);
  const auto ord = observed_orders(dh);
  const bool pass = dh[0] <= 0.05 && ord[0] >= 0.7 && ord[1] >= 0.7;
  report(11, pass, "autonomous U: max |dH| <= 0.05 C, decays at (at least) first order under dt halving",
         str("dH %.3g, %.3g, %.3g; orders %.2f", dh[0], dh[1], dh[2], ord[0]) + str(", %.2f", ord[1]), c.seconds());
}

void criterion_12() {
  Clock c;
  const ModelParams p(2.0, 1.0);
  const AcceleratingPotential U(0.0, 0.0, 5.0, K_of(2.0, 1.0), 1.0, 2.0);
  GridSpec g;
  g.dx = 0.02;
  g.dt = 0.1;
  g.x_min = -U.curve().value(5.0) - 4.0;
  g.x_max = 2.0;
  g.t1 = 0.0;
  g.t2 = 5.0;
  g.v_max = 30.0;
  const auto lv = refined_levels(U, g, {-2.5, -2.0, -1.5, -1.0, -0.5}, p, 3, converged());
  std::vector<double> cs;
  for (const auto& l : lv) cs.push_back(l.el_residual / l.dt);
  const double hi = *std::max_element(cs.begin(), cs.end()), lo = *std::min_element(cs.begin(), cs.end());
  const double mid = 0.5 * (hi + lo);
  // Some c0 has every c within [0.5 c0, 1.5 c0] iff max/min <= 3.
  report(12, hi <= 3.0 * lo, "EL residual <= c dt with c stable (+-50%) across two dt halvings",
         str("c = %.4f, %.4f, %.4f (spread +-%.0f%% around the midrange)", cs[0], cs[1], cs[2], 100.0 * (hi - mid) / mid),
         c.seconds());
}

void criterion_13() {
  Clock c;
  const ExperimentConfig cfg = default_config("glued-demo", "ci");
  const Report rep = run_glued_demo(cfg);
  const auto& recs = rep.series.at(0).records;
  const double margin = recs.size() >= 2 ? recs[1].speed - recs[0].speed : -kInf;

  const ModelParams p(2.0, 1.0);
  const GluedSchedule sched = glued_schedule(cfg.epsilon, cfg.Tbar, K_of(2.0, 1.0), 1.0, 2.0, cfg.n_max, cfg.cap);
  const GluedPotential U(sched);
  double jump = 0.0;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ux(-sched.stages.back().X - 3.0, 3.0);
  for (std::size_t k = 0; k + 1 < sched.stages.size(); ++k) {
    const double tb = -sched.stages[k].S;
    for (int i = 0; i < 100; ++i) {
      const double x = ux(rng);
      jump = std::max(jump, std::abs(U.eval(x, tb - 1e-12) - U.eval(x, tb + 1e-12)));
    }
  }
  report(13, margin > 0.0 && jump <= 1e-10, "capped glued schedule: stage-2 speed exceeds stage-1; continuity <= 1e-10",
         str("v1 %.4f, v2 %.4f, margin %.4f; jump %.3g", recs.at(0).speed, recs.at(1).speed, margin, jump), c.seconds());
}

std::string slurp(const std::filesystem::path& f) {
  std::ifstream in(f, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void criterion_14() {
  Clock c;
  const auto root = std::filesystem::temp_directory_path() / "hjlab_acceptance_determinism";
  std::filesystem::remove_all(root);
  std::vector<ExperimentConfig> cfgs;
  {
    auto s = default_config("scaling", "ci");
    s.horizons = {20.0, 50.0};
    cfgs.push_back(s);
    auto pc = default_config("periodic-control", "ci");
    pc.horizons = {10.0, 20.0};
    pc.operator_steps = 3;
    cfgs.push_back(pc);
    cfgs.push_back(default_config("glued-demo", "ci"));
    auto cp = default_config("conjecture-probe", "ci");
    cp.horizons = {10.0, 20.0};
    cfgs.push_back(cp);
    auto ls = default_config("lemma-suite", "ci");
    ls.random_potentials = 3;
    ls.toy_instances = 10;
    ls.resolution_levels = 0;
    cfgs.push_back(ls);
  }
  bool same = true;
  std::size_t files = 0;
  for (const auto& cfg : cfgs) {
    for (int run = 0; run < 2; ++run) emit(run_experiment(cfg), root / ("run" + std::to_string(run)), cfg.kind);
    for (const char* ext : {".json", ".csv"}) {
      const auto a = slurp(root / "run0" / (cfg.kind + ext));
      const auto b = slurp(root / "run1" / (cfg.kind + ext));
      same = same && !a.empty() && a == b;
      ++files;
    }
  }
  std::filesystem::remove_all(root);
  report(14, same, "two runs with identical config give byte-identical JSON and CSV",
         str("%.0f file pairs over all five experiment kinds", static_cast<double>(files)), c.seconds());
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criteria_7_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  criterion_13();
  criterion_14();
  std::printf("%d failing criterion line(s)\n", failures);
  return failures == 0 ? 0 : 1;
}
