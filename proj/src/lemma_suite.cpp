#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "hjlab/checks.hpp"
#include "hjlab/errors.hpp"
#include "hjlab/experiments.hpp"
#include "hjlab/kernel.hpp"
#include "hjlab/studies.hpp"

namespace hjlab {

using nlohmann::json;

namespace {

const std::vector<double> kBetas = {1.5, 2.0, 3.0};
const std::vector<double> kFractions = {0.01, 0.1, 0.5, 1.0};
const std::vector<double> kPaceHorizons = {1e2, 1e4};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

class Suite {
 public:
  explicit Suite(Report& rep) : rep_(rep) {}

  void hard(const std::string& name, bool pass, double measured, double threshold, const std::string& detail = "") {
    rep_.checks.push_back(Check{name, true, pass, measured, threshold, detail});
  }
  void advisory(const std::string& name, bool pass, double measured, double threshold, const std::string& detail = "") {
    rep_.checks.push_back(Check{name, false, pass, measured, threshold, detail});
  }
  template <typename F>
  void timed(const std::string& label, F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    rep_.timings.emplace_back(label, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }

 private:
  Report& rep_;
};

std::vector<Profile> sweep_profiles(std::mt19937_64& rng, int count) {
  std::uniform_real_distribution<double> len(2.0, 8.0), phase(0.0, 8.0), width(0.5, 2.0), center(-3.0, 3.0);
  std::vector<Profile> out;
  for (int j = 0; j < count; ++j) {
    if (j % 2 == 0) {
      out.push_back(Profile{Profile::Kind::Cosine, 1.0, len(rng), phase(rng)});
    } else {
      out.push_back(Profile{Profile::Kind::Gaussian, 1.0, width(rng), center(rng)});
    }
  }
  return out;
}

double K_of(const ModelParams& p) { return std::pow(p.C() * p.beta() / 5.0, 1.0 / p.beta()); }

// ---------------------------------------------------------------------------

void pace_checks(Suite& s) {
  boost::math::quadrature::tanh_sinh<double> ts;
  double worst_integr = 0.0, worst_res_lo = kInf, worst_res_hi = kInf, worst_main_lo = kInf, worst_main_hi = kInf;
  std::size_t residue_cases = 0;
  for (double beta : kBetas) {
    const ModelParams p(beta, 1.0);
    const double K = K_of(p);
    for (double T : kPaceHorizons) {
      const PaceCurve g(K, T, beta);
      for (double f : kFractions) {
        const double sv = f * T;
        const double closed = pace_energy_closed(sv, g);
        const double quad = ts.integrate([&](double u) {
          const double r = g.rate(u);
          return std::pow(r, beta) / beta;
        }, 0.0, sv, 1e-13);
        worst_integr = std::max(worst_integr, std::abs(closed - quad) / std::abs(closed));
        if (beta != 2.0 && f < 1.0) {
          const double z = std::log(T / sv);
          const PaceResidue r = pace_residue(sv, g);
          worst_res_lo = std::min(worst_res_lo, r.remainder);
          worst_res_hi = std::min(worst_res_hi, 1.0 / (z * z) + 1e-10 - r.remainder);
          ++residue_cases;
        }
        const double gap = pace_main_gap(sv, g);
        worst_main_lo = std::min(worst_main_lo, gap);
        worst_main_hi = std::min(worst_main_hi, 4.0 * std::pow(K, beta) * sv / beta - gap);
      }
    }
  }
  s.hard("pace: closed-form energy vs quadrature", worst_integr <= 1e-8, worst_integr, 1e-8,
         "max relative difference over beta {1.5,2,3}, s/T {0.01,0.1,0.5,1}, T {1e2,1e4}");
  s.hard("pace: remainder r >= 0", worst_res_lo >= 0.0, worst_res_lo, 0.0,
         std::to_string(residue_cases) + " cases, beta != 2, s < T");
  s.hard("pace: remainder r <= (log(T/s))^-2", worst_res_hi >= 0.0, worst_res_hi, 0.0, "margin");
  s.hard("pace: main gap >= 0", worst_main_lo >= 0.0, worst_main_lo, 0.0, "");
  s.hard("pace: main gap < 4 K^beta s / beta", worst_main_hi > 0.0, worst_main_hi, 0.0, "margin");
}

json s2_checks(Suite& s) {
  json rec = json::object();
  for (double beta : kBetas) {
    const ModelParams p(beta, 1.0);
    const double K = K_of(p);
    // q(T) = gap / (K^beta (log T)^2) at s = (log T)^2; Mbar from the sup over 3 < s <= T0.
    std::vector<double> q, sup;
    for (double T : {1e3, 1e4, 1e5}) {
      const PaceCurve g(K, T, beta);
      const double L = std::log(T);
      const double norm = std::pow(K, beta) * L * L;
      q.push_back(pace_s2_gap(L * L, g) / norm);
      double m = -kInf;
      for (int i = 0; i <= 400; ++i) {
        const double sv = std::max(3.0 * std::pow(T / 3.0, i / 400.0), std::nextafter(3.0, 4.0));
        m = std::max(m, pace_s2_gap(std::min(sv, T), g) / norm);
      }
      sup.push_back(m);
    }
    const double Mbar = 2.0 * std::max(sup.front(), 0.0);
    bool bounded = true, non_increasing = true;
    for (std::size_t i = 0; i < q.size(); ++i) {
      bounded = bounded && q[i] <= Mbar && sup[i] <= Mbar;
      if (i > 0) non_increasing = non_increasing && std::max(q[i], 0.0) <= std::max(q[i - 1], 0.0);
    }
    const double worst = *std::max_element(sup.begin(), sup.end());
    s.hard("pace: s2 gap <= Mbar K^beta (log T)^2, ratio not growing, beta=" + fmt(beta), bounded && non_increasing,
           worst, Mbar,
           "measured = max over T {1e3,1e4,1e5} and 3 < s <= T of gap / (K^beta (log T)^2); Mbar = 2 x positive part at T0 = 1e3");
    rec[fmt(beta)] = {{"ratio_at_log2", q}, {"sup_ratio", sup}, {"Mbar", Mbar}, {"T0", 1e3}};
  }
  return rec;
}

// ---------------------------------------------------------------------------

void potential_checks(Suite& s, const ExperimentConfig& cfg) {
  const ModelParams p = cfg.params();
  const double K = K_of(p);
  const double T = 50.0;
  const AcceleratingPotential acc(0.0, 0.0, T, K, p.C(), p.beta());
  const double reach = acc.curve().value(T);
  const GluedSchedule sched = glued_schedule(cfg.epsilon, cfg.Tbar, K, p.C(), p.beta(), cfg.n_max, cfg.cap);
  const GluedPotential glued(sched);
  const double S_end = sched.stages.back().S;
  const double X_end = sched.stages.back().X;
  const Potential per = periodic_potential(cfg.periodic_profile, cfg.period, Modulation::RaisedCosine);
  std::mt19937_64 rng(7);
  const Potential rnd = random_potential(11, sweep_profiles(rng, 3), 5.0, 0.0, 50.0, p.C());

  struct Item {
    std::string name;
    const PotentialField* U;
    Interval xr, tr;
  };
  const std::vector<Item> items = {
      {"accelerating", &acc, {-reach - 5.0, 5.0}, {0.0, T}},
      {"glued", &glued, {-X_end - 5.0, 5.0}, {-S_end, 0.0}},
      {"periodic", per.get(), {-10.0, 10.0}, {0.0, 10.0}},
      {"random", rnd.get(), {-10.0, 10.0}, {0.0, 50.0}},
  };
  for (const auto& it : items) {
    const CertificationResult c = certify(*it.U, it.xr, it.tr, 10000, 2024);
    s.hard("certification: " + it.name, c.ok(), static_cast<double>(c.value_violations + c.grad_violations), 0.0,
           "1e4 samples; max U " + fmt(c.max_value) + ", max |grad| " + fmt(c.max_abs_grad));
    const double gc = gradient_consistency(*it.U, it.xr, it.tr, 2000, 1e-5, 2025);
    s.hard("gradient matches central difference: " + it.name, gc <= 1e-6, gc, 1e-6, "h = 1e-5");
  }

  double jump = 0.0;
  std::uniform_real_distribution<double> ux(-X_end - 3.0, 3.0);
  for (std::size_t k = 0; k + 1 < sched.stages.size(); ++k) {
    const double tb = -sched.stages[k].S;
    for (int i = 0; i < 100; ++i) {
      const double x = ux(rng);
      const auto a = glued.sample(x, tb - 1e-12), b = glued.sample(x, tb + 1e-12);
      jump = std::max({jump, std::abs(a.value - b.value), std::abs(a.grad - b.grad)});
    }
  }
  s.hard("glued: continuity at stage boundaries", jump <= 1e-10, jump, 1e-10, "100 random x per boundary, t = -S_n -+ 1e-12");

  bool exact = sched.stages.front().S == sched.stages.front().T;
  double xrel = 0.0;
  for (std::size_t k = 0; k < sched.stages.size(); ++k) {
    if (k > 0) exact = exact && sched.stages[k].S - sched.stages[k - 1].S == sched.stages[k].T;
    xrel = std::max(xrel, std::abs(sched.stages[k].X - sched.Kbar * sched.stages[k].S) / (sched.Kbar * sched.stages[k].S));
  }
  s.hard("glued schedule: S_n - S_(n-1) = T_n", exact, exact ? 0.0 : 1.0, 0.0, "exact");
  if (p.beta() == 2.0) {
    s.hard("glued schedule: X_n = Kbar S_n", xrel <= 1e-8, xrel, 1e-8, "relative");
  }
}

void lagrangian_checks(Suite& s) {
  double worst_dual = 0.0, worst_jensen = kInf;
  ZeroPotential zero;
  std::mt19937_64 rng(3);
  std::normal_distribution<double> step(0.0, 1.0);
  for (double beta : kBetas) {
    const ModelParams p(beta, 1.0);
    for (int i = 0; i <= 200; ++i) {
      const double v = -5.0 + 0.05 * i;
      const double m = legendre(v, p);
      const double lhs = hamiltonian(m, 0.0, 0.0, zero, p) + lagrangian(v, 0.0, 0.0, zero, p);
      worst_dual = std::max(worst_dual, std::abs(lhs - m * v) / std::max(1.0, std::abs(m * v)));
    }
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 2 + trial % 20;
      std::vector<double> t(n), x(n);
      for (std::size_t k = 0; k < n; ++k) {
        t[k] = 0.1 * static_cast<double>(k) * (1.0 + 0.01 * (trial % 7));
        x[k] = k == 0 ? 0.0 : x[k - 1] + step(rng);
      }
      const Trajectory tr(t, x);
      const double a = action(tr, zero, p);
      worst_jensen = std::min(worst_jensen, a - jensen_lower_bound(x.back() - x.front(), tr.span(), p) + 1e-12);
    }
  }
  s.hard("Legendre duality H(p(v)) + L(v) = p(v) v", worst_dual <= 1e-12, worst_dual, 1e-12, "relative, U == 0");
  s.hard("Jensen bound on action", worst_jensen >= 0.0, worst_jensen, 0.0, "300 random paths, U == 0");
}

// ---------------------------------------------------------------------------

void dp_checks(Suite& s, const ExperimentConfig& cfg) {
  const ModelParams p = cfg.params();
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> ncell(2, 5), nstep(1, 6), nband(1, 4);
  std::uniform_real_distribution<double> s0(-1.0, 1.0);
  std::size_t mismatches = 0, path_mismatches = 0;
  double worst = 0.0;
  for (int inst = 0; inst < cfg.toy_instances; ++inst) {
    GridSpec g;
    g.dx = 0.5;
    g.dt = 0.5;
    g.x_min = 0.0;
    g.x_max = 0.5 * (ncell(rng) - 1);
    g.t1 = 0.0;
    g.t2 = 0.5 * nstep(rng);
    g.v_max = nband(rng);
    const Potential U = random_potential(100 + inst, sweep_profiles(rng, 2), 1.0, g.t1, g.t2, p.C());
    std::vector<double> init(g.num_cells());
    for (double& v : init) v = s0(rng);
    const InitialValue S0 = [&](double x) { return init[g.nearest_cell(x)]; };
    const ValueTable table = solve_dp(*U, g, S0, p);
    for (std::size_t j = 0; j < g.num_cells(); ++j) {
      const EnumerationResult e = enumerate_min_action(*U, g, S0, p, j);
      const double v = table.final_slice().at(j);
      worst = std::max(worst, std::abs(v - e.value));
      if (v != e.value) ++mismatches;
      const Trajectory tr = backtrack(table, g.x(j));
      std::vector<std::size_t> cells;
      for (double x : tr.positions()) cells.push_back(g.nearest_cell(x));
      double along = S0(g.x(cells[0]));
      for (std::size_t k = 0; k + 1 < cells.size(); ++k) {
        along = along - g.step() * U->eval(g.x(cells[k]), g.t(k)) +
                segment_kinetic(std::abs(static_cast<double>(cells[k + 1]) - static_cast<double>(cells[k])) * g.dx, g.step(), p);
      }
      if (along != e.value) ++path_mismatches;
    }
  }
  s.hard("DP equals exhaustive enumeration", mismatches == 0, worst, 0.0,
         std::to_string(cfg.toy_instances) + " toy instances, every terminal node");
  s.hard("backtracked path attains the DP value", path_mismatches == 0, static_cast<double>(path_mismatches), 0.0, "exact");

  const double T = 8.0;
  const AcceleratingPotential acc(0.0, 0.0, T, K_of(p), p.C(), p.beta());
  const Potential per = periodic_potential(cfg.periodic_profile, cfg.period, Modulation::RaisedCosine);
  GridSpec ga;
  ga.dx = 0.1;
  ga.dt = 0.4;
  ga.t1 = 0.0;
  ga.t2 = T;
  ga.x_min = -acc.curve().value(T) - 4.0;
  ga.x_max = 2.0;
  ga.v_max = 1.5 * velocity_bound_upper(T, p);
  GridSpec gp = ga;
  gp.dx = 0.05;
  gp.dt = 0.2;
  gp.t2 = 20.0;
  gp.x_min = -cfg.half_width;
  gp.x_max = cfg.half_width;
  gp.v_max = 1.5 * velocity_bound_upper(gp.t2, p);
  bool same = true;
  for (const auto& [U, g] : {std::pair<const PotentialField*, GridSpec>{&acc, ga}, {per.get(), gp}}) {
    const ValueTable a = solve_dp(*U, g, [](double) { return 0.0; }, p, Execution::Serial);
    const ValueTable b = solve_dp(*U, g, [](double) { return 0.0; }, p, Execution::Parallel);
    const ValueTable c = solve_dp_reference(*U, g, [](double) { return 0.0; }, p);
    same = same && a.slices.size() == b.slices.size() && a.slices.size() == c.slices.size();
    for (std::size_t k = 0; same && k < a.slices.size(); ++k) {
      same = a.slices[k].lo == b.slices[k].lo && a.slices[k].values == b.slices[k].values &&
             a.slices[k].back == b.slices[k].back && a.slices[k].lo == c.slices[k].lo &&
             a.slices[k].values == c.slices[k].values && a.slices[k].back == c.slices[k].back;
    }
  }
  s.hard("serial, parallel and reference DP agree bitwise", same, same ? 0.0 : 1.0, 0.0,
         "accelerating potential T = 8 and periodic potential T = 20");
}

// ---------------------------------------------------------------------------

struct SweepTotals {
  std::size_t trajectories = 0;
  double w_margin = kInf;
  double progression = kInf;
  std::size_t pairs = 0;
  double bracket = kInf;
  std::size_t brackets = 0;
  double refine_gain = kInf;
};

void minimizer_checks(Suite& s, const ExperimentConfig& cfg) {
  const ModelParams p = cfg.params();
  SweepTotals tot;
  std::mt19937_64 rng(29);
  for (int i = 0; i < cfg.random_potentials; ++i) {
    for (double T : cfg.horizons) {
      const Potential U = random_potential(1000 + i, sweep_profiles(rng, cfg.random_profiles), cfg.correlation_time, 0.0, T, p.C());
      GridSpec g;
      g.dx = cfg.grid.dx_max;
      g.dt = g.dx / cfg.grid.speed_quantum;
      g.x_min = -cfg.half_width;
      g.x_max = cfg.half_width;
      g.t1 = 0.0;
      g.t2 = T;
      g.v_max = cfg.grid.v_max_factor * velocity_bound_upper(T, p);
      const SolveOutcome out = solve_minimizers(*U, g, cfg.x_targets, p, cfg.grid);
      for (const auto& m : out.minimizers) {
        ++tot.trajectories;
        tot.w_margin = std::min(tot.w_margin, average_velocity_margin(m.dp, p) + 2.0 * g.dx / T);
        if (p.beta() == 2.0) {
          const auto pr = progression_margin(m.dp, p, g.dx);
          if (pr.pairs > 0) tot.progression = std::min(tot.progression, pr.worst_margin);
          tot.pairs += pr.pairs;
        }
        if (m.velocity.bracket_valid) {
          const double v = m.velocity.last_segment;
          tot.bracket = std::min({tot.bracket, v - m.velocity.bracket_lo, m.velocity.bracket_hi - v});
          ++tot.brackets;
        }
        tot.refine_gain = std::min(tot.refine_gain, m.refined.initial_action - m.refined.final_action);
      }
    }
  }
  s.hard("w(T) <= (C beta)^(1/beta) on random potentials", tot.w_margin >= 0.0, tot.w_margin, 0.0,
         std::to_string(tot.trajectories) + " trajectories; margin includes 2dx/T");
  if (p.beta() == 2.0) {
    const double m = tot.pairs ? tot.progression : 0.0;
    s.hard("beta=2 progression inequality on random potentials", m >= 0.0, m, 0.0, std::to_string(tot.pairs) + " pairs");
  }
  const double b = tot.brackets ? tot.bracket : 0.0;
  s.hard("last-segment speed inside the terminal bracket", b >= 0.0, b, 0.0, std::to_string(tot.brackets) + " licensed brackets");
  s.hard("refine never increases the action", tot.refine_gain >= 0.0, tot.refine_gain, 0.0, "min over trajectories of initial - final");
}

// ---------------------------------------------------------------------------

void kernel_checks(Suite& s, const ExperimentConfig& cfg) {
  const ModelParams p = cfg.params();
  std::mt19937_64 rng(41);
  const Potential rnd = random_potential(5, sweep_profiles(rng, 3), 2.0, 0.0, 4.0, p.C());

  GridSpec one;
  one.dx = 0.25;
  one.dt = 0.5;
  one.x_min = -4.0;
  one.x_max = 4.0;
  one.t1 = 0.0;
  one.t2 = 0.5;
  one.v_max = 8.0;
  const BoundsDefect z = kernel_bounds_defect(kernel(ZeroPotential(), one, p), p);
  const BoundsDefect c = kernel_bounds_defect(kernel(ConstantPotential(p.C()), one, p), p);
  const BoundsDefect r = kernel_bounds_defect(kernel(*rnd, one, p), p);
  s.hard("one-step kernel, U == 0: A <= jensen", z.upper == 0.0, z.upper, 0.0, "exact");
  s.hard("one-step kernel, U == C: A >= jensen - C tau", c.lower == 0.0, c.lower, 0.0, "exact");
  s.hard("one-step kernel sandwich, random U", std::max(r.lower, r.upper) <= 1e-12, std::max(r.lower, r.upper), 1e-12, "");

  const KernelDeviation zd = zero_kernel_deviation(p, 5.0, 200, 1.0, 10, 6.0);
  s.hard("zero-potential kernel vs closed form", zd.deviation <= 2.0 * zd.dx * zd.slope, zd.deviation,
         2.0 * zd.dx * zd.slope, "200 nodes, 10 steps; threshold 2 dx K_loc");

  GridSpec fg;
  fg.dx = 0.2;
  fg.dt = 0.8;
  fg.x_min = -6.0;
  fg.x_max = 6.0;
  fg.t1 = 0.0;
  fg.t2 = 3.6;
  fg.v_max = 6.0;
  const FlowLevel fl = flow_level(*rnd, fg, p);
  s.hard("flow property, random potential", fl.defect <= fl.tolerance, fl.defect, fl.tolerance,
         std::to_string(fl.compared) + " entries, split off the time slices; threshold 5(dx+dt) K_loc");

  GridSpec ag = one;
  ag.t2 = 1.0;
  ag.v_max = 6.0;
  GridSpec g1 = ag, g2 = ag, g3 = ag;
  g1.t1 = 0.0; g1.t2 = 1.0;
  g2.t1 = 1.0; g2.t2 = 2.0;
  g3.t1 = 2.0; g3.t2 = 3.0;
  const Kernel k1 = kernel(*rnd, g1, p), k2 = kernel(*rnd, g2, p), k3 = kernel(*rnd, g3, p);
  const Kernel left = minplus_compose(minplus_compose(k1, k2), k3);
  const Kernel right = minplus_compose(k1, minplus_compose(k2, k3));
  double assoc = 0.0;
  bool pattern = true;
  for (std::size_t i = 0; i < left.num_sources(); ++i) {
    for (std::size_t j = 0; j < left.num_targets(); ++j) {
      const auto a = left.at(i, j), b = right.at(i, j);
      if (a.has_value() != b.has_value()) pattern = false;
      if (a && b) assoc = std::max(assoc, std::abs(*a - *b));
    }
  }
  s.hard("tropical associativity", pattern && assoc <= 1e-12, assoc, 1e-12, "");

  const ReflectedPotential refl(rnd);
  GridSpec sg = one;
  sg.t2 = 2.0;
  const Kernel ka = kernel(*rnd, sg, p), kb = kernel(refl, sg, p);
  const std::size_t n = ka.num_sources();
  double rdef = 0.0;
  bool rpattern = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto a = ka.at(i, j), b = kb.at(n - 1 - i, n - 1 - j);
      if (a.has_value() != b.has_value()) rpattern = false;
      if (a && b) rdef = std::max(rdef, std::abs(*a - *b));
    }
  }
  s.hard("kernel reflection symmetry", rpattern && rdef == 0.0, rdef, 0.0, "exact on a symmetric dyadic grid");

  const Potential per = periodic_potential(cfg.periodic_profile, cfg.period, Modulation::RaisedCosine);
  const OperatorSuite ops = iterate_operator(*per, cfg.period, cfg.half_width, 0.1, cfg.operator_steps, p);
  s.hard("iterated operator keeps (C)-domination", ops.worst_domination <= ops.slack, ops.worst_domination, ops.slack,
         std::to_string(ops.steps) + " period steps");
  s.hard("Lipschitz-in-the-large constant stays bounded", ops.max_lipschitz <= ops.lipschitz_bound + ops.slack,
         ops.max_lipschitz, ops.lipschitz_bound + ops.slack, "");
  s.hard("truncated kernel gives the same operator", ops.truncation_defect <= 1e-12, ops.truncation_defect, 1e-12,
         "K = Lipschitz-in-the-large constant of the input");
}

// ---------------------------------------------------------------------------

RefineOptions converged_refine() {
  RefineOptions o;
  o.passes = 20000;
  o.rel_tol = 1e-13;
  return o;
}

json trajectory_checks(Suite& s, const ExperimentConfig& cfg) {
  const ModelParams p = cfg.params();
  json rec = json::object();

  const Potential aut = periodic_potential(Profile{Profile::Kind::Cosine, p.C(), 4.0, 0.0}, 1.0, Modulation::Constant);
  GridSpec g;
  g.dx = 0.02;
  g.dt = 0.1;
  g.x_min = -4.0;
  g.x_max = 4.0;
  g.t1 = 0.0;
  g.t2 = 5.0;
  g.v_max = 10.0;
  const auto e = refined_levels(*aut, g, {1.0}, p, cfg.resolution_levels, converged_refine());
  std::vector<double> de;
  for (const auto& l : e) de.push_back(l.energy_variation);
  const auto eo = observed_orders(de);
  const double emin = *std::min_element(eo.begin(), eo.end());
  s.hard("energy variation <= 0.05 C at the base resolution", de.front() <= 0.05 * p.C(), de.front(), 0.05 * p.C(),
         "autonomous cosine, T = 5, dt = 0.1");
  s.hard("energy variation decays at least at first order", emin >= 0.7, emin, 0.7,
         "min observed order over two dt halvings");
  rec["energy"] = {{"values", de}, {"orders", eo}};

  const double T = 5.0;
  const AcceleratingPotential acc(0.0, 0.0, T, K_of(p), p.C(), p.beta());
  GridSpec ag = g;
  ag.x_min = -acc.curve().value(T) - 4.0;
  ag.x_max = 2.0;
  ag.v_max = 30.0;
  const auto el = refined_levels(acc, ag, {-2.5, -2.0, -1.5, -1.0, -0.5}, p, cfg.resolution_levels, converged_refine());
  std::vector<double> c, v0;
  for (const auto& l : el) {
    c.push_back(l.el_residual / l.dt);
    v0.push_back(l.initial_speed);
  }
  const double cmax = *std::max_element(c.begin(), c.end()), cmin = *std::min_element(c.begin(), c.end());
  s.hard("Euler-Lagrange residual <= c dt with c stable within +-50%", cmax <= 3.0 * cmin, cmax / cmin, 3.0,
         "c = residual/dt per resolution; stable means max/min <= 1.5/0.5");
  const auto vo = observed_orders(v0);
  const double vmin = *std::min_element(vo.begin(), vo.end());
  s.hard("free-endpoint initial speed decays at first order", vmin >= 0.7, vmin, 0.7, "min observed order of |v(t1)|");
  rec["el"] = {{"c", c}, {"initial_speed", v0}, {"orders", vo}};
  return rec;
}

}  // namespace

Report run_lemma_suite(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.x_targets.empty() || cfg.horizons.empty()) throw ConfigError("lemma-suite needs x_targets and horizons");
  Report rep;
  rep.kind = "lemma-suite";
  rep.config = cfg.to_json();
  Suite s(rep);
  s.timed("pace", [&] { pace_checks(s); });
  s.timed("pace-s2", [&] { rep.extra["s2"] = s2_checks(s); });
  s.timed("potentials", [&] { potential_checks(s, cfg); });
  s.timed("lagrangian", [&] { lagrangian_checks(s); });
  s.timed("dp", [&] { dp_checks(s, cfg); });
  s.timed("minimizers", [&] { minimizer_checks(s, cfg); });
  s.timed("kernels", [&] { kernel_checks(s, cfg); });
  if (cfg.resolution_levels > 0) {
    s.timed("trajectories", [&] { rep.extra["resolution"] = trajectory_checks(s, cfg); });
  }
  return rep;
}

}  // namespace hjlab
