#include "hjlab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "hjlab/checks.hpp"
#include "hjlab/errors.hpp"
#include "hjlab/kernel.hpp"
#include "hjlab/studies.hpp"

namespace hjlab {

using nlohmann::json;

namespace {

const std::vector<std::string> kKinds = {"scaling", "periodic-control", "glued-demo", "lemma-suite",
                                         "conjecture-probe"};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string label_T(const std::string& series, double T) {
  std::ostringstream os;
  os << series << "/T=" << T;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Configuration.

void ExperimentConfig::validate() const {
  if (std::find(kKinds.begin(), kKinds.end(), kind) == kKinds.end()) {
    throw ConfigError("unknown experiment kind '" + kind + "'");
  }
  if (profile != "ci" && profile != "large") throw ConfigError("profile must be ci or large");
  if (!(beta > 1.0)) throw ConfigError("beta must be > 1");
  if (!(C > 0.0)) throw ConfigError("C must be > 0");
  for (std::size_t i = 0; i < horizons.size(); ++i) {
    if (!(horizons[i] > std::exp(1.0))) throw ConfigError("every horizon must exceed e");
    if (i > 0 && !(horizons[i] > horizons[i - 1])) throw ConfigError("horizons must be strictly increasing");
  }
  if (x_samples < 1) throw ConfigError("x_samples must be >= 1");
  if (!(period > 0.0) || !(half_width > 0.0)) throw ConfigError("period and half_width must be > 0");
  if (operator_steps < 1) throw ConfigError("operator_steps must be >= 1");
  if (n_max < 1) throw ConfigError("n_max must be >= 1");
  if (!(cap > 1.0)) throw ConfigError("cap must be > 1");
  if (!(correlation_time > 0.0) || random_profiles < 1) throw ConfigError("bad random potential parameters");
  if (kind == "conjecture-probe" && seeds.size() < 5) throw ConfigError("conjecture-probe needs at least 5 seeds");
  if (random_potentials < 1 || toy_instances < 1) throw ConfigError("lemma suite counts must be >= 1");
  if (resolution_levels == 1 || resolution_levels < 0) throw ConfigError("resolution_levels must be 0 or >= 2");
  if (threads < 0) throw ConfigError("threads must be >= 0");
  for (double x : x_targets) {
    if (!(std::abs(x) < half_width)) throw ConfigError("x_targets must lie inside the spatial domain");
  }
}

json ExperimentConfig::to_json() const {
  return {{"kind", kind},
          {"profile", profile},
          {"beta", beta},
          {"C", C},
          {"horizons", horizons},
          {"grid", grid.to_json()},
          {"seeds", seeds},
          {"x_samples", x_samples},
          {"x_targets", x_targets},
          {"periodic_profile", periodic_profile.to_json()},
          {"period", period},
          {"half_width", half_width},
          {"operator_steps", operator_steps},
          {"epsilon", epsilon},
          {"Tbar", Tbar},
          {"n_max", n_max},
          {"cap", cap},
          {"correlation_time", correlation_time},
          {"random_profiles", random_profiles},
          {"random_potentials", random_potentials},
          {"toy_instances", toy_instances},
          {"resolution_levels", resolution_levels},
          {"out_dir", out_dir},
          {"threads", threads}};
}

ExperimentConfig ExperimentConfig::from_json(const json& j, const ExperimentConfig& base) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::vector<std::string> known = {
      "kind", "profile", "beta", "C", "horizons", "grid", "seeds", "x_samples", "x_targets",
      "periodic_profile", "period", "half_width", "operator_steps", "epsilon", "Tbar", "n_max",
      "cap", "correlation_time", "random_profiles", "random_potentials", "toy_instances", "resolution_levels",
      "out_dir", "threads"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  try {
    ExperimentConfig c = base;
    c.kind = j.value("kind", c.kind);
    c.profile = j.value("profile", c.profile);
    c.beta = j.value("beta", c.beta);
    c.C = j.value("C", c.C);
    c.horizons = j.value("horizons", c.horizons);
    if (j.contains("grid")) c.grid = GridPolicy::from_json(j.at("grid"), c.grid);
    c.seeds = j.value("seeds", c.seeds);
    c.x_samples = j.value("x_samples", c.x_samples);
    c.x_targets = j.value("x_targets", c.x_targets);
    if (j.contains("periodic_profile")) c.periodic_profile = Profile::from_json(j.at("periodic_profile"));
    c.period = j.value("period", c.period);
    c.half_width = j.value("half_width", c.half_width);
    c.operator_steps = j.value("operator_steps", c.operator_steps);
    c.epsilon = j.value("epsilon", c.epsilon);
    c.Tbar = j.value("Tbar", c.Tbar);
    c.n_max = j.value("n_max", c.n_max);
    c.cap = j.value("cap", c.cap);
    c.correlation_time = j.value("correlation_time", c.correlation_time);
    c.random_profiles = j.value("random_profiles", c.random_profiles);
    c.random_potentials = j.value("random_potentials", c.random_potentials);
    c.toy_instances = j.value("toy_instances", c.toy_instances);
    c.resolution_levels = j.value("resolution_levels", c.resolution_levels);
    c.out_dir = j.value("out_dir", c.out_dir);
    c.threads = j.value("threads", c.threads);
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

ExperimentConfig default_config(const std::string& kind, const std::string& profile) {
  ExperimentConfig c;
  c.kind = kind;
  c.profile = profile;
  const bool large = profile == "large";
  if (kind == "scaling") {
    c.horizons = large ? std::vector<double>{50, 200, 1000, 10000} : std::vector<double>{50, 200, 1000};
  } else if (kind == "periodic-control") {
    c.horizons = {10, 100, 1000};
    if (large) c.operator_steps = 50;
    c.x_targets = {-1.5, -0.5, 0.5, 1.5, 2.5};
  } else if (kind == "glued-demo") {
    c.n_max = large ? 3 : 2;
    c.cap = large ? 1000.0 : 200.0;
  } else if (kind == "conjecture-probe") {
    c.horizons = large ? std::vector<double>{10, 100, 1000} : std::vector<double>{10, 30, 100};
    c.seeds = {1, 2, 3, 4, 5};
    c.x_targets = {-1.5, -0.5, 0.5, 1.5, 2.5};
  } else if (kind == "lemma-suite") {
    c.horizons = {10, 30};
    c.x_targets = {-1.5, -0.5, 0.5, 1.5};
    c.half_width = 6.0;
    if (large) c.random_potentials = 200;
  } else {
    throw ConfigError("unknown experiment kind '" + kind + "'");
  }
  c.validate();
  return c;
}

// ---------------------------------------------------------------------------
// Fits and onsets.

PowerFit fit_power_law(const std::vector<double>& horizons, const std::vector<double>& speeds) {
  PowerFit f;
  if (horizons.size() != speeds.size()) throw ConfigError("fit_power_law: length mismatch");
  if (horizons.size() < 3) return f;
  if (std::log10(horizons.back() / horizons.front()) < 1.3 - 1e-12) return f;
  std::vector<double> X, Y;
  for (std::size_t i = 0; i < horizons.size(); ++i) {
    if (!(speeds[i] > 0.0) || !(horizons[i] > std::exp(1.0))) return f;
    X.push_back(std::log(std::log(horizons[i])));
    Y.push_back(std::log(speeds[i]));
  }
  const double n = static_cast<double>(X.size());
  const double mx = std::accumulate(X.begin(), X.end(), 0.0) / n;
  const double my = std::accumulate(Y.begin(), Y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    sxx += (X[i] - mx) * (X[i] - mx);
    sxy += (X[i] - mx) * (Y[i] - my);
  }
  f.valid = true;
  f.exponent = sxy / sxx;
  const double intercept = my - f.exponent * mx;
  f.amplitude = std::exp(intercept);
  for (std::size_t i = 0; i < X.size(); ++i) f.residuals.push_back(Y[i] - (intercept + f.exponent * X[i]));
  return f;
}

std::optional<double> discover_onset(const std::vector<HorizonRecord>& records) {
  std::optional<double> onset;
  for (auto it = records.rbegin(); it != records.rend(); ++it) {
    if (it->speed >= it->lower_bound - it->slack) {
      onset = it->T;
    } else {
      break;
    }
  }
  return onset;
}

// ---------------------------------------------------------------------------
// Shared pieces.

namespace {

struct Sweep {
  double worst_w_margin = kInf;  // (C beta)^(1/beta) - w + 2dx/T, minimum
  std::size_t trajectories = 0;
  double worst_progression = kInf;
  std::size_t progression_pairs = 0;
  double worst_bracket = kInf;  // distance of last_segment inside the bracket, minimum
  std::size_t brackets = 0;

  void add(const SolveOutcome& out, const ModelParams& p) {
    const double dx = out.grid.dx;
    for (const auto& m : out.minimizers) {
      worst_w_margin = std::min(worst_w_margin, average_velocity_margin(m.dp, p) + 2.0 * dx / m.dp.span());
      ++trajectories;
      if (p.beta() == 2.0) {
        const auto pr = progression_margin(m.dp, p, dx);
        if (pr.pairs > 0) worst_progression = std::min(worst_progression, pr.worst_margin);
        progression_pairs += pr.pairs;
      }
      if (m.velocity.bracket_valid) {
        const double v = m.velocity.last_segment;
        worst_bracket = std::min({worst_bracket, v - m.velocity.bracket_lo, m.velocity.bracket_hi - v});
        ++brackets;
      }
    }
  }
  void append_checks(std::vector<Check>& checks, const ModelParams& p) const {
    checks.push_back(Check{"average velocity w(T) <= (C beta)^(1/beta)", true, worst_w_margin >= 0.0,
                           worst_w_margin, 0.0,
                           std::to_string(trajectories) + " trajectories; margin includes 2dx/T snapping slack"});
    if (p.beta() == 2.0) {
      const double m = progression_pairs ? worst_progression : 0.0;
      checks.push_back(Check{"beta=2 progression inequality", true, m >= 0.0, m, 0.0,
                             std::to_string(progression_pairs) + " window pairs with w(s1) > w(s2)"});
    }
    const double b = brackets ? worst_bracket : 0.0;
    checks.push_back(Check{"last-segment speed inside the terminal bracket", true, b >= 0.0, b, 0.0,
                           std::to_string(brackets) + " licensed brackets"});
  }
};

HorizonRecord make_record(double T, const SolveOutcome& out, const GridPolicy& pol, bool use_max) {
  HorizonRecord r;
  r.T = T;
  r.dx = out.grid.dx;
  r.dt = out.grid.step();
  r.v_max = out.grid.v_max;
  r.window_cells = out.window_cells;
  r.full_cells = out.full_cells;
  r.boundary_argmins = out.boundary_argmins;
  r.enlargements = out.enlargements;
  r.tied_contacts = out.tied_contacts;
  r.slack = 2.0 * r.dx / std::max(pol.s_window, r.dt);
  r.speed = use_max ? 0.0 : kInf;
  for (const auto& m : out.minimizers) {
    SampleRecord s;
    s.x = m.x_target;
    s.speed = m.velocity.speed;
    s.last_segment = m.velocity.last_segment;
    s.bracket_lo = m.velocity.bracket_lo;
    s.bracket_hi = m.velocity.bracket_hi;
    s.bracket_valid = m.velocity.bracket_valid;
    s.w_full = m.w_full;
    r.samples.push_back(s);
    r.speed = use_max ? std::max(r.speed, s.speed) : std::min(r.speed, s.speed);
  }
  return r;
}

GridSpec box_grid(double half_width, double t1, double t2, double v_max, const GridPolicy& pol) {
  GridSpec g;
  g.dx = pol.dx_max;
  g.dt = g.dx / pol.speed_quantum;
  g.x_min = -half_width;
  g.x_max = half_width;
  g.t1 = t1;
  g.t2 = t2;
  g.v_max = v_max;
  return g;
}

std::size_t total_boundary_argmins(const Series& s) {
  std::size_t n = 0;
  for (const auto& r : s.records) n += r.boundary_argmins;
  return n;
}

}  // namespace

// ---------------------------------------------------------------------------

Report run_scaling(const ExperimentConfig& cfg) {
  cfg.validate();
  const ModelParams p = cfg.params();
  Report rep;
  rep.kind = "scaling";
  rep.config = cfg.to_json();
  Series ser;
  ser.label = "accelerating";
  Sweep sweep;

  for (double T : cfg.horizons) {
    const auto t0 = std::chrono::steady_clock::now();
    const LowerBound lb = velocity_bound_lower(T, p);
    const auto targets = scaling_targets(T, p, cfg.x_samples);
    const GridSpec grid = accelerating_grid(T, p, cfg.grid, targets.back());
    auto U = std::make_shared<AcceleratingPotential>(0.0, 0.0, T, lb.K2, p.C(), p.beta());
    const auto out = solve_minimizers(*U, grid, targets, p, cfg.grid, [U](double t) { return U->edge(t); });
    HorizonRecord rec = make_record(T, out, cfg.grid, false);
    rec.lower_bound = lb.speed;
    rec.upper_bound = velocity_bound_upper(T, p);
    ser.records.push_back(rec);
    sweep.add(out, p);
    rep.timings.emplace_back(label_T(ser.label, T), seconds_since(t0));
  }

  std::vector<double> Ts, vs;
  for (const auto& r : ser.records) {
    Ts.push_back(r.T);
    vs.push_back(r.speed);
  }
  ser.fit = fit_power_law(Ts, vs);
  ser.onset = discover_onset(ser.records);

  double min_step = kInf;
  for (std::size_t i = 1; i < vs.size(); ++i) min_step = std::min(min_step, vs[i] - vs[i - 1]);
  if (vs.size() < 2) min_step = 0.0;
  rep.checks.push_back(Check{"v(T) strictly increasing", true, vs.size() < 2 || min_step > 0.0, min_step, 0.0,
                             "smallest increment between consecutive horizons"});

  double worst_lower = kInf;
  for (const auto& r : ser.records) worst_lower = std::min(worst_lower, r.speed - (r.lower_bound - r.slack));
  rep.checks.push_back(Check{"lower bound holds past the onset", true, ser.onset.has_value() || Ts.empty(),
                             ser.onset.value_or(std::nan("")), 0.0,
                             "measured = onset horizon; worst margin over all horizons " + std::to_string(worst_lower)});

  const double target = 2.0 / p.beta();
  if (ser.fit.valid) {
    const double rel = ser.fit.exponent / target;
    rep.checks.push_back(Check{"fitted exponent within [0.8, 1.2] x 2/beta", true, rel >= 0.8 && rel <= 1.2, rel,
                               0.8, "p = " + std::to_string(ser.fit.exponent) + ", a = " + std::to_string(ser.fit.amplitude)});
  } else {
    rep.checks.push_back(Check{"fitted exponent within [0.8, 1.2] x 2/beta", false, true, std::nan(""), 0.8,
                               "fit suppressed: fewer than 3 horizons or under 1.3 decades of T"});
  }

  double worst_upper = kInf;
  std::optional<double> upper_onset;
  for (auto it = ser.records.rbegin(); it != ser.records.rend(); ++it) {
    if (it->speed <= it->upper_bound) upper_onset = it->T; else break;
  }
  for (const auto& r : ser.records) worst_upper = std::min(worst_upper, r.upper_bound - r.speed);
  rep.checks.push_back(Check{"upper bound (advisory, threshold term omitted)", false, worst_upper >= 0.0,
                             Ts.empty() ? 0.0 : worst_upper, 0.0,
                             upper_onset ? "holds from T = " + std::to_string(*upper_onset) : "never holds"});
  rep.checks.push_back(Check{"no argmin on the physical grid boundary", true, total_boundary_argmins(ser) == 0,
                             static_cast<double>(total_boundary_argmins(ser)), 0.0, ""});
  sweep.append_checks(rep.checks, p);
  rep.extra["K2"] = velocity_bound_lower(std::exp(1.0), p).K2;
  rep.extra["speed_aggregate"] = "min over terminal samples";
  rep.series.push_back(std::move(ser));
  return rep;
}

// ---------------------------------------------------------------------------

Report run_periodic_control(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.x_targets.empty()) throw ConfigError("periodic-control needs x_targets");
  const ModelParams p = cfg.params();
  Report rep;
  rep.kind = "periodic-control";
  rep.config = cfg.to_json();
  Sweep sweep;

  const Potential periodic = periodic_potential(cfg.periodic_profile, cfg.period, Modulation::RaisedCosine);
  const Potential autonomous = periodic_potential(cfg.periodic_profile, cfg.period, Modulation::Constant);
  if (periodic->bound() > p.C() * (1.0 + 1e-12)) throw ConfigError("periodic profile violates the bound C");

  for (const auto& [label, U] : {std::pair{std::string("periodic"), periodic}, std::pair{std::string("autonomous"), autonomous}}) {
    Series ser;
    ser.label = label;
    for (double T : cfg.horizons) {
      const auto t0 = std::chrono::steady_clock::now();
      const GridSpec g = box_grid(cfg.half_width, 0.0, T, cfg.grid.v_max_factor * velocity_bound_upper(T, p), cfg.grid);
      const auto out = solve_minimizers(*U, g, cfg.x_targets, p, cfg.grid);
      HorizonRecord rec = make_record(T, out, cfg.grid, true);
      rec.lower_bound = velocity_bound_lower(T, p).speed;
      rec.upper_bound = velocity_bound_upper(T, p);
      ser.records.push_back(rec);
      sweep.add(out, p);
      rep.timings.emplace_back(label_T(label, T), seconds_since(t0));
    }
    std::vector<double> Ts, vs;
    for (const auto& r : ser.records) {
      Ts.push_back(r.T);
      vs.push_back(r.speed);
    }
    ser.fit = fit_power_law(Ts, vs);
    rep.series.push_back(std::move(ser));
  }

  const auto& per = rep.series[0].records;
  if (per.size() >= 2) {
    const double ratio = per.back().speed / per[per.size() - 2].speed;
    rep.checks.push_back(Check{"v ratio between the two largest horizons in [0.9, 1.1]", true,
                               ratio >= 0.9 && ratio <= 1.1, ratio, 0.1,
                               "v(" + std::to_string(per.back().T) + ") / v(" + std::to_string(per[per.size() - 2].T) + ")"});
    bool increasing = true;
    for (std::size_t i = 1; i < per.size(); ++i) increasing = increasing && per[i].speed > per[i - 1].speed;
    const double growth = per.back().speed / per.front().speed;
    rep.checks.push_back(Check{"no monotone growth across horizons", true, !(increasing && growth > 1.1), growth, 1.1,
                               "fails only if v increases at every horizon and by more than 10% overall"});
  }

  const double envelope = std::pow(p.alpha() * p.C(), 1.0 / p.beta());
  double worst_env = kInf;
  for (const auto& r : rep.series[1].records) {
    for (const auto& s : r.samples) worst_env = std::min(worst_env, envelope + r.slack - s.speed);
  }
  rep.checks.push_back(Check{"autonomous speeds inside the energy envelope (alpha C)^(1/beta)", true,
                             rep.series[1].records.empty() || worst_env >= 0.0, rep.series[1].records.empty() ? 0.0 : worst_env,
                             0.0, "envelope " + std::to_string(envelope)});

  const auto t0 = std::chrono::steady_clock::now();
  const OperatorSuite ops =
      iterate_operator(*periodic, cfg.period, cfg.half_width, std::max(cfg.grid.dx_max, 0.1), cfg.operator_steps, p);
  rep.timings.emplace_back("operator-suite", seconds_since(t0));
  rep.checks.push_back(Check{"iterated operator keeps (C)-domination", true, ops.worst_domination <= ops.slack,
                             ops.worst_domination, ops.slack,
                             std::to_string(ops.steps) + " period steps; threshold 5(dx+dt) K_loc"});
  rep.checks.push_back(Check{"Lipschitz-in-the-large constant stays bounded", true,
                             ops.max_lipschitz <= ops.lipschitz_bound + ops.slack, ops.max_lipschitz,
                             ops.lipschitz_bound + ops.slack, "bound 1/(beta tau^(beta-1)) + C tau + slack"});
  std::size_t bnd = 0;
  for (const auto& s : rep.series) bnd += total_boundary_argmins(s);
  rep.checks.push_back(Check{"no argmin on the physical grid boundary", true, bnd == 0, static_cast<double>(bnd), 0.0, ""});
  sweep.append_checks(rep.checks, p);
  rep.extra["speed_aggregate"] = "max over terminal samples";
  return rep;
}

// ---------------------------------------------------------------------------

Report run_glued_demo(const ExperimentConfig& cfg) {
  cfg.validate();
  const ModelParams p = cfg.params();
  const double K = velocity_bound_lower(std::exp(1.0), p).K2;
  const GluedSchedule sched = glued_schedule(cfg.epsilon, cfg.Tbar, K, p.C(), p.beta(), cfg.n_max, cfg.cap);
  auto U = std::make_shared<GluedPotential>(sched);

  Report rep;
  rep.kind = "glued-demo";
  rep.config = cfg.to_json();
  rep.extra["label"] = "capped schedule: mechanism demonstration, not asymptotics";
  json stages = json::array();
  for (const auto& s : sched.stages) stages.push_back({{"T", s.T}, {"S", s.S}, {"X", s.X}});
  rep.extra["schedule"] = {{"stages", stages}, {"capped", sched.capped}, {"Kbar", sched.Kbar}};

  Series ser;
  ser.label = "stage";
  Sweep sweep;
  for (std::size_t n = 0; n < sched.stages.size(); ++n) {
    const auto t0 = std::chrono::steady_clock::now();
    const GluedStage& st = sched.stages[n];
    const auto targets = scaling_targets(st.T, p, cfg.x_samples);
    const LowerBound lb = velocity_bound_lower(st.T, p);
    GridSpec g;
    g.dx = std::min(cfg.grid.dx_max, lb.radius / cfg.grid.radius_cells);
    g.dt = g.dx / cfg.grid.speed_quantum;
    g.t1 = -st.S;
    g.t2 = 0.0;
    g.v_max = cfg.grid.v_max_factor * velocity_bound_upper(st.T, p);
    g.x_min = -st.X - 2.0 - cfg.grid.margin;
    g.x_max = targets.back() + cfg.grid.margin;
    const auto out = solve_minimizers(*U, g, targets, p, cfg.grid, [U](double t) { return U->edge(t); });
    HorizonRecord rec = make_record(st.T, out, cfg.grid, false);
    rec.lower_bound = lb.speed;
    rec.upper_bound = velocity_bound_upper(st.T, p);
    ser.records.push_back(rec);
    sweep.add(out, p);
    rep.timings.emplace_back("stage " + std::to_string(n + 1), seconds_since(t0));
  }

  double min_step = kInf;
  for (std::size_t i = 1; i < ser.records.size(); ++i) {
    min_step = std::min(min_step, ser.records[i].speed - ser.records[i - 1].speed);
  }
  if (ser.records.size() < 2) min_step = 0.0;
  rep.checks.push_back(Check{"terminal speed increases from stage to stage", true,
                             ser.records.size() < 2 || min_step > 0.0, min_step, 0.0,
                             "smallest stage-to-stage increase of min |gamma'(0)|"});

  double jump = 0.0;
  for (std::size_t k = 0; k + 1 < sched.stages.size(); ++k) {
    const double tb = -sched.stages[k].S;
    for (int i = 0; i < 100; ++i) {
      const double x = -sched.stages[k].X - 3.0 + (sched.stages[k].X + 4.0) * i / 99.0;
      const auto a = U->sample(x, tb - 1e-12), b = U->sample(x, tb + 1e-12);
      jump = std::max({jump, std::abs(a.value - b.value), std::abs(a.grad - b.grad)});
    }
  }
  rep.checks.push_back(Check{"field continuity at stage boundaries", true, jump <= 1e-10, jump, 1e-10,
                             "max difference of U and dU/dx at t = -S_n -+ 1e-12 over 100 x per boundary"});
  sweep.append_checks(rep.checks, p);
  rep.series.push_back(std::move(ser));
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Profile> probe_profiles(int count) {
  std::vector<Profile> out;
  for (int j = 0; j < count; ++j) {
    out.push_back(Profile{Profile::Kind::Cosine, 1.0, 2.0 + 1.7 * j, 0.37 * j});
  }
  return out;
}

}  // namespace

Report run_conjecture_probe(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.x_targets.empty()) throw ConfigError("conjecture-probe needs x_targets");
  if (cfg.horizons.empty()) throw ConfigError("conjecture-probe needs horizons");
  const ModelParams p = cfg.params();
  Report rep;
  rep.kind = "conjecture-probe";
  rep.config = cfg.to_json();
  const double Tmax = cfg.horizons.back();
  json plateau = json::object();
  Sweep sweep;

  for (std::uint64_t seed : cfg.seeds) {
    const Potential U = random_potential(seed, probe_profiles(cfg.random_profiles), cfg.correlation_time, 0.0, Tmax, p.C());
    Series ser;
    ser.label = "seed " + std::to_string(seed);
    for (double T : cfg.horizons) {
      const auto t0 = std::chrono::steady_clock::now();
      const GridSpec g = box_grid(cfg.half_width, Tmax - T, Tmax, cfg.grid.v_max_factor * velocity_bound_upper(T, p), cfg.grid);
      const auto out = solve_minimizers(*U, g, cfg.x_targets, p, cfg.grid);
      HorizonRecord rec = make_record(T, out, cfg.grid, true);
      rec.lower_bound = velocity_bound_lower(T, p).speed;
      rec.upper_bound = velocity_bound_upper(T, p);
      ser.records.push_back(rec);
      sweep.add(out, p);
      rep.timings.emplace_back(label_T(ser.label, T), seconds_since(t0));
    }
    std::vector<double> Ts, vs;
    for (const auto& r : ser.records) {
      Ts.push_back(r.T);
      vs.push_back(r.speed);
    }
    ser.fit = fit_power_law(Ts, vs);
    // v(T_max) / v(T_max / 10), taking the horizon closest to T_max / 10 in log scale.
    std::size_t ref = 0;
    for (std::size_t i = 0; i < Ts.size(); ++i) {
      if (std::abs(std::log(Ts[i] * 10.0 / Tmax)) < std::abs(std::log(Ts[ref] * 10.0 / Tmax))) ref = i;
    }
    plateau[std::to_string(seed)] = {{"statistic", vs.back() / vs[ref]}, {"reference_T", Ts[ref]}};
    rep.checks.push_back(Check{"plateau statistic, " + ser.label, false, true, vs.back() / vs[ref], 1.0,
                               "v(T_max) / v(" + std::to_string(Ts[ref]) + "); exploratory"});
    rep.series.push_back(std::move(ser));
  }
  rep.extra["plateau"] = plateau;
  rep.extra["note"] = "exploratory probe of the random-potential conjecture; no pass/fail";
  rep.extra["w_margin"] = sweep.worst_w_margin;
  return rep;
}

Report run_experiment(const ExperimentConfig& cfg) {
  if (cfg.kind == "scaling") return run_scaling(cfg);
  if (cfg.kind == "periodic-control") return run_periodic_control(cfg);
  if (cfg.kind == "glued-demo") return run_glued_demo(cfg);
  if (cfg.kind == "lemma-suite") return run_lemma_suite(cfg);
  if (cfg.kind == "conjecture-probe") return run_conjecture_probe(cfg);
  throw ConfigError("unknown experiment kind '" + cfg.kind + "'");
}

}  // namespace hjlab
