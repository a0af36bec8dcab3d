#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <omp.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "hjlab/errors.hpp"
#include "hjlab/experiments.hpp"
#include "hjlab/kernel.hpp"

using namespace hjlab;
using nlohmann::json;

namespace {

struct Globals {
  std::string config;
  std::string out_dir;
  std::string profile = "ci";
  int threads = 0;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  return out;
}

void apply_threads(int threads) {
  if (threads < 0) throw ConfigError("--threads must be >= 0");
  if (threads > 0) omp_set_num_threads(threads);
}

int run_kind(const std::string& kind, const Globals& g) {
  ExperimentConfig cfg = default_config(kind, g.profile);
  if (!g.config.empty()) cfg = ExperimentConfig::from_json(read_json_file(g.config), cfg);
  cfg.kind = kind;
  if (!g.out_dir.empty()) cfg.out_dir = g.out_dir;
  if (g.threads != 0) cfg.threads = g.threads;
  cfg.validate();
  apply_threads(cfg.threads);

  const Report rep = run_experiment(cfg);
  const auto files = emit(rep, cfg.out_dir, kind);
  for (const auto& c : rep.checks) {
    std::printf("%-5s %s%s  measured=%.6g threshold=%.6g  %s\n", c.pass ? "PASS" : "FAIL", c.hard ? "" : "(advisory) ",
                c.name.c_str(), c.measured, c.threshold, c.detail.c_str());
  }
  for (const auto& f : files) std::printf("wrote %s\n", f.string().c_str());
  std::printf("%s\n", rep.passed() ? "all hard checks passed" : "hard check failure");
  return rep.passed() ? 0 : 1;
}

struct PotentialArgs {
  std::string kind = "accelerating";
  double beta = 2.0, C = 1.0;
  double y = 0.0, t1 = 0.0, t2 = 100.0;
  std::optional<double> K;
  double value = 1.0;
  double epsilon = 0.25, Tbar = 3.0, cap = 200.0;
  int n_max = 2;
  double period = 1.0;
  std::string modulation = "raised_cosine";
  double amplitude = 1.0, length = 4.0, center = 0.0;
  std::uint64_t seed = 1;
  double correlation_time = 5.0;
  std::string out;
};

Potential build_potential(const PotentialArgs& a) {
  const ModelParams p(a.beta, a.C);
  const double K = a.K.value_or(velocity_bound_lower(std::exp(1.0), p).K2);
  const Profile prof{Profile::Kind::Cosine, a.amplitude, a.length, a.center};
  if (a.kind == "zero") return make_zero_potential();
  if (a.kind == "constant") return make_constant_potential(a.value);
  if (a.kind == "accelerating") return accelerating_potential(a.y, a.t1, a.t2, K, a.C, a.beta);
  if (a.kind == "glued") return glued_potential(glued_schedule(a.epsilon, a.Tbar, K, a.C, a.beta, a.n_max, a.cap));
  if (a.kind == "periodic" || a.kind == "random") {
    if (a.kind == "random") return random_potential(a.seed, {prof}, a.correlation_time, a.t1, a.t2, a.C);
    const json j = {{"kind", "periodic"}, {"profile", prof.to_json()}, {"period", a.period}, {"modulation", a.modulation}};
    return potential_from_json(j);
  }
  throw ConfigError("unknown potential kind '" + a.kind + "'");
}

struct GridArgs {
  std::string potential;
  double x = 0.0;
  double t1 = 0.0, t2 = 10.0;
  double dx = 0.05, dt = 0.2;
  std::optional<double> x_min, x_max, v_max;
  double beta = 2.0, C = 1.0;
  std::string out;
};

GridSpec make_grid(const GridArgs& a, const ModelParams& p, double center) {
  GridSpec g;
  g.dx = a.dx;
  g.dt = a.dt;
  g.t1 = a.t1;
  g.t2 = a.t2;
  g.x_min = a.x_min.value_or(center - 10.0);
  g.x_max = a.x_max.value_or(center + 10.0);
  const double T = a.t2 - a.t1;
  g.v_max = a.v_max.value_or(1.5 * velocity_bound_upper(std::max(T, std::exp(1.0)), p));
  g.validate();
  return g;
}

void add_grid_options(CLI::App* sub, GridArgs& a) {
  sub->add_option("--potential", a.potential, "Potential spec (JSON)")->required();
  sub->add_option("--t1", a.t1, "Initial time");
  sub->add_option("--t2", a.t2, "Final time");
  sub->add_option("--dx", a.dx, "Space step");
  sub->add_option("--dt", a.dt, "Time step");
  sub->add_option("--x-min", a.x_min, "Left end of the spatial grid");
  sub->add_option("--x-max", a.x_max, "Right end of the spatial grid");
  sub->add_option("--v-max", a.v_max, "Largest admissible grid speed");
  sub->add_option("--beta", a.beta, "Lagrangian exponent");
  sub->add_option("--C", a.C, "Potential bound");
  sub->add_option("--out", a.out, "Output CSV")->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for minimizer blow-up in time-dependent Lagrangian systems"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "Experiment config (JSON)")->envname("HJLAB_CONFIG");
  app.add_option("--out-dir", g.out_dir, "Output directory")->envname("HJLAB_OUT_DIR");
  app.add_option("--profile", g.profile, "Experiment profile")
      ->check(CLI::IsMember({"ci", "large"}))
      ->envname("HJLAB_PROFILE");
  app.add_option("--threads", g.threads, "OpenMP threads (0 = auto)")->envname("HJLAB_THREADS");

  PotentialArgs pa;
  auto* pot = app.add_subcommand("potential", "Build a potential and write its JSON spec");
  pot->add_option("--kind", pa.kind, "zero|constant|accelerating|glued|periodic|random");
  pot->add_option("--beta", pa.beta, "Lagrangian exponent");
  pot->add_option("--C", pa.C, "Potential bound");
  pot->add_option("--y", pa.y, "Step position (accelerating)");
  pot->add_option("--t1", pa.t1, "Start of the time range");
  pot->add_option("--t2", pa.t2, "End of the time range");
  pot->add_option("--K", pa.K, "Pace constant (default (C beta / 5)^(1/beta))");
  pot->add_option("--value", pa.value, "Value (constant)");
  pot->add_option("--epsilon", pa.epsilon, "Schedule exponent (glued)");
  pot->add_option("--Tbar", pa.Tbar, "First stage length (glued)");
  pot->add_option("--n-max", pa.n_max, "Number of stages (glued)");
  pot->add_option("--cap", pa.cap, "Stage length cap (glued)");
  pot->add_option("--period", pa.period, "Period (periodic)");
  pot->add_option("--modulation", pa.modulation, "raised_cosine|constant (periodic)");
  pot->add_option("--amplitude", pa.amplitude, "Cosine profile amplitude");
  pot->add_option("--length", pa.length, "Cosine profile wavelength");
  pot->add_option("--center", pa.center, "Cosine profile phase");
  pot->add_option("--seed", pa.seed, "Seed (random)");
  pot->add_option("--correlation-time", pa.correlation_time, "Correlation time (random)");
  pot->add_option("--out", pa.out, "Output JSON (default stdout)");

  GridArgs ma;
  int passes = 50;
  auto* mini = app.add_subcommand("minimize", "Compute one minimizer ending at x and write it as CSV");
  add_grid_options(mini, ma);
  mini->add_option("--x", ma.x, "Terminal position")->required();
  mini->add_option("--refine-passes", passes, "Coordinate-descent passes (0 = grid path only)");

  GridArgs ka;
  auto* kern = app.add_subcommand("kernel", "Tabulate the action kernel as y,x,A triplets");
  add_grid_options(kern, ka);

  GridArgs ea;
  std::string initial;
  auto* evo = app.add_subcommand("evolve", "Apply the Lax-Oleinik operator to a grid function");
  evo->add_option("--potential", ea.potential, "Potential spec (JSON)")->required();
  evo->add_option("--initial", initial, "Initial grid function CSV (x,S) on a uniform grid")->required();
  evo->add_option("--t1", ea.t1, "Initial time");
  evo->add_option("--t2", ea.t2, "Final time");
  evo->add_option("--dt", ea.dt, "Time step");
  evo->add_option("--v-max", ea.v_max, "Largest admissible grid speed");
  evo->add_option("--beta", ea.beta, "Lagrangian exponent");
  evo->add_option("--C", ea.C, "Potential bound");
  evo->add_option("--out", ea.out, "Output CSV")->required();

  const std::vector<std::pair<std::string, std::string>> experiments = {
      {"scaling", "scaling"},
      {"periodic-control", "periodic-control"},
      {"glued-demo", "glued-demo"},
      {"check-lemmas", "lemma-suite"},
      {"conjecture-probe", "conjecture-probe"}};
  std::vector<CLI::App*> exp_cmds;
  for (const auto& [name, kind] : experiments) {
    exp_cmds.push_back(app.add_subcommand(name, "Run the " + kind + " experiment"));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    apply_threads(g.threads);
    if (*pot) {
      const Potential U = build_potential(pa);
      const std::string text = U->spec().dump(2) + "\n";
      if (pa.out.empty()) {
        std::cout << text;
      } else {
        open_out(pa.out) << text;
      }
      return 0;
    }
    if (*mini) {
      const ModelParams p(ma.beta, ma.C);
      const Potential U = potential_from_json(read_json_file(ma.potential));
      const GridSpec grid = make_grid(ma, p, ma.x);
      const ValueTable table = solve_dp(*U, grid, [](double) { return 0.0; }, p);
      Trajectory traj = backtrack(table, ma.x);
      if (passes > 0) {
        RefineOptions o;
        o.passes = passes;
        traj = refine(traj, *U, p, o).trajectory;
      }
      auto out = open_out(ma.out);
      write_trajectory_csv(out, traj);
      const VelocityEstimate v = terminal_velocity(traj, std::max(0.25, grid.step()), p);
      std::printf("value=%.17g terminal_speed=%.6g last_segment=%.6g boundary_argmins=%zu\n",
                  table.final_slice().at(grid.nearest_cell(ma.x)), v.speed, v.last_segment, table.boundary_argmins);
      return 0;
    }
    if (*kern) {
      const ModelParams p(ka.beta, ka.C);
      const Potential U = potential_from_json(read_json_file(ka.potential));
      const GridSpec grid = make_grid(ka, p, 0.0);
      auto out = open_out(ka.out);
      write_kernel_csv(out, kernel(*U, grid, p));
      return 0;
    }
    if (*evo) {
      const ModelParams p(ea.beta, ea.C);
      const Potential U = potential_from_json(read_json_file(ea.potential));
      std::ifstream in(initial);
      if (!in) throw ConfigError("cannot open " + initial);
      const GridFunction S = read_grid_function_csv(in);
      if (S.size() < 2) throw ConfigError("initial grid function needs at least 2 nodes");
      const double dx = (S.nodes.back() - S.nodes.front()) / static_cast<double>(S.size() - 1);
      for (std::size_t i = 0; i < S.size(); ++i) {
        if (std::abs(S.nodes[i] - (S.nodes.front() + dx * static_cast<double>(i))) > 1e-9 * std::max(1.0, dx)) {
          throw ConfigError("initial grid function must be on a uniform grid");
        }
      }
      ea.dx = dx;
      ea.x_min = S.nodes.front();
      ea.x_max = S.nodes.back();
      const GridSpec grid = make_grid(ea, p, 0.0);
      const std::vector<double> v = propagate(*U, grid, S.values, p);
      GridFunction R{S.nodes, v};
      for (double& x : R.values) {
        if (x == kInf) throw DomainError("some node is unreachable; raise --v-max");
      }
      auto out = open_out(ea.out);
      write_grid_function_csv(out, R);
      return 0;
    }
    for (std::size_t i = 0; i < exp_cmds.size(); ++i) {
      if (*exp_cmds[i]) return run_kind(experiments[i].second, g);
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
