#include <algorithm>
#include <cmath>
#include <string>

#include "hjlab/errors.hpp"
#include "hjlab/experiments.hpp"

namespace hjlab {

nlohmann::json GridPolicy::to_json() const {
  return {{"dx_max", dx_max},
          {"radius_cells", radius_cells},
          {"speed_quantum", speed_quantum},
          {"v_max_factor", v_max_factor},
          {"margin", margin},
          {"lead", lead},
          {"windowed", windowed},
          {"max_enlargements", max_enlargements},
          {"s_window", s_window},
          {"refine_passes", refine_passes},
          {"quad_points", quad_points}};
}

GridPolicy GridPolicy::from_json(const nlohmann::json& j, const GridPolicy& base) {
  GridPolicy g = base;
  g.dx_max = j.value("dx_max", g.dx_max);
  g.radius_cells = j.value("radius_cells", g.radius_cells);
  g.speed_quantum = j.value("speed_quantum", g.speed_quantum);
  g.v_max_factor = j.value("v_max_factor", g.v_max_factor);
  g.margin = j.value("margin", g.margin);
  g.lead = j.value("lead", g.lead);
  g.windowed = j.value("windowed", g.windowed);
  g.max_enlargements = j.value("max_enlargements", g.max_enlargements);
  g.s_window = j.value("s_window", g.s_window);
  g.refine_passes = j.value("refine_passes", g.refine_passes);
  g.quad_points = j.value("quad_points", g.quad_points);
  if (!(g.dx_max > 0) || !(g.radius_cells > 0) || !(g.speed_quantum > 0) || !(g.v_max_factor > 0) ||
      !(g.margin > 0) || !(g.lead >= 0) || g.max_enlargements < 0 || !(g.s_window > 0) ||
      g.refine_passes < 0 || g.quad_points < 1) {
    throw ConfigError("grid policy: parameter out of range");
  }
  return g;
}

GridSpec accelerating_grid(double T, const ModelParams& p, const GridPolicy& policy, double x_hi) {
  const LowerBound lb = velocity_bound_lower(T, p);
  const PaceCurve curve(lb.K2, T, p.beta());
  GridSpec g;
  g.dx = std::min(policy.dx_max, lb.radius / policy.radius_cells);
  g.dt = g.dx / policy.speed_quantum;
  g.t1 = 0.0;
  g.t2 = T;
  g.v_max = policy.v_max_factor * velocity_bound_upper(T, p);
  g.x_min = -curve.value(T) - 2.0 - policy.margin;
  g.x_max = x_hi + policy.margin;
  return g;
}

std::vector<double> scaling_targets(double T, const ModelParams& p, int count) {
  if (count < 1) throw ConfigError("scaling_targets: need at least one sample");
  const double half = velocity_bound_lower(T, p).radius / 2.0;
  if (count == 1) return {0.0};
  std::vector<double> xs(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) xs[static_cast<std::size_t>(i)] = -half + 2.0 * half * i / (count - 1);
  return xs;
}

SolveOutcome solve_minimizers(const PotentialField& U, const GridSpec& grid,
                              const std::vector<double>& targets, const ModelParams& p,
                              const GridPolicy& policy, std::function<double(double)> edge) {
  if (targets.empty()) throw ConfigError("solve_minimizers: no terminal targets");
  const double x_hi = *std::max_element(targets.begin(), targets.end());
  const bool windowed = edge && policy.windowed;
  double margin = policy.margin;

  SolveOutcome out;
  std::optional<ValueTable> table;
  std::vector<Trajectory> paths;
  std::optional<std::vector<double>> previous;
  for (;;) {
    GridSpec g = windowed ? comoving_window(edge, margin, x_hi, grid, policy.lead) : grid;
    bool touches = false;
    try {
      table = solve_dp(U, g, [](double) { return 0.0; }, p);
    } catch (const DomainError&) {
      if (!windowed || out.enlargements >= policy.max_enlargements) throw;
      margin *= 2.0;
      ++out.enlargements;
      previous.reset();
      continue;
    }
    paths.clear();
    std::vector<double> values;
    for (double x : targets) {
      paths.push_back(backtrack(*table, x));
      values.push_back(table->final_slice().at(g.nearest_cell(x)));
      if (!windowed) continue;
      try {
        check_window_clearance(*table, paths.back());
      } catch (const DomainError&) {
        touches = true;
      }
    }
    out.grid = g;
    if (!touches) break;
    // A contact is harmless if widening the window does not change any terminal
    // value: the edge then only selected among equal-action paths.
    if (previous) {
      bool same = true;
      for (std::size_t i = 0; i < values.size(); ++i) {
        same = same && std::abs(values[i] - (*previous)[i]) <= 1e-9 * std::max(1.0, std::abs(values[i]));
      }
      if (same) {
        out.tied_contacts = true;
        break;
      }
    }
    if (out.enlargements >= policy.max_enlargements) {
      throw DomainError("minimizer still touches the co-moving window after " +
                        std::to_string(out.enlargements) + " enlargements");
    }
    previous = std::move(values);
    margin *= 2.0;
    ++out.enlargements;
  }

  out.boundary_argmins = table->boundary_argmins;
  out.full_cells = grid.num_cells() * (grid.num_steps() + 1);
  for (const auto& s : table->slices) out.window_cells += s.values.size();

  RefineOptions ro;
  ro.passes = policy.refine_passes;
  ro.quad_points = policy.quad_points;
  const double s_window = std::max(policy.s_window, out.grid.step());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    MinimizerRecord m{targets[i], 0.0, 0.0, paths[i], {paths[i], 0, 0, 0}, {}, 0.0};
    const std::size_t cell = out.grid.nearest_cell(targets[i]);
    m.x_snapped = out.grid.x(cell);
    m.value = table->final_slice().at(cell);
    m.refined = refine(m.dp, U, p, ro);
    m.velocity = terminal_velocity(m.refined.trajectory, s_window, p);
    m.w_full = average_speed(m.dp, m.dp.span());
    out.minimizers.push_back(std::move(m));
  }
  return out;
}

}  // namespace hjlab
