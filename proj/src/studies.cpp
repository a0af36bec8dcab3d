#include "hjlab/studies.hpp"

#include <algorithm>
#include <cmath>

#include "hjlab/checks.hpp"
#include "hjlab/errors.hpp"

namespace hjlab {

KernelDeviation zero_kernel_deviation(const ModelParams& p, double half_width, std::size_t nodes,
                                      double tau, std::size_t steps, double v_max) {
  if (nodes < 2 || steps < 1) throw ConfigError("zero_kernel_deviation: need >= 2 nodes and >= 1 step");
  GridSpec g;
  g.x_min = -half_width;
  g.dx = 2.0 * half_width / static_cast<double>(nodes - 1);
  g.x_max = g.x_min + static_cast<double>(nodes - 1) * g.dx;
  g.t1 = 0.0;
  g.t2 = tau;
  g.dt = tau / static_cast<double>(steps);
  g.v_max = v_max;
  ZeroPotential zero;
  const Kernel k = kernel(zero, g, p);

  KernelDeviation d;
  d.dx = g.dx;
  d.dt = g.step();
  d.nodes = g.num_cells();
  d.slope = kernel_local_slope(k);
  for (std::size_t i = 0; i < k.num_sources(); ++i) {
    const KernelRow& r = k.row(i);
    for (std::size_t m = 0; m < r.values.size(); ++m) {
      const double disp = k.target_nodes()[r.first + m] - k.source_nodes()[i];
      d.deviation = std::max(d.deviation, std::abs(r.values[m] - jensen_lower_bound(disp, tau, p)));
      ++d.entries;
    }
  }
  return d;
}

FlowLevel flow_level(const PotentialField& U, const GridSpec& grid, const ModelParams& p) {
  GridSpec g13 = grid;
  g13.window = nullptr;
  GridSpec g12 = g13, g23 = g13;
  const double tm = 0.5 * (grid.t1 + grid.t2);
  g12.t2 = tm;
  g23.t1 = tm;
  const Kernel k13 = kernel(U, g13, p);
  const Kernel k12 = kernel(U, g12, p);
  const Kernel k23 = kernel(U, g23, p);
  const FlowDefect fd = flow_defect(k13, k12, k23);

  FlowLevel f;
  f.dx = g13.dx;
  f.dt = g13.step();
  f.defect = fd.sup;
  f.compared = fd.compared;
  f.pattern_mismatch = fd.pattern_mismatch;
  f.slope = kernel_local_slope(k13);
  f.tolerance = 5.0 * (f.dx + f.dt) * f.slope;
  return f;
}

std::vector<RefinedLevel> refined_levels(const PotentialField& U, const GridSpec& grid,
                                         const std::vector<double>& targets, const ModelParams& p,
                                         int levels, const RefineOptions& opts) {
  if (levels < 1 || targets.empty()) throw ConfigError("refined_levels: need a level and a target");
  std::vector<RefinedLevel> out;
  for (int h = 0; h < levels; ++h) {
    GridSpec g = grid;
    g.dx = grid.dx / std::ldexp(1.0, h);
    g.dt = grid.dt / std::ldexp(1.0, h);
    const ValueTable table = solve_dp(U, g, [](double) { return 0.0; }, p);
    RefinedLevel lv;
    lv.dx = g.dx;
    lv.dt = g.step();
    lv.action_gain = kInf;
    for (double x : targets) {
      const RefineResult r = refine(backtrack(table, x), U, p, opts);
      const Trajectory& t = r.trajectory;
      lv.energy_variation = std::max(lv.energy_variation, energy_variation(t, U, p));
      lv.el_residual = std::max(lv.el_residual, max_el_residual(t, U, p));
      lv.initial_speed = std::max(lv.initial_speed, std::abs(t.segment_velocity(0)));
      lv.action_gain = std::min(lv.action_gain, r.initial_action - r.final_action);
      lv.passes = std::max(lv.passes, r.passes_run);
    }
    out.push_back(lv);
  }
  return out;
}

std::vector<double> observed_orders(const std::vector<double>& values) {
  std::vector<double> o;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) o.push_back(std::log2(values[i] / values[i + 1]));
  return o;
}

OperatorSuite iterate_operator(const PotentialField& U, double tau, double half_width, double dx,
                               int steps, const ModelParams& p) {
  if (!(tau > 0.0) || !(half_width > 0.0) || !(dx > 0.0) || steps < 1) {
    throw ConfigError("iterate_operator: bad parameters");
  }
  GridSpec g;
  g.dx = dx;
  g.x_min = -half_width;
  g.x_max = half_width;
  g.t1 = 0.0;
  g.t2 = tau;
  g.dt = std::min(tau, 4.0 * dx);
  g.v_max = 2.0 * half_width / g.dt + 1.0;
  const Kernel kern = kernel(U, g, p);

  OperatorSuite s;
  s.steps = steps;
  s.slack = 5.0 * (g.dx + g.step()) * kernel_local_slope(kern);
  s.lipschitz_bound = 1.0 / (p.beta() * std::pow(tau, p.beta() - 1.0)) + p.C() * tau;
  s.worst_domination = -kInf;
  GridFunction S{kern.source_nodes(), std::vector<double>(kern.num_sources(), 0.0)};
  for (int n = 0; n < steps; ++n) {
    const double K = std::max(lipschitz_in_large_constant(S), 1e-3);
    const GridFunction next = minplus_apply(kern, S).result;
    const GridFunction trunc = minplus_apply(truncated_kernel(kern, K), S).result;
    for (std::size_t j = 0; j < next.size(); ++j) {
      s.truncation_defect = std::max(s.truncation_defect, std::abs(next.values[j] - trunc.values[j]));
    }
    S = next;
    s.worst_domination = std::max(s.worst_domination, domination_defect(S, kern, p.C()));
    s.max_lipschitz = std::max(s.max_lipschitz, lipschitz_in_large_constant(S));
  }
  return s;
}

}  // namespace hjlab
