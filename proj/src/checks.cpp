#include "hjlab/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>

#include "hjlab/errors.hpp"

namespace hjlab {

double average_velocity_margin(const Trajectory& traj, const ModelParams& p) {
  return std::pow(p.C() * p.beta(), 1.0 / p.beta()) - average_speed(traj, traj.span());
}

ProgressionResult progression_margin(const Trajectory& traj, const ModelParams& p, double dx,
                                     std::size_t max_windows) {
  if (!(p.C() > 0.0)) throw ConfigError("progression_margin needs C > 0");
  const auto& t = traj.times();
  const std::size_t n = traj.segments();
  // Window lengths s_k = t_N - t_{N-k}.
  std::vector<std::size_t> ks;
  if (n <= max_windows) {
    for (std::size_t k = 1; k <= n; ++k) ks.push_back(k);
  } else {
    const double r = std::pow(static_cast<double>(n), 1.0 / static_cast<double>(max_windows - 1));
    double v = 1.0;
    for (std::size_t m = 0; m < max_windows; ++m, v *= r) {
      ks.push_back(std::min(n, static_cast<std::size_t>(std::llround(v))));
    }
    ks.push_back(n);
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  }
  std::vector<double> s(ks.size()), w(ks.size());
  for (std::size_t m = 0; m < ks.size(); ++m) {
    s[m] = t[n] - t[n - ks[m]];
    w[m] = average_speed(traj, s[m]);
  }
  ProgressionResult res{kInf, 0};
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      if (!(w[a] > w[b])) continue;
      const double dw = w[a] - w[b];
      const double lhs = 1.0 + dw * dw / (2.0 * p.C());
      const double rhs = s[b] / s[a] + 4.0 * dx * (w[a] + 1.0) / (s[a] * p.C());
      res.worst_margin = std::min(res.worst_margin, rhs - lhs);
      ++res.pairs;
    }
  }
  if (res.pairs == 0) res.worst_margin = 0.0;
  return res;
}

double energy_variation(const Trajectory& traj, const PotentialField& U, const ModelParams& p) {
  const auto e = segment_energies(traj, U, p);
  const auto [lo, hi] = std::minmax_element(e.begin(), e.end());
  return *hi - *lo;
}

double max_el_residual(const Trajectory& traj, const PotentialField& U, const ModelParams& p) {
  double m = 0.0;
  for (double r : el_residual(traj, U, p)) m = std::max(m, std::abs(r));
  return m;
}

EnumerationResult enumerate_min_action(const PotentialField& U, const GridSpec& grid,
                                       const InitialValue& S0, const ModelParams& p,
                                       std::size_t target) {
  const std::size_t ncell = grid.num_cells();
  const std::size_t steps = grid.num_steps();
  const long band = static_cast<long>(grid.band());
  const double dt = grid.step();
  EnumerationResult best{kInf, {}};
  std::vector<std::size_t> path(steps + 1);

  // Accumulates in the same order as the recurrence so equal paths give equal sums.
  std::function<void(std::size_t, double)> walk = [&](std::size_t k, double acc) {
    if (k == steps) {
      if (path[k] != target) return;
      if (acc < best.value) {
        best.value = acc;
        best.path = path;
      }
      return;
    }
    const std::size_t i = path[k];
    const double kicked = acc - dt * U.eval(grid.x(i), grid.t(k));
    for (std::size_t j = 0; j < ncell; ++j) {
      const long d = std::labs(static_cast<long>(j) - static_cast<long>(i));
      if (d > band) continue;
      path[k + 1] = j;
      walk(k + 1, kicked + segment_kinetic(static_cast<double>(d) * grid.dx, dt, p));
    }
  };
  for (std::size_t i = 0; i < ncell; ++i) {
    path[0] = i;
    walk(0, S0(grid.x(i)));
  }
  return best;
}

}  // namespace hjlab
