#include "hjlab/minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

#include "hjlab/errors.hpp"

namespace hjlab {

Trajectory backtrack(const ValueTable& table, double x) {
  const GridSpec& grid = table.grid;
  if (!table.complete()) throw ConfigError("backtrack: value table is incomplete");
  const std::size_t steps = grid.num_steps();
  std::size_t cell = grid.nearest_cell(x);
  if (!table.final_slice().contains(cell) || table.final_slice().at(cell) == kInf) {
    throw ConfigError("backtrack: x = " + std::to_string(x) + " is not reachable on the final slice");
  }
  std::vector<double> times(steps + 1);
  std::vector<double> positions(steps + 1);
  for (std::size_t k = steps; k > 0; --k) {
    times[k] = grid.t(k);
    positions[k] = grid.x(cell);
    const ValueSlice& s = table.slices[k];
    const auto src = s.back[cell - s.lo];
    if (src < 0) throw ConfigError("backtrack: broken backpointer chain");
    cell = static_cast<std::size_t>(src);
  }
  times[0] = grid.t(0);
  positions[0] = grid.x(cell);
  return Trajectory(std::move(times), std::move(positions));
}

// ---------------------------------------------------------------------------

namespace {

class LocalAction {
 public:
  LocalAction(const Trajectory& traj, const PotentialField& U, const ModelParams& p, int q)
      : t_(traj.times()), p_(p), q_(q) {
    slices_.reserve(traj.segments() * static_cast<std::size_t>(q));
    for (std::size_t i = 0; i < traj.segments(); ++i) {
      const double dt = t_[i + 1] - t_[i];
      for (int m = 0; m < q; ++m) {
        slices_.push_back(U.at_time(t_[i] + (m + 0.5) / q * dt));
      }
    }
  }

  double segment(std::size_t i, double xa, double xb) const {
    const double dt = t_[i + 1] - t_[i];
    double pot = 0.0;
    for (int m = 0; m < q_; ++m) {
      const double w = (m + 0.5) / q_;
      pot += slices_[i * static_cast<std::size_t>(q_) + static_cast<std::size_t>(m)](xa + w * (xb - xa)).value;
    }
    return segment_kinetic(xb - xa, dt, p_) - dt * pot / q_;
  }

  double total(const std::vector<double>& x) const {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) s += segment(i, x[i], x[i + 1]);
    return s;
  }

  // Action of the segments touching node i when it sits at xi.
  double around(const std::vector<double>& x, std::size_t i, double xi) const {
    double s = 0.0;
    if (i > 0) s += segment(i - 1, x[i - 1], xi);
    if (i + 1 < x.size()) s += segment(i, xi, x[i + 1]);
    return s;
  }

 private:
  const std::vector<double>& t_;
  ModelParams p_;
  int q_;
  std::vector<SpatialSlice> slices_;
};

}  // namespace

RefineResult refine(const Trajectory& traj, const PotentialField& U, const ModelParams& p,
                    const RefineOptions& opts) {
  if (opts.passes < 0 || opts.quad_points < 1) throw ConfigError("refine: bad options");
  Trajectory out = traj;
  auto& x = out.mutable_positions();
  const LocalAction local(out, U, p, opts.quad_points);
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);

  RefineResult res{out, 0.0, 0.0, 0};
  double current = local.total(x);
  res.initial_action = current;
  const std::size_t first = opts.free_start ? 0 : 1;
  const std::size_t last = x.size() - 2;  // terminal node is fixed

  for (int pass = 0; pass < opts.passes; ++pass) {
    for (std::size_t i = first; i <= last; ++i) {
      const double dl = i > 0 ? std::abs(x[i] - x[i - 1]) : 0.0;
      const double dr = std::abs(x[i + 1] - x[i]);
      const double h = std::max(0.5 * std::max(dl, dr), 1e-3);
      const double f0 = local.around(x, i, x[i]);

      double a = x[i] - h, b = x[i] + h;
      double c = b - golden * (b - a), d = a + golden * (b - a);
      double fc = local.around(x, i, c), fd = local.around(x, i, d);
      for (int it = 0; it < opts.golden_iterations; ++it) {
        if (fc < fd) {
          b = d;
          d = c;
          fd = fc;
          c = b - golden * (b - a);
          fc = local.around(x, i, c);
        } else {
          a = c;
          c = d;
          fc = fd;
          d = a + golden * (b - a);
          fd = local.around(x, i, d);
        }
      }
      const double cand = fc < fd ? c : d;
      const double fcand = std::min(fc, fd);
      if (fcand < f0) x[i] = cand;
    }
    const double next = local.total(x);
    ++res.passes_run;
    const double gain = current - next;
    current = std::min(current, next);
    if (gain < opts.rel_tol * std::max(1.0, std::abs(next))) break;
  }
  res.final_action = current;
  res.trajectory = std::move(out);
  return res;
}

// ---------------------------------------------------------------------------

VelocityEstimate terminal_velocity(const Trajectory& traj, double s_window, const ModelParams& p) {
  const auto& t = traj.times();
  const double last_dt = t[t.size() - 1] - t[t.size() - 2];
  if (s_window < last_dt * (1.0 - 1e-9)) {
    throw ConfigError("terminal_velocity: window shorter than one time step");
  }
  VelocityEstimate e;
  e.window = s_window;
  e.speed = average_speed(traj, s_window);
  const double inv = 1.0 / (p.beta() - 1.0);
  e.bracket_lo = std::pow(0.5, inv) * e.speed;
  e.bracket_hi = std::pow(1.5, inv) * e.speed;
  e.last_segment = std::abs(traj.segment_velocity(traj.segments() - 1));
  e.bracket_valid = e.speed > std::pow(2.0 * p.C() * s_window, inv);
  return e;
}

double upper_bound_constant(const ModelParams& p) {
  const double b = p.beta();
  return 1.0 / std::log(1.0 + std::pow(2.0, 2.0 - b) * (b - 1.0) / (3.0 * p.C()));
}

double velocity_bound_upper(double T, const ModelParams& p) {
  if (!(T > 1.0)) throw ConfigError("velocity_bound_upper requires T > 1");
  const double b = p.beta();
  const double C = p.C();
  const double Kt = upper_bound_constant(p);
  const double w = std::max({2.0 * std::pow(C * b, 1.0 / b), std::pow(2.0 * C, 1.0 / (b - 1.0)),
                             std::pow(2.0 * Kt * std::log(T) + 2.0, 2.0 / b)});
  return std::pow(1.5, 1.0 / (b - 1.0)) * w;
}

LowerBound velocity_bound_lower(double T, const ModelParams& p) {
  if (!(T > 1.0)) throw ConfigError("velocity_bound_lower requires T > 1");
  const double b = p.beta();
  LowerBound lb;
  lb.K2 = std::pow(p.C() * b / 5.0, 1.0 / b);
  const double lg = std::pow(std::log(T), 2.0 / b);
  lb.speed = lb.K2 * lg / std::pow(2.0, b / (b - 1.0));
  lb.radius = lb.K2 * lg / 2.0;
  return lb;
}

GridSpec comoving_window(std::function<double(double)> edge, double margin, double x_target,
                         const GridSpec& grid, double lead) {
  if (!(margin > 0.0)) throw ConfigError("comoving_window: margin must be > 0");
  GridSpec out = grid;
  out.window = [edge = std::move(edge), margin, x_target, lead](double t) {
    const double e = edge(t);
    return Interval{e - margin, std::min(x_target, e + lead) + margin};
  };
  return out;
}

GridSpec comoving_window(const PaceCurve& curve, double y, double margin, double x_target,
                         const GridSpec& grid, double lead) {
  const double t2 = grid.t2;
  auto edge = [curve, y, t2](double t) {
    const double s = std::clamp(t2 - t, 0.0, curve.T());
    return y - curve.value(s);
  };
  return comoving_window(edge, margin, x_target, grid, lead);
}

void check_window_clearance(const ValueTable& table, const Trajectory& traj) {
  const GridSpec& grid = table.grid;
  if (!grid.window) return;
  const std::size_t last_cell = grid.num_cells() - 1;
  const auto& xs = traj.positions();
  for (std::size_t k = 0; k < xs.size() && k < table.slices.size(); ++k) {
    const ValueSlice& s = table.slices[k];
    const std::size_t cell = grid.nearest_cell(xs[k]);
    const bool at_lo = cell == s.lo && s.lo != 0;
    const bool at_hi = cell == s.hi() && s.hi() != last_cell;
    if (at_lo || at_hi) {
      throw DomainError("minimizer touches the co-moving window edge at t = " +
                        std::to_string(grid.t(k)) + "; enlarge the margin");
    }
  }
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  const auto& t = traj.times();
  const auto& x = traj.positions();
  os << "t,x,v\n" << std::setprecision(17);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const std::size_t seg = std::min(i, traj.segments() - 1);
    os << t[i] << ',' << x[i] << ',' << traj.segment_velocity(seg) << '\n';
  }
}

}  // namespace hjlab
