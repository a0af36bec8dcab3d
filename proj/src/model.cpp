#include "hjlab/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hjlab/errors.hpp"

namespace hjlab {

ModelParams::ModelParams(double beta, double C) : beta_(beta), alpha_(0.0), C_(C) {
  if (!(beta > 1.0) || !std::isfinite(beta)) {
    throw ConfigError("beta must be a finite number > 1, got " + std::to_string(beta));
  }
  if (!(C >= 0.0) || !std::isfinite(C)) {
    throw ConfigError("C must be finite and >= 0, got " + std::to_string(C));
  }
  alpha_ = beta / (beta - 1.0);
}

Trajectory::Trajectory(std::vector<double> times, std::vector<double> positions)
    : times_(std::move(times)), positions_(std::move(positions)) {
  if (times_.size() != positions_.size()) {
    throw ConfigError("trajectory times and positions differ in length");
  }
  if (times_.size() < 2) {
    throw ConfigError("trajectory needs at least two nodes");
  }
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (!(times_[i] > times_[i - 1])) {
      throw ConfigError("trajectory times must be strictly increasing");
    }
  }
}

double Trajectory::segment_velocity(std::size_t i) const {
  return (positions_[i + 1] - positions_[i]) / (times_[i + 1] - times_[i]);
}

double Trajectory::position_at(double t) const {
  if (t <= times_.front()) return positions_.front();
  if (t >= times_.back()) return positions_.back();
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - times_.begin()) - 1;
  const double w = (t - times_[i]) / (times_[i + 1] - times_[i]);
  return positions_[i] + w * (positions_[i + 1] - positions_[i]);
}

double lagrangian(double v, double x, double t, const PotentialField& U, const ModelParams& p) {
  return std::pow(std::abs(v), p.beta()) / p.beta() - U.eval(x, t);
}

double hamiltonian(double momentum, double x, double t, const PotentialField& U,
                   const ModelParams& p) {
  return std::pow(std::abs(momentum), p.alpha()) / p.alpha() + U.eval(x, t);
}

double legendre(double v, const ModelParams& p) {
  if (v == 0.0) return 0.0;
  return v * std::pow(std::abs(v), p.beta() - 2.0);
}

double legendre_inv(double momentum, const ModelParams& p) {
  if (momentum == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(momentum), 1.0 / (p.beta() - 1.0)), momentum);
}

double segment_kinetic(double dx, double dt, const ModelParams& p) {
  return std::pow(std::abs(dx), p.beta()) / (p.beta() * std::pow(dt, p.beta() - 1.0));
}

double action(const Trajectory& traj, const PotentialField& U, const ModelParams& p,
              int quad_points_per_segment) {
  if (quad_points_per_segment < 1) {
    throw ConfigError("quad_points_per_segment must be >= 1");
  }
  const auto& t = traj.times();
  const auto& x = traj.positions();
  const double q = quad_points_per_segment;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    const double dt = t[i + 1] - t[i];
    const double dx = x[i + 1] - x[i];
    double potential = 0.0;
    for (int m = 0; m < quad_points_per_segment; ++m) {
      const double w = (m + 0.5) / q;
      potential += U.eval(x[i] + w * dx, t[i] + w * dt);
    }
    total += segment_kinetic(dx, dt, p) - dt * potential / q;
  }
  return total;
}

double discrete_action(std::span<const double> points, std::span<const SpatialSlice> kicks,
                       const ModelParams& p, double dt) {
  if (points.size() != kicks.size() + 1) {
    throw ConfigError("discrete_action: need exactly one kick per step (points = kicks + 1)");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < kicks.size(); ++i) {
    total += segment_kinetic(points[i + 1] - points[i], dt, p) - dt * kicks[i](points[i]).value;
  }
  return total;
}

double average_speed(const Trajectory& traj, double s) {
  if (!(s > 0.0) || s > traj.span() * (1.0 + 1e-12)) {
    throw ConfigError("average_speed: s must lie in (0, span]");
  }
  const double t_end = traj.t_end();
  const double start = traj.position_at(std::max(t_end - s, traj.t_begin()));
  return std::abs(traj.positions().back() - start) / s;
}

std::vector<double> el_residual(const Trajectory& traj, const PotentialField& U,
                                const ModelParams& p) {
  const auto& t = traj.times();
  const auto& x = traj.positions();
  std::vector<double> out;
  if (t.size() < 3) return out;
  out.reserve(t.size() - 2);
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    const double p_left = legendre(traj.segment_velocity(i - 1), p);
    const double p_right = legendre(traj.segment_velocity(i), p);
    const double dt_avg = 0.5 * (t[i + 1] - t[i - 1]);
    out.push_back((p_right - p_left) / dt_avg + U.grad(x[i], t[i]));
  }
  return out;
}

double jensen_lower_bound(double displacement, double duration, const ModelParams& p) {
  if (!(duration > 0.0)) throw ConfigError("jensen_lower_bound: duration must be > 0");
  return std::pow(duration, 1.0 - p.beta()) * std::pow(std::abs(displacement), p.beta()) /
         p.beta();
}

std::vector<double> segment_energies(const Trajectory& traj, const PotentialField& U,
                                     const ModelParams& p) {
  const auto& t = traj.times();
  const auto& x = traj.positions();
  std::vector<double> out(traj.segments());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double mom = legendre(traj.segment_velocity(i), p);
    out[i] = hamiltonian(mom, 0.5 * (x[i] + x[i + 1]), 0.5 * (t[i] + t[i + 1]), U, p);
  }
  return out;
}

}  // namespace hjlab
