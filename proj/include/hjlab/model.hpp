#pragma once

#include <span>
#include <vector>

#include "hjlab/potential.hpp"

namespace hjlab {

// Exponents and potential bound of the model
//   L(v,x,t) = |v|^beta / beta - U(x,t),   H(p,x,t) = |p|^alpha / alpha + U(x,t)
// with 1/alpha + 1/beta = 1. alpha is always derived from beta.
class ModelParams {
 public:
  ModelParams(double beta, double C);

  double beta() const { return beta_; }
  double alpha() const { return alpha_; }
  double C() const { return C_; }

 private:
  double beta_;
  double alpha_;
  double C_;
};

// Piecewise-linear path through (times[i], positions[i]).
class Trajectory {
 public:
  Trajectory(std::vector<double> times, std::vector<double> positions);

  std::size_t size() const { return times_.size(); }
  std::size_t segments() const { return times_.size() - 1; }
  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& positions() const { return positions_; }
  std::vector<double>& mutable_positions() { return positions_; }

  double t_begin() const { return times_.front(); }
  double t_end() const { return times_.back(); }
  double span() const { return t_end() - t_begin(); }

  double segment_velocity(std::size_t i) const;
  double position_at(double t) const;

 private:
  std::vector<double> times_;
  std::vector<double> positions_;
};

double lagrangian(double v, double x, double t, const PotentialField& U, const ModelParams& p);
double hamiltonian(double momentum, double x, double t, const PotentialField& U,
                   const ModelParams& p);

// p = v |v|^(beta-2), and its inverse v = sign(p) |p|^(1/(beta-1)).
double legendre(double v, const ModelParams& p);
double legendre_inv(double momentum, const ModelParams& p);

// Kinetic action of one straight segment: |dx|^beta / (beta dt^(beta-1)).
double segment_kinetic(double dx, double dt, const ModelParams& p);

// Continuous action of the piecewise-linear path; the potential integral on
// each segment uses `quad_points_per_segment` midpoint nodes.
double action(const Trajectory& traj, const PotentialField& U, const ModelParams& p,
              int quad_points_per_segment = 1);

// Frenkel-Kontorova sum  sum_i [ |x_{i+1}-x_i|^beta/(beta dt^(beta-1)) - dt U_i(x_i) ]
// with kicks[i] = U_i. dt = 1 gives the unit-step discrete model.
double discrete_action(std::span<const double> points, std::span<const SpatialSlice> kicks,
                       const ModelParams& p, double dt = 1.0);

// |gamma(t_N) - gamma(t_N - s)| / s.
double average_speed(const Trajectory& traj, double s);

// Momentum-difference residual of d/dt(v|v|^(beta-2)) = -dU/dx at interior nodes.
std::vector<double> el_residual(const Trajectory& traj, const PotentialField& U,
                                const ModelParams& p);

// duration^(1-beta) |displacement|^beta / beta.
double jensen_lower_bound(double displacement, double duration, const ModelParams& p);

// Per-segment energy H(legendre(v), x_mid, t_mid); conserved for autonomous U.
std::vector<double> segment_energies(const Trajectory& traj, const PotentialField& U,
                                     const ModelParams& p);

}  // namespace hjlab
