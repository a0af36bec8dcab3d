#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hjlab/pace.hpp"
#include "hjlab/potential.hpp"

namespace hjlab {

// C^1 step profile: C for x <= -2, 0 for x >= 0, cubic smoothstep in between
// (maximum slope 0.75 C).
PotentialSample bump(double x, double C);

// U(x,t) = bump(x - y + g_T(t2 - t)), T = t2 - t1, defined on [t1, t2].
class AcceleratingPotential final : public PotentialField {
 public:
  AcceleratingPotential(double y, double t1, double t2, double K, double C, double beta,
                        double quad_tol = 1e-10);

  PotentialSample sample(double x, double t) const override;
  double bound() const override { return C_; }
  nlohmann::json spec() const override;
  std::optional<Interval> time_range() const override { return Interval{t1_, t2_}; }
  std::optional<Interval> support_hint(double t) const override;
  SpatialSlice at_time(double t) const override;

  const PaceCurve& curve() const { return curve_; }
  double y() const { return y_; }
  // Position of the right edge of the step (where U first vanishes) at time t.
  double edge(double t) const;

 private:
  double shift(double t) const;

  double y_, t1_, t2_, C_;
  PaceCurve curve_;
};

Potential accelerating_potential(double y, double t1, double t2, double K, double C, double beta,
                                 double quad_tol = 1e-10);

struct GluedStage {
  double T = 0.0;  // stage length T_n
  double S = 0.0;  // cumulative S_n
  double X = 0.0;  // cumulative X_n = sum g_{T_i}(T_i)
};

struct GluedSchedule {
  double epsilon = 0.0;
  double Tbar = 0.0;
  double K = 0.0;
  double C = 0.0;
  double beta = 0.0;
  double Kbar = 0.0;                 // K int_0^1 |log x|^(2/beta) dx
  std::optional<double> cap;         // requested cap on T_n, if any
  bool capped = false;               // true if any T_n was clamped to the cap
  std::vector<GluedStage> stages;    // stages[n-1] = (T_n, S_n, X_n)
};

// T_1 = S_1 = max(1, Tbar), T_n = exp(S_{n-1}^(1/epsilon)), S_n = S_{n-1} + T_n.
// Throws std::overflow_error if an uncapped T_n is not representable.
GluedSchedule glued_schedule(double epsilon, double Tbar, double K, double C, double beta,
                             int n_max, std::optional<double> cap = std::nullopt);

// Concatenation of accelerating steps on (-S_nmax, 0]. On stage n,
// t in (-S_n, -S_{n-1}], U = bump(x + X_{n-1} + g_{T_n}(-t - S_{n-1})), so the
// step edge moves continuously from -X_n to -X_{n-1}.
class GluedPotential final : public PotentialField {
 public:
  explicit GluedPotential(GluedSchedule schedule);

  PotentialSample sample(double x, double t) const override;
  double bound() const override { return schedule_.C; }
  nlohmann::json spec() const override;
  std::optional<Interval> time_range() const override;
  SpatialSlice at_time(double t) const override;

  const GluedSchedule& schedule() const { return schedule_; }
  std::size_t stage_of(double t) const;
  double edge(double t) const;

 private:
  double shift(double t) const;

  GluedSchedule schedule_;
  std::vector<PaceCurve> curves_;
};

Potential glued_potential(const GluedSchedule& schedule);

// Spatial C^1 profile with known value range [0, max_value] and slope bound.
struct Profile {
  enum class Kind { Cosine, Gaussian, Step };
  Kind kind = Kind::Cosine;
  double amplitude = 1.0;
  double length = 1.0;  // wavelength (cosine) or width (gaussian); unused for step
  double center = 0.0;  // phase (cosine), center (gaussian), shift (step)

  PotentialSample operator()(double x) const;
  double max_value() const;
  double max_slope() const;

  nlohmann::json to_json() const;
  static Profile from_json(const nlohmann::json& j);
};

enum class Modulation { RaisedCosine, Constant };

// U(x,t) = profile(x) m(t), m(t) = (1 - cos(2 pi t / period)) / 2 or m == 1.
class PeriodicPotential final : public PotentialField {
 public:
  PeriodicPotential(Profile profile, double period, Modulation modulation);

  PotentialSample sample(double x, double t) const override;
  double bound() const override { return bound_; }
  nlohmann::json spec() const override;
  SpatialSlice at_time(double t) const override;

  double period() const { return period_; }
  double modulation(double t) const;

 private:
  Profile profile_;
  double period_;
  Modulation modulation_;
  double bound_;
};

Potential periodic_potential(const Profile& profile, double period,
                             Modulation modulation = Modulation::RaisedCosine);

// U(x,t) = lambda sum_j U_j(x) (1 + a_j(t)) / 2 with a_j clamped AR(1) processes
// of correlation time tau, sampled every tau/20 on [t_min, t_max] and
// interpolated linearly. lambda normalizes the sum to the bound C.
class RandomPotential final : public PotentialField {
 public:
  RandomPotential(std::uint64_t seed, std::vector<Profile> profiles, double correlation_time,
                  double t_min, double t_max, double C);

  PotentialSample sample(double x, double t) const override;
  double bound() const override { return C_; }
  nlohmann::json spec() const override;
  std::optional<Interval> time_range() const override { return Interval{t_min_, t_max_}; }
  SpatialSlice at_time(double t) const override;

  double process(std::size_t j, double t) const;
  std::size_t num_processes() const { return profiles_.size(); }
  double sample_step() const { return step_; }

 private:
  std::uint64_t seed_;
  std::vector<Profile> profiles_;
  double tau_, t_min_, t_max_, C_;
  double step_ = 0.0;
  double scale_ = 0.0;
  std::vector<std::vector<double>> samples_;
};

Potential random_potential(std::uint64_t seed, std::vector<Profile> profiles,
                           double correlation_time, double t_min, double t_max, double C);

// U(-x, t).
class ReflectedPotential final : public PotentialField {
 public:
  explicit ReflectedPotential(Potential inner) : inner_(std::move(inner)) {}
  PotentialSample sample(double x, double t) const override;
  double bound() const override { return inner_->bound(); }
  nlohmann::json spec() const override;
  std::optional<Interval> time_range() const override { return inner_->time_range(); }
  SpatialSlice at_time(double t) const override;

 private:
  Potential inner_;
};

Potential potential_from_json(const nlohmann::json& j);

}  // namespace hjlab
