#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <utility>

#include "json.hpp"

namespace hjlab {

struct PotentialSample {
  double value = 0.0;
  double grad = 0.0;  // dU/dx
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return lo <= x && x <= hi; }
};

// U(x, .) frozen at one instant.
using SpatialSlice = std::function<PotentialSample(double)>;

// A forcing U(x,t) on the real line, bounded together with its gradient:
// 0 <= U <= bound() and |dU/dx| <= bound(). Implementations are immutable
// and safe to evaluate concurrently.
class PotentialField {
 public:
  virtual ~PotentialField() = default;

  virtual PotentialSample sample(double x, double t) const = 0;
  virtual double bound() const = 0;

  // Serializable description; potential_from_json() rebuilds the field.
  virtual nlohmann::json spec() const = 0;

  // Closed time interval on which the field is defined, if restricted.
  virtual std::optional<Interval> time_range() const { return std::nullopt; }

  // Spatial interval outside of which U is constant at time t, if known.
  virtual std::optional<Interval> support_hint(double /*t*/) const { return std::nullopt; }

  // Evaluator for a fixed instant. Fields whose time dependence is costly
  // (a quadrature per call) override this to hoist the time-only work; the
  // returned slice must agree bitwise with sample(x, t).
  virtual SpatialSlice at_time(double t) const;

  double eval(double x, double t) const { return sample(x, t).value; }
  double grad(double x, double t) const { return sample(x, t).grad; }
};

using Potential = std::shared_ptr<const PotentialField>;

class ZeroPotential final : public PotentialField {
 public:
  PotentialSample sample(double, double) const override { return {}; }
  double bound() const override { return 0.0; }
  nlohmann::json spec() const override;
};

// U == value everywhere; bound() == value.
class ConstantPotential final : public PotentialField {
 public:
  explicit ConstantPotential(double value);
  PotentialSample sample(double, double) const override { return {value_, 0.0}; }
  double bound() const override { return value_; }
  nlohmann::json spec() const override;

 private:
  double value_;
};

Potential make_zero_potential();
Potential make_constant_potential(double value);

struct CertificationResult {
  std::size_t samples = 0;
  std::size_t value_violations = 0;
  std::size_t grad_violations = 0;
  double max_value = 0.0;
  double min_value = 0.0;
  double max_abs_grad = 0.0;
  bool ok() const { return value_violations == 0 && grad_violations == 0; }
};

// Checks 0 <= U <= bound and |grad| <= bound on uniformly random samples of
// the box [x_range] x [t_range]. Deterministic for a fixed seed.
CertificationResult certify(const PotentialField& field, Interval x_range, Interval t_range,
                            std::size_t samples, std::uint64_t seed);

// Max over samples of |grad - central difference of eval| with step h.
double gradient_consistency(const PotentialField& field, Interval x_range, Interval t_range,
                            std::size_t samples, double h, std::uint64_t seed);

}  // namespace hjlab
