#include "hjlab/potential.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hjlab/errors.hpp"

namespace hjlab {

SpatialSlice PotentialField::at_time(double t) const {
  return [this, t](double x) { return sample(x, t); };
}

nlohmann::json ZeroPotential::spec() const { return {{"kind", "zero"}}; }

ConstantPotential::ConstantPotential(double value) : value_(value) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw ConfigError("constant potential must be finite and >= 0");
  }
}

nlohmann::json ConstantPotential::spec() const {
  return {{"kind", "constant"}, {"value", value_}};
}

Potential make_zero_potential() { return std::make_shared<ZeroPotential>(); }

Potential make_constant_potential(double value) {
  return std::make_shared<ConstantPotential>(value);
}

CertificationResult certify(const PotentialField& field, Interval x_range, Interval t_range,
                            std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(x_range.lo, x_range.hi);
  std::uniform_real_distribution<double> ut(t_range.lo, t_range.hi);
  const double C = field.bound();
  CertificationResult r;
  r.samples = samples;
  r.min_value = INFINITY;
  r.max_value = -INFINITY;
  for (std::size_t k = 0; k < samples; ++k) {
    const double x = ux(rng);
    const double t = ut(rng);
    const auto s = field.sample(x, t);
    r.min_value = std::min(r.min_value, s.value);
    r.max_value = std::max(r.max_value, s.value);
    r.max_abs_grad = std::max(r.max_abs_grad, std::abs(s.grad));
    if (!(s.value >= 0.0 && s.value <= C)) ++r.value_violations;
    if (!(std::abs(s.grad) <= C)) ++r.grad_violations;
  }
  return r;
}

double gradient_consistency(const PotentialField& field, Interval x_range, Interval t_range,
                            std::size_t samples, double h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(x_range.lo + h, x_range.hi - h);
  std::uniform_real_distribution<double> ut(t_range.lo, t_range.hi);
  double worst = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double x = ux(rng);
    const double t = ut(rng);
    const double fd = (field.eval(x + h, t) - field.eval(x - h, t)) / (2.0 * h);
    worst = std::max(worst, std::abs(fd - field.grad(x, t)));
  }
  return worst;
}

}  // namespace hjlab
