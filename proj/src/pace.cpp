#include "hjlab/pace.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <string>

#include "hjlab/errors.hpp"

namespace hjlab {

namespace {

// int_z^inf v^a e^-v dv by adaptive Gauss-Kronrod on the half line.
double gamma_tail(double a, double z, double tol) {
  auto f = [a](double v) { return std::pow(v, a) * std::exp(-v); };
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 31>::integrate(f, z, std::numeric_limits<double>::infinity(), 20,
                                              tol);
}

}  // namespace

PaceCurve::PaceCurve(double K, double T, double beta, double quad_tol)
    : K_(K), T_(T), beta_(beta), quad_tol_(quad_tol), full_ratio_(0.0) {
  if (!(K > 0.0) || !(T > 0.0) || !(beta > 1.0) || !(quad_tol > 0.0)) {
    throw ConfigError("PaceCurve requires K > 0, T > 0, beta > 1, quad_tol > 0");
  }
  full_ratio_ = K_ * gamma_tail(2.0 / beta_, 0.0, quad_tol_);
}

PaceValue PaceCurve::operator()(double s) const {
  if (!(s >= 0.0) || s > T_) {
    throw ConfigError("pace: s = " + std::to_string(s) + " outside [0, T]");
  }
  if (s == 0.0) return {0.0, std::numeric_limits<double>::infinity()};
  if (s == T_) return {full_ratio_ * T_, 0.0};
  const double z = std::log(T_ / s);
  const double a = 2.0 / beta_;
  return {K_ * T_ * gamma_tail(a, z, quad_tol_), K_ * std::pow(z, a)};
}

double PaceCurve::rate(double s) const {
  if (!(s >= 0.0) || s > T_) {
    throw ConfigError("pace: s = " + std::to_string(s) + " outside [0, T]");
  }
  if (s == 0.0) return std::numeric_limits<double>::infinity();
  if (s == T_) return 0.0;
  return K_ * std::pow(std::log(T_ / s), 2.0 / beta_);
}

double pace_energy_closed(double s, const PaceCurve& curve) {
  if (!(s > 0.0) || s > curve.T()) {
    throw ConfigError("pace_energy_closed: s must lie in (0, T]");
  }
  const double z = std::log(curve.T() / s);
  const double b = curve.beta();
  return std::pow(curve.K(), b) / b * s * (z * z + 2.0 * z + 2.0);
}

PaceResidue pace_residue(double s, const PaceCurve& curve) {
  if (!(s > 0.0) || !(s < curve.T())) {
    throw ConfigError("pace_residue: s must lie strictly inside (0, T)");
  }
  const double b = curve.beta();
  const double z = std::log(curve.T() / s);
  const double lead = curve.K() * s * std::pow(z, 2.0 / b);
  PaceResidue out;
  out.main_term = lead * (1.0 + 2.0 / (b * z));
  if (b == 2.0) {
    out.degenerate = true;
    out.remainder = 0.0;
    return out;
  }
  const double g = curve.value(s);
  out.remainder = (g / lead - 1.0 - 2.0 / (b * z)) * b * b / (2.0 * (2.0 - b));
  return out;
}

double pace_main_gap(double s, const PaceCurve& curve) {
  const double b = curve.beta();
  return pace_energy_closed(s, curve) - std::pow(s, 1.0 - b) * std::pow(curve.value(s), b) / b;
}

double pace_s2_gap(double s, const PaceCurve& curve) {
  if (!(s > 3.0) || s > curve.T()) {
    throw ConfigError("pace_s2_gap: s must lie in (3, T]");
  }
  return s2_gap_of([&curve](double u) { return curve.value(u); }, s, curve.beta());
}

}  // namespace hjlab
