#pragma once

#include <utility>

namespace hjlab {

struct PaceValue {
  double g = 0.0;      // g_T(s)
  double rate = 0.0;   // g_T'(s) = K (log(T/s))^(2/beta)
};

// The pace curve g_T(s) = K * int_0^s (log(T/u))^(2/beta) du on [0, T].
//
// g_T is evaluated through the substitution v = log(T/u), which turns the
// integral into the incomplete-gamma tail K T int_{log(T/s)}^inf v^(2/beta) e^-v dv;
// the tail is integrated adaptively (Gauss-Kronrod) to relative tolerance quad_tol.
class PaceCurve {
 public:
  PaceCurve(double K, double T, double beta, double quad_tol = 1e-10);

  double K() const { return K_; }
  double T() const { return T_; }
  double beta() const { return beta_; }
  double quad_tol() const { return quad_tol_; }

  PaceValue operator()(double s) const;
  double value(double s) const { return (*this)(s).g; }
  double rate(double s) const;

  // g_T(T) / T = K * Gamma(1 + 2/beta).
  double full_ratio() const { return full_ratio_; }

 private:
  double K_;
  double T_;
  double beta_;
  double quad_tol_;
  double full_ratio_;
};

// Closed form of int_0^s (g_T'(u))^beta / beta du:
//   (K^beta / beta) s ((log(T/s))^2 + 2 log(T/s) + 2).
double pace_energy_closed(double s, const PaceCurve& curve);

struct PaceResidue {
  double main_term = 0.0;  // K s z^(2/beta) (1 + 2/(beta z)),  z = log(T/s)
  double remainder = 0.0;  // r in g = K s z^(2/beta) (1 + 2/(beta z) + 2(2-beta)/beta^2 r)
  bool degenerate = false; // beta == 2: the remainder coefficient vanishes, r := 0
};

PaceResidue pace_residue(double s, const PaceCurve& curve);

// pace_energy_closed(s) - s^(1-beta) g(s)^beta / beta; lies in [0, 4 K^beta s / beta).
double pace_main_gap(double s, const PaceCurve& curve);

// (g(s)-g(1))^beta/(s-1)^(beta-1) - g(s)^beta/s^(beta-1), for 3 < s <= T.
double pace_s2_gap(double s, const PaceCurve& curve);

// Same gap for an arbitrary increasing g with g(0) = 0.
template <typename G>
double s2_gap_of(G&& g, double s, double beta);

}  // namespace hjlab

#include <cmath>

namespace hjlab {

template <typename G>
double s2_gap_of(G&& g, double s, double beta) {
  const double gs = g(s);
  const double g1 = g(1.0);
  return std::pow(gs - g1, beta) / std::pow(s - 1.0, beta - 1.0) -
         std::pow(gs, beta) / std::pow(s, beta - 1.0);
}

}  // namespace hjlab
