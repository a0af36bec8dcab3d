#include "hjlab/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "hjlab/errors.hpp"

namespace hjlab {

namespace {

constexpr double kTimeSlack = 1e-9;

double clamp_time(double t, double lo, double hi, const char* who) {
  const double tol = kTimeSlack * std::max(1.0, hi - lo);
  if (t < lo - tol || t > hi + tol) {
    throw DomainError(std::string(who) + ": t = " + std::to_string(t) + " outside [" +
                      std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return std::clamp(t, lo, hi);
}

}  // namespace

PotentialSample bump(double x, double C) {
  if (x <= -2.0) return {C, 0.0};
  if (x >= 0.0) return {0.0, 0.0};
  const double u = -0.5 * x;
  return {C * u * u * (3.0 - 2.0 * u), -3.0 * C * u * (1.0 - u)};
}

// ---------------------------------------------------------------------------

AcceleratingPotential::AcceleratingPotential(double y, double t1, double t2, double K, double C,
                                             double beta, double quad_tol)
    : y_(y), t1_(t1), t2_(t2), C_(C), curve_(K, t2 - t1, beta, quad_tol) {
  if (!(t2 > t1)) throw ConfigError("accelerating potential requires t2 > t1");
  if (!(C > 0.0)) throw ConfigError("accelerating potential requires C > 0");
}

double AcceleratingPotential::shift(double t) const {
  const double tc = clamp_time(t, t1_, t2_, "accelerating potential");
  const double s = std::clamp(t2_ - tc, 0.0, curve_.T());
  return curve_.value(s) - y_;
}

PotentialSample AcceleratingPotential::sample(double x, double t) const {
  return bump(x + shift(t), C_);
}

double AcceleratingPotential::edge(double t) const { return -shift(t); }

std::optional<Interval> AcceleratingPotential::support_hint(double t) const {
  const double e = edge(t);
  return Interval{e - 2.0, e};
}

SpatialSlice AcceleratingPotential::at_time(double t) const {
  const double sh = shift(t);
  const double C = C_;
  return [sh, C](double x) { return bump(x + sh, C); };
}

nlohmann::json AcceleratingPotential::spec() const {
  return {{"kind", "accelerating"}, {"y", y_},       {"t1", t1_},
          {"t2", t2_},              {"K", curve_.K()}, {"C", C_},
          {"beta", curve_.beta()},  {"quad_tol", curve_.quad_tol()}};
}

Potential accelerating_potential(double y, double t1, double t2, double K, double C, double beta,
                                 double quad_tol) {
  return std::make_shared<AcceleratingPotential>(y, t1, t2, K, C, beta, quad_tol);
}

// ---------------------------------------------------------------------------

GluedSchedule glued_schedule(double epsilon, double Tbar, double K, double C, double beta,
                             int n_max, std::optional<double> cap) {
  if (!(beta > 1.0)) throw ConfigError("glued schedule requires beta > 1");
  const double eps_max = 2.0 * (beta - 1.0) / (beta * beta);
  if (!(epsilon > 0.0) || !(epsilon < eps_max)) {
    throw ConfigError("glued schedule requires 0 < epsilon < 2(beta-1)/beta^2 = " +
                      std::to_string(eps_max));
  }
  if (n_max < 1) throw ConfigError("glued schedule requires n_max >= 1");
  if (cap && !(*cap >= 1.0)) throw ConfigError("glued schedule cap must be >= 1");

  GluedSchedule out;
  out.epsilon = epsilon;
  out.Tbar = Tbar;
  out.K = K;
  out.C = C;
  out.beta = beta;
  out.cap = cap;
  out.Kbar = PaceCurve(K, 1.0, beta).full_ratio();

  const double log_max = std::log(std::numeric_limits<double>::max());
  double S_prev = 0.0;
  double X_prev = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    double T;
    if (n == 1) {
      T = std::max(1.0, Tbar);
    } else {
      const double exponent = std::pow(S_prev, 1.0 / epsilon);
      if (!(exponent < log_max)) {
        if (!cap) {
          throw std::overflow_error("glued schedule: T_" + std::to_string(n) + " = exp(" +
                                    std::to_string(exponent) + ") overflows; supply a cap");
        }
        T = *cap;
        out.capped = true;
      } else {
        T = std::exp(exponent);
      }
    }
    if (cap && T > *cap) {
      T = *cap;
      out.capped = true;
    }
    const double S = S_prev + T;
    const double X = X_prev + PaceCurve(K, T, beta).value(T);
    out.stages.push_back({T, S, X});
    S_prev = S;
    X_prev = X;
  }
  return out;
}

GluedPotential::GluedPotential(GluedSchedule schedule) : schedule_(std::move(schedule)) {
  if (schedule_.stages.empty()) throw ConfigError("glued potential needs at least one stage");
  for (const auto& st : schedule_.stages) {
    curves_.emplace_back(schedule_.K, st.T, schedule_.beta);
  }
}

std::optional<Interval> GluedPotential::time_range() const {
  return Interval{-schedule_.stages.back().S, 0.0};
}

std::size_t GluedPotential::stage_of(double t) const {
  const double tc = clamp_time(t, -schedule_.stages.back().S, 0.0, "glued potential");
  for (std::size_t n = 0; n < schedule_.stages.size(); ++n) {
    if (tc > -schedule_.stages[n].S) return n;
  }
  return schedule_.stages.size() - 1;
}

double GluedPotential::shift(double t) const {
  const std::size_t n = stage_of(t);
  const double S_prev = n == 0 ? 0.0 : schedule_.stages[n - 1].S;
  const double X_prev = n == 0 ? 0.0 : schedule_.stages[n - 1].X;
  const double tc = std::min(t, 0.0);
  const double s = std::clamp(-tc - S_prev, 0.0, schedule_.stages[n].T);
  return X_prev + curves_[n].value(s);
}

PotentialSample GluedPotential::sample(double x, double t) const {
  return bump(x + shift(t), schedule_.C);
}

double GluedPotential::edge(double t) const { return -shift(t); }

SpatialSlice GluedPotential::at_time(double t) const {
  const double sh = shift(t);
  const double C = schedule_.C;
  return [sh, C](double x) { return bump(x + sh, C); };
}

nlohmann::json GluedPotential::spec() const {
  nlohmann::json j = {{"kind", "glued"},
                      {"epsilon", schedule_.epsilon},
                      {"Tbar", schedule_.Tbar},
                      {"K", schedule_.K},
                      {"C", schedule_.C},
                      {"beta", schedule_.beta},
                      {"n_max", schedule_.stages.size()}};
  j["cap"] = schedule_.cap ? nlohmann::json(*schedule_.cap) : nlohmann::json(nullptr);
  return j;
}

Potential glued_potential(const GluedSchedule& schedule) {
  return std::make_shared<GluedPotential>(schedule);
}

// ---------------------------------------------------------------------------

PotentialSample Profile::operator()(double x) const {
  switch (kind) {
    case Kind::Cosine: {
      const double k = 2.0 * std::numbers::pi / length;
      const double ph = k * (x - center);
      return {0.5 * amplitude * (1.0 + std::cos(ph)), -0.5 * amplitude * k * std::sin(ph)};
    }
    case Kind::Gaussian: {
      const double z = (x - center) / length;
      const double e = amplitude * std::exp(-0.5 * z * z);
      return {e, -e * z / length};
    }
    case Kind::Step:
      return bump(x - center, amplitude);
  }
  return {};
}

double Profile::max_value() const { return amplitude; }

double Profile::max_slope() const {
  switch (kind) {
    case Kind::Cosine:
      return amplitude * std::numbers::pi / length;
    case Kind::Gaussian:
      return amplitude / (length * std::sqrt(std::numbers::e));
    case Kind::Step:
      return 0.75 * amplitude;
  }
  return 0.0;
}

nlohmann::json Profile::to_json() const {
  const char* name = kind == Kind::Cosine ? "cosine" : kind == Kind::Gaussian ? "gaussian" : "step";
  return {{"kind", name}, {"amplitude", amplitude}, {"length", length}, {"center", center}};
}

Profile Profile::from_json(const nlohmann::json& j) {
  Profile p;
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "cosine") {
    p.kind = Kind::Cosine;
  } else if (kind == "gaussian") {
    p.kind = Kind::Gaussian;
  } else if (kind == "step") {
    p.kind = Kind::Step;
  } else {
    throw ConfigError("unknown profile kind '" + kind + "'");
  }
  p.amplitude = j.at("amplitude").get<double>();
  p.length = j.value("length", 1.0);
  p.center = j.value("center", 0.0);
  if (!(p.amplitude >= 0.0) || !(p.length > 0.0)) {
    throw ConfigError("profile needs amplitude >= 0 and length > 0");
  }
  return p;
}

// ---------------------------------------------------------------------------

PeriodicPotential::PeriodicPotential(Profile profile, double period, Modulation modulation)
    : profile_(profile), period_(period), modulation_(modulation) {
  if (!(period > 0.0)) throw ConfigError("periodic potential requires period > 0");
  bound_ = std::max(profile_.max_value(), profile_.max_slope());
}

double PeriodicPotential::modulation(double t) const {
  if (modulation_ == Modulation::Constant) return 1.0;
  double phase = std::fmod(t, period_);
  if (phase < 0.0) phase += period_;
  return 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * phase / period_));
}

PotentialSample PeriodicPotential::sample(double x, double t) const {
  const double m = modulation(t);
  const auto s = profile_(x);
  return {s.value * m, s.grad * m};
}

SpatialSlice PeriodicPotential::at_time(double t) const {
  const double m = modulation(t);
  const Profile prof = profile_;
  return [m, prof](double x) {
    const auto s = prof(x);
    return PotentialSample{s.value * m, s.grad * m};
  };
}

nlohmann::json PeriodicPotential::spec() const {
  return {{"kind", "periodic"},
          {"period", period_},
          {"modulation", modulation_ == Modulation::Constant ? "constant" : "raised_cosine"},
          {"profile", profile_.to_json()}};
}

Potential periodic_potential(const Profile& profile, double period, Modulation modulation) {
  return std::make_shared<PeriodicPotential>(profile, period, modulation);
}

// ---------------------------------------------------------------------------

RandomPotential::RandomPotential(std::uint64_t seed, std::vector<Profile> profiles,
                                 double correlation_time, double t_min, double t_max, double C)
    : seed_(seed),
      profiles_(std::move(profiles)),
      tau_(correlation_time),
      t_min_(t_min),
      t_max_(t_max),
      C_(C) {
  if (profiles_.empty()) throw ConfigError("random potential needs at least one profile");
  if (!(correlation_time > 0.0)) throw ConfigError("correlation_time must be > 0");
  if (!(t_max > t_min)) throw ConfigError("random potential requires t_max > t_min");
  if (!(C > 0.0)) throw ConfigError("random potential requires C > 0");

  double value_sum = 0.0;
  double slope_sum = 0.0;
  for (const auto& p : profiles_) {
    value_sum += p.max_value();
    slope_sum += p.max_slope();
  }
  const double worst = std::max(value_sum, slope_sum);
  if (!(worst > 0.0)) throw ConfigError("random potential profiles are identically zero");
  scale_ = C_ / worst;

  step_ = tau_ / 20.0;
  const auto n = static_cast<std::size_t>(std::ceil((t_max_ - t_min_) / step_)) + 1;
  const double rho = std::exp(-step_ / tau_);
  const double sigma = 0.5;
  const double innovation = sigma * std::sqrt(1.0 - rho * rho);
  std::mt19937_64 rng(seed_);
  std::normal_distribution<double> normal(0.0, 1.0);
  samples_.resize(profiles_.size());
  for (auto& seq : samples_) {
    seq.resize(n);
    double latent = sigma * normal(rng);
    for (std::size_t k = 0; k < n; ++k) {
      seq[k] = std::clamp(latent, -1.0, 1.0);
      latent = rho * latent + innovation * normal(rng);
    }
  }
}

double RandomPotential::process(std::size_t j, double t) const {
  const double tc = clamp_time(t, t_min_, t_max_, "random potential");
  const auto& seq = samples_[j];
  const double pos = (tc - t_min_) / step_;
  const auto k = std::min(static_cast<std::size_t>(pos), seq.size() - 2);
  const double w = pos - static_cast<double>(k);
  return seq[k] + w * (seq[k + 1] - seq[k]);
}

PotentialSample RandomPotential::sample(double x, double t) const {
  PotentialSample out;
  for (std::size_t j = 0; j < profiles_.size(); ++j) {
    const double m = 0.5 * scale_ * (1.0 + process(j, t));
    const auto s = profiles_[j](x);
    out.value += m * s.value;
    out.grad += m * s.grad;
  }
  return out;
}

SpatialSlice RandomPotential::at_time(double t) const {
  std::vector<double> weights(profiles_.size());
  for (std::size_t j = 0; j < profiles_.size(); ++j) {
    weights[j] = 0.5 * scale_ * (1.0 + process(j, t));
  }
  return [weights = std::move(weights), profiles = profiles_](double x) {
    PotentialSample out;
    for (std::size_t j = 0; j < profiles.size(); ++j) {
      const auto s = profiles[j](x);
      out.value += weights[j] * s.value;
      out.grad += weights[j] * s.grad;
    }
    return out;
  };
}

nlohmann::json RandomPotential::spec() const {
  nlohmann::json profs = nlohmann::json::array();
  for (const auto& p : profiles_) profs.push_back(p.to_json());
  return {{"kind", "random"},  {"seed", seed_},   {"correlation_time", tau_},
          {"t_min", t_min_},   {"t_max", t_max_}, {"C", C_},
          {"profiles", profs}};
}

Potential random_potential(std::uint64_t seed, std::vector<Profile> profiles,
                           double correlation_time, double t_min, double t_max, double C) {
  return std::make_shared<RandomPotential>(seed, std::move(profiles), correlation_time, t_min,
                                           t_max, C);
}

// ---------------------------------------------------------------------------

PotentialSample ReflectedPotential::sample(double x, double t) const {
  const auto s = inner_->sample(-x, t);
  return {s.value, -s.grad};
}

SpatialSlice ReflectedPotential::at_time(double t) const {
  auto inner = inner_->at_time(t);
  return [inner = std::move(inner)](double x) {
    const auto s = inner(-x);
    return PotentialSample{s.value, -s.grad};
  };
}

nlohmann::json ReflectedPotential::spec() const {
  return {{"kind", "reflected"}, {"inner", inner_->spec()}};
}

// ---------------------------------------------------------------------------

Potential potential_from_json(const nlohmann::json& j) {
  try {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "zero") return make_zero_potential();
    if (kind == "constant") return make_constant_potential(j.at("value").get<double>());
    if (kind == "accelerating") {
      return accelerating_potential(j.at("y").get<double>(), j.at("t1").get<double>(),
                                    j.at("t2").get<double>(), j.at("K").get<double>(),
                                    j.at("C").get<double>(), j.at("beta").get<double>(),
                                    j.value("quad_tol", 1e-10));
    }
    if (kind == "glued") {
      std::optional<double> cap;
      if (j.contains("cap") && !j.at("cap").is_null()) cap = j.at("cap").get<double>();
      return glued_potential(glued_schedule(
          j.at("epsilon").get<double>(), j.at("Tbar").get<double>(), j.at("K").get<double>(),
          j.at("C").get<double>(), j.at("beta").get<double>(), j.at("n_max").get<int>(), cap));
    }
    if (kind == "periodic") {
      const auto mod = j.value("modulation", std::string("raised_cosine"));
      Modulation m;
      if (mod == "raised_cosine") {
        m = Modulation::RaisedCosine;
      } else if (mod == "constant") {
        m = Modulation::Constant;
      } else {
        throw ConfigError("unknown modulation '" + mod + "'");
      }
      return periodic_potential(Profile::from_json(j.at("profile")), j.at("period").get<double>(),
                                m);
    }
    if (kind == "random") {
      std::vector<Profile> profs;
      for (const auto& p : j.at("profiles")) profs.push_back(Profile::from_json(p));
      return random_potential(j.at("seed").get<std::uint64_t>(), std::move(profs),
                              j.at("correlation_time").get<double>(), j.at("t_min").get<double>(),
                              j.at("t_max").get<double>(), j.at("C").get<double>());
    }
    if (kind == "reflected") {
      return std::make_shared<ReflectedPotential>(potential_from_json(j.at("inner")));
    }
    throw ConfigError("unknown potential kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed potential spec: ") + e.what());
  }
}

}  // namespace hjlab
