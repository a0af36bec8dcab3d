#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hjlab/minimizer.hpp"
#include "hjlab/potentials.hpp"

namespace hjlab {

inline constexpr const char* kVersion = "1.0.0";

// How the space-time grid of a run is derived from the horizon.
struct GridPolicy {
  double dx_max = 0.05;           // dx = min(dx_max, R_T / radius_cells)
  double radius_cells = 40.0;
  double speed_quantum = 0.25;    // dt = dx / speed_quantum
  double v_max_factor = 1.5;      // v_max = factor * velocity_bound_upper(T)
  double margin = 5.0;            // co-moving window half-margin
  double lead = 1.0;              // window reach ahead of the step edge
  bool windowed = true;
  int max_enlargements = 3;       // margin doublings after a window-edge contact
  double s_window = 0.25;         // terminal-velocity window (at least one step)
  int refine_passes = 50;
  int quad_points = 1;

  nlohmann::json to_json() const;
  static GridPolicy from_json(const nlohmann::json& j, const GridPolicy& base);
};

struct ExperimentConfig {
  std::string kind = "scaling";  // scaling | periodic-control | glued-demo | lemma-suite | conjecture-probe
  std::string profile = "ci";    // ci | large
  double beta = 2.0;
  double C = 1.0;
  std::vector<double> horizons;
  GridPolicy grid;
  std::vector<std::uint64_t> seeds;
  int x_samples = 3;             // terminal x evenly spread over [-R_T/2, R_T/2] (scaling)
  std::vector<double> x_targets; // explicit terminal x (periodic control, conjecture probe)

  // periodic control
  Profile periodic_profile{Profile::Kind::Cosine, 1.0, 4.0, 0.0};
  double period = 1.0;
  double half_width = 10.0;      // spatial domain [-half_width, half_width]
  int operator_steps = 20;       // iterated Lax-Oleinik steps

  // glued demo
  double epsilon = 0.25;
  double Tbar = 3.0;
  int n_max = 2;
  double cap = 200.0;

  // conjecture probe
  double correlation_time = 5.0;
  int random_profiles = 3;

  // lemma suite
  int random_potentials = 50;
  int toy_instances = 100;
  int resolution_levels = 3;     // resolutions of the energy / Euler-Lagrange study (0 skips it)

  std::string out_dir = "out";
  int threads = 0;

  ModelParams params() const { return ModelParams(beta, C); }
  void validate() const;
  nlohmann::json to_json() const;
  // Keys absent from j keep the values of base.
  static ExperimentConfig from_json(const nlohmann::json& j, const ExperimentConfig& base);
};

// Defaults per experiment kind and profile ("ci" or "large").
ExperimentConfig default_config(const std::string& kind, const std::string& profile = "ci");

// ---------------------------------------------------------------------------
// Single-horizon pipeline.

struct MinimizerRecord {
  double x_target = 0.0;
  double x_snapped = 0.0;
  double value = 0.0;          // DP value at the terminal node
  Trajectory dp;               // backtracked grid minimizer
  RefineResult refined;
  VelocityEstimate velocity;   // from the refined trajectory
  double w_full = 0.0;         // average speed of dp over the whole span
};

struct SolveOutcome {
  GridSpec grid;
  std::vector<MinimizerRecord> minimizers;
  std::size_t window_cells = 0;  // admitted cells summed over slices
  std::size_t full_cells = 0;    // num_cells * (num_steps + 1)
  std::size_t boundary_argmins = 0;
  int enlargements = 0;
  // A minimizer touched the window edge but doubling the margin left every
  // terminal value unchanged (equal-action paths on a flat stretch of U).
  bool tied_contacts = false;
};

// Solves with S0 == 0, backtracks and refines every target. If `edge` is given
// the grid is restricted to a co-moving window around it; when a minimizer
// touches the window edge the margin is doubled and the solve repeated.
SolveOutcome solve_minimizers(const PotentialField& U, const GridSpec& grid,
                              const std::vector<double>& targets, const ModelParams& p,
                              const GridPolicy& policy,
                              std::function<double(double)> edge = nullptr);

// Grid for the accelerating potential with horizon T and step at y = 0.
GridSpec accelerating_grid(double T, const ModelParams& p, const GridPolicy& policy, double x_hi);

// Terminal x samples evenly spread over [-R_T/2, R_T/2].
std::vector<double> scaling_targets(double T, const ModelParams& p, int count);

// ---------------------------------------------------------------------------
// Reports.

struct SampleRecord {
  double x = 0.0;
  double speed = 0.0;
  double last_segment = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  bool bracket_valid = false;
  double w_full = 0.0;
};

struct HorizonRecord {
  double T = 0.0;
  double dx = 0.0;
  double dt = 0.0;
  double v_max = 0.0;
  double speed = 0.0;        // min over samples (scaling, glued) or max (periodic, probe)
  double slack = 0.0;        // grid slack of the speed estimate
  double lower_bound = 0.0;
  double upper_bound = 0.0;  // advisory
  std::size_t window_cells = 0;
  std::size_t full_cells = 0;
  std::size_t boundary_argmins = 0;
  int enlargements = 0;
  bool tied_contacts = false;
  std::vector<SampleRecord> samples;
};

struct PowerFit {
  bool valid = false;        // false when fewer than 3 horizons or < 1.3 decades
  double exponent = 0.0;     // p in v = a (log T)^p
  double amplitude = 0.0;    // a
  std::vector<double> residuals;
};

struct Series {
  std::string label;
  std::vector<HorizonRecord> records;
  PowerFit fit;
  std::optional<double> onset;  // smallest T from which the lower bound keeps holding
};

struct Check {
  std::string name;
  bool hard = true;
  bool pass = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct Report {
  std::string kind;
  nlohmann::json config;
  std::vector<Series> series;
  std::vector<Check> checks;
  nlohmann::json extra = nlohmann::json::object();
  // Wall time per labelled run, kept out of the deterministic outputs.
  std::vector<std::pair<std::string, double>> timings;

  bool passed() const;
};

// Least squares of log v on log log T.
PowerFit fit_power_law(const std::vector<double>& horizons, const std::vector<double>& speeds);

// Smallest tested T such that speed >= lower_bound - slack at it and every
// larger tested T.
std::optional<double> discover_onset(const std::vector<HorizonRecord>& records);

Report run_scaling(const ExperimentConfig& cfg);
Report run_periodic_control(const ExperimentConfig& cfg);
Report run_glued_demo(const ExperimentConfig& cfg);
Report run_lemma_suite(const ExperimentConfig& cfg);
Report run_conjecture_probe(const ExperimentConfig& cfg);
Report run_experiment(const ExperimentConfig& cfg);

nlohmann::json report_to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);
std::string report_csv(const Report& r);
std::string report_svg(const Report& r);

// Writes <stem>.json, <stem>.csv, <stem>.svg and the <stem>.timing.json sidecar.
// Returns the paths written.
std::vector<std::filesystem::path> emit(const Report& r, const std::filesystem::path& dir,
                                        const std::string& stem);

}  // namespace hjlab
