#pragma once

#include <iosfwd>
#include <optional>

#include "hjlab/dp.hpp"
#include "hjlab/pace.hpp"

namespace hjlab {

// Follows backpointers from the grid node nearest to x on the final slice
// back to t1. Throws ConfigError if the table is incomplete or x is not
// admitted on the final slice.
Trajectory backtrack(const ValueTable& table, double x);

struct RefineOptions {
  int passes = 50;
  int quad_points = 1;
  bool free_start = true;      // also relax the first node (free left endpoint)
  double rel_tol = 1e-10;      // stop when a pass improves the action by less than this
  int golden_iterations = 60;
};

struct RefineResult {
  Trajectory trajectory;
  double initial_action = 0.0;
  double final_action = 0.0;
  int passes_run = 0;
};

// Cyclic coordinate descent on node positions with times fixed; each node is
// moved by a golden-section search of the local action and a move is kept
// only if it lowers the action. The terminal node is never moved.
RefineResult refine(const Trajectory& traj, const PotentialField& U, const ModelParams& p,
                    const RefineOptions& opts = {});

struct VelocityEstimate {
  double speed = 0.0;         // average_speed over the window
  double bracket_lo = 0.0;    // (1/2)^(1/(beta-1)) * speed
  double bracket_hi = 0.0;    // (3/2)^(1/(beta-1)) * speed
  double last_segment = 0.0;  // |velocity| of the final segment
  double window = 0.0;
  // True if speed > (2 C window)^(1/(beta-1)), i.e. the bracket is licensed.
  bool bracket_valid = false;
};

VelocityEstimate terminal_velocity(const Trajectory& traj, double s_window, const ModelParams& p);

// Computable part of the upper bound (the non-constructive threshold term is omitted):
//   (3/2)^(1/(beta-1)) max{ 2 (C beta)^(1/beta), (2C)^(1/(beta-1)), (2 K~ log T + 2)^(2/beta) },
//   K~ = 1 / log(1 + 2^(2-beta) (beta-1) / (3C)).
double velocity_bound_upper(double T, const ModelParams& p);
double upper_bound_constant(const ModelParams& p);  // K~

struct LowerBound {
  double speed = 0.0;   // K2 (log T)^(2/beta) / 2^(beta/(beta-1))
  double radius = 0.0;  // R_T = K2 (log T)^(2/beta) / 2
  double K2 = 0.0;      // (C beta / 5)^(1/beta)
};

LowerBound velocity_bound_lower(double T, const ModelParams& p);

// Restricts the grid to [edge(t) - margin, min(x_target, edge(t) + lead) + margin],
// where edge(t) = y - g_T(t2 - t) is the moving step of an accelerating
// potential: it admits the minimizers trailing the step and their final
// approach to x_target. With lead = +inf this is [edge - margin, x_target + margin].
GridSpec comoving_window(const PaceCurve& curve, double y, double margin, double x_target,
                         const GridSpec& grid, double lead = kInf);

// Same with an arbitrary edge curve (e.g. a glued potential).
GridSpec comoving_window(std::function<double(double)> edge, double margin, double x_target,
                         const GridSpec& grid, double lead = kInf);

// Throws DomainError if a trajectory produced from `table` sits on the first
// or last admitted cell of its slice where that cell is a window edge (not the
// physical grid boundary).
void check_window_clearance(const ValueTable& table, const Trajectory& traj);

// CSV "t,x,v" with 17 significant digits; v is the following-segment velocity
// (the last row repeats the final segment).
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace hjlab
