#pragma once

#include <cstddef>
#include <vector>

#include "hjlab/dp.hpp"

namespace hjlab {

// (C beta)^(1/beta) - w(T) for a grid minimizer; the bound holds exactly up to
// endpoint snapping, so the margin should be >= -2 dx / T.
double average_velocity_margin(const Trajectory& traj, const ModelParams& p);

struct ProgressionResult {
  double worst_margin = 0.0;  // min over tested pairs of rhs - lhs
  std::size_t pairs = 0;      // pairs with w(s1) > w(s2)
};

// For windows s1 < s2 (multiples of the step, at most max_windows of them,
// geometrically spread) with w(s1) > w(s2), the margin of
//   1 + (w(s1) - w(s2))^2 / (2C) <= s2/s1 + 4 dx (w(s1) + 1) / (s1 C).
ProgressionResult progression_margin(const Trajectory& traj, const ModelParams& p, double dx,
                                     std::size_t max_windows = 400);

// max - min of the per-segment energies.
double energy_variation(const Trajectory& traj, const PotentialField& U, const ModelParams& p);

// max |el_residual| over interior nodes.
double max_el_residual(const Trajectory& traj, const PotentialField& U, const ModelParams& p);

struct EnumerationResult {
  double value = 0.0;
  std::vector<std::size_t> path;  // cell indices, slice 0 .. N
};

// Exhaustive minimum of the kick-form action over every admissible cell path
// ending at `target` (no window). Exponential; for toy grids only.
EnumerationResult enumerate_min_action(const PotentialField& U, const GridSpec& grid,
                                       const InitialValue& S0, const ModelParams& p,
                                       std::size_t target);

}  // namespace hjlab
