#pragma once

#include <cstddef>
#include <vector>

#include "hjlab/kernel.hpp"
#include "hjlab/minimizer.hpp"

namespace hjlab {

// Measurements shared by the lemma suite and the acceptance tests.

struct KernelDeviation {
  double dx = 0.0;
  double dt = 0.0;
  std::size_t nodes = 0;
  double deviation = 0.0;  // max |A - jensen| over finite entries
  double slope = 0.0;      // kernel_local_slope
  std::size_t entries = 0;
};

// Kernel of U == 0 over [0, tau] on `nodes` nodes spanning [-half_width, half_width]
// with `steps` time steps, compared with |x - y|^beta / (beta tau^(beta-1)).
KernelDeviation zero_kernel_deviation(const ModelParams& p, double half_width, std::size_t nodes,
                                      double tau, std::size_t steps, double v_max);

struct FlowLevel {
  double dx = 0.0;
  double dt = 0.0;
  double defect = 0.0;
  double slope = 0.0;      // K_loc of the full-interval kernel
  double tolerance = 0.0;  // 5 (dx + dt) K_loc
  std::size_t compared = 0;
  std::size_t pattern_mismatch = 0;
};

// flow_defect of the split of [grid.t1, grid.t2] at its midpoint. Each piece
// rounds its own step, so an odd step count leaves the split off the slices.
FlowLevel flow_level(const PotentialField& U, const GridSpec& grid, const ModelParams& p);

struct RefinedLevel {
  double dx = 0.0;
  double dt = 0.0;
  double energy_variation = 0.0;  // max over targets
  double el_residual = 0.0;       // max over targets
  double initial_speed = 0.0;     // max over targets of |first segment velocity|
  double action_gain = 0.0;       // min over targets of initial - final action
  int passes = 0;                 // max passes used
};

// For each level h = 0..levels-1, solves with S0 == 0 on `grid` with dx and dt
// divided by 2^h, backtracks every target and refines it.
std::vector<RefinedLevel> refined_levels(const PotentialField& U, const GridSpec& grid,
                                         const std::vector<double>& targets, const ModelParams& p,
                                         int levels, const RefineOptions& opts);

// log2 of successive ratios: order[i] = log2(values[i] / values[i+1]).
std::vector<double> observed_orders(const std::vector<double>& values);

struct OperatorSuite {
  int steps = 0;
  double worst_domination = 0.0;  // max over n of domination_defect(S_n, A, C)
  double max_lipschitz = 0.0;     // max over n of lipschitz_in_large_constant(S_n)
  double lipschitz_bound = 0.0;   // 1/(beta tau^(beta-1)) + C tau
  double slack = 0.0;             // 5 (dx + dt) K_loc
  double truncation_defect = 0.0; // max |T S - T^K S| over n, K = Lipschitz-in-the-large constant of S
};

// Iterates S_{n+1} = T_{n tau, (n+1) tau} S_n from S_0 == 0 for a potential of
// period tau on [-half_width, half_width].
OperatorSuite iterate_operator(const PotentialField& U, double tau, double half_width, double dx,
                               int steps, const ModelParams& p);

}  // namespace hjlab
