#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "hjlab/grid.hpp"
#include "hjlab/model.hpp"

namespace hjlab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Execution { Serial, Parallel };

// One time slice of the value function, stored on its admitted cell range.
struct ValueSlice {
  std::size_t lo = 0;
  std::vector<double> values;
  std::vector<std::int32_t> back;  // source cell of the argmin (-1 if unreachable); empty at k = 0

  std::size_t hi() const { return lo + values.size() - 1; }
  bool contains(std::size_t i) const { return i >= lo && i < lo + values.size(); }
  double at(std::size_t i) const { return contains(i) ? values[i - lo] : kInf; }
};

// Discrete value function S(x_j, t_k) and argmin backpointers.
struct ValueTable {
  GridSpec grid;
  std::vector<ValueSlice> slices;
  // Argmins that landed on the first or last cell of the spatial grid: the
  // domain is probably too small when this is nonzero.
  std::size_t boundary_argmins = 0;

  bool complete() const { return slices.size() == grid.num_steps() + 1; }
  const ValueSlice& final_slice() const { return slices.back(); }
};

using InitialValue = std::function<double(double)>;

// Backward dynamic programming for the kick-form action
//   V_{k+1}(x_j) = min_{|x_j - x_i| <= v_max dt} V_k(x_i) - dt U(x_i, t_k) + |x_j - x_i|^beta / (beta dt^(beta-1)),
// ties broken toward the smaller displacement, then the smaller source index.
// S0 may return +inf (e.g. Dirac initial data); unreachable targets get +inf.
// Throws DomainError if some admitted target has no admissible source while
// the previous slice is finite.
ValueTable solve_dp(const PotentialField& U, const GridSpec& grid, const InitialValue& S0,
                    const ModelParams& p, Execution exec = Execution::Parallel);

// Straight transcription of the recurrence (no precomputed tables or
// threading). Kept as the reference the optimized solver is tested against.
ValueTable solve_dp_reference(const PotentialField& U, const GridSpec& grid,
                              const InitialValue& S0, const ModelParams& p);

// Values only: propagates `initial` (full grid, +inf allowed) from t1 to t2
// and returns the final slice on the full grid. Skips cells that cannot be
// reached from the finite part of the data.
std::vector<double> propagate(const PotentialField& U, const GridSpec& grid,
                              std::span<const double> initial, const ModelParams& p,
                              Execution exec = Execution::Parallel);

// Per-displacement transition costs |m dx|^beta / (beta dt^(beta-1)), m = 0..band.
std::vector<double> transition_costs(const GridSpec& grid, const ModelParams& p);

}  // namespace hjlab
