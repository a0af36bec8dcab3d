#pragma once

#include <cstddef>
#include <functional>

#include "hjlab/potential.hpp"

namespace hjlab {

struct CellRange {
  std::size_t lo = 0;
  std::size_t hi = 0;  // inclusive
  std::size_t size() const { return hi - lo + 1; }
  bool contains(std::size_t i) const { return lo <= i && i <= hi; }
};

// Uniform space-time grid for the dynamic-programming solver. The time step
// actually used is (t2 - t1) / num_steps(), i.e. dt rounded down to divide the
// interval. Transitions are limited to |x_j - x_i| <= v_max * step().
struct GridSpec {
  double x_min = 0.0;
  double x_max = 0.0;
  double dx = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
  double dt = 0.0;
  double v_max = 0.0;
  // Optional admissible spatial interval per time slice.
  std::function<Interval(double)> window;

  void validate() const;

  std::size_t num_cells() const;
  std::size_t num_steps() const;
  double step() const;
  double x(std::size_t i) const { return x_min + static_cast<double>(i) * dx; }
  double t(std::size_t k) const;
  // Half-width of the transition stencil, in cells.
  std::size_t band() const;
  // Cells admitted at slice k (the whole grid when there is no window).
  CellRange cells_at(std::size_t k) const;
  std::size_t nearest_cell(double x) const;
};

}  // namespace hjlab
