#include "hjlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hjlab/errors.hpp"

namespace hjlab {

void GridSpec::validate() const {
  if (!(x_max > x_min) || !(dx > 0.0)) throw ConfigError("grid needs x_min < x_max and dx > 0");
  if (!(t2 > t1) || !(dt > 0.0)) throw ConfigError("grid needs t1 < t2 and dt > 0");
  if (!(v_max > 0.0)) throw ConfigError("grid needs v_max > 0");
  if (band() < 1) {
    throw ConfigError("grid: v_max * dt = " + std::to_string(v_max * step()) +
                      " is below dx; no transition is reachable");
  }
  if (num_cells() > (1u << 30)) throw ConfigError("grid: too many cells");
}

std::size_t GridSpec::num_cells() const {
  return static_cast<std::size_t>(std::floor((x_max - x_min) / dx + 1e-9)) + 1;
}

std::size_t GridSpec::num_steps() const {
  return static_cast<std::size_t>(std::max(1.0, std::ceil((t2 - t1) / dt - 1e-9)));
}

double GridSpec::step() const { return (t2 - t1) / static_cast<double>(num_steps()); }

double GridSpec::t(std::size_t k) const {
  if (k == num_steps()) return t2;
  return t1 + static_cast<double>(k) * step();
}

std::size_t GridSpec::band() const {
  return static_cast<std::size_t>(std::floor(v_max * step() / dx + 1e-9));
}

CellRange GridSpec::cells_at(std::size_t k) const {
  const std::size_t n = num_cells();
  if (!window) return {0, n - 1};
  const Interval w = window(t(k));
  const double lo = std::ceil((w.lo - x_min) / dx - 1e-9);
  const double hi = std::floor((w.hi - x_min) / dx + 1e-9);
  const double clo = std::max(lo, 0.0);
  const double chi = std::min(hi, static_cast<double>(n - 1));
  if (chi < clo) {
    throw ConfigError("grid window is empty at t = " + std::to_string(t(k)));
  }
  return {static_cast<std::size_t>(clo), static_cast<std::size_t>(chi)};
}

std::size_t GridSpec::nearest_cell(double xq) const {
  const double idx = std::round((xq - x_min) / dx);
  if (idx < 0.0 || idx > static_cast<double>(num_cells() - 1)) {
    throw ConfigError("position " + std::to_string(xq) + " lies outside the grid");
  }
  return static_cast<std::size_t>(idx);
}

}  // namespace hjlab
