#include <cmath>
#include <string>

#include "hjlab/dp.hpp"
#include "hjlab/errors.hpp"

namespace hjlab {

ValueTable solve_dp_reference(const PotentialField& U, const GridSpec& grid,
                              const InitialValue& S0, const ModelParams& p) {
  grid.validate();
  const std::size_t steps = grid.num_steps();
  const std::size_t last_cell = grid.num_cells() - 1;
  const double dt = grid.step();
  const long band = static_cast<long>(grid.band());

  ValueTable table;
  table.grid = grid;

  const CellRange r0 = grid.cells_at(0);
  ValueSlice first;
  first.lo = r0.lo;
  for (std::size_t i = r0.lo; i <= r0.hi; ++i) first.values.push_back(S0(grid.x(i)));
  table.slices.push_back(std::move(first));

  for (std::size_t k = 0; k < steps; ++k) {
    const ValueSlice& prev = table.slices.back();
    const double tk = grid.t(k);
    const CellRange r = grid.cells_at(k + 1);
    ValueSlice next;
    next.lo = r.lo;
    for (std::size_t j = r.lo; j <= r.hi; ++j) {
      double best = kInf;
      long arg = -1;
      long best_d = band + 1;
      bool any_source = false;
      for (std::size_t i = prev.lo; i <= prev.hi(); ++i) {
        const long d = std::labs(static_cast<long>(i) - static_cast<long>(j));
        if (d > band) continue;
        any_source = true;
        const double v = prev.at(i);
        if (v == kInf) continue;
        const double kick = v - dt * U.eval(grid.x(i), tk);
        const double c = kick + segment_kinetic(static_cast<double>(d) * grid.dx, dt, p);
        if (c < best || (c == best && d < best_d)) {
          best = c;
          arg = static_cast<long>(i);
          best_d = d;
        }
      }
      if (!any_source) {
        throw DomainError("window admits no source for some target at t = " +
                          std::to_string(grid.t(k + 1)));
      }
      next.values.push_back(best);
      next.back.push_back(static_cast<std::int32_t>(arg));
      if (arg >= 0) {
        const auto s = static_cast<std::size_t>(arg);
        if ((s == 0 || s == last_cell) && s != j) ++table.boundary_argmins;
      }
    }
    table.slices.push_back(std::move(next));
  }
  return table;
}

}  // namespace hjlab
