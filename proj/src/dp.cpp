#include "hjlab/dp.hpp"

#include <algorithm>
#include <cstddef>
#include <string>

#include "hjlab/errors.hpp"

namespace hjlab {

std::vector<double> transition_costs(const GridSpec& grid, const ModelParams& p) {
  const std::size_t band = grid.band();
  const double dt = grid.step();
  std::vector<double> cost(band + 1);
  for (std::size_t m = 0; m <= band; ++m) {
    cost[m] = segment_kinetic(static_cast<double>(m) * grid.dx, dt, p);
  }
  return cost;
}

namespace {

// Kicked source values a_i = V_k(x_i) - dt U(x_i, t_k) on [lo, lo + values.size()).
std::vector<double> kicked(const PotentialField& U, const GridSpec& grid, std::size_t k,
                           std::size_t lo, std::span<const double> values) {
  const auto u = U.at_time(grid.t(k));
  const double dt = grid.step();
  std::vector<double> a(values.size());
  for (std::size_t n = 0; n < values.size(); ++n) {
    const double v = values[n];
    a[n] = v == kInf ? kInf : v - dt * u(grid.x(lo + n)).value;
  }
  return a;
}

// Relaxes targets [tlo, tlo + count) from sources [slo, slo + a.size()).
// Returns false if some target has no source within the stencil.
bool relax(std::span<const double> a, std::size_t slo, std::size_t tlo, std::size_t count,
           std::span<const double> cost, double* out_values, std::int32_t* out_back,
           bool parallel) {
  const std::size_t band = cost.size() - 1;
  const std::ptrdiff_t s_first = static_cast<std::ptrdiff_t>(slo);
  const std::ptrdiff_t s_last = s_first + static_cast<std::ptrdiff_t>(a.size()) - 1;
  const std::ptrdiff_t b = static_cast<std::ptrdiff_t>(band);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(count);
  bool ok = true;

#pragma omp parallel for schedule(static) if (parallel) reduction(&& : ok)
  for (std::ptrdiff_t jj = 0; jj < n; ++jj) {
    const std::ptrdiff_t j = static_cast<std::ptrdiff_t>(tlo) + jj;
    const std::ptrdiff_t lo = std::max(s_first, j - b);
    const std::ptrdiff_t hi = std::min(s_last, j + b);
    if (lo > hi) {
      ok = false;
      out_values[jj] = kInf;
      if (out_back) out_back[jj] = -1;
      continue;
    }
    double best = kInf;
    std::ptrdiff_t arg = -1;
    std::ptrdiff_t best_d = b + 1;
    for (std::ptrdiff_t i = lo; i <= hi; ++i) {
      const std::ptrdiff_t d = i > j ? i - j : j - i;
      const double c = a[static_cast<std::size_t>(i - s_first)] + cost[static_cast<std::size_t>(d)];
      if (c < best || (c == best && d < best_d)) {
        best = c;
        arg = i;
        best_d = d;
      }
    }
    out_values[jj] = best;
    if (out_back) out_back[jj] = static_cast<std::int32_t>(arg);
  }
  return ok;
}

}  // namespace

ValueTable solve_dp(const PotentialField& U, const GridSpec& grid, const InitialValue& S0,
                    const ModelParams& p, Execution exec) {
  grid.validate();
  const bool parallel = exec == Execution::Parallel;
  const std::size_t steps = grid.num_steps();
  const std::size_t last_cell = grid.num_cells() - 1;
  const auto cost = transition_costs(grid, p);

  ValueTable table;
  table.grid = grid;
  table.slices.reserve(steps + 1);

  const CellRange r0 = grid.cells_at(0);
  ValueSlice first;
  first.lo = r0.lo;
  first.values.resize(r0.size());
  for (std::size_t n = 0; n < r0.size(); ++n) first.values[n] = S0(grid.x(r0.lo + n));
  table.slices.push_back(std::move(first));

  for (std::size_t k = 0; k < steps; ++k) {
    const ValueSlice& prev = table.slices.back();
    const auto a = kicked(U, grid, k, prev.lo, prev.values);
    const CellRange r = grid.cells_at(k + 1);
    ValueSlice next;
    next.lo = r.lo;
    next.values.resize(r.size());
    next.back.resize(r.size());
    if (!relax(a, prev.lo, r.lo, r.size(), cost, next.values.data(), next.back.data(), parallel)) {
      throw DomainError("window admits no source for some target at t = " +
                        std::to_string(grid.t(k + 1)));
    }
    for (std::size_t n = 0; n < r.size(); ++n) {
      const auto src = next.back[n];
      if (src < 0) continue;
      const auto s = static_cast<std::size_t>(src);
      if ((s == 0 || s == last_cell) && s != r.lo + n) ++table.boundary_argmins;
    }
    table.slices.push_back(std::move(next));
  }
  return table;
}

std::vector<double> propagate(const PotentialField& U, const GridSpec& grid,
                              std::span<const double> initial, const ModelParams& p,
                              Execution exec) {
  grid.validate();
  const std::size_t ncell = grid.num_cells();
  if (initial.size() != ncell) throw ConfigError("propagate: initial data size != grid cells");
  const bool parallel = exec == Execution::Parallel;
  const auto cost = transition_costs(grid, p);
  const std::size_t band = grid.band();

  // Current data lives on [lo, lo + cur.size()).
  auto finite_range = [](std::span<const double> v, std::size_t& a, std::size_t& b) {
    std::size_t first = v.size(), last = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] != kInf) {
        first = std::min(first, i);
        last = i;
      }
    }
    a = first;
    b = last;
    return first < v.size();
  };

  std::size_t lo = 0;
  std::vector<double> cur(initial.begin(), initial.end());
  {
    const CellRange r0 = grid.cells_at(0);
    for (std::size_t i = 0; i < ncell; ++i) {
      if (!r0.contains(i)) cur[i] = kInf;
    }
    std::size_t a, b;
    if (!finite_range(cur, a, b)) return std::vector<double>(ncell, kInf);
    cur = std::vector<double>(cur.begin() + static_cast<std::ptrdiff_t>(a),
                              cur.begin() + static_cast<std::ptrdiff_t>(b) + 1);
    lo = a;
  }

  for (std::size_t k = 0; k < grid.num_steps(); ++k) {
    const auto a = kicked(U, grid, k, lo, cur);
    const CellRange w = grid.cells_at(k + 1);
    const std::size_t hi = lo + cur.size() - 1;
    const std::size_t tlo = std::max(w.lo, lo > band ? lo - band : 0);
    const std::size_t thi = std::min(w.hi, std::min(ncell - 1, hi + band));
    if (thi < tlo) return std::vector<double>(ncell, kInf);
    std::vector<double> next(thi - tlo + 1);
    relax(a, lo, tlo, next.size(), cost, next.data(), nullptr, parallel);
    std::size_t fa, fb;
    if (!finite_range(next, fa, fb)) return std::vector<double>(ncell, kInf);
    cur.assign(next.begin() + static_cast<std::ptrdiff_t>(fa),
               next.begin() + static_cast<std::ptrdiff_t>(fb) + 1);
    lo = tlo + fa;
  }

  std::vector<double> out(ncell, kInf);
  std::copy(cur.begin(), cur.end(), out.begin() + static_cast<std::ptrdiff_t>(lo));
  return out;
}

}  // namespace hjlab
