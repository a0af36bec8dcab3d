#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "hjlab/checks.hpp"
#include "hjlab/dp.hpp"
#include "hjlab/errors.hpp"
#include "hjlab/minimizer.hpp"
#include "hjlab/potentials.hpp"

using namespace hjlab;

namespace {

GridSpec toy(double t2, double v_max) {
  GridSpec g;
  g.x_min = -1.0;
  g.x_max = 1.0;
  g.dx = 0.5;
  g.t1 = 0.0;
  g.t2 = t2;
  g.dt = 0.5;
  g.v_max = v_max;
  return g;
}

bool same(const ValueTable& a, const ValueTable& b) {
  if (a.slices.size() != b.slices.size()) return false;
  for (std::size_t k = 0; k < a.slices.size(); ++k) {
    if (a.slices[k].lo != b.slices[k].lo || a.slices[k].values != b.slices[k].values || a.slices[k].back != b.slices[k].back) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("grid geometry") {
  GridSpec g = toy(2.0, 2.0);
  CHECK(g.num_cells() == 5);
  CHECK(g.num_steps() == 4);
  CHECK(g.band() == 2);
  CHECK(g.nearest_cell(0.3) == 3);
  g.dt = 0.3;
  CHECK(g.step() * g.num_steps() == doctest::Approx(2.0));
  CHECK(g.step() <= 0.3);
  g.dx = 0.0;
  CHECK_THROWS_AS(g.validate(), ConfigError);
}

TEST_CASE("transition costs are the discrete kinetic action") {
  const GridSpec g = toy(2.0, 3.0);
  const ModelParams p(2.0, 1.0);
  const auto c = transition_costs(g, p);
  REQUIRE(c.size() == g.band() + 1);
  for (std::size_t m = 0; m < c.size(); ++m) CHECK(c[m] == segment_kinetic(m * g.dx, g.step(), p));
}

TEST_CASE("DP values equal exhaustive enumeration on random toys") {
  const ModelParams p(1.5, 1.0);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const GridSpec g = toy(0.5 * (1 + trial % 5), 1.0 + trial % 3);
    const Potential U = random_potential(trial, {Profile{Profile::Kind::Cosine, 1.0, 2.5, u(rng)}}, 1.0, 0.0, g.t2, 1.0);
    std::vector<double> init(g.num_cells());
    for (double& v : init) v = u(rng);
    const InitialValue S0 = [&](double x) { return init[g.nearest_cell(x)]; };
    const ValueTable t = solve_dp(*U, g, S0, p);
    for (std::size_t j = 0; j < g.num_cells(); ++j) {
      CHECK(t.final_slice().at(j) == enumerate_min_action(*U, g, S0, p, j).value);
    }
  }
}

TEST_CASE("serial, parallel and reference solvers agree bitwise") {
  const ModelParams p(2.0, 1.0);
  const AcceleratingPotential U(0.0, 0.0, 8.0, std::sqrt(0.4), 1.0, 2.0);
  GridSpec g;
  g.x_min = -8.0;
  g.x_max = 2.0;
  g.dx = 0.1;
  g.t1 = 0.0;
  g.t2 = 8.0;
  g.dt = 0.4;
  g.v_max = 6.0;
  const InitialValue S0 = [](double x) { return 0.1 * x * x; };
  const ValueTable a = solve_dp(U, g, S0, p, Execution::Serial);
  const ValueTable b = solve_dp(U, g, S0, p, Execution::Parallel);
  const ValueTable r = solve_dp_reference(U, g, S0, p);
  CHECK(same(a, b));
  CHECK(same(a, r));
}

TEST_CASE("ties go to the smaller displacement") {
  const ModelParams p(2.0, 1.0);
  const ZeroPotential U;
  const GridSpec g = toy(0.5, 2.0);
  const ValueTable t = solve_dp(U, g, [](double) { return 0.0; }, p);
  for (std::size_t j = 0; j < g.num_cells(); ++j) CHECK(t.final_slice().back[j - t.final_slice().lo] == static_cast<int>(j));
}

TEST_CASE("Dirac data leaves unreachable cells at +inf") {
  const ModelParams p(2.0, 1.0);
  const ZeroPotential U;
  const GridSpec g = toy(0.5, 1.0);
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> init(g.num_cells(), inf);
  init[0] = 0.0;
  const auto out = propagate(U, g, init, p);
  CHECK(out[0] == 0.0);
  CHECK(std::isfinite(out[1]));
  CHECK(out[2] == inf);
}

TEST_CASE("windowed solve keeps the minimizer inside the window") {
  const ModelParams p(2.0, 1.0);
  const AcceleratingPotential U(0.0, 0.0, 20.0, std::sqrt(0.4), 1.0, 2.0);
  GridSpec g;
  g.x_min = -U.curve().value(20.0) - 6.0;
  g.x_max = 3.0;
  g.dx = 0.05;
  g.t1 = 0.0;
  g.t2 = 20.0;
  g.dt = 0.2;
  g.v_max = 8.0;
  const GridSpec w = comoving_window(U.curve(), 0.0, 5.0, 0.0, g, 1.0);
  const ValueTable full = solve_dp(U, g, [](double) { return 0.0; }, p);
  const ValueTable win = solve_dp(U, w, [](double) { return 0.0; }, p);
  const std::size_t j = g.nearest_cell(0.0);
  CHECK(win.final_slice().at(j) == doctest::Approx(full.final_slice().at(j)).epsilon(1e-12));
  const Trajectory tr = backtrack(win, 0.0);
  CHECK_NOTHROW(check_window_clearance(win, tr));
}
