#include <cmath>
#include <sstream>

#include "doctest.h"
#include "hjlab/errors.hpp"
#include "hjlab/kernel.hpp"
#include "hjlab/potentials.hpp"
#include "hjlab/studies.hpp"

using namespace hjlab;

namespace {

GridSpec line(double t1, double t2, double dt) {
  GridSpec g;
  g.x_min = -3.0;
  g.x_max = 3.0;
  g.dx = 0.25;
  g.t1 = t1;
  g.t2 = t2;
  g.dt = dt;
  g.v_max = 8.0;
  return g;
}

}  // namespace

TEST_CASE("kernel bounds: jensen - C tau <= A, and A <= jensen up to grid slack") {
  const ModelParams p(2.0, 1.0);
  const Potential U = random_potential(3, {Profile{Profile::Kind::Cosine, 1.0, 3.0, 0.0}}, 2.0, 0.0, 2.0, 1.0);
  const Kernel k = kernel(*U, line(0.0, 2.0, 0.5), p);
  const auto d = kernel_bounds_defect(k, p);
  CHECK(d.lower == 0.0);
  CHECK(d.upper <= 5.0 * (0.25 + 0.5) * kernel_local_slope(k));
  CHECK(k.finite_entries() > 0);
}

TEST_CASE("constant potential shifts the free kernel by C tau") {
  const ModelParams p(2.0, 1.0);
  const Kernel a = kernel(ZeroPotential(), line(0.0, 1.0, 0.25), p);
  const Kernel b = kernel(ConstantPotential(0.5), line(0.0, 1.0, 0.25), p);
  for (std::size_t i = 0; i < a.num_sources(); ++i) {
    for (std::size_t j = 0; j < a.num_targets(); ++j) {
      if (a.at(i, j)) CHECK(*b.at(i, j) == doctest::Approx(*a.at(i, j) - 0.5));
    }
  }
}

TEST_CASE("kernel composition is associative") {
  const ModelParams p(2.0, 1.0);
  const Potential U = random_potential(8, {Profile{Profile::Kind::Gaussian, 1.0, 1.0, 0.0}}, 2.0, 0.0, 3.0, 1.0);
  const Kernel k1 = kernel(*U, line(0.0, 1.0, 0.5), p);
  const Kernel k2 = kernel(*U, line(1.0, 2.0, 0.5), p);
  const Kernel k3 = kernel(*U, line(2.0, 3.0, 0.5), p);
  const Kernel l = minplus_compose(minplus_compose(k1, k2), k3);
  const Kernel r = minplus_compose(k1, minplus_compose(k2, k3));
  for (std::size_t i = 0; i < l.num_sources(); ++i) {
    for (std::size_t j = 0; j < l.num_targets(); ++j) {
      REQUIRE(l.at(i, j).has_value() == r.at(i, j).has_value());
      if (l.at(i, j)) CHECK(*l.at(i, j) == doctest::Approx(*r.at(i, j)).epsilon(1e-13));
    }
  }
}

TEST_CASE("composition on aligned steps reproduces the DP kernel exactly") {
  const ModelParams p(2.0, 1.0);
  const Potential U = random_potential(5, {Profile{Profile::Kind::Cosine, 1.0, 2.0, 0.3}}, 2.0, 0.0, 2.0, 1.0);
  const Kernel k13 = kernel(*U, line(0.0, 2.0, 0.5), p);
  const Kernel k12 = kernel(*U, line(0.0, 1.0, 0.5), p);
  const Kernel k23 = kernel(*U, line(1.0, 2.0, 0.5), p);
  const FlowDefect f = flow_defect(k13, k12, k23);
  CHECK(f.sup <= 1e-12);
  CHECK(f.compared > 0);
}

TEST_CASE("identity kernel is neutral") {
  const ModelParams p(2.0, 1.0);
  const Kernel k = kernel(ZeroPotential(), line(0.0, 1.0, 0.5), p);
  const Kernel e = identity_kernel(k.source_nodes(), 0.0);
  const Kernel c = minplus_compose(e, k);
  for (std::size_t i = 0; i < k.num_sources(); ++i) {
    for (std::size_t j = 0; j < k.num_targets(); ++j) CHECK(c.at(i, j) == k.at(i, j));
  }
}

TEST_CASE("Lax-Oleinik step of a constant is constant minus at most C tau") {
  const ModelParams p(2.0, 1.0);
  const Potential U = periodic_potential(Profile{Profile::Kind::Cosine, 1.0, 4.0, 0.0}, 1.0);
  const Kernel k = kernel(*U, line(0.0, 1.0, 0.25), p);
  const GridFunction S{k.source_nodes(), std::vector<double>(k.num_sources(), 2.0)};
  const auto r = minplus_apply(k, S);
  for (double v : r.result.values) {
    CHECK(v <= 2.0 + 1e-12);
    CHECK(v >= 2.0 - 1.0 - 1e-12);
  }
  CHECK(domination_defect(r.result, k, p.C()) <= 0.0);
}

TEST_CASE("Lipschitz-in-the-large constant and truncation") {
  const GridFunction S{{0.0, 1.0, 2.0}, {0.0, 2.0, 0.0}};
  CHECK(lipschitz_in_large_constant(S) == doctest::Approx(1.0));
  const ModelParams p(2.0, 1.0);
  const Kernel k = kernel(ZeroPotential(), line(0.0, 1.0, 0.5), p);
  const Kernel t = truncated_kernel(k, 0.5);
  CHECK(t.finite_entries() == t.num_sources() * t.num_targets());
  for (std::size_t i = 0; i < t.num_sources(); ++i) {
    for (std::size_t j = 0; j < t.num_targets(); ++j) {
      CHECK(*t.at(i, j) <= 0.5 * (std::abs(t.source_nodes()[i] - t.target_nodes()[j]) + 1.0) + 1e-12);
    }
  }
}

TEST_CASE("grid functions round-trip through CSV") {
  const GridFunction S{{-1.0, 0.0, 1.0}, {0.1, 1.0 / 3.0, 2.5}};
  std::ostringstream os;
  write_grid_function_csv(os, S);
  std::istringstream is(os.str());
  const GridFunction R = read_grid_function_csv(is);
  CHECK(R.nodes == S.nodes);
  CHECK(R.values == S.values);
  const GridFunction bad{{0.0, 1.0}, {0.0}};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("zero-potential deviation shrinks with the velocity quantum") {
  const ModelParams p(2.0, 1.0);
  const auto a = zero_kernel_deviation(p, 3.0, 121, 1.0, 5, 6.0);
  const auto b = zero_kernel_deviation(p, 3.0, 241, 1.0, 7, 6.0);
  CHECK(a.deviation <= 2.0 * a.dx * a.slope);
  CHECK(b.deviation < a.deviation);
}

TEST_CASE("iterated operator stays dominated") {
  const ModelParams p(2.0, 1.0);
  const Potential U = periodic_potential(Profile{Profile::Kind::Cosine, 1.0, 4.0, 0.0}, 1.0);
  const auto s = iterate_operator(*U, 1.0, 4.0, 0.2, 5, p);
  CHECK(s.worst_domination <= s.slack);
  CHECK(s.max_lipschitz <= s.lipschitz_bound + s.slack);
}
