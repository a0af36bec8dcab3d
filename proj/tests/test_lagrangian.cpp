#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "hjlab/model.hpp"
#include "hjlab/potential.hpp"

using namespace hjlab;

TEST_CASE("alpha is the conjugate exponent") {
  for (double beta : {1.5, 2.0, 3.0}) {
    const ModelParams p(beta, 1.0);
    CHECK(1.0 / p.alpha() + 1.0 / p.beta() == doctest::Approx(1.0));
  }
  CHECK_THROWS(ModelParams(1.0, 1.0));
  CHECK_THROWS(ModelParams(2.0, -1.0));
}

TEST_CASE("Legendre transform is an involution and satisfies Fenchel equality") {
  const ConstantPotential U(0.3);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> v(-5.0, 5.0);
  for (double beta : {1.5, 2.0, 3.0}) {
    const ModelParams p(beta, 1.0);
    for (int i = 0; i < 200; ++i) {
      const double x = v(rng);
      const double m = legendre(x, p);
      CHECK(legendre_inv(m, p) == doctest::Approx(x).epsilon(1e-12));
      // L(v) + H(p) = p v at the dual pair.
      CHECK(lagrangian(x, 0.0, 0.0, U, p) + hamiltonian(m, 0.0, 0.0, U, p) == doctest::Approx(m * x).epsilon(1e-12));
      // Young: L(v) + H(q) >= q v for any q.
      const double q = v(rng);
      CHECK(lagrangian(x, 0.0, 0.0, U, p) + hamiltonian(q, 0.0, 0.0, U, p) >= q * x - 1e-12);
    }
  }
}

TEST_CASE("kinetic action of a straight segment") {
  const ModelParams p(3.0, 1.0);
  CHECK(segment_kinetic(2.0, 0.5, p) == doctest::Approx(8.0 / (3.0 * 0.25)));
  CHECK(segment_kinetic(-2.0, 0.5, p) == segment_kinetic(2.0, 0.5, p));
  CHECK(jensen_lower_bound(2.0, 0.5, p) == doctest::Approx(segment_kinetic(2.0, 0.5, p)));
}

TEST_CASE("Jensen: a straight path minimizes the kinetic action among paths with the same endpoints") {
  const ModelParams p(2.0, 1.0);
  const ZeroPotential U;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> noise(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> t(11), x(11);
    for (int i = 0; i <= 10; ++i) {
      t[i] = 0.3 * i;
      x[i] = 2.0 * i / 10.0 + (i > 0 && i < 10 ? noise(rng) : 0.0);
    }
    CHECK(action(Trajectory(t, x), U, p) >= jensen_lower_bound(2.0, 3.0, p) - 1e-12);
  }
}

TEST_CASE("action subtracts the potential integral") {
  const ModelParams p(2.0, 1.0);
  const ConstantPotential U(0.5);
  const Trajectory tr({0.0, 1.0, 2.0}, {0.0, 1.0, 2.0});
  CHECK(action(tr, U, p) == doctest::Approx(2 * 0.5 - 2 * 0.5));
  CHECK(average_speed(tr, 1.0) == doctest::Approx(1.0));
  CHECK(tr.position_at(1.5) == doctest::Approx(1.5));
}

TEST_CASE("segment energies are constant on a free straight line") {
  const ModelParams p(1.5, 1.0);
  const ZeroPotential U;
  const Trajectory tr({0.0, 0.5, 1.0, 1.5}, {0.0, 1.0, 2.0, 3.0});
  const auto e = segment_energies(tr, U, p);
  for (double v : e) CHECK(v == doctest::Approx(e.front()));
  for (double r : el_residual(tr, U, p)) CHECK(std::abs(r) < 1e-12);
}

TEST_CASE("trajectory rejects malformed input") {
  CHECK_THROWS(Trajectory({0.0}, {0.0}));
  CHECK_THROWS(Trajectory({0.0, 1.0}, {0.0}));
  CHECK_THROWS(Trajectory({0.0, 0.0}, {0.0, 1.0}));
}
