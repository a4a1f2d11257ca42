#include <doctest.h>

#include <cmath>

#include "mcct/constructions.hpp"
#include "mcct/rng.hpp"
#include "test_support.hpp"

using namespace mcct;
using testing::make_chain;
using testing::make_matrix;

TEST_CASE("probability vector validation") {
  const auto pv = ProbabilityVector::create({0.3, 0.7});
  CHECK(pv[0] == doctest::Approx(0.3));
  CHECK_THROWS_AS(ProbabilityVector::create({0.5, 0.4}), ValidationError);
  CHECK_THROWS_AS(ProbabilityVector::create({1.2, -0.2}), ValidationError);
  // Tiny deviations are renormalized.
  const auto nudged = ProbabilityVector::create({0.5 + 4e-10, 0.5});
  CHECK(nudged[0] + nudged[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("chain model validation") {
  CHECK_THROWS_AS(make_chain({{1.0}}), ValidationError);
  CHECK_THROWS_AS(make_chain({{0.6, 0.3}, {0.5, 0.5}}), ValidationError);
  const auto chain = make_chain({{0.7, 0.3}, {0.3, 0.7}});
  CHECK(chain.n() == 2);
  CHECK(chain(0, 1) == doctest::Approx(0.3));
}

TEST_CASE("ergodicity diagnostics") {
  CHECK(build_two_state(0.3).chain.is_ergodic());

  const auto cycle = testing::deterministic_cycle3();
  CHECK_FALSE(cycle.is_ergodic());
  CHECK(cycle.ergodicity().diagnostic == "periodic, period 3");

  const auto identity = make_chain({{1.0, 0.0}, {0.0, 1.0}});
  CHECK_FALSE(identity.is_ergodic());
  CHECK(identity.ergodicity().diagnostic == "not irreducible");
}

TEST_CASE("stationary distribution") {
  const auto two = build_two_state(0.3);
  const auto pi = stationary_distribution(two.chain);
  CHECK(pi[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(pi[1] == doctest::Approx(0.5).epsilon(1e-12));

  const auto chain = make_chain({{0.5, 0.5}, {0.25, 0.75}});
  const auto pi2 = stationary_distribution(chain);
  CHECK(pi2[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(pi2[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  // Any doubly stochastic ergodic chain has the uniform fixed point.
  const auto doubly = make_chain({{0.2, 0.5, 0.3}, {0.5, 0.1, 0.4}, {0.3, 0.4, 0.3}});
  const auto pi3 = stationary_distribution(doubly);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(pi3[i] == doctest::Approx(1.0 / 3.0).epsilon(1e-11));

  CHECK_THROWS_AS(stationary_distribution(testing::deterministic_cycle3()), NonErgodicError);
}

TEST_CASE("stationary fixed point on random chains") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto chain = build_random_chain(2 + seed % 7, seed, RandomChainKind::general);
    const auto pi = stationary_distribution(chain, 1e-12);
    const double residual =
        l1_distance(row_times_matrix(pi.entries(), chain.rows()), pi.entries());
    CHECK(residual <= 1e-12);
  }
}

TEST_CASE("pi inner product") {
  const auto pi = ProbabilityVector::create({0.5, 0.5});
  CHECK(pi_inner_product(pi.entries(), pi.entries(), pi) == doctest::Approx(1.0));
  // The kernel cancels pi for any distribution in the second slot.
  const auto u = ProbabilityVector::create({0.2, 0.8});
  CHECK(pi_inner_product(u.entries(), pi.entries(), pi) == doctest::Approx(1.0));
  CHECK(pi_inner_product({1.0, 0.0}, {1.0, 0.0}, pi) == doctest::Approx(2.0));

  const auto degenerate = ProbabilityVector::create({1.0, 0.0});
  CHECK_THROWS_AS(pi_inner_product({1.0, 0.0}, {1.0, 0.0}, degenerate),
                  ZeroStationaryMassError);
}

TEST_CASE("decompose splits along pi") {
  const auto pi = ProbabilityVector::create({0.5, 0.5});
  SUBCASE("x = pi") {
    const auto d = decompose(pi.entries(), pi);
    CHECK(pi_norm(d.perp, pi) <= 1e-14);
    CHECK(d.parallel[0] == doctest::Approx(0.5));
  }
  SUBCASE("point mass") {
    const auto d = decompose({1.0, 0.0}, pi);
    CHECK(d.parallel[0] == doctest::Approx(0.5));
    CHECK(d.parallel[1] == doctest::Approx(0.5));
    CHECK(d.perp[0] == doctest::Approx(0.5));
    CHECK(d.perp[1] == doctest::Approx(-0.5));
  }
  SUBCASE("any distribution projects onto pi itself") {
    const auto pi3 = ProbabilityVector::create({0.2, 0.3, 0.5});
    const auto phi = ProbabilityVector::create({0.6, 0.1, 0.3});
    const auto d = decompose(phi.entries(), pi3);
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(d.parallel[i] == doctest::Approx(pi3[i]).epsilon(1e-14));
  }
}

TEST_CASE("pythagorean identity for random vectors") {
  RandomStream rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 6;
    const auto pi = random_distribution(n, rng);
    Vec x(n);
    for (double& v : x) v = rng.next_symmetric();
    const auto d = decompose(x, pi);
    const double whole = pi_inner_product(x, x, pi);
    const double parts =
        pi_inner_product(d.parallel, d.parallel, pi) + pi_inner_product(d.perp, d.perp, pi);
    CHECK(whole == doctest::Approx(parts).epsilon(1e-10));
    CHECK(std::abs(pi_inner_product(d.perp, pi.entries(), pi)) <=
          1e-12 * std::max(1.0, pi_norm(x, pi)));
  }
}

TEST_CASE("propagation keeps distributions on the simplex") {
  RandomStream rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const auto chain = build_random_chain(2 + trial % 5, 7000 + trial, RandomChainKind::general);
    const auto u = random_distribution(chain.n(), rng);
    const auto v = propagate(u, chain);
    double sum = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      CHECK(v[i] >= 0.0);
      sum += v[i];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("generator validation") {
  CHECK_THROWS_AS(Generator::create(make_matrix({{-1.0, 0.5}, {1.0, -1.0}})),
                  InvalidGeneratorError);
  CHECK_THROWS_AS(Generator::create(make_matrix({{-1.0, 1.0}, {-1.0, 1.0}})),
                  InvalidGeneratorError);
  const auto gen = Generator::create(make_matrix({{-2.0, 2.0}, {1.0, -1.0}}));
  CHECK(gen.max_exit_rate() == doctest::Approx(2.0));
}

TEST_CASE("matrix exponential") {
  SUBCASE("zero generator gives the identity") {
    const auto gen = Generator::create(make_matrix({{0.0, 0.0}, {0.0, 0.0}}));
    const auto m = matrix_exponential(gen, 3.0);
    CHECK(m(0, 0) == doctest::Approx(1.0));
    CHECK(m(0, 1) == doctest::Approx(0.0));
  }
  SUBCASE("symmetric two-state closed form") {
    const double q = 0.8;
    const auto gen = Generator::create(make_matrix({{-q, q}, {q, -q}}));
    for (double t : {0.1, 0.75, 2.5, 10.0}) {
      const auto m = matrix_exponential(gen, t, 1e-13);
      const double expected = 0.5 * (1.0 - std::exp(-2.0 * q * t));
      CHECK(m(0, 1) == doctest::Approx(expected).epsilon(1e-11));
      CHECK(m(1, 0) == doctest::Approx(expected).epsilon(1e-11));
      CHECK(m(0, 0) + m(0, 1) == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
  SUBCASE("rows sum to one for random generators") {
    RandomStream rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t n = 2 + trial % 4;
      Matrix rates(n, n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        double off = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j) continue;
          rates(i, j) = 2.0 * rng.next_unit();
          off += rates(i, j);
        }
        rates(i, i) = -off;
      }
      const auto gen = Generator::create(std::move(rates));
      const auto m = matrix_exponential(gen, 1.7, 1e-12);
      for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) sum += m(i, j);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }
  SUBCASE("semigroup property") {
    RandomStream rng(6);
    for (int trial = 0; trial < 5; ++trial) {
      const std::size_t n = 2 + trial % 3;
      Matrix rates(n, n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        double off = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j) continue;
          rates(i, j) = rng.next_unit();
          off += rates(i, j);
        }
        rates(i, i) = -off;
      }
      const auto gen = Generator::create(std::move(rates));
      const double s = 2.0 * rng.next_unit();
      const double t = 2.0 * rng.next_unit();
      const auto lhs = matmul(matrix_exponential(gen, s).rows(),
                              matrix_exponential(gen, t).rows());
      const auto rhs = matrix_exponential(gen, s + t);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          CHECK(lhs(i, j) == doctest::Approx(rhs(i, j)).epsilon(1e-8));
    }
  }
  SUBCASE("large q t stays stochastic through splitting") {
    const auto gen = Generator::create(make_matrix({{-200.0, 200.0}, {150.0, -150.0}}));
    const auto m = matrix_exponential(gen, 10.0, 1e-12);
    // Fully mixed by then: rows equal the stationary distribution 3/7, 4/7.
    CHECK(m(0, 0) == doctest::Approx(3.0 / 7.0).epsilon(1e-9));
    CHECK(m(1, 1) == doctest::Approx(4.0 / 7.0).epsilon(1e-9));
  }
}
