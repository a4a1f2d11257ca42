#include <doctest.h>

#include <cmath>

#include "mcct/constructions.hpp"
#include "mcct/mixing.hpp"
#include "test_support.hpp"

using namespace mcct;
using testing::make_chain;
using testing::make_matrix;

TEST_CASE("tv distance") {
  const auto a = ProbabilityVector::create({1.0, 0.0});
  const auto b = ProbabilityVector::create({0.5, 0.5});
  CHECK(tv_distance(a, b) == doctest::Approx(0.5));
  CHECK(tv_distance(a, a) == 0.0);
  const auto c = ProbabilityVector::create({0.7, 0.3});
  const auto d = ProbabilityVector::create({0.4, 0.6});
  CHECK(tv_distance(c, d) == doctest::Approx(0.3));
  CHECK_THROWS_AS(tv_distance(a, ProbabilityVector::create({1.0, 0.0, 0.0})),
                  LengthMismatchError);
}

TEST_CASE("discrete mixing time of the two-state chain") {
  SUBCASE("p = 1/2 mixes in one step") {
    const auto two = build_two_state(0.5);
    const auto report = mixing_time_discrete(two.chain, two.stationary(), 0.125);
    CHECK(report.time == 1.0);
    CHECK(report.worst_tv_at_time == doctest::Approx(0.0));
  }
  SUBCASE("closed form across p and eps") {
    for (double p : {0.05, 0.1, 0.3, 0.45, 0.6, 0.9}) {
      for (double eps : {0.125, 0.0625, 0.3}) {
        const auto two = build_two_state(p);
        const auto report = mixing_time_discrete(two.chain, two.stationary(), eps);
        CHECK(report.time == doctest::Approx(testing::two_state_mixing_time(p, eps)));
        CHECK(report.worst_tv_at_time <= eps);
        CHECK(report.worst_tv_before > eps);
      }
    }
  }
  SUBCASE("T(eps) is Theta(1/p) for constant eps") {
    for (double p : {0.01, 0.003}) {
      const auto two = build_two_state(p);
      const auto report = mixing_time_discrete(two.chain, two.stationary(), 0.125);
      const double predicted = std::log(4.0) / (2.0 * p);  // small-p limit
      CHECK(report.time * p > 0.5 * predicted * p);
      CHECK(report.time * p < 1.5 * predicted * p);
    }
  }
  SUBCASE("epsilon out of range is rejected") {
    const auto two = build_two_state(0.3);
    CHECK_THROWS_AS(mixing_time_discrete(two.chain, two.stationary(), 0.5), ValidationError);
    CHECK_THROWS_AS(mixing_time_discrete(two.chain, two.stationary(), 0.0), ValidationError);
  }
}

TEST_CASE("worst-case tv is non-increasing along the trajectory") {
  const auto chain = build_random_chain(6, 77, RandomChainKind::general);
  const auto pi = stationary_distribution(chain);
  Matrix power = chain.rows();
  double prev = worst_case_tv(power, pi);
  for (int t = 2; t <= 40; ++t) {
    power = matmul(power, chain.rows());
    const double cur = worst_case_tv(power, pi);
    CHECK(cur <= prev + 1e-12);
    prev = cur;
  }
}

TEST_CASE("mixing time is non-increasing in epsilon") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto chain = build_random_chain(3 + seed % 5, 500 + seed, RandomChainKind::general);
    const auto pi = stationary_distribution(chain);
    const auto t16 = mixing_time_discrete(chain, pi, 1.0 / 16.0);
    const auto t8 = mixing_time_discrete(chain, pi, 1.0 / 8.0);
    CHECK(t16.time >= t8.time);
  }
}

TEST_CASE("continuous mixing time") {
  SUBCASE("symmetric two-state closed form") {
    const double q = 0.7;
    const auto gen = Generator::create(make_matrix({{-q, q}, {q, -q}}));
    const auto pi = ProbabilityVector::create({0.5, 0.5});
    for (double eps : {0.125, 0.05}) {
      const auto report = mixing_time_continuous(gen, pi, eps, 1e-9);
      const double expected = std::log(1.0 / (2.0 * eps)) / (2.0 * q);
      CHECK(report.time == doctest::Approx(expected).epsilon(1e-6));
      CHECK(report.worst_tv_at_time <= eps);
      CHECK(report.worst_tv_before > eps);
    }
  }
  SUBCASE("scaling the generator rescales the mixing time") {
    const auto gen1 = Generator::create(make_matrix({{-1.0, 0.6, 0.4},
                                                     {0.2, -0.5, 0.3},
                                                     {0.7, 0.3, -1.0}}));
    Matrix doubled = gen1.rates();
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) doubled(i, j) *= 2.0;
    const auto gen2 = Generator::create(std::move(doubled));
    // Stationary distribution of the uniformized kernel.
    Matrix kernel(3, 3, 0.0);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        kernel(i, j) = (i == j ? 1.0 : 0.0) + gen1(i, j) / gen1.max_exit_rate();
    const auto pi = stationary_distribution(ChainModel::create(std::move(kernel)));
    const auto t1 = mixing_time_continuous(gen1, pi, 0.125, 1e-9);
    const auto t2 = mixing_time_continuous(gen2, pi, 0.125, 1e-9);
    CHECK(t2.time == doctest::Approx(0.5 * t1.time).epsilon(1e-6));
  }
  SUBCASE("absorbing generator is rejected") {
    const auto gen = Generator::create(make_matrix({{0.0, 0.0}, {1.0, -1.0}}));
    const auto pi = ProbabilityVector::create({0.5, 0.5});
    CHECK_THROWS_AS(mixing_time_continuous(gen, pi, 0.125), NonErgodicError);
  }
}

TEST_CASE("claim: mixing controls the spectral expansion of M^T") {
  SUBCASE("rank-one power") {
    const auto two = build_two_state(0.5);
    const auto report = verify_claim_mix_to_spectral(two.chain, two.stationary(), 0.125);
    CHECK(report.pass);
    CHECK(report.lhs == doctest::Approx(0.0));
    CHECK(report.rhs == doctest::Approx(0.5));
  }
  SUBCASE("random chains") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto chain = build_random_chain(5, 600 + seed, RandomChainKind::general);
      const auto pi = stationary_distribution(chain);
      CHECK(verify_claim_mix_to_spectral(chain, pi, 0.125).pass);
    }
  }
  SUBCASE("near-periodic chain with small noise") {
    // Slow chain: a 3-cycle with a little laziness.
    Matrix rows = testing::deterministic_cycle3().rows();
    Matrix noisy(3, 3, 0.0);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        noisy(i, j) = 0.9 * rows(i, j) + (i == j ? 0.1 : 0.0);
    const auto chain = ChainModel::create(std::move(noisy));
    const auto pi = stationary_distribution(chain);
    const auto report = verify_claim_mix_to_spectral(chain, pi, 0.125);
    CHECK(report.pass);
    CHECK(report.T > 3.0);
  }
}

TEST_CASE("lemma: reversible lambda vs (2 eps)^(1/T)") {
  SUBCASE("two-state p = 0.3") {
    const auto two = build_two_state(0.3);
    const auto report = verify_lemma_reversible(two.chain, two.stationary(), 0.125);
    CHECK(report.pass);
    CHECK(report.lhs == doctest::Approx(0.4).epsilon(1e-9));
    CHECK(report.rhs == doctest::Approx(std::pow(0.25, 1.0 / report.T)).epsilon(1e-12));
  }
  SUBCASE("lazy uniform chain") {
    // M = I/2 + U/2 where U is uniform over 4 states.
    Matrix rows(4, 4, 0.125);
    for (std::size_t i = 0; i < 4; ++i) rows(i, i) += 0.5;
    const auto chain = ChainModel::create(std::move(rows));
    const auto pi = stationary_distribution(chain);
    const auto report = verify_lemma_reversible(chain, pi, 0.25);
    CHECK(report.pass);
    CHECK(report.T == 1.0);
    CHECK(report.lambda == doctest::Approx(0.5).epsilon(1e-10));
  }
  SUBCASE("irreversible input is rejected") {
    const auto chain = build_random_chain(4, 900, RandomChainKind::general);
    const auto pi = stationary_distribution(chain);
    CHECK_THROWS_AS(verify_lemma_reversible(chain, pi, 0.125), NotReversibleError);
  }
}

TEST_CASE("claim: one mixing time contracts tv by 2 eps") {
  SUBCASE("point mass on the two-state chain") {
    const auto two = build_two_state(0.2);
    const auto pi = two.stationary();
    const auto mixing = mixing_time_discrete(two.chain, pi, 0.125);
    const auto power = matrix_power(two.chain.rows(), static_cast<std::uint64_t>(mixing.time));
    const Vec x{1.0, 0.0};
    const double before = 0.5 * l1_distance(x, pi.entries());
    const double after = 0.5 * l1_distance(row_times_matrix(x, power), pi.entries());
    CHECK(after / before <= 2.0 * 0.125 + 1e-12);
  }
  SUBCASE("random starts on a random chain") {
    const auto chain = build_random_chain(6, 321, RandomChainKind::general);
    const auto pi = stationary_distribution(chain);
    const auto report = verify_claim_contraction(chain, pi, 0.125, 1000, 5150);
    CHECK(report.pass);
    CHECK(report.lhs <= 0.25 + 1e-8);
  }
}

TEST_CASE("sinclair lower bound on the mixing time") {
  SUBCASE("two-state p = 0.3") {
    const auto two = build_two_state(0.3);
    const auto report = verify_sinclair_lower(two.chain, two.stationary(), 0.125);
    CHECK(report.pass);
    const double expected_lhs = 0.5 * (0.4 / 0.6) * std::log(4.0);
    CHECK(report.lhs == doctest::Approx(expected_lhs).epsilon(1e-8));
  }
  SUBCASE("rank-one reversible chain has zero left side") {
    const auto two = build_two_state(0.5);
    const auto report = verify_sinclair_lower(two.chain, two.stationary(), 0.125);
    CHECK(report.pass);
    CHECK(report.lhs == doctest::Approx(0.0));
  }
  SUBCASE("tight regime for a nearly periodic reversible chain") {
    const auto two = build_two_state(0.01);
    const auto report = verify_sinclair_lower(two.chain, two.stationary(), 0.125);
    CHECK(report.pass);
    CHECK(report.lhs > 0.3 * report.rhs);  // genuinely stressed
  }
  SUBCASE("irreversible input is rejected") {
    const auto cycle = build_random_chain(4, 901, RandomChainKind::general);
    const auto pi = stationary_distribution(cycle);
    CHECK_THROWS_AS(verify_sinclair_lower(cycle, pi, 0.125), NotReversibleError);
  }
}
