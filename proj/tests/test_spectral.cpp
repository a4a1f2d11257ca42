#include <doctest.h>

#include <cmath>

#include "mcct/constructions.hpp"
#include "mcct/rng.hpp"
#include "mcct/spectral.hpp"
#include "test_support.hpp"

using namespace mcct;
using testing::make_chain;

TEST_CASE("time reversal") {
  SUBCASE("reversible chain is its own reversal") {
    const auto chain = build_random_chain(4, 11, RandomChainKind::reversible);
    const auto pi = stationary_distribution(chain);
    const auto rev = time_reversal(chain, pi);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        CHECK(rev(i, j) == doctest::Approx(chain(i, j)).epsilon(1e-11));
  }
  SUBCASE("deterministic cycle reverses") {
    const auto cycle = testing::deterministic_cycle3();
    const auto pi = ProbabilityVector::create({1.0 / 3, 1.0 / 3, 1.0 / 3});
    const auto rev = time_reversal(cycle, pi);
    CHECK(rev(0, 2) == doctest::Approx(1.0));
    CHECK(rev(2, 1) == doctest::Approx(1.0));
    CHECK(rev(1, 0) == doctest::Approx(1.0));
  }
  SUBCASE("entrywise formula") {
    const auto chain = make_chain({{0.5, 0.5}, {0.25, 0.75}});
    const auto pi = stationary_distribution(chain);
    const auto rev = time_reversal(chain, pi);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        CHECK(rev(i, j) == doctest::Approx(chain(i, j)).epsilon(1e-11));
  }
  SUBCASE("reversal shares the stationary distribution") {
    const auto chain = build_random_chain(5, 12, RandomChainKind::general);
    const auto pi = stationary_distribution(chain);
    const auto rev = time_reversal(chain, pi);
    CHECK(l1_distance(row_times_matrix(pi.entries(), rev.rows()), pi.entries()) <= 1e-10);
  }
}

TEST_CASE("reversiblization") {
  SUBCASE("cycle composed with its reverse is the identity") {
    const auto cycle = testing::deterministic_cycle3();
    const auto pi = ProbabilityVector::create({1.0 / 3, 1.0 / 3, 1.0 / 3});
    const auto r = reversiblization(cycle, pi);
    for (std::size_t i = 0; i < 3; ++i) CHECK(r(i, i) == doctest::Approx(1.0));
  }
  SUBCASE("reversible chain gives M squared") {
    const auto chain = build_random_chain(4, 13, RandomChainKind::reversible);
    const auto pi = stationary_distribution(chain);
    const auto r = reversiblization(chain, pi);
    const auto m2 = matmul(chain.rows(), chain.rows());
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        CHECK(r(i, j) == doctest::Approx(m2(i, j)).epsilon(1e-10));
  }
  SUBCASE("R is reversible and keeps pi, for random chains") {
    const auto chain = build_random_chain(4, 14, RandomChainKind::general);
    const auto pi = stationary_distribution(chain);
    const auto r = reversiblization(chain, pi);
    CHECK(detailed_balance_residual(r, pi) <= 1e-10);
    CHECK(l1_distance(row_times_matrix(pi.entries(), r.rows()), pi.entries()) <= 1e-10);
  }
}

TEST_CASE("spectral expansion of the two-state chain") {
  for (double p : {0.1, 0.3, 0.5, 0.7, 0.95}) {
    const auto two = build_two_state(p);
    const auto pi = two.stationary();
    const auto report = spectral_expansion(two.chain, pi);
    CHECK(report.lambda == doctest::Approx(std::abs(1.0 - 2.0 * p)).epsilon(1e-9));
    CHECK(report.gap == doctest::Approx(1.0 - report.lambda));
    CHECK(report.lambda == doctest::Approx(std::sqrt(report.lambda_R)).epsilon(1e-10));
  }
}

TEST_CASE("spectral expansion degenerate cases") {
  SUBCASE("deterministic cycle has lambda 1") {
    const auto cycle = testing::deterministic_cycle3();
    const auto pi = ProbabilityVector::create({1.0 / 3, 1.0 / 3, 1.0 / 3});
    const auto report = spectral_expansion(cycle, pi);
    CHECK(report.lambda == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("rank-one chain has lambda 0 and gap 1") {
    const auto chain = make_chain({{0.25, 0.75}, {0.25, 0.75}});
    const auto pi = stationary_distribution(chain);
    const auto report = spectral_expansion(chain, pi);
    CHECK(report.lambda == 0.0);
    CHECK(report.gap == 1.0);
  }
  SUBCASE("non-stationary pi is rejected") {
    const auto chain = make_chain({{0.5, 0.5}, {0.25, 0.75}});
    CHECK_THROWS_AS(spectral_expansion(chain, ProbabilityVector::create({0.5, 0.5})),
                    NonStationaryError);
  }
}

TEST_CASE("variational characterization of lambda") {
  RandomStream rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const auto chain = build_random_chain(5, 300 + trial, RandomChainKind::general);
    const auto pi = stationary_distribution(chain);
    const auto report = spectral_expansion(chain, pi);

    double max_ratio = 0.0;
    for (int i = 0; i < 2000; ++i) {
      Vec x(5);
      for (double& v : x) v = rng.next_symmetric();
      const Vec y = decompose(x, pi).perp;
      const double norm = pi_norm(y, pi);
      if (norm < 1e-12) continue;
      max_ratio = std::max(max_ratio, pi_norm(row_times_matrix(y, chain.rows()), pi) / norm);
    }
    CHECK(max_ratio <= report.lambda + 1e-8);

    // The reported eigenvector attains the maximum.
    const Vec& y = report.eigenvector;
    const double achieved = pi_norm(row_times_matrix(y, chain.rows()), pi) / pi_norm(y, pi);
    CHECK(achieved >= report.lambda - 1e-6);
  }
}

TEST_CASE("lambda of powers for reversible chains") {
  const auto rev = build_random_chain(5, 23, RandomChainKind::reversible);
  const auto pi_rev = stationary_distribution(rev);
  const double lambda = spectral_expansion(rev, pi_rev).lambda;
  for (std::uint64_t t : {1ULL, 2ULL, 3ULL}) {
    const double lambda_t = spectral_expansion(chain_power(rev, t), pi_rev).lambda;
    CHECK(lambda_t == doctest::Approx(std::pow(lambda, static_cast<double>(t))).epsilon(1e-8));
  }
}

TEST_CASE("m operator check") {
  SUBCASE("two-state second eigenvector achieves lambda") {
    const auto two = build_two_state(0.3);
    const auto pi = two.stationary();
    const Vec y{0.5, -0.5};
    const Vec image = row_times_matrix(y, two.chain.rows());
    CHECK(pi_norm(image, pi) / pi_norm(y, pi) == doctest::Approx(0.4).epsilon(1e-12));
  }
  SUBCASE("random trials stay below lambda") {
    const auto chain = build_random_chain(5, 31, RandomChainKind::general);
    const auto pi = stationary_distribution(chain);
    const auto report = m_operator_check(chain, pi, 100, 901);
    CHECK(report.max_ratio <= report.lambda + 1e-8);
    CHECK(report.max_parallel_leak <= 1e-10);
  }
}
