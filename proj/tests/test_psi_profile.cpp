#include <doctest.h>

#include <cmath>

#include "invmet/errors.hpp"
#include "invmet/numeric.hpp"
#include "invmet/psi_profile.hpp"
#include "reference/reference_values.hpp"

using namespace invmet;
namespace ref = invmet::reference;

TEST_CASE("eval matches closed forms") {
  CHECK(PsiProfile::power(2.0).eval(0.2) == doctest::Approx(0.04).epsilon(1e-15));
  CHECK(PsiProfile::power(0.75).eval(0.0) == 0.0);
  CHECK(PsiProfile::linear(3.0).eval(0.0) == 0.0);
  CHECK(PsiProfile::power(0.75).eval(1e-4) == doctest::Approx(ref::kPsi34At1em4).epsilon(1e-14));
  CHECK_THROWS_AS(PsiProfile::power(2.0).eval(1.5), DomainError);
  CHECK_THROWS_AS(PsiProfile::power(2.0).eval(-0.1), DomainError);
}

TEST_CASE("constructor rejects invalid profiles") {
  CHECK_THROWS_AS(PsiProfile::power(0.0), DomainError);
  CHECK_THROWS_AS(PsiProfile::linear(-1.0), DomainError);
  CHECK_THROWS_AS(PsiProfile::custom([](double x) { return x + 1.0; }), DomainError);
  CHECK_THROWS_AS(PsiProfile::custom([](double x) { return -x; }), DomainError);
}

TEST_CASE("parse accepts the literal syntax") {
  CHECK(PsiProfile::parse("power:2").parameter() == 2.0);
  CHECK(PsiProfile::parse("linear:0.5").kind() == PsiProfile::Kind::linear);
  CHECK(PsiProfile::parse("power:0.75").label() == "power:0.75");
  CHECK_THROWS_AS(PsiProfile::parse("power:0"), DomainError);
  CHECK_THROWS_AS(PsiProfile::parse("cubic:1"), DomainError);
  CHECK_THROWS_AS(PsiProfile::parse("power:2x"), DomainError);
  CHECK_THROWS_AS(PsiProfile::parse("power"), DomainError);
}

TEST_CASE("inverse") {
  CHECK(PsiProfile::power(2.0).inverse(0.04) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(PsiProfile::linear(1.0).inverse(0.3) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(PsiProfile::power(0.75).inverse(1e-4) == doctest::Approx(ref::kInv34At1em4).epsilon(1e-12));
  CHECK_THROWS_AS(PsiProfile::power(2.0).inverse(1.5), DomainError);

  const auto bumpy = PsiProfile::custom([](double x) { return x * (1.2 + std::sin(20.0 * x)); });
  CHECK_FALSE(bumpy.strictly_increasing());
  CHECK_THROWS_AS(bumpy.inverse(0.1), CertificationError);
}

TEST_CASE("custom inverse by bisection agrees with the closed form") {
  const auto closed = PsiProfile::power(0.75);
  const auto sampled = PsiProfile::custom([](double x) { return std::pow(x, 0.75); });
  numeric::Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    const double y = rng.uniform(1e-9, 1.0);
    const double a = closed.inverse(y);
    const double b = sampled.inverse(y);
    CHECK(std::abs(a - b) <= 1e-10 * a);
    CHECK(std::abs(sampled.eval(b) - y) <= 1e-12 * std::max(1.0, y));
  }
}

TEST_CASE("property: inverse of eval is the identity on the grid") {
  for (const auto& psi : {PsiProfile::power(2.0), PsiProfile::power(0.4), PsiProfile::linear(0.7),
                          PsiProfile::custom([](double x) { return x * x * (1.0 + x); })}) {
    for (double x : numeric::log_grid(1e-8, 1.0, 1000)) {
      const double y = psi.eval(x);
      if (y > psi.at_one()) continue;
      CHECK(std::abs(psi.inverse(y) - x) <= 1e-10 * x);
    }
  }
}

TEST_CASE("psi1 and its inverse") {
  const auto p = PsiProfile::power(0.75);
  CHECK(p.psi1(0.0016) == doctest::Approx(ref::kPsi1Of34At0p0016).epsilon(1e-13));
  CHECK_THROWS_AS(p.psi1(0.0), DomainError);
  CHECK_THROWS_AS(p.psi1_inverse(0.25), DomainError);
  CHECK(p.psi1_inverse(5.0) == doctest::Approx(0.0016).epsilon(1e-12));

  const auto lin = PsiProfile::linear(2.0);
  CHECK(lin.psi1(0.3) == 2.0);
  CHECK_THROWS_AS(lin.psi1_inverse(2.0), DomainError);

  const auto custom = PsiProfile::custom([](double x) { return std::pow(x, 0.75); });
  CHECK(custom.psi1_inverse(5.0) == doctest::Approx(0.0016).epsilon(1e-9));
}

TEST_CASE("classify") {
  const auto& r2 = PsiProfile::power(2.0).classify();
  CHECK(r2.psi_over_x_increasing);
  CHECK_FALSE(r2.psi1_decreasing);
  CHECK(r2.analytic);

  const auto& r34 = PsiProfile::power(0.75).classify();
  CHECK(r34.psi_over_sqrtx_increasing);
  CHECK(r34.psi1_decreasing);

  CHECK_FALSE(PsiProfile::power(1.0 / 3.0).classify().psi_over_sqrtx_increasing);

  const auto& rc = PsiProfile::custom([](double x) { return std::pow(x, 0.75); }).classify();
  CHECK_FALSE(rc.analytic);
  CHECK(rc.grid_size >= 1000);
  CHECK(rc.psi_over_sqrtx_increasing);
  CHECK(rc.psi1_decreasing);
  CHECK_FALSE(rc.psi_over_x_increasing);
  REQUIRE(rc.psi_over_xgamma_increasing_for);
  CHECK(*rc.psi_over_xgamma_increasing_for == 0.75);
}

TEST_CASE("halving constant") {
  CHECK(*PsiProfile::power(0.75).halving_constant() == doctest::Approx(ref::kHalving34));
  CHECK(*PsiProfile::power(0.5).halving_constant() == doctest::Approx(4.0));
  CHECK_FALSE(PsiProfile::power(2.0).halving_constant());
  CHECK_FALSE(PsiProfile::linear(1.0).halving_constant());
  const auto custom = PsiProfile::custom([](double x) { return std::pow(x, 0.75); });
  REQUIRE(custom.halving_constant());
  CHECK(*custom.halving_constant() == doctest::Approx(16.0));
}

TEST_CASE("property: halving inequality holds on the grid") {
  for (double beta : {0.3, 0.5, 0.6, 0.75, 0.9}) {
    const auto p = PsiProfile::power(beta);
    const auto k = p.halving_constant();
    REQUIRE(k);
    for (double x : numeric::log_grid(1e-8, 1.0 / *k, 500)) {
      CHECK(p.psi1(*k * x) <= 0.5 * p.psi1(x) * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("property: gamma comparability of the inverse") {
  for (const auto& p : {PsiProfile::power(2.0), PsiProfile::power(0.75),
                        PsiProfile::custom([](double x) { return x * x * (1.0 + x) / 2.0; })}) {
    const auto gamma = p.classify().psi_over_xgamma_increasing_for;
    REQUIRE(gamma);
    for (double d : numeric::log_grid(1e-6, p.at_one(), 200)) {
      CHECK(p.inverse(d) <= std::exp2(1.0 / *gamma) * p.inverse(d / 2.0) * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("floors and ceilings") {
  CHECK(PsiProfile::power(0.5).sqrt_floor() == 1.0);
  CHECK(PsiProfile::power(0.75).linear_floor() == 1.0);
  CHECK(PsiProfile::linear(2.0).linear_ceiling() == 2.0);
  const auto c = PsiProfile::custom([](double x) { return 3.0 * x; });
  CHECK(c.linear_floor() == doctest::Approx(3.0));
  CHECK(c.linear_ceiling() == doctest::Approx(3.0));
}
