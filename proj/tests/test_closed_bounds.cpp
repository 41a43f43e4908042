#include <doctest.h>

#include <cmath>

#include "invmet/closed_bounds.hpp"
#include "invmet/errors.hpp"
#include "invmet/numeric.hpp"
#include "reference/reference_values.hpp"

using namespace invmet;
namespace ref = invmet::reference;

namespace {
Direction dir(double n, double t) { return {Complex(n, 0.0), Complex(t, 0.0)}; }
}  // namespace

TEST_CASE("theorem1_quantity") {
  const auto p = PsiProfile::power(2.0);
  CHECK(theorem1_quantity(p, 0.01, dir(1, 0)) == doctest::Approx(ref::kTheorem1B2D001));
  CHECK(theorem1_quantity(p, 0.04, dir(1, 1)) == doctest::Approx(ref::kTheorem1B2D004X11));
  CHECK(theorem1_quantity(p, 0.01, dir(0, 1)) == 1.0);
  CHECK(theorem1_quantity(PsiProfile::linear(1.0), 0.3, dir(0, 1)) == 1.0);
  CHECK_THROWS_AS(theorem1_quantity(PsiProfile::power(0.75), 0.01, dir(1, 0)), CertificationError);
}

TEST_CASE("F2") {
  const auto p = PsiProfile::power(2.0);
  CHECK(F2(p, 1e-4, 0.1) == doctest::Approx(ref::kF2B2D1em4T0p1).epsilon(1e-12));
  CHECK(F2(p, 1e-4, 1.0) == doctest::Approx(1.0));
  CHECK(F2(p, 1e-4, 0.0) == doctest::Approx(ref::kF2B2D1em4T0p1));
  CHECK_THROWS_AS(F2(PsiProfile::power(1.0 / 3.0), 1e-4, 0.1), CertificationError);
}

TEST_CASE("F3") {
  const auto p = PsiProfile::power(0.75);
  CHECK(F3(p, 1e-4, 1e-3) == doctest::Approx(ref::kF3B34D1em4T1em3).epsilon(1e-12));
  CHECK(F3(p, 1e-4, 0.5) == doctest::Approx(ref::kF3B34D1em4T0p5).epsilon(1e-12));
  CHECK(F3(p, 1e-4, 0.0) == doctest::Approx(ref::kF3B34D1em4T1em3).epsilon(1e-12));
  const double t = ref::kMaxzoneB34D1em4;
  const double first = std::sqrt(p.inverse(1e-4)) / 1e-4;
  const double second = 8.0 * t / std::sqrt(*p.psi1_inverse_analytic(1.0 / (8.0 * t)));
  CHECK(second == doctest::Approx(first).epsilon(1e-10));
  CHECK_THROWS_AS(F3(PsiProfile::power(2.0), 1e-4, 0.1), CertificationError);
}

TEST_CASE("property: F2 and F3 are continuous at their switch points") {
  for (double d : {1e-4, 1e-3, 1e-2}) {
    const auto p2 = PsiProfile::power(2.0);
    const double s2 = std::sqrt(p2.inverse(d));
    CHECK(F2(p2, d, s2 * (1 - 1e-12)) == doctest::Approx(F2(p2, d, s2 * (1 + 1e-12))).epsilon(1e-9));
    for (double beta : {0.6, 0.75, 0.9}) {
      const auto p = PsiProfile::power(beta);
      const double s = p.inverse(d) / (8.0 * d);
      CHECK(F3(p, d, s * (1 - 1e-12)) == doctest::Approx(F3(p, d, s * (1 + 1e-12))).epsilon(1e-9));
    }
  }
}

TEST_CASE("property: F3 second branch dominates F2 second branch as t shrinks, 1/2 < beta < 1") {
  for (double beta : {0.6, 0.75, 0.9}) {
    const auto p = PsiProfile::power(beta);
    // For power profiles the two branches cross at t = 8^(-1/(2 beta - 1)).
    const double crossing = std::pow(8.0, -1.0 / (2.0 * beta - 1.0));
    double previous_ratio = 0.0;
    for (double t : numeric::log_grid(1.0, 1e-12, 60)) {
      const double f3 = 8.0 * t / std::sqrt(*p.psi1_inverse_analytic(1.0 / (8.0 * t)));
      const double f2 = t / p.eval(t * t);
      const double ratio = f3 / f2;
      CHECK(ratio >= previous_ratio);
      previous_ratio = ratio;
      if (t <= crossing * (1 - 1e-9)) CHECK(f3 >= f2);
    }
  }
}

TEST_CASE("regime_classify") {
  const auto p = PsiProfile::power(0.75);
  CHECK(regime_classify(p, 1e-4, 1e-3) == DominantRegime::normal_dominant);
  CHECK(regime_classify(p, 1e-4, 0.0) == DominantRegime::normal_dominant);
  CHECK(regime_classify(p, 1e-4, 1.0) == DominantRegime::tangential_dominant);
  // For beta > 1 the threshold psi^{-1}(delta)/(8 delta) = 12.5 exceeds 1 at this delta.
  CHECK(regime_classify(PsiProfile::power(2.0), 1e-4, 1.0) == DominantRegime::normal_dominant);
  CHECK(regime_classify(p, 1e-4, ref::kMaxzoneB34D1em4 * 1.001) ==
        DominantRegime::tangential_dominant);
}

TEST_CASE("main2_quantity") {
  CHECK(main2_quantity(0.01, dir(1, 0)) == doctest::Approx(ref::kMain2D001));
  CHECK(main2_quantity(0.04, dir(1, 0.5)) == doctest::Approx(ref::kMain2D004X105));
  CHECK(main2_quantity(0.04, dir(1, 1)) == 1.0);
  CHECK(main2_quantity(0.04, dir(0.5, 1)) == 1.0);
}

TEST_CASE("main3_bounds") {
  const auto p = PsiProfile::power(2.0);
  const BoundResult r = main3_bounds(p, 0.01, dir(1, 0));
  CHECK(*r.lower == doctest::Approx(ref::kMain3LowerB2D001).epsilon(1e-12));
  CHECK(*r.upper == doctest::Approx(ref::kMain3LowerB2D001 * 4.0 * std::sqrt(2.0)));
  CHECK_FALSE(r.upper_constant_known);
  CHECK(r.lower_constant_known);
  CHECK_NOTHROW(main3_bounds(p, 0.01, dir(1, 1.2)));
  CHECK_THROWS_AS(main3_bounds(p, 0.01, dir(1, 1.3)), RegimeError);
  CHECK_THROWS_AS(main3_bounds(p, 0.01, dir(0, 1)), RegimeError);
}

TEST_CASE("tangent_bounds") {
  const BoundResult a = tangent_bounds(PsiProfile::power(2.0), 0.04, dir(0.2, 1));
  CHECK(*a.lower == 1.0);
  CHECK(*a.upper == 1.0);
  const BoundResult b = tangent_bounds(PsiProfile::linear(1.0), 0.1, dir(0.5, 1));
  CHECK(*b.lower == 1.0);
  CHECK(*b.upper == doctest::Approx(1.0));
  const BoundResult c = tangent_bounds(PsiProfile::linear(1.0), 0.5, dir(0.9, 1));
  CHECK(*c.lower == 1.0);
  CHECK(*c.upper == doctest::Approx(1.8));
  CHECK_THROWS_AS(tangent_bounds(PsiProfile::power(2.0), 0.04, dir(1, 1)), RegimeError);
}

TEST_CASE("onehalf1_bounds and the thin-cusp constant") {
  const BoundResult r = onehalf1_bounds(PsiProfile::power(0.5), 0.1, dir(1, 0));
  CHECK(*r.lower == 1.0);
  CHECK(*r.upper == doctest::Approx(ref::kThinCuspConstant));
  const BoundResult t = onehalf1_bounds(PsiProfile::power(0.5), 0.1, dir(0, 1));
  CHECK(*t.lower == 1.0);
  CHECK(*t.upper == 1.0);
  CHECK_NOTHROW(onehalf1_bounds(PsiProfile::power(1.0 / 3.0), 0.1, dir(2, 1)));
  CHECK_THROWS_AS(onehalf1_bounds(PsiProfile::power(2.0), 0.1, dir(1, 0)), CertificationError);
  CHECK(thin_cusp_constant(1.0, 0.5) == doctest::Approx(ref::kThinCuspConstant));
}

TEST_CASE("power_regime") {
  const BoundResult a = power_regime(1.0 / 3.0, 0.1, dir(2, 1));
  CHECK(*a.lower == 2.0);
  CHECK(*a.upper == doctest::Approx(2.0 * ref::kThinCuspConstant));
  const BoundResult b = power_regime(2.0, 0.01, dir(1, 0));
  CHECK(*b.lower == doctest::Approx(ref::kMain3LowerB2D001).epsilon(1e-12));
  const BoundResult c = power_regime(2.0, 0.04, dir(0.1, 1));
  CHECK(c.regime == "tangent_exact");
  CHECK(*c.lower == 1.0);
  CHECK(*c.upper == 1.0);
  const BoundResult g = power_regime(2.0, 0.01, dir(1, 2));
  CHECK(g.regime == "gap");
  CHECK_FALSE(g.constants_known());
  const BoundResult m = power_regime(0.75, 1e-4, dir(1, 0.5));
  CHECK(m.regime == "interpolation");
  CHECK(*m.upper == doctest::Approx(std::pow(0.5, -1.0)));
}

TEST_CASE("property: homogeneity and phase invariance") {
  numeric::Rng rng(3);
  const auto p2 = PsiProfile::power(2.0);
  const auto p34 = PsiProfile::power(0.75);
  for (int i = 0; i < 200; ++i) {
    const Direction x{std::polar(rng.uniform(0.1, 1.0), rng.uniform(0, 6.28)),
                      std::polar(rng.uniform(0.0, 0.1), rng.uniform(0, 6.28))};
    const Complex a = std::polar(rng.uniform(0.1, 3.0), rng.uniform(0, 6.28));
    const Direction ax = x.scaled(a);
    const double m = std::abs(a);
    CHECK(theorem1_quantity(p2, 0.01, ax) == doctest::Approx(m * theorem1_quantity(p2, 0.01, x)));
    CHECK(main2_quantity(0.01, ax) == doctest::Approx(m * main2_quantity(0.01, x)));
    CHECK(*main3_bounds(p2, 0.01, ax).lower ==
          doctest::Approx(m * *main3_bounds(p2, 0.01, x).lower));
    CHECK(*power_regime(0.75, 1e-3, ax).upper ==
          doctest::Approx(m * *power_regime(0.75, 1e-3, x).upper));
    const Direction real{Complex(x.abs_n(), 0.0), Complex(x.abs_t(), 0.0)};
    CHECK(theorem1_quantity(p2, 0.01, real) == doctest::Approx(theorem1_quantity(p2, 0.01, x)));
    CHECK(*power_regime(0.75, 1e-3, real).upper ==
          doctest::Approx(*power_regime(0.75, 1e-3, x).upper));
    CHECK(F3(p34, 1e-3, tangent_ratio(ax)) == doctest::Approx(F3(p34, 1e-3, tangent_ratio(x))));
  }
}

TEST_CASE("property: lower never exceeds upper when both constants are explicit") {
  for (double beta : {0.3, 0.5, 0.75, 1.0, 1.5, 2.0}) {
    for (double d : {1e-1, 1e-2, 1e-3, 1e-4}) {
      for (double t : {0.0, 0.01, 0.3, 1.0, 3.0}) {
        const BoundResult r = power_regime(beta, d, dir(1, t));
        if (r.lower && r.upper && r.constants_known()) CHECK(*r.lower <= *r.upper);
      }
    }
  }
}
