#include <doctest.h>

#include <cmath>

#include "invmet/discs.hpp"
#include "invmet/errors.hpp"
#include "invmet/sibony.hpp"
#include "reference/reference_values.hpp"

using namespace invmet;
namespace ref = invmet::reference;

namespace {
Direction dir(double n, double t) { return {Complex(n, 0.0), Complex(t, 0.0)}; }
Point base(double d) { return {Complex(-d, 0.0), Complex{}}; }
}  // namespace

TEST_CASE("build constants") {
  const SibonyCandidate c = build(PsiProfile::power(2.0), 0.02);
  CHECK(c.C1() == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(c.C2() == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(c.C3() > std::log(10.0 * c.C1()));
  CHECK(c.C4() >= c.C3() + std::log(c.C1()));
  CHECK(c.u(base(0.02)) == 0.0);
  const auto bumpy = PsiProfile::custom([](double x) { return x * (1.2 + std::sin(20.0 * x)); });
  CHECK_THROWS_AS(build(bumpy, 0.02), CertificationError);
}

TEST_CASE("levi_form") {
  const SibonyCandidate c = build(PsiProfile::power(2.0), 0.02);
  const LeviValue a = levi_form(c, base(0.02), dir(1, 0));
  CHECK(a.value == doctest::Approx(ref::kLeviB2D002).epsilon(1e-3));
  CHECK(a.discrepancy <= 1e-3);
  const LeviValue t = levi_form(c, base(0.02), dir(0, 1));
  CHECK(t.value == doctest::Approx(1.0).epsilon(1e-6));
  const Direction x = dir(0.3, 0.7);
  const LeviValue one = levi_form(c, base(0.02), x);
  const LeviValue two = levi_form(c, base(0.02), x.scaled(2.0));
  CHECK(two.value == doctest::Approx(4.0 * one.value).epsilon(1e-9));
  REQUIRE(a.u_value);
  CHECK(*a.u_value / a.value == doctest::Approx(std::exp(-c.C4())).epsilon(1e-3));
}

TEST_CASE("levi_form refuses points without clearance") {
  const SibonyCandidate c = build(PsiProfile::power(2.0), 0.02);
  CHECK_THROWS_AS(levi_form(c, {Complex(0.0399999, 0.0), Complex(0.2, 0.0)}, dir(1, 0)),
                  EvaluationError);
  CHECK_THROWS_AS(levi_form(c, base(0.02), dir(0, 0)), DomainError);
}

TEST_CASE("property: levi_form at the base point equals C2/(4 delta^2) on the sweep grid") {
  for (double beta : {0.75, 1.0, 2.0}) {
    for (double d : {1e-1, 1e-2, 1e-3, 1e-4}) {
      const SibonyCandidate c = build(PsiProfile::power(beta), d);
      const LeviValue v = levi_form(c, base(d), dir(1, 0));
      CHECK(v.value == doctest::Approx(c.C2() / (4.0 * d * d)).epsilon(1e-3));
    }
  }
}

TEST_CASE("check_logpsh") {
  const SibonyCandidate good = build(PsiProfile::power(2.0), 0.02);
  const LogPshReport rep = check_logpsh(good);
  CHECK(rep.n_checks > 1000);
  CHECK(rep.n_violations == 0);

  const SibonyCandidate small = build(PsiProfile::power(2.0), 0.1, 0.0);
  const LogPshReport bad = check_logpsh(small);
  CHECK(bad.n_violations > 0);
  CHECK(std::abs(bad.worst_center.z2) == doctest::Approx(small.C1()).epsilon(0.1));

  const LogPshReport flat = check_submean([](const Point&) { return 1.0; }, good, 200, 4);
  CHECK(flat.n_violations == 0);
  CHECK(flat.worst_slack == 0.0);
}

TEST_CASE("sample_u_range") {
  const URange r = sample_u_range(build(PsiProfile::power(0.75), 1e-3), 10000, 42);
  CHECK(r.n_samples == 10000);
  CHECK(r.min >= 0.0);
  CHECK(r.max <= 1.0);
}

TEST_CASE("sibony_lower") {
  const auto p = PsiProfile::power(2.0);
  CHECK(sibony_lower(p, 0.01, dir(1, 0)) == doctest::Approx(ref::kSibonyB2D001).epsilon(1e-12));
  CHECK(sibony_lower(p, 0.01, dir(0, 1)) == 1.0);
  CHECK(sibony_lower(p, 0.01, dir(1, 4)) == 4.0);
}

TEST_CASE("property: Sibony lower bound stays below verified disc bounds") {
  int compared = 0;
  for (double beta : {0.4, 0.5, 0.75, 1.0, 1.5, 2.0}) {
    const auto p = PsiProfile::power(beta);
    for (double d : {1e-1, 1e-2, 1e-3, 1e-4}) {
      for (double t : {0.0, 0.05, 0.5, 1.0, 5.0}) {
        const Direction x = dir(1, t);
        const double s = sibony_lower(p, d, x);
        for (const auto& e : catalog_sweep(p, d, x)) {
          if (!e.upper) continue;
          ++compared;
          CHECK(s <= *e.upper);
        }
      }
    }
  }
  CHECK(compared > 50);
}

TEST_CASE("property: gamma comparability transfer") {
  for (double beta : {1.0, 1.5, 2.0}) {
    const auto p = PsiProfile::power(beta);
    const double gamma = *p.classify().psi_over_xgamma_increasing_for;
    for (double d : {1e-1, 1e-2, 1e-3, 1e-4}) {
      const double lhs = p.inverse(d) / d;
      CHECK(lhs <= std::exp2(1.0 / gamma) * 2.0 * sibony_lower(p, d, dir(1, 0)) * (1 + 1e-12));
    }
  }
}
