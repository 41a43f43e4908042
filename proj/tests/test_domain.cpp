#include <doctest.h>

#include <cmath>

#include "invmet/domain.hpp"
#include "invmet/errors.hpp"
#include "invmet/numeric.hpp"
#include "reference/reference_values.hpp"

using namespace invmet;
namespace ref = invmet::reference;

TEST_CASE("membership") {
  const ModelDomain g(PsiProfile::power(2.0));
  CHECK(g.contains({Complex(-0.04, 0.0), Complex{}}));
  CHECK_FALSE(g.contains({Complex(0.05, 0.0), Complex(0.2, 0.0)}));
  CHECK_FALSE(g.contains({Complex(0.5, 0.0), Complex(1.0, 0.0)}));
  CHECK_FALSE(g.contains({Complex(0.25, 0.0), Complex(0.5, 0.0)}));
  CHECK(g.contains({Complex(0.03, 0.5), Complex(0.0, 0.2)}));
  CHECK_FALSE(g.contains({Complex(-0.9, 0.5), Complex{}}));
  CHECK_FALSE(g.contains({Complex(-0.5, 0.0), Complex{}}, 0.6));
}

TEST_CASE("base point validation") {
  CHECK(BasePoint(0.1).point().z1 == Complex(-0.1, 0.0));
  CHECK_THROWS_AS(BasePoint(0.0), DomainError);
  CHECK_THROWS_AS(BasePoint(0.6), DomainError);
  CHECK_THROWS_AS(BasePoint(0.1, 1.0), DomainError);
}

TEST_CASE("delta_star") {
  const double d2 = delta_star(PsiProfile::power(2.0));
  CHECK(d2 == doctest::Approx(ref::kDeltaStarPower2).epsilon(1e-11));
  CHECK(std::abs(1.0 - d2 - std::sqrt(d2)) <= 1e-10);

  const double d3 = delta_star(PsiProfile::power(3.0));
  CHECK(std::abs(d3 - ref::kDeltaStarPower3Scan) <= 1e-6);
  CHECK(d3 == doctest::Approx(ref::kDeltaStarPower3).epsilon(1e-10));

  CHECK_THROWS_AS(delta_star(PsiProfile::power(0.75)), CertificationError);
  CHECK_THROWS_AS(delta_star(PsiProfile::linear(1.0)), CertificationError);
}

TEST_CASE("property: the domain is open around interior samples") {
  numeric::Rng rng(11);
  for (const auto& p : {PsiProfile::power(2.0), PsiProfile::power(0.4), PsiProfile::linear(1.0)}) {
    const ModelDomain g(p);
    int tested = 0;
    while (tested < 500) {
      const Point z{std::polar(std::sqrt(rng.uniform()), 6.283185307179586 * rng.uniform()),
                    std::polar(std::sqrt(rng.uniform()), 6.283185307179586 * rng.uniform())};
      const double m = 1e-3;
      if (!g.contains(z, m)) continue;
      ++tested;
      for (int k = 0; k < 8; ++k) {
        const double s = 0.5 * m / 2.0;
        const Point w{z.z1 + Complex(rng.uniform(-s, s), rng.uniform(-s, s)),
                      z.z2 + Complex(rng.uniform(-s, s), rng.uniform(-s, s))};
        CHECK(g.contains(w));
      }
    }
  }
}

TEST_CASE("property: segments from the base point to the left half stay inside") {
  numeric::Rng rng(5);
  const ModelDomain g(PsiProfile::power(2.0));
  const Point p{Complex(-0.1, 0.0), Complex{}};
  for (int i = 0; i < 300; ++i) {
    const Point z{std::polar(std::sqrt(rng.uniform()), 6.283185307179586 * rng.uniform()),
                  std::polar(std::sqrt(rng.uniform()), 6.283185307179586 * rng.uniform())};
    if (!(z.z1.real() < 0.0) || !g.contains(z)) continue;
    for (int k = 0; k <= 20; ++k) {
      const double s = k / 20.0;
      CHECK(g.contains({p.z1 + s * (z.z1 - p.z1), p.z2 + s * (z.z2 - p.z2)}));
    }
  }
}
