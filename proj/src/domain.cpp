#include "invmet/domain.hpp"

#include <algorithm>
#include <cmath>

#include "invmet/errors.hpp"
#include "invmet/numeric.hpp"

namespace invmet {

BasePoint::BasePoint(double delta, double delta0) : delta_(delta), delta0_(delta0) {
  if (!(delta0 > 0.0 && delta0 < 1.0)) throw DomainError("delta0 must lie in (0,1)");
  if (!(delta > 0.0 && delta <= delta0)) throw DomainError("delta must lie in (0, delta0]");
}

bool ModelDomain::contains(const Point& z, double margin) const {
  const double a1 = std::abs(z.z1);
  const double a2 = std::abs(z.z2);
  if (margin == 0.0) {
    if (!(a1 < 1.0) || !(a2 < 1.0)) return false;
    return z.z1.real() < profile_.eval(a2);
  }
  if (a1 > 1.0 - margin || a2 > 1.0 - margin) return false;
  return z.z1.real() <= profile_.eval(a2) - margin;
}

double ModelDomain::margin(const Point& z) const {
  const double a2 = std::abs(z.z2);
  const double bidisc = std::min(1.0 - std::abs(z.z1), 1.0 - a2);
  if (a2 >= 1.0) return bidisc;
  return std::min(bidisc, profile_.eval(a2) - z.z1.real());
}

double delta_star(const PsiProfile& profile) {
  if (!profile.classify().psi_over_x_strictly_increasing) {
    throw CertificationError("delta_star needs psi(x)/x strictly increasing");
  }
  auto g = [&](double d) { return 1.0 - d - d / profile.inverse(d); };
  const double hi = std::min(1.0, profile.at_one());
  const double lo = profile.eval(1e-8);
  if (!(g(lo) > 0.0) || !(g(hi) < 0.0)) {
    throw RegimeError("delta_star: 1 - d = d/psi^{-1}(d) has no root in (0, min(1, psi(1)))");
  }
  return numeric::bisect(g, lo, hi, 1e-14, 200);
}

}  // namespace invmet
