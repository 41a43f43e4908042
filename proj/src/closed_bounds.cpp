#include "invmet/closed_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "invmet/errors.hpp"
#include "invmet/numeric.hpp"

namespace invmet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kGolden = (1.0 + std::sqrt(5.0)) / 2.0;

void require_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0,1)");
}

double normal_scale(const PsiProfile& profile, double delta) {
  return std::sqrt(profile.inverse(delta)) / delta;
}

double bidisc(const Direction& x) { return std::max(x.abs_n(), x.abs_t()); }

BoundResult exact(double v, std::string regime, std::string source) {
  BoundResult r;
  r.lower = v;
  r.upper = v;
  r.regime = std::move(regime);
  r.source = std::move(source);
  return r;
}

}  // namespace

const char* to_string(DominantRegime r) {
  return r == DominantRegime::normal_dominant ? "normal_dominant" : "tangential_dominant";
}

double tangent_ratio(const Direction& x) {
  if (x.xn == Complex{}) return kInf;
  return x.abs_t() / x.abs_n();
}

double theorem1_quantity(const PsiProfile& profile, double delta, const Direction& x) {
  if (!profile.classify().psi_over_x_increasing) {
    throw CertificationError("comparison quantity needs psi(x)/x increasing");
  }
  require_delta(delta);
  if (x.xn == Complex{}) return x.abs_t();
  return profile.inverse(delta) / delta * x.abs_n() + x.abs_t();
}

double F2(const PsiProfile& profile, double delta, double t) {
  if (!profile.classify().psi_over_sqrtx_increasing) {
    throw CertificationError("F2 needs psi(x)/sqrt(x) increasing");
  }
  require_delta(delta);
  if (!(t >= 0.0)) throw DomainError("F2 needs t >= 0");
  if (t > 1.0) throw RegimeError("F2 evaluates psi(t^2), undefined for t > 1");
  const double first = normal_scale(profile, delta);
  if (t == 0.0) return first;
  return std::min(first, t / profile.eval(t * t));
}

double F3(const PsiProfile& profile, double delta, double t) {
  const auto& rep = profile.classify();
  if (!rep.psi_over_sqrtx_increasing || !rep.psi1_decreasing || !profile.halving_constant()) {
    throw CertificationError(
        "F3 needs psi(x)/sqrt(x) increasing, psi1 decreasing and the halving property");
  }
  require_delta(delta);
  if (!(t >= 0.0)) throw DomainError("F3 needs t >= 0");
  const double first = normal_scale(profile, delta);
  if (t == 0.0) return first;
  const double s = 1.0 / (8.0 * t);
  double x = 0.0;
  if (auto a = profile.psi1_inverse_analytic(s)) {
    x = *a;
  } else {
    try {
      x = profile.psi1_inverse(s);
    } catch (const DomainError& e) {
      throw RegimeError(std::string("F3: 1/(8t) outside the range of psi1: ") + e.what());
    }
  }
  return std::min(first, 8.0 * t / std::sqrt(x));
}

DominantRegime regime_classify(const PsiProfile& profile, double delta, double t) {
  if (t == 0.0) return DominantRegime::normal_dominant;
  if (!std::isfinite(t)) return DominantRegime::tangential_dominant;
  const double threshold = profile.inverse(delta) / (8.0 * delta);
  return numeric::leq_rel(t, threshold) ? DominantRegime::normal_dominant
                                        : DominantRegime::tangential_dominant;
}

double main2_quantity(double delta, const Direction& x) {
  require_delta(delta);
  const double n = x.abs_n();
  const double t = x.abs_t();
  return std::max(std::max(n - t, 0.0) / std::sqrt(delta), t);
}

BoundResult main3_bounds(const PsiProfile& profile, double delta, const Direction& x) {
  if (!profile.classify().psi_over_x_increasing) {
    throw CertificationError("normal-direction bounds need psi(x)/x increasing");
  }
  if (!(delta > 0.0 && delta < profile.at_one())) {
    throw RegimeError("normal-direction bounds need 0 < delta < psi(1)");
  }
  const double threshold = profile.inverse(delta) / (8.0 * delta);
  if (!numeric::leq_rel(x.abs_t(), threshold * x.abs_n()) || x.xn == Complex{}) {
    throw RegimeError("normal-direction bounds need |x_T| <= psi^{-1}(delta)/(8 delta) |x_N|");
  }
  const double shape = normal_scale(profile, delta) * x.abs_n();
  BoundResult r;
  r.lower = shape / (4.0 * std::sqrt(2.0));
  r.upper = shape;
  r.upper_constant_known = false;
  r.regime = "normal";
  r.source = "normal-sqrt-scale";
  return r;
}

BoundResult tangent_bounds(const PsiProfile& profile, double delta, const Direction& x) {
  require_delta(delta);
  const double n = x.abs_n();
  const double t = x.abs_t();
  if (t == 0.0) throw RegimeError("tangent bounds need x_T != 0");
  if (n == 0.0) return exact(t, "tangent_exact", "bidisc-tangent");

  const auto& rep = profile.classify();
  if (rep.psi_over_x_strictly_increasing) {
    try {
      if (delta <= delta_star(profile)) {
        const double slope = std::min(1.0, delta / profile.inverse(delta));
        if (numeric::leq_rel(n, slope * t)) return exact(t, "tangent_exact", "tangent-exact");
      }
    } catch (const RegimeError&) {
      // no δ* for this profile; fall through to the linear-floor case
    }
  }
  const double c0 = profile.linear_floor();
  if (c0 > 0.0 && numeric::leq_rel(n, std::min(1.0, c0) * t)) {
    BoundResult r;
    r.lower = t;
    r.upper = std::max(1.0, n / t / (1.0 - delta)) * t;
    r.regime = "tangent";
    r.source = "tangent-linear-floor";
    return r;
  }
  throw RegimeError("tangent bounds: direction is not tangential enough for either case");
}

double thin_cusp_constant(double c0, double delta0) {
  return std::max(1.0 / (1.0 - delta0), kGolden / c0);
}

BoundResult onehalf1_bounds(const PsiProfile& profile, double delta, const Direction& x,
                            double delta0, std::optional<double> c0) {
  require_delta(delta);
  const double c = c0 ? *c0 : profile.sqrt_floor();
  if (!(c > 0.0)) throw CertificationError("thin-cusp bounds need psi(x) >= c0 sqrt(x), c0 > 0");
  const double m = bidisc(x);
  if (x.xn == Complex{}) return exact(m, "tangent_exact", "bidisc-tangent");
  BoundResult r;
  r.lower = m;
  r.upper = thin_cusp_constant(c, delta0) * m;
  r.regime = "thin_cusp";
  r.source = "thin-cusp";
  return r;
}

BoundResult power_regime(double beta, double delta, const Direction& x, double delta0) {
  if (!(beta > 0.0)) throw DomainError("power_regime needs beta > 0");
  if (!(delta > 0.0 && delta <= delta0)) throw DomainError("delta must lie in (0, delta0]");
  if (x.is_zero()) throw DomainError("power_regime needs a nonzero direction");
  const double n = x.abs_n();
  const double tm = x.abs_t();
  if (n == 0.0) return exact(tm, "tangent_exact", "bidisc-tangent");
  const double t = tm / n;
  const PsiProfile profile = PsiProfile::power(beta);

  if (beta <= 0.5) return onehalf1_bounds(profile, delta, x, delta0, 1.0);

  if (beta == 1.0) {
    BoundResult r;
    const double shape = main2_quantity(delta, x);
    r.lower = std::max(bidisc(x), std::max(n - tm, 0.0) / (5.0 * std::sqrt(delta)));
    r.upper = shape;
    r.upper_constant_known = false;
    r.regime = "linear";
    r.source = "linear-profile";
    return r;
  }

  const double edge = std::pow(delta, 1.0 / beta - 1.0);
  if (beta < 1.0) {
    BoundResult r;
    if (numeric::leq_rel(t, edge)) {
      r.lower = r.upper = std::pow(delta, 1.0 / (2.0 * beta) - 1.0) * n;
      r.regime = "normal";
    } else if (numeric::leq_rel(t, 1.0)) {
      r.lower = r.upper =
          std::pow(t, -(2.0 * beta - 1.0) / (2.0 * (1.0 - beta))) * n;
      r.regime = "interpolation";
    } else if (numeric::leq_rel(tm, n / (1.0 - delta))) {
      r.lower = tm;
      r.upper = n / (1.0 - delta);
      r.regime = "tangent";
      r.source = "tangent-linear-floor";
      return r;
    } else {
      return exact(tm, "tangent_exact", "tangent-linear-floor");
    }
    r.lower_constant_known = false;
    r.upper_constant_known = false;
    r.source = "halving-profile";
    return r;
  }

  if (numeric::leq_rel(t, edge / 8.0)) return main3_bounds(profile, delta, x);
  if (numeric::leq_rel(edge, t) && delta <= delta_star(profile)) {
    return exact(tm, "tangent_exact", "tangent-exact");
  }
  BoundResult r;
  r.lower = bidisc(x);
  r.upper_constant_known = false;
  r.regime = t < edge ? "gap" : "uncovered";
  r.source = "bidisc";
  return r;
}

}  // namespace invmet
