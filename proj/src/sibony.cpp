#include "invmet/sibony.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "invmet/errors.hpp"
#include "invmet/numeric.hpp"

namespace invmet {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kCirclePoints = 64;
constexpr double kMargin = 1e-3;

Point along(const Point& p, const Direction& x, Complex w) {
  return {p.z1 + w * x.xn, p.z2 + w * x.xt};
}

double norm2(const Point& a, const Point& b) {
  return std::sqrt(std::norm(a.z1 - b.z1) + std::norm(a.z2 - b.z2));
}

// ∂∂̄ of g along the line at w = 0: a quarter of the 9-point Laplacian.
double levi9(const std::function<double(Complex)>& g, double h) {
  const double c = g({0.0, 0.0});
  const double edges = g({h, 0.0}) + g({-h, 0.0}) + g({0.0, h}) + g({0.0, -h});
  const double corners = g({h, h}) + g({h, -h}) + g({-h, h}) + g({-h, -h});
  return (4.0 * edges + corners - 20.0 * c) / (6.0 * h * h) / 4.0;
}

double richardson(const std::function<double(Complex)>& g, double h, double* discrepancy) {
  const double coarse = levi9(g, h);
  const double fine = levi9(g, h / 2.0);
  const double extrap = (4.0 * fine - coarse) / 3.0;
  if (discrepancy) {
    *discrepancy = std::abs(extrap - fine) / std::max(std::abs(extrap), 1e-300);
  }
  return extrap;
}

Direction random_unit(numeric::Rng& rng) {
  for (;;) {
    const double a = rng.uniform(-1.0, 1.0);
    const double b = rng.uniform(-1.0, 1.0);
    const double c = rng.uniform(-1.0, 1.0);
    const double d = rng.uniform(-1.0, 1.0);
    const double n = std::sqrt(a * a + b * b + c * c + d * d);
    if (n > 1e-3 && n <= 1.0) return {Complex(a, b) / n, Complex(c, d) / n};
  }
}

Complex random_in_disc(numeric::Rng& rng, double radius) {
  const double r = radius * std::sqrt(rng.uniform());
  return std::polar(r, 2.0 * std::numbers::pi * rng.uniform());
}

}  // namespace

SibonyCandidate::SibonyCandidate(PsiProfile profile, double delta, double c1, double c3,
                                 double c4)
    : profile_(std::move(profile)), delta_(delta), c1_(c1), c3_(c3), c4_(c4) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0,1)");
  if (!(c1 > 0.0)) throw DomainError("C1 must be positive");
}

double SibonyCandidate::f(Complex zeta) const {
  return C2() * std::norm((zeta + delta_) / (zeta - delta_));
}

double SibonyCandidate::potential(const Point& z) const { return f(z.z1) + std::norm(z.z2); }

bool SibonyCandidate::potential_branch(const Point& z) const {
  const double a2 = std::abs(z.z2);
  if (a2 > c1_) return false;
  return std::log(potential(z)) >= (a2 == 0.0 ? kNegInf : std::log(a2) + c3_);
}

double SibonyCandidate::v(const Point& z) const {
  const double a2 = std::abs(z.z2);
  const double tangential = a2 == 0.0 ? kNegInf : std::log(a2) + c3_;
  if (a2 > c1_) return tangential - c4_;
  const double rho = potential(z);
  const double normal = rho == 0.0 ? kNegInf : std::log(rho);
  return std::max(normal, tangential) - c4_;
}

SibonyCandidate build(const PsiProfile& profile, double delta, std::optional<double> c3) {
  const double c1 = profile.inverse(delta / 2.0);
  const double k3 = c3 ? *c3 : std::log(10.0 * c1) + kMargin;
  const double k4 = std::max(k3 + std::log(c1), k3) + kMargin;
  return SibonyCandidate(profile, delta, c1, k3, k4);
}

LeviValue levi_form(const SibonyCandidate& c, const Point& p, const Direction& x) {
  if (x.is_zero()) throw DomainError("levi_form needs a nonzero direction");
  const double h = std::min(1e-4, c.delta() / 20.0);
  const ModelDomain domain(c.profile());
  const double clearance = std::min(domain.margin(p), std::abs(p.z1 - c.delta()));
  if (clearance < 10.0 * h) {
    throw EvaluationError("levi_form: point lies within 10 steps of the boundary or the pole");
  }
  const double xn = std::hypot(x.abs_n(), x.abs_t());
  const double hw = h / xn;

  LeviValue out;
  out.direction = x;
  out.h_step = h;
  auto rho = [&](Complex w) { return c.potential(along(p, x, w)); };
  out.value = richardson(rho, hw, &out.discrepancy);
  if (out.discrepancy > 1e-3) {
    throw EvaluationError("levi_form: step-halving discrepancy exceeds 1e-3");
  }

  bool consistent = true;
  for (int k = 0; k < 16 && consistent; ++k) {
    const Complex w = std::polar(10.0 * hw, 2.0 * std::numbers::pi * k / 16.0);
    consistent = c.potential_branch(along(p, x, w));
  }
  for (double s : {-1.0, 0.0, 1.0}) {
    for (double t : {-1.0, 0.0, 1.0}) {
      if (s == 0.0 && t == 0.0) continue;
      consistent = consistent && c.potential_branch(along(p, x, Complex(s * hw, t * hw)));
    }
  }
  if (consistent) {
    auto uf = [&](Complex w) { return c.u(along(p, x, w)); };
    out.u_value = richardson(uf, hw, nullptr);
  }
  return out;
}

LogPshReport check_submean(const std::function<double(const Point&)>& fn,
                           const SibonyCandidate& geo, std::size_t n_centers,
                           std::size_t n_radii, std::uint64_t seed, double tolerance) {
  const ModelDomain domain(geo.profile());
  const PsiProfile& psi = geo.profile();
  const double delta = geo.delta();
  const Point base{Complex(-delta, 0.0), Complex{}};
  numeric::Rng rng(seed);

  LogPshReport rep;
  rep.tolerance = tolerance;
  rep.worst_slack = std::numeric_limits<double>::infinity();
  rep.worst_center = base;

  auto draw_center = [&](std::size_t i) -> std::optional<Point> {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      Point c;
      switch (i % 3) {
        case 0:
          c = {random_in_disc(rng, 1.0), random_in_disc(rng, 1.0)};
          break;
        case 1: {
          // Around the gluing sphere |z₂| = C1, with Re z₁ close to ψ(|z₂|).
          const double a2 = std::min(0.999, geo.C1() * (1.0 + rng.uniform(-0.05, 0.05)));
          const Complex z2 = std::polar(a2, 2.0 * std::numbers::pi * rng.uniform());
          const double re = psi.eval(a2) - rng.uniform(0.0, 0.5) * delta;
          c = {Complex(re, rng.uniform(-delta, delta)), z2};
          break;
        }
        default: {
          const double eps = delta * std::exp(rng.uniform(std::log(1e-4), std::log(0.5)));
          const Direction d = random_unit(rng);
          c = along(base, d, eps);
          break;
        }
      }
      if (domain.margin(c) > 0.0) return c;
    }
    return std::nullopt;
  };

  for (std::size_t i = 0; i < n_centers; ++i) {
    const auto centre = draw_center(i);
    if (!centre) continue;
    const Point& c = *centre;
    const double fc = fn(c);
    if (fc == kNegInf) continue;
    const Direction x = random_unit(rng);

    // Distance from p_δ to the complex line c + ℂX.
    const Complex proj = std::conj(x.xn) * (base.z1 - c.z1) + std::conj(x.xt) * (base.z2 - c.z2);
    const Point foot = along(c, x, proj);
    const double line_gap = norm2(foot, base);
    double r = 0.5 * std::min(line_gap, domain.margin(c));
    for (std::size_t j = 0; j < n_radii; ++j, r *= 0.5) {
      if (!(r > 0.0)) break;
      // Skip circles passing near the zero of z₂ along the line, where the discrete mean of
      // log|z₂| is not a faithful quadrature.
      if (x.xt != Complex{}) {
        const double ratio = r * std::abs(x.xt) / std::max(std::abs(c.z2), 1e-300);
        if (ratio > 0.5 && ratio < 2.0) continue;
      }
      double sum = 0.0;
      bool inside = true;
      for (int k = 0; k < kCirclePoints && inside; ++k) {
        const Point q = along(c, x, std::polar(r, 2.0 * std::numbers::pi * k / kCirclePoints));
        inside = domain.contains(q);
        if (inside) sum += fn(q);
      }
      if (!inside) continue;
      const double slack = sum / kCirclePoints - fc;
      ++rep.n_checks;
      if (slack < rep.worst_slack) {
        rep.worst_slack = slack;
        rep.worst_center = c;
      }
      if (slack < -tolerance) ++rep.n_violations;
    }
  }
  if (rep.n_checks == 0) rep.worst_slack = 0.0;
  return rep;
}

LogPshReport check_logpsh(const SibonyCandidate& c, std::size_t n_centers, std::size_t n_radii,
                          std::uint64_t seed, double tolerance) {
  return check_submean([&c](const Point& z) { return c.v(z); }, c, n_centers, n_radii, seed,
                       tolerance);
}

URange sample_u_range(const SibonyCandidate& c, std::size_t n_samples, std::uint64_t seed) {
  const ModelDomain domain(c.profile());
  numeric::Rng rng(seed);
  URange out{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), 0};
  while (out.n_samples < n_samples) {
    const Point z{random_in_disc(rng, 1.0), random_in_disc(rng, 1.0)};
    if (!domain.contains(z)) continue;
    const double u = c.u(z);
    out.min = std::min(out.min, u);
    out.max = std::max(out.max, u);
    ++out.n_samples;
  }
  return out;
}

double sibony_lower(const PsiProfile& profile, double delta, const Direction& x) {
  const double n = x.abs_n();
  const double t = x.abs_t();
  const double basis = profile.inverse(delta / 2.0) / (2.0 * delta);
  return std::max(std::max(n, t), basis * n - t);
}

}  // namespace invmet
