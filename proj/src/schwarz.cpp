#include "invmet/schwarz.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "invmet/errors.hpp"
#include "invmet/numeric.hpp"

namespace invmet {

namespace {

constexpr int kGridPoints = 64;
constexpr double kGridLo = 1e-3;
constexpr int kMaxSweeps = 4000;

struct CapMin {
  double value;
  double r;
};

// Radii suggested by the hand-picked choices of the proofs, added to the log grid.
std::vector<double> radius_grid(const PsiProfile& profile, double delta, double t) {
  std::vector<double> rs = numeric::log_grid(kGridLo, 1.0, kGridPoints);
  auto add = [&](double r) {
    if (std::isfinite(r) && r > 0.0 && r <= 1.0) rs.push_back(r);
  };
  if (delta <= profile.at_one()) {
    const double inv = profile.inverse(delta);
    add(std::sqrt(inv / 2.0));
    add(0.5 * std::sqrt(inv));
  }
  if (t > 0.0) {
    add(0.5 * t);
    try {
      add(std::sqrt(profile.psi1_inverse(1.0 / t)));
    } catch (const std::exception&) {
      // ψ₁ not invertible at 1/t; the grid still covers this radius range
    }
  }
  std::sort(rs.begin(), rs.end());
  rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
  return rs;
}

CapMin min_cap(const PsiProfile& profile, double delta, double t, double lambda,
               const std::vector<double>& rs) {
  CapMin best{lowlem_cap(profile, delta, t, rs.front(), lambda), rs.front()};
  for (double r : rs) {
    const double c = lowlem_cap(profile, delta, t, r, lambda);
    if (c < best.value) best = {c, r};
  }
  const double r4 = 4.0 * delta / lambda;
  if (r4 > 0.0 && r4 <= 1.0) {
    const double c = lowlem_cap(profile, delta, t, r4, lambda);
    if (c < best.value) best = {c, r4};
  }
  // Golden-section polish in log r around the best sample.
  double a = std::log(std::max(kGridLo, best.r / 1.2));
  double b = std::log(std::min(1.0, best.r * 1.2));
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  auto f = [&](double lr) { return lowlem_cap(profile, delta, t, std::exp(lr), lambda); };
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < 40; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  if (fc < best.value) best = {fc, std::exp(c)};
  if (fd < best.value) best = {fd, std::exp(d)};
  return best;
}

// Largest λ not excluded by the caps, for the direction (1, t). Every λ in (m, b] with
// m = min_r g_r(b) is infeasible because g_r is increasing in λ, so the iteration
// b ← min_r g_r(b) only discards infeasible scales.
SchwarzCertificate invert_caps(const PsiProfile& profile, double delta, double t) {
  const std::vector<double> rs = radius_grid(profile, delta, t);
  double b = t > 1.0 ? 1.0 / t : 1.0;
  CapMin last{b, 1.0};
  for (int i = 0; i < kMaxSweeps; ++i) {
    const CapMin m = min_cap(profile, delta, t, b, rs);
    last = m;
    if (!(m.value < b)) break;
    const bool stalled = b - m.value <= 1e-13 * b;
    b = m.value;
    if (stalled) break;
  }
  SchwarzCertificate cert;
  cert.lambda = b;
  cert.r = last.r;
  const double arg = last.r * (b * t + last.r);
  cert.clamped = arg > 1.0;
  cert.M = profile.eval(std::min(1.0, arg));
  cert.lambda_cap = 2.0 * (cert.M + delta) / cert.r;
  cert.regime = "lowlem_grid";
  return cert;
}

}  // namespace

double lowlem_cap(const PsiProfile& profile, double delta, double x_T_mod, double r,
                  double lambda_trial) {
  if (!(r > 0.0 && r <= 1.0)) throw DomainError("lowlem_cap needs 0 < r <= 1");
  const double arg = std::min(1.0, r * (lambda_trial * x_T_mod + r));
  return 2.0 * (profile.eval(arg) + delta) / r;
}

LowerBound kappa_lower_detail(const PsiProfile& profile, double delta, const Direction& x) {
  if (x.is_zero()) throw DomainError("kappa_lower needs a nonzero direction");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0,1)");
  const double n = x.abs_n();
  const double tm = x.abs_t();

  LowerBound out;
  out.value = std::max(n, tm);
  out.regime = "bidisc";
  if (n == 0.0) {
    out.regime = "tangential";
    return out;
  }
  if (!profile.strictly_increasing()) {
    out.regime = "fallback";
    return out;
  }
  const double t = tm / n;
  auto consider = [&](double v, const char* tag) {
    if (v > out.value) {
      out.value = v;
      out.regime = tag;
    }
  };

  const auto& rep = profile.classify();
  if (rep.psi_over_x_increasing && delta < profile.at_one()) {
    const double inv = profile.inverse(delta);
    if (numeric::leq_rel(t, inv / (8.0 * delta))) {
      consider(std::sqrt(inv) / delta * n / (4.0 * std::sqrt(2.0)), "main3_explicit");
    }
  }
  if (profile.linear_ceiling() <= 1.0 && t < 1.0) {
    consider((n - tm) / (5.0 * std::sqrt(delta)), "main2_explicit");
  }

  const SchwarzCertificate cert = invert_caps(profile, delta, t);
  out.certificate = cert;
  consider(n / cert.lambda, "lowlem_grid");
  out.certificate.regime = out.regime;
  return out;
}

double kappa_lower(const PsiProfile& profile, double delta, const Direction& x) {
  return kappa_lower_detail(profile, delta, x).value;
}

}  // namespace invmet
