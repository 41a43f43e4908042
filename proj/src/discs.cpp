#include "invmet/discs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "invmet/errors.hpp"
#include "invmet/numeric.hpp"

namespace invmet {

namespace {

// Rounding allowances: absolute for the bidisc terms, relative to the magnitudes involved for
// the ψ term (64 ulps).
constexpr double kBidiscAllowance = 1e-14;
constexpr double kPsiUlps = 64.0 * std::numeric_limits<double>::epsilon();
constexpr double kRadiusSafety = 1e-9;
constexpr std::size_t kRefineSeeds = 8;
constexpr std::size_t kMaxViolations = 16;
constexpr double kNoShortcut = std::numeric_limits<double>::infinity();
constexpr int kMaxShrinks = 20;

Complex unit_phase(Complex c) {
  const double a = std::abs(c);
  return a == 0.0 ? Complex(1.0, 0.0) : c / a;
}

void require(bool ok, const char* id, const std::string& what) {
  if (!ok) throw RegimeError(std::string(id) + ": " + what);
}

struct Clearance {
  double value;
  int term;  // 0: |z1|, 1: |z2|, 2: ψ
};

const char* term_name(int term) {
  switch (term) {
    case 0:
      return "|z1| >= 1";
    case 1:
      return "|z2| >= 1";
    default:
      return "Re z1 >= psi(|z2|)";
  }
}

// Clearance net of rounding allowance at φ(ζ); `scale1`, `scale2` are Σ|coefficient|·|ζ|^k of
// the two slots (constant term of the first slot included).
Clearance clearance(const PsiProfile& psi, const Point& z, double scale1, double scale2,
                    double running_min) {
  const double c1 = 1.0 - std::abs(z.z1) - kBidiscAllowance;
  const double a2 = std::abs(z.z2);
  const double c2 = 1.0 - a2 - kBidiscAllowance;
  Clearance out = c1 <= c2 ? Clearance{c1, 0} : Clearance{c2, 1};
  if (a2 >= 1.0) return out;
  const double re = z.z1.real();
  const double base_allow = kPsiUlps * scale1;
  // ψ ≥ 0, so the ψ term is at least −Re z₁ minus its allowance.
  if (-re - base_allow - kPsiUlps * psi.at_one() >= std::min(running_min, out.value)) {
    return out;
  }
  const double v = psi.eval(a2);
  const double allow = base_allow + kPsiUlps * std::max(v, psi.eval(std::min(1.0, scale2)));
  const double c3 = v - re - allow;
  if (c3 < out.value) out = {c3, 2};
  return out;
}

std::pair<double, double> slot_scales(const DiscSpec& d, double rho) {
  auto sum = [rho](const std::vector<Complex>& p) {
    double acc = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * rho + std::abs(*it);
    return acc;
  };
  return {sum(d.p1), sum(d.p2)};
}

Clearance clearance_at(const PsiProfile& psi, const DiscSpec& d, Complex zeta,
                       double running_min) {
  const auto [s1, s2] = slot_scales(d, std::abs(zeta));
  return clearance(psi, d.eval(zeta), s1, s2, running_min);
}

}  // namespace

const char* to_string(CatalogId id) {
  static const char* names[] = {"D1", "D2", "D3", "D4", "D5", "D6", "D7", "D8", "D9", "D10"};
  return names[static_cast<int>(id)];
}

CatalogId parse_catalog_id(std::string_view s) {
  for (CatalogId id : kAllCatalog) {
    if (s == to_string(id)) return id;
  }
  throw DomainError("unknown catalog id '" + std::string(s) + "'");
}

Point DiscSpec::eval(Complex zeta) const {
  auto horner = [zeta](const std::vector<Complex>& p) {
    Complex acc{};
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * zeta + *it;
    return acc;
  };
  return {horner(p1), horner(p2)};
}

double DiscSpec::lambda(const Direction& x) const {
  const double nx = std::norm(x.xn) + std::norm(x.xt);
  if (nx == 0.0) throw DomainError("direction must be nonzero");
  const Complex mu = (d1() * std::conj(x.xn) + d2() * std::conj(x.xt)) / nx;
  const double resid = std::hypot(std::abs(d1() - mu * x.xn), std::abs(d2() - mu * x.xt));
  const double scale = std::hypot(std::abs(d1()), std::abs(d2()));
  if (resid > 1e-12 * std::max(scale, 1e-300)) {
    throw DomainError(source + ": disc derivative is not parallel to the direction");
  }
  return std::abs(mu);
}

DiscSpec build_unverified(CatalogId id, const PsiProfile& psi, double delta,
                          const Direction& x, const CatalogOptions& opt) {
  const char* name = to_string(id);
  if (!(delta > 0.0 && delta <= opt.delta0)) throw DomainError("delta must lie in (0, delta0]");
  if (x.is_zero()) throw DomainError("direction must be nonzero");
  const auto& rep = psi.classify();
  const double n = x.abs_n();
  const double tm = x.abs_t();
  const Complex base(-delta, 0.0);
  auto inv_delta = [&] {
    require(delta < psi.at_one(), name, "needs delta < psi(1)");
    return psi.inverse(delta);
  };

  DiscSpec d;
  d.source = name;
  switch (id) {
    case CatalogId::D1: {
      require(rep.psi_over_x_increasing, name, "needs psi(x)/x increasing");
      require(n > 0.0, name, "needs x_N != 0");
      const double inv = inv_delta();
      const Complex t = x.xt / x.xn;
      require(std::abs(std::abs(t) - inv / delta) <= 1e-9 * (inv / delta), name,
              "direction must be parallel to (1, psi^{-1}(delta)/delta)");
      d.p1 = {base, delta / inv};
      d.p2 = {0.0, unit_phase(t)};
      break;
    }
    case CatalogId::D2: {
      require(rep.psi_over_x_increasing, name, "needs psi(x)/x increasing");
      require(tm > 0.0, name, "needs x_T != 0");
      const double inv = inv_delta();
      require(n / tm < delta / inv, name, "needs |x_N|/|x_T| < delta/psi^{-1}(delta)");
      d.p1 = {base, x.xn / tm};
      d.p2 = {0.0, unit_phase(x.xt)};
      break;
    }
    case CatalogId::D3: {
      const double c0 = psi.linear_floor();
      require(c0 > 0.0, name, "needs psi(x) >= c0 x with c0 > 0");
      require(tm > 0.0 && numeric::leq_rel(n, std::min(1.0, c0) * tm), name,
              "needs |x_N| <= min(1, c0)|x_T|");
      const Complex ratio = x.xn / x.xt;
      const double a = std::abs(ratio);
      const double lam = delta <= 1.0 - a ? 1.0 : (1.0 - delta) / a;
      d.p1 = {base, lam * ratio};
      d.p2 = {0.0, lam};
      break;
    }
    case CatalogId::D4: {
      require(rep.psi_over_x_strictly_increasing, name, "needs psi(x)/x strictly increasing");
      require(delta <= delta_star(psi), name, "needs delta <= delta*");
      require(tm > 0.0, name, "needs x_T != 0");
      const double inv = inv_delta();
      require(numeric::leq_rel(n, std::min(1.0, delta / inv) * tm), name,
              "needs |x_N| <= min(1, delta/psi^{-1}(delta))|x_T|");
      d.p1 = {base, x.xn / x.xt};
      d.p2 = {0.0, 1.0};
      break;
    }
    case CatalogId::D5: {
      const double c0 = psi.sqrt_floor();
      require(c0 > 0.0, name, "needs psi(x) >= c0 sqrt(x) with c0 > 0");
      require(n > 0.0, name, "needs x_N != 0");
      const Complex t = x.xt / x.xn;
      require(numeric::leq_rel(std::abs(t), 1.0 / c0), name, "needs |x_T| <= |x_N|/c0");
      d.p1 = {base, 1.0};
      d.p2 = {0.0, t, unit_phase(t) / (c0 * c0)};
      d.nominal_radius =
          std::min(1.0 - opt.delta0, c0 * (std::sqrt(5.0) - 1.0) / 2.0);
      break;
    }
    case CatalogId::D6: {
      require(rep.psi_over_sqrtx_increasing, name, "needs psi(x)/sqrt(x) increasing");
      require(n > 0.0, name, "needs x_N != 0");
      const double inv = inv_delta();
      const Complex t = x.xt / x.xn;
      require(numeric::leq_rel(std::abs(t), inv / delta), name,
              "needs |x_T| <= psi^{-1}(delta)/delta |x_N|");
      const double lam = delta / (2.0 * std::sqrt(inv));
      d.p1 = {base, lam};
      d.p2 = {0.0, lam * t, 0.5 * opt.d6_coefficient_scale};
      break;
    }
    case CatalogId::D7: {
      require(rep.psi_over_sqrtx_increasing && rep.psi1_decreasing, name,
              "needs psi(x)/sqrt(x) increasing and psi1 decreasing");
      require(n > 0.0, name, "needs x_N != 0");
      require(delta <= 0.5, name, "needs delta <= 1/2");
      const double inv = inv_delta();
      const Complex t = x.xt / x.xn;
      const double at = std::abs(t);
      require(at > 0.0 && numeric::leq_rel(inv / (8.0 * delta), at) && numeric::leq_rel(at, 1.0),
              name, "needs psi^{-1}(delta)/(8 delta) <= |x_T/x_N| <= 1");
      double root = 0.0;
      try {
        root = std::sqrt(psi.psi1_inverse(1.0 / at));
      } catch (const DomainError& e) {
        throw RegimeError(std::string(name) + ": " + e.what());
      }
      const double lam = root / at;
      d.p1 = {base, lam};
      d.p2 = {0.0, lam * t, unit_phase(t)};
      d.nominal_radius = std::min(1.0 - delta, 0.5 * std::min(1.0, 1.0 / psi.at_one()));
      break;
    }
    case CatalogId::D8: {
      require(numeric::leq_rel(1.0, psi.linear_floor()), name, "needs psi(x) >= x");
      require(n > 0.0, name, "needs x_N != 0");
      require(delta < 0.5, name, "needs delta < 1/2");
      const Complex t = x.xt / x.xn;
      const double at = std::abs(t);
      require(at < 1.0 && delta < (1.0 - at) * (1.0 - at), name,
              "needs |x_T/x_N| < 1 and delta < (1 - |x_T/x_N|)^2");
      const double alpha = (1.0 - at) * (1.0 - at) / (2.0 * delta);
      d.p1 = {base, 1.0};
      d.p2 = {0.0, t, alpha * unit_phase(t)};
      d.nominal_radius = 0.5 * std::sqrt(delta) / (1.0 - at);
      break;
    }
    case CatalogId::D9: {
      require(numeric::leq_rel(1.0, psi.linear_floor()), name, "needs psi(x) >= x");
      require(n > 0.0, name, "needs x_N != 0");
      const Complex t = x.xt / x.xn;
      const double at = std::abs(t);
      require(at >= 0.125 && numeric::leq_rel(at, 1.0), name, "needs 1/8 <= |x_T/x_N| <= 1");
      require(delta >= (1.0 - at) * (1.0 - at), name, "needs delta >= (1 - |x_T/x_N|)^2");
      const double lam = std::min(1.0 - opt.delta0, 0.125);
      d.p1 = {base, lam};
      d.p2 = {0.0, lam * t, 0.25 * unit_phase(t)};
      break;
    }
    case CatalogId::D10: {
      require(rep.psi_over_x_increasing, name, "needs psi(x)/x increasing");
      require(tm > 0.0, name, "needs x_T != 0");
      const double inv = inv_delta();
      require(numeric::leq_rel(inv / delta * n, tm), name,
              "needs |x_T| >= psi^{-1}(delta)/delta |x_N|");
      d.p1 = {base, x.xn / x.xt};
      d.p2 = {0.0, 1.0};
      d.nominal_radius = std::min(1.0, delta / std::sqrt(inv));
      break;
    }
  }
  return d;
}

AdmissibilityReport verify(const DiscSpec& disc, const ModelDomain& domain, std::size_t n_angles,
                           std::size_t n_radii) {
  const PsiProfile& psi = domain.profile();
  const double r_max = disc.nominal_radius * (1.0 - kRadiusSafety);
  n_angles = std::max<std::size_t>(n_angles, 8);
  n_radii = std::max<std::size_t>(n_radii, 4);

  std::vector<double> angles;
  angles.reserve(n_angles);
  const std::size_t n_focus = n_angles / 4;
  const double focus = std::numbers::pi / 8.0;
  for (std::size_t i = 0; i < n_focus; ++i) {
    angles.push_back(-focus + 2.0 * focus * static_cast<double>(i) /
                                  static_cast<double>(n_focus - 1));
  }
  const std::size_t n_uniform = n_angles - n_focus;
  for (std::size_t i = 0; i < n_uniform; ++i) {
    angles.push_back(2.0 * std::numbers::pi * (static_cast<double>(i) + 0.5) /
                     static_cast<double>(n_uniform));
  }
  // Re φ₁ < 0 while |ζ| is well below δ = −Re φ₁(0), so the log radii start near that scale.
  const double delta = -disc.p1.front().real();
  const double r_min = disc.nominal_radius * std::min(1e-4, delta > 0.0 ? delta / 4.0 : 1e-4);
  std::vector<double> radii = numeric::log_grid(r_min, r_max, n_radii / 2);
  const std::size_t n_lin = n_radii - radii.size();
  for (std::size_t k = 1; k <= n_lin; ++k) {
    radii.push_back(r_max * static_cast<double>(k) / static_cast<double>(n_lin));
  }

  struct Sample {
    double margin;
    Complex zeta;
    int term;
  };
  AdmissibilityReport rep;
  std::vector<Sample> samples;
  samples.reserve(angles.size() * radii.size());
  for (double th : angles) {
    const Complex e = std::polar(1.0, th);
    for (double r : radii) {
      const Complex zeta = r * e;
      const Clearance c =
          clearance_at(psi, disc, zeta, kNoShortcut);
      samples.push_back({c.value, zeta, c.term});
      if (!rep.first_violation && c.value <= 0.0) {
        rep.first_violation = Violation{zeta, term_name(c.term), c.value};
      }
    }
  }
  rep.n_samples = samples.size();

  std::vector<Sample> order = samples;
  std::sort(order.begin(), order.end(),
            [](const Sample& a, const Sample& b) { return a.margin < b.margin; });
  std::vector<Sample> seeds;
  for (int term = 0; term < 3; ++term) {
    std::size_t taken = 0;
    for (const Sample& s : order) {
      if (taken == kRefineSeeds) break;
      if (s.term != term) continue;
      seeds.push_back(s);
      ++taken;
    }
  }
  std::vector<Sample> refined;
  for (const Sample& seed : seeds) {
    auto f = [&](const std::vector<double>& v) {
      const double rho = std::clamp(v[0], 0.0, r_max);
      return clearance_at(psi, disc, std::polar(rho, v[1]), kNoShortcut).value;
    };
    const Complex z0 = seed.zeta;
    const auto res = numeric::nelder_mead(f, {std::abs(z0), std::arg(z0)},
                                          {0.02 * disc.nominal_radius, 0.02}, 200,
                                          1e-12 * disc.nominal_radius);
    const Complex zeta = std::polar(std::clamp(res.x[0], 0.0, r_max), res.x[1]);
    const Clearance c = clearance_at(psi, disc, zeta, kNoShortcut);
    refined.push_back({c.value, zeta, c.term});
    ++rep.n_samples;
  }

  Sample worst = order.front();
  for (const Sample& s : refined) {
    if (s.margin < worst.margin) worst = s;
    if (!rep.first_violation && s.margin <= 0.0) {
      rep.first_violation = Violation{s.zeta, term_name(s.term), s.margin};
    }
  }
  rep.worst_margin = worst.margin;
  rep.worst_zeta = worst.zeta;

  std::vector<Sample> bad;
  for (const auto* pool : {&refined, &samples}) {
    for (const Sample& s : *pool) {
      if (s.margin <= 0.0) bad.push_back(s);
    }
  }
  std::sort(bad.begin(), bad.end(),
            [](const Sample& a, const Sample& b) { return a.margin < b.margin; });
  for (std::size_t i = 0; i < bad.size() && i < kMaxViolations; ++i) {
    rep.violations.push_back(bad[i].zeta);
  }
  return rep;
}

DiscSpec construct(CatalogId id, const PsiProfile& profile, double delta, const Direction& x,
                   const CatalogOptions& opt) {
  DiscSpec d = build_unverified(id, profile, delta, x, opt);
  const ModelDomain domain(profile);
  AdmissibilityReport rep = verify(d, domain, opt.n_angles, opt.n_radii);
  const bool may_shrink = id == CatalogId::D1 || id == CatalogId::D2;
  for (int i = 0; !rep.ok() && may_shrink && i < kMaxShrinks; ++i) {
    d.nominal_radius *= 0.9;
    rep = verify(d, domain, opt.n_angles, opt.n_radii);
  }
  if (!rep.ok()) {
    const Violation v = rep.first_violation.value_or(Violation{rep.worst_zeta, "margin", 0.0});
    throw ConstructionError(std::string(to_string(id)) + ": admissibility fails at zeta = (" +
                                std::to_string(v.zeta.real()) + ", " +
                                std::to_string(v.zeta.imag()) + "): " + v.reason,
                            v.zeta.real(), v.zeta.imag(), v.reason);
  }
  d.report = rep;
  return d;
}

double implied_upper(const DiscSpec& disc, const Direction& x) {
  if (!disc.report || !disc.report->ok()) {
    throw CertificationError(disc.source + ": disc has not passed admissibility verification");
  }
  return 1.0 / (disc.lambda(x) * disc.nominal_radius);
}

std::vector<CatalogEntry> catalog_sweep(const PsiProfile& profile, double delta,
                                        const Direction& x, const CatalogOptions& opt) {
  std::vector<CatalogEntry> out;
  for (CatalogId id : kAllCatalog) {
    CatalogEntry e{id, std::nullopt, std::nullopt, {}, false};
    try {
      DiscSpec d = construct(id, profile, delta, x, opt);
      e.in_regime = true;
      e.upper = implied_upper(d, x);
      e.disc = std::move(d);
    } catch (const ConstructionError& err) {
      e.in_regime = true;
      e.error = err.what();
    } catch (const std::exception& err) {
      e.error = err.what();
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::optional<double> best_catalog_upper(const PsiProfile& profile, double delta,
                                         const Direction& x, const CatalogOptions& opt) {
  std::optional<double> best;
  for (const auto& e : catalog_sweep(profile, delta, x, opt)) {
    if (e.upper && (!best || *e.upper < *best)) best = e.upper;
  }
  return best;
}

}  // namespace invmet
