#include "invmet/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "invmet/errors.hpp"
#include "invmet/numeric.hpp"
#include "invmet/schwarz.hpp"

namespace invmet {

namespace {

constexpr double kSearchRadius = 1.0 - 1e-6;
constexpr int kStepBudget = 2500;
constexpr int kRunBudget = 400;
constexpr std::size_t kMaxActive = 256;

// Samples ζ (already scaled to the search radius) at which the search measures clearance.
class SampleSet {
 public:
  SampleSet(std::size_t n_angles, std::size_t n_radii, double delta) {
    const double r_min = std::min(1e-3, delta / 4.0);
    std::vector<double> radii = numeric::log_grid(r_min, kSearchRadius, n_radii - n_radii / 3);
    for (std::size_t k = 1; k <= n_radii / 3; ++k) {
      radii.push_back(kSearchRadius * static_cast<double>(k) / static_cast<double>(n_radii / 3));
    }
    for (std::size_t i = 0; i < n_angles; ++i) {
      // Denser near arg ζ = 0, where Re φ₁ is largest for the discs of interest.
      const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(n_angles);
      const double th = std::numbers::pi * (2.0 * u - 1.0);
      const double warped = th * (0.35 + 0.65 * std::abs(th) / std::numbers::pi);
      for (double r : radii) points_.push_back(std::polar(r, warped));
    }
  }

  void add(Complex z) {
    if (active_ >= kMaxActive) return;
    points_.push_back(z);
    ++active_;
  }

  const std::vector<Complex>& points() const { return points_; }

 private:
  std::vector<Complex> points_;
  std::size_t active_ = 0;
};

class Search {
 public:
  Search(const ModelDomain& domain, double delta, const Direction& x, const OracleConfig& cfg)
      : psi_(domain.profile()),
        domain_(domain),
        delta_(delta),
        x_(x),
        cfg_(cfg),
        samples_(cfg.coarse_angles, cfg.coarse_radii, delta),
        rng_(cfg.seed),
        threshold_(std::min(1e-9, 1e-3 * delta)) {}

  int evaluations() const { return evals_; }
  bool exhausted() const { return evals_ >= cfg_.budget; }

  DiscSpec make_disc(double lambda_eff, const std::vector<double>& c) const {
    const double lam = lambda_eff / kSearchRadius;
    DiscSpec d;
    d.source = "search";
    d.nominal_radius = kSearchRadius;
    d.p1 = {Complex(-delta_, 0.0), lam * x_.xn};
    d.p2 = {Complex{}, lam * x_.xt};
    for (int k = 2; k <= cfg_.degree; ++k) {
      const std::size_t j = static_cast<std::size_t>(4 * (k - 2));
      d.p1.emplace_back(c[j], c[j + 1]);
      d.p2.emplace_back(c[j + 2], c[j + 3]);
    }
    return d;
  }

  // Smallest clearance over the sample set (ψ skipped where it cannot lower the minimum).
  double coarse_margin(double lambda_eff, const std::vector<double>& c) {
    ++evals_;
    const DiscSpec d = make_disc(lambda_eff, c);
    double worst = std::numeric_limits<double>::infinity();
    for (Complex z : samples_.points()) {
      const Point p = d.eval(z);
      const double a2 = std::abs(p.z2);
      double m = std::min(1.0 - std::abs(p.z1), 1.0 - a2);
      if (a2 < 1.0 && -p.z1.real() < std::min(m, worst)) {
        m = std::min(m, psi_.eval(a2) - p.z1.real());
      }
      worst = std::min(worst, m);
    }
    return worst;
  }

  // Tries to find an admissible disc with effective derivative scale lambda_eff.
  std::optional<DiscSpec> feasible(double lambda_eff, const std::vector<double>& warm) {
    const std::size_t n = warm.size();
    const int step_end = std::min(cfg_.budget, evals_ + kStepBudget);
    for (int restart = 0; restart < cfg_.n_restarts && evals_ < step_end; ++restart) {
      std::vector<double> start = warm;
      if (restart > 0) {
        const double spread = restart < cfg_.n_restarts / 2 ? 0.1 : 0.6;
        for (std::size_t i = 0; i < n; ++i) start[i] += spread * (2.0 * rng_.uniform() - 1.0);
      }
      std::vector<double> step(n);
      for (std::size_t i = 0; i < n; ++i) step[i] = 0.1 * (std::abs(start[i]) + 0.05);
      for (int round = 0; round < 6 && evals_ < step_end; ++round) {
        const int iters = std::min(kRunBudget, step_end - evals_);
        auto f = [&](const std::vector<double>& c) { return -coarse_margin(lambda_eff, c); };
        const auto res = numeric::nelder_mead(f, start, step, iters, 1e-12, -threshold_);
        if (-res.fx <= threshold_) break;
        DiscSpec d = make_disc(lambda_eff, res.x);
        AdmissibilityReport rep = verify(d, domain_, cfg_.n_angles, cfg_.n_radii);
        if (rep.ok()) {
          d.report = rep;
          last_coefficients_ = res.x;
          return d;
        }
        for (Complex z : rep.violations) samples_.add(z);
        start = res.x;
        for (std::size_t i = 0; i < n; ++i) step[i] = 0.02 * (std::abs(start[i]) + 0.05);
      }
    }
    return std::nullopt;
  }

  const std::vector<double>& last_coefficients() const { return last_coefficients_; }

 private:
  const PsiProfile& psi_;
  const ModelDomain& domain_;
  double delta_;
  Direction x_;
  const OracleConfig& cfg_;
  SampleSet samples_;
  numeric::Rng rng_;
  double threshold_;
  int evals_ = 0;
  std::vector<double> last_coefficients_;
};

// Higher-order coefficients of φ(rζ), truncated to the search degree, as the search vector.
std::vector<double> rescaled_coefficients(const DiscSpec& d, int degree) {
  std::vector<double> c(static_cast<std::size_t>(4 * (degree - 1)), 0.0);
  const double r = d.nominal_radius / kSearchRadius;
  for (int k = 2; k <= degree; ++k) {
    const double rk = std::pow(r, k);
    const std::size_t j = static_cast<std::size_t>(4 * (k - 2));
    const auto uk = static_cast<std::size_t>(k);
    const Complex a = uk < d.p1.size() ? d.p1[uk] * rk : Complex{};
    const Complex b = uk < d.p2.size() ? d.p2[uk] * rk : Complex{};
    c[j] = a.real();
    c[j + 1] = a.imag();
    c[j + 2] = b.real();
    c[j + 3] = b.imag();
  }
  return c;
}

DiscSpec trivial_disc(const ModelDomain& domain, double delta, const Direction& x,
                      const OracleConfig& cfg) {
  const double n = x.abs_n();
  const double t = x.abs_t();
  double lam = std::numeric_limits<double>::infinity();
  if (n > 0.0) lam = std::min(delta, 1.0 - delta) / n;
  if (t > 0.0) lam = std::min(lam, 1.0 / t);
  lam *= 1.0 - 1e-6;
  DiscSpec d;
  d.source = "trivial";
  d.p1 = {Complex(-delta, 0.0), lam * x.xn};
  d.p2 = {Complex{}, lam * x.xt};
  d.report = verify(d, domain, cfg.n_angles, cfg.n_radii);
  return d;
}

}  // namespace

void OracleConfig::validate() const {
  if (degree < 2 || degree > static_cast<int>(DiscSpec::kMaxDegree)) {
    throw DomainError("oracle degree must lie in [2, 4]");
  }
  if (n_restarts < 1 || budget < 1 || n_angles < 8 || n_radii < 4 || coarse_angles < 4 ||
      coarse_radii < 3 || !(lambda_tol > 0.0)) {
    throw DomainError("oracle configuration values must be positive");
  }
}

OracleEstimate kappa_upper_numeric(const ModelDomain& domain, double delta, const Direction& x,
                                   const OracleConfig& cfg) {
  cfg.validate();
  if (x.is_zero()) throw DomainError("oracle needs a nonzero direction");
  if (!(delta > 0.0 && delta <= cfg.delta0)) throw DomainError("delta must lie in (0, delta0]");
  const PsiProfile& psi = domain.profile();

  OracleEstimate est;
  est.schwarz_lower = kappa_lower(psi, delta, x);

  // Warm start: best verified catalog disc, or the trivial linear disc.
  std::optional<DiscSpec> best;
  double best_upper = std::numeric_limits<double>::infinity();
  CatalogOptions copt = cfg.catalog;
  copt.delta0 = cfg.delta0;
  copt.n_angles = cfg.n_angles;
  copt.n_radii = cfg.n_radii;
  for (auto& e : catalog_sweep(psi, delta, x, copt)) {
    if (e.upper && *e.upper < best_upper) {
      best_upper = *e.upper;
      best = std::move(e.disc);
    }
  }
  if (best) est.closed_form_upper = best_upper;
  const DiscSpec trivial = trivial_disc(domain, delta, x, cfg);
  if (trivial.report->ok()) {
    const double u = implied_upper(trivial, x);
    if (u < best_upper) {
      best_upper = u;
      best = trivial;
    }
  }
  if (!best) throw EvaluationError("oracle: no admissible warm-start disc");
  est.origin = best->source;

  double lam_lo = 1.0 / best_upper;
  double lam_hi = 1.0 / est.schwarz_lower;
  Search search(domain, delta, x, cfg);
  std::vector<double> warm = rescaled_coefficients(*best, cfg.degree);
  while (lam_hi / lam_lo > 1.0 + cfg.lambda_tol && !search.exhausted()) {
    const double mid = std::sqrt(lam_lo * lam_hi);
    if (auto d = search.feasible(mid, warm)) {
      lam_lo = mid;
      best = std::move(d);
      warm = search.last_coefficients();
      est.origin = "search";
    } else {
      lam_hi = mid;
    }
  }
  est.evaluations = search.evaluations();
  est.best_disc = *best;
  est.value = std::max(implied_upper(*best, x), est.schwarz_lower);
  return est;
}

SplitEstimate kappa2_split(const ModelDomain& domain, double delta, const Direction& x,
                           const OracleConfig& cfg) {
  const PsiProfile& psi = domain.profile();
  SplitEstimate best;
  best.x1 = x;
  best.x2 = {};
  best.v1 = kappa_upper_numeric(domain, delta, x, cfg).value;
  best.v2 = 0.0;
  best.value = best.v1;
  if (x.xn == Complex{} || !(delta < psi.at_one())) return best;

  const double slope = psi.inverse(delta) / delta;
  const Complex phase = x.xt == Complex{} ? Complex(1.0, 0.0) : x.xt / x.abs_t();
  std::vector<Direction> firsts;
  for (double s : {1.0, 0.5}) {
    firsts.push_back({s * x.xn, s * x.xn * phase * slope});
  }
  for (double tau : {0.5, 2.0}) {
    for (int k = 0; k < 4; ++k) {
      const Complex e = std::polar(1.0, std::numbers::pi * k / 2.0) * phase;
      firsts.push_back({x.xn, tau * slope * x.abs_n() * e});
    }
  }
  std::uint64_t stream = 1;
  for (const Direction& x1 : firsts) {
    const Direction x2{x.xn - x1.xn, x.xt - x1.xt};
    OracleConfig sub = cfg;
    sub.seed = numeric::derive_seed(cfg.seed, stream++);
    const double v1 = kappa_upper_numeric(domain, delta, x1, sub).value;
    const double v2 = x2.is_zero() ? 0.0 : kappa_upper_numeric(domain, delta, x2, sub).value;
    if (v1 + v2 < best.value) best = {v1 + v2, x1, x2, v1, v2};
  }
  return best;
}

double kappa2_upper_numeric(const ModelDomain& domain, double delta, const Direction& x,
                            const OracleConfig& cfg) {
  return kappa2_split(domain, delta, x, cfg).value;
}

std::vector<std::pair<double, double>> indicatrix_slice(const ModelDomain& domain, double delta,
                                                        int n_angles, const OracleConfig& cfg) {
  if (n_angles < 8) throw DomainError("indicatrix_slice needs at least 8 angles");
  std::vector<std::pair<double, double>> out(static_cast<std::size_t>(n_angles));
  numeric::parallel_for(out.size(), [&](std::size_t i) {
    const double th = std::numbers::pi / 2.0 * static_cast<double>(i) /
                      static_cast<double>(n_angles - 1);
    OracleConfig sub = cfg;
    sub.seed = numeric::derive_seed(cfg.seed, i);
    const bool last = i + 1 == out.size();
    const Direction x{last ? 0.0 : std::cos(th), last ? 1.0 : std::sin(th)};
    out[i] = {th, 1.0 / kappa_upper_numeric(domain, delta, x, sub).value};
  });
  return out;
}

}  // namespace invmet
