#include "invmet/psi_profile.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

#include "invmet/errors.hpp"
#include "invmet/numeric.hpp"

namespace invmet {

namespace {

constexpr double kGridLo = 1e-8;
constexpr double kRelTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kHalvingMaxRung = 160;  // K ≤ 2^20

bool nondecreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] < v[i - 1] * (1.0 - kRelTol)) return false;
  }
  return true;
}

bool strictly_increasing_seq(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) return false;
  }
  return true;
}

bool nonincreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[i - 1] * (1.0 + kRelTol)) return false;
  }
  return true;
}

bool strictly_decreasing_seq(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

std::string format_param(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Shortest round-tripping representation.
  for (int prec = 1; prec <= 17; ++prec) {
    char tmp[64];
    std::snprintf(tmp, sizeof tmp, "%.*g", prec, v);
    if (std::strtod(tmp, nullptr) == v) return tmp;
  }
  return buf;
}

}  // namespace

struct PsiProfile::Certificate {
  std::vector<double> grid;
  std::vector<double> values;
  MonotonicityReport report;
  bool strictly_increasing = false;
  double linear_floor = 0.0;
  double sqrt_floor = 0.0;
  double linear_ceiling = kInf;
};

PsiProfile::PsiProfile(Kind kind, double param, std::function<double(double)> fn,
                       std::string label)
    : kind_(kind), param_(param), fn_(std::move(fn)), label_(std::move(label)) {
  const double at_zero = fn_(0.0);
  at_one_ = fn_(1.0);
  if (at_zero != 0.0) throw DomainError("psi profile: psi(0) must be 0");
  if (!(at_one_ > 0.0) || !std::isfinite(at_one_)) {
    throw DomainError("psi profile: psi(1) must be positive and finite");
  }

  auto cert = std::make_shared<Certificate>();
  cert->grid = numeric::log_grid(kGridLo, 1.0, kGridSize);
  cert->values.reserve(kGridSize);
  for (double x : cert->grid) {
    const double y = fn_(x);
    if (!(y >= 0.0) || !std::isfinite(y)) {
      throw DomainError("psi profile: psi must be finite and nonnegative on [0,1]");
    }
    cert->values.push_back(y);
  }

  MonotonicityReport& rep = cert->report;
  rep.grid_size = kGridSize;
  if (kind_ == Kind::power) {
    const double beta = param_;
    rep.analytic = true;
    rep.psi_over_x_increasing = beta >= 1.0;
    rep.psi_over_x_strictly_increasing = beta > 1.0;
    rep.psi_over_sqrtx_increasing = beta >= 0.5;
    rep.psi1_decreasing = beta <= 1.0;
    rep.psi1_strictly_decreasing = beta < 1.0;
    rep.psi_over_xgamma_increasing_for = beta;
    cert->strictly_increasing = true;
    cert->linear_floor = beta <= 1.0 ? 1.0 : 0.0;
    cert->sqrt_floor = beta <= 0.5 ? 1.0 : 0.0;
    cert->linear_ceiling = beta >= 1.0 ? 1.0 : kInf;
  } else if (kind_ == Kind::linear) {
    const double c0 = param_;
    rep.analytic = true;
    rep.psi_over_x_increasing = true;
    rep.psi_over_x_strictly_increasing = false;
    rep.psi_over_sqrtx_increasing = true;
    rep.psi1_decreasing = true;
    rep.psi1_strictly_decreasing = false;
    rep.psi_over_xgamma_increasing_for = 1.0;
    cert->strictly_increasing = true;
    cert->linear_floor = c0;
    cert->sqrt_floor = 0.0;
    cert->linear_ceiling = c0;
  } else {
    const auto& g = cert->grid;
    const auto& v = cert->values;
    std::vector<double> over_x(g.size());
    std::vector<double> over_sqrt(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      over_x[i] = v[i] / g[i];
      over_sqrt[i] = v[i] / std::sqrt(g[i]);
    }
    cert->strictly_increasing = v.front() > 0.0 && strictly_increasing_seq(v);
    rep.psi_over_x_increasing = nondecreasing(over_x);
    rep.psi_over_x_strictly_increasing = strictly_increasing_seq(over_x);
    rep.psi_over_sqrtx_increasing = nondecreasing(over_sqrt);
    rep.psi1_decreasing = nonincreasing(over_x);
    rep.psi1_strictly_decreasing = strictly_decreasing_seq(over_x);

    // Largest γ = k/64 (k ≤ 256) with ψ/x^γ nondecreasing; the property is monotone in γ.
    auto gamma_ok = [&](double gamma) {
      std::vector<double> r(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) r[i] = v[i] / std::pow(g[i], gamma);
      return nondecreasing(r);
    };
    int lo = 0;
    int hi = 257;
    while (hi - lo > 1) {
      const int mid = (lo + hi) / 2;
      if (gamma_ok(mid / 64.0)) lo = mid; else hi = mid;
    }
    if (lo > 0) rep.psi_over_xgamma_increasing_for = lo / 64.0;

    double lf = kInf;
    double sf = kInf;
    double lc = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      lf = std::min(lf, over_x[i]);
      sf = std::min(sf, over_sqrt[i]);
      lc = std::max(lc, over_x[i]);
    }
    cert->linear_floor = lf;
    cert->sqrt_floor = sf;
    cert->linear_ceiling = lc;
  }
  cert_ = std::move(cert);
}

PsiProfile PsiProfile::power(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw DomainError("power profile requires beta > 0");
  }
  return PsiProfile(Kind::power, beta,
                    [beta](double x) { return x == 0.0 ? 0.0 : std::pow(x, beta); },
                    "power:" + format_param(beta));
}

PsiProfile PsiProfile::linear(double c0) {
  if (!(c0 > 0.0) || !std::isfinite(c0)) {
    throw DomainError("linear profile requires c0 > 0");
  }
  return PsiProfile(Kind::linear, c0, [c0](double x) { return c0 * x; },
                    "linear:" + format_param(c0));
}

PsiProfile PsiProfile::custom(std::function<double(double)> fn, std::string label) {
  return PsiProfile(Kind::custom, std::numeric_limits<double>::quiet_NaN(), std::move(fn),
                    std::move(label));
}

PsiProfile PsiProfile::parse(std::string_view literal) {
  const auto colon = literal.find(':');
  if (colon == std::string_view::npos) {
    throw DomainError("profile literal must look like power:BETA or linear:C0");
  }
  const std::string kind(literal.substr(0, colon));
  const std::string value(literal.substr(colon + 1));
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (value.empty() || end != value.c_str() + value.size()) {
    throw DomainError("profile literal: malformed number '" + value + "'");
  }
  if (kind == "power") return power(v);
  if (kind == "linear") return linear(v);
  throw DomainError("profile literal: unknown kind '" + kind + "'");
}

double PsiProfile::eval(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("psi evaluated outside [0,1]");
  }
  return raw(x);
}

bool PsiProfile::strictly_increasing() const noexcept { return cert_->strictly_increasing; }

const MonotonicityReport& PsiProfile::classify() const noexcept { return cert_->report; }

double PsiProfile::linear_floor() const noexcept { return cert_->linear_floor; }
double PsiProfile::sqrt_floor() const noexcept { return cert_->sqrt_floor; }
double PsiProfile::linear_ceiling() const noexcept { return cert_->linear_ceiling; }

double PsiProfile::inverse(double y) const {
  if (!strictly_increasing()) {
    throw CertificationError("psi inverse requested but psi is not certified strictly increasing");
  }
  if (!(y >= 0.0 && y <= at_one_)) {
    throw DomainError("psi inverse: argument outside [0, psi(1)]");
  }
  if (y == 0.0) return 0.0;
  switch (kind_) {
    case Kind::power:
      return std::pow(y, 1.0 / param_);
    case Kind::linear:
      return y / param_;
    case Kind::custom:
      break;
  }
  return numeric::bisect([&](double x) { return raw(x) - y; }, 0.0, 1.0, 1e-16, 200);
}

double PsiProfile::psi1(double x) const {
  if (!(x > 0.0 && x <= 1.0)) throw DomainError("psi1 requires x in (0,1]");
  if (kind_ == Kind::power) return std::pow(x, param_ - 1.0);
  if (kind_ == Kind::linear) return param_;
  return raw(x) / x;
}

std::optional<double> PsiProfile::psi1_inverse_analytic(double s) const {
  if (kind_ != Kind::power || param_ == 1.0 || !(s > 0.0)) return std::nullopt;
  return std::pow(s, 1.0 / (param_ - 1.0));
}

double PsiProfile::psi1_inverse(double s) const {
  const auto& rep = classify();
  if (kind_ == Kind::power) {
    const auto x = psi1_inverse_analytic(s);
    if (!x) throw DomainError("psi1 is constant and cannot be inverted");
    if (!(*x > 0.0 && *x <= 1.0)) throw DomainError("psi1 inverse: preimage outside (0,1]");
    return *x;
  }
  const bool decreasing = rep.psi1_strictly_decreasing;
  const bool increasing = rep.psi_over_x_strictly_increasing;
  if (!decreasing && !increasing) {
    throw DomainError("psi1 is not strictly monotone and cannot be inverted");
  }
  // Search in log x on the certified window [1e-8, 1].
  auto g = [&](double logx) { return raw(std::exp(logx)) / std::exp(logx) - s; };
  const double a = std::log(kGridLo);
  const double ga = g(a);
  const double gb = g(0.0);
  if ((ga < 0.0) == (gb < 0.0) && ga != 0.0 && gb != 0.0) {
    throw DomainError("psi1 inverse: value outside the range of psi1");
  }
  return std::exp(numeric::bisect(g, a, 0.0, 1e-16, 200));
}

std::optional<double> PsiProfile::halving_constant() const {
  const auto& rep = classify();
  if (!rep.psi1_decreasing) return std::nullopt;
  if (kind_ == Kind::power) {
    if (param_ >= 1.0) return std::nullopt;
    const double k = std::exp2(1.0 / (1.0 - param_));
    if (k > std::exp2(20.0)) return std::nullopt;
    return k;
  }
  return halving_search();
}

std::optional<double> PsiProfile::halving_search() const {
  const auto& g = cert_->grid;
  for (int j = 1; j <= kHalvingMaxRung; ++j) {
    const double k = std::exp2(j / 8.0);
    bool ok = true;
    bool any = false;
    for (double x : g) {
      if (x > 1.0 / k) break;
      any = true;
      if (raw(k * x) / (k * x) > 0.5 * (raw(x) / x) * (1.0 + kRelTol)) {
        ok = false;
        break;
      }
    }
    if (ok && any) return k;
  }
  return std::nullopt;
}

}  // namespace invmet
