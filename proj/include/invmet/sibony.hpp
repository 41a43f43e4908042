#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "invmet/domain.hpp"
#include "invmet/psi_profile.hpp"

namespace invmet {

/// The log-plurisubharmonic candidate u = e^v vanishing at p_δ:
///   v = max(log(f(z₁) + |z₂|²), log|z₂| + C3) − C4 for |z₂| ≤ C1, log|z₂| + C3 − C4 otherwise,
/// with f(ζ) = C2 |(ζ+δ)/(ζ−δ)|².
class SibonyCandidate {
 public:
  SibonyCandidate(PsiProfile profile, double delta, double c1, double c3, double c4);

  const PsiProfile& profile() const noexcept { return profile_; }
  double delta() const noexcept { return delta_; }
  double C1() const noexcept { return c1_; }
  double C2() const noexcept { return c1_ * c1_; }
  double C3() const noexcept { return c3_; }
  double C4() const noexcept { return c4_; }

  double f(Complex zeta) const;
  /// f(z₁) + |z₂|², equal to e^{v + C4} wherever the first branch of the max is active.
  double potential(const Point& z) const;
  double v(const Point& z) const;
  double u(const Point& z) const { return std::exp(v(z)); }
  /// True where v is given by the log(f + |z₂|²) branch.
  bool potential_branch(const Point& z) const;

 private:
  PsiProfile profile_;
  double delta_;
  double c1_;
  double c3_;
  double c4_;
};

/// C1 = ψ⁻¹(δ/2), C3 = log(10·C1) + 1e-3 (unless given), C4 = max(C3 + log C1, C3) + 1e-3.
SibonyCandidate build(const PsiProfile& profile, double delta,
                      std::optional<double> c3 = std::nullopt);

struct LeviValue {
  Direction direction;
  /// Richardson-extrapolated ∂∂̄ of the smooth potential f(z₁) + |z₂|² along X.
  double value = 0.0;
  double h_step = 0.0;
  double discrepancy = 0.0;
  /// The same stencil applied to u itself when the potential branch is active on the whole
  /// stencil; equals e^{−C4}·value there.
  std::optional<double> u_value;
};

/// Complex Hessian along X at p by a 9-point Laplacian in w ↦ p + wX, steps h and h/2,
/// h = min(1e-4, δ/20). Throws EvaluationError when p lacks clearance 10·h or the two steps
/// disagree by more than 1e-3 relative.
LeviValue levi_form(const SibonyCandidate& c, const Point& p, const Direction& x);

struct LogPshReport {
  std::size_t n_checks = 0;
  std::size_t n_violations = 0;
  /// min over checks of (circle mean − centre value); negative beyond −tolerance is a violation.
  double worst_slack = 0.0;
  Point worst_center;
  double tolerance = 1e-6;
};

/// Sub-mean-value test of a function (−∞ allowed) on circles c + r e^{iθ}X inside G_ψ.
LogPshReport check_submean(const std::function<double(const Point&)>& fn,
                           const SibonyCandidate& geometry, std::size_t n_centers,
                           std::size_t n_radii, std::uint64_t seed = 42, double tolerance = 1e-6);

/// Sub-mean-value test of v = log u.
LogPshReport check_logpsh(const SibonyCandidate& c, std::size_t n_centers = 1000,
                          std::size_t n_radii = 8, std::uint64_t seed = 42,
                          double tolerance = 1e-6);

struct URange {
  double min = 0.0;
  double max = 0.0;
  std::size_t n_samples = 0;
};

/// Range of u over uniformly sampled points of G_ψ.
URange sample_u_range(const SibonyCandidate& c, std::size_t n_samples = 10000,
                      std::uint64_t seed = 42);

/// max(max(|x_N|,|x_T|), ψ⁻¹(δ/2)/(2δ)·|x_N| − |x_T|).
double sibony_lower(const PsiProfile& profile, double delta, const Direction& x);

}  // namespace invmet
