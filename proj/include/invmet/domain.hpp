#pragma once

#include <complex>

#include "invmet/psi_profile.hpp"

namespace invmet {

using Complex = std::complex<double>;

/// A point (z₁, z₂) of ℂ².
struct Point {
  Complex z1;
  Complex z2;
};

/// Tangent vector (x_N, x_T) at the base point.
struct Direction {
  Complex xn;
  Complex xt;

  double abs_n() const { return std::abs(xn); }
  double abs_t() const { return std::abs(xt); }
  bool is_zero() const { return xn == Complex{} && xt == Complex{}; }
  Direction scaled(Complex a) const { return {a * xn, a * xt}; }
};

/// p_δ = (−δ, 0) with 0 < δ ≤ δ₀ < 1.
class BasePoint {
 public:
  static constexpr double kDefaultDelta0 = 0.5;

  explicit BasePoint(double delta, double delta0 = kDefaultDelta0);

  double delta() const noexcept { return delta_; }
  double delta0() const noexcept { return delta0_; }
  Point point() const noexcept { return {Complex(-delta_, 0.0), Complex{}}; }

 private:
  double delta_;
  double delta0_;
};

/// G_ψ = {z ∈ 𝔻² : Re z₁ < ψ(|z₂|)}.
class ModelDomain {
 public:
  static constexpr double kDefaultMargin = 1e-9;

  explicit ModelDomain(PsiProfile profile) : profile_(std::move(profile)) {}

  const PsiProfile& profile() const noexcept { return profile_; }

  /// |z₁| ≤ 1 − m, |z₂| ≤ 1 − m and Re z₁ ≤ ψ(|z₂|) − m; every inequality is strict when m = 0.
  bool contains(const Point& z, double margin = 0.0) const;

  /// Signed clearance min(1 − |z₁|, 1 − |z₂|, ψ(|z₂|) − Re z₁); positive exactly on G_ψ.
  /// The ψ term is dropped when |z₂| ≥ 1, where the bidisc term is already non-positive.
  double margin(const Point& z) const;

 private:
  PsiProfile profile_;
};

/// Root of 1 − δ = δ/ψ⁻¹(δ); requires ψ(x)/x strictly increasing.
double delta_star(const PsiProfile& profile);

}  // namespace invmet
