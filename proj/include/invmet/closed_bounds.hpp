#pragma once

#include <optional>
#include <string>

#include "invmet/domain.hpp"
#include "invmet/psi_profile.hpp"

namespace invmet {

enum class MetricKind { kobayashi, kobayashi2, kobayashi_buseman, kappa_tilde, sibony };

/// An interval for a metric value. When a side's constant is unknown, that side holds the
/// shape of the estimate with the constant factored out.
struct BoundResult {
  std::optional<double> lower;
  std::optional<double> upper;
  std::string regime;
  std::string source;
  bool lower_constant_known = true;
  bool upper_constant_known = true;
  /// Both sides carry explicit constants.
  bool constants_known() const { return lower_constant_known && upper_constant_known; }
};

enum class DominantRegime { normal_dominant, tangential_dominant };

const char* to_string(DominantRegime r);

/// t = |x_T|/|x_N|, +∞ when x_N = 0.
double tangent_ratio(const Direction& x);

double theorem1_quantity(const PsiProfile& profile, double delta, const Direction& x);

double F2(const PsiProfile& profile, double delta, double t);
double F3(const PsiProfile& profile, double delta, double t);

DominantRegime regime_classify(const PsiProfile& profile, double delta, double t);

double main2_quantity(double delta, const Direction& x);

BoundResult main3_bounds(const PsiProfile& profile, double delta, const Direction& x);
BoundResult tangent_bounds(const PsiProfile& profile, double delta, const Direction& x);
BoundResult onehalf1_bounds(const PsiProfile& profile, double delta, const Direction& x,
                            double delta0 = BasePoint::kDefaultDelta0,
                            std::optional<double> c0 = std::nullopt);

/// Case table for ψ(x) = x^β. Middle-regime exponent for ½ < β < 1 is −(2β−1)/(2(1−β)).
BoundResult power_regime(double beta, double delta, const Direction& x,
                         double delta0 = BasePoint::kDefaultDelta0);

/// Explicit constant max((1−δ₀)⁻¹, (1+√5)/(2c₀)) of the thin-cusp upper bound.
double thin_cusp_constant(double c0, double delta0);

}  // namespace invmet
