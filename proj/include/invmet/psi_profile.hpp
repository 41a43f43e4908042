#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace invmet {

/// Growth hypotheses on ψ used by the various estimates. The non-strict flags read
/// "increasing"/"decreasing" in the wide sense; a constant ratio sets them.
struct MonotonicityReport {
  bool psi_over_x_increasing = false;
  bool psi_over_x_strictly_increasing = false;
  bool psi_over_sqrtx_increasing = false;
  bool psi1_decreasing = false;
  bool psi1_strictly_decreasing = false;
  /// Largest γ found with ψ(x)/x^γ increasing (closed form β for power profiles).
  std::optional<double> psi_over_xgamma_increasing_for;
  std::size_t grid_size = 0;
  /// True when the flags come from the closed form rather than from grid sampling.
  bool analytic = false;
};

/// The defining function ψ: [0,1] → [0,∞) of the model domain, with ψ(0) = 0 and ψ(1) > 0.
/// Immutable after construction; copies share the certification data.
class PsiProfile {
 public:
  enum class Kind { power, linear, custom };

  /// Number of log-spaced certification points in [1e-8, 1].
  static constexpr std::size_t kGridSize = 4096;

  static PsiProfile power(double beta);
  static PsiProfile linear(double c0);
  static PsiProfile custom(std::function<double(double)> fn, std::string label = "custom");

  /// Parses `power:BETA` or `linear:C0`.
  static PsiProfile parse(std::string_view literal);

  Kind kind() const noexcept { return kind_; }
  /// β for power, c₀ for linear, NaN for custom.
  double parameter() const noexcept { return param_; }
  const std::string& label() const noexcept { return label_; }
  double at_one() const noexcept { return at_one_; }

  double eval(double x) const;
  double operator()(double x) const { return eval(x); }

  /// ψ⁻¹(y) for y ∈ [0, ψ(1)].
  double inverse(double y) const;

  /// ψ₁(x) = ψ(x)/x for x ∈ (0,1].
  double psi1(double x) const;
  /// ψ₁⁻¹(s), restricted to preimages in (0,1].
  double psi1_inverse(double s) const;
  /// Closed-form continuation x = s^{1/(β−1)} of ψ₁⁻¹ beyond (0,1]; only for power profiles.
  std::optional<double> psi1_inverse_analytic(double s) const;

  const MonotonicityReport& classify() const noexcept;
  bool strictly_increasing() const noexcept;

  /// Smallest K on the trial ladder 2^{j/8} with ψ₁(Kx) ≤ ½ψ₁(x) for grid x ∈ (0, 1/K].
  std::optional<double> halving_constant() const;

  /// inf ψ(x)/x over the grid (the best c₀ with ψ ≥ c₀x).
  double linear_floor() const noexcept;
  /// inf ψ(x)/√x over the grid (the best c₀ with ψ ≥ c₀√x).
  double sqrt_floor() const noexcept;
  /// sup ψ(x)/x over the grid (ψ ≤ C·x).
  double linear_ceiling() const noexcept;

 private:
  struct Certificate;

  PsiProfile(Kind kind, double param, std::function<double(double)> fn, std::string label);
  double raw(double x) const { return fn_(x); }
  std::optional<double> halving_search() const;

  Kind kind_;
  double param_;
  std::function<double(double)> fn_;
  std::string label_;
  double at_one_;
  std::shared_ptr<const Certificate> cert_;
};

}  // namespace invmet
