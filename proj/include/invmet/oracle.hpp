#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "invmet/discs.hpp"
#include "invmet/domain.hpp"

namespace invmet {

struct OracleConfig {
  int degree = 2;
  int n_restarts = 16;
  std::size_t n_angles = 256;
  std::size_t n_radii = 64;
  double lambda_tol = 1e-4;
  int budget = 20000;
  std::uint64_t seed = 42;
  double delta0 = BasePoint::kDefaultDelta0;
  /// Cheap sample grid used inside the local search; full verification uses n_angles × n_radii.
  std::size_t coarse_angles = 32;
  std::size_t coarse_radii = 12;
  CatalogOptions catalog;

  void validate() const;
};

struct OracleEstimate {
  double value = 0.0;
  std::string kind = "upper_numeric";
  DiscSpec best_disc;
  /// Rigorous lower bound from the Schwarz-lemma module.
  double schwarz_lower = 0.0;
  /// Best verified catalog bound, when some catalog disc applies.
  std::optional<double> closed_form_upper;
  /// Catalog id, "trivial" or "search".
  std::string origin;
  int evaluations = 0;
};

OracleEstimate kappa_upper_numeric(const ModelDomain& domain, double delta, const Direction& x,
                                   const OracleConfig& config = {});

struct SplitEstimate {
  double value = 0.0;
  Direction x1;
  Direction x2;
  double v1 = 0.0;
  double v2 = 0.0;
};

/// Upper estimate of κ⁽²⁾ over a family of two-way splittings X = X₁ + X₂.
SplitEstimate kappa2_split(const ModelDomain& domain, double delta, const Direction& x,
                           const OracleConfig& config = {});
double kappa2_upper_numeric(const ModelDomain& domain, double delta, const Direction& x,
                            const OracleConfig& config = {});

/// (θ, 1/κ(p_δ; (cos θ, sin θ))) for θ evenly spaced in [0, π/2].
std::vector<std::pair<double, double>> indicatrix_slice(const ModelDomain& domain, double delta,
                                                        int n_angles,
                                                        const OracleConfig& config = {});

}  // namespace invmet
