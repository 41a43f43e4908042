#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "invmet/domain.hpp"
#include "invmet/psi_profile.hpp"

namespace invmet {

enum class CatalogId { D1, D2, D3, D4, D5, D6, D7, D8, D9, D10 };

inline constexpr CatalogId kAllCatalog[] = {CatalogId::D1, CatalogId::D2, CatalogId::D3,
                                            CatalogId::D4, CatalogId::D5, CatalogId::D6,
                                            CatalogId::D7, CatalogId::D8, CatalogId::D9,
                                            CatalogId::D10};

const char* to_string(CatalogId id);
CatalogId parse_catalog_id(std::string_view s);

struct Violation {
  Complex zeta;
  std::string reason;
  double margin = 0.0;
};

struct AdmissibilityReport {
  std::size_t n_samples = 0;
  /// Smallest clearance found, net of a floating-point rounding allowance; positive iff no
  /// violation.
  double worst_margin = 0.0;
  Complex worst_zeta;
  std::optional<Violation> first_violation;
  /// Up to 16 violating parameters, worst first.
  std::vector<Complex> violations;

  bool ok() const { return worst_margin > 0.0; }
};

/// φ(ζ) = (Σ p1[k] ζ^k, Σ p2[k] ζ^k), degree ≤ 4, used on |ζ| < nominal_radius.
struct DiscSpec {
  static constexpr std::size_t kMaxDegree = 4;

  std::string source;
  std::vector<Complex> p1;
  std::vector<Complex> p2;
  double nominal_radius = 1.0;
  std::optional<AdmissibilityReport> report;

  Point eval(Complex zeta) const;
  Complex d1() const { return p1.size() > 1 ? p1[1] : Complex{}; }
  Complex d2() const { return p2.size() > 1 ? p2[1] : Complex{}; }
  /// |φ′(0)| scale relative to X, assuming φ′(0) ∥ X.
  double lambda(const Direction& x) const;
};

struct CatalogOptions {
  double delta0 = BasePoint::kDefaultDelta0;
  std::size_t n_angles = 256;
  std::size_t n_radii = 64;
  /// Multiplies the quadratic coefficient of D6 (1 = as constructed); fault injection only.
  double d6_coefficient_scale = 1.0;
};

/// Polynomial disc from the catalog, without admissibility verification.
DiscSpec build_unverified(CatalogId id, const PsiProfile& profile, double delta,
                          const Direction& x, const CatalogOptions& options = {});

/// Catalog disc, verified admissible (D1 and D2 shrink their radius by 0.9 up to 20 times).
DiscSpec construct(CatalogId id, const PsiProfile& profile, double delta, const Direction& x,
                   const CatalogOptions& options = {});

AdmissibilityReport verify(const DiscSpec& disc, const ModelDomain& domain,
                           std::size_t n_angles = 256, std::size_t n_radii = 64);

/// κ(p_δ; X) ≤ 1/(|μ|·r) where φ′(0) = μX and r = nominal_radius.
double implied_upper(const DiscSpec& disc, const Direction& x);

struct CatalogEntry {
  CatalogId id;
  std::optional<DiscSpec> disc;
  std::optional<double> upper;
  /// Set when the regime preconditions fail or verification fails.
  std::string error;
  bool in_regime = false;
};

/// Every catalog entry tried at (δ, X).
std::vector<CatalogEntry> catalog_sweep(const PsiProfile& profile, double delta,
                                        const Direction& x, const CatalogOptions& options = {});

/// Smallest verified catalog bound, if any entry applies.
std::optional<double> best_catalog_upper(const PsiProfile& profile, double delta,
                                         const Direction& x, const CatalogOptions& options = {});

}  // namespace invmet
