#pragma once

#include <string>

#include "invmet/domain.hpp"
#include "invmet/psi_profile.hpp"

namespace invmet {

/// Data of the Schwarz-lemma cap at the reported derivative scale λ (direction normalized
/// to x_N = 1): lambda_cap = 2(M + δ)/r with M = ψ(min(1, r(λ|x_T| + r))).
struct SchwarzCertificate {
  double r = 0.0;
  double M = 0.0;
  double lambda = 0.0;
  double lambda_cap = 0.0;
  bool clamped = false;
  std::string regime;
};

struct LowerBound {
  double value = 0.0;
  /// bidisc | lowlem_grid | main3_explicit | main2_explicit | fallback | tangential
  std::string regime;
  SchwarzCertificate certificate;
};

/// 2(ψ(min(1, r(λ·x_T_mod + r))) + δ)/r.
double lowlem_cap(const PsiProfile& profile, double delta, double x_T_mod, double r,
                  double lambda_trial);

/// Rigorous lower bound for κ(p_δ; X): the largest of the bidisc bound, the explicit
/// normal-direction constants where their hypotheses hold, and the inverted cap.
LowerBound kappa_lower_detail(const PsiProfile& profile, double delta, const Direction& x);

double kappa_lower(const PsiProfile& profile, double delta, const Direction& x);

}  // namespace invmet
