#pragma once

#include <stdexcept>
#include <string>

namespace invmet {

/// Argument outside the set where a quantity is defined (x ∉ [0,1], y beyond ψ(1), ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A structural hypothesis (monotonicity, halving, ...) could not be certified on the sample grid.
class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The inputs fall outside the parameter region where a formula or construction applies.
class RegimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A disc construction failed its admissibility check; `where()` names the witness.
class ConstructionError : public std::runtime_error {
 public:
  ConstructionError(const std::string& what, double zeta_re, double zeta_im, std::string reason)
      : std::runtime_error(what), zeta_re_(zeta_re), zeta_im_(zeta_im), reason_(std::move(reason)) {}
  double zeta_re() const noexcept { return zeta_re_; }
  double zeta_im() const noexcept { return zeta_im_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  double zeta_re_;
  double zeta_im_;
  std::string reason_;
};

/// Numerical evaluation refused (finite-difference stencil near a non-smooth locus, ...).
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace invmet
