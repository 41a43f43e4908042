#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "invmet/discs.hpp"
#include "invmet/domain.hpp"
#include "invmet/oracle.hpp"
#include "invmet/psi_profile.hpp"

namespace invmet {

enum class Estimator {
  closed_form,  // case formula for the profile (shape when its constant is unknown)
  theorem1,     // ψ⁻¹(δ)/δ·|x_N| + |x_T|
  f3,           // F3(t)·|x_N|
  main2,        // linear-profile quantity
  main2_lower,  // (|x_N| − |x_T|)/(5√δ)
  schwarz,
  sibony,
  catalog,
  oracle,
  kappa2,
};

const char* to_string(Estimator e);
Estimator parse_estimator(std::string_view s);

/// Fixed X, or X(δ) = (1, δ^γ) when gamma is set.
struct DirectionFamily {
  Direction fixed{Complex(1.0, 0.0), Complex(0.0, 0.0)};
  std::optional<double> gamma;

  Direction at(double delta) const;
};

/// n geometric points from lo to hi.
std::vector<double> delta_grid(double lo, double hi, std::size_t n);
std::vector<double> default_delta_grid();

struct SweepConfig {
  PsiProfile profile = PsiProfile::power(2.0);
  std::vector<double> deltas = default_delta_grid();
  DirectionFamily direction;
  std::vector<Estimator> estimators{Estimator::closed_form};
  std::uint64_t seed = 42;
  double delta0 = BasePoint::kDefaultDelta0;
  OracleConfig oracle;
  /// Record wall time; otherwise the seconds column is 0 so output is reproducible.
  bool timing = false;

  void validate() const;
};

struct SweepRecord {
  std::string profile;
  double beta_or_c0 = 0.0;
  double delta = 0.0;
  double xn = 0.0;
  double xt = 0.0;
  std::optional<double> gamma;
  Estimator estimator = Estimator::closed_form;
  std::string regime;
  double value = 0.0;
  /// Empty on success; otherwise the error class (regime, certification, domain, ...).
  std::string error_tag;
  double seconds = 0.0;

  bool ok() const { return error_tag.empty(); }
};

/// Evaluates one estimator at one (δ, X); errors are captured in the record.
SweepRecord evaluate(const PsiProfile& profile, double delta, const Direction& x,
                     Estimator estimator, const OracleConfig& oracle, bool timing = false);

std::vector<SweepRecord> sweep(const SweepConfig& config);

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  /// Largest |residual| in natural-log units.
  double max_residual = 0.0;
  std::size_t n_points = 0;
  bool dropped_largest_delta = false;
};

/// Least squares of log value on log δ. The largest-δ point is dropped when its residual
/// exceeds three times the median residual.
FitResult fit_loglog(const std::vector<double>& deltas, const std::vector<double>& values);
/// Fits the successful records with positive values.
FitResult fit_loglog(const std::vector<SweepRecord>& records);

inline constexpr std::string_view kCsvHeader =
    "profile,beta_or_c0,delta,xn,xt,gamma,estimator,regime,value,error_tag,seconds";

std::string csv_row(const SweepRecord& r);
void write_csv(std::ostream& os, const std::vector<SweepRecord>& records);
std::string to_csv(const std::vector<SweepRecord>& records);
/// Parses CSV produced by write_csv.
std::vector<SweepRecord> read_csv(std::istream& is);

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptOptions {
  std::uint64_t seed = 42;
  bool timing = false;
  /// Fault injection for the catalog (see CatalogOptions::d6_coefficient_scale).
  double d6_coefficient_scale = 1.0;
};

struct AcceptReport {
  std::vector<CriterionResult> criteria;
  std::vector<SweepRecord> records;

  bool pass() const;
};

/// Suite ids accepted by accept(), in criterion order, followed by "all".
const std::vector<std::string>& suite_names();

/// Runs one acceptance suite (or "all"). Unknown ids throw DomainError.
AcceptReport accept(std::string_view suite, const AcceptOptions& options = {});

/// One line per criterion: "[PASS] 3 normal-rate: ...".
std::string format_report(const AcceptReport& report);

}  // namespace invmet
