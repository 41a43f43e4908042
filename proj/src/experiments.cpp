#include "invmet/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include <gsl/gsl_fit.h>

#include "invmet/closed_bounds.hpp"
#include "invmet/errors.hpp"
#include "invmet/numeric.hpp"
#include "invmet/schwarz.hpp"
#include "invmet/sibony.hpp"

namespace invmet {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string brief(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Valued {
  double value;
  std::string regime;
};

Valued closed_form_value(const PsiProfile& profile, double delta, const Direction& x,
                         double delta0) {
  if (x.xn == Complex{}) return {x.abs_t(), "tangent_exact"};
  if (profile.kind() == PsiProfile::Kind::linear) return {main2_quantity(delta, x), "linear"};
  if (profile.kind() == PsiProfile::Kind::power) {
    const BoundResult r = power_regime(profile.parameter(), delta, x, delta0);
    if (r.upper) return {*r.upper, r.regime};
    if (r.lower && r.regime == "tangent_exact") return {*r.lower, r.regime};
    throw RegimeError("closed form: no estimate in regime " + r.regime);
  }
  if (profile.classify().psi_over_x_increasing) {
    const BoundResult r = main3_bounds(profile, delta, x);
    return {*r.upper, r.regime};
  }
  throw RegimeError("closed form: no case formula applies to this profile");
}

Valued compute(const PsiProfile& profile, double delta, const Direction& x, Estimator e,
               const OracleConfig& oracle) {
  switch (e) {
    case Estimator::closed_form:
      return closed_form_value(profile, delta, x, oracle.delta0);
    case Estimator::theorem1:
      return {theorem1_quantity(profile, delta, x), "two_sided"};
    case Estimator::f3: {
      const double t = tangent_ratio(x);
      if (!std::isfinite(t)) throw RegimeError("F3 needs x_N != 0");
      return {F3(profile, delta, t) * x.abs_n(),
              to_string(regime_classify(profile, delta, t))};
    }
    case Estimator::main2:
      return {main2_quantity(delta, x), "linear"};
    case Estimator::main2_lower:
      return {std::max(x.abs_n() - x.abs_t(), 0.0) / (5.0 * std::sqrt(delta)), "explicit"};
    case Estimator::schwarz: {
      const LowerBound lb = kappa_lower_detail(profile, delta, x);
      return {lb.value, lb.regime};
    }
    case Estimator::sibony:
      return {sibony_lower(profile, delta, x), "sibony"};
    case Estimator::catalog: {
      std::optional<double> best;
      std::string id;
      for (const auto& entry : catalog_sweep(profile, delta, x, oracle.catalog)) {
        if (entry.upper && (!best || *entry.upper < *best)) {
          best = entry.upper;
          id = to_string(entry.id);
        }
      }
      if (!best) throw RegimeError("no catalog disc applies");
      return {*best, id};
    }
    case Estimator::oracle: {
      const OracleEstimate est = kappa_upper_numeric(ModelDomain(profile), delta, x, oracle);
      return {est.value, est.origin};
    }
    case Estimator::kappa2:
      return {kappa2_upper_numeric(ModelDomain(profile), delta, x, oracle), "split"};
  }
  throw DomainError("unknown estimator");
}

}  // namespace

const char* to_string(Estimator e) {
  switch (e) {
    case Estimator::closed_form: return "closed_form";
    case Estimator::theorem1: return "theorem1";
    case Estimator::f3: return "f3";
    case Estimator::main2: return "main2";
    case Estimator::main2_lower: return "main2_lower";
    case Estimator::schwarz: return "schwarz";
    case Estimator::sibony: return "sibony";
    case Estimator::catalog: return "catalog";
    case Estimator::oracle: return "oracle";
    case Estimator::kappa2: return "kappa2";
  }
  return "?";
}

Estimator parse_estimator(std::string_view s) {
  for (Estimator e : {Estimator::closed_form, Estimator::theorem1, Estimator::f3,
                      Estimator::main2, Estimator::main2_lower, Estimator::schwarz,
                      Estimator::sibony, Estimator::catalog, Estimator::oracle,
                      Estimator::kappa2}) {
    if (s == to_string(e)) return e;
  }
  if (s == "closed-form") return Estimator::closed_form;
  throw DomainError("unknown estimator '" + std::string(s) + "'");
}

Direction DirectionFamily::at(double delta) const {
  if (!gamma) return fixed;
  return {Complex(1.0, 0.0), Complex(std::pow(delta, *gamma), 0.0)};
}

std::vector<double> delta_grid(double lo, double hi, std::size_t n) {
  return numeric::log_grid(lo, hi, n);
}

std::vector<double> default_delta_grid() { return delta_grid(1e-4, 1e-1, 16); }

void SweepConfig::validate() const {
  if (deltas.empty()) throw DomainError("sweep: empty delta grid");
  for (double d : deltas) {
    if (!(d > 0.0 && d <= delta0)) throw DomainError("sweep: delta outside (0, delta0]");
  }
  if (direction.gamma && !(*direction.gamma > 0.0)) {
    throw DomainError("sweep: gamma must be positive");
  }
  if (estimators.empty()) throw DomainError("sweep: no estimator selected");
  if (!direction.gamma && direction.fixed.is_zero()) {
    throw DomainError("sweep: direction must be nonzero");
  }
  oracle.validate();
}

SweepRecord evaluate(const PsiProfile& profile, double delta, const Direction& x,
                     Estimator estimator, const OracleConfig& oracle, bool timing) {
  SweepRecord rec;
  rec.profile = profile.label();
  rec.beta_or_c0 = profile.parameter();
  rec.delta = delta;
  rec.xn = x.abs_n();
  rec.xt = x.abs_t();
  rec.estimator = estimator;
  const auto t0 = Clock::now();
  try {
    const Valued v = compute(profile, delta, x, estimator, oracle);
    rec.value = v.value;
    rec.regime = v.regime;
  } catch (const RegimeError&) {
    rec.error_tag = "regime";
  } catch (const CertificationError&) {
    rec.error_tag = "certification";
  } catch (const ConstructionError&) {
    rec.error_tag = "construction";
  } catch (const EvaluationError&) {
    rec.error_tag = "evaluation";
  } catch (const DomainError&) {
    rec.error_tag = "domain";
  } catch (const std::exception&) {
    rec.error_tag = "error";
  }
  if (!rec.ok()) rec.value = std::numeric_limits<double>::quiet_NaN();
  if (timing) rec.seconds = elapsed(t0);
  return rec;
}

std::vector<SweepRecord> sweep(const SweepConfig& config) {
  config.validate();
  const std::size_t ne = config.estimators.size();
  std::vector<SweepRecord> out(config.deltas.size() * ne);
  numeric::parallel_for(out.size(), [&](std::size_t k) {
    const std::size_t i = k / ne;
    const double delta = config.deltas[i];
    OracleConfig oc = config.oracle;
    oc.delta0 = config.delta0;
    oc.catalog.delta0 = config.delta0;
    oc.seed = numeric::derive_seed(config.seed, i);
    out[k] = evaluate(config.profile, delta, config.direction.at(delta), config.estimators[k % ne],
                      oc, config.timing);
    out[k].gamma = config.direction.gamma;
  });
  return out;
}

FitResult fit_loglog(const std::vector<double>& deltas, const std::vector<double>& values) {
  if (deltas.size() != values.size()) throw DomainError("fit: size mismatch");
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (deltas[i] > 0.0 && values[i] > 0.0 && std::isfinite(values[i])) {
      lx.push_back(std::log(deltas[i]));
      ly.push_back(std::log(values[i]));
    }
  }
  if (lx.size() < 4) throw DomainError("fit: fewer than 4 valid points");

  auto solve = [](const std::vector<double>& x, const std::vector<double>& y) {
    FitResult f;
    double cov00 = 0.0, cov01 = 0.0, cov11 = 0.0, sumsq = 0.0;
    gsl_fit_linear(x.data(), 1, y.data(), 1, x.size(), &f.intercept, &f.slope, &cov00, &cov01,
                   &cov11, &sumsq);
    f.n_points = x.size();
    for (std::size_t i = 0; i < x.size(); ++i) {
      f.max_residual = std::max(f.max_residual, std::abs(y[i] - f.intercept - f.slope * x[i]));
    }
    return f;
  };

  FitResult fit = solve(lx, ly);
  if (lx.size() > 4) {
    std::vector<double> res(lx.size());
    for (std::size_t i = 0; i < lx.size(); ++i) {
      res[i] = std::abs(ly[i] - fit.intercept - fit.slope * lx[i]);
    }
    const std::size_t top = static_cast<std::size_t>(
        std::max_element(lx.begin(), lx.end()) - lx.begin());
    std::vector<double> sorted = res;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    const double median = sorted[sorted.size() / 2];
    if (res[top] > 3.0 * median && res[top] > 1e-12) {
      lx.erase(lx.begin() + static_cast<std::ptrdiff_t>(top));
      ly.erase(ly.begin() + static_cast<std::ptrdiff_t>(top));
      fit = solve(lx, ly);
      fit.dropped_largest_delta = true;
    }
  }
  return fit;
}

FitResult fit_loglog(const std::vector<SweepRecord>& records) {
  std::vector<double> d;
  std::vector<double> v;
  for (const auto& r : records) {
    if (!r.ok()) continue;
    d.push_back(r.delta);
    v.push_back(r.value);
  }
  return fit_loglog(d, v);
}

std::string csv_row(const SweepRecord& r) {
  std::string s;
  s += r.profile + ',';
  s += fmt(r.beta_or_c0) + ',';
  s += fmt(r.delta) + ',';
  s += fmt(r.xn) + ',';
  s += fmt(r.xt) + ',';
  s += (r.gamma ? fmt(*r.gamma) : std::string()) + ',';
  s += std::string(to_string(r.estimator)) + ',';
  s += r.regime + ',';
  s += (r.ok() ? fmt(r.value) : std::string()) + ',';
  s += r.error_tag + ',';
  s += fmt(r.seconds);
  return s;
}

void write_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
  os << kCsvHeader << '\n';
  for (const auto& r : records) os << csv_row(r) << '\n';
}

std::string to_csv(const std::vector<SweepRecord>& records) {
  std::ostringstream os;
  write_csv(os, records);
  return os.str();
}

std::vector<SweepRecord> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) {
    throw DomainError("csv: missing or unexpected header");
  }
  std::vector<SweepRecord> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      f.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (f.size() != 11) throw DomainError("csv: expected 11 fields: " + line);
    auto num = [](const std::string& s) {
      return s.empty() ? std::numeric_limits<double>::quiet_NaN() : std::strtod(s.c_str(), nullptr);
    };
    SweepRecord r;
    r.profile = f[0];
    r.beta_or_c0 = num(f[1]);
    r.delta = num(f[2]);
    r.xn = num(f[3]);
    r.xt = num(f[4]);
    if (!f[5].empty()) r.gamma = num(f[5]);
    r.estimator = parse_estimator(f[6]);
    r.regime = f[7];
    r.value = num(f[8]);
    r.error_tag = f[9];
    r.seconds = num(f[10]);
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// Acceptance suites

namespace {

struct SuiteContext {
  AcceptOptions options;
  std::vector<SweepRecord>* records;

  OracleConfig oracle(std::uint64_t stream) const {
    OracleConfig c;
    c.seed = numeric::derive_seed(options.seed, stream);
    c.catalog.d6_coefficient_scale = options.d6_coefficient_scale;
    return c;
  }

  std::vector<SweepRecord> run(const SweepConfig& cfg) const {
    auto recs = sweep(cfg);
    records->insert(records->end(), recs.begin(), recs.end());
    return recs;
  }

  SweepConfig base(const PsiProfile& profile, std::vector<Estimator> est,
                   std::uint64_t stream) const {
    SweepConfig cfg;
    cfg.profile = profile;
    cfg.estimators = std::move(est);
    cfg.seed = numeric::derive_seed(options.seed, stream);
    cfg.oracle.catalog.d6_coefficient_scale = options.d6_coefficient_scale;
    cfg.timing = options.timing;
    return cfg;
  }
};

std::vector<SweepRecord> only(const std::vector<SweepRecord>& recs, Estimator e) {
  std::vector<SweepRecord> out;
  for (const auto& r : recs) {
    if (r.estimator == e) out.push_back(r);
  }
  return out;
}

std::size_t failures(const std::vector<SweepRecord>& recs) {
  return static_cast<std::size_t>(
      std::count_if(recs.begin(), recs.end(), [](const SweepRecord& r) { return !r.ok(); }));
}

bool slope_near(const std::vector<SweepRecord>& recs, double target, double tol, double* slope) {
  try {
    *slope = fit_loglog(recs).slope;
  } catch (const DomainError&) {
    *slope = std::numeric_limits<double>::quiet_NaN();
    return false;
  }
  return std::abs(*slope - target) <= tol;
}

CriterionResult tangent_exact(const SuiteContext& ctx) {
  CriterionResult c{1, "tangent-exact", true, "", 0.0};
  const PsiProfile psi = PsiProfile::power(2.0);
  const ModelDomain dom(psi);
  std::string worst;
  double worst_rel = 0.0;
  int k = 0;
  for (double delta : {0.04, 0.1, 0.3}) {
    const double xn = std::min(1.0, delta / psi.inverse(delta));
    const Direction x{Complex(xn, 0.0), Complex(1.0, 0.0)};
    const OracleConfig oc = ctx.oracle(100 + k++);
    SweepRecord rec = evaluate(psi, delta, x, Estimator::oracle, oc, ctx.options.timing);
    ctx.records->push_back(rec);
    const double rel = rec.ok() ? std::abs(rec.value - 1.0) : 1.0;
    worst_rel = std::max(worst_rel, rel);
    if (rel > 1e-3) {
      c.pass = false;
      worst += " oracle(" + brief(delta) + ")=" + (rec.ok() ? brief(rec.value) : rec.error_tag);
    }
    try {
      const DiscSpec d4 = construct(CatalogId::D4, psi, delta, x, oc.catalog);
      if (!d4.report || !d4.report->ok()) {
        c.pass = false;
        worst += " D4 unverified at " + brief(delta);
      }
    } catch (const std::exception& e) {
      c.pass = false;
      worst += " D4 failed at " + brief(delta) + ": " + e.what();
    }
  }
  c.detail = "max |oracle/|x_T| - 1| = " + brief(worst_rel) + worst;
  return c;
}

CriterionResult sandwich(const SuiteContext& ctx) {
  CriterionResult c{2, "sandwich", true, "", 0.0};
  const std::vector<double> betas{0.4, 0.5, 0.75, 1.0, 1.5, 2.0};
  const std::vector<double> deltas{1e-1, 1e-2, 1e-3, 1e-4};
  std::vector<Direction> dirs;
  for (int k = 0; k < 8; ++k) {
    const double th = (std::numbers::pi / 2.0) * k / 7.0;
    const Complex phase = std::polar(1.0, std::numbers::pi * k / 4.0);
    dirs.push_back({Complex(std::cos(th), 0.0), k == 7 ? phase : std::sin(th) * phase});
  }

  struct Cell {
    std::vector<SweepRecord> recs;
    std::size_t built = 0;
    std::vector<std::string> problems;
  };
  const std::size_t n = betas.size() * deltas.size() * dirs.size();
  std::vector<Cell> cells(n);
  numeric::parallel_for(n, [&](std::size_t i) {
    const double beta = betas[i / (deltas.size() * dirs.size())];
    const double delta = deltas[(i / dirs.size()) % deltas.size()];
    const Direction& x = dirs[i % dirs.size()];
    const PsiProfile psi = PsiProfile::power(beta);
    const OracleConfig oc = ctx.oracle(1000 + i);
    Cell& cell = cells[i];
    const std::string where =
        "beta=" + brief(beta) + " delta=" + brief(delta) + " dir=" + std::to_string(i % dirs.size());

    std::optional<double> best;
    for (const auto& e : catalog_sweep(psi, delta, x, oc.catalog)) {
      if (!e.in_regime) continue;
      ++cell.built;
      if (!e.error.empty() || !e.disc || !e.disc->report || !e.disc->report->ok() ||
          e.disc->report->n_samples < 10000) {
        cell.problems.push_back(std::string(to_string(e.id)) + " inadmissible at " + where);
        continue;
      }
      if (!best || *e.upper < *best) best = e.upper;
    }
    const auto sib = evaluate(psi, delta, x, Estimator::sibony, oc, ctx.options.timing);
    const auto sch = evaluate(psi, delta, x, Estimator::schwarz, oc, ctx.options.timing);
    const auto orc = evaluate(psi, delta, x, Estimator::oracle, oc, ctx.options.timing);
    cell.recs = {sib, sch, orc};
    if (!sib.ok() || !sch.ok() || !orc.ok()) {
      cell.problems.push_back("estimator error at " + where);
      return;
    }
    const double lower = std::max(sch.value, sib.value);
    if (!numeric::leq_rel(sib.value, lower) || !numeric::leq_rel(lower, orc.value, 1e-9)) {
      cell.problems.push_back("lower " + brief(lower) + " > oracle " + brief(orc.value) + " at " +
                              where);
    }
    if (best && !numeric::leq_rel(orc.value, *best, 1e-9)) {
      cell.problems.push_back("oracle " + brief(orc.value) + " > catalog " + brief(*best) +
                              " at " + where);
    }
  });

  std::size_t built = 0;
  std::size_t violations = 0;
  std::string first;
  for (auto& cell : cells) {
    built += cell.built;
    violations += cell.problems.size();
    if (first.empty() && !cell.problems.empty()) first = cell.problems.front();
    ctx.records->insert(ctx.records->end(), cell.recs.begin(), cell.recs.end());
  }
  c.pass = violations == 0;
  c.detail = std::to_string(n) + " cells, " + std::to_string(built) + " catalog discs, " +
             std::to_string(violations) + " violations";
  if (!first.empty()) c.detail += "; first: " + first;
  return c;
}

CriterionResult normal_rate(const SuiteContext& ctx) {
  CriterionResult c{3, "normal-rate", true, "", 0.0};
  auto recs = ctx.run(ctx.base(PsiProfile::power(2.0), {Estimator::oracle, Estimator::schwarz}, 3));
  double su = 0.0, sl = 0.0;
  const bool ou = slope_near(only(recs, Estimator::oracle), -0.75, 0.05, &su);
  const bool ol = slope_near(only(recs, Estimator::schwarz), -0.75, 0.05, &sl);
  c.pass = ou && ol && failures(recs) == 0;
  c.detail = "slope oracle " + brief(su) + ", schwarz " + brief(sl) + " (target -0.75 +- 0.05)";
  return c;
}

CriterionResult linear_rate(const SuiteContext& ctx) {
  CriterionResult c{4, "linear-rate", true, "", 0.0};
  auto recs = ctx.run(ctx.base(PsiProfile::linear(1.0),
                               {Estimator::oracle, Estimator::main2_lower, Estimator::schwarz}, 4));
  double su = 0.0, sl = 0.0;
  const bool ou = slope_near(only(recs, Estimator::oracle), -0.5, 0.05, &su);
  const bool ol = slope_near(only(recs, Estimator::main2_lower), -0.5, 0.05, &sl);
  std::size_t below = 0;
  for (const auto& r : only(recs, Estimator::schwarz)) {
    if (!r.ok() || !(r.value >= 0.2 / std::sqrt(r.delta))) ++below;
  }
  c.pass = ou && ol && below == 0 && failures(recs) == 0;
  c.detail = "slope oracle " + brief(su) + ", explicit lower " + brief(sl) +
             " (target -0.5 +- 0.05); points with kappa_lower < 0.2/sqrt(delta): " +
             std::to_string(below);
  return c;
}

CriterionResult interpolation(const SuiteContext& ctx) {
  CriterionResult c{5, "interpolation", true, "", 0.0};
  const PsiProfile psi = PsiProfile::power(0.75);
  std::string detail;
  int stream = 50;
  for (const auto& [gamma, target] : {std::pair{1.0 / 6.0, -1.0 / 6.0}, std::pair{0.5, -1.0 / 3.0}}) {
    SweepConfig cfg = ctx.base(psi, {Estimator::f3, Estimator::oracle}, stream++);
    cfg.direction.gamma = gamma;
    cfg.deltas = delta_grid(1e-14, 1e-8, 16);
    auto recs = ctx.run(cfg);
    double sf = 0.0, so = 0.0;
    const bool of = slope_near(only(recs, Estimator::f3), target, 0.05, &sf);
    const bool oo = slope_near(only(recs, Estimator::oracle), target, 0.05, &so);
    c.pass = c.pass && of && oo && failures(recs) == 0;
    detail += "gamma=" + brief(gamma) + ": F3 " + brief(sf) + ", oracle " + brief(so) +
              " (target " + brief(target) + "); ";
  }
  // Reference only: on [1e-4, 1e-1] the γ = 1/6 family is still pre-asymptotic.
  SweepConfig ref = ctx.base(psi, {Estimator::f3, Estimator::oracle}, stream);
  ref.direction.gamma = 1.0 / 6.0;
  const auto rr = sweep(ref);
  double rf = 0.0, ro = 0.0;
  slope_near(only(rr, Estimator::f3), 0.0, 1.0, &rf);
  slope_near(only(rr, Estimator::oracle), 0.0, 1.0, &ro);
  detail += "info gamma=1/6 on [1e-4,1e-1]: F3 " + brief(rf) + ", oracle " + brief(ro);
  c.detail = detail;
  return c;
}

CriterionResult theorem1(const SuiteContext& ctx) {
  CriterionResult c{6, "theorem1", true, "", 0.0};
  SweepConfig cfg = ctx.base(PsiProfile::power(2.0), {Estimator::sibony, Estimator::kappa2}, 6);
  cfg.oracle.n_restarts = 4;
  auto recs = ctx.run(cfg);
  const auto sib = only(recs, Estimator::sibony);
  const auto k2 = only(recs, Estimator::kappa2);
  std::size_t bad = 0;
  double worst_ratio = 0.0;
  for (std::size_t i = 0; i < sib.size(); ++i) {
    const double delta = sib[i].delta;
    const double scale = std::sqrt(delta) / delta;
    if (!sib[i].ok() || !k2[i].ok()) {
      ++bad;
      continue;
    }
    if (!(sib[i].value >= scale / 4.0)) ++bad;
    if (!numeric::leq_rel(k2[i].value, 2.0 * scale + k2[i].xt)) ++bad;
    worst_ratio = std::max(worst_ratio, k2[i].value / sib[i].value);
  }
  c.pass = bad == 0 && worst_ratio <= 10.0;
  c.detail = std::to_string(bad) + " bound failures; max kappa2/sibony = " + brief(worst_ratio);
  return c;
}

CriterionResult sibony_validity(const SuiteContext& ctx) {
  CriterionResult c{7, "sibony", true, "", 0.0};
  std::string detail;
  double worst_levi = 0.0;
  std::size_t viol = 0;
  double umin = 1.0, umax = 0.0;
  for (double beta : {0.75, 2.0}) {
    for (double delta : {1e-2, 1e-3}) {
      const PsiProfile psi = PsiProfile::power(beta);
      const SibonyCandidate cand = build(psi, delta);
      const URange u = sample_u_range(cand, 10000, ctx.options.seed);
      umin = std::min(umin, u.min);
      umax = std::max(umax, u.max);
      const LogPshReport rep = check_logpsh(cand, 1000, 8, ctx.options.seed, 1e-6);
      viol += rep.n_violations;
      const Point p{Complex(-delta, 0.0), Complex{}};
      const LeviValue lv = levi_form(cand, p, {Complex(1.0, 0.0), Complex{}});
      const double expected = cand.C2() / (4.0 * delta * delta);
      worst_levi = std::max(worst_levi, std::abs(lv.value / expected - 1.0));
      ctx.records->push_back(evaluate(psi, delta, {Complex(1.0, 0.0), Complex{}},
                                      Estimator::sibony, OracleConfig{}, ctx.options.timing));
    }
  }
  c.pass = umin >= 0.0 && umax <= 1.0 && viol == 0 && worst_levi <= 1e-3;
  c.detail = "u in [" + brief(umin) + ", " + brief(umax) + "], sub-mean violations " +
             std::to_string(viol) + ", max levi relative error " + brief(worst_levi);
  return c;
}

CriterionResult thin_cusp(const SuiteContext& ctx) {
  CriterionResult c{8, "thin-cusp", true, "", 0.0};
  auto recs = ctx.run(ctx.base(PsiProfile::power(0.4), {Estimator::oracle}, 8));
  const double cap = thin_cusp_constant(1.0, BasePoint::kDefaultDelta0);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& r : recs) {
    if (!r.ok()) continue;
    lo = std::min(lo, r.value);
    hi = std::max(hi, r.value);
  }
  double s = 0.0;
  const bool slope_ok = slope_near(recs, 0.0, 0.05, &s);
  c.pass = slope_ok && failures(recs) == 0 && lo >= 1.0 && hi <= cap;
  c.detail = "oracle in [" + brief(lo) + ", " + brief(hi) + "] vs [1, " + brief(cap) +
             "], slope " + brief(s);
  return c;
}

using SuiteFn = CriterionResult (*)(const SuiteContext&);

struct Suite {
  const char* name;
  SuiteFn fn;
};

constexpr Suite kSuites[] = {
    {"tangent-exact", &tangent_exact}, {"sandwich", &sandwich},
    {"normal-rate", &normal_rate},     {"linear-rate", &linear_rate},
    {"interpolation", &interpolation}, {"theorem1", &theorem1},
    {"sibony", &sibony_validity},      {"thin-cusp", &thin_cusp},
};

CriterionResult run_suite(const Suite& s, const AcceptOptions& opt,
                          std::vector<SweepRecord>& records) {
  SuiteContext ctx{opt, &records};
  const auto t0 = Clock::now();
  CriterionResult r = s.fn(ctx);
  r.seconds = elapsed(t0);
  return r;
}

std::vector<SweepRecord> records_of_all(const AcceptOptions& opt,
                                        std::vector<CriterionResult>* results) {
  std::vector<SweepRecord> records;
  for (const auto& s : kSuites) {
    CriterionResult r = run_suite(s, opt, records);
    if (results) results->push_back(std::move(r));
  }
  return records;
}

void apply_limits(CriterionResult& r) {
  double limit = 0.0;
  if (r.id == 1) limit = 10.0;
  if (r.id == 2) limit = 300.0;
  if (r.id == 7) limit = 30.0;
  if (limit > 0.0 && r.seconds >= limit) {
    r.pass = false;
    r.detail += "; runtime " + brief(r.seconds) + " s exceeds " + brief(limit) + " s";
  }
}

CriterionResult determinism(const AcceptOptions& opt, const std::string& reference) {
  CriterionResult c{9, "determinism", true, "", 0.0};
  const auto t0 = Clock::now();
  AcceptOptions quiet = opt;
  quiet.timing = false;
  const std::string again = to_csv(records_of_all(quiet, nullptr));
  c.seconds = elapsed(t0);
  c.pass = again == reference;
  c.detail = c.pass ? "repeat run CSV byte-identical (" + std::to_string(again.size()) + " bytes)"
                    : "repeat run CSV differs";
  return c;
}

}  // namespace

bool AcceptReport::pass() const {
  return !criteria.empty() &&
         std::all_of(criteria.begin(), criteria.end(), [](const auto& c) { return c.pass; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& s : kSuites) v.emplace_back(s.name);
    v.emplace_back("determinism");
    v.emplace_back("all");
    return v;
  }();
  return names;
}

AcceptReport accept(std::string_view suite, const AcceptOptions& options) {
  AcceptReport report;
  if (suite == "all" || suite == "determinism") {
    AcceptOptions quiet = options;
    quiet.timing = false;
    std::vector<CriterionResult> results;
    auto records = records_of_all(quiet, &results);
    const std::string reference = to_csv(records);
    if (suite == "all") {
      for (auto& r : results) apply_limits(r);
      report.criteria = std::move(results);
    }
    report.criteria.push_back(determinism(options, reference));
    report.records = std::move(records);
    return report;
  }
  for (const auto& s : kSuites) {
    if (suite == s.name) {
      CriterionResult r = run_suite(s, options, report.records);
      apply_limits(r);
      report.criteria.push_back(std::move(r));
      return report;
    }
  }
  throw DomainError("unknown acceptance suite '" + std::string(suite) + "'");
}

std::string format_report(const AcceptReport& report) {
  std::string out;
  for (const auto& c : report.criteria) {
    char head[128];
    std::snprintf(head, sizeof head, "[%s] %d %s (%.1f s): ", c.pass ? "PASS" : "FAIL", c.id,
                  c.name.c_str(), c.seconds);
    out += head + c.detail + '\n';
  }
  return out;
}

}  // namespace invmet
