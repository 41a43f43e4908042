#include "invmet/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "invmet/closed_bounds.hpp"
#include "invmet/discs.hpp"
#include "invmet/errors.hpp"
#include "invmet/experiments.hpp"
#include "invmet/oracle.hpp"
#include "invmet/schwarz.hpp"
#include "invmet/sibony.hpp"

namespace invmet::cli {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string complex_str(Complex z) {
  if (z.imag() == 0.0) return num(z.real());
  return "(" + num(z.real()) + (z.imag() < 0 ? " - " : " + ") + num(std::abs(z.imag())) + "i)";
}

struct Common {
  std::string profile = "power:2";
  double delta = 0.01;
  double xn = 1.0;
  double xt = 0.0;
  double delta0 = BasePoint::kDefaultDelta0;
  std::string out;
  std::string config;
  std::uint64_t seed = 42;
};

void add_common(CLI::App* sub, Common& c, bool with_direction = true) {
  sub->add_option("--profile", c.profile, "power:BETA or linear:C0")->capture_default_str();
  sub->add_option("--delta", c.delta, "distance of the base point p = (-delta, 0)")
      ->capture_default_str();
  if (with_direction) {
    sub->add_option("--xn", c.xn, "normal component of X")->capture_default_str();
    sub->add_option("--xt", c.xt, "tangential component of X")->capture_default_str();
  }
  sub->add_option("--delta0", c.delta0, "upper end of the admissible delta range")
      ->capture_default_str();
  sub->add_option("--config", c.config, "key=value file; flags on the command line win");
}

void add_out(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out, "write records as CSV to FILE");
}

void add_seed(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
}

/// Prints "# key = value" for every option of the selected subcommand.
void echo_config(const CLI::App* sub, std::ostream& out) {
  out << "# invmet " << sub->get_name() << '\n';
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help") continue;
    std::string value;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      if (opt->get_items_expected_max() > 1) {
        for (std::size_t i = 0; i < res.size(); ++i) value += (i ? "," : "") + res[i];
      } else {
        value = res.back();
      }
      if (opt->get_type_size() == 0) value = "true";
    } else {
      value = opt->get_default_str();
      if (opt->get_type_size() == 0 && value.empty()) value = "false";
    }
    out << "# " << name << " = " << value << '\n';
  }
  out << "#\n";
}

void write_records(const std::string& path, const std::vector<SweepRecord>& recs,
                   std::ostream& out) {
  if (path.empty()) return;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_csv(f, recs);
  out << "wrote " << recs.size() << " records to " << path << '\n';
}

Direction direction_of(const Common& c) {
  Direction x{Complex(c.xn, 0.0), Complex(c.xt, 0.0)};
  if (x.is_zero()) throw DomainError("direction X must be nonzero");
  return x;
}

void check_delta(const Common& c) {
  BasePoint bp(c.delta, c.delta0);
  (void)bp;
}

std::string bound_line(const BoundResult& r) {
  std::string s = "regime=" + r.regime;
  s += " lower=" + (r.lower ? num(*r.lower) : std::string("n/a"));
  if (r.lower && !r.lower_constant_known) s += "(shape)";
  s += " upper=" + (r.upper ? num(*r.upper) : std::string("n/a"));
  if (r.upper && !r.upper_constant_known) s += "(shape)";
  if (!r.source.empty()) s += " source=" + r.source;
  return s;
}

template <class F>
void try_line(std::ostream& out, const char* label, F&& fn) {
  try {
    out << label << ": " << fn() << '\n';
  } catch (const std::exception& e) {
    out << label << ": n/a (" << e.what() << ")\n";
  }
}

int run_bounds(const Common& c, std::ostream& out) {
  const PsiProfile psi = PsiProfile::parse(c.profile);
  check_delta(c);
  const Direction x = direction_of(c);
  const double t = tangent_ratio(x);

  try_line(out, "comparison_quantity", [&] { return num(theorem1_quantity(psi, c.delta, x)); });
  if (psi.kind() == PsiProfile::Kind::power) {
    try_line(out, "power_regime",
             [&] { return bound_line(power_regime(psi.parameter(), c.delta, x, c.delta0)); });
  }
  try_line(out, "normal_bounds", [&] { return bound_line(main3_bounds(psi, c.delta, x)); });
  try_line(out, "normal_lower_explicit", [&] {
    const BoundResult r = main3_bounds(psi, c.delta, x);
    return num(*r.lower);
  });
  try_line(out, "tangent_bounds", [&] { return bound_line(tangent_bounds(psi, c.delta, x)); });
  try_line(out, "linear_quantity", [&] { return num(main2_quantity(c.delta, x)); });
  try_line(out, "F2", [&] { return num(F2(psi, c.delta, t)); });
  try_line(out, "F3", [&] { return num(F3(psi, c.delta, t)); });
  try_line(out, "regime_classify",
           [&] { return std::string(to_string(regime_classify(psi, c.delta, t))); });
  try_line(out, "schwarz_lower", [&] {
    const LowerBound lb = kappa_lower_detail(psi, c.delta, x);
    return num(lb.value) + " regime=" + lb.regime;
  });
  try_line(out, "sibony_lower", [&] { return num(sibony_lower(psi, c.delta, x)); });
  CatalogOptions co;
  co.delta0 = c.delta0;
  for (const auto& e : catalog_sweep(psi, c.delta, x, co)) {
    if (!e.in_regime) continue;
    out << "catalog " << to_string(e.id) << ": "
        << (e.upper ? "upper=" + num(*e.upper) : "failed (" + e.error + ")") << '\n';
  }

  if (!c.out.empty()) {
    OracleConfig oc;
    oc.delta0 = c.delta0;
    oc.catalog.delta0 = c.delta0;
    std::vector<SweepRecord> recs;
    for (Estimator e : {Estimator::theorem1, Estimator::closed_form, Estimator::f3,
                        Estimator::schwarz, Estimator::sibony, Estimator::catalog}) {
      recs.push_back(evaluate(psi, c.delta, x, e, oc));
    }
    write_records(c.out, recs, out);
  }
  return kExitOk;
}

struct DiscArgs {
  std::string action = "verify";
  std::string id = "D6";
  std::size_t angles = 256;
  std::size_t radii = 64;
  double d6_scale = 1.0;
};

int run_disc(const Common& c, const DiscArgs& d, std::ostream& out, std::ostream& err) {
  const PsiProfile psi = PsiProfile::parse(c.profile);
  check_delta(c);
  const Direction x = direction_of(c);
  CatalogOptions co;
  co.delta0 = c.delta0;
  co.n_angles = d.angles;
  co.n_radii = d.radii;
  co.d6_coefficient_scale = d.d6_scale;
  const CatalogId id = parse_catalog_id(d.id);
  try {
    const DiscSpec disc = construct(id, psi, c.delta, x, co);
    out << "source: " << disc.source << '\n';
    for (std::size_t k = 0; k < disc.p1.size(); ++k) {
      out << "p1[" << k << "] = " << complex_str(disc.p1[k]) << '\n';
    }
    for (std::size_t k = 0; k < disc.p2.size(); ++k) {
      out << "p2[" << k << "] = " << complex_str(disc.p2[k]) << '\n';
    }
    out << "nominal_radius: " << num(disc.nominal_radius) << '\n';
    out << "samples: " << disc.report->n_samples << '\n';
    out << "worst_margin: " << num(disc.report->worst_margin) << " at zeta = "
        << complex_str(disc.report->worst_zeta) << '\n';
    out << "implied_upper: " << num(implied_upper(disc, x)) << '\n';
  } catch (const ConstructionError& e) {
    err << "construction failed: " << e.what() << " (witness zeta = " << num(e.zeta_re()) << " + "
        << num(e.zeta_im()) << "i, " << e.reason() << ")\n";
    return kExitFailure;
  }
  return kExitOk;
}

struct SibonyArgs {
  std::size_t centers = 1000;
  std::size_t radii = 8;
  std::optional<double> c3;
};

int run_sibony(const Common& c, const SibonyArgs& s, std::ostream& out) {
  const PsiProfile psi = PsiProfile::parse(c.profile);
  check_delta(c);
  const Direction x = direction_of(c);
  const SibonyCandidate cand = build(psi, c.delta, s.c3);
  out << "C1: " << num(cand.C1()) << '\n';
  out << "C2: " << num(cand.C2()) << '\n';
  out << "C3: " << num(cand.C3()) << '\n';
  out << "C4: " << num(cand.C4()) << '\n';
  out << "closed_form_normal_bound: " << num(psi.inverse(c.delta / 2.0) / (2.0 * c.delta)) << '\n';
  out << "sibony_lower: " << num(sibony_lower(psi, c.delta, x)) << '\n';
  const Point p{Complex(-c.delta, 0.0), Complex{}};
  try {
    const LeviValue lv = levi_form(cand, p, x);
    out << "levi_potential: " << num(lv.value) << " (step " << num(lv.h_step)
        << ", halving discrepancy " << num(lv.discrepancy) << ")\n";
    if (lv.u_value) {
      out << "levi_u: " << num(*lv.u_value) << " (ratio " << num(*lv.u_value / lv.value)
          << ", exp(-C4) = " << num(std::exp(-cand.C4())) << "; not reconciled)\n";
    } else {
      out << "levi_u: n/a (max switch within 10 steps)\n";
    }
  } catch (const EvaluationError& e) {
    out << "levi_potential: n/a (" << e.what() << ")\n";
  }
  const LogPshReport rep = check_logpsh(cand, s.centers, s.radii, c.seed);
  out << "logpsh_checks: " << rep.n_checks << '\n';
  out << "logpsh_violations: " << rep.n_violations << " (tolerance " << num(rep.tolerance)
      << ")\n";
  out << "logpsh_worst_slack: " << num(rep.worst_slack) << '\n';
  return kExitOk;
}

struct OracleArgs {
  int degree = 2;
  int restarts = 16;
  int budget = 20000;
  bool kappa2 = false;
  int slice = 0;
};

int run_oracle(const Common& c, const OracleArgs& o, std::ostream& out) {
  const PsiProfile psi = PsiProfile::parse(c.profile);
  check_delta(c);
  const Direction x = direction_of(c);
  OracleConfig oc;
  oc.degree = o.degree;
  oc.n_restarts = o.restarts;
  oc.budget = o.budget;
  oc.seed = c.seed;
  oc.delta0 = c.delta0;
  oc.catalog.delta0 = c.delta0;
  oc.validate();
  const ModelDomain dom(psi);
  const OracleEstimate est = kappa_upper_numeric(dom, c.delta, x, oc);
  out << "value: " << num(est.value) << '\n';
  out << "bracket: [" << num(est.schwarz_lower) << ", "
      << (est.closed_form_upper ? num(*est.closed_form_upper) : std::string("n/a")) << "]\n";
  out << "origin: " << est.origin << '\n';
  out << "evaluations: " << est.evaluations << '\n';
  for (std::size_t k = 0; k < est.best_disc.p1.size(); ++k) {
    out << "p1[" << k << "] = " << complex_str(est.best_disc.p1[k]) << '\n';
  }
  for (std::size_t k = 0; k < est.best_disc.p2.size(); ++k) {
    out << "p2[" << k << "] = " << complex_str(est.best_disc.p2[k]) << '\n';
  }
  out << "nominal_radius: " << num(est.best_disc.nominal_radius) << '\n';
  std::vector<SweepRecord> recs{evaluate(psi, c.delta, x, Estimator::oracle, oc)};
  if (o.kappa2) {
    const SplitEstimate s = kappa2_split(dom, c.delta, x, oc);
    out << "kappa2: " << num(s.value) << " = " << num(s.v1) << " + " << num(s.v2) << " at X1 = ("
        << complex_str(s.x1.xn) << ", " << complex_str(s.x1.xt) << ")\n";
    recs.push_back(evaluate(psi, c.delta, x, Estimator::kappa2, oc));
  }
  if (o.slice > 0) {
    out << "indicatrix (theta, radius):\n";
    for (const auto& [th, r] : indicatrix_slice(dom, c.delta, o.slice, oc)) {
      out << "  " << num(th) << ' ' << num(r) << '\n';
    }
  }
  write_records(c.out, recs, out);
  return kExitOk;
}

struct SweepArgs {
  std::string deltas = "1e-4:1e-1:16";
  std::optional<double> gamma;
  std::string estimators = "closed_form";
  bool timing = false;
  int degree = 2;
};

std::vector<double> parse_deltas(const std::string& spec) {
  std::vector<std::string> parts;
  std::string cur;
  const char sep = spec.find(':') != std::string::npos ? ':' : ',';
  std::stringstream ss(spec);
  while (std::getline(ss, cur, sep)) parts.push_back(cur);
  auto to_d = [](const std::string& s) {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw DomainError("bad number '" + s + "' in delta grid");
    return v;
  };
  try {
    if (sep == ':') {
      if (parts.size() != 3) throw DomainError("delta grid must be LO:HI:N or a comma list");
      const int n = std::stoi(parts[2]);
      if (n < 1) throw DomainError("delta grid needs N >= 1");
      return delta_grid(to_d(parts[0]), to_d(parts[1]), static_cast<std::size_t>(n));
    }
    std::vector<double> v;
    for (const auto& p : parts) v.push_back(to_d(p));
    return v;
  } catch (const std::invalid_argument&) {
    throw DomainError("malformed delta grid '" + spec + "'");
  }
}

int run_sweep(const Common& c, const SweepArgs& s, std::ostream& out) {
  SweepConfig cfg;
  cfg.profile = PsiProfile::parse(c.profile);
  cfg.deltas = parse_deltas(s.deltas);
  cfg.direction.fixed = direction_of(c);
  cfg.direction.gamma = s.gamma;
  cfg.estimators.clear();
  std::stringstream ss(s.estimators);
  std::string name;
  while (std::getline(ss, name, ',')) cfg.estimators.push_back(parse_estimator(name));
  cfg.seed = c.seed;
  cfg.delta0 = c.delta0;
  cfg.timing = s.timing;
  cfg.oracle.degree = s.degree;
  const auto recs = sweep(cfg);
  if (c.out.empty()) {
    write_csv(out, recs);
  } else {
    write_records(c.out, recs, out);
  }
  return kExitOk;
}

struct FitArgs {
  std::string in;
  std::string estimator;
};

int run_fit(const FitArgs& f, std::ostream& out) {
  std::ifstream is(f.in, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open '" + f.in + "'");
  auto recs = read_csv(is);
  if (!f.estimator.empty()) {
    const Estimator e = parse_estimator(f.estimator);
    std::erase_if(recs, [e](const SweepRecord& r) { return r.estimator != e; });
  }
  const FitResult fit = fit_loglog(recs);
  out << "slope: " << num(fit.slope) << '\n';
  out << "intercept: " << num(fit.intercept) << '\n';
  out << "max_residual: " << num(fit.max_residual) << '\n';
  out << "n_points: " << fit.n_points << '\n';
  out << "dropped_largest_delta: " << (fit.dropped_largest_delta ? "yes" : "no") << '\n';
  return kExitOk;
}

struct AcceptArgs {
  std::string suite = "all";
  bool timing = false;
  double d6_scale = 1.0;
};

int run_accept(const Common& c, const AcceptArgs& a, std::ostream& out) {
  AcceptOptions opt;
  opt.seed = c.seed;
  opt.timing = a.timing;
  opt.d6_coefficient_scale = a.d6_scale;
  const AcceptReport rep = accept(a.suite, opt);
  out << format_report(rep);
  write_records(c.out, rep.records, out);
  out << (rep.pass() ? "ALL PASS" : "FAILURES PRESENT") << '\n';
  return rep.pass() ? kExitOk : kExitFailure;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw CLI::ValidationError("--config", "cannot open '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw CLI::ValidationError("--config", "line without '=': " + line);
    }
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

/// Config-file pairs become flags placed before the user's flags, so the latter take precedence.
std::vector<std::string> with_config(const CLI::App& app, const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] == "--config") path = args[i + 1];
  }
  for (const auto& a : args) {
    if (a.rfind("--config=", 0) == 0) path = a.substr(9);
  }
  if (path.empty() || args.empty()) return args;
  const CLI::App* sub = nullptr;
  try {
    sub = app.get_subcommand(args.front());
  } catch (const CLI::OptionNotFound&) {
    return args;
  }
  std::vector<std::string> merged{args.front()};
  for (const auto& [key, value] : read_config_file(path)) {
    const CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (!opt || key == "config") {
      throw CLI::ExtrasError("unknown config key '" + key + "'", CLI::ExitCodes::ExtrasError);
    }
    if (opt->get_type_size() == 0) {
      if (value == "true" || value == "1") merged.push_back("--" + key);
    } else {
      merged.push_back("--" + key);
      merged.push_back(value);
    }
  }
  merged.insert(merged.end(), args.begin() + 1, args.end());
  return merged;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical estimates of invariant metrics on the model domains G_psi", "invmet"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.footer("Environment: INVMET_THREADS caps worker threads.\n"
             "Exit codes: 0 success, 1 failure, 2 usage or invalid input, 3 regime error.");

  Common common;
  DiscArgs disc_args;
  SibonyArgs sib_args;
  OracleArgs oracle_args;
  SweepArgs sweep_args;
  FitArgs fit_args;
  AcceptArgs accept_args;

  auto* bounds = app.add_subcommand("bounds", "closed-form and certified bounds at one point");
  add_common(bounds, common);
  add_out(bounds, common);

  auto* disc = app.add_subcommand("disc", "construct and verify a catalog disc");
  add_common(disc, common);
  disc->add_option("action", disc_args.action, "what to do with the disc")
      ->check(CLI::IsMember({"verify"}))
      ->capture_default_str();
  disc->add_option("--id,--catalog", disc_args.id, "catalog id D1..D10")->capture_default_str();
  disc->add_option("--angles", disc_args.angles, "verification angles")->capture_default_str();
  disc->add_option("--radii", disc_args.radii, "verification radii")->capture_default_str();
  disc->add_option("--d6-scale", disc_args.d6_scale, "fault injection for D6")
      ->capture_default_str();

  auto* sib = app.add_subcommand("sibony", "plurisubharmonic candidate and its checks");
  add_common(sib, common);
  add_seed(sib, common);
  sib->add_option("--centers", sib_args.centers, "sub-mean test centers")->capture_default_str();
  sib->add_option("--radii", sib_args.radii, "circles per center")->capture_default_str();
  sib->add_option("--c3", sib_args.c3, "override the constant C3");

  auto* orc = app.add_subcommand("oracle", "numerical upper estimate of the metric");
  add_common(orc, common);
  add_seed(orc, common);
  add_out(orc, common);
  orc->add_option("--degree", oracle_args.degree, "polynomial degree 2..4")->capture_default_str();
  orc->add_option("--restarts", oracle_args.restarts, "search restarts")->capture_default_str();
  orc->add_option("--budget", oracle_args.budget, "evaluation budget")->capture_default_str();
  orc->add_flag("--kappa2", oracle_args.kappa2, "also estimate the two-way splitting metric");
  orc->add_option("--slice", oracle_args.slice, "indicatrix slice with N angles")
      ->capture_default_str();

  auto* swp = app.add_subcommand("sweep", "delta sweep writing CSV records");
  add_common(swp, common);
  add_seed(swp, common);
  add_out(swp, common);
  swp->add_option("--deltas", sweep_args.deltas, "LO:HI:N (geometric) or a comma list")
      ->capture_default_str();
  swp->add_option("--gamma", sweep_args.gamma, "use X(delta) = (1, delta^gamma)");
  swp->add_option("--estimators", sweep_args.estimators,
                  "comma list of closed_form, theorem1, f3, main2, main2_lower, schwarz, "
                  "sibony, catalog, oracle, kappa2")
      ->capture_default_str();
  swp->add_option("--degree", sweep_args.degree, "oracle polynomial degree")->capture_default_str();
  swp->add_flag("--timing", sweep_args.timing, "fill the seconds column");

  auto* fit = app.add_subcommand("fit", "log-log slope of CSV records");
  fit->add_option("--in", fit_args.in, "CSV file written by sweep")->required();
  fit->add_option("--estimator", fit_args.estimator, "only records of this estimator");
  fit->add_option("--config", common.config, "key=value file; flags on the command line win");

  auto* acc = app.add_subcommand("accept", "acceptance suites");
  acc->add_option("--suite", accept_args.suite, "suite id or 'all'")
      ->capture_default_str()
      ->check(CLI::IsMember(suite_names()));
  add_seed(acc, common);
  add_out(acc, common);
  acc->add_flag("--timing", accept_args.timing, "report wall time");
  acc->add_option("--d6-scale", accept_args.d6_scale, "fault injection for D6")
      ->capture_default_str();
  acc->add_option("--config", common.config, "key=value file; flags on the command line win");

  try {
    std::vector<std::string> merged = with_config(app, args);
    std::reverse(merged.begin(), merged.end());
    app.parse(merged);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  echo_config(chosen, out);
  try {
    if (chosen == bounds) return run_bounds(common, out);
    if (chosen == disc) return run_disc(common, disc_args, out, err);
    if (chosen == sib) return run_sibony(common, sib_args, out);
    if (chosen == orc) return run_oracle(common, oracle_args, out);
    if (chosen == swp) return run_sweep(common, sweep_args, out);
    if (chosen == fit) return run_fit(fit_args, out);
    if (chosen == acc) return run_accept(common, accept_args, out);
  } catch (const RegimeError& e) {
    err << "regime error: " << e.what() << '\n';
    return kExitRegime;
  } catch (const CertificationError& e) {
    err << "regime error: " << e.what() << '\n';
    return kExitRegime;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

int dispatch(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dispatch(args, std::cout, std::cerr);
}

}  // namespace invmet::cli
