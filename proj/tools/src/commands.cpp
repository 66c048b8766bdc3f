#include "commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ingest.hpp"
#include "maxstab/bootstrap.hpp"
#include "maxstab/fisher_info.hpp"

namespace maxstab::cli {

using nlohmann::json;

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> parse_reals(const std::string& s, const char* what) {
  std::vector<double> out;
  for (const auto& item : split_list(s)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError(std::string("bad number '") + item + "' in " + what);
    }
  }
  if (out.empty()) throw InputError(std::string("empty list for ") + what);
  return out;
}

std::vector<AltKind> parse_alts(const std::string& s) {
  if (s == "all") return {AltKind::A1, AltKind::A2, AltKind::A3};
  std::vector<AltKind> out;
  for (const auto& item : split_list(s)) out.push_back(parse_alt(item));
  if (out.empty()) throw InputError("no alternative given");
  return out;
}

struct Context {
  RunConfig cfg;
  IngestOptions ingest;
  std::string window;
  std::ostream* out = nullptr;

  [[nodiscard]] DataTreatment treatment() const { return {cfg.delta, cfg.u}; }

  void validate_common() const {
    if (!(cfg.delta >= 0.0)) throw InputError("--round must be non-negative");
    if (!(cfg.level > 0.0 && cfg.level < 1.0)) throw InputError("--level must lie in (0, 1)");
    if (cfg.m < 1) throw InputError("--block-length must be at least 1");
  }

  [[nodiscard]] Series load() {
    if (cfg.input.empty()) throw InputError("no input file given");
    IngestOptions opts = ingest;
    if (!window.empty()) opts.window = parse_window(window);
    Series s = cli::ingest(cfg.input, opts);
    const std::vector<double> all = s.flat();
    if (cfg.u > -kInf && !(cfg.u < *std::max_element(all.begin(), all.end()))) {
      throw InputError("--censor must lie below the largest observation");
    }
    return s;
  }

  // Writes the JSON report, and the CSV table to --csv or into the report.
  void emit(json report, const std::string& csv_header, const std::vector<std::string>& csv_rows) {
    json j{{"config", to_json(cfg)}};
    j.update(report);
    if (!csv_header.empty()) {
      if (!cfg.csv.empty()) {
        std::ofstream f(cfg.csv);
        if (!f) throw InputError("cannot write '" + cfg.csv + "'");
        f << "# config: " << to_json(cfg).dump() << '\n' << csv_header << '\n';
        for (const auto& r : csv_rows) f << r << '\n';
        j["csv"] = cfg.csv;
      } else {
        j["table"] = {{"header", csv_header}, {"rows", csv_rows}};
      }
    }
    if (cfg.output.empty()) {
      *out << j.dump(2) << '\n';
    } else {
      std::ofstream f(cfg.output);
      if (!f) throw InputError("cannot write '" + cfg.output + "'");
      f << j.dump(2) << '\n';
    }
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

void add_input_options(CLI::App* sub, Context& ctx) {
  sub->add_option("input", ctx.cfg.input, "Series file (csv with optional date column, or whitespace-separated numbers)");
  sub->add_option("--format", ctx.ingest.format, "auto, csv or plain");
  sub->add_option("--column", ctx.ingest.column, "CSV value column (header name or 0-based index)");
  sub->add_option("--window", ctx.window, "Seasonal window MM-DD:MM-DD or MM-DD+NDAYS");
  sub->add_option("--running-sum", ctx.ingest.running_sum, "Replace values by sums of K consecutive values");
  sub->add_option("--round", ctx.cfg.delta, "Rounding width delta of recorded values");
  sub->add_option("--censor", ctx.cfg.u, "Left-censoring bound u");
  sub->add_option("-m,--block-length", ctx.cfg.m, "Block length m");
}

void add_output_options(CLI::App* sub, Context& ctx) {
  sub->add_option("-o,--output", ctx.cfg.output, "JSON report path (default: stdout)");
  sub->add_option("--csv", ctx.cfg.csv, "CSV table path");
  sub->add_option("--threads", ctx.cfg.threads, "Worker thread cap (default: MAXSTAB_THREADS or all cores)");
}

std::vector<double> maxima_of(const Series& s, int m, std::vector<std::string>& warnings) {
  if (m == 1) return s.flat();
  const BlockedSeries b = block_maxima(s.segments, m);
  if (b.dropped_observations > 0) {
    warnings.push_back(std::to_string(b.dropped_observations) + " observation(s) did not fill a block and were dropped");
  }
  if (b.maxima.empty()) throw InputError("series shorter than one block");
  return b.maxima;
}

int exit_for(bool converged) { return converged ? kOk : kNotConverged; }

// ---------------------------------------------------------------------------

int cmd_fit(Context& ctx, double return_years, double prob, std::optional<double> exceed, double years,
            double ci_level) {
  ctx.validate_common();
  const Series s = ctx.load();
  std::vector<std::string> warnings;
  const std::vector<double> mx = maxima_of(s, ctx.cfg.m, warnings);
  const FitResult fit = fit_gev(mx, ctx.treatment());
  json rep{{"n_maxima", mx.size()}, {"missing_dropped", s.missing_dropped}, {"fit", to_json(fit)}};
  const double bpy = ctx.cfg.n_blocks_per_year;
  if (return_years > 0.0) {
    rep["return_level"] = to_json(profile_ci(mx, ctx.treatment(), fit, ReturnLevelTarget{return_years, bpy, prob}, ci_level));
  }
  if (exceed) {
    rep["exceedance"] = to_json(profile_ci(mx, ctx.treatment(), fit, ExceedanceTarget{*exceed, years * bpy}, ci_level));
  }
  rep["warnings"] = warnings;
  ctx.emit(rep, "", {});
  return exit_for(fit.converged);
}

int cmd_test(Context& ctx) {
  ctx.validate_common();
  if (ctx.cfg.c < 2) throw InputError("--factor must be at least 2 for a test");
  const std::vector<AltKind> alts = parse_alts(ctx.cfg.alternative);
  const Series s = ctx.load();
  std::vector<std::string> warnings;
  const BlockFrame frame = series_frame(s.segments, ctx.cfg.m, ctx.cfg.c, ctx.treatment(), &warnings);
  std::vector<TestReport> reps = lr_tests(frame, alts, {FitOptions{}, false});
  json arr = json::array();
  bool ok = true;
  for (auto& r : reps) {
    r.m = ctx.cfg.m;
    r.factor_c = ctx.cfg.c;
    r.warnings.insert(r.warnings.begin(), warnings.begin(), warnings.end());
    ok = ok && r.converged;
    arr.push_back(to_json(r));
  }
  ctx.emit({{"missing_dropped", s.missing_dropped}, {"reports", arr}}, "", {});
  return exit_for(ok);
}

int cmd_select(Context& ctx, const std::string& grid) {
  ctx.validate_common();
  if (ctx.cfg.c < 2) throw InputError("--factor must be at least 2 for a test");
  std::vector<int> ms;
  for (double v : parse_reals(grid, "--grid")) {
    if (v < 1 || std::floor(v) != v) throw InputError("--grid needs positive integers");
    ms.push_back(static_cast<int>(v));
  }
  const AltKind kind = parse_alt(ctx.cfg.alternative);
  const Series s = ctx.load();
  const SelectionResult sel = sequential_selection(s.segments, ms, ctx.cfg.c, ctx.treatment(), kind, ctx.cfg.level);
  json trail = json::array();
  bool ok = true;
  for (const auto& r : sel.trail) {
    trail.push_back(to_json(r));
    ok = ok && r.converged;
  }
  ctx.emit({{"selected_m", sel.selected_m ? json(*sel.selected_m) : json(nullptr)}, {"trail", trail}}, "", {});
  return exit_for(ok);
}

int cmd_diagnose(Context& ctx, const std::string& kind_name, int imputations) {
  ctx.validate_common();
  if (ctx.cfg.B < 1) throw InputError("--bootstrap must be positive");
  if (imputations < 1) throw InputError("--imputations must be positive");
  const PivotKind kind = parse_pivot_kind(kind_name);
  const Series s = ctx.load();
  std::vector<std::string> warnings;
  BlockFrame frame;
  FitResult fit;
  if (ctx.cfg.c <= 1) {
    frame = BlockFrame(maxima_of(s, ctx.cfg.m, warnings), 1, ctx.treatment());
    fit = fit_gev(frame.maxima(), ctx.treatment());
  } else {
    frame = series_frame(s.segments, ctx.cfg.m, ctx.cfg.c, ctx.treatment(), &warnings);
    fit = fit_null(frame);
  }
  if (!fit.converged) {
    ctx.emit({{"fit", to_json(fit)}, {"warnings", warnings}}, "", {});
    return kNotConverged;
  }
  BandOptions bo;
  bo.alpha = ctx.cfg.level;
  bo.B = ctx.cfg.B;
  bo.N = ctx.cfg.N;
  bo.seed = ctx.cfg.seed;
  bo.threads = ctx.cfg.threads;
  const BandResult res = parametric_band(frame, fit, kind, bo);
  std::vector<std::vector<double>> overlays;
  for (int k = 1; k < imputations; ++k) {
    Rng rng = substream(ctx.cfg.seed, 0xfffffff0ULL, static_cast<std::uint64_t>(k));
    const PivotSeries ps = compute_pivots(frame, fit.params, kind, rng);
    std::vector<double> e;
    for (double nu : res.band.positions) e.push_back(ecdf_at(ps.values, nu));
    overlays.push_back(std::move(e));
  }
  std::string header = "nu,point_lo,point_hi,simul_lo,simul_hi,ecdf_observed";
  for (int k = 2; k <= imputations; ++k) header += ",ecdf_observed_" + std::to_string(k);
  std::vector<std::string> rows;
  const EcdfBand& b = res.band;
  for (std::size_t i = 0; i < b.positions.size(); ++i) {
    std::string r = fmt(b.positions[i]) + ',' + fmt(b.point_lo[i]) + ',' + fmt(b.point_hi[i]) + ',' +
                    fmt(b.simul_lo[i]) + ',' + fmt(b.simul_hi[i]) + ',' + fmt(res.ecdf_observed[i]);
    for (const auto& o : overlays) r += ',' + fmt(o[i]);
    rows.push_back(std::move(r));
  }
  json rep{{"fit", to_json(fit)},
           {"kind", pivot_kind_name(kind)},
           {"alpha", b.alpha},
           {"alpha_star", b.alpha_star},
           {"B", b.B},
           {"N", b.positions.size()},
           {"n_retained", res.observed.n_retained},
           {"failed_replicates", res.failed_replicates},
           {"inside_band", band_covers(b, res.observed.values)},
           {"warnings", warnings}};
  ctx.emit(rep, header, rows);
  return kOk;
}

EfficiencyTarget parse_target(const std::string& t) {
  if (t == "mu") return TargetMu{};
  if (t == "sigma") return TargetSigma{};
  if (t == "xi") return TargetXi{};
  std::string digits = t;
  if (digits.rfind("rl:", 0) == 0) digits = digits.substr(3);
  else if (!digits.empty() && digits[0] == 'r') digits = digits.substr(1);
  try {
    std::size_t used = 0;
    const double T = std::stod(digits, &used);
    if (used == digits.size() && T > 1.0) return TargetReturnLevel{T};
  } catch (const std::exception&) {
  }
  throw InputError("unknown target '" + t + "' (use mu, sigma, xi or rT such as r20)");
}

int cmd_are(Context& ctx, const std::string& target, const std::string& xis, const std::string& ms) {
  const EfficiencyTarget tgt = parse_target(target);
  const std::vector<double> xi = parse_reals(xis, "--xi");
  const std::vector<double> m = parse_reals(ms, "--m");
  json rows = json::array();
  std::vector<std::string> csv;
  for (double x : xi) {
    for (double mm : m) {
      if (mm < 1.0) throw InputError("--m values must be at least 1");
      const double r = ci_length_ratio(tgt, x, mm);
      const double a = are_overall(x, mm);
      rows.push_back({{"xi", x}, {"m", mm}, {"ci_length_ratio", r}, {"are_overall", a}});
      csv.push_back(target_label(tgt) + ',' + fmt(x) + ',' + fmt(mm) + ',' + fmt(r) + ',' + fmt(a));
    }
  }
  json rep{{"target", target_label(tgt)}, {"rows", rows}};
  if (rows.size() == 1) {
    rep["ci_length_ratio"] = rows[0]["ci_length_ratio"];
    rep["are_overall"] = rows[0]["are_overall"];
  }
  ctx.emit(rep, ctx.cfg.csv.empty() ? "" : "target,xi,m,ci_length_ratio,are_overall", csv);
  return kOk;
}

int cmd_power(Context& ctx, const std::string& spec_arg) {
  if (spec_arg.empty()) throw InputError("--spec is required");
  json spec;
  try {
    if (!spec_arg.empty() && spec_arg.front() == '{') {
      spec = json::parse(spec_arg);
    } else {
      std::ifstream f(spec_arg);
      if (!f) throw InputError("cannot open '" + spec_arg + "'");
      spec = json::parse(f);
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("bad study description: ") + e.what());
  }
  StudyOptions so;
  so.reps = spec.value("reps", 2000);
  so.seed = spec.value("seed", static_cast<std::uint64_t>(ctx.cfg.seed));
  so.level = spec.value("level", 0.05);
  so.threads = ctx.cfg.threads;
  if (so.reps < 100) throw InputError("reps must be at least 100");
  if (!(so.level > 0.0 && so.level < 1.0)) throw InputError("level must lie in (0, 1)");
  ctx.cfg.seed = so.seed;
  ctx.cfg.level = so.level;
  std::vector<AltKind> alts;
  if (spec.contains("alternatives")) {
    for (const auto& a : spec["alternatives"]) alts.push_back(parse_alt(a.get<std::string>()));
  } else {
    alts = {AltKind::A1, AltKind::A2, AltKind::A3};
  }
  std::vector<std::string> rows;
  json cells = json::array();
  std::uint64_t cell_index = 0;
  for (const ScenarioSpec& sc : expand_study(spec)) {
    StudyOptions cell_opts = so;
    cell_opts.seed = splitmix64(so.seed + cell_index++);
    for (const PowerCell& c : power_cell(sc, alts, cell_opts)) rows.push_back(power_csv_row(c));
  }
  ctx.emit({{"study", spec}}, power_csv_header(), rows);
  return kOk;
}

int cmd_simulate(Context& ctx, ScenarioSpec sc) {
  Rng rng = substream(ctx.cfg.seed, 0);
  std::vector<double> values;
  if (sc.kind == ScenarioKind::Mar) {
    values = simulate_mar({sc.theta, sc.xi, sc.n}, rng);
  } else {
    values = simulate_replicate(sc, rng).values();
  }
  std::vector<std::string> rows;
  for (double v : values) rows.push_back(fmt(v));
  json rep{{"scenario", scenario_name(sc.kind)}, {"n_values", values.size()}};
  if (ctx.cfg.csv.empty()) rep["values"] = values;
  ctx.emit(rep, ctx.cfg.csv.empty() ? "" : "value", rows);
  return kOk;
}

}  // namespace

json to_json(const RunConfig& c) {
  return {{"command", c.command},
          {"input", c.input},
          {"m", c.m},
          {"c", c.c},
          {"alternative", c.alternative},
          {"delta", c.delta},
          {"u", finite_or_null(c.u)},
          {"level", c.level},
          {"B", c.B},
          {"N", c.N},
          {"seed", c.seed},
          {"n_blocks_per_year", c.n_blocks_per_year},
          {"threads", c.threads},
          {"output", c.output},
          {"csv", c.csv}};
}

json to_json(const GevParams& p) { return {{"mu", p.mu}, {"sigma", p.sigma}, {"xi", p.xi}}; }

json to_json(const FitResult& f) {
  json j{{"params", to_json(f.params)},
         {"loglik", finite_or_null(f.loglik)},
         {"converged", f.converged},
         {"grad_norm", f.grad_norm},
         {"restarts", f.restarts},
         {"message", f.message}};
  if (f.alt) {
    j["alt"] = {{"kind", alt_name(f.alt->kind)},
                {"omega", f.alt->omega},
                {"nu", f.alt->nu},
                {"phi", f.alt->phi},
                {"zeta", f.alt->zeta}};
  }
  return j;
}

json to_json(const TestReport& r) {
  json alt = to_json(r.alt_fit.params);
  if (r.alt_fit.alt) alt.update(to_json(r.alt_fit)["alt"]);
  return {{"m", r.m},
          {"c", r.factor_c},
          {"alternative", alt_name(r.alt_kind)},
          {"statistic", r.statistic},
          {"df", r.df},
          {"p_value", r.p_value},
          {"null_params", to_json(r.null_fit.params)},
          {"alt_params", alt},
          {"null_loglik", finite_or_null(r.null_fit.loglik)},
          {"alt_loglik", finite_or_null(r.alt_fit.loglik)},
          {"converged", r.converged},
          {"warnings", r.warnings}};
}

json to_json(const ProfileCI& ci) {
  return {{"target", ci.target},
          {"estimate", ci.estimate},
          {"lower", finite_or_null(ci.lower)},
          {"upper", finite_or_null(ci.upper)},
          {"level", ci.level},
          {"lower_open", ci.lower_open},
          {"upper_open", ci.upper_open},
          {"non_unimodal", ci.non_unimodal}};
}

std::vector<ScenarioSpec> expand_study(const json& spec) {
  auto list = [&](const char* key, double def) {
    std::vector<double> v;
    if (!spec.contains(key)) return std::vector<double>{def};
    if (spec[key].is_array()) {
      for (const auto& e : spec[key]) v.push_back(e.get<double>());
    } else {
      v.push_back(spec[key].get<double>());
    }
    if (v.empty()) throw InputError(std::string("empty list for ") + key);
    return v;
  };
  ScenarioSpec base;
  base.kind = parse_scenario(spec.value("kind", std::string("gev")));
  base.base = parse_base(spec.value("base", std::string("normal")), spec.value("shape", 1.0));
  base.c = spec.value("c", 2);
  base.m_base = spec.value("m_base", 30);
  const double def_delta = base.kind == ScenarioKind::Gev ? 0.0 : 1.0;
  std::vector<ScenarioSpec> out;
  for (double n : list("n", 100))
    for (double m : list("m", 2))
      for (double d : list("delta", def_delta))
        for (double th : list("theta", 1.0))
          for (double xi : list("xi", 0.0)) {
            ScenarioSpec s = base;
            s.n = static_cast<int>(n);
            s.m = static_cast<int>(m);
            s.delta = d;
            s.theta = th;
            s.xi = xi;
            out.push_back(s);
          }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Block-length diagnostics for the block maximum method"};
  app.require_subcommand(1);
  app.fallthrough();
  Context ctx;
  ctx.out = &out;
  app.add_option("--seed", ctx.cfg.seed, "Random seed");
  app.add_option("--blocks-per-year", ctx.cfg.n_blocks_per_year, "Number of blocks per year for return levels");

  CLI::App* fit = app.add_subcommand("fit", "Fit the GEV to block maxima");
  add_input_options(fit, ctx);
  add_output_options(fit, ctx);
  double return_years = 0.0, prob = 0.5, years = 1.0, ci_level = 0.95;
  std::optional<double> exceed;
  fit->add_option("--return-years", return_years, "Profile CI for the quantile of the maximum over this many years");
  fit->add_option("--prob", prob, "Quantile level for --return-years (0.5 gives the median)");
  fit->add_option("--exceed", exceed, "Profile CI for the probability of exceeding this value");
  fit->add_option("--years", years, "Horizon in years for --exceed");
  fit->add_option("--ci-level", ci_level, "Confidence level of profile intervals");

  CLI::App* test = app.add_subcommand("test", "Likelihood ratio test of max-stability, m versus c m");
  add_input_options(test, ctx);
  add_output_options(test, ctx);
  test->add_option("-c,--factor", ctx.cfg.c, "Block factor c");
  test->add_option("--alt", ctx.cfg.alternative, "a1, a2, a3, a comma list or all");

  CLI::App* select = app.add_subcommand("select", "Sequential choice of the block length");
  add_input_options(select, ctx);
  add_output_options(select, ctx);
  std::string grid = "1,2,4,8";
  select->add_option("-c,--factor", ctx.cfg.c, "Block factor c");
  select->add_option("--alt", ctx.cfg.alternative, "a1, a2 or a3");
  select->add_option("--level", ctx.cfg.level, "Test level");
  select->add_option("--grid", grid, "Increasing candidate block lengths");

  CLI::App* diag = app.add_subcommand("diagnose", "PP-plot bands calibrated by parametric bootstrap");
  add_input_options(diag, ctx);
  add_output_options(diag, ctx);
  std::string kind = "all_observations";
  int imputations = 1;
  int diag_c = 1;
  diag->add_option("-c,--factor", diag_c, "Rows of c block maxima fitted by the max-stable model (1: plain GEV)");
  diag->add_option("--kind", kind, "all_observations or block_maximum");
  diag->add_option("--level", ctx.cfg.level, "Band level alpha");
  diag->add_option("--bootstrap", ctx.cfg.B, "Bootstrap replicates B");
  diag->add_option("--positions", ctx.cfg.N, "Number of ECDF positions N (0: min(n, 100))");
  diag->add_option("--imputations", imputations, "Extra ECDF overlays from independent imputations of rounded values");

  CLI::App* are = app.add_subcommand("are", "Relative efficiency of fits to m-block maxima");
  add_output_options(are, ctx);
  std::string target = "sigma", xis = "0", ms = "2";
  are->add_option("--target", target, "mu, sigma, xi or rT (return level, e.g. r20)");
  are->add_option("--xi", xis, "Shape value(s), comma separated");
  are->add_option("--m", ms, "Block multiplier(s), comma separated");

  CLI::App* power = app.add_subcommand("power", "Monte Carlo size and power study");
  add_output_options(power, ctx);
  std::string spec;
  power->add_option("--spec", spec, "Study description as a JSON file or inline JSON");

  CLI::App* sim = app.add_subcommand("simulate", "Draw a synthetic series");
  add_output_options(sim, ctx);
  std::string scenario = "gev", base = "normal";
  double shape = 1.0;
  ScenarioSpec sc;
  sim->add_option("--scenario", scenario, "gev, penultimate, mda or mar");
  sim->add_option("--base", base, "normal or weibull");
  sim->add_option("--shape", shape, "Weibull shape");
  sim->add_option("-n", sc.n, "Rows (or series length for mar)");
  sim->add_option("-m,--block-length", sc.m, "Values per row");
  sim->add_option("--delta", sc.delta, "Departure from the null");
  sim->add_option("--theta", sc.theta, "Extremal index for mar");
  sim->add_option("--xi", sc.xi, "Shape for mar");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    CLI::App* chosen = app.get_subcommands().front();
    ctx.cfg.command = chosen->get_name();
    if (chosen == fit) return cmd_fit(ctx, return_years, prob, exceed, years, ci_level);
    if (chosen == test) return cmd_test(ctx);
    if (chosen == select) return cmd_select(ctx, grid);
    if (chosen == diag) {
      ctx.cfg.c = diag_c;
      return cmd_diagnose(ctx, kind, imputations);
    }
    if (chosen == are) return cmd_are(ctx, target, xis, ms);
    if (chosen == power) return cmd_power(ctx, spec);
    sc.kind = parse_scenario(scenario);
    if (sc.kind == ScenarioKind::Gev && sim->count("--delta") == 0) sc.delta = 0.0;
    else if (sc.kind != ScenarioKind::Gev && sim->count("--delta") == 0) sc.delta = 1.0;
    sc.base = parse_base(base, shape);
    return cmd_simulate(ctx, sc);
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kNotConverged;
  } catch (const BootstrapError& e) {
    err << "error: " << e.what() << '\n';
    return kNotConverged;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace maxstab::cli
