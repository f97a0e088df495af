#include "rhinar/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "rhinar/errors.hpp"
#include "rhinar/inar.hpp"
#include "rhinar/iv.hpp"
#include "rhinar/kernel.hpp"

namespace rhinar::cli {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::ordered_json;

double round6(double x) { return std::stod(format_sig(x, 6)); }
std::string f6(double x) { return format_sig(x, 6); }

// Flag values; unset flags leave the config-file or default value alone.
struct Flags {
  std::string config_path;
  std::optional<double> alpha, gamma, rho, nu, theta, v0, s0, maturity;
  bool allow_zero_rho = false;
  std::optional<double> tau;
  std::optional<std::size_t> paths;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<std::size_t> crossover;
  std::optional<double> classical_clamp;
  std::vector<std::string> specs;
  bool floored = false;
  std::optional<std::string> convention, vol_convention;
  std::optional<std::size_t> grid_steps;
  std::optional<double> u_max;
  std::vector<double> taus, references;
  std::optional<std::string> engine;
  std::vector<double> strikes;
  bool strikes_given = false;
  std::optional<double> up_barrier, down_barrier;
  std::vector<double> maturities, log_moneyness;
  std::optional<double> dk;
  std::optional<std::string> fit_out;
  std::optional<std::uint64_t> index;
  std::optional<std::string> format, out;
  bool no_timing = false;
};

void add_model_flags(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config_path, "JSON config with dotted keys, or a CSV output to re-run");
  app->add_option("--alpha", f.alpha, "Roughness alpha in (1/2, 1]");
  app->add_option("--gamma", f.gamma, "Mean reversion gamma");
  app->add_option("--rho", f.rho, "Correlation rho in (-1/sqrt2, 0)");
  app->add_option("--nu", f.nu, "Vol-of-vol nu");
  app->add_option("--theta", f.theta, "Long-run variance theta");
  app->add_option("--v0", f.v0, "Initial variance V0");
  app->add_option("--s0", f.s0, "Spot S0");
  app->add_option("--maturity", f.maturity, "Maturity T in (0, 1]");
  app->add_flag("--allow-zero-rho", f.allow_zero_rho, "Accept rho = 0 (beta = 1, no leverage)");
}

void add_sim_flags(CLI::App* app, Flags& f) {
  app->add_option("--tau", f.tau, "Steps per unit time");
  app->add_option("--paths", f.paths, "Monte Carlo paths (Euler: antithetic pairs)");
  app->add_option("--seed", f.seed, "Master seed");
  app->add_option("--threads", f.threads, "Worker threads, 0 = all cores (default: $RHINAR_THREADS)");
  app->add_option("--crossover", f.crossover, "CDQ node length below which direct summation is used");
  app->add_option("--classical-clamp", f.classical_clamp,
                  "Run alpha = 1 in the INAR engine as alpha = 1 - clamp");
}

void add_analytic_flags(CLI::App* app, Flags& f) {
  app->add_option("--convention", f.convention, "Riccati convention: power | resolvent");
  app->add_option("--vol-convention", f.vol_convention, "alpha = 1 vol-of-vol: scaled (gamma nu) | raw (nu)");
  app->add_option("--grid-steps", f.grid_steps, "Riccati grid steps");
  app->add_option("--u-max", f.u_max, "Fourier truncation");
}

void add_output_flags(CLI::App* app, Flags& f) {
  app->add_option("--format", f.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--out", f.out, "Output path (default stdout)");
  app->add_flag("--no-timing", f.no_timing, "Report zero timings so reruns are byte-identical");
}

template <class T>
void set_if(const std::optional<T>& v, T& target) {
  if (v) target = *v;
}

RunConfig resolve(const Flags& f) {
  RunConfig c;
  if (const char* env = std::getenv("RHINAR_THREADS")) {
    try {
      c.sim.n_threads = static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      throw ConfigError("RHINAR_THREADS: expected a non-negative integer");
    }
  }
  if (!f.config_path.empty()) apply_json(c, read_config_file(f.config_path));

  set_if(f.alpha, c.model.alpha);
  set_if(f.gamma, c.model.gamma);
  set_if(f.rho, c.model.rho);
  set_if(f.nu, c.model.nu);
  set_if(f.theta, c.model.theta);
  set_if(f.v0, c.model.v0);
  set_if(f.s0, c.model.s0);
  set_if(f.maturity, c.model.maturity);
  if (f.allow_zero_rho) c.model.allow_zero_rho = true;
  set_if(f.tau, c.sim.tau);
  set_if(f.paths, c.sim.n_paths);
  set_if(f.seed, c.sim.master_seed);
  set_if(f.threads, c.sim.n_threads);
  set_if(f.crossover, c.sim.crossover);
  set_if(f.classical_clamp, c.sim.classical_clamp);
  if (!f.specs.empty()) {
    c.specs.clear();
    for (const auto& s : f.specs) c.specs.push_back(parse_option_spec(s));
  }
  if (f.floored) c.floored_lookback = true;
  for (auto& s : c.specs) s.floored = c.floored_lookback;
  if (f.convention) c.convention = parse_convention(*f.convention);
  if (f.vol_convention) c.vol_convention = parse_vol_convention(*f.vol_convention);
  set_if(f.grid_steps, c.grid_steps);
  set_if(f.u_max, c.u_max);
  if (!f.taus.empty()) c.taus = f.taus;
  if (!f.references.empty()) c.references = f.references;
  if (f.strikes_given) c.strikes = f.strikes;
  set_if(f.up_barrier, c.up_barrier);
  set_if(f.down_barrier, c.down_barrier);
  if (!f.maturities.empty()) c.maturities = f.maturities;
  if (!f.log_moneyness.empty()) c.log_moneyness = f.log_moneyness;
  set_if(f.dk, c.skew_step);
  set_if(f.fit_out, c.fit_out);
  set_if(f.index, c.path_index);
  set_if(f.format, c.output.format);
  set_if(f.out, c.output.path);
  if (f.no_timing) c.output.no_timing = true;
  if (c.output.format != "csv" && c.output.format != "json")
    throw ConfigError("format: expected csv or json");

  c.model.validate();
  if (!(c.grid_steps >= 16)) throw ConfigError("grid-steps: must be at least 16");
  if (!(c.u_max > 0.0)) throw ConfigError("u-max: must be positive");
  return c;
}

RoughHestonSettings analytic_settings(const RunConfig& c) {
  RoughHestonSettings s;
  s.convention = c.convention;
  s.grid_steps = c.grid_steps;
  s.fourier.u_max = c.u_max;
  return s;
}

FourierSettings fourier_settings(const RunConfig& c) {
  FourierSettings s;
  s.u_max = c.u_max;
  return s;
}

// Writes to --out or the given stream.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output '" + path + "'");
    }
  }
  std::ostream& stream(std::ostream& fallback) { return file_.is_open() ? file_ : fallback; }

 private:
  std::ofstream file_;
};

struct Meta {
  ordered_json config;
  std::uint64_t seed = 0;
  double wall = 0.0;
  bool no_timing = false;
};

void write_csv_header(std::ostream& os, const Meta& m) {
  os << "# rhinar " << RHINAR_VERSION << "\n";
  os << "# config " << m.config.dump() << "\n";
  os << "# seed " << m.seed << "\n";
  os << "# wall_time " << (m.no_timing ? "0" : f6(m.wall)) << "\n";
}

ordered_json json_envelope(const Meta& m) {
  ordered_json j;
  j["version"] = RHINAR_VERSION;
  j["config"] = m.config;
  j["seed"] = m.seed;
  j["wall_time"] = m.no_timing ? 0.0 : round6(m.wall);
  return j;
}

std::string barrier_text(const OptionSpec& s) { return s.barrier ? f6(*s.barrier) : ""; }

ordered_json estimate_json(const PriceEstimate& e) {
  ordered_json j;
  j["mean"] = round6(e.mean);
  j["ci_low"] = round6(e.ci_low);
  j["ci_high"] = round6(e.ci_high);
  j["std_error"] = round6(e.std_error);
  j["n_paths"] = e.n_paths;
  return j;
}

// ---- price -------------------------------------------------------------------

int cmd_price(const RunConfig& c, std::ostream& out) {
  const auto start = Clock::now();
  if (c.specs.empty()) throw ConfigError("spec: at least one --spec is required");
  const PricingResult r = run_pricing(c.model, c.sim, c.specs);
  const double seconds = c.output.no_timing ? 0.0 : r.seconds;
  Meta meta{to_json(c, "price"), c.sim.master_seed,
            std::chrono::duration<double>(Clock::now() - start).count(), c.output.no_timing};

  Sink sink(c.output.path);
  std::ostream& os = sink.stream(out);
  if (c.output.format == "json") {
    ordered_json j = json_envelope(meta);
    j["results"] = ordered_json::array();
    for (std::size_t i = 0; i < c.specs.size(); ++i) {
      ordered_json row;
      row["spec"] = c.specs[i].label();
      row["strike"] = c.specs[i].strike;
      row["barrier"] = c.specs[i].barrier ? ordered_json(*c.specs[i].barrier) : ordered_json();
      row.update(estimate_json(r.estimates[i]));
      row["seconds"] = round6(seconds);
      j["results"].push_back(row);
    }
    os << j.dump(2) << "\n";
  } else {
    write_csv_header(os, meta);
    os << "spec,strike,barrier,mean,ci_low,ci_high,n_paths,seconds\n";
    for (std::size_t i = 0; i < c.specs.size(); ++i) {
      const auto& e = r.estimates[i];
      os << c.specs[i].label() << "," << f6(c.specs[i].strike) << "," << barrier_text(c.specs[i]) << ","
         << f6(e.mean) << "," << f6(e.ci_low) << "," << f6(e.ci_high) << "," << e.n_paths << ","
         << f6(seconds) << "\n";
    }
  }
  return kOk;
}

// ---- convergence -------------------------------------------------------------

std::vector<double> auto_references(const RunConfig& c) {
  std::vector<double> refs;
  if (c.reference_engine != "semi-analytic")
    throw ConfigError("reference: give --reference or use --engine semi-analytic");
  std::optional<RoughHestonPricer> rough;
  if (c.model.alpha < 1.0) rough.emplace(c.model, analytic_settings(c));
  const auto classical = HestonClassicalParams::from_config(c.model, c.vol_convention);
  for (const auto& s : c.specs) {
    if (s.kind != OptionKind::EuropeanCall && s.kind != OptionKind::EuropeanPut)
      throw ConfigError("reference: only European specs have a semi-analytic reference; pass --reference");
    const bool call = s.kind == OptionKind::EuropeanCall;
    if (rough)
      refs.push_back(call ? rough->call(s.strike, c.model.maturity) : rough->put(s.strike, c.model.maturity));
    else
      refs.push_back(heston_closed_form(s.strike, c.model.maturity, classical, call, fourier_settings(c)));
  }
  return refs;
}

int cmd_convergence(RunConfig c, std::ostream& out) {
  const auto start = Clock::now();
  if (c.specs.empty()) c.specs.push_back(parse_option_spec("euro-call:100"));
  if (c.taus.empty()) throw ConfigError("taus: at least one tau is required");
  if (c.references.empty()) c.references = auto_references(c);
  if (c.references.size() == 1 && c.specs.size() > 1) c.references.assign(c.specs.size(), c.references[0]);
  const auto rows = convergence_study(c.model, c.sim, c.taus, c.specs, c.references);
  Meta meta{to_json(c, "convergence"), c.sim.master_seed,
            std::chrono::duration<double>(Clock::now() - start).count(), c.output.no_timing};
  const bool nt = c.output.no_timing;

  Sink sink(c.output.path);
  std::ostream& os = sink.stream(out);
  if (c.output.format == "json") {
    ordered_json j = json_envelope(meta);
    j["rows"] = ordered_json::array();
    for (const auto& r : rows)
      for (std::size_t k = 0; k < c.specs.size(); ++k) {
        ordered_json row;
        row["tau"] = r.tau;
        row["seed"] = r.seed;
        row["spec"] = c.specs[k].label();
        row.update(estimate_json(r.estimates[k]));
        row["reference"] = round6(c.references[k]);
        row["deviation"] = round6(r.deviations[k]);
        row["seconds"] = nt ? 0.0 : round6(r.seconds);
        row["us_per_path"] = nt ? 0.0 : round6(r.micros_per_path);
        j["rows"].push_back(row);
      }
    os << j.dump(2) << "\n";
  } else {
    write_csv_header(os, meta);
    os << "tau,spec,mean,ci_low,ci_high,reference,deviation,n_paths,seconds,us_per_path\n";
    for (const auto& r : rows)
      for (std::size_t k = 0; k < c.specs.size(); ++k) {
        const auto& e = r.estimates[k];
        os << f6(r.tau) << "," << c.specs[k].label() << "," << f6(e.mean) << "," << f6(e.ci_low) << ","
           << f6(e.ci_high) << "," << f6(c.references[k]) << "," << f6(r.deviations[k]) << "," << e.n_paths
           << "," << f6(nt ? 0.0 : r.seconds) << "," << f6(nt ? 0.0 : r.micros_per_path) << "\n";
      }
  }
  return kOk;
}

// ---- benchmark ---------------------------------------------------------------

struct BenchRow {
  OptionSpec spec;
  PriceEstimate inar;
  std::string engine;  // empty: no benchmark for this kind
  double bench = 0.0;
  double bench_low = 0.0;
  double bench_high = 0.0;
};

int cmd_benchmark(RunConfig c, std::ostream& out) {
  const auto start = Clock::now();
  if (c.strikes.empty()) throw ConfigError("strikes: at least one strike is required");
  const bool classical = c.model.alpha >= 1.0;
  const std::string& eng = c.benchmark_engine;
  if (eng != "auto" && eng != "closed-form" && eng != "euler" && eng != "semi-analytic")
    throw ConfigError("engine: expected auto, closed-form, euler or semi-analytic");
  if (!classical && (eng == "closed-form" || eng == "euler"))
    throw ConfigError("engine: " + eng + " benchmarks need alpha = 1");
  if (classical && c.sim.classical_clamp == 0.0) c.sim.classical_clamp = 1e-9;

  std::vector<OptionSpec> specs;
  for (double K : c.strikes) {
    for (OptionKind k : {OptionKind::EuropeanCall, OptionKind::EuropeanPut, OptionKind::AsianCall,
                         OptionKind::AsianPut, OptionKind::LookbackCall, OptionKind::LookbackPut}) {
      OptionSpec s{.kind = k, .strike = K, .barrier = std::nullopt};
      s.floored = c.floored_lookback;
      specs.push_back(s);
    }
    specs.push_back(OptionSpec{.kind = OptionKind::UpInCall, .strike = K, .barrier = c.up_barrier});
    specs.push_back(OptionSpec{.kind = OptionKind::DownOutPut, .strike = K, .barrier = c.down_barrier});
  }
  const PricingResult inar = run_pricing(c.model, c.sim, specs);

  std::vector<BenchRow> rows;
  for (std::size_t i = 0; i < specs.size(); ++i) rows.push_back({specs[i], inar.estimates[i], "", 0, 0, 0});

  auto is_euro = [](const OptionSpec& s) {
    return s.kind == OptionKind::EuropeanCall || s.kind == OptionKind::EuropeanPut;
  };
  const double T = c.model.maturity;
  const bool want_closed = classical && (eng == "auto" || eng == "closed-form");
  const bool want_euler = classical && (eng == "auto" || eng == "euler");
  const bool want_semi = eng == "semi-analytic" || (!classical && eng == "auto");

  if (want_closed) {
    const auto p = HestonClassicalParams::from_config(c.model, c.vol_convention);
    const CfGrid grid = heston_cf_grid(T, p, fourier_settings(c));
    for (auto& r : rows)
      if (is_euro(r.spec)) {
        const double call = lewis_call(grid, p.s0, r.spec.strike).price;
        r.engine = "closed-form";
        r.bench = r.bench_low = r.bench_high =
            r.spec.kind == OptionKind::EuropeanCall ? call : call - p.s0 + r.spec.strike;
      }
  }
  if (want_semi) {
    const RoughHestonPricer pricer(c.model, analytic_settings(c));
    for (auto& r : rows)
      if (is_euro(r.spec)) {
        r.engine = "semi-analytic";
        r.bench = r.bench_low = r.bench_high = r.spec.kind == OptionKind::EuropeanCall
                                                   ? pricer.call(r.spec.strike, T)
                                                   : pricer.put(r.spec.strike, T);
      }
  }
  if (want_euler) {
    std::vector<OptionSpec> em_specs;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (!is_euro(rows[i].spec) || eng == "euler") {
        em_specs.push_back(rows[i].spec);
        idx.push_back(i);
      }
    EulerSettings es;
    es.tau = c.sim.tau;
    es.n_pairs = c.sim.n_paths;
    es.master_seed = derive_seed(c.sim.master_seed, 0xE0E0);
    es.n_threads = c.sim.n_threads;
    const auto p = HestonClassicalParams::from_config(c.model, c.vol_convention);
    const auto em = euler_heston_simulate(p, T, es, em_specs);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      auto& r = rows[idx[k]];
      r.engine = "euler";
      r.bench = em.estimates[k].mean;
      r.bench_low = em.estimates[k].ci_low;
      r.bench_high = em.estimates[k].ci_high;
    }
  }

  Meta meta{to_json(c, "benchmark"), c.sim.master_seed,
            std::chrono::duration<double>(Clock::now() - start).count(), c.output.no_timing};
  auto covered = [](const BenchRow& r) {
    return r.bench >= r.inar.ci_low && r.bench <= r.inar.ci_high;
  };

  Sink sink(c.output.path);
  std::ostream& os = sink.stream(out);
  if (c.output.format == "json") {
    ordered_json j = json_envelope(meta);
    j["rows"] = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json row;
      row["spec"] = r.spec.label();
      row["inar"] = estimate_json(r.inar);
      if (!r.engine.empty()) {
        row["benchmark_engine"] = r.engine;
        row["benchmark"] = round6(r.bench);
        row["benchmark_ci_low"] = round6(r.bench_low);
        row["benchmark_ci_high"] = round6(r.bench_high);
        row["within_inar_ci"] = covered(r);
      }
      j["rows"].push_back(row);
    }
    os << j.dump(2) << "\n";
  } else {
    write_csv_header(os, meta);
    os << "spec,strike,barrier,inar_mean,inar_ci_low,inar_ci_high,n_paths,benchmark_engine,benchmark,"
          "benchmark_ci_low,benchmark_ci_high,within_inar_ci\n";
    for (const auto& r : rows) {
      os << r.spec.label() << "," << f6(r.spec.strike) << "," << barrier_text(r.spec) << "," << f6(r.inar.mean)
         << "," << f6(r.inar.ci_low) << "," << f6(r.inar.ci_high) << "," << r.inar.n_paths << ",";
      if (r.engine.empty())
        os << ",,,,\n";
      else
        os << r.engine << "," << f6(r.bench) << "," << f6(r.bench_low) << "," << f6(r.bench_high) << ","
           << (covered(r) ? "yes" : "no") << "\n";
    }
  }
  return kOk;
}

// ---- ivsurface ---------------------------------------------------------------

int cmd_ivsurface(RunConfig c, std::ostream& out) {
  const auto start = Clock::now();
  if (c.maturities.empty()) c.maturities = default_maturities();
  if (c.log_moneyness.empty()) c.log_moneyness = default_log_moneyness();
  std::unique_ptr<SurfaceEngine> engine;
  if (c.surface_engine == "semi-analytic")
    engine = std::make_unique<SemiAnalyticEngine>(c.model, analytic_settings(c));
  else if (c.surface_engine == "mc")
    engine = std::make_unique<McEngine>(c.model, c.sim);
  else
    throw ConfigError("engine: expected semi-analytic or mc");
  for (double T : c.maturities)
    if (!(T > 0.0 && T <= 1.0)) throw ConfigError("maturities: must lie in (0, 1]");

  const auto surface = build_surface(*engine, c.maturities, c.log_moneyness);

  ordered_json fit_json;
  try {
    const auto skews = surface_skews(surface, c.skew_step);
    const auto fit = powerlaw_fit(skews);
    fit_json["c"] = round6(fit.c);
    fit_json["exponent"] = round6(fit.exponent);
    fit_json["r_squared"] = round6(fit.r_squared);
    fit_json["reference_exponent"] = round6(c.model.alpha - 1.0);
    fit_json["excluded_maturities"] = fit.excluded;
    fit_json["skews"] = ordered_json::array();
    for (const auto& s : skews)
      fit_json["skews"].push_back({{"maturity", round6(s.maturity)}, {"skew", round6(s.skew)},
                                   {"halfwidth", round6(s.halfwidth)}});
  } catch (const ConfigError& e) {
    fit_json["error"] = e.what();
  }

  Meta meta{to_json(c, "ivsurface"), c.sim.master_seed,
            std::chrono::duration<double>(Clock::now() - start).count(), c.output.no_timing};
  if (!c.fit_out.empty()) {
    std::ofstream f(c.fit_out);
    if (!f) throw std::runtime_error("cannot open '" + c.fit_out + "'");
    f << fit_json.dump(2) << "\n";
  }

  Sink sink(c.output.path);
  std::ostream& os = sink.stream(out);
  if (c.output.format == "json") {
    ordered_json j = json_envelope(meta);
    j["engine"] = engine->name();
    j["points"] = ordered_json::array();
    for (const auto& p : surface) {
      ordered_json row{{"maturity", round6(p.maturity)}, {"k", round6(p.log_moneyness)}};
      row["iv"] = p.ok ? ordered_json(round6(p.iv)) : ordered_json();
      row["iv_halfwidth"] = round6(p.iv_halfwidth);
      row["price"] = round6(p.price);
      row["ci_halfwidth"] = round6(p.ci_halfwidth);
      if (!p.ok) row["error"] = p.error;
      j["points"].push_back(row);
    }
    j["fit"] = fit_json;
    os << j.dump(2) << "\n";
  } else {
    write_csv_header(os, meta);
    os << "# engine " << engine->name() << "\n";
    os << "# fit " << fit_json.dump() << "\n";
    os << "maturity,k,iv,iv_halfwidth,price,ci_halfwidth,ok\n";
    for (const auto& p : surface)
      os << f6(p.maturity) << "," << f6(p.log_moneyness) << "," << (p.ok ? f6(p.iv) : "") << ","
         << f6(p.iv_halfwidth) << "," << f6(p.price) << "," << f6(p.ci_halfwidth) << "," << (p.ok ? 1 : 0)
         << "\n";
  }
  return kOk;
}

// ---- diagnostics ---------------------------------------------------------------

int cmd_diagnostics(const RunConfig& c, std::ostream& out) {
  const StripDiagnostics d = moment_strip_diagnostics(c.model, c.model.maturity);
  ordered_json j;
  j["version"] = RHINAR_VERSION;
  j["config"] = to_json(c, "diagnostics");
  j["maturity"] = round6(c.model.maturity);
  j["kernel_energy"] = round6(d.kernel_energy);
  j["F_T"] = round6(d.f_cumulative);
  j["theta_T"] = round6(d.theta_T);
  j["delta"] = round6(d.delta);
  j["y_max"] = round6(d.y_max);
  j["theta_star"] = round6(d.theta_star);
  Sink sink(c.output.path);
  std::ostream& os = sink.stream(out);
  if (c.output.format == "csv") {
    os << "# rhinar " << RHINAR_VERSION << "\n# config " << j["config"].dump() << "\n";
    os << "quantity,value\n";
    for (const char* k : {"maturity", "kernel_energy", "F_T", "theta_T", "delta", "y_max", "theta_star"})
      os << k << "," << f6(j[k].get<double>()) << "\n";
  } else {
    os << j.dump(2) << "\n";
  }
  return kOk;
}

// ---- pathdump ------------------------------------------------------------------

int cmd_pathdump(const RunConfig& c, std::ostream& out) {
  const DerivedParams d = derive(c.model, c.sim.tau, c.sim.classical_clamp);
  const InarSimulator sim(d, c.sim.crossover);
  const PathRecord rec = sim.simulate(PathRng(c.sim.master_seed, c.path_index));
  Meta meta{to_json(c, "pathdump"), c.sim.master_seed, 0.0, true};
  Sink sink(c.output.path);
  std::ostream& os = sink.stream(out);
  write_csv_header(os, meta);
  os << "step,t,s,n_plus,n_minus,lambda\n";
  for (std::size_t n = 0; n <= d.n_steps; ++n)
    os << n << "," << format_sig(static_cast<double>(n) / d.tau, 10) << "," << format_sig(rec.s[n], 10) << ","
       << rec.n_plus[n] << "," << rec.n_minus[n] << "," << format_sig(rec.lambda[n], 10) << "\n";
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rough Heston option pricing by INAR(inf) simulation"};
  app.set_version_flag("--version", std::string(RHINAR_VERSION));
  app.require_subcommand(1);
  Flags f;

  auto* price = app.add_subcommand("price", "Monte Carlo prices for a list of option specs");
  auto* conv = app.add_subcommand("convergence", "Price across tau against a reference");
  auto* bench = app.add_subcommand("benchmark", "INAR next to closed-form, Euler or semi-analytic prices");
  auto* surf = app.add_subcommand("ivsurface", "Implied-volatility surface, ATM skews and power-law fit");
  auto* diag = app.add_subcommand("diagnostics", "Moment-strip diagnostics of the limiting kernel");
  auto* dump = app.add_subcommand("pathdump", "Write one simulated path as CSV");

  const std::string spec_help =
      "Option spec kind:strike[:barrier]; kinds euro-call, euro-put, asian-call, asian-put, lb-call, lb-put, "
      "ui-call (barrier), do-put (barrier)";
  for (auto* sc : {price, conv, bench, surf, diag, dump}) {
    add_model_flags(sc, f);
    add_output_flags(sc, f);
  }
  for (auto* sc : {price, conv, bench, surf, dump}) add_sim_flags(sc, f);
  for (auto* sc : {conv, bench, surf}) add_analytic_flags(sc, f);
  for (auto* sc : {price, conv}) {
    sc->add_option("--spec", f.specs, spec_help);
    sc->add_flag("--floored-lookback", f.floored, "Lookbacks pay (M - K)+ and (K - m)+");
  }
  bench->add_flag("--floored-lookback", f.floored, "Lookbacks pay (M - K)+ and (K - m)+");
  conv->add_option("--taus", f.taus, "Comma-separated tau values")->delimiter(',');
  conv->add_option("--reference", f.references, "Reference price(s), one per spec")->delimiter(',');
  conv->add_option("--engine", f.engine, "Reference engine when --reference is omitted: semi-analytic");
  auto* strikes_opt = bench->add_option("--strikes", f.strikes, "Comma-separated strikes")->delimiter(',');
  bench->add_option("--up-barrier", f.up_barrier, "Up-and-in barrier");
  bench->add_option("--down-barrier", f.down_barrier, "Down-and-out barrier");
  bench->add_option("--engine", f.engine, "auto | closed-form | euler | semi-analytic");
  surf->add_option("--maturities", f.maturities, "Comma-separated maturities")->delimiter(',');
  surf->add_option("--k-grid", f.log_moneyness, "Comma-separated log-moneyness values")->delimiter(',');
  surf->add_option("--engine", f.engine, "semi-analytic | mc");
  surf->add_option("--dk", f.dk, "Skew finite-difference step");
  surf->add_option("--fit-out", f.fit_out, "Write the skew fit as JSON here");
  dump->add_option("--index", f.index, "Path index");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    f.strikes_given = strikes_opt->count() > 0;
    RunConfig c = resolve(f);
    if (f.engine) {
      if (conv->parsed()) c.reference_engine = *f.engine;
      if (bench->parsed()) c.benchmark_engine = *f.engine;
      if (surf->parsed()) c.surface_engine = *f.engine;
    }
    if (price->parsed()) return cmd_price(c, out);
    if (conv->parsed()) return cmd_convergence(c, out);
    if (bench->parsed()) return cmd_benchmark(c, out);
    if (surf->parsed()) return cmd_ivsurface(c, out);
    if (diag->parsed()) return cmd_diagnostics(c, out);
    if (dump->parsed()) return cmd_pathdump(c, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: config: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kRuntimeError;
}

}  // namespace rhinar::cli
