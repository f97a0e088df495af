#include <fstream>
#include <sstream>
#include <string>

#include "rhinar/cli.hpp"
#include "rhinar/errors.hpp"

namespace rhinar::cli {

namespace {

using nlohmann::json;

template <class T>
T get_as(const json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw ConfigError(key + ": wrong type in config file");
  }
}

std::vector<double> get_list(const json& v, const std::string& key) {
  if (v.is_number()) return {v.get<double>()};
  return get_as<std::vector<double>>(v, key);
}

}  // namespace

std::vector<double> default_maturities() {
  std::vector<double> t;
  for (int m = 1; m <= 12; ++m) t.push_back(m / 12.0);
  return t;
}

std::vector<double> default_log_moneyness() {
  std::vector<double> k;
  for (int i = -10; i <= 10; ++i) k.push_back(0.02 * i);
  return k;
}

nlohmann::ordered_json to_json(const RunConfig& c, const std::string& command) {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["model.alpha"] = c.model.alpha;
  j["model.gamma"] = c.model.gamma;
  j["model.rho"] = c.model.rho;
  j["model.nu"] = c.model.nu;
  j["model.theta"] = c.model.theta;
  j["model.v0"] = c.model.v0;
  j["model.s0"] = c.model.s0;
  j["model.maturity"] = c.model.maturity;
  j["model.allow_zero_rho"] = c.model.allow_zero_rho;
  if (command != "diagnostics") {
    j["sim.tau"] = c.sim.tau;
    j["sim.paths"] = c.sim.n_paths;
    j["sim.seed"] = c.sim.master_seed;
    j["sim.crossover"] = c.sim.crossover;
    j["sim.classical_clamp"] = c.sim.classical_clamp;
  }
  if (command == "price" || command == "convergence") {
    std::vector<std::string> specs;
    for (const auto& s : c.specs) specs.push_back(s.label());
    j["specs"] = specs;
  }
  if (command == "price" || command == "convergence" || command == "benchmark")
    j["payoff.floored_lookback"] = c.floored_lookback;
  if (command == "convergence" || command == "benchmark" || command == "ivsurface") {
    j["analytic.convention"] = std::string(convention_name(c.convention));
    j["analytic.vol_convention"] = std::string(vol_convention_name(c.vol_convention));
    j["analytic.grid_steps"] = c.grid_steps;
    j["analytic.u_max"] = c.u_max;
  }
  if (command == "convergence") {
    j["convergence.taus"] = c.taus;
    j["convergence.reference"] = c.references;
    j["convergence.engine"] = c.reference_engine;
  }
  if (command == "benchmark") {
    j["benchmark.strikes"] = c.strikes;
    j["benchmark.up_barrier"] = c.up_barrier;
    j["benchmark.down_barrier"] = c.down_barrier;
    j["benchmark.engine"] = c.benchmark_engine;
  }
  if (command == "ivsurface") {
    j["surface.maturities"] = c.maturities;
    j["surface.k"] = c.log_moneyness;
    j["surface.engine"] = c.surface_engine;
    j["surface.dk"] = c.skew_step;
  }
  if (command == "pathdump") j["pathdump.index"] = c.path_index;
  return j;
}

void apply_json(RunConfig& c, const json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object with dotted keys");
  for (const auto& [key, v] : j.items()) {
    if (key == "command") continue;
    else if (key == "model.alpha") c.model.alpha = get_as<double>(v, key);
    else if (key == "model.gamma") c.model.gamma = get_as<double>(v, key);
    else if (key == "model.rho") c.model.rho = get_as<double>(v, key);
    else if (key == "model.nu") c.model.nu = get_as<double>(v, key);
    else if (key == "model.theta") c.model.theta = get_as<double>(v, key);
    else if (key == "model.v0") c.model.v0 = get_as<double>(v, key);
    else if (key == "model.s0") c.model.s0 = get_as<double>(v, key);
    else if (key == "model.maturity") c.model.maturity = get_as<double>(v, key);
    else if (key == "model.allow_zero_rho") c.model.allow_zero_rho = get_as<bool>(v, key);
    else if (key == "sim.tau") c.sim.tau = get_as<double>(v, key);
    else if (key == "sim.paths") c.sim.n_paths = get_as<std::size_t>(v, key);
    else if (key == "sim.seed") c.sim.master_seed = get_as<std::uint64_t>(v, key);
    else if (key == "sim.threads") c.sim.n_threads = get_as<unsigned>(v, key);
    else if (key == "sim.crossover") c.sim.crossover = get_as<std::size_t>(v, key);
    else if (key == "sim.classical_clamp") c.sim.classical_clamp = get_as<double>(v, key);
    else if (key == "specs") {
      c.specs.clear();
      for (const auto& s : get_as<std::vector<std::string>>(v, key)) c.specs.push_back(parse_option_spec(s));
    }
    else if (key == "payoff.floored_lookback") c.floored_lookback = get_as<bool>(v, key);
    else if (key == "analytic.convention") c.convention = parse_convention(get_as<std::string>(v, key));
    else if (key == "analytic.vol_convention")
      c.vol_convention = parse_vol_convention(get_as<std::string>(v, key));
    else if (key == "analytic.grid_steps") c.grid_steps = get_as<std::size_t>(v, key);
    else if (key == "analytic.u_max") c.u_max = get_as<double>(v, key);
    else if (key == "convergence.taus") c.taus = get_list(v, key);
    else if (key == "convergence.reference") c.references = get_list(v, key);
    else if (key == "convergence.engine") c.reference_engine = get_as<std::string>(v, key);
    else if (key == "benchmark.strikes") c.strikes = get_list(v, key);
    else if (key == "benchmark.up_barrier") c.up_barrier = get_as<double>(v, key);
    else if (key == "benchmark.down_barrier") c.down_barrier = get_as<double>(v, key);
    else if (key == "benchmark.engine") c.benchmark_engine = get_as<std::string>(v, key);
    else if (key == "surface.maturities") c.maturities = get_list(v, key);
    else if (key == "surface.k") c.log_moneyness = get_list(v, key);
    else if (key == "surface.engine") c.surface_engine = get_as<std::string>(v, key);
    else if (key == "surface.dk") c.skew_step = get_as<double>(v, key);
    else if (key == "surface.fit_out") c.fit_out = get_as<std::string>(v, key);
    else if (key == "pathdump.index") c.path_index = get_as<std::uint64_t>(v, key);
    else if (key == "output.format") c.output.format = get_as<std::string>(v, key);
    else if (key == "output.path") c.output.path = get_as<std::string>(v, key);
    else if (key == "output.no_timing") c.output.no_timing = get_as<bool>(v, key);
    else throw ConfigError("config: unknown key '" + key + "'");
  }
}

json read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  const std::string marker = "# config ";
  if (text.rfind(marker, 0) == 0 || text.find("\n" + marker) != std::string::npos) {
    std::istringstream lines(text);
    for (std::string line; std::getline(lines, line);)
      if (line.rfind(marker, 0) == 0) return json::parse(line.substr(marker.size()), nullptr, true);
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: '" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace rhinar::cli
