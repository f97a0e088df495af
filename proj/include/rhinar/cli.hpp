#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "rhinar/heston.hpp"
#include "rhinar/mc.hpp"
#include "rhinar/params.hpp"
#include "rhinar/payoffs.hpp"
#include "rhinar/rough_heston.hpp"

namespace rhinar::cli {

enum ExitCode : int { kOk = 0, kRuntimeError = 1, kConfigError = 2 };

struct OutputOptions {
  std::string format = "csv";  // csv | json
  std::string path;            // empty: stdout
  bool no_timing = false;      // zero all timings so output is byte-stable
};

// Everything a run needs, after defaults, config file and flags are applied.
struct RunConfig {
  ModelConfig model;
  SimSettings sim;
  std::vector<OptionSpec> specs;
  bool floored_lookback = false;

  RiccatiConvention convention = RiccatiConvention::Power;
  VolOfVolConvention vol_convention = VolOfVolConvention::Scaled;
  std::size_t grid_steps = 512;
  double u_max = 200.0;

  std::vector<double> taus{40.0, 80.0, 160.0, 320.0};
  std::vector<double> references;
  std::string reference_engine = "semi-analytic";

  std::vector<double> strikes{80.0, 90.0, 100.0, 110.0, 120.0};
  double up_barrier = 110.0;
  double down_barrier = 90.0;
  std::string benchmark_engine = "auto";  // auto | closed-form | euler | semi-analytic

  std::vector<double> maturities;     // default: 1/12, 2/12, ..., 1
  std::vector<double> log_moneyness;  // default: -0.2, -0.18, ..., 0.2
  std::string surface_engine = "semi-analytic";  // semi-analytic | mc
  double skew_step = 0.02;
  std::string fit_out;

  std::uint64_t path_index = 0;

  OutputOptions output;
};

[[nodiscard]] std::vector<double> default_maturities();
[[nodiscard]] std::vector<double> default_log_moneyness();

// Resolved config as flat dotted keys. Thread count and output options are
// left out: they do not change the numbers.
[[nodiscard]] nlohmann::ordered_json to_json(const RunConfig& config, const std::string& command);

// Applies flat dotted keys; unknown keys or bad values throw ConfigError.
void apply_json(RunConfig& config, const nlohmann::json& j);

// Reads a JSON config file, or the "# config" line embedded in a CSV output.
[[nodiscard]] nlohmann::json read_config_file(const std::string& path);

// Entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rhinar::cli
