#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace rhinar {

enum class OptionKind {
  EuropeanCall,
  EuropeanPut,
  AsianCall,
  AsianPut,
  LookbackCall,
  LookbackPut,
  UpInCall,
  DownOutPut,
};

[[nodiscard]] bool is_barrier(OptionKind kind) noexcept;

// CLI token for a kind: euro-call, euro-put, asian-call, asian-put, lb-call,
// lb-put, ui-call, do-put.
[[nodiscard]] std::string_view kind_token(OptionKind kind) noexcept;

struct OptionSpec {
  OptionKind kind = OptionKind::EuropeanCall;
  double strike = 100.0;
  std::optional<double> barrier;
  // Lookbacks pay M - K and K - m by default; floored adds the positive part.
  bool floored = false;

  // Throws ConfigError on a missing or superfluous barrier or non-positive levels.
  void validate() const;

  // Round-trips through parse_option_spec, e.g. "ui-call:110:105".
  [[nodiscard]] std::string label() const;
};

// Parses `kind:strike[:barrier]`. Throws ConfigError.
[[nodiscard]] OptionSpec parse_option_spec(std::string_view text);

// Path statistics every payoff is a function of. Averages and extrema include s[0].
struct PathSummary {
  double terminal = 0.0;
  double average = 0.0;
  double max = 0.0;
  double min = 0.0;
};

[[nodiscard]] PathSummary summarize(std::span<const double> s);

[[nodiscard]] double payoff(const PathSummary& path, const OptionSpec& spec);
[[nodiscard]] double payoff(std::span<const double> s, const OptionSpec& spec);

}  // namespace rhinar
