#include "rhinar/payoffs.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "rhinar/errors.hpp"
#include "rhinar/params.hpp"

namespace rhinar {

namespace {

constexpr std::array<std::pair<OptionKind, std::string_view>, 8> kTokens{{
    {OptionKind::EuropeanCall, "euro-call"},
    {OptionKind::EuropeanPut, "euro-put"},
    {OptionKind::AsianCall, "asian-call"},
    {OptionKind::AsianPut, "asian-put"},
    {OptionKind::LookbackCall, "lb-call"},
    {OptionKind::LookbackPut, "lb-put"},
    {OptionKind::UpInCall, "ui-call"},
    {OptionKind::DownOutPut, "do-put"},
}};

double parse_level(std::string_view text, std::string_view what, std::string_view spec) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty())
    throw ConfigError("spec '" + std::string(spec) + "': invalid " + std::string(what));
  return v;
}

inline double pos(double x) { return x > 0.0 ? x : 0.0; }

}  // namespace

bool is_barrier(OptionKind kind) noexcept {
  return kind == OptionKind::UpInCall || kind == OptionKind::DownOutPut;
}

std::string_view kind_token(OptionKind kind) noexcept {
  for (const auto& [k, tok] : kTokens)
    if (k == kind) return tok;
  return "unknown";
}

void OptionSpec::validate() const {
  if (!(strike > 0.0) || !std::isfinite(strike))
    throw ConfigError("spec " + std::string(kind_token(kind)) + ": strike must be positive");
  if (is_barrier(kind)) {
    if (!barrier) throw ConfigError("spec " + std::string(kind_token(kind)) + ": barrier required");
    if (!(*barrier > 0.0) || !std::isfinite(*barrier))
      throw ConfigError("spec " + std::string(kind_token(kind)) + ": barrier must be positive");
  } else if (barrier) {
    throw ConfigError("spec " + std::string(kind_token(kind)) + ": takes no barrier");
  }
}

std::string OptionSpec::label() const {
  std::string out(kind_token(kind));
  out += ":" + format_sig(strike, 10);
  if (barrier) out += ":" + format_sig(*barrier, 10);
  return out;
}

OptionSpec parse_option_spec(std::string_view text) {
  const auto c1 = text.find(':');
  if (c1 == std::string_view::npos)
    throw ConfigError("spec '" + std::string(text) + "': expected kind:strike[:barrier]");
  const std::string_view kind = text.substr(0, c1);
  std::string_view rest = text.substr(c1 + 1);
  const auto c2 = rest.find(':');

  OptionSpec spec;
  bool found = false;
  for (const auto& [k, tok] : kTokens)
    if (tok == kind) {
      spec.kind = k;
      found = true;
    }
  if (!found) throw ConfigError("spec '" + std::string(text) + "': unknown kind '" + std::string(kind) + "'");

  spec.strike = parse_level(rest.substr(0, c2), "strike", text);
  if (c2 != std::string_view::npos) spec.barrier = parse_level(rest.substr(c2 + 1), "barrier", text);
  spec.validate();
  return spec;
}

PathSummary summarize(std::span<const double> s) {
  if (s.empty()) throw std::invalid_argument("summarize: empty path");
  PathSummary p;
  p.terminal = s.back();
  p.max = s[0];
  p.min = s[0];
  double sum = 0.0;
  for (double v : s) {
    sum += v;
    p.max = std::max(p.max, v);
    p.min = std::min(p.min, v);
  }
  p.average = sum / static_cast<double>(s.size());
  return p;
}

double payoff(const PathSummary& path, const OptionSpec& spec) {
  const double K = spec.strike;
  switch (spec.kind) {
    case OptionKind::EuropeanCall: return pos(path.terminal - K);
    case OptionKind::EuropeanPut: return pos(K - path.terminal);
    case OptionKind::AsianCall: return pos(path.average - K);
    case OptionKind::AsianPut: return pos(K - path.average);
    case OptionKind::LookbackCall: return spec.floored ? pos(path.max - K) : path.max - K;
    case OptionKind::LookbackPut: return spec.floored ? pos(K - path.min) : K - path.min;
    case OptionKind::UpInCall:
      return path.max >= *spec.barrier ? pos(path.terminal - K) : 0.0;
    case OptionKind::DownOutPut:
      return path.min > *spec.barrier ? pos(K - path.terminal) : 0.0;
  }
  return 0.0;
}

double payoff(std::span<const double> s, const OptionSpec& spec) { return payoff(summarize(s), spec); }

}  // namespace rhinar
