#include <doctest.h>

#include <random>
#include <vector>

#include "rhinar/errors.hpp"
#include "rhinar/payoffs.hpp"

using namespace rhinar;

namespace {

OptionSpec spec(OptionKind k, double K, std::optional<double> B = std::nullopt) {
  OptionSpec s;
  s.kind = k;
  s.strike = K;
  s.barrier = B;
  return s;
}

std::vector<double> random_path(std::mt19937_64& gen, std::size_t n) {
  std::normal_distribution<double> z(0.0, 0.02);
  std::vector<double> s(n + 1, 100.0);
  for (std::size_t i = 1; i <= n; ++i) s[i] = s[i - 1] * std::exp(z(gen));
  return s;
}

}  // namespace

TEST_CASE("constant path") {
  const std::vector<double> flat(11, 100.0);
  CHECK(payoff(flat, spec(OptionKind::EuropeanCall, 90)) == 10.0);
  CHECK(payoff(flat, spec(OptionKind::EuropeanPut, 90)) == 0.0);
  CHECK(payoff(flat, spec(OptionKind::AsianPut, 110)) == 10.0);
  CHECK(payoff(flat, spec(OptionKind::LookbackCall, 110)) == -10.0);
  OptionSpec floored = spec(OptionKind::LookbackCall, 110);
  floored.floored = true;
  CHECK(payoff(flat, floored) == 0.0);
}

TEST_CASE("path statistics include the initial point") {
  const std::vector<double> s{100, 120, 80, 110};
  const PathSummary p = summarize(s);
  CHECK(p.terminal == 110);
  CHECK(p.average == 102.5);
  CHECK(p.max == 120);
  CHECK(p.min == 80);
  CHECK(payoff(p, spec(OptionKind::AsianCall, 100)) == 2.5);
  CHECK(payoff(p, spec(OptionKind::LookbackPut, 100)) == 20.0);
  CHECK(payoff(p, spec(OptionKind::UpInCall, 100, 120)) == 10.0);   // touching the barrier counts
  CHECK(payoff(p, spec(OptionKind::UpInCall, 100, 121)) == 0.0);
  CHECK(payoff(p, spec(OptionKind::DownOutPut, 115, 80)) == 0.0);   // touching knocks out
  CHECK(payoff(p, spec(OptionKind::DownOutPut, 115, 79)) == 5.0);
}

TEST_CASE("barrier identities hold on every path") {
  std::mt19937_64 gen(1);
  for (int i = 0; i < 2000; ++i) {
    const auto s = random_path(gen, 64);
    for (double K : {110.0, 120.0})
      CHECK(payoff(s, spec(OptionKind::UpInCall, K, 110)) == payoff(s, spec(OptionKind::EuropeanCall, K)));
    for (double K : {80.0, 90.0}) CHECK(payoff(s, spec(OptionKind::DownOutPut, K, 90)) == 0.0);
    const double l80 = payoff(s, spec(OptionKind::LookbackCall, 80));
    CHECK(l80 - payoff(s, spec(OptionKind::LookbackCall, 90)) == doctest::Approx(10.0).epsilon(1e-14));
  }
}

TEST_CASE("spec parsing and labels") {
  const OptionSpec a = parse_option_spec("ui-call:110:105");
  CHECK(a.kind == OptionKind::UpInCall);
  CHECK(a.strike == 110);
  CHECK(*a.barrier == 105);
  CHECK(a.label() == "ui-call:110:105");
  CHECK(parse_option_spec("euro-put:97.5").label() == "euro-put:97.5");
  for (const char* tok : {"euro-call", "euro-put", "asian-call", "asian-put", "lb-call", "lb-put"})
    CHECK(std::string(kind_token(parse_option_spec(std::string(tok) + ":100").kind)) == tok);

  CHECK_THROWS_AS((void)parse_option_spec("euro-call"), ConfigError);
  CHECK_THROWS_AS((void)parse_option_spec("euro-call:abc"), ConfigError);
  CHECK_THROWS_AS((void)parse_option_spec("euro-call:100:90"), ConfigError);
  CHECK_THROWS_AS((void)parse_option_spec("ui-call:100"), ConfigError);
  CHECK_THROWS_AS((void)parse_option_spec("do-put:100:-1"), ConfigError);
  CHECK_THROWS_AS((void)parse_option_spec("digital:100"), ConfigError);
  CHECK_THROWS_AS((void)parse_option_spec("euro-call:0"), ConfigError);
}
