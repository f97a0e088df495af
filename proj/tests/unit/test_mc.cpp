#include <doctest.h>

#include <cmath>
#include <random>

#include "rhinar/errors.hpp"
#include "rhinar/mc.hpp"
#include "rhinar/rng.hpp"

using namespace rhinar;

TEST_CASE("confidence interval examples") {
  const std::vector<double> constant(10, 3.5);
  const auto c = confidence_interval(constant);
  CHECK(c.mean == 3.5);
  CHECK(c.std_error == 0.0);
  CHECK(c.ci_low == 3.5);
  CHECK(c.ci_high == 3.5);

  const std::vector<double> two{0.0, 2.0};
  const auto t = confidence_interval(two);
  CHECK(t.mean == 1.0);
  CHECK(t.std_error == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(t.halfwidth() == doctest::Approx(kZ95).epsilon(1e-15));

  CHECK_THROWS_AS((void)confidence_interval(std::vector<double>{1.0}), ConfigError);
}

TEST_CASE("merging accumulators equals one pass") {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> z(5, 2);
  MomentAccumulator whole, a, b;
  for (int i = 0; i < 1000; ++i) {
    const double x = z(gen);
    whole.add(x);
    (i < 377 ? a : b).add(x);
  }
  a.merge(b);
  CHECK(a.n == whole.n);
  CHECK(a.mean == doctest::Approx(whole.mean).epsilon(1e-13));
  CHECK(a.variance() == doctest::Approx(whole.variance()).epsilon(1e-12));
  MomentAccumulator empty;
  empty.merge(whole);
  CHECK(empty.mean == whole.mean);
}

TEST_CASE("interval coverage on normal samples") {
  // 1000 repetitions of 10^4 unit normals from independent Philox paths.
  int covered = 0;
  const int reps = 1000;
  for (int r = 0; r < reps; ++r) {
    MomentAccumulator acc;
    auto s = PathRng(99, static_cast<std::uint64_t>(r)).stream(0, Lane::Gaussian);
    for (int i = 0; i < 5000; ++i) {
      const double u1 = s.uniform(), u2 = s.uniform();
      const double rad = std::sqrt(-2.0 * std::log(u1));
      acc.add(rad * std::cos(2 * M_PI * u2));
      acc.add(rad * std::sin(2 * M_PI * u2));
    }
    const auto ci = confidence_interval(acc);
    covered += (ci.ci_low <= 0.0 && 0.0 <= ci.ci_high);
  }
  CHECK(std::abs(covered / double(reps) - 0.95) <= 0.02);
}

TEST_CASE("settings validation") {
  SimSettings s;
  s.n_paths = 1;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s = SimSettings{};
  s.tau = 0.5;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s = SimSettings{};
  s.classical_clamp = 0.7;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  CHECK(resolve_threads(3) == 3);
  CHECK(resolve_threads(0) >= 1);
}

TEST_CASE("run_samples is independent of the thread count") {
  auto factory = []() -> SampleFn {
    return [](std::uint64_t i, std::span<double> out) {
      auto s = PathRng(5, i).stream(0, Lane::Plus);
      out[0] = s.uniform();
      out[1] = out[0] * out[0];
    };
  };
  const auto one = run_samples(5000, 2, 1, factory);
  for (unsigned threads : {2u, 4u, 8u}) {
    const auto many = run_samples(5000, 2, threads, factory);
    for (std::size_t k = 0; k < 2; ++k) {
      CHECK(many[k].n == one[k].n);
      CHECK(many[k].mean == one[k].mean);
      CHECK(many[k].m2 == one[k].m2);
    }
  }
  auto failing = []() -> SampleFn {
    return [](std::uint64_t i, std::span<double>) {
      if (i == 3000) throw NumericalError("boom");
    };
  };
  CHECK_THROWS_AS((void)run_samples(5000, 1, 3, failing), NumericalError);
}

TEST_CASE("nearly zero intensity prices the intrinsic value") {
  ModelConfig c;
  c.nu = 1e7;  // mu ~ 1e-15: no events on any path
  c.v0 = 0.0;
  SimSettings s;
  s.tau = 64;
  s.n_paths = 2000;
  const std::vector<OptionSpec> specs{parse_option_spec("euro-call:90")};
  const auto r = run_pricing(c, s, specs);
  CHECK(r.estimates[0].mean == 10.0);
  CHECK(r.estimates[0].std_error == 0.0);
}

TEST_CASE("pricing invariants on shared paths") {
  SimSettings s;
  s.tau = 64;
  s.n_paths = 20000;
  s.n_threads = 2;
  std::vector<OptionSpec> specs;
  for (const char* t : {"euro-call:110", "ui-call:110:110", "euro-call:120", "ui-call:120:110", "do-put:80:90",
                        "do-put:90:90", "lb-call:80", "lb-call:90", "lb-call:100", "euro-put:100", "euro-call:100", "euro-call:0.0001"})
    specs.push_back(parse_option_spec(t));
  const auto r = run_pricing(ModelConfig{}, s, specs);
  const auto& e = r.estimates;
  CHECK(e[0].mean == e[1].mean);
  CHECK(e[2].mean == e[3].mean);
  CHECK(e[4].mean == 0.0);
  CHECK(e[5].mean == 0.0);
  CHECK(e[6].mean - e[7].mean == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(e[7].mean - e[8].mean == doctest::Approx(10.0).epsilon(1e-12));
  // C - P = S_T - K pathwise; a near-zero strike call estimates E[S_T] on the same paths.
  const double forward = e[11].mean + 0.0001;
  CHECK(e[10].mean - e[9].mean == doctest::Approx(forward - 100.0).epsilon(1e-9));
  CHECK(std::abs(forward - 100.0) < 4 * e[11].std_error);
}

TEST_CASE("convergence study seeds and ordering") {
  SimSettings s;
  s.n_paths = 500;
  const std::vector<OptionSpec> specs{parse_option_spec("euro-call:100")};
  const std::vector<double> taus{64, 16, 32};
  const std::vector<double> refs{9.4737};
  const auto rows = convergence_study(ModelConfig{}, s, taus, specs, refs);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].tau == 16);
  CHECK(rows[2].tau == 64);
  CHECK(rows[0].seed == tau_seed(s.master_seed, 16));
  CHECK(rows[0].seed != rows[1].seed);
  CHECK(rows[1].deviations[0] == doctest::Approx(rows[1].estimates[0].mean - 9.4737));
  const std::vector<double> wrong{1.0, 2.0};
  CHECK_THROWS_AS((void)convergence_study(ModelConfig{}, s, taus, specs, wrong), ConfigError);
}
