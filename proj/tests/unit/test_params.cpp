#include <doctest.h>

#include <cmath>

#include "oracle_values.hpp"
#include "rhinar/errors.hpp"
#include "rhinar/params.hpp"

using namespace rhinar;

TEST_CASE("beta from rho") {
  CHECK(solve_beta(-0.681) == doctest::Approx(27.5583).epsilon(0).scale(1).epsilon(1e-4 / 27.5583));
  CHECK(std::abs(solve_beta(-0.681) - oracle::kBeta) < 1e-12 * oracle::kBeta);
  CHECK(solve_beta(-1e-8) - 1.0 < 1e-6);
  CHECK(solve_beta(-1e-8) > 1.0);
  CHECK(solve_beta(0.0, true) == 1.0);

  // The root satisfies its defining quadratic and round-trips through rho_from_beta.
  for (double rho : {-0.05, -0.3, -0.681, -0.7}) {
    const double b = solve_beta(rho);
    CHECK(2 * rho * rho * (1 + b * b) == doctest::Approx((1 - b) * (1 - b)).epsilon(1e-12));
    CHECK(rho_from_beta(b) == doctest::Approx(rho).epsilon(1e-12));
  }
}

TEST_CASE("beta rejects rho outside the leverage range") {
  CHECK_THROWS_AS((void)solve_beta(0.0), ConfigError);
  CHECK_THROWS_AS((void)solve_beta(0.1), ConfigError);
  CHECK_THROWS_AS((void)solve_beta(-0.75), ConfigError);
  CHECK_THROWS_AS((void)solve_beta(-1.0 / std::sqrt(2.0)), ConfigError);
  CHECK_THROWS_AS((void)solve_beta(std::nan("")), ConfigError);
}

TEST_CASE("mu and xi") {
  CHECK(std::abs(derive_mu(0.331, 0.3156, 27.5583, 0.1) - 26.8592) < 1e-3);
  CHECK(derive_mu(1, 1, 1, 1) == 0.5);
  CHECK(derive_mu(0.331, 0.3156, oracle::kBeta, 0.1) == doctest::Approx(oracle::kMu).epsilon(1e-14));
  CHECK(nu_from_mu(oracle::kMu, 0.3156, oracle::kBeta, 0.1) == doctest::Approx(0.331).epsilon(1e-14));
  CHECK_THROWS_AS((void)derive_mu(0, 1, 1, 1), ConfigError);
  CHECK_THROWS_AS((void)derive_mu(1, -1, 1, 1), ConfigError);

  CHECK(std::abs(derive_xi(0.0392, 0.3156) - 0.124208) < 1e-6);
  CHECK(derive_xi(0.0, 0.3) == 0.0);
  CHECK(derive_xi(0.3, 0.3) == 1.0);
  CHECK_THROWS_AS((void)derive_xi(0.1, 0.0), ConfigError);
  CHECK_THROWS_AS((void)derive_xi(-0.1, 0.3), ConfigError);
}

TEST_CASE("time-scaled quantities") {
  const auto unit = derive_time_scaled(1, 1, 0.62, 1);
  CHECK(unit.a_tau == 0.0);
  CHECK(unit.mu_tau == 1.0);

  const auto ts = derive_time_scaled(0.1, 320, 0.62, oracle::kMu);
  CHECK(ts.a_tau == doctest::Approx(oracle::kATau320).epsilon(1e-15));
  CHECK(ts.mu_tau == doctest::Approx(oracle::kMuTau320).epsilon(1e-14));
  CHECK(derive_time_scaled(0.1, 640, 0.62, 1).a_tau > ts.a_tau);

  CHECK_THROWS_AS((void)derive_time_scaled(2, 1, 0.62, 1), ConfigError);
  CHECK_THROWS_AS((void)derive_time_scaled(0.1, 0.5, 0.62, 1), ConfigError);
}

TEST_CASE("derive at the default configuration") {
  const DerivedParams d = derive(ModelConfig{}, 320);
  CHECK(d.n_steps == 320);
  CHECK(d.tau == 320.0);
  CHECK(d.beta == doctest::Approx(oracle::kBeta).epsilon(1e-14));
  CHECK(d.mu == doctest::Approx(oracle::kMu).epsilon(1e-13));
  CHECK(d.xi == doctest::Approx(oracle::kXi).epsilon(1e-15));
  CHECK(d.price_scale() == doctest::Approx(oracle::kCTau320).epsilon(1e-12));
}

TEST_CASE("derive uses an effective tau for short maturities") {
  ModelConfig c;
  c.maturity = 0.25;
  const DerivedParams d = derive(c, 321);
  CHECK(d.n_steps == 80);
  CHECK(d.tau == doctest::Approx(320.0));
}

TEST_CASE("alpha = 1 needs a classical clamp") {
  ModelConfig c;
  c.alpha = 1.0;
  CHECK_THROWS_AS((void)derive(c, 320), ConfigError);
  CHECK_THROWS_AS((void)derive(c, 320, 0.6), ConfigError);
  const DerivedParams d = derive(c, 320, 1e-9);
  CHECK(d.alpha == doctest::Approx(1.0 - 1e-9).epsilon(1e-15));
}

TEST_CASE("config validation names the field") {
  auto message = [](auto mutate) {
    ModelConfig c;
    mutate(c);
    try {
      c.validate();
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message([](ModelConfig& c) { c.alpha = 0.4; }).rfind("alpha", 0) == 0);
  CHECK(message([](ModelConfig& c) { c.gamma = 0; }).rfind("gamma", 0) == 0);
  CHECK(message([](ModelConfig& c) { c.rho = 0; }).rfind("rho", 0) == 0);
  CHECK(message([](ModelConfig& c) { c.nu = -1; }).rfind("nu", 0) == 0);
  CHECK(message([](ModelConfig& c) { c.maturity = 1.5; }).rfind("maturity", 0) == 0);
  CHECK(message([](ModelConfig& c) {
          c.rho = 0;
          c.allow_zero_rho = true;
        }).empty());
}

TEST_CASE("format_sig") {
  CHECK(format_sig(9.47371319) == "9.47371");
  CHECK(format_sig(100.0) == "100");
  CHECK(format_sig(1e-9) == "1e-09");
}
