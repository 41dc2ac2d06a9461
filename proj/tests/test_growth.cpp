#include <cmath>
#include <sstream>

#include "doctest.h"
#include "fluctuaverse/errors.hpp"
#include "fluctuaverse/growth.hpp"
#include "fluctuaverse/relations.hpp"
#include "test_support.hpp"

using namespace fluctuaverse;
using fluctuaverse::testing::rel_close;

namespace {

const Registry& reg() {
  static const Registry r = Registry::with_defaults();
  return r;
}

double tau_pi() { return GrowthModel(reg(), reg().value("m_pi")).tau(); }

GrowthParams params(GrowthMode mode, double t_end_tau, double dt_tau, double n0) {
  GrowthParams p{reg().value("m_pi"), seconds(t_end_tau * tau_pi()), seconds(dt_tau * tau_pi())};
  p.mode = mode;
  p.n0 = n0;
  return p;
}

double rk4_final_error(double t_end_tau, double dt_tau) {
  const auto traj = integrate(reg(), params(GrowthMode::rk4, t_end_tau, dt_tau, 1.0));
  const double exact = 1.0 + t_end_tau / 2.0;
  return std::abs(std::sqrt(traj.back().n) - exact) / exact;
}

}  // namespace

TEST_SUITE("growth") {
  TEST_CASE("closed form") {
    const Quantity m_pi = reg().value("m_pi");
    CHECK(rel_close(tau_pi(), 4.717792401682505e-24, 1e-12));
    const double root = exact_root_n(reg(), seconds(1e17), m_pi);
    CHECK(rel_close(root, 1.0598177228436019e+40, 1e-12));
    CHECK(dex_gap(dimensionless(root), dimensionless(1e40)) <= 0.1);
    CHECK(exact_root_n(reg(), seconds(0.0), m_pi) == 0.0);
    CHECK(exact_root_n(reg(), seconds(0.0), m_pi, 16.0) == 4.0);
    CHECK(exact_root_n(reg(), seconds(2.0 * tau_pi()), m_pi, 16.0) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK_THROWS_AS(exact_root_n(reg(), seconds(-1.0), m_pi), DomainError);
    CHECK_THROWS_AS(exact_root_n(reg(), grams(1.0), m_pi), DimensionError);
  }

  TEST_CASE("exact trajectory skips the singular start and hits t_end") {
    const auto traj = integrate(reg(), params(GrowthMode::exact, 10.0, 3.0, 0.0));
    REQUIRE(traj.size() == 4);
    CHECK(traj.front().t == doctest::Approx(3.0 * tau_pi()));
    CHECK(traj.back().t == doctest::Approx(10.0 * tau_pi()).epsilon(1e-15));
    CHECK(traj.back().n == doctest::Approx(25.0).epsilon(1e-14));

    const auto with_n0 = integrate(reg(), params(GrowthMode::exact, 10.0, 3.0, 4.0));
    REQUIRE(with_n0.size() == 5);
    CHECK(with_n0.front().t == 0.0);
    CHECK(with_n0.front().n == 4.0);
  }

  TEST_CASE("stride keeps the final step") {
    auto p = params(GrowthMode::rk4, 10.0, 1.0, 1.0);
    p.stride = 4;
    const auto traj = integrate(reg(), p);
    REQUIRE(traj.size() == 4);  // steps 0, 4, 8, 10
    CHECK(traj.back().t == doctest::Approx(10.0 * tau_pi()).epsilon(1e-15));
  }

  TEST_CASE("rk4 matches the closed form to 1e-6 at t_end = 1e6 tau") {
    CHECK(rk4_final_error(1e6, 1.0) <= 1e-6);
    CHECK(rk4_final_error(1e6, 5.0) <= 1e-6);
  }

  TEST_CASE("rk4 converges at fourth order") {
    const double coarse = rk4_final_error(4.0, 0.5);
    const double fine = rk4_final_error(4.0, 0.25);
    REQUIRE(fine > 0.0);
    const double ratio = coarse / fine;
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
  }

  TEST_CASE("local Hubble rate is 2/t for the singular start") {
    const auto traj = integrate(reg(), params(GrowthMode::exact, 1e6, 1e4, 0.0));
    for (const auto& p : traj) CHECK(rel_close(p.hubble, 2.0 / p.t, 1e-12));

    const GrowthModel model(reg(), reg().value("m_pi"));
    const double root = model.exact_root_n(1e17);
    const auto today = model.point(1e17, root * root);
    CHECK(rel_close(today.hubble, 2e-17, 1e-12));
    const Relations rel(reg());
    CHECK(dex_gap(per_second(today.hubble), rel.hubble_from_pion(reg().value("m_pi"))) <= 0.5);
  }

  TEST_CASE("acceleration identity R'' = H^2 R / 2") {
    const GrowthModel model(reg(), reg().value("m_pi"));
    CHECK(rel_close(model.exact_acceleration(), 4.1501679525459429e-7, 1e-12));
    CHECK(model.exact_acceleration() > 0.0);

    for (double n0 : {0.0, 1.0, 1e6}) {
      INFO("n0 = " << n0);
      const auto traj = integrate(reg(), params(GrowthMode::exact, 1e6, 1e3, n0));
      CHECK(check_acceleration(traj) <= 1e-6);
    }
    // Uneven final step.
    CHECK(check_acceleration(integrate(reg(), params(GrowthMode::exact, 1000.5, 10.0, 0.0))) <= 1e-6);
    const auto traj = integrate(reg(), params(GrowthMode::exact, 10.0, 5.0, 0.0));
    CHECK_THROWS_AS(check_acceleration(traj), DomainError);
  }

  TEST_CASE("stochastic ensemble mean tracks the closed form") {
    auto p = params(GrowthMode::stochastic, 100.0, 0.1, 100.0);
    p.ensemble_size = 256;
    p.seed = 7;
    const auto result = simulate_stochastic(reg(), p);
    REQUIRE(result.members.size() == 256);
    REQUIRE(result.moments.size() == result.members.front().size());
    const auto& last = result.moments.back();
    const double exact = 10.0 + 50.0;
    INFO("mean sqrt N = " << last.mean_root_n << " se = " << last.stderr_root_n);
    CHECK(last.stderr_root_n > 0.0);
    CHECK(std::abs(last.mean_root_n - exact) <= 3.0 * last.stderr_root_n);
    // Spread grows with time.
    CHECK(result.moments.front().std_n == 0.0);
    for (std::size_t i = 100; i < result.moments.size(); i += 100) {
      CHECK(result.moments[i].std_n > result.moments[i - 100].std_n);
    }
    CHECK(result.mean_trajectory.back().n == last.mean_n);
  }

  TEST_CASE("stochastic runs are reproducible per seed") {
    auto p = params(GrowthMode::stochastic, 20.0, 0.1, 100.0);
    p.ensemble_size = 8;
    p.seed = 99;
    const auto a = simulate_stochastic(reg(), p);
    const auto b = simulate_stochastic(reg(), p);
    for (std::size_t k = 0; k < a.members.size(); ++k) {
      for (std::size_t i = 0; i < a.members[k].size(); ++i) CHECK(a.members[k][i].n == b.members[k][i].n);
    }
    p.seed = 100;
    const auto c = simulate_stochastic(reg(), p);
    CHECK(c.members.front().back().n != a.members.front().back().n);
    // Member k uses seed + k.
    CHECK(c.members[0].back().n == a.members[1].back().n);
  }

  TEST_CASE("stochastic step too large for N") {
    auto p = params(GrowthMode::stochastic, 10.0, 1.0, 1.0);
    CHECK_THROWS_AS(simulate_stochastic(reg(), p), StabilityError);
  }

  TEST_CASE("overflow surfaces as IntegrationError") {
    const GrowthModel model(reg(), grams(1e200));
    GrowthParams p{grams(1e200), seconds(1e80 * model.tau()), seconds(1e79 * model.tau())};
    p.n0 = 1.0;
    CHECK_THROWS_AS(integrate(reg(), p), IntegrationError);
    p.mode = GrowthMode::rk4;
    CHECK_THROWS_AS(integrate(reg(), p), IntegrationError);
  }

  TEST_CASE("invalid parameters") {
    CHECK_THROWS_AS(validate(params(GrowthMode::rk4, 10.0, 1.0, 0.0)), ConfigError);
    CHECK_THROWS_AS(validate(params(GrowthMode::stochastic, 10.0, 1.0, 0.5)), ConfigError);
    CHECK_THROWS_AS(validate(params(GrowthMode::exact, 1.0, 2.0, 0.0)), ConfigError);
    CHECK_THROWS_AS(validate(params(GrowthMode::exact, 10.0, -1.0, 0.0)), ConfigError);
    CHECK_THROWS_AS(validate(params(GrowthMode::exact, 10.0, 1.0, -1.0)), ConfigError);
    CHECK_THROWS_AS(validate(params(GrowthMode::exact, 1e9, 1.0, 0.0)), ConfigError);
    auto p = params(GrowthMode::exact, 10.0, 1.0, 0.0);
    p.stride = 0;
    CHECK_THROWS_AS(validate(p), ConfigError);
    p.stride = 1;
    p.mass = centimeters(1.0);
    CHECK_THROWS_AS(validate(p), ConfigError);
    CHECK_THROWS_AS(parse_growth_mode("euler"), ConfigError);
    CHECK(parse_growth_mode("rk4") == GrowthMode::rk4);
    CHECK_THROWS_AS(integrate(reg(), params(GrowthMode::stochastic, 10.0, 0.1, 100.0)), ConfigError);
  }

  TEST_CASE("trajectory csv") {
    std::ostringstream out;
    write_trajectory_csv(out, integrate(reg(), params(GrowthMode::exact, 2.0, 1.0, 0.0)));
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,N,R,H_local");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 2);
  }
}
