// Expected values are frozen from tests/oracles/cgs_oracle.py (40-digit
// mpmath on the shipped registry defaults).

#include <cmath>
#include <functional>

#include "doctest.h"
#include "fluctuaverse/errors.hpp"
#include "fluctuaverse/relations.hpp"
#include "test_support.hpp"

using namespace fluctuaverse;
using fluctuaverse::testing::MagnitudeGen;
using fluctuaverse::testing::rel_close;

namespace {

struct Fixture {
  Registry reg = Registry::with_defaults();
  Relations rel{reg};
  Quantity m_e = reg.value("m_e");
  Quantity m_p = reg.value("m_p");
  Quantity m_pi = reg.value("m_pi");
  Quantity hbar = reg.value("hbar");
  Quantity e = reg.value("e");
};

}  // namespace

TEST_SUITE("relations") {
  TEST_CASE_FIXTURE(Fixture, "compton scales") {
    const auto el = rel.compton_scales(m_e);
    CHECK(rel_close(el.length.value(), 3.8632261226443567e-11, 1e-12));
    CHECK(rel_close(el.time.value(), 1.2886011082869769e-21, 1e-12));
    CHECK(el.length.dim() == dims::kLength);
    CHECK(el.time.dim() == dims::kTime);
    const auto pi = rel.compton_scales(m_pi);
    CHECK(rel_close(pi.length.value(), 1.414394162024415e-13, 1e-12));
    CHECK(rel_close(pi.time.value(), 4.717792401682505e-24, 1e-12));
    CHECK(dex_gap(el.length, centimeters(1e-11)) <= 1.0);
    CHECK_THROWS_AS(rel.compton_scales(centimeters(1.0)), DimensionError);
    CHECK_THROWS_AS(rel.compton_scales(grams(0.0)), DomainError);
  }

  TEST_CASE_FIXTURE(Fixture, "kerr-newman horizon of the electron is a naked singularity") {
    const auto h = rel.kerr_newman_horizon(m_e, e, 0.5 * hbar);
    CHECK(rel_close(h.real_part.value(), 6.7638450094147711e-56, 1e-12));
    CHECK(rel_close(h.imag_part.value(), 1.9316130613221783e-11, 1e-12));
    CHECK(h.imag_part.value() >= 0.0);
    CHECK(dex_gap(h.imag_part, hbar / (2.0 * m_e * rel.c())) <= 0.5);
  }

  TEST_CASE_FIXTURE(Fixture, "uncharged non-rotating mass is a classical black hole") {
    const Quantity zero_q(0.0, dims::kCharge);
    const Quantity zero_l(0.0, dims::kAngularMomentum);
    CHECK_THROWS_AS(rel.kerr_newman_horizon(m_e, zero_q, zero_l), RegimeError);
    CHECK_THROWS_AS(rel.kerr_newman_horizon(grams(1e33), zero_q, zero_l), RegimeError);
    CHECK_THROWS_AS(rel.kerr_newman_horizon(m_e, grams(1.0), zero_l), DimensionError);
  }

  TEST_CASE_FIXTURE(Fixture, "zitterbewegung charge energy carries a factor 2") {
    const auto r = rel.zitter_charge_energy(m_e);
    CHECK(rel_close(r.lhs.value(), 1.63743456872e-6, 1e-12));
    CHECK(rel_close(r.rhs.value(), 8.1871728436e-7, 1e-12));
    CHECK(r.lhs.dim() == dims::kEnergy);
    CHECK(r.gap_dex == doctest::Approx(0.3010299956639812).epsilon(1e-12));
    CHECK(r.passed());
    CHECK(rel.zitter_charge_energy(m_pi).gap_dex == doctest::Approx(0.3010299956639812).epsilon(1e-12));
    CHECK_FALSE(rel.zitter_charge_energy(m_e, 0.2).passed());
  }

  TEST_CASE_FIXTURE(Fixture, "electromagnetic to gravitational ratio") {
    const auto ep = rel.em_grav_ratio(m_e, m_p);
    CHECK(rel_close(ep.lhs.value(), 2.268152901007048e+39, 1e-12));
    CHECK(ep.lhs.dim().is_dimensionless());
    CHECK(ep.rhs.value() == 1e40);
    CHECK(ep.gap_dex == doctest::Approx(0.64432767207835122).epsilon(1e-12));
    CHECK(ep.passed());

    const auto ee = rel.em_grav_ratio(m_e, m_e);
    CHECK(rel_close(ee.lhs.value(), 4.1657918579259978e+42, 1e-12));
    CHECK(ee.gap_dex == doctest::Approx(2.6196975668089362).epsilon(1e-12));
    CHECK_FALSE(ee.passed());
  }

  TEST_CASE_FIXTURE(Fixture, "space levels") {
    const Quantity l0 = rel.space_level(m_e, 0);
    CHECK(rel_close(l0.value(), 7.462258037340875e-22, 1e-12));
    CHECK(l0.dim() == dims::kArea);
    for (unsigned n = 1; n < 20; ++n) {
      CHECK((rel.space_level(m_e, n) / l0).value() == doctest::Approx(2.0 * n + 1.0).epsilon(1e-14));
    }
    const Quantity unit = pow(rel.compton_scales(m_e).length, Rational(2));
    CHECK(((rel.space_level(m_e, 3) - rel.space_level(m_e, 0)) / unit).value() == doctest::Approx(3.0));
  }

  TEST_CASE_FIXTURE(Fixture, "zero-point field energy of a Compton region") {
    const auto pi = rel.zpf_energy_of_region(rel.compton_scales(m_pi).length);
    CHECK(rel_close(pi.mass.value(), m_pi.value(), 1e-12));
    CHECK(pi.mass.dim() == dims::kMass);
    const auto el = rel.zpf_energy_of_region(rel.compton_scales(m_e).length);
    CHECK(rel_close(el.energy.value(), 8.1871728436e-7, 1e-12));
    CHECK(el.energy.dim() == dims::kEnergy);
  }

  TEST_CASE_FIXTURE(Fixture, "curvature fluctuation") {
    const Quantity dr = rel.curvature_fluctuation(centimeters(1e-11));
    CHECK(rel_close(dr.value(), 1.616, 1e-12));
    CHECK(dr.dim() == dims::kInverseArea);
    CHECK(dex_gap(dr, Quantity(1.0, dims::kInverseArea)) <= 2.0);
    CHECK(rel_close(rel.curvature_fluctuation(reg.value("L_star")).value(), 3.8292814429957847e+65, 1e-12));
  }

  TEST_CASE_FIXTURE(Fixture, "universe mass") {
    const auto r = rel.universe_mass(dimensionless(1e80), m_pi);
    CHECK(rel_close(r.lhs.value(), 2.488e55, 1e-12));
    CHECK(r.rhs.value() == 1e56);
    CHECK(r.gap_dex == doctest::Approx(0.60414962398121891).epsilon(1e-12));
    CHECK(r.passed());
    CHECK_THROWS_AS(rel.universe_mass(dimensionless(0.0), m_pi), DomainError);
  }

  TEST_CASE_FIXTURE(Fixture, "schwarzschild radius and linearity") {
    const Quantity r = rel.schwarzschild_radius(grams(1e56));
    CHECK(rel_close(r.value(), 7.4254528591665068e+27, 1e-12));
    CHECK(dex_gap(r, reg.value("R_obs")) == doctest::Approx(0.12927705470574738).epsilon(1e-10));
    CHECK(rel.schwarzschild_radius(grams(2e56)).value() == 2.0 * r.value());
  }

  TEST_CASE_FIXTURE(Fixture, "eddington length") {
    const auto r = rel.eddington_length(centimeters(1e28), dimensionless(1e80));
    CHECK(rel_close(r.lhs.value(), 1e-12, 1e-14));
    CHECK(rel_close(r.rhs.value(), 1.414394162024415e-13, 1e-12));
    CHECK(r.gap_dex == doctest::Approx(0.84942954489733028).epsilon(1e-10));
    CHECK(r.passed());
    const auto quad = rel.eddington_length(centimeters(1e28), dimensionless(4e80));
    CHECK(quad.lhs.value() == doctest::Approx(r.lhs.value() / 2.0).epsilon(1e-15));
  }

  TEST_CASE_FIXTURE(Fixture, "age from root N") {
    const auto r = rel.age_root_n(seconds(1e17), m_pi);
    CHECK(rel_close(r.lhs.value(), 4.2392708913744076e+40, 1e-12));
    CHECK(r.gap_dex == doctest::Approx(0.62729116907357214).epsilon(1e-10));
    CHECK(r.passed());
    CHECK(r.lhs.value() / rel.age_root_n(seconds(5e16), m_pi).lhs.value() == doctest::Approx(2.0));
  }

  TEST_CASE_FIXTURE(Fixture, "hubble constant from the pion and back") {
    const Quantity h = rel.hubble_from_pion(m_pi);
    CHECK(rel_close(h.value(), 2.7686243846203755e-17, 1e-12));
    CHECK(h.dim() == dims::kInverseTime);
    CHECK(dex_gap(h, reg.value("H_obs")) == doctest::Approx(1.0862381824268322).epsilon(1e-10));
    CHECK(rel.hubble_from_pion(2.0 * m_pi).value() == doctest::Approx(8.0 * h.value()).epsilon(1e-14));

    CHECK(rel_close(rel.pion_from_hubble(h).value(), m_pi.value(), 1e-12));
    const Quantity from_obs = rel.pion_from_hubble(reg.value("H_obs"));
    CHECK(rel_close(from_obs.value(), 1.0808638250491155e-25, 1e-12));
    CHECK(dex_gap(from_obs, m_pi) == doctest::Approx(0.36207939414227741).epsilon(1e-10));
  }

  TEST_CASE_FIXTURE(Fixture, "cosmological constant") {
    CHECK(rel_close(rel.cosmological_constant(reg.value("H_obs")).value(), 5.1529e-36, 1e-12));
    const Quantity lam = rel.cosmological_constant(rel.hubble_from_pion(m_pi));
    CHECK(rel_close(lam.value(), 7.6652809831145529e-34, 1e-12));
    CHECK(lam.dim() == dims::kInverseTimeSquared);
  }

  TEST_CASE_FIXTURE(Fixture, "background radiation wavelength") {
    const Quantity w = rel.cmb_wavelength(seconds(1e-11));
    CHECK(rel_close(w.value(), 0.2998, 1e-12));
    CHECK(dex_gap(w, centimeters(0.3)) <= 0.1);
  }

  TEST_CASE_FIXTURE(Fixture, "age from the pion mass") {
    const Quantity t = rel.age_from_pion(m_pi);
    CHECK(rel_close(t.value(), 18059510086578910.0, 1e-12));
    CHECK(dex_gap(t, seconds(1e17)) == doctest::Approx(0.74329403528393614).epsilon(1e-10));
    CHECK((t * 2.0 * rel.hubble_from_pion(m_pi)).value() == doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE_FIXTURE(Fixture, "thermal spacing equals the Compton length") {
    CHECK(rel.thermal_spacing(m_e) == rel.compton_scales(m_e).length);
    CHECK(rel_close(rel.thermal_spacing(m_e).value(), 3.8632261226443567e-11, 1e-12));
  }

  TEST_CASE_FIXTURE(Fixture, "ground state spread") {
    const Quantity omega = per_second(7.7603534062559242e+20);
    const Quantity dx = rel.ground_state_spread(m_e, omega);
    CHECK(rel_close(dx.value(), 3.8632261226443567e-11, 1e-12));
    CHECK(rel.ground_state_spread(m_e, 4.0 * omega).value() == doctest::Approx(dx.value() / 2.0).epsilon(1e-15));
  }

  TEST_CASE_FIXTURE(Fixture, "report verdict follows the tolerance") {
    const auto r = make_report("x", grams(1.0), grams(10.0), 1.0, "a");
    CHECK(r.gap_dex == 1.0);
    CHECK(r.passed());
    CHECK_FALSE(make_report("x", grams(1.0), grams(10.0), 0.99, "a").passed());
    CHECK_THROWS_AS(make_report("x", grams(1.0), centimeters(1.0), 1.0, "a"), DimensionError);
    CHECK_THROWS_AS(make_report("x", grams(1.0), grams(1.0), 0.0, "a"), DomainError);
  }

  TEST_CASE_FIXTURE(Fixture, "property: every single-input relation is strictly monotone") {
    using Fn = std::function<double(double)>;
    struct Case {
      const char* name;
      Fn f;
      bool increasing;
    };
    const std::vector<Case> cases{
        {"compton length", [&](double m) { return rel.compton_scales(grams(m)).length.value(); }, false},
        {"zpf mass", [&](double l) { return rel.zpf_energy_of_region(centimeters(l)).mass.value(); }, false},
        {"curvature", [&](double l) { return rel.curvature_fluctuation(centimeters(l)).value(); }, false},
        {"schwarzschild", [&](double m) { return rel.schwarzschild_radius(grams(m)).value(); }, true},
        {"hubble", [&](double m) { return rel.hubble_from_pion(grams(m)).value(); }, true},
        {"pion", [&](double h) { return rel.pion_from_hubble(per_second(h)).value(); }, true},
        {"lambda", [&](double h) { return rel.cosmological_constant(per_second(h)).value(); }, true},
        {"cmb", [&](double t) { return rel.cmb_wavelength(seconds(t)).value(); }, true},
        {"age", [&](double m) { return rel.age_from_pion(grams(m)).value(); }, false},
        {"thermal", [&](double m) { return rel.thermal_spacing(grams(m)).value(); }, false},
    };
    MagnitudeGen gen(21);
    for (const auto& c : cases) {
      for (int i = 0; i < 200; ++i) {
        const double x = gen(-30, 20);
        const double y = x * (1.0 + gen(-6, 0));
        INFO(c.name << " at " << x);
        if (c.increasing) {
          CHECK(c.f(x) < c.f(y));
        } else {
          CHECK(c.f(x) > c.f(y));
        }
      }
    }
  }

  TEST_CASE("run_all defaults: every relation passes, sides homogeneous, order fixed") {
    const auto reg = Registry::with_defaults();
    const auto reports = run_all(reg);
    REQUIRE(reports.size() >= 14);
    REQUIRE(reports.size() == relation_catalog().size());
    for (std::size_t i = 0; i < reports.size(); ++i) {
      INFO(reports[i].id);
      CHECK(reports[i].id == relation_catalog()[i].id);
      CHECK(reports[i].lhs.dim() == reports[i].rhs.dim());
      CHECK(reports[i].passed());
      CHECK_FALSE(reports[i].anchor.empty());
      CHECK(reports[i].passed() == (reports[i].gap_dex <= reports[i].tolerance_dex));
    }
  }

  TEST_CASE("run_all tolerance overrides") {
    const auto reg = Registry::with_defaults();
    const auto base = run_all(reg);
    const auto same = run_all(reg, {});
    REQUIRE(base.size() == same.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
      CHECK(base[i].gap_dex == same[i].gap_dex);
      CHECK(base[i].verdict == same[i].verdict);
    }

    const auto tight = run_all(reg, {{"em_grav_ratio", 0.1}});
    for (std::size_t i = 0; i < base.size(); ++i) {
      if (tight[i].id == "em_grav_ratio") {
        CHECK_FALSE(tight[i].passed());
        CHECK(tight[i].tolerance_dex == 0.1);
      } else {
        CHECK(tight[i].verdict == base[i].verdict);
        CHECK(tight[i].tolerance_dex == base[i].tolerance_dex);
      }
    }
    CHECK_THROWS_AS(run_all(reg, {{"no_such_relation", 1.0}}), ConfigError);
    CHECK_THROWS_AS(run_all(reg, {{"em_grav_ratio", -1.0}}), ConfigError);
  }

  TEST_CASE("consistency chain: N m_pi -> GM/c^2 -> R/sqrt(N) ~ pion Compton length") {
    const auto reg = Registry::with_defaults();
    const Relations rel(reg);
    const auto mass = rel.universe_mass(reg.value("N_obs"), reg.value("m_pi")).lhs;
    const Quantity radius = rel.schwarzschild_radius(mass);
    const auto edd = rel.eddington_length(radius, reg.value("N_obs"));
    CHECK(edd.gap_dex == doctest::Approx(0.116002866210364).epsilon(1e-9));
    CHECK(edd.gap_dex <= 1.5);
  }
}
