#include "fluctuaverse/relations.hpp"

#include <algorithm>
#include <functional>

#include <fmt/format.h>

#include "fluctuaverse/errors.hpp"

namespace fluctuaverse {

namespace {

void require_positive(const Quantity& q, const Dimension& dim, std::string_view what) {
  require_dimension(q, dim, what);
  if (!(q.value() > 0.0)) throw DomainError(fmt::format("{} must be positive, got {}", what, q.value()));
}

}  // namespace

std::string_view to_string(Verdict v) { return v == Verdict::pass ? "pass" : "fail"; }

RelationReport make_report(std::string id, Quantity lhs, Quantity rhs, double tolerance_dex, std::string anchor) {
  if (!(tolerance_dex > 0.0)) {
    throw DomainError(fmt::format("tolerance for '{}' must be positive, got {}", id, tolerance_dex));
  }
  const double gap = dex_gap(lhs, rhs);
  const Verdict verdict = gap <= tolerance_dex ? Verdict::pass : Verdict::fail;
  return {std::move(id), lhs, rhs, gap, tolerance_dex, verdict, std::move(anchor)};
}

Relations::Relations(const Registry& registry)
    : g_(registry.value("G")),
      c_(registry.value("c")),
      hbar_(registry.value("hbar")),
      e_(registry.value("e")),
      planck_length_(registry.value("L_star")),
      pion_mass_(registry.value("m_pi")),
      observed_count_(registry.value("N_obs")),
      observed_mass_(registry.value("M_obs")) {
  require_dimension(g_, dims::kGravitational, "G");
  require_dimension(c_, dims::kVelocity, "c");
  require_dimension(hbar_, dims::kAction, "hbar");
  require_dimension(e_, dims::kCharge, "e");
  require_dimension(planck_length_, dims::kLength, "L_star");
}

ComptonScales Relations::compton_scales(const Quantity& m) const {
  require_positive(m, dims::kMass, "mass");
  const Quantity length = hbar_ / (m * c_);
  return {length, length / c_};
}

HorizonResult Relations::kerr_newman_horizon(const Quantity& mass, const Quantity& charge,
                                             const Quantity& angular_momentum) const {
  require_positive(mass, dims::kMass, "mass");
  require_dimension(charge, dims::kCharge, "charge");
  require_dimension(angular_momentum, dims::kAngularMomentum, "angular momentum");

  const Quantity c2 = c_ * c_;
  const Quantity c4 = c2 * c2;
  const Quantity a = angular_momentum / (mass * c_);
  // G Q^2/c^4 is the Gaussian-unit charge length squared; the geometrized
  // G^2 Q^2/c^8 is not an area in CGS.
  const Quantity charge_term = (g_ * charge * charge) / c4;
  const Quantity mass_term = (g_ * g_ * mass * mass) / c4;
  const Quantity discriminant = charge_term + a * a - mass_term;
  if (discriminant.value() < 0.0) {
    throw RegimeError(fmt::format(
        "Kerr-Newman discriminant is negative ({} cm^2): classical black hole, not a naked singularity",
        discriminant.value()));
  }
  return {g_ * mass / c2, sqrt(discriminant)};
}

RelationReport Relations::zitter_charge_energy(const Quantity& m, double tolerance_dex) const {
  require_positive(m, dims::kMass, "mass");
  const Quantity rest_energy = m * c_ * c_;
  const Quantity shift = hbar_ / (2.0 * rest_energy);
  return make_report("zitter_charge_energy", hbar_ / shift, rest_energy, tolerance_dex,
                     "hbar/a0 = m c^2 with a0 = hbar/(2 m c^2)");
}

RelationReport Relations::em_grav_ratio(const Quantity& m1, const Quantity& m2, double tolerance_dex) const {
  require_positive(m1, dims::kMass, "m1");
  require_positive(m2, dims::kMass, "m2");
  return make_report("em_grav_ratio", (e_ * e_) / (g_ * m1 * m2), dimensionless(1e40), tolerance_dex,
                     "e^2/(G m1 m2) ~ 10^40");
}

Quantity Relations::space_level(const Quantity& m, unsigned n) const {
  const Quantity length = compton_scales(m).length;
  return (static_cast<double>(n) + 0.5) * (length * length);
}

ZpfEnergy Relations::zpf_energy_of_region(const Quantity& lambda) const {
  require_positive(lambda, dims::kLength, "lambda");
  const Quantity volume = lambda * lambda * lambda;
  const Quantity field_sq = hbar_ * c_ / (volume * lambda);
  const Quantity energy = field_sq * volume;
  return {energy, energy / (c_ * c_)};
}

Quantity Relations::curvature_fluctuation(const Quantity& l) const {
  require_positive(l, dims::kLength, "l");
  return planck_length_ / (l * l * l);
}

RelationReport Relations::universe_mass(const Quantity& count, const Quantity& m, double tolerance_dex) const {
  require_positive(count, dims::kNone, "particle count");
  require_positive(m, dims::kMass, "mass");
  return make_report("universe_mass", count * m, observed_mass_, tolerance_dex, "N m_pi ~ M = 10^56 g");
}

Quantity Relations::schwarzschild_radius(const Quantity& mass) const {
  require_positive(mass, dims::kMass, "mass");
  return g_ * mass / (c_ * c_);
}

RelationReport Relations::eddington_length(const Quantity& radius, const Quantity& count,
                                           double tolerance_dex) const {
  require_positive(radius, dims::kLength, "radius");
  require_positive(count, dims::kNone, "particle count");
  return make_report("eddington_length", radius / sqrt(count), compton_scales(pion_mass_).length, tolerance_dex,
                     "l_pi ~ R/sqrt(N)");
}

RelationReport Relations::age_root_n(const Quantity& age, const Quantity& m, double tolerance_dex) const {
  require_positive(age, dims::kTime, "age");
  require_positive(m, dims::kMass, "mass");
  return make_report("age_root_n", 2.0 * m * c_ * c_ * age / hbar_, sqrt(observed_count_), tolerance_dex,
                     "sqrt(N) = (2 m_pi c^2/hbar) T");
}

Quantity Relations::hubble_from_pion(const Quantity& m) const {
  require_positive(m, dims::kMass, "mass");
  return g_ * m * m * m * c_ / (hbar_ * hbar_);
}

Quantity Relations::pion_from_hubble(const Quantity& hubble) const {
  require_positive(hubble, dims::kInverseTime, "Hubble constant");
  return pow(hbar_ * hbar_ * hubble / (g_ * c_), Rational(1, 3));
}

Quantity Relations::cosmological_constant(const Quantity& hubble) const {
  require_positive(hubble, dims::kInverseTime, "Hubble constant");
  return hubble * hubble;
}

Quantity Relations::cmb_wavelength(const Quantity& tau) const {
  require_positive(tau, dims::kTime, "tau");
  return c_ * tau;
}

Quantity Relations::age_from_pion(const Quantity& m) const {
  require_positive(m, dims::kMass, "mass");
  return hbar_ * hbar_ / (2.0 * g_ * m * m * m * c_);
}

Quantity Relations::thermal_spacing(const Quantity& m) const {
  require_positive(m, dims::kMass, "mass");
  return hbar_ / (m * c_);
}

Quantity Relations::ground_state_spread(const Quantity& m, const Quantity& omega) const {
  require_positive(m, dims::kMass, "mass");
  require_positive(omega, dims::kInverseTime, "omega");
  return sqrt(hbar_ / (m * omega));
}

namespace {

struct Evaluation {
  Quantity lhs;
  Quantity rhs;
};

struct Relation {
  CatalogEntry entry;
  std::function<Evaluation(const Relations&, const Registry&)> evaluate;
};

// Presentation order follows the argument: particle scale first, then the
// formation picture, then the cosmological chain.
const std::vector<Relation>& relations() {
  static const std::vector<Relation> table = [] {
    std::vector<Relation> t;
    const auto add = [&t](std::string_view id, std::string_view anchor, double tol, auto fn) {
      t.push_back({{id, anchor, tol}, fn});
    };
    add("horizon_imaginary_part", "Im r+ = (G Q^2/c^4 + a^2 - G^2M^2/c^4)^(1/2) ~ hbar/(2 m_e c)", 0.5,
        [](const Relations& r, const Registry& reg) {
          const Quantity m = reg.value("m_e");
          const Quantity spin = 0.5 * reg.value("hbar");
          const auto horizon = r.kerr_newman_horizon(m, reg.value("e"), spin);
          return Evaluation{horizon.imag_part, spin / (m * reg.value("c"))};
        });
    add("compton_length_electron", "hbar/(m_e c) ~ 10^-11 cm", 1.0, [](const Relations& r, const Registry& reg) {
      return Evaluation{r.compton_scales(reg.value("m_e")).length, centimeters(1e-11)};
    });
    add("zitter_charge_energy", "hbar/a0 = m_e c^2 with a0 = hbar/(2 m_e c^2)", 0.5,
        [](const Relations& r, const Registry& reg) {
          const auto rep = r.zitter_charge_energy(reg.value("m_e"));
          return Evaluation{rep.lhs, rep.rhs};
        });
    add("em_grav_ratio", "e^2/(G m_e m_p) ~ 10^40", 1.5, [](const Relations& r, const Registry& reg) {
      const auto rep = r.em_grav_ratio(reg.value("m_e"), reg.value("m_p"));
      return Evaluation{rep.lhs, rep.rhs};
    });
    add("space_level_spacing", "levels of X^2 are multiples of (hbar/m_e c)^2", 0.1,
        [](const Relations& r, const Registry& reg) {
          const Quantity m = reg.value("m_e");
          const Quantity length = r.compton_scales(m).length;
          return Evaluation{r.space_level(m, 1) - r.space_level(m, 0), length * length};
        });
    add("zpf_energy_electron", "hbar c/lambda = m_e c^2 at lambda = hbar/(m_e c)", 0.1,
        [](const Relations& r, const Registry& reg) {
          const Quantity m = reg.value("m_e");
          const auto zpf = r.zpf_energy_of_region(r.compton_scales(m).length);
          return Evaluation{zpf.energy, m * r.c() * r.c()};
        });
    add("curvature_fluctuation", "L*/l^3 ~ 1 at l = 10^-11 cm", 2.0, [](const Relations& r, const Registry&) {
      return Evaluation{r.curvature_fluctuation(centimeters(1e-11)), Quantity(1.0, dims::kInverseArea)};
    });
    add("zpf_pion_mass", "cutoff at hbar/(m_pi c) recovers m_pi", 0.1, [](const Relations& r, const Registry& reg) {
      const Quantity m = reg.value("m_pi");
      return Evaluation{r.zpf_energy_of_region(r.compton_scales(m).length).mass, m};
    });
    add("universe_mass", "N m_pi ~ M = 10^56 g", 1.0, [](const Relations& r, const Registry& reg) {
      const auto rep = r.universe_mass(reg.value("N_obs"), reg.value("m_pi"));
      return Evaluation{rep.lhs, rep.rhs};
    });
    add("thermal_spacing", "(V/N)^(1/3) ~ hbar/(m_e c)", 0.1, [](const Relations& r, const Registry& reg) {
      const Quantity m = reg.value("m_e");
      return Evaluation{r.thermal_spacing(m), r.compton_scales(m).length};
    });
    add("schwarzschild_radius", "G M/c^2 = R", 0.5, [](const Relations& r, const Registry& reg) {
      return Evaluation{r.schwarzschild_radius(reg.value("M_obs")), reg.value("R_obs")};
    });
    add("age_root_n", "sqrt(N) = (2 m_pi c^2/hbar) T", 1.0, [](const Relations& r, const Registry& reg) {
      const auto rep = r.age_root_n(reg.value("T_obs"), reg.value("m_pi"));
      return Evaluation{rep.lhs, rep.rhs};
    });
    add("age_root_n_integral", "sqrt(N) = T/(2 tau) from dN/dt = sqrt(N)/tau, tau = hbar/(m_pi c^2)", 0.1,
        [](const Relations& r, const Registry& reg) {
          const Quantity tau = r.compton_scales(reg.value("m_pi")).time;
          return Evaluation{reg.value("T_obs") / (2.0 * tau), sqrt(reg.value("N_obs"))};
        });
    add("hubble_from_pion", "H = G m_pi^3 c/hbar^2", 1.5, [](const Relations& r, const Registry& reg) {
      return Evaluation{r.hubble_from_pion(reg.value("m_pi")), reg.value("H_obs")};
    });
    add("pion_from_hubble", "m_pi = (hbar^2 H/(G c))^(1/3)", 0.5, [](const Relations& r, const Registry& reg) {
      return Evaluation{r.pion_from_hubble(reg.value("H_obs")), reg.value("m_pi")};
    });
    add("cosmological_constant", "Lambda ~ H^2 (H = G m_pi^3 c/hbar^2 vs observed H)", 3.0,
        [](const Relations& r, const Registry& reg) {
          return Evaluation{r.cosmological_constant(r.hubble_from_pion(reg.value("m_pi"))),
                            r.cosmological_constant(reg.value("H_obs"))};
        });
    add("cmb_wavelength", "c tau ~ 0.3 cm at tau = 10^-11 s", 0.1, [](const Relations& r, const Registry& reg) {
      return Evaluation{r.cmb_wavelength(reg.value("tau_fluct")), reg.value("lambda_cmb")};
    });
    add("ground_state_spread", "(hbar/(m omega))^(1/2) = hbar/(m_e c) at omega = m_e c^2/hbar", 0.1,
        [](const Relations& r, const Registry& reg) {
          const Quantity m = reg.value("m_e");
          const auto scales = r.compton_scales(m);
          return Evaluation{r.ground_state_spread(m, dimensionless(1.0) / scales.time), scales.length};
        });
    add("eddington_length", "l_pi ~ R/sqrt(N)", 1.5, [](const Relations& r, const Registry& reg) {
      const auto rep = r.eddington_length(reg.value("R_obs"), reg.value("N_obs"));
      return Evaluation{rep.lhs, rep.rhs};
    });
    add("age_from_pion", "2 G m_pi^3 c/hbar^2 = 1/T", 1.0, [](const Relations& r, const Registry& reg) {
      return Evaluation{r.age_from_pion(reg.value("m_pi")), reg.value("T_obs")};
    });
    return t;
  }();
  return table;
}

}  // namespace

const std::vector<CatalogEntry>& relation_catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> out;
    for (const auto& r : relations()) out.push_back(r.entry);
    return out;
  }();
  return entries;
}

std::vector<RelationReport> run_all(const Registry& registry, const ToleranceOverrides& overrides) {
  for (const auto& [id, tol] : overrides) {
    const auto& catalog = relation_catalog();
    const bool known =
        std::any_of(catalog.begin(), catalog.end(), [&id = id](const CatalogEntry& e) { return e.id == id; });
    if (!known) throw ConfigError(fmt::format("tolerance override for unknown relation '{}'", id));
    if (!(tol > 0.0)) throw ConfigError(fmt::format("tolerance for '{}' must be positive, got {}", id, tol));
  }

  const Relations engine(registry);
  std::vector<RelationReport> reports;
  reports.reserve(relations().size());
  for (const auto& rel : relations()) {
    double tol = rel.entry.default_tolerance_dex;
    if (auto it = overrides.find(rel.entry.id); it != overrides.end()) tol = it->second;
    auto [lhs, rhs] = rel.evaluate(engine, registry);
    reports.push_back(make_report(std::string(rel.entry.id), lhs, rhs, tol, std::string(rel.entry.anchor)));
  }
  return reports;
}

}  // namespace fluctuaverse
