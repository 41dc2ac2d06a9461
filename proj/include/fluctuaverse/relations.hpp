#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fluctuaverse/constants.hpp"
#include "fluctuaverse/quantity.hpp"

namespace fluctuaverse {

enum class Verdict { pass, fail };

std::string_view to_string(Verdict v);

/// One closed-form claim evaluated as lhs ~ rhs at a dex tolerance.
/// Invariants: lhs.dim() == rhs.dim(); verdict is pass iff gap_dex <= tolerance_dex.
struct RelationReport {
  std::string id;
  Quantity lhs;
  Quantity rhs;
  double gap_dex;
  double tolerance_dex;
  Verdict verdict;
  std::string anchor;  ///< the relation as written, e.g. "e^2/(G m1 m2) ~ 10^40"

  bool passed() const { return verdict == Verdict::pass; }
};

/// Throws DimensionError when the sides disagree, DomainError on a
/// non-positive tolerance.
RelationReport make_report(std::string id, Quantity lhs, Quantity rhs, double tolerance_dex, std::string anchor);

struct ComptonScales {
  Quantity length;  ///< hbar/(m c)
  Quantity time;    ///< hbar/(m c^2)
};

/// Kerr-Newman horizon r+ = GM/c^2 + i b in the naked-singularity regime.
struct HorizonResult {
  Quantity real_part;
  Quantity imag_part;
};

struct ZpfEnergy {
  Quantity energy;
  Quantity mass;
};

/// Closed-form relations of the fluctuation cosmology, evaluated in CGS with
/// G, c, hbar, e and L* taken from a registry at construction time.
///
/// Mass, length and time arguments are dimension-checked (DimensionError);
/// non-positive magnitudes raise DomainError.
class Relations {
 public:
  explicit Relations(const Registry& registry);

  ComptonScales compton_scales(const Quantity& m) const;

  /// b^2 = G Q^2/c^4 + a^2 - G^2 M^2/c^4 with a = L/(M c). Throws
  /// RegimeError when b^2 < 0.
  HorizonResult kerr_newman_horizon(const Quantity& mass, const Quantity& charge,
                                    const Quantity& angular_momentum) const;

  /// hbar/a0 with a0 = hbar/(2 m c^2), against m c^2.
  RelationReport zitter_charge_energy(const Quantity& m, double tolerance_dex = 0.5) const;

  /// e^2/(G m1 m2) against 10^40.
  RelationReport em_grav_ratio(const Quantity& m1, const Quantity& m2, double tolerance_dex = 1.5) const;

  /// (n + 1/2) (hbar/mc)^2, the spectrum of the squared position operator
  /// read as an oscillator with frequency 2mc^2/hbar.
  Quantity space_level(const Quantity& m, unsigned n) const;

  /// B^2 ~ hbar c / lambda^4 integrated over lambda^3.
  ZpfEnergy zpf_energy_of_region(const Quantity& lambda) const;

  /// L*/l^3, in cm^-2.
  Quantity curvature_fluctuation(const Quantity& l) const;

  /// N m against M_obs.
  RelationReport universe_mass(const Quantity& count, const Quantity& m, double tolerance_dex = 1.0) const;

  /// GM/c^2.
  Quantity schwarzschild_radius(const Quantity& mass) const;

  /// R/sqrt(N) against the pion Compton length.
  RelationReport eddington_length(const Quantity& radius, const Quantity& count, double tolerance_dex = 1.5) const;

  /// 2 m c^2 T / hbar against sqrt(N_obs).
  RelationReport age_root_n(const Quantity& age, const Quantity& m, double tolerance_dex = 1.0) const;

  /// G m^3 c / hbar^2.
  Quantity hubble_from_pion(const Quantity& m) const;

  /// (hbar^2 H / (G c))^(1/3); inverse of hubble_from_pion.
  Quantity pion_from_hubble(const Quantity& hubble) const;

  /// Lambda ~ H^2.
  Quantity cosmological_constant(const Quantity& hubble) const;

  /// c tau: the wavelength whose Compton time is tau.
  Quantity cmb_wavelength(const Quantity& tau) const;

  /// hbar^2 / (2 G m^3 c), the T solving 2 G m^3 c / hbar^2 = 1/T.
  Quantity age_from_pion(const Quantity& m) const;

  /// (V/N)^(1/3) of a Maxwell-Boltzmann assembly with mean speed c: hbar/(mc).
  Quantity thermal_spacing(const Quantity& m) const;

  /// sqrt(hbar/(m omega)).
  Quantity ground_state_spread(const Quantity& m, const Quantity& omega) const;

  const Quantity& G() const { return g_; }
  const Quantity& c() const { return c_; }
  const Quantity& hbar() const { return hbar_; }

 private:
  Quantity g_;
  Quantity c_;
  Quantity hbar_;
  Quantity e_;
  Quantity planck_length_;
  Quantity pion_mass_;
  Quantity observed_count_;
  Quantity observed_mass_;
};

/// Relation id -> tolerance in dex.
using ToleranceOverrides = std::map<std::string, double, std::less<>>;

struct CatalogEntry {
  std::string_view id;
  std::string_view anchor;
  double default_tolerance_dex;
};

/// Catalog in presentation order, the order run_all reports in.
const std::vector<CatalogEntry>& relation_catalog();

/// Evaluates every catalog relation with registry values. Unknown ids or
/// non-positive tolerances in `overrides` raise ConfigError.
std::vector<RelationReport> run_all(const Registry& registry, const ToleranceOverrides& overrides = {});

}  // namespace fluctuaverse
