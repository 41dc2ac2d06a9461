#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "fluctuaverse/constants.hpp"
#include "fluctuaverse/quantity.hpp"

namespace fluctuaverse {

enum class GrowthMode { exact, rk4, stochastic };

std::string_view to_string(GrowthMode m);
/// Throws ConfigError on anything but "exact", "rk4", "stochastic".
GrowthMode parse_growth_mode(std::string_view text);

/// Inputs for the particle-number growth law dN/dt = sqrt(N)/tau with
/// tau = hbar/(m c^2).
struct GrowthParams {
  Quantity mass;
  Quantity t_end;
  Quantity dt;
  double n0 = 0.0;
  GrowthMode mode = GrowthMode::exact;
  std::uint64_t seed = 0;
  std::size_t ensemble_size = 1;
  std::size_t stride = 1;  ///< keep every stride-th step (the final step is always kept)
};

/// One stored sample, CGS: t [s], n [1], radius [cm], hubble [1/s].
/// radius = G m n / c^2 and hubble = (dN/dt)/N = 1/(tau sqrt(N)).
struct TrajectoryPoint {
  double t;
  double n;
  double radius;
  double hubble;
};

using Trajectory = std::vector<TrajectoryPoint>;

/// Ensemble statistics at one stored time. Standard deviations use the
/// n-1 estimator and are zero for a single member.
struct EnsembleMoment {
  double t;
  double mean_n;
  double std_n;
  double mean_root_n;
  double std_root_n;
  double stderr_root_n;
};

struct EnsembleResult {
  std::vector<Trajectory> members;
  std::vector<EnsembleMoment> moments;  ///< one per stored time

  /// Trajectory of the ensemble-mean N (radius and hubble recomputed from it).
  Trajectory mean_trajectory;
};

/// Closed form and derived quantities of the growth law for one particle mass.
class GrowthModel {
 public:
  GrowthModel(const Registry& registry, const Quantity& mass);

  /// Fluctuation time hbar/(m c^2) in seconds.
  double tau() const { return tau_; }

  /// sqrt(N(t)) = sqrt(n0) + t/(2 tau).
  double exact_root_n(double t, double n0 = 0.0) const;

  /// Fills radius and hubble for a given (t, N). N must be positive.
  TrajectoryPoint point(double t, double n) const;

  /// Constant R'' of the exact solution, G m^3 c^2 / (2 hbar^2), in cm/s^2.
  double exact_acceleration() const { return radius_per_particle_ / (2.0 * tau_ * tau_); }

 private:
  double tau_;
  double radius_per_particle_;  ///< G m / c^2
};

/// sqrt(N) at time t for a universe holding n0 particles at t = 0
/// (n0 = 0 is the singular start). Throws DomainError for t < 0.
double exact_root_n(const Registry& registry, const Quantity& t, const Quantity& mass, double n0 = 0.0);

/// Throws ConfigError describing the first invalid field.
void validate(const GrowthParams& params);

/// Deterministic trajectory for mode exact or rk4. Exact mode with n0 = 0
/// omits the singular t = 0 sample. rk4 needs n0 >= 1 (sqrt(N) is not
/// Lipschitz at 0). Throws IntegrationError on a non-finite state.
Trajectory integrate(const Registry& registry, const GrowthParams& params);

/// Poisson birth process with mean increment sqrt(N) dt/tau per step,
/// switched to a Gaussian approximation once the mean reaches 1e6. Member
/// k draws from a generator seeded with seed + k. Throws StabilityError when
/// a step's mean increment exceeds 0.1 N.
EnsembleResult simulate_stochastic(const Registry& registry, const GrowthParams& params);

/// Max over interior points of |R'' - H^2 R/2| / (H^2 R/2), with R'' from
/// three-point central differences (non-uniform spacing allowed). Throws
/// DomainError with fewer than three points.
double check_acceleration(std::span<const TrajectoryPoint> trajectory);

/// CSV with header "t,N,R,H_local", full round-trip precision.
void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryPoint> trajectory);

}  // namespace fluctuaverse
