#include "fluctuaverse/growth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "fluctuaverse/errors.hpp"

namespace fluctuaverse {

namespace {

constexpr std::size_t kMaxSteps = 100'000'000;
constexpr double kGaussianSwitch = 1e6;
constexpr double kMaxRelativeStep = 0.1;

// Step boundaries k*dt clipped to t_end; the last step may be short.
std::vector<double> time_grid(double t_end, double dt) {
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt * (1.0 - 1e-12)));
  std::vector<double> grid;
  grid.reserve(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) grid.push_back(std::min(static_cast<double>(k) * dt, t_end));
  return grid;
}

bool keep_sample(std::size_t k, std::size_t last, std::size_t stride) { return k % stride == 0 || k == last; }

double rhs(double n) { return std::sqrt(std::max(n, 0.0)); }

// One classical RK4 step of dN/ds = sqrt(N) in units s = t/tau.
double rk4_step(double n, double h) {
  const double k1 = rhs(n);
  const double k2 = rhs(n + 0.5 * h * k1);
  const double k3 = rhs(n + 0.5 * h * k2);
  const double k4 = rhs(n + h * k3);
  return n + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double sample_std(double sum, double sum_sq, std::size_t count) {
  if (count < 2) return 0.0;
  const double n = static_cast<double>(count);
  const double mean = sum / n;
  return std::sqrt(std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)));
}

}  // namespace

std::string_view to_string(GrowthMode m) {
  switch (m) {
    case GrowthMode::exact:
      return "exact";
    case GrowthMode::rk4:
      return "rk4";
    case GrowthMode::stochastic:
      return "stochastic";
  }
  return "unknown";
}

GrowthMode parse_growth_mode(std::string_view text) {
  if (text == "exact") return GrowthMode::exact;
  if (text == "rk4") return GrowthMode::rk4;
  if (text == "stochastic") return GrowthMode::stochastic;
  throw ConfigError(fmt::format("unknown growth mode '{}' (expected exact, rk4 or stochastic)", text));
}

GrowthModel::GrowthModel(const Registry& registry, const Quantity& mass) {
  require_dimension(mass, dims::kMass, "mass");
  if (!(mass.value() > 0.0)) throw DomainError("mass must be positive");
  const Quantity& c = registry.value("c");
  const Quantity tau = registry.value("hbar") / (mass * c * c);
  require_dimension(tau, dims::kTime, "hbar/(m c^2)");
  const Quantity per_particle = registry.value("G") * mass / (c * c);
  require_dimension(per_particle, dims::kLength, "G m/c^2");
  tau_ = tau.value();
  radius_per_particle_ = per_particle.value();
}

double GrowthModel::exact_root_n(double t, double n0) const {
  if (t < 0.0) throw DomainError(fmt::format("time must be non-negative, got {}", t));
  return std::sqrt(n0) + t / (2.0 * tau_);
}

TrajectoryPoint GrowthModel::point(double t, double n) const {
  const double root = std::sqrt(n);
  const TrajectoryPoint p{t, n, radius_per_particle_ * n, 1.0 / (tau_ * root)};
  if (!std::isfinite(p.n) || !std::isfinite(p.radius) || !std::isfinite(p.hubble)) {
    throw IntegrationError(fmt::format("non-finite state at t = {} s (N = {})", t, n));
  }
  return p;
}

double exact_root_n(const Registry& registry, const Quantity& t, const Quantity& mass, double n0) {
  require_dimension(t, dims::kTime, "t");
  return GrowthModel(registry, mass).exact_root_n(t.value(), n0);
}

void validate(const GrowthParams& p) {
  const auto bad = [](const std::string& why) { return ConfigError("invalid growth parameters: " + why); };
  if (p.mass.dim() != dims::kMass || !(p.mass.value() > 0.0)) throw bad("mass must be a positive mass");
  if (p.dt.dim() != dims::kTime || !(p.dt.value() > 0.0)) throw bad("dt must be a positive time");
  if (p.t_end.dim() != dims::kTime || p.t_end.value() < p.dt.value()) throw bad("t_end must be a time >= dt");
  if (!(p.n0 >= 0.0) || !std::isfinite(p.n0)) throw bad("n0 must be a finite non-negative count");
  if (p.mode != GrowthMode::exact && p.n0 < 1.0) {
    throw bad(fmt::format("{} mode needs n0 >= 1 (sqrt(N) is singular at N = 0)", to_string(p.mode)));
  }
  if (p.ensemble_size < 1) throw bad("ensemble_size must be >= 1");
  if (p.stride < 1) throw bad("stride must be >= 1");
  if (p.t_end.value() / p.dt.value() > static_cast<double>(kMaxSteps)) {
    throw bad(fmt::format("more than {} steps requested", kMaxSteps));
  }
}

Trajectory integrate(const Registry& registry, const GrowthParams& params) {
  validate(params);
  if (params.mode == GrowthMode::stochastic) throw ConfigError("integrate() handles exact and rk4 modes only");

  const GrowthModel model(registry, params.mass);
  const auto grid = time_grid(params.t_end.value(), params.dt.value());
  const std::size_t last = grid.size() - 1;
  Trajectory out;
  out.reserve(last / params.stride + 2);

  if (params.mode == GrowthMode::exact) {
    for (std::size_t k = 0; k <= last; ++k) {
      if (!keep_sample(k, last, params.stride)) continue;
      const double root = model.exact_root_n(grid[k], params.n0);
      if (root == 0.0) continue;
      out.push_back(model.point(grid[k], root * root));
    }
    return out;
  }

  double n = params.n0;
  out.push_back(model.point(0.0, n));
  for (std::size_t k = 1; k <= last; ++k) {
    n = rk4_step(n, (grid[k] - grid[k - 1]) / model.tau());
    if (!std::isfinite(n)) {
      throw IntegrationError(fmt::format("non-finite N at step {} (t = {} s)", k, grid[k]));
    }
    if (keep_sample(k, last, params.stride)) out.push_back(model.point(grid[k], n));
  }
  return out;
}

EnsembleResult simulate_stochastic(const Registry& registry, const GrowthParams& params) {
  validate(params);
  if (params.mode != GrowthMode::stochastic) throw ConfigError("simulate_stochastic() needs stochastic mode");

  const GrowthModel model(registry, params.mass);
  const auto grid = time_grid(params.t_end.value(), params.dt.value());
  const std::size_t last = grid.size() - 1;

  EnsembleResult result;
  result.members.resize(params.ensemble_size);
  for (std::size_t member = 0; member < params.ensemble_size; ++member) {
    std::mt19937_64 rng(params.seed + member);
    auto& traj = result.members[member];
    traj.reserve(last / params.stride + 2);
    double n = params.n0;
    traj.push_back(model.point(0.0, n));
    for (std::size_t k = 1; k <= last; ++k) {
      const double mean = std::sqrt(n) * (grid[k] - grid[k - 1]) / model.tau();
      if (mean > kMaxRelativeStep * n) {
        throw StabilityError(fmt::format(
            "step {} (t = {} s): mean increment {} exceeds {} N = {}; reduce dt", k, grid[k], mean,
            kMaxRelativeStep, kMaxRelativeStep * n));
      }
      double increment = 0.0;
      if (mean < kGaussianSwitch) {
        increment = static_cast<double>(std::poisson_distribution<long long>(mean)(rng));
      } else {
        increment = std::max(0.0, std::normal_distribution<double>(mean, std::sqrt(mean))(rng));
      }
      n += increment;
      if (!std::isfinite(n)) throw IntegrationError(fmt::format("non-finite N at step {} (t = {} s)", k, grid[k]));
      if (keep_sample(k, last, params.stride)) traj.push_back(model.point(grid[k], n));
    }
  }

  const std::size_t samples = result.members.front().size();
  const double count = static_cast<double>(params.ensemble_size);
  result.moments.reserve(samples);
  result.mean_trajectory.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    double sum = 0.0, sum_sq = 0.0, root_sum = 0.0, root_sum_sq = 0.0;
    for (const auto& traj : result.members) {
      const double n = traj[i].n;
      const double root = std::sqrt(n);
      sum += n;
      sum_sq += n * n;
      root_sum += root;
      root_sum_sq += n;
    }
    const double t = result.members.front()[i].t;
    const double std_root = sample_std(root_sum, root_sum_sq, params.ensemble_size);
    result.moments.push_back({t, sum / count, sample_std(sum, sum_sq, params.ensemble_size), root_sum / count,
                              std_root, std_root / std::sqrt(count)});
    result.mean_trajectory.push_back(model.point(t, sum / count));
  }
  return result;
}

double check_acceleration(std::span<const TrajectoryPoint> traj) {
  if (traj.size() < 3) throw DomainError("acceleration check needs at least 3 trajectory points");
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < traj.size(); ++i) {
    const auto& a = traj[i - 1];
    const auto& b = traj[i];
    const auto& c = traj[i + 1];
    const double h1 = b.t - a.t;
    const double h2 = c.t - b.t;
    if (!(h1 > 0.0) || !(h2 > 0.0)) throw DomainError("trajectory times must be strictly increasing");
    const double second = 2.0 * (h1 * c.radius - (h1 + h2) * b.radius + h2 * a.radius) / (h1 * h2 * (h1 + h2));
    const double expected = 0.5 * b.hubble * b.hubble * b.radius;
    worst = std::max(worst, std::abs(second - expected) / expected);
  }
  return worst;
}

void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryPoint> trajectory) {
  out << "t,N,R,H_local\n";
  for (const auto& p : trajectory) {
    out << format_roundtrip(p.t) << ',' << format_roundtrip(p.n) << ',' << format_roundtrip(p.radius) << ','
        << format_roundtrip(p.hubble) << '\n';
  }
}

}  // namespace fluctuaverse
