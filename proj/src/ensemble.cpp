#include "fluctuaverse/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

#include "fluctuaverse/errors.hpp"
#include "fluctuaverse/relations.hpp"

namespace fluctuaverse {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double draw_phase(std::mt19937_64& rng) {
  // generate_canonical can round up to 1.0; fold that back onto 0
  const double theta = std::uniform_real_distribution<double>(0.0, kTwoPi)(rng);
  return theta < kTwoPi ? theta : 0.0;
}

}  // namespace

EnsembleState::EnsembleState(std::vector<Complex> amplitudes, std::vector<double> energies, std::string label)
    : amplitudes_(std::move(amplitudes)), energies_(std::move(energies)), label_(std::move(label)) {
  if (amplitudes_.size() != energies_.size()) {
    throw DomainError(
        fmt::format("{} amplitudes but {} energies", amplitudes_.size(), energies_.size()));
  }
  if (amplitudes_.empty()) throw DomainError("ensemble state needs at least one basis state");
  const double norm_sq =
      std::accumulate(amplitudes_.begin(), amplitudes_.end(), 0.0, [](double s, Complex c) { return s + std::norm(c); });
  if (!(norm_sq > 0.0) || !std::isfinite(norm_sq)) throw DomainError("amplitudes have zero or non-finite norm");
  const double scale = 1.0 / std::sqrt(norm_sq);
  for (auto& c : amplitudes_) c *= scale;
}

std::size_t CoarseGrainedState::occupied() const {
  return static_cast<std::size_t>(std::count_if(occupancy.begin(), occupancy.end(), [](double w) { return w > 0.0; }));
}

Operator::Operator(std::size_t dim, std::vector<Complex> elements) : dim_(dim), elements_(std::move(elements)) {
  if (dim_ == 0 || elements_.size() != dim_ * dim_) {
    throw DomainError(fmt::format("operator of dimension {} needs {} elements", dim_, dim_ * dim_));
  }
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i; j < dim_; ++j) {
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > 1e-12) {
        throw DomainError(fmt::format("operator is not Hermitian at ({}, {})", i, j));
      }
    }
  }
}

Operator Operator::random_hermitian(std::size_t dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> el(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    el[i * dim + i] = {u(rng), 0.0};
    for (std::size_t j = i + 1; j < dim; ++j) {
      const double re = u(rng);
      const double im = u(rng);
      el[i * dim + j] = {re, im};
      el[j * dim + i] = {re, -im};
    }
  }
  return {dim, std::move(el)};
}

std::vector<double> Operator::diagonal() const {
  std::vector<double> d(dim_);
  for (std::size_t i = 0; i < dim_; ++i) d[i] = (*this)(i, i).real();
  return d;
}

std::vector<Complex> sample_phases(std::size_t count, std::uint64_t seed) {
  if (count == 0) throw DomainError("phase count must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<Complex> out(count);
  for (auto& c : out) c = std::polar(1.0, draw_phase(rng));
  return out;
}

Complex phase_correlation(std::size_t n, std::size_t m, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw DomainError("phase correlation needs at least one sample");
  std::mt19937_64 rng(seed);
  std::vector<double> theta(std::max(n, m) + 1);
  Complex sum{0.0, 0.0};
  for (std::size_t s = 0; s < samples; ++s) {
    for (auto& t : theta) t = draw_phase(rng);
    // c_n conj(c_m) = exp(i (theta_n - theta_m)); the diagonal difference is exactly 0
    sum += std::polar(1.0, theta[n] - theta[m]);
  }
  return sum / static_cast<double>(samples);
}

CoarseGrainedState coarse_grain(const EnsembleState& state, double energy, double delta) {
  if (!(delta > 0.0)) throw DomainError(fmt::format("window width must be positive, got {}", delta));
  CoarseGrainedState out{{}, energy, delta};
  out.occupancy.reserve(state.size());
  for (double e : state.energies()) out.occupancy.push_back(energy < e && e < energy + delta ? 1.0 : 0.0);
  if (out.occupied() == 0) {
    throw EmptyWindowError(fmt::format("no basis energy lies in ({}, {})", energy, energy + delta));
  }
  return out;
}

double expectation(std::span<const double> weights, std::span<const double> diagonal) {
  if (weights.size() != diagonal.size()) {
    throw DomainError(fmt::format("{} weights but {} diagonal elements", weights.size(), diagonal.size()));
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    num += weights[i] * diagonal[i];
    den += weights[i];
  }
  if (!(den > 0.0)) throw DomainError("expectation needs at least one nonzero weight");
  return num / den;
}

double expectation(const CoarseGrainedState& state, std::span<const double> diagonal) {
  return expectation(state.occupancy, diagonal);
}

double expectation(const EnsembleState& state, std::span<const double> diagonal) {
  std::vector<double> w;
  w.reserve(state.size());
  for (const auto& c : state.amplitudes()) w.push_back(std::norm(c));
  return expectation(w, diagonal);
}

PhaseAverage coherent_expectation(const CoarseGrainedState& state, const Operator& op, std::size_t draws,
                                  std::uint64_t seed) {
  if (draws == 0) throw DomainError("coherent expectation needs at least one draw");
  if (op.dim() != state.occupancy.size()) {
    throw DomainError(fmt::format("operator dimension {} != basis size {}", op.dim(), state.occupancy.size()));
  }
  const double total = std::accumulate(state.occupancy.begin(), state.occupancy.end(), 0.0);
  if (!(total > 0.0)) throw DomainError("coherent expectation needs an occupied window");

  std::vector<double> modulus(op.dim());
  for (std::size_t i = 0; i < op.dim(); ++i) modulus[i] = std::sqrt(state.occupancy[i] / total);

  std::mt19937_64 rng(seed);
  std::vector<Complex> psi(op.dim());
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t d = 0; d < draws; ++d) {
    for (std::size_t i = 0; i < op.dim(); ++i) psi[i] = std::polar(modulus[i], draw_phase(rng));
    Complex value{0.0, 0.0};
    for (std::size_t i = 0; i < op.dim(); ++i) {
      for (std::size_t j = 0; j < op.dim(); ++j) value += std::conj(psi[i]) * op(i, j) * psi[j];
    }
    sum += value.real();
    sum_sq += value.real() * value.real();
  }
  const double n = static_cast<double>(draws);
  const double mean = sum / n;
  const double var = draws > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
  return {mean, std::sqrt(var / n), draws};
}

SamplerStats particlet_count_sampler(const SamplerParams& params) {
  if (!(params.mu > 0.0) || !std::isfinite(params.mu)) {
    throw DomainError(fmt::format("mu must be positive, got {}", params.mu));
  }
  if (params.samples == 0) throw DomainError("sampler needs at least one sample");
  if (params.bins == 0) throw DomainError("histogram needs at least one bin");

  const double sigma = 1.0 / (params.mu * std::numbers::sqrt2);
  std::mt19937_64 rng(params.seed);
  std::normal_distribution<double> normal(0.0, sigma);
  std::vector<double> draws(params.samples);
  for (auto& x : draws) {
    x = std::abs(normal(rng));
    if (params.integer_counts) x = std::round(x);
  }

  const double n = static_cast<double>(params.samples);
  double sum = 0.0, sum_sq = 0.0;
  for (double x : draws) {
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / n;

  SamplerStats st{};
  st.samples = params.samples;
  st.mean = mean;
  st.rms = std::sqrt(sum_sq / n);
  if (params.samples >= 2) {
    double m2 = 0.0, m4 = 0.0;
    for (double x : draws) {
      const double d2 = (x - mean) * (x - mean);
      m2 += d2;
      m4 += d2 * d2;
    }
    st.std_dev = std::sqrt(m2 / (n - 1.0));
    m2 /= n;
    m4 /= n;
    // delta method: Var(s) ~ (mu4 - sigma^4) / (4 sigma^2 n)
    st.std_dev_error = m2 > 0.0 ? std::sqrt(std::max(0.0, m4 - m2 * m2) / (4.0 * m2 * n)) : 0.0;
  }
  st.theory_mean = sigma * std::sqrt(2.0 / std::numbers::pi);
  st.theory_std_dev = sigma * std::sqrt(1.0 - 2.0 / std::numbers::pi);
  st.theory_rms = sigma;

  const double top = *std::max_element(draws.begin(), draws.end());
  const double hi = top > 0.0 ? top : 1.0;
  const double width = hi / static_cast<double>(params.bins);
  std::vector<std::size_t> counts(params.bins, 0);
  for (double x : draws) {
    const auto bin = std::min(static_cast<std::size_t>(x / width), params.bins - 1);
    ++counts[bin];
  }
  st.histogram.reserve(params.bins);
  for (std::size_t b = 0; b < params.bins; ++b) {
    const double lo = width * static_cast<double>(b);
    const double up = b + 1 == params.bins ? hi : width * static_cast<double>(b + 1);
    st.histogram.push_back({lo, up, static_cast<double>(counts[b]) / (n * (up - lo))});
  }
  return st;
}

Quantity ground_state_spread(const Registry& registry, const Quantity& m, const Quantity& omega) {
  return Relations(registry).ground_state_spread(m, omega);
}

void write_histogram_csv(std::ostream& out, std::span<const HistogramBin> histogram) {
  out << "bin_lo,bin_hi,density\n";
  for (const auto& b : histogram) {
    out << format_roundtrip(b.low) << ',' << format_roundtrip(b.high) << ',' << format_roundtrip(b.density) << '\n';
  }
}

}  // namespace fluctuaverse
