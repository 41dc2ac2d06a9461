#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "fluctuaverse/constants.hpp"
#include "fluctuaverse/quantity.hpp"

namespace fluctuaverse {

using Complex = std::complex<double>;

/// psi = sum_n c_n phi_n over a finite energy basis. The constructor
/// normalizes the amplitudes so that sum |c_n|^2 = 1.
class EnsembleState {
 public:
  /// Throws DomainError on length mismatch, empty input or zero norm.
  EnsembleState(std::vector<Complex> amplitudes, std::vector<double> energies, std::string label = {});

  const std::vector<Complex>& amplitudes() const { return amplitudes_; }
  const std::vector<double>& energies() const { return energies_; }
  const std::string& label() const { return label_; }
  std::size_t size() const { return energies_.size(); }

 private:
  std::vector<Complex> amplitudes_;
  std::vector<double> energies_;
  std::string label_;
};

/// |b_n|^2 = 1 for E < E_n < E + delta, 0 otherwise.
struct CoarseGrainedState {
  std::vector<double> occupancy;
  double window_low;
  double window_width;

  std::size_t occupied() const;
};

/// Dense Hermitian operator in the energy basis, row-major.
class Operator {
 public:
  Operator(std::size_t dim, std::vector<Complex> elements);

  /// Real diagonal with independent complex off-diagonal entries, all
  /// components uniform in [-1, 1).
  static Operator random_hermitian(std::size_t dim, std::mt19937_64& rng);

  std::size_t dim() const { return dim_; }
  const Complex& operator()(std::size_t row, std::size_t col) const { return elements_[row * dim_ + col]; }
  std::vector<double> diagonal() const;

 private:
  std::size_t dim_;
  std::vector<Complex> elements_;
};

/// `count` i.i.d. unit-modulus numbers exp(i theta), theta uniform on
/// [0, 2 pi). Throws DomainError for count == 0.
std::vector<Complex> sample_phases(std::size_t count, std::uint64_t seed);

/// (1/S) sum over S independent draws of c_n conj(c_m) with random unit
/// phases. Exactly 1 for n == m. Throws DomainError for samples == 0.
Complex phase_correlation(std::size_t n, std::size_t m, std::size_t samples, std::uint64_t seed);

/// Throws DomainError for delta <= 0, EmptyWindowError when no energy lies
/// strictly inside the window.
CoarseGrainedState coarse_grain(const EnsembleState& state, double energy, double delta);

/// sum_n w_n O_nn / sum_n w_n. Throws DomainError on length mismatch or
/// when every weight is zero.
double expectation(std::span<const double> weights, std::span<const double> diagonal);
double expectation(const CoarseGrainedState& state, std::span<const double> diagonal);
/// Weights |c_n|^2.
double expectation(const EnsembleState& state, std::span<const double> diagonal);

struct PhaseAverage {
  double mean;
  double standard_error;
  std::size_t draws;
};

/// Coherent <psi|O|psi> with all cross terms, psi built from the occupied
/// window states with equal moduli and fresh random phases per draw,
/// averaged over `draws`.
PhaseAverage coherent_expectation(const CoarseGrainedState& state, const Operator& op, std::size_t draws,
                                  std::uint64_t seed);

struct SamplerParams {
  double mu = 1.0;
  std::uint64_t seed = 0;
  std::size_t samples = 100'000;
  std::size_t bins = 40;
  bool integer_counts = false;  ///< round each draw to the nearest integer
};

struct HistogramBin {
  double low;
  double high;
  double density;
};

struct SamplerStats {
  std::size_t samples;
  double mean;
  double std_dev;  ///< n-1 estimator; 0 for a single sample
  double rms;      ///< sqrt(mean N^2), the spread Delta N
  std::optional<double> std_dev_error;  ///< standard error of std_dev; absent below 2 samples
  double theory_mean;
  double theory_std_dev;
  double theory_rms;
  std::vector<HistogramBin> histogram;
};

/// Draws N >= 0 with density proportional to exp(-mu^2 N^2): a half-normal
/// with underlying sigma = 1/(mu sqrt 2). Throws DomainError for mu <= 0 or
/// zero samples/bins.
SamplerStats particlet_count_sampler(const SamplerParams& params);

/// sqrt(hbar/(m omega)), the width of an oscillator ground state.
Quantity ground_state_spread(const Registry& registry, const Quantity& m, const Quantity& omega);

/// CSV with header "bin_lo,bin_hi,density".
void write_histogram_csv(std::ostream& out, std::span<const HistogramBin> histogram);

}  // namespace fluctuaverse
