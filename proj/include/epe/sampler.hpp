#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "epe/gaussian.hpp"
#include "epe/qubit.hpp"

namespace epe::sampler {

enum class System { Qubit, Gaussian };

struct SamplerConfig {
  std::uint64_t seed = 0;
  std::size_t count = 1;
  System system = System::Qubit;
  std::optional<int> rank_filter;  // qubit: Ginibre rank 1..4
  double energy_min = 0.0;         // gaussian energy window
  double energy_max = 2.0;
  qubit::Measure measure = qubit::Measure::Concurrence;
  bool pure_only = false;  // gaussian: force nu_- = nu_+ = 1
};

/// Bit values used when flags are packed into one integer column.
enum Flag : unsigned { kOnPureCircle = 1u, kBelowMems = 2u, kInSeparableBand = 4u };

struct EPERecord {
  double energy = 0.0;
  double entanglement = 0.0;
  double purity = 1.0;
  bool on_pure_circle = false;     // purity 1 within 1e-9
  bool below_mems = false;         // entanglement under the fixed-purity maximum
  bool in_separable_band = false;  // purity too low for any entanglement at this energy
  unsigned flags() const;
};

struct QubitSample {
  qubit::DensityMatrix4 state;
  EPERecord record;
};

struct GaussianSample {
  gaussian::StandardFormCM cm;
  EPERecord record;
};

/// Throws ConfigError on count 0, a rank outside 1..4, a bad energy window
/// or a measure that the chosen system does not support.
void validate(const SamplerConfig& cfg);

/// Per-sample generator seeded from (seed, index) only.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

QubitSample sample_qubit_state(const SamplerConfig& cfg, std::uint64_t index);
GaussianSample sample_gaussian_state(const SamplerConfig& cfg, std::uint64_t index);

/// Index-ordered batches; content is independent of `threads`.
std::vector<QubitSample> sample_qubit_states(const SamplerConfig& cfg, unsigned threads = 1);
std::vector<GaussianSample> sample_gaussian_states(const SamplerConfig& cfg, unsigned threads = 1);

EPERecord qubit_record(const qubit::DensityMatrix4& rho, qubit::Measure measure);
EPERecord gaussian_record(const gaussian::StandardFormCM& sf, qubit::Measure measure);

/// Boundary predicates that every physical state must satisfy (tolerance 1e-9).
/// Returns a human-readable line per violation; empty means contained.
std::vector<std::string> containment_violations(const qubit::DensityMatrix4& rho);
std::vector<std::string> containment_violations(const gaussian::StandardFormCM& sf);

// Closed-form boundary curves, tabulated for plotting.

enum class Curve { Separable, Mems, Pure, Band, Tmsv, Gmems, Glems };

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// `start:stop:step`, inclusive of stop up to rounding; empty when start > stop.
std::vector<double> parse_grid(const std::string& spec);

/// Qubit curves take an energy grid (separable, pure) or a concurrence grid
/// (mems); gaussian curves take an energy grid (band, tmsv) or a purity grid
/// at fixed `energy` (gmems, glems). DomainError when a grid point falls
/// outside the curve's domain, ConfigError when the curve does not belong to
/// the system.
Table boundary_table(System system, Curve curve, const std::vector<double>& grid, double energy = 2.0);

}  // namespace epe::sampler
