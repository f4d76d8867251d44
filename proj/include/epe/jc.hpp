#pragma once

#include <complex>
#include <numbers>
#include <cstddef>
#include <variant>
#include <vector>

#include "epe/qubit.hpp"

namespace epe::jc {

using Complex = std::complex<double>;

inline constexpr double kTailTol = 1e-12;
inline constexpr int kDefaultNMax = 40;

struct FockTruncation {
  int n_max = kDefaultNMax;
};

struct SinglePhoton {};
struct NPhoton {
  int n = 1;
};
struct EntangledCoherent {
  Complex alpha;
};
struct TwoModeSqueezed {
  double gamma = 0.0;  // tanh r
};

using InputFieldSpec = std::variant<SinglePhoton, NPhoton, EntangledCoherent, TwoModeSqueezed>;

/// Throws DomainError for n < 1 or |gamma| >= 1.
void validate(const InputFieldSpec& spec);

/// Probability weight of the ideal input beyond n_max photons in either mode.
double tail_probability(const InputFieldSpec& spec, int n_max);
/// Smallest n_max whose tail is within kTailTol.
int required_truncation(const InputFieldSpec& spec);
/// max(requested, required_truncation(spec)).
FockTruncation auto_truncation(const InputFieldSpec& spec, int requested = kDefaultNMax);

/// Joint state of two field modes (Fock 0..n_max each) and two atoms (g, e).
///
/// The e-level at Fock n_max is kept empty: its JC partner |g, n_max + 1>
/// lies outside the truncation, and excitation-conserving evolution from an
/// atoms-in-ground input never populates it.
class JointAtomFieldState {
 public:
  explicit JointAtomFieldState(int n_max);

  int n_max() const { return n_max_; }
  std::size_t index(int n1, int n2, int s1, int s2) const {
    return ((static_cast<std::size_t>(n1) * dim_ + n2) * 2 + s1) * 2 + s2;
  }
  Complex& operator()(int n1, int n2, int s1, int s2) { return amp_[index(n1, n2, s1, s2)]; }
  Complex operator()(int n1, int n2, int s1, int s2) const { return amp_[index(n1, n2, s1, s2)]; }

  const Complex* data() const { return amp_.data(); }
  std::size_t size() const { return amp_.size(); }

  double norm() const;
  /// Probability of total excitation number k.
  std::vector<double> excitation_distribution() const;
  /// Throws InvalidState unless normalized to 1e-10 and the top e-levels are empty.
  void validate() const;

 private:
  int n_max_;
  std::size_t dim_;
  std::vector<Complex> amp_;
};

struct TransferResult {
  double lambda_t;
  qubit::DensityMatrix4 qubit_state;
  double concurrence;
  double purity;
  double input_energy;
  double input_entropy;  // nats
};

/// Field in `spec` (renormalized on the truncated space) times |g>|g>.
/// Throws TruncationError carrying the required n_max when the tail exceeds 1e-12.
JointAtomFieldState build_input(const InputFieldSpec& spec, FockTruncation trunc);

/// Exact resonant JC evolution, each atom coupled only to its own mode.
JointAtomFieldState evolve(const JointAtomFieldState& state, double lambda_t);

/// Partial trace over both modes; atom levels g -> 0, e -> 1.
qubit::DensityMatrix4 reduce_to_qubits(const JointAtomFieldState& state);

/// Schmidt probabilities of the ideal (untruncated) field state, descending.
std::vector<double> schmidt_spectrum(const InputFieldSpec& spec);
double input_entropy(const InputFieldSpec& spec);
double input_energy(const InputFieldSpec& spec);

/// Closed-form / series qubit state. Series run over the same truncated,
/// renormalized input as build_input, so agreement with evolve+reduce is
/// exact up to roundoff.
qubit::DensityMatrix4 analytic_qubit_state(const InputFieldSpec& spec, double lambda_t,
                                           FockTruncation trunc = {});

/// Off-diagonal coherence z of the entangled-coherent output; concurrence is 2z.
double coherent_coherence(Complex alpha, double lambda_t);

/// Largest entrywise |analytic - (evolve + reduce)| over the grid.
double analytic_deviation(const InputFieldSpec& spec, const std::vector<double>& time_grid,
                          FockTruncation trunc, unsigned threads = 1);

/// `steps` evenly spaced points on [0, t_max].
std::vector<double> default_time_grid(std::size_t steps = 2000, double t_max = 4.0 * std::numbers::pi);

/// Maximum concurrence over the grid (ties -> earliest), refined by
/// golden-section search to 1e-8 in lambda_t around the grid optimum.
TransferResult max_transfer(const InputFieldSpec& spec, const std::vector<double>& time_grid,
                            FockTruncation trunc, unsigned threads = 1);

}  // namespace epe::jc
