#include "epe/jc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "epe/errors.hpp"
#include "epe/parallel.hpp"

namespace epe::jc {
namespace {

using qubit::DensityMatrix4;
using qubit::Matrix4c;

const Complex kI{0.0, 1.0};

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Sum_{k > n} e^{-x} x^k / k!, accumulated directly to avoid 1 - cdf cancellation.
double poisson_tail(double x, int n) {
  if (x <= 0.0) return 0.0;
  int k = n + 1;
  double term = std::exp(-x + k * std::log(x) - std::lgamma(k + 1.0));
  double sum = 0.0;
  while (true) {
    sum += term;
    term *= x / (k + 1.0);
    ++k;
    if (k > x && term <= 1e-18 * sum) break;
    if (term == 0.0) break;
  }
  return sum;
}

// Coherent-state amplitudes e^{-|a|^2/2} a^n / sqrt(n!), n = 0..n_max.
std::vector<Complex> coherent_amplitudes(Complex alpha, int n_max) {
  std::vector<Complex> c(n_max + 1);
  c[0] = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n <= n_max; ++n) c[n] = c[n - 1] * alpha / std::sqrt(static_cast<double>(n));
  return c;
}

double entropy_nats(const std::vector<double>& p) {
  double s = 0.0;
  for (double x : p)
    if (x > 0.0) s -= x * std::log(x);
  return s;
}

Matrix4c hermitian_part(const Matrix4c& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

void validate(const InputFieldSpec& spec) {
  std::visit(overloaded{
                 [](const SinglePhoton&) {},
                 [](const NPhoton& s) {
                   if (s.n < 1) throw DomainError("n-photon input needs n >= 1");
                 },
                 [](const EntangledCoherent& s) {
                   if (!std::isfinite(s.alpha.real()) || !std::isfinite(s.alpha.imag()))
                     throw DomainError("coherent amplitude must be finite");
                 },
                 [](const TwoModeSqueezed& s) {
                   if (!(std::abs(s.gamma) < 1.0)) throw DomainError("squeezing gamma must satisfy |gamma| < 1");
                 },
             },
             spec);
}

double tail_probability(const InputFieldSpec& spec, int n_max) {
  validate(spec);
  return std::visit(overloaded{
                        [&](const SinglePhoton&) { return n_max >= 1 ? 0.0 : 1.0; },
                        [&](const NPhoton& s) { return n_max >= s.n ? 0.0 : 1.0; },
                        [&](const EntangledCoherent& s) {
                          const double x = std::norm(s.alpha);
                          return poisson_tail(x, n_max) / (1.0 + std::exp(-x));
                        },
                        [&](const TwoModeSqueezed& s) { return std::pow(s.gamma * s.gamma, n_max + 1); },
                    },
                    spec);
}

int required_truncation(const InputFieldSpec& spec) {
  int n = 1;
  while (tail_probability(spec, n) > kTailTol) ++n;
  return n;
}

FockTruncation auto_truncation(const InputFieldSpec& spec, int requested) {
  return {std::max(requested, required_truncation(spec))};
}

JointAtomFieldState::JointAtomFieldState(int n_max)
    : n_max_(n_max), dim_(static_cast<std::size_t>(n_max) + 1) {
  if (n_max < 1) throw DomainError("Fock truncation needs n_max >= 1");
  amp_.assign(dim_ * dim_ * 4, Complex{});
}

double JointAtomFieldState::norm() const {
  double s = 0.0;
  for (const Complex& a : amp_) s += std::norm(a);
  return std::sqrt(s);
}

std::vector<double> JointAtomFieldState::excitation_distribution() const {
  std::vector<double> p(2 * n_max_ + 3, 0.0);
  for (int n1 = 0; n1 <= n_max_; ++n1)
    for (int n2 = 0; n2 <= n_max_; ++n2)
      for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2) p[n1 + n2 + s1 + s2] += std::norm((*this)(n1, n2, s1, s2));
  return p;
}

void JointAtomFieldState::validate() const {
  if (std::abs(norm() - 1.0) > 1e-10) throw InvalidState("joint atom-field state is not normalized");
  for (int n = 0; n <= n_max_; ++n)
    for (int s = 0; s < 2; ++s) {
      if (std::abs((*this)(n_max_, n, 1, s)) > 1e-12 || std::abs((*this)(n, n_max_, s, 1)) > 1e-12)
        throw InvalidState("excited atom at the Fock cutoff has no partner inside the truncation");
    }
}

JointAtomFieldState build_input(const InputFieldSpec& spec, FockTruncation trunc) {
  validate(spec);
  if (trunc.n_max < 1) throw DomainError("Fock truncation needs n_max >= 1");
  const double tail = tail_probability(spec, trunc.n_max);
  if (tail > kTailTol) {
    const int required = required_truncation(spec);
    throw TruncationError("input tail " + std::to_string(tail) + " beyond n_max = " +
                              std::to_string(trunc.n_max) + " exceeds 1e-12; use n_max >= " +
                              std::to_string(required),
                          required);
  }
  JointAtomFieldState state(trunc.n_max);
  const double r2 = 1.0 / std::sqrt(2.0);
  std::visit(overloaded{
                 [&](const SinglePhoton&) {
                   state(0, 1, 0, 0) = r2;
                   state(1, 0, 0, 0) = r2;
                 },
                 [&](const NPhoton& s) {
                   state(0, s.n, 0, 0) = r2;
                   state(s.n, 0, 0, 0) = r2;
                 },
                 [&](const EntangledCoherent& s) {
                   const double norm = 1.0 / std::sqrt(2.0 * (1.0 + std::exp(-std::norm(s.alpha))));
                   const auto c = coherent_amplitudes(s.alpha, trunc.n_max);
                   for (int k = 0; k <= trunc.n_max; ++k) {
                     state(0, k, 0, 0) += norm * c[k];
                     state(k, 0, 0, 0) += norm * c[k];
                   }
                 },
                 [&](const TwoModeSqueezed& s) {
                   const double a = std::sqrt(1.0 - s.gamma * s.gamma);
                   double g = 1.0;
                   for (int n = 0; n <= trunc.n_max; ++n, g *= s.gamma) state(n, n, 0, 0) = a * g;
                 },
             },
             spec);
  const double norm = state.norm();
  for (int n1 = 0; n1 <= trunc.n_max; ++n1)
    for (int n2 = 0; n2 <= trunc.n_max; ++n2) state(n1, n2, 0, 0) /= norm;
  return state;
}

// In each pair the sector {|g,n>, |e,n-1>} rotates as
//   |g,n>   -> cos(sqrt(n) lt) |g,n>   - i sin(sqrt(n) lt) |e,n-1>
//   |e,n-1> -> cos(sqrt(n) lt) |e,n-1> - i sin(sqrt(n) lt) |g,n>
JointAtomFieldState evolve(const JointAtomFieldState& state, double lambda_t) {
  JointAtomFieldState out = state;
  const int n_max = state.n_max();
  std::vector<double> c(n_max + 1), s(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    const double w = std::sqrt(static_cast<double>(n)) * lambda_t;
    c[n] = std::cos(w);
    s[n] = std::sin(w);
  }
  // Atom 1 with mode 1.
  for (int n1 = 1; n1 <= n_max; ++n1)
    for (int n2 = 0; n2 <= n_max; ++n2)
      for (int s2 = 0; s2 < 2; ++s2) {
        Complex& g = out(n1, n2, 0, s2);
        Complex& e = out(n1 - 1, n2, 1, s2);
        if (g == Complex{} && e == Complex{}) continue;
        const Complex g0 = g, e0 = e;
        g = c[n1] * g0 - kI * s[n1] * e0;
        e = c[n1] * e0 - kI * s[n1] * g0;
      }
  // Atom 2 with mode 2.
  for (int n1 = 0; n1 <= n_max; ++n1)
    for (int n2 = 1; n2 <= n_max; ++n2)
      for (int s1 = 0; s1 < 2; ++s1) {
        Complex& g = out(n1, n2, s1, 0);
        Complex& e = out(n1, n2 - 1, s1, 1);
        if (g == Complex{} && e == Complex{}) continue;
        const Complex g0 = g, e0 = e;
        g = c[n2] * g0 - kI * s[n2] * e0;
        e = c[n2] * e0 - kI * s[n2] * g0;
      }
  return out;
}

DensityMatrix4 reduce_to_qubits(const JointAtomFieldState& state) {
  using Rows = Eigen::Matrix<Complex, Eigen::Dynamic, 4, Eigen::RowMajor>;
  const Eigen::Map<const Rows> m(state.data(), static_cast<Eigen::Index>(state.size() / 4), 4);
  const Matrix4c rho = m.transpose() * m.conjugate();
  return DensityMatrix4(hermitian_part(rho));
}

std::vector<double> schmidt_spectrum(const InputFieldSpec& spec) {
  validate(spec);
  return std::visit(overloaded{
                        [](const SinglePhoton&) { return std::vector<double>{0.5, 0.5}; },
                        [](const NPhoton&) { return std::vector<double>{0.5, 0.5}; },
                        [](const EntangledCoherent& s) {
                          // Coefficient matrix N [[2e, t], [t, 0]] in the basis {|0>, |alpha_perp>}
                          // with e = <0|alpha>, t = sqrt(1 - e^2); its eigenvalues are N (e +- 1).
                          const double e = std::exp(-0.5 * std::norm(s.alpha));
                          const double denom = 2.0 * (1.0 + e * e);
                          return std::vector<double>{(1.0 + e) * (1.0 + e) / denom,
                                                     (1.0 - e) * (1.0 - e) / denom};
                        },
                        [](const TwoModeSqueezed& s) {
                          std::vector<double> p;
                          const double g2 = s.gamma * s.gamma;
                          double w = 1.0 - g2;
                          do {
                            p.push_back(w);
                            w *= g2;
                          } while (w > 1e-300 && p.size() < 100000);
                          return p;
                        },
                    },
                    spec);
}

double input_entropy(const InputFieldSpec& spec) { return entropy_nats(schmidt_spectrum(spec)); }

double input_energy(const InputFieldSpec& spec) {
  validate(spec);
  return std::visit(overloaded{
                        [](const SinglePhoton&) { return 1.0; },
                        [](const NPhoton& s) { return static_cast<double>(s.n); },
                        [](const EntangledCoherent& s) {
                          const double x = std::norm(s.alpha);
                          return x / (1.0 + std::exp(-x));
                        },
                        [](const TwoModeSqueezed& s) {
                          const double g2 = s.gamma * s.gamma;
                          return 2.0 * g2 / (1.0 - g2);
                        },
                    },
                    spec);
}

double coherent_coherence(Complex alpha, double lambda_t) {
  const double x = std::norm(alpha);
  const double s = std::sin(lambda_t);
  return x * std::exp(-x) * s * s / (2.0 * (1.0 + std::exp(-x)));
}

qubit::DensityMatrix4 analytic_qubit_state(const InputFieldSpec& spec, double lambda_t,
                                           FockTruncation trunc) {
  validate(spec);
  Matrix4c rho = Matrix4c::Zero();
  std::visit(
      overloaded{
          [&](const SinglePhoton&) {
            // cos^2 |gg><gg| + sin^2 |Psi+><Psi+|
            const double c2 = std::cos(lambda_t) * std::cos(lambda_t);
            const double s2 = 1.0 - c2;
            rho(0, 0) = c2;
            rho(1, 1) = rho(2, 2) = rho(1, 2) = rho(2, 1) = 0.5 * s2;
          },
          [&](const NPhoton& s) {
            const double w = std::sqrt(static_cast<double>(s.n)) * lambda_t;
            const double c2 = std::cos(w) * std::cos(w);
            const double s2 = std::sin(w) * std::sin(w);
            rho(0, 0) = c2;
            rho(1, 1) = rho(2, 2) = 0.5 * s2;
            if (s.n == 1) rho(1, 2) = rho(2, 1) = 0.5 * s2;
          },
          [&](const EntangledCoherent& s) {
            if (tail_probability(spec, trunc.n_max) > kTailTol)
              throw TruncationError("truncation too small for the coherent series",
                                    required_truncation(spec));
            const int n_max = trunc.n_max;
            const auto c = coherent_amplitudes(s.alpha, n_max);
            std::vector<double> cs(n_max + 1), sn(n_max + 1);
            for (int n = 0; n <= n_max; ++n) {
              cs[n] = std::cos(std::sqrt(static_cast<double>(n)) * lambda_t);
              sn[n] = std::sin(std::sqrt(static_cast<double>(n)) * lambda_t);
            }
            double weight = 0.0;
            for (int n = 0; n <= n_max; ++n) weight += std::norm(c[n]);
            const double norm2 = 1.0 / (2.0 * weight + 2.0 * std::norm(c[0]));

            double gg = 2.0 * std::norm(c[0]);
            double single = 0.0;
            Complex x = c[0] * std::conj(c[1]) * sn[1];
            for (int n = 0; n <= n_max; ++n) {
              gg += 2.0 * std::norm(c[n]) * cs[n] * cs[n];
              single += std::norm(c[n]) * sn[n] * sn[n];
              if (n >= 1) x += c[n - 1] * std::conj(c[n]) * cs[n - 1] * sn[n];
            }
            x *= kI * norm2;
            const double z = norm2 * std::norm(c[1]) * sn[1] * sn[1];
            rho(0, 0) = norm2 * gg;
            rho(1, 1) = rho(2, 2) = norm2 * single;
            rho(1, 2) = rho(2, 1) = z;
            rho(0, 1) = rho(0, 2) = x;
            rho(1, 0) = rho(2, 0) = std::conj(x);
          },
          [&](const TwoModeSqueezed& s) {
            if (tail_probability(spec, trunc.n_max) > kTailTol)
              throw TruncationError("truncation too small for the squeezed series",
                                    required_truncation(spec));
            const int n_max = trunc.n_max;
            const double g2 = s.gamma * s.gamma;
            double norm = 0.0, w = 1.0;
            for (int n = 0; n <= n_max; ++n, w *= g2) norm += w;
            const double amp = 1.0 / norm;
            // Series in the double angle 2 sqrt(n) lt of the sector rotation.
            auto cos2 = [&](int n) { return std::cos(2.0 * std::sqrt(static_cast<double>(n)) * lambda_t); };
            double a = 0.0, b = 0.0, d = 0.0, x = 0.0;
            w = 1.0;
            for (int n = 0; n <= n_max; ++n, w *= g2) {
              const double cn = cos2(n);
              a += w * (cn + 1.0) * (cn + 1.0);
              b += w * (1.0 - cn * cn);
              d += w * (cn - 1.0) * (cn - 1.0);
              if (n < n_max) x += w * s.gamma * (cos2(n + 1) - 1.0) * (cn + 1.0);
            }
            rho(0, 0) = 0.25 * amp * a;
            rho(1, 1) = rho(2, 2) = 0.25 * amp * b;
            rho(3, 3) = 0.25 * amp * d;
            rho(0, 3) = rho(3, 0) = 0.25 * amp * x;
          },
      },
      spec);
  return DensityMatrix4(rho);
}

double analytic_deviation(const InputFieldSpec& spec, const std::vector<double>& time_grid,
                          FockTruncation trunc, unsigned threads) {
  const JointAtomFieldState input = build_input(spec, trunc);
  std::vector<double> dev(time_grid.size(), 0.0);
  parallel_for(time_grid.size(), threads, [&](std::size_t k) {
    const Matrix4c numeric = reduce_to_qubits(evolve(input, time_grid[k])).matrix();
    const Matrix4c analytic = analytic_qubit_state(spec, time_grid[k], trunc).matrix();
    dev[k] = (numeric - analytic).cwiseAbs().maxCoeff();
  });
  return dev.empty() ? 0.0 : *std::max_element(dev.begin(), dev.end());
}

std::vector<double> default_time_grid(std::size_t steps, double t_max) {
  if (steps < 2) throw ConfigError("time grid needs at least two points");
  std::vector<double> grid(steps);
  for (std::size_t k = 0; k < steps; ++k) grid[k] = t_max * static_cast<double>(k) / static_cast<double>(steps - 1);
  return grid;
}

TransferResult max_transfer(const InputFieldSpec& spec, const std::vector<double>& time_grid,
                            FockTruncation trunc, unsigned threads) {
  if (time_grid.empty()) throw ConfigError("empty time grid");
  for (std::size_t k = 0; k < time_grid.size(); ++k) {
    if (!(time_grid[k] >= 0.0) || (k > 0 && !(time_grid[k] > time_grid[k - 1])))
      throw ConfigError("time grid must be nonnegative and strictly increasing");
  }
  const JointAtomFieldState input = build_input(spec, trunc);
  auto concurrence_at = [&](double t) { return qubit::concurrence(reduce_to_qubits(evolve(input, t))); };

  std::vector<double> values(time_grid.size());
  parallel_for(time_grid.size(), threads, [&](std::size_t k) { values[k] = concurrence_at(time_grid[k]); });

  std::size_t best = 0;
  for (std::size_t k = 1; k < values.size(); ++k)
    if (values[k] > values[best]) best = k;

  double t_best = time_grid[best];
  double c_best = values[best];
  if (time_grid.size() > 1) {
    double lo = time_grid[best == 0 ? 0 : best - 1];
    double hi = time_grid[std::min(best + 1, time_grid.size() - 1)];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
    double f1 = concurrence_at(x1), f2 = concurrence_at(x2);
    while (hi - lo > 1e-8) {
      if (f1 >= f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - inv_phi * (hi - lo);
        f1 = concurrence_at(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + inv_phi * (hi - lo);
        f2 = concurrence_at(x2);
      }
    }
    const double t_mid = 0.5 * (lo + hi);
    const double c_mid = concurrence_at(t_mid);
    if (c_mid > c_best) {
      t_best = t_mid;
      c_best = c_mid;
    }
  }
  const DensityMatrix4 rho = reduce_to_qubits(evolve(input, t_best));
  return {t_best, rho, c_best, qubit::purity(rho), input_energy(spec), input_entropy(spec)};
}

}  // namespace epe::jc
