#include "epe/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "epe/errors.hpp"
#include "epe/parallel.hpp"

namespace epe::sampler {
namespace {

using qubit::Measure;

constexpr int kMaxAttempts = 1000;  // per sample; beyond this the window rejects > 99.9%
constexpr double kBoundTol = 1e-9;
constexpr double kMinPurity = 1e-3;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

bool gaussian_measure(Measure m) { return m == Measure::LogNegativity || m == Measure::Negativity; }

double gmems_log_negativity(double e, double p) {
  const double nu2 = gaussian::ppt_nu_minus_squared(gaussian::gmems_seralian_pt(e, p), 1.0 / (p * p));
  return nu2 > 0.0 ? std::max(0.0, -0.5 * std::log(nu2)) : std::numeric_limits<double>::infinity();
}

std::string describe(const char* what, double lhs, const char* op, double rhs) {
  std::ostringstream os;
  os.precision(17);
  os << what << ": " << lhs << ' ' << op << ' ' << rhs;
  return os.str();
}

}  // namespace

unsigned EPERecord::flags() const {
  return (on_pure_circle ? kOnPureCircle : 0u) | (below_mems ? kBelowMems : 0u) |
         (in_separable_band ? kInSeparableBand : 0u);
}

void validate(const SamplerConfig& cfg) {
  if (cfg.count < 1) throw ConfigError("sample count must be at least 1");
  if (cfg.system == System::Qubit) {
    if (cfg.rank_filter && (*cfg.rank_filter < 1 || *cfg.rank_filter > 4))
      throw ConfigError("rank filter must be in 1..4");
  } else {
    if (!(cfg.energy_min >= 0.0) || !(cfg.energy_max >= cfg.energy_min))
      throw ConfigError("energy window must satisfy 0 <= min <= max");
    if (!gaussian_measure(cfg.measure))
      throw ConfigError("gaussian states support only negativity and log-negativity");
    if (cfg.rank_filter) throw ConfigError("rank filter applies to qubit sampling only");
  }
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

EPERecord qubit_record(const qubit::DensityMatrix4& rho, Measure measure) {
  EPERecord r;
  r.energy = qubit::energy(rho);
  r.purity = qubit::purity(rho);
  const double c = qubit::concurrence(rho);
  r.entanglement = measure == Measure::Concurrence ? c : qubit::entanglement(rho, measure);
  r.on_pure_circle = std::abs(r.purity - 1.0) <= kBoundTol;
  r.below_mems = c <= qubit::mems_max_concurrence(std::min(r.purity, 1.0)) + kBoundTol;
  r.in_separable_band = r.purity < 1.0 / 3.0;
  return r;
}

EPERecord gaussian_record(const gaussian::StandardFormCM& sf, Measure measure) {
  if (!gaussian_measure(measure)) throw ConfigError("unsupported measure for gaussian states");
  EPERecord r;
  r.energy = gaussian::energy(sf);
  r.purity = gaussian::purity(sf);
  const double en = gaussian::log_negativity(sf);
  r.entanglement = measure == Measure::LogNegativity ? en : gaussian::negativity(sf);
  r.on_pure_circle = r.purity >= 1.0 - kBoundTol;
  r.below_mems = en <= gmems_log_negativity(r.energy, std::min(r.purity, 1.0)) + kBoundTol;
  r.in_separable_band = r.purity < 1.0 / (2.0 * r.energy + 1.0);
  return r;
}

QubitSample sample_qubit_state(const SamplerConfig& cfg, std::uint64_t index) {
  const int k = cfg.rank_filter.value_or(4);
  std::mt19937_64 rng(stream_seed(cfg.seed, index));
  std::normal_distribution<double> normal;
  Eigen::Matrix<qubit::Complex, 4, Eigen::Dynamic> g(4, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < 4; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = {re, im};
    }
  qubit::Matrix4c m = g * g.adjoint();
  m = 0.5 * (m + m.adjoint()).eval();
  m /= m.trace().real();
  qubit::DensityMatrix4 rho(m);
  return {rho, qubit_record(rho, cfg.measure)};
}

// sigma = S nu S^T with S = O_a (Z(r1) + Z(r2)) O_b, where each O is a
// passive network: local phases, a beam splitter, local phases.
GaussianSample sample_gaussian_state(const SamplerConfig& cfg, std::uint64_t index) {
  using namespace gaussian;
  std::mt19937_64 rng(stream_seed(cfg.seed, index));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double two_pi = 2.0 * std::numbers::pi;

  const bool bounded = std::isfinite(cfg.energy_max);
  // nu_+ <= 2 E_max + 1 for any state in the window.
  const double nu_max = bounded ? std::min(1.0 / kMinPurity, 2.0 * cfg.energy_max + 1.0) : 1.0 / kMinPurity;
  // A two-mode squeezed vacuum with both squeezes at r_max has energy 2 E_max.
  const double r_max = bounded ? std::asinh(std::sqrt(cfg.energy_max)) : 2.0;

  auto draw_nu = [&] {
    // density ~ 1/nu^2 on [1, nu_max] by inversion
    const double u = unit(rng);
    return 1.0 / (1.0 - u * (1.0 - 1.0 / nu_max));
  };
  auto passive = [&] {
    const Eigen::Matrix4d in = direct_sum(rotation(two_pi * unit(rng)), rotation(two_pi * unit(rng)));
    const Eigen::Matrix4d bs = beam_splitter(0.5 * std::numbers::pi * unit(rng));
    const Eigen::Matrix4d out = direct_sum(rotation(two_pi * unit(rng)), rotation(two_pi * unit(rng)));
    return Eigen::Matrix4d(out * bs * in);
  };

  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    double nu1 = 1.0, nu2 = 1.0;
    if (!cfg.pure_only) {
      nu1 = draw_nu();
      nu2 = draw_nu();
    }
    const double r1 = r_max * unit(rng);
    const double r2 = r_max * unit(rng);
    const Eigen::Matrix4d o_a = passive();
    const Eigen::Matrix4d o_b = passive();
    if (nu1 * nu2 > 1.0 / kMinPurity) continue;

    const Eigen::Matrix4d s = o_a * direct_sum(single_mode_squeeze(r1), single_mode_squeeze(r2)) * o_b;
    const Eigen::Vector4d nu(std::min(nu1, nu2), std::min(nu1, nu2), std::max(nu1, nu2), std::max(nu1, nu2));
    Eigen::Matrix4d sigma = s * nu.asDiagonal() * s.transpose();
    sigma = 0.5 * (sigma + sigma.transpose()).eval();
    const CovarianceMatrix cm(sigma);
    const double e = 0.25 * sigma.trace() - 1.0;
    if (e < cfg.energy_min || e > cfg.energy_max) continue;
    const StandardFormCM sf = reduce_to_standard_form(cm);
    return {sf, gaussian_record(sf, cfg.measure)};
  }
  throw ConfigError("gaussian sampler rejected " + std::to_string(kMaxAttempts) +
                    " consecutive draws at index " + std::to_string(index) + " (energy window [" +
                    std::to_string(cfg.energy_min) + ", " + std::to_string(cfg.energy_max) +
                    "] is unreachable)");
}

std::vector<QubitSample> sample_qubit_states(const SamplerConfig& cfg, unsigned threads) {
  validate(cfg);
  if (cfg.system != System::Qubit) throw ConfigError("configuration is not for qubit sampling");
  std::vector<std::optional<QubitSample>> slots(cfg.count);
  parallel_for(cfg.count, threads, [&](std::size_t i) { slots[i] = sample_qubit_state(cfg, i); });
  std::vector<QubitSample> out;
  out.reserve(cfg.count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<GaussianSample> sample_gaussian_states(const SamplerConfig& cfg, unsigned threads) {
  validate(cfg);
  if (cfg.system != System::Gaussian) throw ConfigError("configuration is not for gaussian sampling");
  std::vector<std::optional<GaussianSample>> slots(cfg.count);
  // Exceptions cannot cross the worker threads; keep the first one by index.
  std::vector<std::string> errors(cfg.count);
  parallel_for(cfg.count, threads, [&](std::size_t i) {
    try {
      slots[i] = sample_gaussian_state(cfg, i);
    } catch (const std::exception& ex) {
      errors[i] = ex.what();
    }
  });
  std::vector<GaussianSample> out;
  out.reserve(cfg.count);
  for (std::size_t i = 0; i < cfg.count; ++i) {
    if (!errors[i].empty()) throw ConfigError(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

std::vector<std::string> containment_violations(const qubit::DensityMatrix4& rho) {
  std::vector<std::string> out;
  const double c = qubit::concurrence(rho);
  const double p = std::min(qubit::purity(rho), 1.0);
  const double e = std::clamp(qubit::energy(rho), 0.0, 2.0);
  const double c_max = qubit::mems_max_concurrence(p);
  if (c > c_max + kBoundTol) out.push_back(describe("concurrence above MEMS frontier", c, ">", c_max));
  const double p_min = qubit::separable_min_purity(e);
  if (p < p_min - kBoundTol) out.push_back(describe("purity below minimum at this energy", p, "<", p_min));
  if (std::abs(p - 1.0) <= kBoundTol) {
    const double r = (e - 1.0) * (e - 1.0) + c * c;
    if (r > 1.0 + 1e-10) out.push_back(describe("pure state outside the unit disc", r, ">", 1.0));
  }
  return out;
}

std::vector<std::string> containment_violations(const gaussian::StandardFormCM& sf) {
  using namespace gaussian;
  std::vector<std::string> out;
  const Invariants inv = invariants(sf);
  const SymplecticSpectrum spec = symplectic_eigenvalues(inv);
  if (!spec.is_physical()) {
    out.push_back(describe("nu_- below 1", spec.nu_minus, "<", 1.0));
    return out;
  }
  const double delta = inv.seralian();
  if (delta > 1.0 + inv.det_sigma + 1e-10 * std::max(1.0, inv.det_sigma))
    out.push_back(describe("seralian above 1 + Det sigma", delta, ">", 1.0 + inv.det_sigma));
  const double e = energy(sf);
  const double p = purity(sf);
  const double p_low = 1.0 / ((e + 1.0) * (e + 1.0));
  if (p < p_low - kBoundTol) out.push_back(describe("purity below 1/(E+1)^2", p, "<", p_low));
  const double en = log_negativity(sf);
  if (en > 0.0 && p <= 1.0 / (2.0 * e + 1.0) - kBoundTol)
    out.push_back(describe("entangled state inside the separability band", p, "<=", 1.0 / (2.0 * e + 1.0)));
  if (p >= p_low - kBoundTol) {
    const double en_max = gmems_log_negativity(e, std::clamp(p, p_low, 1.0));
    if (en > en_max + kBoundTol) out.push_back(describe("log-negativity above GMEMS", en, ">", en_max));
  }
  return out;
}

}  // namespace epe::sampler
