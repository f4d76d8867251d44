#include <cmath>
#include <sstream>
#include <string>

#include "epe/errors.hpp"
#include "epe/gaussian.hpp"
#include "epe/qubit.hpp"
#include "epe/sampler.hpp"

namespace epe::sampler {
namespace {

bool is_qubit_curve(Curve c) { return c == Curve::Separable || c == Curve::Mems || c == Curve::Pure; }

void require(bool ok, const std::string& what, double x) {
  if (!ok) throw DomainError(what + " (grid value " + std::to_string(x) + ")");
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("malformed grid '" + spec + "', expected start:stop:step");
    }
    if (used != item.size() || !std::isfinite(v)) throw ConfigError("malformed grid '" + spec + "'");
    parts.push_back(v);
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3) throw ConfigError("malformed grid '" + spec + "', expected start:stop:step");
  const double start = parts[0], stop = parts[1], step = parts[2];
  if (!(step > 0.0)) throw ConfigError("grid step must be positive");
  std::vector<double> grid;
  if (start > stop) return grid;
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  grid.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = start + static_cast<double>(i) * step;
    if (std::abs(v - stop) <= 1e-9 * std::max(1.0, step)) v = stop;
    grid.push_back(v);
  }
  return grid;
}

Table boundary_table(System system, Curve curve, const std::vector<double>& grid, double energy) {
  if (is_qubit_curve(curve) != (system == System::Qubit))
    throw ConfigError("curve does not belong to the requested system");
  Table t;
  switch (curve) {
    case Curve::Separable:
      t.columns = {"energy", "purity_min"};
      for (double e : grid) {
        require(e >= 0.0 && e <= 2.0, "two-qubit energy must lie in [0,2]", e);
        t.rows.push_back({e, qubit::separable_min_purity(e)});
      }
      break;
    case Curve::Mems:
      t.columns = {"concurrence", "purity", "energy_min", "energy_max"};
      for (double c : grid) {
        require(c >= 0.0 && c <= 1.0, "concurrence must lie in [0,1]", c);
        const auto [lo, hi] = qubit::mems_energy_range(c);
        t.rows.push_back({c, qubit::mems_purity(c), lo, hi});
      }
      break;
    case Curve::Pure:
      t.columns = {"energy", "concurrence_max"};
      for (double e : grid) {
        require(e >= 0.0 && e <= 2.0, "two-qubit energy must lie in [0,2]", e);
        t.rows.push_back({e, std::sqrt(std::max(0.0, 1.0 - (e - 1.0) * (e - 1.0)))});
      }
      break;
    case Curve::Band:
      t.columns = {"energy", "purity_low", "purity_high"};
      for (double e : grid) {
        require(e >= 0.0, "energy must be nonnegative", e);
        const auto band = gaussian::separability_band(e);
        t.rows.push_back({e, band.purity_low, band.purity_high});
      }
      break;
    case Curve::Tmsv:
      t.columns = {"energy", "log_negativity"};
      for (double e : grid) {
        require(e >= 0.0, "energy must be nonnegative", e);
        t.rows.push_back({e, gaussian::log_negativity(gaussian::two_mode_squeezed_vacuum(e))});
      }
      break;
    case Curve::Gmems:
    case Curve::Glems:
      t.columns = {"purity", "log_negativity", "seralian_pt"};
      require(energy >= 0.0, "energy must be nonnegative", energy);
      for (double p : grid) {
        require(p > 0.0 && p <= 1.0, "purity must lie in (0,1]", p);
        const auto sf = curve == Curve::Gmems ? gaussian::gmems(energy, p) : gaussian::glems(energy, p);
        t.rows.push_back({p, gaussian::log_negativity(sf), gaussian::invariants(sf).seralian_pt()});
      }
      break;
  }
  return t;
}

}  // namespace epe::sampler
