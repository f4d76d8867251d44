#include <doctest.h>

#include <cmath>

#include "epe/errors.hpp"
#include "epe/sampler.hpp"

using namespace epe::sampler;
using doctest::Approx;

TEST_CASE("config validation") {
  SamplerConfig cfg;
  cfg.count = 0;
  CHECK_THROWS_AS(validate(cfg), epe::ConfigError);
  cfg.count = 5;
  cfg.rank_filter = 5;
  CHECK_THROWS_AS(validate(cfg), epe::ConfigError);
  cfg.rank_filter = 2;
  CHECK_NOTHROW(validate(cfg));
  cfg.system = System::Gaussian;
  cfg.measure = epe::qubit::Measure::Concurrence;
  CHECK_THROWS_AS(validate(cfg), epe::ConfigError);
  cfg.measure = epe::qubit::Measure::LogNegativity;
  cfg.energy_min = 3.0;
  cfg.energy_max = 1.0;
  CHECK_THROWS_AS(validate(cfg), epe::ConfigError);
}

TEST_CASE("stream seeds differ and are stable") {
  CHECK(stream_seed(1, 0) != stream_seed(1, 1));
  CHECK(stream_seed(1, 0) != stream_seed(2, 0));
  CHECK(stream_seed(42, 7) == stream_seed(42, 7));
}

TEST_CASE("qubit sampling is deterministic across thread counts") {
  SamplerConfig cfg;
  cfg.seed = 42;
  cfg.count = 200;
  const auto a = sample_qubit_states(cfg, 1);
  const auto b = sample_qubit_states(cfg, 4);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].record.energy == b[i].record.energy);
    CHECK(a[i].record.entanglement == b[i].record.entanglement);
    CHECK(a[i].record.purity == b[i].record.purity);
    CHECK(a[i].state.matrix() == sample_qubit_state(cfg, i).state.matrix());
  }
}

TEST_CASE("rank filter") {
  SamplerConfig cfg;
  cfg.seed = 3;
  cfg.count = 300;
  cfg.rank_filter = 1;
  for (const auto& s : sample_qubit_states(cfg)) {
    CHECK(s.record.purity == Approx(1.0).epsilon(1e-10));
    CHECK(s.record.on_pure_circle);
  }
}

TEST_CASE("qubit containment") {
  SamplerConfig cfg;
  cfg.seed = 9;
  cfg.count = 5000;
  for (const auto& s : sample_qubit_states(cfg, 2)) {
    CHECK(containment_violations(s.state).empty());
    CHECK(s.record.below_mems);
    CHECK(s.record.in_separable_band == (s.record.purity < 1.0 / 3.0));
    if (s.record.in_separable_band) CHECK(s.record.entanglement == 0.0);
  }
}

TEST_CASE("rank-2 samples approach the frontier") {
  SamplerConfig cfg;
  cfg.seed = 1;
  cfg.count = 100000;
  cfg.rank_filter = 2;
  const auto samples = sample_qubit_states(cfg, 2);
  // Rank-2 states have purity >= 1/2, so probe inside that range.
  for (double p : {0.6, 0.7, 0.9}) {
    double best_gap = 1.0;
    for (const auto& s : samples) {
      if (std::abs(s.record.purity - p) > 0.02) continue;
      best_gap = std::min(best_gap, epe::qubit::mems_max_concurrence(s.record.purity) - s.record.entanglement);
    }
    CHECK(best_gap < 0.05);
  }
}

TEST_CASE("gaussian sampling") {
  SamplerConfig cfg;
  cfg.system = System::Gaussian;
  cfg.measure = epe::qubit::Measure::LogNegativity;
  cfg.seed = 5;
  cfg.count = 3000;
  cfg.energy_max = 4.0;
  const auto a = sample_gaussian_states(cfg, 1);
  const auto b = sample_gaussian_states(cfg, 3);
  int entangled = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& r = a[i].record;
    CHECK(r.energy == b[i].record.energy);
    CHECK(r.energy <= 4.0 + 1e-12);
    CHECK(containment_violations(a[i].cm).empty());
    CHECK(r.purity >= 1.0 / std::pow(r.energy + 1.0, 2) - 1e-9);
    if (r.entanglement > 0.0) {
      ++entangled;
      CHECK(r.purity > 1.0 / (2 * r.energy + 1) - 1e-9);
    }
  }
  CHECK(entangled > 0);
  cfg.pure_only = true;
  cfg.count = 300;
  for (const auto& s : sample_gaussian_states(cfg)) CHECK(s.record.purity == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("flag bits") {
  EPERecord r;
  r.on_pure_circle = true;
  r.in_separable_band = true;
  CHECK(r.flags() == (kOnPureCircle | kInSeparableBand));
}

TEST_CASE("grid parsing") {
  const auto g = parse_grid("0:2:0.5");
  REQUIRE(g.size() == 5);
  CHECK(g.back() == 2.0);
  CHECK(parse_grid("1").size() == 1);
  CHECK(parse_grid("1:1:1").size() == 1);
  CHECK(parse_grid("0:1:0.1").size() == 11);
  CHECK(parse_grid("2:1:0.5").empty());
  CHECK_THROWS_AS(parse_grid("0:1"), epe::ConfigError);
  CHECK_THROWS_AS(parse_grid("0:1:0"), epe::ConfigError);
  CHECK_THROWS_AS(parse_grid("a:b:c"), epe::ConfigError);
}

TEST_CASE("boundary tables") {
  auto t = boundary_table(System::Qubit, Curve::Separable, {0.0, 0.5, 1.0, 1.5, 2.0});
  REQUIRE(t.rows.size() == 5);
  const double expected[] = {1.0, 3.0 / 8, 0.25, 3.0 / 8, 1.0};
  for (int i = 0; i < 5; ++i) CHECK(t.rows[i][1] == Approx(expected[i]));
  auto band = boundary_table(System::Gaussian, Curve::Band, {1.0});
  CHECK(band.rows[0][1] == Approx(0.25));
  CHECK(band.rows[0][2] == Approx(1.0 / 3.0));
  CHECK(boundary_table(System::Qubit, Curve::Pure, {}).rows.empty());
  CHECK_THROWS_AS(boundary_table(System::Qubit, Curve::Tmsv, {1.0}), epe::ConfigError);
  CHECK_THROWS_AS(boundary_table(System::Qubit, Curve::Separable, {3.0}), epe::DomainError);
  auto tm = boundary_table(System::Gaussian, Curve::Tmsv, {2.0});
  CHECK(tm.rows[0][1] == Approx(-std::log(3 - std::sqrt(8.0))));
  auto gm = boundary_table(System::Gaussian, Curve::Gmems, {1.0 / 9.0, 1.0}, 2.0);
  CHECK(gm.rows[0][1] == Approx(0.0));
  CHECK(gm.rows[1][1] == Approx(-std::log(3 - std::sqrt(8.0))));
  auto mems = boundary_table(System::Qubit, Curve::Mems, {0.9});
  CHECK(mems.columns.size() == 4);
  CHECK(mems.rows[0][2] == Approx(0.9));
  CHECK(mems.rows[0][3] == Approx(1.1));
}
