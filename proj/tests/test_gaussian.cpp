#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "epe/errors.hpp"
#include "epe/gaussian.hpp"

using namespace epe::gaussian;
using doctest::Approx;

namespace {

// Symplectic eigenvalues as the moduli of the eigenvalues of i Omega sigma.
std::pair<double, double> spectrum_oracle(const Eigen::Matrix4d& sigma) {
  const Eigen::Matrix4cd m = std::complex<double>(0.0, 1.0) * (symplectic_form() * sigma).cast<std::complex<double>>();
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(m);
  std::vector<double> v;
  for (int i = 0; i < 4; ++i) v.push_back(std::abs(es.eigenvalues()(i)));
  std::sort(v.begin(), v.end());
  return {v[0], v[3]};
}

Eigen::Matrix4d partial_transpose(const Eigen::Matrix4d& sigma) {
  const Eigen::Matrix4d t = Eigen::Vector4d(1, 1, 1, -1).asDiagonal();
  return t * sigma * t;
}

Eigen::Matrix4d random_local_symplectic(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> phi(0.0, 2 * std::numbers::pi), r(-0.8, 0.8);
  auto local = [&] { return Eigen::Matrix2d(rotation(phi(rng)) * single_mode_squeeze(r(rng)) * rotation(phi(rng))); };
  return direct_sum(local(), local());
}

}  // namespace

TEST_CASE("standard form invariants") {
  StandardFormCM vac(1, 1, 0, 0);
  CHECK(expand(vac).matrix().isApprox(Eigen::Matrix4d::Identity()));
  CHECK(seralian(vac) == Approx(2.0));
  CHECK(det_sigma(vac) == Approx(1.0));
  StandardFormCM tmsv(3, 3, std::sqrt(8.0), -std::sqrt(8.0));
  CHECK(seralian(tmsv) == Approx(2.0));
  CHECK(det_sigma(tmsv) == Approx(1.0));
  StandardFormCM th(3, 3, 0, 0);
  CHECK(seralian(th) == Approx(18.0));
  CHECK(det_sigma(th) == Approx(81.0));
  CHECK_THROWS_AS(StandardFormCM(0.5, 1, 0, 0), epe::InvalidCovariance);
  CHECK_THROWS_AS(StandardFormCM(NAN, 1, 0, 0), epe::InvalidCovariance);
  Eigen::Matrix4d asym = Eigen::Matrix4d::Identity();
  asym(0, 1) = 0.1;
  CHECK_THROWS_AS(CovarianceMatrix{asym}, epe::InvalidCovariance);
}

TEST_CASE("symplectic eigenvalues") {
  auto s = symplectic_eigenvalues(StandardFormCM(1, 1, 0, 0));
  CHECK(s.nu_minus == Approx(1.0));
  CHECK(s.nu_plus == Approx(1.0));
  s = symplectic_eigenvalues(StandardFormCM(3, 3, 0, 0));
  CHECK(s.nu_minus == Approx(3.0));
  CHECK(s.nu_plus == Approx(3.0));
  s = symplectic_eigenvalues(StandardFormCM(3, 3, std::sqrt(8.0), -std::sqrt(8.0)));
  CHECK(s.nu_minus == Approx(1.0));
  CHECK(s.nu_plus == Approx(1.0));
  CHECK_FALSE(is_physical(StandardFormCM(1, 1, 0.5, 0)));
  CHECK_THROWS_AS(purity(StandardFormCM(1, 1, 0.5, 0)), epe::InvalidCovariance);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 300; ++k) {
    const double a = 1 + 4 * u(rng), b = 1 + 4 * u(rng);
    const double lim = std::sqrt((a - 1) * (b - 1));
    StandardFormCM sf(a, b, lim * u(rng), -lim * u(rng));
    const auto ref = spectrum_oracle(expand(sf).matrix());
    const auto got = symplectic_eigenvalues(sf);
    CHECK(got.nu_minus == Approx(ref.first).epsilon(1e-9));
    CHECK(got.nu_plus == Approx(ref.second).epsilon(1e-9));
    const auto pt = spectrum_oracle(partial_transpose(expand(sf).matrix()));
    CHECK(ppt_spectrum(sf) == Approx(pt.first).epsilon(1e-9));
    const auto via_invariants = symplectic_eigenvalues(invariants(sf));
    CHECK(via_invariants.nu_plus == Approx(got.nu_plus).epsilon(1e-9));
    if (got.nu_plus - got.nu_minus > 1e-3) CHECK(via_invariants.nu_minus == Approx(got.nu_minus).epsilon(1e-9));
    CHECK(ppt_spectrum(invariants(sf)) == Approx(ppt_spectrum(sf)).epsilon(1e-6));
    // Uncertainty relation in invariant form.
    CHECK(seralian(sf) <= 1 + det_sigma(sf) + 1e-9);
  }
}

TEST_CASE("purity and energy") {
  StandardFormCM vac(1, 1, 0, 0);
  CHECK(purity(vac) == Approx(1.0));
  CHECK(energy(vac) == Approx(0.0));
  StandardFormCM tmsv(3, 3, std::sqrt(8.0), -std::sqrt(8.0));
  CHECK(purity(tmsv) == Approx(1.0));
  CHECK(energy(tmsv) == Approx(2.0));
  CHECK(purity(maximally_mixed(1.0)) == Approx(0.25));
  CHECK(local_photon_number(3.0) == Approx(1.0));
}

TEST_CASE("log negativity") {
  CHECK(ppt_spectrum(StandardFormCM(3, 3, 0, 0)) == Approx(3.0));
  CHECK(log_negativity(StandardFormCM(3, 3, 0, 0)) == 0.0);
  StandardFormCM tmsv(3, 3, std::sqrt(8.0), -std::sqrt(8.0));
  CHECK(ppt_spectrum(tmsv) == Approx(3 - std::sqrt(8.0)).epsilon(1e-12));
  CHECK(log_negativity(tmsv) == Approx(1.76275).epsilon(1e-5));
  CHECK(negativity(tmsv) == Approx((1 - (3 - std::sqrt(8.0))) / (2 * (3 - std::sqrt(8.0)))));
  CHECK(log_negativity(StandardFormCM(1, 1, 0, 0)) == 0.0);
  CHECK(is_separable(StandardFormCM(1, 1, 0, 0)));
  CHECK_FALSE(is_separable(tmsv));
}

TEST_CASE("two-mode squeezed vacuum") {
  auto v = two_mode_squeezed_vacuum(0.0);
  CHECK(v.a() == Approx(1.0));
  CHECK(v.c_plus() == Approx(0.0));
  auto t2 = two_mode_squeezed_vacuum(2.0);
  CHECK(t2.a() == Approx(3.0));
  CHECK(t2.c_plus() == Approx(std::sqrt(8.0)));
  CHECK(t2.c_minus() == Approx(-std::sqrt(8.0)));
  CHECK(log_negativity(t2) == Approx(-std::log(3 - std::sqrt(8.0))).epsilon(1e-12));
  CHECK(ppt_spectrum(two_mode_squeezed_vacuum(1.0)) == Approx(2 - std::sqrt(3.0)).epsilon(1e-12));
  double prev = -1;
  for (int i = 0; i <= 40; ++i) {
    const double en = log_negativity(two_mode_squeezed_vacuum(i * 0.05));
    CHECK(en >= prev);
    prev = en;
  }
}

TEST_CASE("thermal products") {
  auto v = thermal_product(0, 0);
  CHECK(v.a() == Approx(1.0));
  auto t = thermal_product(1, 1);
  CHECK(t.a() == Approx(3.0));
  CHECK(purity(t) == Approx(1.0 / 9.0));
  CHECK(purity(t) == Approx(1.0 / std::pow(energy(t) + 1, 2)));
  auto t10 = thermal_product(1, 0);
  CHECK(t10.a() == Approx(3.0));
  CHECK(t10.b() == Approx(1.0));
  CHECK(purity(t10) == Approx(1.0 / 3.0));
  CHECK(energy(t10) == Approx(1.0));
}

TEST_CASE("local squeezing") {
  StandardFormCM tmsv(3, 3, std::sqrt(8.0), -std::sqrt(8.0));
  CHECK(local_squeeze(tmsv, 0.0).matrix().isApprox(expand(tmsv).matrix()));
  const double r = 0.5 * std::acosh(2.0);
  const auto sq = local_squeeze(tmsv, r);
  CHECK(energy(sq) == Approx(5.0));
  CHECK(purity(sq) == Approx(1.0));
  CHECK(log_negativity(sq) == Approx(log_negativity(tmsv)));
  const auto vs = local_squeeze(StandardFormCM(1, 1, 0, 0), 1.0);
  CHECK(energy(vs) == Approx(std::cosh(2.0) - 1).epsilon(1e-12));
  CHECK(purity(vs) == Approx(1.0));
  CHECK(log_negativity(vs) == 0.0);
}

TEST_CASE("gmems") {
  auto g = gmems(2.0, 1.0);
  CHECK(g.a() == Approx(3.0));
  CHECK(g.c_plus() == Approx(std::sqrt(8.0)));
  CHECK(ppt_spectrum(gmems(1.0, 1.0 / 3.0)) == Approx(1.0).epsilon(1e-12));
  auto mm = gmems(1.0, 0.25);
  CHECK(mm.a() == Approx(2.0));
  CHECK(mm.c_plus() == Approx(0.0));
  CHECK(gmems_seralian_pt(1.0, 1.0 / 3.0) == Approx(10.0));
  for (double e : {0.5, 1.0, 2.0, 4.0})
    for (int i = 0; i <= 10; ++i) {
      const auto band = separability_band(e);
      const double p = band.purity_low + (1.0 - band.purity_low) * i / 10.0;
      const auto s = gmems(e, p);
      CHECK(energy(s) == Approx(e));
      CHECK(purity(s) == Approx(p).epsilon(1e-10));
      CHECK(invariants(s).seralian_pt() == Approx(gmems_seralian_pt(e, p)));
    }
  CHECK_THROWS_AS(gmems(1.0, 0.2), epe::DomainError);
  CHECK_THROWS_AS(gmems(1.0, 1.2), epe::DomainError);
}

TEST_CASE("glems") {
  const auto b = glems(1.0, 1.0 / std::sqrt(7.0));
  CHECK(glems_seralian_pt(1.0, 1.0 / std::sqrt(7.0)) == Approx(8.0));
  CHECK(ppt_spectrum(b) == Approx(1.0).epsilon(1e-9));
  const auto l = glems(1.0, 1.0 / 3.0);
  CHECK(glems_seralian_pt(1.0, 1.0 / 3.0) == Approx(6.0));
  CHECK(ppt_spectrum(l) == Approx(std::sqrt(3.0)).epsilon(1e-9));
  const auto pure = glems(2.0, 1.0);
  CHECK(purity(pure) == Approx(1.0));
  CHECK(log_negativity(pure) == Approx(log_negativity(gmems(2.0, 1.0))));
  for (double e : {0.5, 1.0, 2.0, 3.0})
    for (int i = 0; i <= 8; ++i) {
      const double p = 1.0 / (2 * e + 1) + (1.0 - 1.0 / (2 * e + 1)) * i / 8.0;
      const auto s = glems(e, p);
      const auto nu = symplectic_eigenvalues(s);
      CHECK(nu.nu_minus == Approx(1.0).epsilon(1e-8));
      CHECK(nu.nu_plus == Approx(1.0 / p).epsilon(1e-8));
      CHECK(energy(s) == Approx(e));
      CHECK(invariants(s).seralian_pt() == Approx(glems_seralian_pt(e, p)).epsilon(1e-9));
      CHECK(log_negativity(s) <= log_negativity(gmems(e, p)) + 1e-9);
    }
}

TEST_CASE("separability band") {
  auto b = separability_band(1.0);
  CHECK(b.purity_low == Approx(0.25));
  CHECK(b.purity_high == Approx(1.0 / 3.0));
  CHECK(band_width(1e-8) < 1e-7);
  // Golden-section maximization of the width, independent of any closed form.
  double lo = 0.1, hi = 10.0;
  const double g = (std::sqrt(5.0) - 1) / 2;
  while (hi - lo > 1e-10) {
    const double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    if (band_width(x1) > band_width(x2)) hi = x2; else lo = x1;
  }
  CHECK(std::abs(0.5 * (lo + hi) - (1 + std::sqrt(5.0)) / 2) < 1e-6);
  const auto gb = glems_separable_band(1.0);
  CHECK(gb.purity_low == Approx(1.0 / 3.0));
  CHECK(gb.purity_high == Approx(1.0 / std::sqrt(7.0)));
}

TEST_CASE("reduce to standard form") {
  StandardFormCM sf(2.5, 1.7, 1.1, -0.6);
  REQUIRE(is_physical(sf));
  auto back = reduce_to_standard_form(expand(sf));
  CHECK(back.a() == Approx(2.5));
  CHECK(back.b() == Approx(1.7));
  CHECK(back.c_plus() == Approx(1.1));
  CHECK(back.c_minus() == Approx(-0.6));

  auto mm = reduce_to_standard_form(expand(maximally_mixed(1.5)));
  CHECK(mm.a() == Approx(2.5));
  CHECK(mm.c_plus() == Approx(0.0));

  const double c = std::sqrt(8.0);
  const Eigen::Matrix4d rot = direct_sum(rotation(0.7), rotation(-1.3));
  const Eigen::Matrix4d tm = rot * expand(StandardFormCM(3, 3, c, -c)).matrix() * rot.transpose();
  auto t = reduce_to_standard_form(CovarianceMatrix(tm));
  CHECK(std::abs(t.a() - 3) < 1e-9);
  CHECK(std::abs(t.b() - 3) < 1e-9);
  CHECK(std::abs(t.c_plus() - c) < 1e-9);
  CHECK(std::abs(t.c_minus() + c) < 1e-9);

  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const double a = 1 + 3 * u(rng), b = 1 + 3 * u(rng);
    const double lim = std::sqrt((a - 1) * (b - 1));
    const double x = lim * u(rng), y = lim * u(rng);
    const double cp = std::max(x, y), cm = -std::min(x, y);
    StandardFormCM s(a, b, cp, cm);
    const Eigen::Matrix4d l = random_local_symplectic(rng);
    const auto r = reduce_to_standard_form(CovarianceMatrix(l * expand(s).matrix() * l.transpose()));
    CHECK(r.a() == Approx(a).epsilon(1e-8));
    CHECK(r.b() == Approx(b).epsilon(1e-8));
    CHECK(r.c_plus() == Approx(cp).epsilon(1e-8));
    CHECK(r.c_minus() == Approx(cm).epsilon(1e-8));
    CHECK(log_negativity(r) == Approx(log_negativity(s)).epsilon(1e-8));
  }
}

TEST_CASE("symplectic building blocks preserve the symplectic form") {
  const Eigen::Matrix4d om = symplectic_form();
  for (const Eigen::Matrix4d& s : {Eigen::Matrix4d(beam_splitter(0.4)), direct_sum(rotation(0.3), single_mode_squeeze(0.8))})
    CHECK((s * om * s.transpose() - om).norm() < 1e-12);
}
