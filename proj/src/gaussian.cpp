#include "epe/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "epe/errors.hpp"

namespace epe::gaussian {
namespace {

// Positive eigenvalues of the Hermitian matrix sqrt(sigma) (i Omega) sqrt(sigma),
// which is similar to i Omega sigma. Unlike the invariant formula this keeps
// full precision when nu_- and nu_+ nearly coincide. A matrix that is not
// positive definite gets nu_- = 0.
SymplecticSpectrum matrix_spectrum(const Eigen::Matrix4d& sigma) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(sigma);
  if (!(es.eigenvalues().minCoeff() > 0.0)) return {0.0, 0.0};
  const Eigen::Matrix4d root = es.operatorSqrt();
  const Eigen::Matrix4cd k =
      std::complex<double>(0.0, 1.0) * (root * symplectic_form() * root).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> ks(k, Eigen::EigenvaluesOnly);
  return {ks.eigenvalues()(2), ks.eigenvalues()(3)};
}

Eigen::Matrix4d mirror_last_momentum(const Eigen::Matrix4d& sigma) {
  const Eigen::Matrix4d t = Eigen::Vector4d(1.0, 1.0, 1.0, -1.0).asDiagonal();
  return t * sigma * t;
}

void require_physical(const Eigen::Matrix4d& sigma) {
  if (!matrix_spectrum(sigma).is_physical()) {
    throw InvalidCovariance("covariance matrix violates the uncertainty relation (nu_- < 1)");
  }
}

double clamped_root(double radicand, double scale) {
  if (radicand < -kRadicandTol * std::max(1.0, scale)) {
    throw InvalidCovariance("negative radicand " + std::to_string(radicand) +
                            " in symplectic eigenvalue formula");
  }
  return std::sqrt(std::max(0.0, radicand));
}

}  // namespace

CovarianceMatrix::CovarianceMatrix(const Eigen::Matrix4d& entries) : entries_(entries) {
  if (!entries_.allFinite()) throw InvalidCovariance("covariance matrix has non-finite entries");
  const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
  if ((entries_ - entries_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw InvalidCovariance("covariance matrix is not symmetric");
  }
}

StandardFormCM::StandardFormCM(double a, double b, double c_plus, double c_minus)
    : a_(a), b_(b), c_plus_(c_plus), c_minus_(c_minus) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c_plus) || !std::isfinite(c_minus)) {
    throw InvalidCovariance("standard form has non-finite fields");
  }
  if (a < 1.0 - kPhysicalTol || b < 1.0 - kPhysicalTol) {
    throw InvalidCovariance("standard form requires a, b >= 1");
  }
}

Invariants invariants(const StandardFormCM& sf) {
  const double ab = sf.a() * sf.b();
  return {sf.a() * sf.a(), sf.b() * sf.b(), sf.c_plus() * sf.c_minus(),
          (ab - sf.c_plus() * sf.c_plus()) * (ab - sf.c_minus() * sf.c_minus())};
}

Invariants invariants(const CovarianceMatrix& cm) {
  return {cm.alpha().determinant(), cm.beta().determinant(), cm.gamma().determinant(),
          cm.matrix().determinant()};
}

CovarianceMatrix expand(const StandardFormCM& sf) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m(0, 0) = m(1, 1) = sf.a();
  m(2, 2) = m(3, 3) = sf.b();
  m(0, 2) = m(2, 0) = sf.c_plus();
  m(1, 3) = m(3, 1) = sf.c_minus();
  return CovarianceMatrix(m);
}

double seralian(const StandardFormCM& sf) { return invariants(sf).seralian(); }
double det_sigma(const StandardFormCM& sf) { return invariants(sf).det_sigma; }

SymplecticSpectrum symplectic_eigenvalues(const Invariants& inv) {
  const double delta = inv.seralian();
  const double root = clamped_root(delta * delta - 4.0 * inv.det_sigma, delta * delta);
  const double plus_sq = 0.5 * (delta + root);
  const double denom = delta + root;
  const double minus_sq = denom > 0.0 ? 2.0 * inv.det_sigma / denom : 0.0;
  return {std::sqrt(std::max(0.0, minus_sq)), std::sqrt(std::max(0.0, plus_sq))};
}

SymplecticSpectrum symplectic_eigenvalues(const StandardFormCM& sf) {
  return matrix_spectrum(expand(sf).matrix());
}

SymplecticSpectrum symplectic_eigenvalues(const CovarianceMatrix& cm) { return matrix_spectrum(cm.matrix()); }

bool is_physical(const StandardFormCM& sf) { return symplectic_eigenvalues(sf).is_physical(); }

bool is_physical(const CovarianceMatrix& cm) { return symplectic_eigenvalues(cm).is_physical(); }

double local_photon_number(double local_invariant) { return 0.5 * (local_invariant - 1.0); }

double purity(const StandardFormCM& sf) {
  require_physical(expand(sf).matrix());
  return 1.0 / std::sqrt(det_sigma(sf));
}

double purity(const CovarianceMatrix& cm) {
  require_physical(cm.matrix());
  return 1.0 / std::sqrt(cm.matrix().determinant());
}

double energy(const StandardFormCM& sf) {
  require_physical(expand(sf).matrix());
  return 0.5 * (sf.a() + sf.b()) - 1.0;
}

double energy(const CovarianceMatrix& cm) {
  require_physical(cm.matrix());
  return 0.25 * cm.matrix().trace() - 1.0;
}

double ppt_nu_minus_squared(double seralian_pt, double det) {
  const double root = clamped_root(seralian_pt * seralian_pt - 4.0 * det, seralian_pt * seralian_pt);
  const double denom = seralian_pt + root;
  return denom > 0.0 ? std::max(0.0, 2.0 * det / denom) : 0.0;
}

double ppt_spectrum(const Invariants& inv) {
  if (!symplectic_eigenvalues(inv).is_physical()) {
    throw InvalidCovariance("covariance matrix violates the uncertainty relation (nu_- < 1)");
  }
  return std::sqrt(ppt_nu_minus_squared(inv.seralian_pt(), inv.det_sigma));
}

double ppt_spectrum(const StandardFormCM& sf) {
  const Eigen::Matrix4d sigma = expand(sf).matrix();
  require_physical(sigma);
  return matrix_spectrum(mirror_last_momentum(sigma)).nu_minus;
}

namespace {

// nu~_- within kPhysicalTol of 1 counts as separable, matching is_separable.
double log_negativity_from(double nu) { return nu >= 1.0 - kPhysicalTol ? 0.0 : -std::log(nu); }

}  // namespace

double log_negativity(const StandardFormCM& sf) { return log_negativity_from(ppt_spectrum(sf)); }

double log_negativity(const CovarianceMatrix& cm) {
  require_physical(cm.matrix());
  return log_negativity_from(matrix_spectrum(mirror_last_momentum(cm.matrix())).nu_minus);
}

double negativity(const StandardFormCM& sf) {
  const double nu = ppt_spectrum(sf);
  return nu >= 1.0 - kPhysicalTol ? 0.0 : (1.0 - nu) / (2.0 * nu);
}

bool is_separable(const StandardFormCM& sf) { return ppt_spectrum(sf) >= 1.0 - kPhysicalTol; }

GaussianEPEPoint epe_point(const StandardFormCM& sf) {
  return {energy(sf), log_negativity(sf), purity(sf)};
}

StandardFormCM two_mode_squeezed_vacuum(double e) {
  if (!(e >= 0.0)) throw DomainError("energy must be nonnegative");
  const double a = e + 1.0;
  const double c = std::sqrt(a * a - 1.0);
  return StandardFormCM(a, a, c, -c);
}

StandardFormCM thermal_product(double nbar1, double nbar2) {
  if (!(nbar1 >= 0.0 && nbar2 >= 0.0)) throw DomainError("thermal photon numbers must be nonnegative");
  return StandardFormCM(2.0 * nbar1 + 1.0, 2.0 * nbar2 + 1.0, 0.0, 0.0);
}

StandardFormCM maximally_mixed(double e) {
  if (!(e >= 0.0)) throw DomainError("energy must be nonnegative");
  return StandardFormCM(e + 1.0, e + 1.0, 0.0, 0.0);
}

CovarianceMatrix local_squeeze(const StandardFormCM& sf, double r) {
  require_physical(expand(sf).matrix());
  const Eigen::Vector4d d(std::exp(r), std::exp(-r), std::exp(-r), std::exp(r));
  return CovarianceMatrix(d.asDiagonal() * expand(sf).matrix() * d.asDiagonal());
}

namespace {

void require_band(double e, double p) {
  if (!(e >= 0.0)) throw DomainError("energy must be nonnegative");
  const double low = 1.0 / ((e + 1.0) * (e + 1.0));
  if (!(p >= low - 1e-12 && p <= 1.0 + 1e-12)) {
    throw DomainError("purity " + std::to_string(p) + " outside the physical band [" +
                      std::to_string(low) + ", 1] at energy " + std::to_string(e));
  }
}

}  // namespace

StandardFormCM gmems(double e, double p) {
  require_band(e, p);
  const double a = e + 1.0;
  const double c = std::sqrt(std::max(0.0, a * a - 1.0 / p));
  return StandardFormCM(a, a, c, -c);
}

double gmems_seralian_pt(double e, double p) {
  return 4.0 * (e + 1.0) * (e + 1.0) - 2.0 / p;
}

// Symmetric a = b = A with c+ c- = q and (A^2 - c+^2)(A^2 - c-^2) = 1/P^2.
// c+^2 and c-^2 are then the roots of t^2 - s t + q^2 with
// s = (A^4 + q^2 - 1/P^2) / A^2.
StandardFormCM glems(double e, double p) {
  require_band(e, p);
  const double a = e + 1.0;
  const double a2 = a * a;
  const double inv_p2 = 1.0 / (p * p);
  const double q = 0.5 * (1.0 + inv_p2 - 2.0 * a2);
  const double s = (a2 * a2 + q * q - inv_p2) / a2;
  double disc = s * s - 4.0 * q * q;
  if (disc < 0.0) {
    if (disc < -1e-10 * std::max(1.0, s * s)) {
      throw DomainError("no GLEMS with spectrum (1, 1/P) at energy " + std::to_string(e) +
                        ", purity " + std::to_string(p));
    }
    disc = 0.0;
  }
  const double root = std::sqrt(disc);
  const double u = 0.5 * (s + root);
  const double v = std::max(0.0, 0.5 * (s - root));
  if (v < -1e-12 || u >= a2) {
    throw DomainError("GLEMS solution is not a positive covariance matrix at energy " +
                      std::to_string(e) + ", purity " + std::to_string(p));
  }
  const double c_plus = std::sqrt(u);
  const double c_minus = std::copysign(std::sqrt(v), q);
  StandardFormCM sf(a, a, c_plus, c_minus);
  if (!is_physical(sf)) {
    throw DomainError("GLEMS solution is unphysical at energy " + std::to_string(e));
  }
  return sf;
}

double glems_seralian_pt(double e, double p) {
  return 4.0 * (e + 1.0) * (e + 1.0) - (1.0 + 1.0 / (p * p));
}

SeparabilityBand separability_band(double e) {
  if (!(e > 0.0)) return {1.0, 1.0, true};
  return {1.0 / ((e + 1.0) * (e + 1.0)), 1.0 / (2.0 * e + 1.0), false};
}

double band_width(double e) {
  const SeparabilityBand band = separability_band(e);
  return band.purity_high - band.purity_low;
}

SeparabilityBand glems_separable_band(double e) {
  if (!(e > 0.0)) return {1.0, 1.0, true};
  return {1.0 / (2.0 * e + 1.0), 1.0 / std::sqrt(2.0 * e * e + 4.0 * e + 1.0), false};
}

namespace {

// (det x)^{1/4} x^{-1/2}: unit-determinant map sending x to sqrt(det x) * I.
Eigen::Matrix2d williamson_local(const Eigen::Matrix2d& x) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(x);
  const Eigen::Vector2d inv_sqrt = es.eigenvalues().cwiseSqrt().cwiseInverse();
  const Eigen::Matrix2d x_inv_sqrt =
      es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().transpose();
  return std::pow(x.determinant(), 0.25) * x_inv_sqrt;
}

}  // namespace

StandardFormCM reduce_to_standard_form(const CovarianceMatrix& cm) {
  if (!is_physical(cm)) throw InvalidCovariance("cannot reduce an unphysical covariance matrix");
  const Eigen::Matrix2d m1 = williamson_local(cm.alpha());
  const Eigen::Matrix2d m2 = williamson_local(cm.beta());
  const Eigen::Matrix2d g = m1 * cm.gamma() * m2.transpose();

  Eigen::JacobiSVD<Eigen::Matrix2d> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Vector2d s = svd.singularValues();
  // Both U and V may be reflections; absorbing each into the second
  // singular value leaves proper rotations, which preserve a*I and b*I.
  if (svd.matrixU().determinant() < 0.0) s(1) = -s(1);
  if (svd.matrixV().determinant() < 0.0) s(1) = -s(1);

  const double a = std::sqrt(cm.alpha().determinant());
  const double b = std::sqrt(cm.beta().determinant());
  return StandardFormCM(a, b, s(0), s(1));
}

Eigen::Matrix2d rotation(double phi) {
  Eigen::Matrix2d r;
  r << std::cos(phi), std::sin(phi), -std::sin(phi), std::cos(phi);
  return r;
}

Eigen::Matrix2d single_mode_squeeze(double r) {
  return Eigen::Vector2d(std::exp(r), std::exp(-r)).asDiagonal();
}

Eigen::Matrix4d beam_splitter(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  Eigen::Matrix4d bs = Eigen::Matrix4d::Zero();
  bs.topLeftCorner<2, 2>() = c * Eigen::Matrix2d::Identity();
  bs.topRightCorner<2, 2>() = s * Eigen::Matrix2d::Identity();
  bs.bottomLeftCorner<2, 2>() = -s * Eigen::Matrix2d::Identity();
  bs.bottomRightCorner<2, 2>() = c * Eigen::Matrix2d::Identity();
  return bs;
}

Eigen::Matrix4d direct_sum(const Eigen::Matrix2d& s1, const Eigen::Matrix2d& s2) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m.topLeftCorner<2, 2>() = s1;
  m.bottomRightCorner<2, 2>() = s2;
  return m;
}

Eigen::Matrix4d symplectic_form() {
  Eigen::Matrix2d w;
  w << 0.0, 1.0, -1.0, 0.0;
  return direct_sum(w, w);
}

}  // namespace epe::gaussian
