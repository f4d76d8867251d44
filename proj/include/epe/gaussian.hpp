#pragma once

#include <Eigen/Dense>

namespace epe::gaussian {

inline constexpr double kPhysicalTol = 1e-10;
inline constexpr double kRadicandTol = 1e-10;

/// Two-mode covariance matrix, quadrature order (x1, p1, x2, p2), vacuum = identity.
class CovarianceMatrix {
 public:
  /// Throws InvalidCovariance if the matrix is not symmetric to 1e-12 (relative).
  explicit CovarianceMatrix(const Eigen::Matrix4d& entries);

  const Eigen::Matrix4d& matrix() const { return entries_; }
  Eigen::Matrix2d alpha() const { return entries_.topLeftCorner<2, 2>(); }
  Eigen::Matrix2d beta() const { return entries_.bottomRightCorner<2, 2>(); }
  Eigen::Matrix2d gamma() const { return entries_.topRightCorner<2, 2>(); }

 private:
  Eigen::Matrix4d entries_;
};

/// Standard form (a, b, c+, c-) of a two-mode CM; a, b >= 1 are enforced on
/// construction, physicality is checked by the operations that need it.
class StandardFormCM {
 public:
  StandardFormCM(double a, double b, double c_plus, double c_minus);

  double a() const { return a_; }
  double b() const { return b_; }
  double c_plus() const { return c_plus_; }
  double c_minus() const { return c_minus_; }

 private:
  double a_, b_, c_plus_, c_minus_;
};

/// Local (Det alpha, Det beta, Det gamma) and global (Det sigma) symplectic invariants.
struct Invariants {
  double det_alpha;
  double det_beta;
  double det_gamma;
  double det_sigma;
  double seralian() const { return det_alpha + det_beta + 2.0 * det_gamma; }
  double seralian_pt() const { return det_alpha + det_beta - 2.0 * det_gamma; }
};

struct SymplecticSpectrum {
  double nu_minus;
  double nu_plus;
  bool is_physical() const { return nu_minus >= 1.0 - kPhysicalTol; }
};

struct GaussianEPEPoint {
  double energy;
  double log_negativity;
  double purity;
};

struct SeparabilityBand {
  double purity_low;
  double purity_high;
  bool degenerate;  // energy <= 0: both ends pinned at 1
};

Invariants invariants(const StandardFormCM& sf);
Invariants invariants(const CovarianceMatrix& cm);

CovarianceMatrix expand(const StandardFormCM& sf);
double seralian(const StandardFormCM& sf);
double det_sigma(const StandardFormCM& sf);

SymplecticSpectrum symplectic_eigenvalues(const Invariants& inv);
SymplecticSpectrum symplectic_eigenvalues(const StandardFormCM& sf);
SymplecticSpectrum symplectic_eigenvalues(const CovarianceMatrix& cm);
bool is_physical(const StandardFormCM& sf);
bool is_physical(const CovarianceMatrix& cm);

/// Mean local photon numbers from a = 2 n1 + 1, b = 2 n2 + 1.
double local_photon_number(double local_invariant);

double purity(const StandardFormCM& sf);
double purity(const CovarianceMatrix& cm);
/// Mean total photon number with first moments set to zero.
double energy(const StandardFormCM& sf);
double energy(const CovarianceMatrix& cm);

/// Smallest symplectic eigenvalue of the partially transposed CM.
double ppt_spectrum(const Invariants& inv);
double ppt_spectrum(const StandardFormCM& sf);
double log_negativity(const StandardFormCM& sf);
double log_negativity(const CovarianceMatrix& cm);
double negativity(const StandardFormCM& sf);
bool is_separable(const StandardFormCM& sf);
/// nu~_-^2 from (Delta~, Det sigma), in the cancellation-free form 2 Det / (Delta~ + root).
double ppt_nu_minus_squared(double seralian_pt, double det_sigma);

GaussianEPEPoint epe_point(const StandardFormCM& sf);

StandardFormCM two_mode_squeezed_vacuum(double energy);
StandardFormCM thermal_product(double nbar1, double nbar2);
/// (E + 1) * identity: the least pure state at energy E.
StandardFormCM maximally_mixed(double energy);
CovarianceMatrix local_squeeze(const StandardFormCM& sf, double r);

/// Largest log-negativity at fixed (energy, purity); symmetric representative.
StandardFormCM gmems(double energy, double purity);
/// Symplectic spectrum (1, 1/P) at fixed energy; symmetric representative.
StandardFormCM glems(double energy, double purity);
double gmems_seralian_pt(double energy, double purity);
double glems_seralian_pt(double energy, double purity);

SeparabilityBand separability_band(double energy);
double band_width(double energy);
/// Purity interval at which GLEMS can be separable.
SeparabilityBand glems_separable_band(double energy);

StandardFormCM reduce_to_standard_form(const CovarianceMatrix& cm);

/// 2x2 symplectic blocks for building random two-mode symplectics.
Eigen::Matrix2d rotation(double phi);
Eigen::Matrix2d single_mode_squeeze(double r);
Eigen::Matrix4d beam_splitter(double theta);
Eigen::Matrix4d direct_sum(const Eigen::Matrix2d& s1, const Eigen::Matrix2d& s2);
Eigen::Matrix4d symplectic_form();

}  // namespace epe::gaussian
