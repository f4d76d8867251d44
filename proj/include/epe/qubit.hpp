#pragma once

#include <array>
#include <complex>
#include <utility>

#include <Eigen/Dense>

namespace epe::qubit {

using Complex = std::complex<double>;
using Matrix4c = Eigen::Matrix<Complex, 4, 4>;
using Vector4c = Eigen::Matrix<Complex, 4, 1>;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

/// Two-qubit density matrix in the basis |00>, |01>, |10>, |11>.
///
/// Construction validates Hermiticity, unit trace and positivity and throws
/// epe::InvalidState on violation. Inputs are never projected back onto the
/// state space.
class DensityMatrix4 {
 public:
  explicit DensityMatrix4(const Matrix4c& entries);

  static DensityMatrix4 from_pure(const Vector4c& amplitudes);
  static DensityMatrix4 maximally_mixed();

  const Matrix4c& matrix() const { return entries_; }
  Complex operator()(int i, int j) const { return entries_(i, j); }

 private:
  Matrix4c entries_;
};

/// Normalized two-qubit pure state with its Schmidt coefficients (a >= b).
class PureState4 {
 public:
  explicit PureState4(const Vector4c& amplitudes);

  const Vector4c& amplitudes() const { return amplitudes_; }
  double schmidt_a() const { return schmidt_[0]; }
  double schmidt_b() const { return schmidt_[1]; }
  DensityMatrix4 density() const { return DensityMatrix4::from_pure(amplitudes_); }

 private:
  Vector4c amplitudes_;
  std::array<double, 2> schmidt_;
};

/// U_j = exp(-i theta_j n_j . sigma) acting on qubit j.
struct LocalUnitaryParams {
  double theta1 = 0.0;
  double theta2 = 0.0;
  Eigen::Vector3d axis1 = Eigen::Vector3d::UnitZ();
  Eigen::Vector3d axis2 = Eigen::Vector3d::UnitZ();
};

enum class Bell { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

enum class Measure { Concurrence, Tangle, EntanglementOfFormation, Negativity, LogNegativity };

struct EPEPoint {
  double energy = 0.0;
  double entanglement = 0.0;
  double purity = 1.0;
};

Vector4c bell_vector(Bell which);
Vector4c basis_vector(int index);

double concurrence(const DensityMatrix4& rho);
double tangle(const DensityMatrix4& rho);
double entanglement_of_formation(const DensityMatrix4& rho);
/// EoF as a function of concurrence; h(0) is taken as 0.
double eof_from_concurrence(double c);

Matrix4c partial_transpose(const Matrix4c& m);
double trace_norm_partial_transpose(const DensityMatrix4& rho);
double negativity(const DensityMatrix4& rho);
double log_negativity(const DensityMatrix4& rho);

double purity(const DensityMatrix4& rho);

/// Mean excitation number 1 + Tr[H rho], H = sz x 1 + 1 x sz with sz = diag(-1/2, +1/2).
/// The +-1/2 Pauli-z normalization is deliberate; the energy runs from 0 (|00>) to 2 (|11>).
double energy(const DensityMatrix4& rho);

/// Concurrence-purity frontier state; Tr[H rho] = 0 for every C.
DensityMatrix4 mems_state(double c);
double mems_purity(double c);
/// Largest concurrence allowed at purity p (inverse of mems_purity, 0 below p = 1/3).
double mems_max_concurrence(double p);
/// Extremal energies reachable from mems_state(c) by local unitaries.
std::pair<double, double> mems_energy_range(double c);

DensityMatrix4 werner_state(double r, Bell which);

/// Minimum purity of any two-qubit state with energy e.
double separable_min_purity(double e);
bool pure_state_epe_bound(double e, double c);

Eigen::Matrix2cd single_qubit_unitary(double theta, const Eigen::Vector3d& axis);
DensityMatrix4 apply_local_unitary(const DensityMatrix4& rho, const LocalUnitaryParams& params);

EPEPoint epe_point(const DensityMatrix4& rho, Measure measure);
double entanglement(const DensityMatrix4& rho, Measure measure);

}  // namespace epe::qubit
