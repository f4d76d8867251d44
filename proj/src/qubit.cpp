#include "epe/qubit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "epe/errors.hpp"

namespace epe::qubit {
namespace {

const Complex kI{0.0, 1.0};

void require_unit_interval(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError(std::string(name) + " must lie in [0,1], got " + std::to_string(x));
  }
}

// sigma_y (x) sigma_y in the computational basis.
Matrix4c spin_flip() {
  Matrix4c y = Matrix4c::Zero();
  y(0, 3) = -1.0;
  y(1, 2) = 1.0;
  y(2, 1) = 1.0;
  y(3, 0) = -1.0;
  return y;
}

double h(double x) { return x <= 0.0 ? 0.0 : -x * std::log2(x); }

}  // namespace

DensityMatrix4::DensityMatrix4(const Matrix4c& entries) : entries_(entries) {
  if (!entries_.allFinite()) {
    throw InvalidState("density matrix has non-finite entries");
  }
  const double herm = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermitianTol) {
    throw InvalidState("density matrix is not Hermitian (deviation " + std::to_string(herm) + ")");
  }
  const Complex tr = entries_.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw InvalidState("density matrix trace " + std::to_string(tr.real()) + " != 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(entries_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPsdTol) {
    throw InvalidState("density matrix is not positive semidefinite (min eigenvalue " +
                       std::to_string(es.eigenvalues().minCoeff()) + ")");
  }
}

DensityMatrix4 DensityMatrix4::from_pure(const Vector4c& amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0)) throw InvalidState("zero state vector");
  const Vector4c v = amplitudes / norm;
  Matrix4c m = v * v.adjoint();
  m = 0.5 * (m + m.adjoint()).eval();
  return DensityMatrix4(m);
}

DensityMatrix4 DensityMatrix4::maximally_mixed() {
  return DensityMatrix4(Matrix4c::Identity() * 0.25);
}

PureState4::PureState4(const Vector4c& amplitudes) : amplitudes_(amplitudes) {
  if (std::abs(amplitudes_.norm() - 1.0) > 1e-12) {
    throw InvalidState("pure state is not normalized");
  }
  Eigen::Matrix2cd reshaped;
  reshaped << amplitudes_(0), amplitudes_(1), amplitudes_(2), amplitudes_(3);
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(reshaped);
  schmidt_ = {svd.singularValues()(0), svd.singularValues()(1)};
}

Vector4c basis_vector(int index) {
  if (index < 0 || index > 3) throw DomainError("basis index out of range");
  Vector4c v = Vector4c::Zero();
  v(index) = 1.0;
  return v;
}

Vector4c bell_vector(Bell which) {
  const double s = 1.0 / std::sqrt(2.0);
  Vector4c v = Vector4c::Zero();
  switch (which) {
    case Bell::PhiPlus:  v(0) = s; v(3) = s; break;
    case Bell::PhiMinus: v(0) = s; v(3) = -s; break;
    case Bell::PsiPlus:  v(1) = s; v(2) = s; break;
    case Bell::PsiMinus: v(1) = s; v(2) = -s; break;
  }
  return v;
}

// The mu_j are the singular values of tau = L^1/2 V^H Y V^* L^1/2 where
// rho = V L V^H. This is the Hermitian route to the eigenvalues of
// R = rho Y rho^* Y; roundoff in near-zero eigenvalues of rho only enters
// the mu_j at second order.
double concurrence(const DensityMatrix4& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(rho.matrix());
  const Eigen::Vector4d lambda = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Matrix4c& v = es.eigenvectors();
  const Matrix4c tau =
      lambda.asDiagonal() * (v.adjoint() * spin_flip() * v.conjugate()) * lambda.asDiagonal();
  Eigen::JacobiSVD<Matrix4c> svd(tau);
  const Eigen::Vector4d mu = svd.singularValues();
  const double c = 2.0 * mu.maxCoeff() - mu.sum();
  return std::clamp(c, 0.0, 1.0);
}

double tangle(const DensityMatrix4& rho) {
  const double c = concurrence(rho);
  return c * c;
}

double eof_from_concurrence(double c) {
  require_unit_interval(c, "concurrence");
  const double root = std::sqrt(std::max(0.0, 1.0 - c * c));
  return h(0.5 * (1.0 + root)) + h(0.5 * (1.0 - root));
}

double entanglement_of_formation(const DensityMatrix4& rho) {
  return eof_from_concurrence(concurrence(rho));
}

// Transpose on the second qubit: <i j| M |k l> -> <i l| M |k j>.
Matrix4c partial_transpose(const Matrix4c& m) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + j, 2 * k + l) = m(2 * i + l, 2 * k + j);
  return out;
}

double trace_norm_partial_transpose(const DensityMatrix4& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(partial_transpose(rho.matrix()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double negativity(const DensityMatrix4& rho) {
  return std::max(0.0, 0.5 * (trace_norm_partial_transpose(rho) - 1.0));
}

double log_negativity(const DensityMatrix4& rho) {
  return std::max(0.0, std::log2(trace_norm_partial_transpose(rho)));
}

double purity(const DensityMatrix4& rho) { return rho.matrix().cwiseAbs2().sum(); }

double energy(const DensityMatrix4& rho) {
  return 1.0 - rho(0, 0).real() + rho(3, 3).real();
}

DensityMatrix4 mems_state(double c) {
  require_unit_interval(c, "concurrence");
  const Vector4c phi = bell_vector(Bell::PhiPlus);
  Matrix4c m = c * phi * phi.adjoint();
  if (c <= 2.0 / 3.0) {
    m(1, 1) += 1.0 / 3.0;
    m(0, 0) += 1.0 / 3.0 - c / 2.0;
    m(3, 3) += 1.0 / 3.0 - c / 2.0;
  } else {
    m(1, 1) += 1.0 - c;
  }
  if (std::abs(m.trace() - 1.0) > 1e-12) {
    throw std::logic_error("MEMS construction lost unit trace");
  }
  return DensityMatrix4(m);
}

double mems_purity(double c) {
  require_unit_interval(c, "concurrence");
  if (c <= 2.0 / 3.0) return 1.0 / 3.0 + 0.5 * c * c;
  return c * c + (1.0 - c) * (1.0 - c);
}

double mems_max_concurrence(double p) {
  if (!(p >= 0.25 - 1e-12 && p <= 1.0 + 1e-12)) {
    throw DomainError("two-qubit purity must lie in [1/4,1], got " + std::to_string(p));
  }
  if (p <= 1.0 / 3.0) return 0.0;
  if (p <= 5.0 / 9.0) return std::sqrt(2.0 * (p - 1.0 / 3.0));
  return 0.5 * (1.0 + std::sqrt(std::max(0.0, 2.0 * p - 1.0)));
}

std::pair<double, double> mems_energy_range(double c) {
  require_unit_interval(c, "concurrence");
  if (c <= 2.0 / 3.0) return {2.0 / 3.0, 4.0 / 3.0};
  return {c, 2.0 - c};
}

DensityMatrix4 werner_state(double r, Bell which) {
  require_unit_interval(r, "Werner weight");
  const Vector4c psi = bell_vector(which);
  const Matrix4c m = r * psi * psi.adjoint() + (1.0 - r) * 0.25 * Matrix4c::Identity();
  return DensityMatrix4(m);
}

double separable_min_purity(double e) {
  if (!(e >= 0.0 && e <= 2.0)) {
    throw DomainError("two-qubit energy must lie in [0,2], got " + std::to_string(e));
  }
  if (e <= 0.5) return 1.5 * e * e - 2.0 * e + 1.0;
  if (e <= 1.5) return 0.25 * (1.0 + 2.0 * (e - 1.0) * (e - 1.0));
  return 1.5 * e * e - 4.0 * e + 3.0;
}

bool pure_state_epe_bound(double e, double c) {
  return (e - 1.0) * (e - 1.0) + c * c <= 1.0 + 1e-12;
}

Eigen::Matrix2cd single_qubit_unitary(double theta, const Eigen::Vector3d& axis) {
  if (std::abs(axis.norm() - 1.0) > 1e-12) {
    throw DomainError("rotation axis must have unit norm");
  }
  Eigen::Matrix2cd n_dot_sigma;
  n_dot_sigma << axis.z(), Complex(axis.x(), -axis.y()), Complex(axis.x(), axis.y()), -axis.z();
  return std::cos(theta) * Eigen::Matrix2cd::Identity() - kI * std::sin(theta) * n_dot_sigma;
}

DensityMatrix4 apply_local_unitary(const DensityMatrix4& rho, const LocalUnitaryParams& params) {
  const Eigen::Matrix2cd u1 = single_qubit_unitary(params.theta1, params.axis1);
  const Eigen::Matrix2cd u2 = single_qubit_unitary(params.theta2, params.axis2);
  Matrix4c u;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) u(2 * i + k, 2 * j + l) = u1(i, j) * u2(k, l);
  Matrix4c out = u * rho.matrix() * u.adjoint();
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix4(out);
}

double entanglement(const DensityMatrix4& rho, Measure measure) {
  switch (measure) {
    case Measure::Concurrence: return concurrence(rho);
    case Measure::Tangle: return tangle(rho);
    case Measure::EntanglementOfFormation: return entanglement_of_formation(rho);
    case Measure::Negativity: return negativity(rho);
    case Measure::LogNegativity: return log_negativity(rho);
  }
  throw DomainError("unknown entanglement measure");
}

EPEPoint epe_point(const DensityMatrix4& rho, Measure measure) {
  return {energy(rho), entanglement(rho, measure), purity(rho)};
}

}  // namespace epe::qubit
