#pragma once

#include <Eigen/Dense>
#include <complex>

#include "ptssh/errors.hpp"

namespace ptssh {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Eigenvector-matrix condition number beyond which a decomposition is
/// flagged as near-defective (proximity to an exceptional point).
inline constexpr double kNearDefectiveCondition = 1e8;

/// Hermiticity tolerance on the max-norm of M - M^dagger.
inline constexpr double kHermitianTol = 1e-12;

/// Result of a dense eigendecomposition.
///
/// Eigenvalues are sorted by ascending real part, ties broken by ascending
/// imaginary part. Right eigenvectors sit in the columns of `right_vectors`
/// in the same order, each unit-norm with the phase fixed so that the
/// largest-magnitude component is real and positive.
struct EigenSystem {
  CVector eigenvalues;
  CMatrix right_vectors;
  double residual_max = 0.0;   // max_j ||M v_j - E_j v_j||_2
  double vec_condition = 1.0;  // condition estimate of the eigenvector matrix
  bool near_defective = false;
};

/// Largest absolute entry of a matrix.
double max_abs(const CMatrix& m);

bool is_hermitian(const CMatrix& m, double tol = kHermitianTol);

/// Rotates v so its largest-magnitude component is real and positive
/// (ties broken by lowest index) and renormalizes.
void fix_phase(CVector& v);

/// |<a|b>|^2 for unit vectors.
double fidelity(const CVector& a, const CVector& b);

/// Diagonalizes a Hermitian matrix. Eigenvalues come out real and ascending,
/// eigenvectors orthonormal. Throws NotHermitian / NoConvergence.
EigenSystem eig_hermitian(const CMatrix& m);

/// Diagonalizes a general complex matrix. Sets `near_defective` when the
/// eigenvector matrix is ill-conditioned; consumers must not invert it in
/// that case. Throws NoConvergence.
EigenSystem eig_general(const CMatrix& m);

/// Matrix exponential via scaling-and-squaring with a Pade kernel.
/// Does not rely on eigendecomposition, so it stays valid at exceptional
/// points where the matrix is defective. Throws Overflow when the result
/// leaves the representable range.
CMatrix expm(const CMatrix& m);

/// Returns exp(-iHt) psi0 / ||exp(-iHt) psi0||, computed with sub-stepping
/// and per-substep renormalization so intermediate norms never overflow.
/// Throws ZeroNorm when the unnormalized state underflows to zero.
CVector propagate_normalized(const CMatrix& h, const CVector& psi0, double t);

}  // namespace ptssh
