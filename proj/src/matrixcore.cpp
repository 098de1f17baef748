#include "ptssh/matrixcore.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace ptssh {

double max_abs(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol;
}

void fix_phase(CVector& v) {
  Eigen::Index imax = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    double a = std::abs(v(i));
    if (a > best) {
      best = a;
      imax = i;
    }
  }
  if (best > 0.0) v *= std::conj(v(imax)) / best;
  double n = v.norm();
  if (n > 0.0) v /= n;
}

double fidelity(const CVector& a, const CVector& b) {
  return std::norm(a.dot(b));
}

namespace {

void require_finite(const CMatrix& m, const char* who) {
  if (!m.allFinite()) throw InvalidState(std::string(who) + ": non-finite matrix entries");
}

// Sort eigenpairs by (Re, Im) ascending and apply the phase convention.
void sort_and_fix(EigenSystem& es) {
  const Eigen::Index n = es.eigenvalues.size();
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const Complex ea = es.eigenvalues(a), eb = es.eigenvalues(b);
    if (ea.real() != eb.real()) return ea.real() < eb.real();
    return ea.imag() < eb.imag();
  });
  CVector vals(n);
  CMatrix vecs(es.right_vectors.rows(), n);
  for (Eigen::Index i = 0; i < n; ++i) {
    vals(i) = es.eigenvalues(order[i]);
    CVector v = es.right_vectors.col(order[i]);
    fix_phase(v);
    vecs.col(i) = v;
  }
  es.eigenvalues = std::move(vals);
  es.right_vectors = std::move(vecs);
}

double eigen_residual(const CMatrix& m, const EigenSystem& es) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < es.eigenvalues.size(); ++j) {
    const double r = (m * es.right_vectors.col(j) -
                      es.eigenvalues(j) * es.right_vectors.col(j))
                         .norm();
    worst = std::max(worst, r);
  }
  return worst;
}

}  // namespace

EigenSystem eig_hermitian(const CMatrix& m) {
  require_finite(m, "eig_hermitian");
  if (!is_hermitian(m))
    throw NotHermitian("eig_hermitian: input deviates from M = M^dagger beyond 1e-12");

  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
  if (solver.info() != Eigen::Success)
    throw NoConvergence("eig_hermitian: solver did not converge");

  EigenSystem es;
  es.eigenvalues = solver.eigenvalues().cast<Complex>();
  es.right_vectors = solver.eigenvectors();
  sort_and_fix(es);
  es.residual_max = eigen_residual(m, es);
  es.vec_condition = 1.0;  // orthonormal basis by construction
  es.near_defective = false;
  return es;
}

EigenSystem eig_general(const CMatrix& m) {
  require_finite(m, "eig_general");

  Eigen::ComplexEigenSolver<CMatrix> solver(m);
  if (solver.info() != Eigen::Success)
    throw NoConvergence("eig_general: solver did not converge");

  EigenSystem es;
  es.eigenvalues = solver.eigenvalues();
  es.right_vectors = solver.eigenvectors();
  sort_and_fix(es);
  es.residual_max = eigen_residual(m, es);

  Eigen::JacobiSVD<CMatrix> svd(es.right_vectors);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  const double smax = svd.singularValues()(0);
  es.vec_condition = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  es.near_defective = es.vec_condition > kNearDefectiveCondition;
  return es;
}

CMatrix expm(const CMatrix& m) {
  require_finite(m, "expm");
  CMatrix r = m.exp();  // scaling-and-squaring, Pade kernel
  if (!r.allFinite()) throw Overflow("expm: result exceeds representable range");
  return r;
}

CVector propagate_normalized(const CMatrix& h, const CVector& psi0, double t) {
  require_finite(h, "propagate_normalized");
  if (t < 0.0) throw InvalidState("propagate_normalized: negative time");

  CVector psi = psi0;
  const double n0 = psi.norm();
  if (!(n0 > 0.0)) throw ZeroNorm("propagate_normalized: zero initial state");
  psi /= n0;
  if (t == 0.0) return psi;

  // Substep so that ||H||_inf * dt <= 2: per-substep norm growth stays
  // bounded by e^2 and the exponential kernel is well inside its sweet spot.
  const double scale = h.cwiseAbs().rowwise().sum().maxCoeff();
  const long steps = std::max(1L, static_cast<long>(std::ceil(t * scale / 2.0)));
  const CMatrix u = expm(Complex(0.0, -1.0) * (t / static_cast<double>(steps)) * h);

  for (long s = 0; s < steps; ++s) {
    psi = u * psi;
    const double n = psi.norm();
    if (!(n > 0.0) || !std::isfinite(n))
      throw ZeroNorm("propagate_normalized: state norm underflowed to zero");
    psi /= n;
  }
  return psi;
}

}  // namespace ptssh
