#include "ptssh/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace ptssh {

void LatticeParams::validate() const {
  if (n_cells < 2) throw std::invalid_argument("LatticeParams: need at least 2 unit cells");
  if (j1 < 0.0) throw std::invalid_argument("LatticeParams: j1 must be >= 0");
  if (!(j2 > 0.0)) throw std::invalid_argument("LatticeParams: j2 must be > 0");
  if (gamma < 0.0) throw std::invalid_argument("LatticeParams: gamma must be >= 0");
}

CMatrix build_ssh(const LatticeParams& p) {
  p.validate();
  CMatrix h = CMatrix::Zero(p.dim(), p.dim());
  for (int n = 0; n < p.n_cells; ++n) {
    h(site_a(n), site_b(n)) = p.j1;
    h(site_b(n), site_a(n)) = p.j1;
    if (n + 1 < p.n_cells) {
      h(site_b(n), site_a(n + 1)) = p.j2;
      h(site_a(n + 1), site_b(n)) = p.j2;
    }
  }
  if (p.boundary == Boundary::Periodic) {
    h(site_b(p.n_cells - 1), site_a(0)) = p.j2;
    h(site_a(0), site_b(p.n_cells - 1)) = p.j2;
  }
  return h;
}

CMatrix build_gamma(const LatticeParams& p) {
  p.validate();
  CMatrix g = CMatrix::Zero(p.dim(), p.dim());
  for (int n = 0; n < p.n_cells; ++n) {
    g(site_a(n), site_a(n)) = 1.0;
    g(site_b(n), site_b(n)) = -1.0;
  }
  return g;
}

CMatrix build_pt(const LatticeParams& p) {
  return build_ssh(p) + Complex(0.0, p.gamma) * build_gamma(p);
}

CMatrix bloch(const LatticeParams& p, double k) {
  p.validate();
  CMatrix h(2, 2);
  const Complex off = p.j1 + p.j2 * std::exp(Complex(0.0, -k));
  h(0, 0) = Complex(0.0, p.gamma);
  h(0, 1) = off;
  h(1, 0) = std::conj(off);
  h(1, 1) = Complex(0.0, -p.gamma);
  return h;
}

std::pair<double, double> dispersion_hermitian(const LatticeParams& p, double k) {
  p.validate();
  const double e = std::sqrt(p.j1 * p.j1 + p.j2 * p.j2 + 2.0 * p.j1 * p.j2 * std::cos(k));
  return {-e, e};
}

std::pair<Complex, Complex> dispersion_pt(const LatticeParams& p, double k) {
  p.validate();
  const double radicand = p.j1 * p.j1 + p.j2 * p.j2 + 2.0 * p.j1 * p.j2 * std::cos(k) -
                          p.gamma * p.gamma;
  if (radicand >= 0.0) {
    const double e = std::sqrt(radicand);
    return {Complex(-e, 0.0), Complex(e, 0.0)};
  }
  const double e = std::sqrt(-radicand);
  return {Complex(0.0, -e), Complex(0.0, e)};
}

CMatrix normalize_battery(const CMatrix& h) {
  const EigenSystem es = eig_hermitian(h);
  const double emin = es.eigenvalues(0).real();
  const double emax = es.eigenvalues(es.eigenvalues.size() - 1).real();
  if (emax - emin < 1e-12)
    throw DegenerateSpectrum("normalize_battery: spectral spread below 1e-12");
  const auto n = h.rows();
  return (2.0 * h - (emax + emin) * CMatrix::Identity(n, n)) / (emax - emin);
}

}  // namespace ptssh
