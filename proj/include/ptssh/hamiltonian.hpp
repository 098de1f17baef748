#pragma once

#include <utility>

#include "ptssh/matrixcore.hpp"

namespace ptssh {

enum class Boundary { Open, Periodic };

/// Physical configuration of the dimerized chain. Energies are measured in
/// units of the inter-cell coupling J2, times in 1/J2.
struct LatticeParams {
  int n_cells = 6;      // N unit cells, 2N sites
  double j1 = 0.5;      // intra-cell coupling
  double j2 = 1.0;      // inter-cell coupling, the energy unit
  double gamma = 0.0;   // gain-loss strength
  Boundary boundary = Boundary::Open;

  int dim() const { return 2 * n_cells; }
  void validate() const;  // throws std::invalid_argument
};

// Site ordering: cell n (0-based) contributes A_n -> 2n, B_n -> 2n+1.
inline int site_a(int cell) { return 2 * cell; }
inline int site_b(int cell) { return 2 * cell + 1; }

/// Dimerized-chain Hamiltonian: J1 on intra-cell bonds, J2 on inter-cell
/// bonds, plus the wrap-around J2 bond under periodic boundaries.
CMatrix build_ssh(const LatticeParams& p);

/// Sublattice (chiral) operator: +1 on A sites, -1 on B sites.
CMatrix build_gamma(const LatticeParams& p);

/// Gain-loss extension: build_ssh(p) + i*gamma*build_gamma(p).
CMatrix build_pt(const LatticeParams& p);

/// 2x2 momentum-space block at wavenumber k, including the i*gamma diagonal
/// when gamma > 0.
CMatrix bloch(const LatticeParams& p, double k);

/// Bulk band pair (-E, +E) with E = sqrt(J1^2 + J2^2 + 2 J1 J2 cos k).
std::pair<double, double> dispersion_hermitian(const LatticeParams& p, double k);

/// Bulk band pair with gain-loss: +-sqrt(J1^2 + J2^2 + 2 J1 J2 cos k - gamma^2),
/// real when the radicand is >= 0 and purely imaginary otherwise.
std::pair<Complex, Complex> dispersion_pt(const LatticeParams& p, double k);

/// Affine rescaling (2H - (Emax+Emin) I) / (Emax - Emin) that confines the
/// spectrum to [-1, 1] with the extremes mapped exactly to +-1.
/// Throws DegenerateSpectrum when Emax - Emin < 1e-12.
CMatrix normalize_battery(const CMatrix& h);

}  // namespace ptssh
