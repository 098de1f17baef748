#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ptssh/dynamics.hpp"

namespace ptssh {

/// Matrix elements of the sublattice operator in the Hermitian eigenbasis,
/// M_mn = <phi_m|Gamma|phi_n>, with summary scalars: the anti-diagonal
/// (chiral-partner) maximum, the largest element anywhere else, and the
/// selection residual max |(E_m + E_n) M_mn|.
struct GammaMatrixReport {
  CMatrix m;
  double max_antidiag = 0.0;
  double max_offpair = 0.0;
  double selection_residual = 0.0;
};

/// Builds the report for the Hermitian chain (gamma is ignored).
GammaMatrixReport chiral_report(const LatticeParams& p);

/// Two-level estimate of the maximal population transferred to the top
/// eigenstate, (2 gamma |Gamma_{2N,1}| / (E_2N - E_1))^2. Valid only deep in
/// the unbroken regime (gamma below a tenth of the first breaking threshold);
/// throws RegimeViolation otherwise.
double two_level_peak(const LatticeParams& p);

/// Single-excitation rendition of the gain/loss jump operators: assembles
/// H_eff = H - (i/2) sum L^dag L and reports the max-norm mismatch against
/// H_SSH + i(kappa/2) Gamma - i(kappa N/2) I.
std::pair<CMatrix, double> lindblad_effective(const LatticeParams& p, double kappa);

/// Max over the trace of |ergotropy(rho(t)) - dE(t)|; zero for pure states.
double ergotropy_equivalence(const ChargingTrace& trace);

/// 1 - |<psi_H(t)|psi_{H+cI}(t)>|^2 under normalized propagation: any
/// constant shift of the generator must wash out.
double shift_invariance(const CMatrix& h, Complex c, const CVector& psi0, double t);

struct CheckResult {
  std::string name;
  double bound = 0.0;
  double observed = 0.0;
  bool pass = false;
};

/// Runs every identity check at the given parameters and returns one
/// pass/fail entry per check.
std::vector<CheckResult> run_suite(const LatticeParams& p);

}  // namespace ptssh
