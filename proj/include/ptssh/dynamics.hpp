#pragma once

#include <vector>

#include "ptssh/hamiltonian.hpp"

namespace ptssh {

/// Default time step for charging traces, in units of 1/J2.
inline constexpr double kDefaultDt = 0.01;

/// Charging simulation output: normalized states on a uniform time grid,
/// stored energy against the normalized battery Hamiltonian, and populations
/// in the orthonormal eigenbasis of the Hermitian chain.
struct ChargingTrace {
  LatticeParams params;
  std::vector<double> times;
  std::vector<CVector> states;
  std::vector<double> delta_e;
  Eigen::MatrixXd populations;  // row per time, column per eigenstate
};

/// Unit-norm eigenvector of the minimal eigenvalue, with the deterministic
/// phase convention. Throws DegenerateGround when the two lowest eigenvalues
/// are closer than 1e-10.
CVector ground_state(const CMatrix& h_ssh);

/// Default trace length: 200/J2 in the unbroken and edge-broken regimes,
/// 100/J2 once bulk pairs are broken.
double default_t_max(const LatticeParams& p);

/// Runs the charging protocol: the ground state of the Hermitian chain
/// evolved under the gain-loss Hamiltonian with per-sample normalization.
///
/// Every sample is taken from one shared base march with a canonical
/// (power-of-two) internal step chosen from ||H||, plus a short polynomial
/// remainder. Grid points common to two time grids therefore evaluate
/// bit-identically, which keeps traces stable under dt refinement even in
/// regimes where the late-time mode takeover is seeded at rounding level.
ChargingTrace evolve(const LatticeParams& p, double t_max, double dt = kDefaultDt);

/// Maximal unitarily extractable work of a density operator against a
/// battery Hamiltonian: Tr[H rho] minus the passive-state energy
/// (occupations sorted non-increasing against energies sorted non-decreasing).
/// Throws InvalidState on trace/positivity/hermiticity violations.
double ergotropy(const CMatrix& rho, const CMatrix& h_norm);

struct AsymptoticMode {
  CVector vector;      // right eigenvector with maximal Im E
  double lambda_max;   // largest imaginary part
  double delta_lambda; // gap to the second-largest imaginary part
  bool degenerate_top; // delta_lambda < 1e-9: final state depends on initial data
};

/// Dominant growth mode of a broken-regime Hamiltonian.
/// Throws NoDominantMode when no eigenvalue has Im E > 1e-9.
AsymptoticMode asymptotic_state(const CMatrix& h_pt);

/// Long-time stored-energy reference: the dominant-mode expectation value
/// when the growth-rate gap is resolvable, otherwise the mean of the trailing
/// 10% of a long normalized propagation.
double asymptotic_delta_e(const CMatrix& h_pt, const CMatrix& h_norm, const CVector& psi0);

}  // namespace ptssh
