#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ptssh/hamiltonian.hpp"

namespace ptssh {

/// Imaginary parts below this threshold count as zero when deciding whether
/// the spectrum has gone complex (eigensolver noise floor ~1e-12 at these
/// dimensions, margin of 10^3).
inline constexpr double kImagDetectionTol = 1e-9;

enum class Topology { Trivial, Topological, Critical };
enum class PTRegime { Unbroken, EdgeBroken, PartiallyBroken, FullyBroken };

struct PhaseLabel {
  Topology topology;
  PTRegime pt_regime;
};

std::string to_string(Topology t);
std::string to_string(PTRegime r);  // Table-style names: "Edge-broken", ...

/// Gain-loss strength at which the hybridized edge pair coalesces:
/// gamma_e = J1 (1-(J1/J2)^2) / (1-(J1/J2)^{2N}) (J1/J2)^{N-1}.
/// Empty in the trivial phase (J1 >= J2), where no edge pair exists.
/// Throws BoundaryMismatch for periodic input.
std::optional<double> edge_ep_threshold(const LatticeParams& p);

/// Bulk coalescence thresholds (|J1-J2|, J1+J2).
std::pair<double, double> bulk_ep_thresholds(const LatticeParams& p);

/// Topology from the sign of J1-J2 and the symmetry regime from comparing
/// gamma against gamma_e, |J1-J2| and J1+J2. A gamma exactly on a threshold
/// is assigned to the more-broken regime; gamma = 0 is always Unbroken.
/// Open boundaries only.
PhaseLabel classify(const LatticeParams& p);

struct SpectralSweep {
  std::vector<double> gamma_grid;
  std::vector<CVector> eigenvalues;  // one sorted 2N-vector per gamma
  std::vector<bool> ep_flags;        // near-defective eigenvector matrix
};

/// Diagonalizes the gain-loss Hamiltonian at each gamma in the grid.
SpectralSweep sweep_spectrum(const LatticeParams& p, const std::vector<double>& gamma_grid);

/// Numerical location of the first symmetry breaking: bisection on gamma for
/// the smallest value where max_j Im E_j exceeds the detection threshold,
/// to absolute tolerance 1e-6. Works for either topology and boundary.
/// Throws BracketFailure when [0, J1+J2+1] does not bracket a breaking.
double detect_breaking_threshold(const LatticeParams& p);

struct PhaseDiagram {
  std::vector<double> j1_grid;
  std::vector<double> gamma_grid;
  std::vector<std::vector<PhaseLabel>> labels;  // [i_j1][i_gamma]
  std::vector<double> edge_ep_curve;            // gamma_e(j1), NaN where absent
  std::vector<double> bulk_lower_curve;         // |j1 - J2|
  std::vector<double> bulk_upper_curve;         // j1 + J2
};

/// classify() on the grid, with the three boundary curves alongside.
PhaseDiagram phase_diagram(const std::vector<double>& j1_grid,
                           const std::vector<double>& gamma_grid,
                           const LatticeParams& p_base);

}  // namespace ptssh
