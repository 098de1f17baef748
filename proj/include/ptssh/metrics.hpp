#pragma once

#include <string>
#include <vector>

#include "ptssh/dynamics.hpp"

namespace ptssh {

struct FirstPeak {
  double value = 0.0;
  bool monotonic = false;  // no interior maximum: unity convention applied
  bool flat = false;       // trace never leaves the noise floor (e.g. gamma = 0)
};

/// Stored energy at the first interior local maximum (strict by a 1e-6
/// relative margin). Monotonic traces score 1 by convention; flat traces
/// score 0. Throws TraceTooShort below 3 points.
FirstPeak first_peak(const ChargingTrace& trace);

/// Earliest grid time from which the stored energy stays at or above 95% of
/// the asymptote for the rest of the trace. Returns +infinity when the level
/// is never durably reached. Throws MissingAsymptote on a non-finite
/// asymptote.
double saturation_time(const ChargingTrace& trace, double asymptote);

struct ChargingMetrics {
  double first_peak = 0.0;
  double saturation_time = 0.0;  // +infinity in unbroken / never-saturating regimes
  bool monotonic = false;
  bool flat = false;
  double asymptote = 0.0;  // NaN when the regime has no dominant growth mode
};

/// Full per-parameter-point pipeline: evolve, extract the first peak, and
/// resolve the saturation time against the eigenmode asymptote (infinite in
/// the unbroken regime). t_max <= 0 selects the regime default.
ChargingMetrics compute_metrics(const LatticeParams& p, double t_max = 0.0,
                                double dt = kDefaultDt);

struct MetricMap {
  std::vector<double> j1_grid;
  std::vector<double> gamma_grid;
  Eigen::MatrixXd first_peak_grid;  // [i_j1, i_gamma]
  Eigen::MatrixXd log10_t95_grid;   // log10 of t95, +inf sentinel preserved
  std::vector<std::string> cell_errors;
};

/// Metrics over the (J1, gamma) plane. Grid cells evaluate independently
/// (concurrently, capped by PTSSH_THREADS); per-cell failures are recorded
/// as NaN cells and the sweep continues.
MetricMap sweep_metrics(const std::vector<double>& j1_grid,
                        const std::vector<double>& gamma_grid,
                        const LatticeParams& p_base, double dt = kDefaultDt);

struct ScalingPoint {
  int n_cells = 0;
  double gamma = 0.0;
  bool topological = false;
  ChargingMetrics metrics;
};

/// System-size dependence of both metrics for a topological and a trivial
/// coupling ratio, keyed by (N, gamma, phase).
std::vector<ScalingPoint> size_scaling(const std::vector<int>& n_list,
                                       const std::vector<double>& gamma_list,
                                       double j1_topo, double j1_triv,
                                       const LatticeParams& p_base);

/// Relaxation-time estimate 1/(lambda_max - lambda_2) of the dominant mode.
/// Throws NoDominantMode in the unbroken regime and DegenerateTop when the
/// two leading growth rates are unresolved.
double relaxation_estimate(const CMatrix& h_pt);

}  // namespace ptssh
