#include "ptssh/spectral.hpp"

#include <cmath>
#include <limits>

namespace ptssh {

std::string to_string(Topology t) {
  switch (t) {
    case Topology::Trivial: return "Trivial";
    case Topology::Topological: return "Topological";
    case Topology::Critical: return "Critical";
  }
  return "?";
}

std::string to_string(PTRegime r) {
  switch (r) {
    case PTRegime::Unbroken: return "Unbroken";
    case PTRegime::EdgeBroken: return "Edge-broken";
    case PTRegime::PartiallyBroken: return "Partially broken";
    case PTRegime::FullyBroken: return "Fully broken";
  }
  return "?";
}

std::optional<double> edge_ep_threshold(const LatticeParams& p) {
  p.validate();
  if (p.boundary != Boundary::Open)
    throw BoundaryMismatch("edge_ep_threshold: edge physics needs open boundaries");
  if (p.j1 >= p.j2) return std::nullopt;
  const double u = p.j1 / p.j2;
  return p.j1 * (1.0 - u * u) / (1.0 - std::pow(u, 2 * p.n_cells)) *
         std::pow(u, p.n_cells - 1);
}

std::pair<double, double> bulk_ep_thresholds(const LatticeParams& p) {
  p.validate();
  return {std::abs(p.j1 - p.j2), p.j1 + p.j2};
}

PhaseLabel classify(const LatticeParams& p) {
  p.validate();
  if (p.boundary != Boundary::Open)
    throw BoundaryMismatch("classify: the open-chain classification requires open boundaries");

  PhaseLabel label{};
  const double detuning = p.j1 - p.j2;
  if (std::abs(detuning) < 1e-12)
    label.topology = Topology::Critical;
  else
    label.topology = detuning < 0.0 ? Topology::Topological : Topology::Trivial;

  const auto [bulk_lower, bulk_upper] = bulk_ep_thresholds(p);
  if (p.gamma == 0.0) {
    label.pt_regime = PTRegime::Unbroken;
  } else if (p.gamma >= bulk_upper) {
    label.pt_regime = PTRegime::FullyBroken;
  } else if (p.gamma >= bulk_lower) {
    label.pt_regime = PTRegime::PartiallyBroken;
  } else if (label.topology == Topology::Topological &&
             p.gamma >= edge_ep_threshold(p).value()) {
    label.pt_regime = PTRegime::EdgeBroken;
  } else {
    label.pt_regime = PTRegime::Unbroken;
  }
  return label;
}

SpectralSweep sweep_spectrum(const LatticeParams& p, const std::vector<double>& gamma_grid) {
  p.validate();
  SpectralSweep sweep;
  sweep.gamma_grid = gamma_grid;
  sweep.eigenvalues.reserve(gamma_grid.size());
  sweep.ep_flags.reserve(gamma_grid.size());
  for (double g : gamma_grid) {
    LatticeParams q = p;
    q.gamma = g;
    try {
      EigenSystem es = eig_general(build_pt(q));
      sweep.eigenvalues.push_back(std::move(es.eigenvalues));
      sweep.ep_flags.push_back(es.near_defective);
    } catch (const NoConvergence& e) {
      throw NoConvergence(std::string(e.what()) + " at gamma=" + std::to_string(g));
    }
  }
  return sweep;
}

namespace {

double max_imag(const LatticeParams& p, double gamma) {
  LatticeParams q = p;
  q.gamma = gamma;
  const EigenSystem es = eig_general(build_pt(q));
  double worst = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues.size(); ++i)
    worst = std::max(worst, std::abs(es.eigenvalues(i).imag()));
  return worst;
}

}  // namespace

double detect_breaking_threshold(const LatticeParams& p) {
  p.validate();
  double lo = 0.0;
  double hi = p.j1 + p.j2 + 1.0;
  const auto broken = [&](double g) { return max_imag(p, g) > kImagDetectionTol; };
  if (broken(lo) || !broken(hi))
    throw BracketFailure("detect_breaking_threshold: no sign change in [0, J1+J2+1]");
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    (broken(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

PhaseDiagram phase_diagram(const std::vector<double>& j1_grid,
                           const std::vector<double>& gamma_grid,
                           const LatticeParams& p_base) {
  PhaseDiagram pd;
  pd.j1_grid = j1_grid;
  pd.gamma_grid = gamma_grid;
  pd.labels.resize(j1_grid.size());
  pd.edge_ep_curve.reserve(j1_grid.size());
  pd.bulk_lower_curve.reserve(j1_grid.size());
  pd.bulk_upper_curve.reserve(j1_grid.size());

  for (std::size_t i = 0; i < j1_grid.size(); ++i) {
    LatticeParams p = p_base;
    p.j1 = j1_grid[i];
    const auto edge = edge_ep_threshold(p);
    pd.edge_ep_curve.push_back(edge.value_or(std::numeric_limits<double>::quiet_NaN()));
    const auto [lower, upper] = bulk_ep_thresholds(p);
    pd.bulk_lower_curve.push_back(lower);
    pd.bulk_upper_curve.push_back(upper);

    pd.labels[i].reserve(gamma_grid.size());
    for (double g : gamma_grid) {
      p.gamma = g;
      pd.labels[i].push_back(classify(p));
    }
  }
  return pd;
}

}  // namespace ptssh
