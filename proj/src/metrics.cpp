#include "ptssh/metrics.hpp"

#include <cmath>
#include <limits>

#include "ptssh/parallel.hpp"

namespace ptssh {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kPeakMargin = 1e-6;   // relative: separates peaks from fp ripple
constexpr double kFlatFloor = 1e-9;    // |dE| below this everywhere: flat trace
}  // namespace

FirstPeak first_peak(const ChargingTrace& trace) {
  const auto& de = trace.delta_e;
  if (de.size() < 3) throw TraceTooShort("first_peak: need at least 3 trace points");

  double amplitude = 0.0;
  for (double v : de) amplitude = std::max(amplitude, std::abs(v));
  if (amplitude <= kFlatFloor) return {0.0, false, true};

  for (std::size_t i = 1; i + 1 < de.size(); ++i) {
    const double margin = kPeakMargin * std::max(std::abs(de[i]), 1e-12);
    if (de[i] - de[i - 1] > margin && de[i] - de[i + 1] > margin)
      return {de[i], false, false};
  }
  return {1.0, true, false};  // monotonic convention
}

double saturation_time(const ChargingTrace& trace, double asymptote) {
  if (!std::isfinite(asymptote))
    throw MissingAsymptote("saturation_time: asymptote is not finite");
  const auto& de = trace.delta_e;
  const double level = 0.95 * asymptote;

  std::ptrdiff_t last_below = -1;
  for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(de.size()) - 1; i >= 0; --i) {
    if (de[static_cast<std::size_t>(i)] < level) {
      last_below = i;
      break;
    }
  }
  const std::size_t first_durable = static_cast<std::size_t>(last_below + 1);
  if (first_durable >= de.size()) return kInf;
  return trace.times[first_durable];
}

ChargingMetrics compute_metrics(const LatticeParams& p, double t_max, double dt) {
  if (t_max <= 0.0) t_max = default_t_max(p);
  const ChargingTrace trace = evolve(p, t_max, dt);

  ChargingMetrics m;
  const FirstPeak fp = first_peak(trace);
  m.first_peak = fp.value;
  m.monotonic = fp.monotonic;
  m.flat = fp.flat;

  try {
    const CMatrix h_ssh = build_ssh(p);
    m.asymptote = asymptotic_delta_e(build_pt(p), normalize_battery(h_ssh),
                                     ground_state(h_ssh));
    m.saturation_time = saturation_time(trace, m.asymptote);
  } catch (const NoDominantMode&) {
    m.asymptote = kNaN;
    m.saturation_time = kInf;
  }
  return m;
}

MetricMap sweep_metrics(const std::vector<double>& j1_grid,
                        const std::vector<double>& gamma_grid,
                        const LatticeParams& p_base, double dt) {
  const std::size_t nj = j1_grid.size();
  const std::size_t ng = gamma_grid.size();

  MetricMap map;
  map.j1_grid = j1_grid;
  map.gamma_grid = gamma_grid;
  map.first_peak_grid.setConstant(nj, ng, kNaN);
  map.log10_t95_grid.setConstant(nj, ng, kNaN);
  std::vector<std::string> errors(nj * ng);

  parallel_for(nj * ng, [&](std::size_t cell) {
    const std::size_t i = cell / ng;
    const std::size_t j = cell % ng;
    LatticeParams p = p_base;
    p.j1 = j1_grid[i];
    p.gamma = gamma_grid[j];
    try {
      const ChargingMetrics m = compute_metrics(p, 0.0, dt);
      map.first_peak_grid(i, j) = m.first_peak;
      map.log10_t95_grid(i, j) = std::log10(m.saturation_time);
    } catch (const std::exception& e) {
      errors[cell] = "j1=" + std::to_string(p.j1) + " gamma=" + std::to_string(p.gamma) +
                     ": " + e.what();
    }
  });

  for (auto& e : errors)
    if (!e.empty()) map.cell_errors.push_back(std::move(e));
  return map;
}

std::vector<ScalingPoint> size_scaling(const std::vector<int>& n_list,
                                       const std::vector<double>& gamma_list,
                                       double j1_topo, double j1_triv,
                                       const LatticeParams& p_base) {
  std::vector<ScalingPoint> points(n_list.size() * gamma_list.size() * 2);

  parallel_for(points.size(), [&](std::size_t idx) {
    const std::size_t per_n = gamma_list.size() * 2;
    const int n = n_list[idx / per_n];
    const double gamma = gamma_list[(idx % per_n) / 2];
    const bool topological = (idx % 2) == 0;

    LatticeParams p = p_base;
    p.n_cells = n;
    p.gamma = gamma;
    p.j1 = topological ? j1_topo : j1_triv;

    points[idx] = {n, gamma, topological, compute_metrics(p)};
  });
  return points;
}

double relaxation_estimate(const CMatrix& h_pt) {
  const AsymptoticMode mode = asymptotic_state(h_pt);
  if (mode.degenerate_top)
    throw DegenerateTop("relaxation_estimate: leading growth rates unresolved");
  return 1.0 / mode.delta_lambda;
}

}  // namespace ptssh
