#include "ptssh/verify.hpp"

#include <algorithm>
#include <cmath>

#include "ptssh/spectral.hpp"

namespace ptssh {

GammaMatrixReport chiral_report(const LatticeParams& p) {
  LatticeParams q = p;
  q.gamma = 0.0;  // property of the Hermitian chain and Gamma only
  const CMatrix h_ssh = build_ssh(q);
  const CMatrix gamma = build_gamma(q);
  const EigenSystem basis = eig_hermitian(h_ssh);

  GammaMatrixReport report;
  report.m = basis.right_vectors.adjoint() * gamma * basis.right_vectors;

  const Eigen::Index dim = report.m.rows();
  for (Eigen::Index m = 0; m < dim; ++m) {
    for (Eigen::Index n = 0; n < dim; ++n) {
      const double a = std::abs(report.m(m, n));
      if (n == dim - 1 - m)
        report.max_antidiag = std::max(report.max_antidiag, a);
      else
        report.max_offpair = std::max(report.max_offpair, a);
      const double esum = (basis.eigenvalues(m) + basis.eigenvalues(n)).real();
      report.selection_residual = std::max(report.selection_residual, std::abs(esum * a));
    }
  }
  return report;
}

double two_level_peak(const LatticeParams& p) {
  p.validate();
  const auto edge = p.j1 < p.j2 ? edge_ep_threshold(p) : std::nullopt;
  const double first_breaking = edge ? *edge : std::abs(p.j1 - p.j2);
  if (!(p.gamma < first_breaking / 10.0))
    throw RegimeViolation("two_level_peak: gamma not deep inside the unbroken regime");

  const EigenSystem basis = eig_hermitian(build_ssh(p));
  const CMatrix gamma = build_gamma(p);
  const Eigen::Index top = basis.eigenvalues.size() - 1;
  const double coupling =
      std::abs((basis.right_vectors.col(top).adjoint() * gamma * basis.right_vectors.col(0))(0));
  const double spread = (basis.eigenvalues(top) - basis.eigenvalues(0)).real();
  const double ratio = 2.0 * p.gamma * coupling / spread;
  return ratio * ratio;
}

std::pair<CMatrix, double> lindblad_effective(const LatticeParams& p, double kappa) {
  p.validate();
  if (kappa < 0.0) throw InvalidState("lindblad_effective: kappa must be >= 0");
  const int dim = p.dim();
  const CMatrix identity = CMatrix::Identity(dim, dim);
  const CMatrix h_ssh = build_ssh(p);

  // Gain L_{a,n} = sqrt(kappa) a_n^dag contributes kappa * a_n a_n^dag, which
  // acts as kappa (1 - |A_n><A_n|) on the single-excitation sector; loss
  // L_{b,n} = sqrt(kappa) b_n contributes kappa |B_n><B_n|.
  CMatrix jump_sum = CMatrix::Zero(dim, dim);
  for (int n = 0; n < p.n_cells; ++n) {
    CMatrix p_a = CMatrix::Zero(dim, dim);
    p_a(site_a(n), site_a(n)) = 1.0;
    CMatrix p_b = CMatrix::Zero(dim, dim);
    p_b(site_b(n), site_b(n)) = 1.0;
    jump_sum += kappa * (identity - p_a) + kappa * p_b;
  }
  const CMatrix h_eff = h_ssh - Complex(0.0, 0.5) * jump_sum;

  const CMatrix reference = h_ssh + Complex(0.0, 0.5 * kappa) * build_gamma(p) -
                            Complex(0.0, 0.5 * kappa * p.n_cells) * identity;
  return {h_eff, max_abs(h_eff - reference)};
}

double ergotropy_equivalence(const ChargingTrace& trace) {
  const CMatrix h_norm = normalize_battery(build_ssh(trace.params));
  double worst = 0.0;
  for (std::size_t i = 0; i < trace.states.size(); ++i) {
    const CMatrix rho = trace.states[i] * trace.states[i].adjoint();
    worst = std::max(worst, std::abs(ergotropy(rho, h_norm) - trace.delta_e[i]));
  }
  return worst;
}

double shift_invariance(const CMatrix& h, Complex c, const CVector& psi0, double t) {
  const CMatrix shifted = h + c * CMatrix::Identity(h.rows(), h.cols());
  const CVector a = propagate_normalized(h, psi0, t);
  const CVector b = propagate_normalized(shifted, psi0, t);
  return std::max(0.0, 1.0 - fidelity(a, b));
}

std::vector<CheckResult> run_suite(const LatticeParams& p) {
  p.validate();
  std::vector<CheckResult> results;
  const auto record = [&](std::string name, double bound, double observed) {
    results.push_back({std::move(name), bound, observed, observed <= bound});
  };

  const CMatrix h_ssh = build_ssh(p);
  const CMatrix gamma = build_gamma(p);
  const CMatrix h_pt = build_pt(p);
  const int dim = p.dim();

  record("chiral_anticommutation", 1e-12, max_abs(gamma * h_ssh + h_ssh * gamma));
  record("chiral_breaking_identity", 1e-12,
         max_abs(gamma * h_pt + h_pt * gamma -
                 Complex(0.0, 2.0 * p.gamma) * CMatrix::Identity(dim, dim)));

  const GammaMatrixReport report = chiral_report(p);
  record("selection_residual", 1e-9, report.selection_residual);
  record("extremal_pair_element", 0.05, std::abs(std::abs(report.m(0, dim - 1)) - 1.0));
  record("offpair_suppression", 0.1, report.max_offpair / report.max_antidiag);

  const double kappa = 2.0 * p.gamma;
  record("lindblad_mismatch", 1e-12, lindblad_effective(p, kappa).second);

  const CVector psi0 = ground_state(h_ssh);
  const CMatrix h_eff = lindblad_effective(p, kappa).first;
  record("lindblad_evolution_agreement", 1e-9,
         1.0 - fidelity(propagate_normalized(h_eff, psi0, 10.0 / p.j2),
                        propagate_normalized(h_pt, psi0, 10.0 / p.j2)));

  record("shift_invariance", 1e-10,
         shift_invariance(h_pt, Complex(0.0, -0.5 * kappa * p.n_cells), psi0, 10.0 / p.j2));

  const ChargingTrace trace = evolve(p, std::min(50.0, default_t_max(p)), kDefaultDt);
  record("ergotropy_equivalence", 1e-9, ergotropy_equivalence(trace));

  double purity_dev = 0.0;
  double closure_dev = 0.0;
  for (std::size_t i = 0; i < trace.states.size(); ++i) {
    const CMatrix rho = trace.states[i] * trace.states[i].adjoint();
    purity_dev = std::max(purity_dev, std::abs((rho * rho).trace().real() - 1.0));
    closure_dev =
        std::max(closure_dev, std::abs(trace.populations.row(static_cast<Eigen::Index>(i)).sum() - 1.0));
  }
  record("purity", 1e-9, purity_dev);
  record("population_closure", 1e-9, closure_dev);

  return results;
}

}  // namespace ptssh
