#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "ptssh/spectral.hpp"
#include "test_support.hpp"

using namespace ptssh;
using test_support::close;
using test_support::multiset_match;
using test_support::to_vector;

namespace {

LatticeParams open_chain(int n, double j1, double gamma = 0.0) {
  return LatticeParams{n, j1, 1.0, gamma, Boundary::Open};
}

int regime_rank(PTRegime r) {
  switch (r) {
    case PTRegime::Unbroken: return 0;
    case PTRegime::EdgeBroken: return 1;
    case PTRegime::PartiallyBroken: return 2;
    case PTRegime::FullyBroken: return 3;
  }
  return -1;
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("edge_ep_threshold: closed-form value at N=6, J1=0.5") {
  // J1 (1-u^2)/(1-u^12) u^5 with u = 1/2 reduces to 16/1365.
  const auto ge = edge_ep_threshold(open_chain(6, 0.5));
  REQUIRE(ge.has_value());
  CHECK(close(*ge, 16.0 / 1365.0, 1e-15));
  CHECK(close(*ge, 0.011721611721611722, 1e-12));
}

TEST_CASE("edge_ep_threshold: absent in the trivial phase and on the critical line") {
  CHECK_FALSE(edge_ep_threshold(open_chain(6, 1.5)).has_value());
  CHECK_FALSE(edge_ep_threshold(open_chain(6, 1.0)).has_value());
  CHECK(close(*edge_ep_threshold(open_chain(6, 0.0)), 0.0, 0.0));
}

TEST_CASE("edge_ep_threshold: periodic input rejected") {
  LatticeParams p{6, 0.5, 1.0, 0.0, Boundary::Periodic};
  CHECK_THROWS_AS(edge_ep_threshold(p), BoundaryMismatch);
}

TEST_CASE("edge_ep_threshold: successive-size ratio approaches J1/J2") {
  const double g25 = *edge_ep_threshold(open_chain(25, 0.5));
  const double g26 = *edge_ep_threshold(open_chain(26, 0.5));
  CHECK(close(g26 / g25, 0.5, 1e-9));
}

TEST_CASE("bulk_ep_thresholds") {
  CHECK(bulk_ep_thresholds(open_chain(6, 0.5)) == std::pair{0.5, 1.5});
  CHECK(bulk_ep_thresholds(open_chain(6, 1.0)) == std::pair{0.0, 2.0});
  CHECK(bulk_ep_thresholds(open_chain(6, 0.0)) == std::pair{1.0, 1.0});
}

TEST_CASE("classify: representative points") {
  PhaseLabel l = classify(open_chain(6, 0.5, 0.45));
  CHECK(l.topology == Topology::Topological);
  CHECK(l.pt_regime == PTRegime::EdgeBroken);

  l = classify(open_chain(6, 1.5, 0.45));
  CHECK(l.topology == Topology::Trivial);
  CHECK(l.pt_regime == PTRegime::Unbroken);

  l = classify(open_chain(6, 0.5, 2.8));
  CHECK(l.topology == Topology::Topological);
  CHECK(l.pt_regime == PTRegime::FullyBroken);
}

TEST_CASE("classify: thresholds assign to the more-broken regime, gamma=0 unbroken") {
  CHECK(classify(open_chain(6, 0.5, 0.0)).pt_regime == PTRegime::Unbroken);
  CHECK(classify(open_chain(6, 0.5, 0.5)).pt_regime == PTRegime::PartiallyBroken);
  CHECK(classify(open_chain(6, 0.5, 1.5)).pt_regime == PTRegime::FullyBroken);
  CHECK(classify(open_chain(6, 0.5, 16.0 / 1365.0)).pt_regime == PTRegime::EdgeBroken);

  const PhaseLabel critical = classify(open_chain(6, 1.0, 0.5));
  CHECK(critical.topology == Topology::Critical);
  CHECK(critical.pt_regime == PTRegime::PartiallyBroken);
}

TEST_CASE("classify: periodic input rejected") {
  LatticeParams p{6, 0.5, 1.0, 0.3, Boundary::Periodic};
  CHECK_THROWS_AS(classify(p), BoundaryMismatch);
}

TEST_CASE("classify: regime is monotone in gamma") {
  for (double j1 : {0.3, 0.5, 0.9, 1.0, 1.5}) {
    int last = 0;
    for (int i = 0; i <= 300; ++i) {
      const int rank = regime_rank(classify(open_chain(6, j1, 3.0 * i / 300.0)).pt_regime);
      CHECK(rank >= last);
      last = rank;
    }
  }
}

TEST_CASE("sweep_spectrum: real below the edge threshold, one pair in the edge band") {
  const LatticeParams p = open_chain(6, 0.5);
  const double ge = *edge_ep_threshold(p);

  SpectralSweep below = sweep_spectrum(p, {0.25 * ge, 0.5 * ge, 0.8 * ge});
  for (const auto& evs : below.eigenvalues)
    for (const Complex& e : to_vector(evs)) CHECK(std::abs(e.imag()) <= 1e-9);

  SpectralSweep band = sweep_spectrum(p, {0.05, 0.2, 0.45});
  for (const auto& evs : band.eigenvalues) {
    int growing = 0, decaying = 0;
    for (const Complex& e : to_vector(evs)) {
      if (e.imag() > 1e-6) ++growing;
      if (e.imag() < -1e-6) ++decaying;
    }
    CHECK(growing == 1);
    CHECK(decaying == 1);
  }

  SpectralSweep broken = sweep_spectrum(p, {2.8});
  for (const Complex& e : to_vector(broken.eigenvalues[0])) CHECK(std::abs(e.imag()) > 1e-6);
}

TEST_CASE("sweep_spectrum: eigenvalue multiset closed under conjugation") {
  const LatticeParams p = open_chain(6, 0.5);
  const SpectralSweep sweep = sweep_spectrum(p, {0.2, 0.7, 1.2, 2.9});
  for (const auto& evs : sweep.eigenvalues) {
    std::vector<Complex> conj;
    for (const Complex& e : to_vector(evs)) conj.push_back(std::conj(e));
    CHECK(multiset_match(to_vector(evs), conj, 1e-9));
  }
}

TEST_CASE("detect_breaking_threshold: matches the closed form in the topological phase") {
  const double detected = detect_breaking_threshold(open_chain(6, 0.5));
  CHECK(close(detected, 16.0 / 1365.0, 1e-4));
}

TEST_CASE("detect_breaking_threshold: shrinks with system size") {
  CHECK(detect_breaking_threshold(open_chain(10, 0.5)) <
        detect_breaking_threshold(open_chain(6, 0.5)));
}

TEST_CASE("detect_breaking_threshold: trivial chain breaks at its smallest level") {
  // Oracle: the first pair to coalesce is the band-bottom pair, so the
  // threshold sits at min |E_j| of the finite open chain, which approaches
  // |J1-J2| from above as the chain grows.
  const LatticeParams p = open_chain(6, 1.5);
  const EigenSystem es = eig_hermitian(build_ssh(p));
  const double smallest_level = std::abs(es.eigenvalues(5).real());
  CHECK(close(detect_breaking_threshold(p), smallest_level, 1e-5));

  const double far = detect_breaking_threshold(open_chain(6, 1.5));
  const double near = detect_breaking_threshold(open_chain(24, 1.5));
  CHECK(std::abs(near - 0.5) < std::abs(far - 0.5));
  CHECK(near > 0.5);
}

TEST_CASE("detect_breaking_threshold equals the exact midgap splitting") {
  // Dual route: the chiral pair block breaks exactly at the Hermitian
  // midgap level |E_N|, so the bisection must land there to its tolerance.
  for (int n : {4, 6, 8, 10}) {
    for (double j1 : {0.3, 0.5, 0.7}) {
      const LatticeParams p = open_chain(n, j1);
      const EigenSystem es = eig_hermitian(build_ssh(p));
      const double midgap = std::abs(es.eigenvalues(n - 1).real());
      CHECK(close(detect_breaking_threshold(p), midgap, 2e-6));
    }
  }
}

TEST_CASE("detect_breaking_threshold vs the closed-form threshold") {
  // The closed form truncates the edge-state normalization, so its error
  // scales like gamma_e * (J1/J2)^{2N}; inside that envelope the numerical
  // and analytic thresholds agree to 1e-3.
  for (int n : {4, 6, 8, 10}) {
    for (double j1 : {0.3, 0.5, 0.7}) {
      const LatticeParams p = open_chain(n, j1);
      const double analytic = *edge_ep_threshold(p);
      const double numeric = detect_breaking_threshold(p);
      const double truncation = 3.0 * analytic * std::pow(j1, 2 * n);
      CHECK(std::abs(numeric - analytic) <= std::max(1e-3, truncation));
      if (std::pow(j1, 2 * n) < 5e-3) CHECK(close(numeric, analytic, 1e-3));
    }
  }
}

TEST_CASE("detect_breaking_threshold: periodic chains break at |J1-J2|") {
  for (double j1 : {0.5, 1.5}) {
    LatticeParams p{6, j1, 1.0, 0.0, Boundary::Periodic};
    CHECK(close(detect_breaking_threshold(p), std::abs(j1 - 1.0), 1e-3));
  }
}

TEST_CASE("phase_diagram: four regimes on the topological side, three on the trivial side") {
  std::vector<double> j1_grid, gamma_grid;
  for (int i = 0; i <= 40; ++i) j1_grid.push_back(2.0 * i / 40.0);
  for (int i = 0; i <= 30; ++i) gamma_grid.push_back(3.0 * i / 30.0);
  const PhaseDiagram pd = phase_diagram(j1_grid, gamma_grid, open_chain(6, 0.5));

  std::set<PTRegime> topo_regimes, trivial_regimes;
  for (std::size_t i = 0; i < j1_grid.size(); ++i) {
    for (std::size_t j = 0; j < gamma_grid.size(); ++j) {
      if (pd.labels[i][j].topology == Topology::Topological)
        topo_regimes.insert(pd.labels[i][j].pt_regime);
      if (pd.labels[i][j].topology == Topology::Trivial)
        trivial_regimes.insert(pd.labels[i][j].pt_regime);
    }
  }
  CHECK(topo_regimes.size() == 4);
  CHECK(trivial_regimes.size() == 3);
  CHECK_FALSE(trivial_regimes.count(PTRegime::EdgeBroken));
}

TEST_CASE("phase_diagram: boundary curves") {
  const PhaseDiagram pd = phase_diagram({0.0, 0.9, 1.5}, {0.0, 1.0}, open_chain(6, 0.5));
  CHECK(pd.edge_ep_curve[0] == 0.0);              // J1 = 0
  CHECK(pd.edge_ep_curve[1] > 1e-6);              // J1 = 0.9: still a visible threshold
  CHECK(std::isnan(pd.edge_ep_curve[2]));         // trivial side has none
  CHECK(close(pd.bulk_lower_curve[1], 0.1, 1e-15));
  CHECK(close(pd.bulk_upper_curve[1], 1.9, 1e-15));
}

TEST_CASE("classify: tiny gamma just below the critical line is unbroken") {
  CHECK(classify(open_chain(6, 0.9, 1e-6)).pt_regime == PTRegime::Unbroken);
}

TEST_CASE("regime label strings match the CSV contract") {
  CHECK(to_string(PTRegime::Unbroken) == "Unbroken");
  CHECK(to_string(PTRegime::EdgeBroken) == "Edge-broken");
  CHECK(to_string(PTRegime::PartiallyBroken) == "Partially broken");
  CHECK(to_string(PTRegime::FullyBroken) == "Fully broken");
  CHECK(to_string(Topology::Topological) == "Topological");
}

}  // TEST_SUITE
