#include "ptssh/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "ptssh/csv.hpp"
#include "ptssh/dynamics.hpp"
#include "ptssh/metrics.hpp"
#include "ptssh/spectral.hpp"
#include "ptssh/svg.hpp"
#include "ptssh/verify.hpp"

namespace ptssh::cli {

namespace {

namespace fs = std::filesystem;
using csv::format_double;

std::vector<double> linspace(double lo, double hi, int steps) {
  if (steps < 1) throw std::invalid_argument("grid needs at least one step");
  std::vector<double> grid;
  grid.reserve(steps);
  if (steps == 1) {
    grid.push_back(lo);
    return grid;
  }
  for (int i = 0; i < steps; ++i)
    grid.push_back(lo + (hi - lo) * static_cast<double>(i) / (steps - 1));
  return grid;
}

std::vector<double> parse_list(const std::string& csv_list) {
  std::vector<double> values;
  std::stringstream ss(csv_list);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(csv::parse_double(item));
  return values;
}

struct OutputOptions {
  std::string directory = ".";
  std::string formats;  // comma-separated subset of csv,json,svg

  bool wants(const std::string& fmt, const std::string& defaults) const {
    const std::string& source = formats.empty() ? defaults : formats;
    std::stringstream ss(source);
    std::string item;
    while (std::getline(ss, item, ','))
      if (item == fmt) return true;
    return false;
  }

  std::string path(const std::string& name) const {
    fs::create_directories(directory);
    return (fs::path(directory) / name).string();
  }
};

void add_output_options(CLI::App* cmd, OutputOptions* out) {
  cmd->add_option("--out", out->directory, "Output directory")->capture_default_str();
  cmd->add_option("--formats", out->formats, "Comma-separated subset of csv,json,svg");
}

void add_lattice_options(CLI::App* cmd, LatticeParams* p, bool with_gamma = true) {
  cmd->add_option("--n", p->n_cells, "Unit cells N (2N sites)")->capture_default_str();
  cmd->add_option("--j1", p->j1, "Intra-cell coupling J1")->capture_default_str();
  cmd->add_option("--j2", p->j2, "Inter-cell coupling J2 (energy unit)")->capture_default_str();
  if (with_gamma)
    cmd->add_option("--gamma", p->gamma, "Gain-loss strength")->capture_default_str();
  cmd->add_option_function<std::string>(
         "--boundary",
         [p](const std::string& value) {
           if (value == "open")
             p->boundary = Boundary::Open;
           else if (value == "periodic")
             p->boundary = Boundary::Periodic;
           else
             throw CLI::ValidationError("--boundary", "must be open or periodic");
         },
         "Boundary condition: open|periodic")
      ->default_str("open");
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

void emit_spectrum(const LatticeParams& p, const std::vector<double>& gamma_grid,
                   const OutputOptions& out, const std::string& stem) {
  const SpectralSweep sweep = sweep_spectrum(p, gamma_grid);
  const int dim = p.dim();

  if (out.wants("csv", "csv,svg")) {
    csv::Table table;
    table.header.push_back("gamma");
    for (int j = 1; j <= dim; ++j) table.header.push_back("re_e_" + std::to_string(j));
    for (int j = 1; j <= dim; ++j) table.header.push_back("im_e_" + std::to_string(j));
    for (std::size_t i = 0; i < sweep.gamma_grid.size(); ++i) {
      std::vector<std::string> row;
      row.push_back(format_double(sweep.gamma_grid[i]));
      for (int j = 0; j < dim; ++j)
        row.push_back(format_double(sweep.eigenvalues[i](j).real()));
      for (int j = 0; j < dim; ++j)
        row.push_back(format_double(sweep.eigenvalues[i](j).imag()));
      table.rows.push_back(std::move(row));
    }
    csv::write(out.path(stem + ".csv"), table);
  }

  if (out.wants("svg", "csv,svg")) {
    svg::Panel re_panel{"Re E vs gamma", "γ/J₂", "Re E / J₂", {}};
    svg::Panel im_panel{"Im E vs gamma", "γ/J₂", "Im E / J₂", {}};
    for (int j = 0; j < dim; ++j) {
      svg::Series re{"", sweep.gamma_grid, {}, "#2471a3"};
      svg::Series im{"", sweep.gamma_grid, {}, "#c0392b"};
      for (std::size_t i = 0; i < sweep.gamma_grid.size(); ++i) {
        re.y.push_back(sweep.eigenvalues[i](j).real());
        im.y.push_back(sweep.eigenvalues[i](j).imag());
      }
      re_panel.series.push_back(std::move(re));
      im_panel.series.push_back(std::move(im));
    }
    svg::write_line_plot(out.path(stem + ".svg"), {re_panel, im_panel});
  }
}

// ---------------------------------------------------------------------------
// phase diagram
// ---------------------------------------------------------------------------

int regime_index(PTRegime r) {
  switch (r) {
    case PTRegime::Unbroken: return 0;
    case PTRegime::EdgeBroken: return 1;
    case PTRegime::PartiallyBroken: return 2;
    case PTRegime::FullyBroken: return 3;
  }
  return 0;
}

void emit_phase_diagram(const PhaseDiagram& pd, const OutputOptions& out,
                        const std::string& prefix) {
  if (out.wants("csv", "csv,svg")) {
    csv::Table labels;
    labels.header = {"j1", "gamma", "topology", "pt_regime"};
    for (std::size_t i = 0; i < pd.j1_grid.size(); ++i)
      for (std::size_t j = 0; j < pd.gamma_grid.size(); ++j)
        labels.rows.push_back({format_double(pd.j1_grid[i]), format_double(pd.gamma_grid[j]),
                               to_string(pd.labels[i][j].topology),
                               to_string(pd.labels[i][j].pt_regime)});
    csv::write(out.path(prefix + "labels.csv"), labels);

    csv::Table boundaries;
    boundaries.header = {"j1", "gamma_e", "bulk_lower", "bulk_upper"};
    for (std::size_t i = 0; i < pd.j1_grid.size(); ++i)
      boundaries.rows.push_back({format_double(pd.j1_grid[i]),
                                 format_double(pd.edge_ep_curve[i]),
                                 format_double(pd.bulk_lower_curve[i]),
                                 format_double(pd.bulk_upper_curve[i])});
    csv::write(out.path(prefix + "boundaries.csv"), boundaries);
  }

  if (out.wants("svg", "csv,svg")) {
    svg::Heatmap hm;
    hm.title = "PT regimes in the gamma-J1 plane";
    hm.x_label = "J₁/J₂";
    hm.y_label = "γ/J₂";
    hm.x = pd.j1_grid;
    hm.y = pd.gamma_grid;
    hm.z.resize(static_cast<Eigen::Index>(pd.j1_grid.size()),
                static_cast<Eigen::Index>(pd.gamma_grid.size()));
    for (std::size_t i = 0; i < pd.j1_grid.size(); ++i)
      for (std::size_t j = 0; j < pd.gamma_grid.size(); ++j)
        hm.z(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            regime_index(pd.labels[i][j].pt_regime);
    hm.categorical = true;
    hm.category_names = {"Unbroken", "Edge-broken", "Partially broken", "Fully broken"};
    hm.overlays.push_back({"γe", pd.j1_grid, pd.edge_ep_curve, "#ffffff"});
    hm.overlays.push_back({"|J₁-J₂|", pd.j1_grid, pd.bulk_lower_curve, "#111111"});
    hm.overlays.push_back({"J₁+J₂", pd.j1_grid, pd.bulk_upper_curve, "#555555"});
    svg::write_heatmap(out.path(prefix + "phase_diagram.svg"), hm);
  }
}

// ---------------------------------------------------------------------------
// charging traces
// ---------------------------------------------------------------------------

void write_trace_csv(const ChargingTrace& trace, const std::string& path) {
  csv::Table table;
  table.header = {"t", "delta_e"};
  for (int j = 1; j <= trace.params.dim(); ++j)
    table.header.push_back("p_" + std::to_string(j));
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    std::vector<std::string> row;
    row.push_back(format_double(trace.times[i]));
    row.push_back(format_double(trace.delta_e[i]));
    for (int j = 0; j < trace.params.dim(); ++j)
      row.push_back(format_double(trace.populations(static_cast<Eigen::Index>(i), j)));
    table.rows.push_back(std::move(row));
  }
  csv::write(path, table);
}

svg::Panel trace_panel(const ChargingTrace& trace, const std::string& title) {
  svg::Panel panel{title, "t·J₂", "ΔE", {}};
  panel.series.push_back({"ΔE", trace.times, trace.delta_e, ""});
  return panel;
}

svg::Panel population_panel(const ChargingTrace& trace, const std::string& title) {
  svg::Panel panel{title, "t·J₂", "Pⱼ", {}};
  const int dim = trace.params.dim();
  const int mid_lo = dim / 2 - 1;  // band-center pair
  for (int j : {0, mid_lo, mid_lo + 1, dim - 1}) {
    svg::Series s;
    s.label = "P" + std::to_string(j + 1);
    s.x = trace.times;
    for (std::size_t i = 0; i < trace.times.size(); ++i)
      s.y.push_back(trace.populations(static_cast<Eigen::Index>(i), j));
    panel.series.push_back(std::move(s));
  }
  return panel;
}

// ---------------------------------------------------------------------------
// metric sweeps
// ---------------------------------------------------------------------------

void emit_metric_map(const MetricMap& map, const OutputOptions& out, const std::string& prefix) {
  if (out.wants("csv", "csv,svg")) {
    csv::Table table;
    table.header = {"j1", "gamma", "first_peak", "log10_t95"};
    for (std::size_t i = 0; i < map.j1_grid.size(); ++i)
      for (std::size_t j = 0; j < map.gamma_grid.size(); ++j)
        table.rows.push_back(
            {format_double(map.j1_grid[i]), format_double(map.gamma_grid[j]),
             format_double(map.first_peak_grid(static_cast<Eigen::Index>(i),
                                               static_cast<Eigen::Index>(j))),
             format_double(map.log10_t95_grid(static_cast<Eigen::Index>(i),
                                              static_cast<Eigen::Index>(j)))});
    csv::write(out.path(prefix + "metrics.csv"), table);
  }
  if (out.wants("svg", "csv,svg")) {
    svg::Heatmap peak{"First energy peak", "J₁/J₂", "γ/J₂", map.j1_grid, map.gamma_grid,
                      map.first_peak_grid, {}, false, {}};
    svg::write_heatmap(out.path(prefix + "first_peak.svg"), peak);
    svg::Heatmap t95{"log₁₀ t₀.₉₅", "J₁/J₂", "γ/J₂", map.j1_grid, map.gamma_grid,
                     map.log10_t95_grid, {}, false, {}};
    svg::write_heatmap(out.path(prefix + "t95.svg"), t95);
  }
}

void emit_scaling(const std::vector<ScalingPoint>& points, const OutputOptions& out,
                  const std::string& prefix) {
  if (out.wants("csv", "csv,svg")) {
    csv::Table table;
    table.header = {"n", "gamma", "phase", "first_peak", "log10_t95"};
    for (const auto& pt : points)
      table.rows.push_back({std::to_string(pt.n_cells), format_double(pt.gamma),
                            pt.topological ? "topological" : "trivial",
                            format_double(pt.metrics.first_peak),
                            format_double(std::log10(pt.metrics.saturation_time))});
    csv::write(out.path(prefix + "scaling.csv"), table);
  }
  if (out.wants("svg", "csv,svg")) {
    svg::Panel peak{"First peak vs system size", "N", "ΔE¹ₚₑₐₖ", {}};
    svg::Panel t95{"Saturation time vs system size", "N", "log₁₀ t₀.₉₅", {}};
    std::set<std::pair<double, bool>> keys;
    for (const auto& pt : points) keys.insert({pt.gamma, pt.topological});
    for (const auto& [gamma, topological] : keys) {
      svg::Series sp, st;
      sp.label = st.label =
          (topological ? std::string("topo γ=") : std::string("triv γ=")) + format_double(gamma);
      for (const auto& pt : points) {
        if (pt.gamma != gamma || pt.topological != topological) continue;
        sp.x.push_back(pt.n_cells);
        sp.y.push_back(pt.metrics.first_peak);
        st.x.push_back(pt.n_cells);
        st.y.push_back(std::log10(pt.metrics.saturation_time));
      }
      peak.series.push_back(std::move(sp));
      t95.series.push_back(std::move(st));
    }
    svg::write_line_plot(out.path(prefix + "scaling.svg"), {peak, t95});
  }
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

int emit_verify(const LatticeParams& p, const OutputOptions& out) {
  const std::vector<CheckResult> checks = run_suite(p);
  nlohmann::json doc;
  doc["params"] = {{"n", p.n_cells}, {"j1", p.j1}, {"j2", p.j2}, {"gamma", p.gamma}};
  doc["checks"] = nlohmann::json::array();
  bool all_pass = true;
  for (const auto& c : checks) {
    doc["checks"].push_back(
        {{"name", c.name}, {"bound", c.bound}, {"observed", c.observed}, {"pass", c.pass}});
    all_pass = all_pass && c.pass;
  }
  doc["all_pass"] = all_pass;
  std::ofstream file(out.path("verify.json"), std::ios::binary);
  file << doc.dump(2) << '\n';
  for (const auto& c : checks)
    std::cout << (c.pass ? "pass  " : "FAIL  ") << c.name << "  observed=" << c.observed
              << " bound=" << c.bound << '\n';
  return all_pass ? 0 : 1;
}

std::string gamma_tag(double gamma) {
  std::string tag = format_double(gamma);
  std::replace(tag.begin(), tag.end(), '.', 'p');
  return tag;
}

}  // namespace

int run(std::vector<std::string> args) {
  CLI::App app{"PT-symmetric dimerized-chain quantum battery toolkit"};
  app.require_subcommand(1);

  LatticeParams params;
  OutputOptions out;
  double t_max = 0.0;
  double dt = kDefaultDt;
  double gamma_min = 0.0, gamma_max = 3.0;
  double j1_min = 0.0, j1_max = 2.0;
  int steps = 201, j1_steps = 0, gamma_steps = 0;
  int sweep_steps = 21, fig2_steps = 301, fig4_j1_steps = 41, fig4_gamma_steps = 31;
  std::string n_list_str = "4,6,8,10";
  std::string gamma_list_str = "0.45,1.0,2.8";
  double j1_topo = 0.5, j1_triv = 1.5;

  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues vs gain-loss strength");
  add_lattice_options(spectrum, &params, false);
  add_output_options(spectrum, &out);
  spectrum->add_option("--gamma-min", gamma_min)->capture_default_str();
  spectrum->add_option("--gamma-max", gamma_max)->capture_default_str();
  spectrum->add_option("--steps", steps, "Grid points")->capture_default_str();

  auto* phase = app.add_subcommand("phase-diagram", "Regime labels over the gamma-J1 plane");
  add_lattice_options(phase, &params, false);
  add_output_options(phase, &out);
  phase->add_option("--j1-min", j1_min)->capture_default_str();
  phase->add_option("--j1-max", j1_max)->capture_default_str();
  phase->add_option("--gamma-min", gamma_min)->capture_default_str();
  phase->add_option("--gamma-max", gamma_max)->capture_default_str();
  phase->add_option("--steps", steps, "Grid points on both axes")->capture_default_str();
  phase->add_option("--j1-steps", j1_steps, "Override J1 grid points");
  phase->add_option("--gamma-steps", gamma_steps, "Override gamma grid points");

  auto* charge = app.add_subcommand("charge", "Charging trace at one parameter point");
  add_lattice_options(charge, &params);
  add_output_options(charge, &out);
  charge->add_option("--tmax", t_max, "Trace length (0 = regime default)")->capture_default_str();
  charge->add_option("--dt", dt)->capture_default_str();

  auto* pops = app.add_subcommand("populations", "Eigenbasis population dynamics");
  add_lattice_options(pops, &params);
  add_output_options(pops, &out);
  pops->add_option("--tmax", t_max, "Trace length (0 = regime default)")->capture_default_str();
  pops->add_option("--dt", dt)->capture_default_str();

  auto* sweep = app.add_subcommand("metrics-sweep", "First peak and t95 over the plane");
  add_lattice_options(sweep, &params, false);
  add_output_options(sweep, &out);
  sweep->add_option("--j1-min", j1_min)->capture_default_str();
  sweep->add_option("--j1-max", j1_max)->capture_default_str();
  sweep->add_option("--gamma-min", gamma_min)->capture_default_str();
  sweep->add_option("--gamma-max", gamma_max)->capture_default_str();
  sweep->add_option("--steps", sweep_steps, "Grid points on both axes")->capture_default_str();
  sweep->add_option("--j1-steps", j1_steps, "Override J1 grid points");
  sweep->add_option("--gamma-steps", gamma_steps, "Override gamma grid points");
  sweep->add_option("--dt", dt)->capture_default_str();

  auto* scaling = app.add_subcommand("scaling", "Metrics vs system size");
  add_lattice_options(scaling, &params, false);
  add_output_options(scaling, &out);
  scaling->add_option("--n-list", n_list_str, "Comma-separated cell counts")
      ->capture_default_str();
  scaling->add_option("--gamma-list", gamma_list_str, "Comma-separated gamma values")
      ->capture_default_str();
  scaling->add_option("--j1-topo", j1_topo)->capture_default_str();
  scaling->add_option("--j1-triv", j1_triv)->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Run the identity-check suite");
  add_lattice_options(verify, &params);
  add_output_options(verify, &out);

  auto* fig2 = app.add_subcommand("fig2", "Preset: spectra and phase diagram");
  add_output_options(fig2, &out);
  fig2->add_option("--steps", fig2_steps, "Gamma grid points")->capture_default_str();

  auto* fig3 = app.add_subcommand("fig3", "Preset: charging traces in all regimes");
  add_output_options(fig3, &out);

  auto* fig4 = app.add_subcommand("fig4", "Preset: metric maps and size scaling");
  add_output_options(fig4, &out);
  fig4->add_option("--j1-steps", fig4_j1_steps, "J1 grid points")->capture_default_str();
  fig4->add_option("--gamma-steps", fig4_gamma_steps, "Gamma grid points")->capture_default_str();

  auto* fig5 = app.add_subcommand("fig5", "Preset: population dynamics in all regimes");
  add_output_options(fig5, &out);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const LatticeParams preset_topological{6, 0.5, 1.0, 0.0, Boundary::Open};
  const LatticeParams preset_trivial{6, 1.5, 1.0, 0.0, Boundary::Open};
  const std::vector<double> regime_gammas{0.01, 0.45, 1.0, 2.8};

  try {
    if (spectrum->parsed()) {
      emit_spectrum(params, linspace(gamma_min, gamma_max, steps), out, "spectrum");
    } else if (phase->parsed()) {
      const auto j1_grid = linspace(j1_min, j1_max, j1_steps > 0 ? j1_steps : steps);
      const auto gamma_grid = linspace(gamma_min, gamma_max, gamma_steps > 0 ? gamma_steps : steps);
      emit_phase_diagram(phase_diagram(j1_grid, gamma_grid, params), out, "");
    } else if (charge->parsed() || pops->parsed()) {
      if (t_max <= 0.0) t_max = default_t_max(params);
      const ChargingTrace trace = evolve(params, t_max, dt);
      if (out.wants("csv", "csv,svg")) write_trace_csv(trace, out.path("trace.csv"));
      if (out.wants("svg", "csv,svg")) {
        if (charge->parsed())
          svg::write_line_plot(out.path("trace.svg"), {trace_panel(trace, "Stored energy")});
        else
          svg::write_line_plot(out.path("populations.svg"),
                               {population_panel(trace, "Eigenbasis populations")});
      }
    } else if (sweep->parsed()) {
      const auto j1_grid = linspace(j1_min, j1_max, j1_steps > 0 ? j1_steps : sweep_steps);
      const auto gamma_grid =
          linspace(gamma_min, gamma_max, gamma_steps > 0 ? gamma_steps : sweep_steps);
      const MetricMap map = sweep_metrics(j1_grid, gamma_grid, params, dt);
      emit_metric_map(map, out, "");
      for (const auto& e : map.cell_errors) std::cerr << "cell error: " << e << '\n';
    } else if (scaling->parsed()) {
      std::vector<int> n_list;
      for (double v : parse_list(n_list_str)) n_list.push_back(static_cast<int>(v));
      emit_scaling(size_scaling(n_list, parse_list(gamma_list_str), j1_topo, j1_triv, params),
                   out, "");
    } else if (verify->parsed()) {
      return emit_verify(params, out);
    } else if (fig2->parsed()) {
      LatticeParams p = preset_topological;
      emit_spectrum(p, linspace(0.0, 3.0, fig2_steps), out, "fig2_spectrum_topological");
      p = preset_trivial;
      emit_spectrum(p, linspace(0.0, 3.0, fig2_steps), out, "fig2_spectrum_trivial");
      emit_phase_diagram(
          phase_diagram(linspace(0.0, 2.0, 201), linspace(0.0, 3.0, 301), preset_topological), out,
          "fig2_");
    } else if (fig3->parsed()) {
      std::vector<svg::Panel> panels;
      for (double g : regime_gammas) {
        svg::Panel panel{"γ/J₂ = " + format_double(g), "t·J₂", "ΔE", {}};
        for (const auto& base : {preset_topological, preset_trivial}) {
          LatticeParams p = base;
          p.gamma = g;
          const ChargingTrace trace = evolve(p, default_t_max(p), kDefaultDt);
          const bool topo = base.j1 < base.j2;
          if (out.wants("csv", "csv,svg"))
            write_trace_csv(trace, out.path(std::string("fig3_trace_") +
                                            (topo ? "topological" : "trivial") + "_gamma" +
                                            gamma_tag(g) + ".csv"));
          panel.series.push_back({topo ? "topological" : "trivial", trace.times, trace.delta_e,
                                  topo ? "#5b2a86" : "#c0392b"});
        }
        panels.push_back(std::move(panel));
      }
      if (out.wants("svg", "csv,svg")) svg::write_line_plot(out.path("fig3.svg"), panels);
    } else if (fig4->parsed()) {
      const MetricMap map = sweep_metrics(linspace(0.0, 2.0, fig4_j1_steps),
                                          linspace(0.0, 3.0, fig4_gamma_steps), preset_topological);
      emit_metric_map(map, out, "fig4_");
      for (const auto& e : map.cell_errors) std::cerr << "cell error: " << e << '\n';
      emit_scaling(size_scaling({4, 6, 8, 10}, {0.45, 1.0, 2.8}, 0.5, 1.5, preset_topological), out,
                   "fig4_");
    } else if (fig5->parsed()) {
      for (const auto& base : {preset_topological, preset_trivial}) {
        const bool topo = base.j1 < base.j2;
        std::vector<svg::Panel> panels;
        for (double g : regime_gammas) {
          LatticeParams p = base;
          p.gamma = g;
          const ChargingTrace trace = evolve(p, default_t_max(p), kDefaultDt);
          if (out.wants("csv", "csv,svg"))
            write_trace_csv(trace, out.path(std::string("fig5_populations_") +
                                            (topo ? "topological" : "trivial") + "_gamma" +
                                            gamma_tag(g) + ".csv"));
          panels.push_back(population_panel(trace, "γ/J₂ = " + format_double(g)));
        }
        if (out.wants("svg", "csv,svg"))
          svg::write_line_plot(
              out.path(std::string("fig5_") + (topo ? "topological" : "trivial") + ".svg"),
              panels);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace ptssh::cli
