// ktoep: spectra, edge modes and interface modes of tridiagonal k-Toeplitz
// lattice operators. Subcommands write CSV/JSON datasets (and optional SVG
// scatters) into the output directory, plus a run manifest.

#include "ktoep/csv.hpp"
#include "ktoep/json_io.hpp"
#include "ktoep/numerics.hpp"
#include "ktoep/svg.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>

namespace fs = std::filesystem;
using namespace ktoep;

namespace {

constexpr const char* kVersion = "0.1.0";

struct CommonArgs {
    std::string config_path;
    std::string preset;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    bool seed_set = false;
    int samples = 0;  // 0: per-config / default
    bool svg = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON config path");
    cmd->add_option("--preset", args.preset, "named preset (presets/<name>.json)");
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--seed", args.seed, "RNG seed override")->each([&](const std::string&) {
        args.seed_set = true;
    });
    cmd->add_option("--samples", args.samples, "curve sample count override");
    cmd->add_flag("--svg", args.svg, "also write SVG plots");
}

fs::path find_preset(const std::string& name) {
    std::vector<fs::path> candidates;
    if (const char* env = std::getenv("KTOEP_PRESETS")) candidates.push_back(fs::path(env) / (name + ".json"));
    candidates.push_back(fs::path("presets") / (name + ".json"));
#ifdef KTOEP_PRESET_DIR
    candidates.push_back(fs::path(KTOEP_PRESET_DIR) / (name + ".json"));
#endif
    for (const auto& p : candidates)
        if (fs::exists(p)) return p;
    throw std::invalid_argument("preset '" + name + "' not found (looked in ./presets and KTOEP_PRESETS)");
}

Json load_config(const CommonArgs& args) {
    std::string path = args.config_path;
    if (path.empty()) {
        if (args.preset.empty()) throw std::invalid_argument("either --config or --preset is required");
        path = find_preset(args.preset).string();
    }
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config " + path);
    Json j;
    in >> j;
    return j;
}

void write_manifest(const CommonArgs& args, const std::string& command) {
    Json m;
    m["command"] = command;
    m["config"] = args.config_path.empty() ? ("preset:" + args.preset) : args.config_path;
    m["out_dir"] = args.out_dir;
    m["seed"] = args.seed;
    m["version"] = kVersion;
    const auto now = std::chrono::system_clock::now();
    m["timestamp"] = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
    std::ofstream out(fs::path(args.out_dir) / "run_manifest.json");
    out << m.dump(2) << '\n';
}

void write_curve_csv(const fs::path& path, const SpectralCurve& curve) {
    CsvWriter csv(path.string(), "alpha,branch_index,re,im");
    for (int b = 0; b < curve.branch_count(); ++b)
        for (int j = 0; j < curve.samples(); ++j) {
            csv.field(curve.alpha(j))
                .field(b)
                .field(curve.branches(b, j).real())
                .field(curve.branches(b, j).imag());
            csv.end_row();
        }
}

void write_points_csv(const fs::path& path, const CVector& values) {
    CsvWriter csv(path.string(), "index,re,im");
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        csv.field(static_cast<int>(i)).field(values(i).real()).field(values(i).imag());
        csv.end_row();
    }
}

// ---------------------------------------------------------------------------
// spectrum: essential spectrum + edge reports per labeled cell; optional
// homotopy trace when the config carries a "homotopy" block.
// ---------------------------------------------------------------------------

UnitCell vary_cell(const UnitCell& base, const std::string& which, int index1, Complex direction,
                   bool symmetric, double t) {
    CVector a = base.a, b = base.b, c = base.c;
    const Eigen::Index i = index1 - 1;
    if (which == "a")
        a(i) += direction * t;
    else if (which == "b") {
        b(i) += direction * t;
        if (symmetric) c(i) += direction * t;
    } else if (which == "c")
        c(i) += direction * t;
    else
        throw std::invalid_argument("homotopy: vary must be one of a, b, c");
    return make_unit_cell(a, b, c);
}

int cmd_spectrum(const CommonArgs& args) {
    const Json cfg = load_config(args);
    const int samples = args.samples > 0 ? args.samples : cfg.value("samples", 512);

    struct Panel {
        std::string label;
        UnitCell cell;
    };
    std::vector<Panel> panels;
    if (cfg.contains("cells")) {
        for (const auto& e : cfg.at("cells"))
            panels.push_back({e.value("label", std::to_string(panels.size())), unit_cell_from_json(e)});
    } else {
        panels.push_back({"", unit_cell_from_json(cfg.contains("cell") ? cfg.at("cell") : cfg)});
    }

    for (const auto& [label, cell] : panels) {
        const std::string prefix = label.empty() ? "" : label + "_";
        const SpectralCurve curve = essential_spectrum(cell, samples);
        write_curve_csv(fs::path(args.out_dir) / (prefix + "essential_spectrum.csv"), curve);
        Json reports = Json::array();
        if (cell.k() >= 2)
            for (const auto& r : edge_spectrum(cell)) reports.push_back(to_json(r));
        std::ofstream(fs::path(args.out_dir) / (prefix + "edge_report.json")) << reports.dump(2) << '\n';
        if (args.svg) {
            SvgPlot plot;
            const auto pts = curve.points();
            plot.scatter(pts, "#1f77b4", 1.5);
            const auto cand = edge_candidates(cell);
            plot.scatter(cand, "#d62728", 4.0);
            plot.write((fs::path(args.out_dir) / (prefix + "spectrum.svg")).string());
        }
    }

    if (cfg.contains("homotopy")) {
        const Json& h = cfg.at("homotopy");
        const UnitCell base = panels.front().cell;
        const std::string which = h.value("vary", "b");
        const int index1 = h.value("index", base.k());
        const Complex dir = h.contains("direction") ? complex_from_json(h.at("direction")) : Complex(1.0);
        const bool symmetric = h.value("symmetric", true);
        const double t0 = h.at("from").get<double>(), t1 = h.at("to").get<double>();
        const int steps = h.value("steps", 51);
        RVector grid(steps);
        for (int i = 0; i < steps; ++i)
            grid(i) = t0 + (t1 - t0) * (steps == 1 ? 0.0 : static_cast<double>(i) / (steps - 1));
        const HomotopyTrace trace = homotopy_sweep(
            [&](double t) { return vary_cell(base, which, index1, dir, symmetric, t); }, grid, samples);
        CsvWriter csv((fs::path(args.out_dir) / "homotopy.csv").string(),
                      "t,path_index,re,im,abs_z,gap_margin");
        for (int p = 0; p < trace.paths.rows(); ++p)
            for (Eigen::Index j = 0; j < trace.t.size(); ++j) {
                csv.field(trace.t(j))
                    .field(p)
                    .field(trace.paths(p, j).real())
                    .field(trace.paths(p, j).imag())
                    .field(trace.abs_z(p, j))
                    .field(trace.gap_margin(p, j));
                csv.end_row();
            }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// openlimit: Gamma union G0 against growing truncations.
// ---------------------------------------------------------------------------

int cmd_openlimit(const CommonArgs& args) {
    const Json cfg = load_config(args);
    const UnitCell cell = unit_cell_from_json(cfg.contains("cell") ? cfg.at("cell") : cfg);
    const int samples = args.samples > 0 ? args.samples : cfg.value("samples", 1024);
    std::vector<int> n_list = cfg.value("n_list", std::vector<int>{40, 80, 160});

    const OpenLimitResult limit = open_limit(cell, samples);
    write_curve_csv(fs::path(args.out_dir) / "gamma.csv", limit.gamma);
    Json g0 = Json::array();
    for (const Complex p : limit.g0_points) g0.push_back(to_json(p));
    std::ofstream(fs::path(args.out_dir) / "g0.json") << g0.dump(2) << '\n';

    CsvWriter haus((fs::path(args.out_dir) / "hausdorff.csv").string(), "n,distance");
    SvgPlot plot;
    for (const int n : n_list) {
        if (n % cell.k() != 0) throw std::invalid_argument("openlimit: n must be a multiple of k");
        const CVector vals = eigs_tridiagonal(truncate(cell, n / cell.k()), false).values;
        write_points_csv(fs::path(args.out_dir) / ("truncation_" + std::to_string(n) + ".csv"), vals);
        const std::vector<Complex> pts(vals.begin(), vals.end());
        haus.field(n).field(directed_hausdorff(pts, limit.gamma, limit.g0_points));
        haus.end_row();
        if (args.svg && n == n_list.back()) plot.scatter(pts, "#2ca02c", 2.5);
    }
    if (args.svg) {
        plot.scatter(limit.gamma.points(), "#1f77b4", 1.0);
        plot.scatter(limit.g0_points, "#d62728", 4.0);
        plot.write((fs::path(args.out_dir) / "openlimit.svg").string());
    }
    return 0;
}

// ---------------------------------------------------------------------------
// interface: lattice InterfaceSpec or resonator chain; spectrum, modes,
// F diagnostics, optional robustness sweeps.
// ---------------------------------------------------------------------------

int cmd_interface(const CommonArgs& args) {
    const Json cfg = load_config(args);
    std::optional<ResonatorChain> chain;
    InterfaceSpec spec;
    if (cfg.contains("chain")) {
        chain = resonator_chain_from_json(cfg.at("chain"));
        spec = interface_spec(*chain);
    } else {
        spec = interface_spec_from_json(cfg.contains("interface") ? cfg.at("interface") : cfg);
    }
    const int m = cfg.value("m", chain ? chain->m : 50);

    const TruncationSpectrum ts = interface_spectrum(spec, m);
    write_points_csv(fs::path(args.out_dir) / "spectrum.csv", ts.values);

    if (chain) {
        const ResonanceSet rs = resonances(*chain);
        CsvWriter csv((fs::path(args.out_dir) / "resonances.csv").string(),
                      "index,re_lambda,im_lambda,re_omega,im_omega");
        for (Eigen::Index i = 0; i < rs.lambda.size(); ++i) {
            csv.field(static_cast<int>(i))
                .field(rs.lambda(i).real())
                .field(rs.lambda(i).imag())
                .field(rs.omega(i).real())
                .field(rs.omega(i).imag());
            csv.end_row();
        }
    }

    SearchRegion region = default_search_region(spec.cell);
    if (cfg.contains("search_region")) {
        const Json& r = cfg.at("search_region");
        region = {r.at("re")[0], r.at("re")[1], r.at("im")[0], r.at("im")[1]};
    }

    Json modes = Json::array();
    std::vector<InterfaceMode> found;
    if (spec.kind == InterfaceKind::shared_site) {
        try {
            found.push_back(edge_induced_mode(spec, m));
        } catch (const std::invalid_argument&) {
            // bulk has no edge mode: nothing edge-induced to report
        }
        if (spec.cell.symmetric(1e-10)) {
            RootSearchOptions opt;
            opt.verify_m = m;
            for (auto& mode : matched_interface_roots(spec, region, opt)) found.push_back(std::move(mode));
        }
    } else {
        RootSearchOptions opt;
        opt.verify_m = m;
        for (auto& mode : common_coupling_match(spec, region, opt)) found.push_back(std::move(mode));
    }
    int mode_index = 0;
    for (const auto& mode : found) {
        modes.push_back(to_json(mode));
        CsvWriter csv((fs::path(args.out_dir) / ("mode_" + std::to_string(mode_index++) + ".csv")).string(),
                      "site,re,im,abs");
        const Eigen::Index n = mode.vector.size();
        for (Eigen::Index i = 0; i < n; ++i) {
            const long long site = i - (n / 2);  // interface-centered indexing
            csv.field(site).field(mode.vector(i).real()).field(mode.vector(i).imag())
                .field(std::abs(mode.vector(i)));
            csv.end_row();
        }
    }
    std::ofstream(fs::path(args.out_dir) / "modes.json") << modes.dump(2) << '\n';

    // F diagnostics on a region grid (shared-site symmetric cells only)
    if (spec.kind == InterfaceKind::shared_site && spec.cell.symmetric(1e-10)) {
        const int fs_n = cfg.value("f_scan_samples", 41);
        CsvWriter csv((fs::path(args.out_dir) / "f_scan.csv").string(), "re_lambda,im_lambda,re_f,im_f");
        for (int i = 0; i < fs_n; ++i)
            for (int j = 0; j < fs_n; ++j) {
                const Complex lam(region.re_min + (region.re_max - region.re_min) * i / (fs_n - 1.0),
                                  region.im_min + (region.im_max - region.im_min) * j / (fs_n - 1.0));
                Complex f;
                try {
                    f = interface_f(spec, lam);
                } catch (const NumericalError&) {
                    continue;  // on Gamma or edge-type pole
                }
                csv.field(lam.real()).field(lam.imag()).field(f.real()).field(f.imag());
                csv.end_row();
            }
    }

    if (cfg.contains("sweep")) {
        if (!chain) throw std::invalid_argument("interface: sweeps require a resonator chain config");
        const Json& sw = cfg.at("sweep");
        CsvWriter csv((fs::path(args.out_dir) / "sweep.csv").string(), "param_value,trial,eig_index,re,im");
        std::vector<SweepRow> rows;
        if (sw.contains("s_int")) {
            const auto vals = sw.at("s_int").get<std::vector<double>>();
            rows = robustness_sweep_interface(*chain, vals);
        } else {
            const auto levels = sw.at("noise_levels").get<std::vector<double>>();
            const int trials = sw.value("trials", 10);
            rows = robustness_sweep_noise(*chain, levels, trials, args.seed);
        }
        for (const auto& row : rows)
            for (Eigen::Index i = 0; i < row.values.size(); ++i) {
                csv.field(row.param)
                    .field(row.trial)
                    .field(static_cast<int>(i))
                    .field(row.values(i).real())
                    .field(row.values(i).imag());
                csv.end_row();
            }
    }

    if (args.svg) {
        SvgPlot plot;
        const std::vector<Complex> pts(ts.values.begin(), ts.values.end());
        plot.scatter(pts, "#2ca02c", 2.5);
        plot.scatter(essential_spectrum(spec.cell, 1024).points(), "#1f77b4", 1.0);
        plot.write((fs::path(args.out_dir) / "interface.svg").string());
        int i = 0;
        for (const auto& mode : found) {
            SvgPlot mv;
            std::vector<double> x, y;
            for (Eigen::Index j = 0; j < mode.vector.size(); ++j) {
                x.push_back(static_cast<double>(j - mode.vector.size() / 2));
                y.push_back(std::abs(mode.vector(j)));
            }
            mv.line(x, y, "#d62728");
            mv.write((fs::path(args.out_dir) / ("mode_" + std::to_string(i++) + ".svg")).string());
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// disorder: chain spectra, zero mode, decay-rate statistics.
// ---------------------------------------------------------------------------

int cmd_disorder(const CommonArgs& args) {
    const Json cfg = load_config(args);
    DisorderConfig dc = disorder_config_from_json(cfg);
    if (args.seed_set) dc.seed = args.seed;

    const TridiagonalC chain0 = build_disordered_chain(dc, 0);
    write_points_csv(fs::path(args.out_dir) / "spectrum.csv", eigs_tridiagonal(chain0, false).values);

    const ZeroMode zm = zero_mode(chain0);
    {
        CsvWriter csv((fs::path(args.out_dir) / "zero_mode.csv").string(), "site,re,im,abs");
        for (Eigen::Index i = 0; i < zm.vector.size(); ++i) {
            const long long site = i - zm.vector.size() / 2;
            csv.field(site).field(zm.vector(i).real()).field(zm.vector(i).imag())
                .field(std::abs(zm.vector(i)));
            csv.end_row();
        }
    }

    const DecayStats stats = decay_rate_stats(dc);
    {
        CsvWriter csv((fs::path(args.out_dir) / "stats.csv").string(), "trial,fitted_rate");
        for (size_t t = 0; t < stats.per_trial.size(); ++t) {
            csv.field(static_cast<int>(t)).field(stats.per_trial[t]);
            csv.end_row();
        }
    }
    Json summary;
    summary["mean"] = stats.mean;
    summary["std"] = stats.stddev;
    summary["theoretical"] = stats.theoretical;
    summary["trials"] = dc.trials;
    summary["lambda0_abs"] = std::abs(zm.lambda0);
    std::ofstream(fs::path(args.out_dir) / "summary.json") << summary.dump(2) << '\n';

    if (args.svg) {
        SvgPlot plot;
        const CVector vals = eigs_tridiagonal(chain0, false).values;
        const std::vector<Complex> pts(vals.begin(), vals.end());
        plot.scatter(pts, "#1f77b4", 2.0);
        plot.write((fs::path(args.out_dir) / "spectrum.svg").string());
    }
    return 0;
}

// ---------------------------------------------------------------------------
// fdm: bands, sigma(B0) convergence, impedance curve.
// ---------------------------------------------------------------------------

int cmd_fdm(const CommonArgs& args) {
    const Json cfg = load_config(args);
    const FdmConfig fc = fdm_config_from_json(cfg.contains("fdm") ? cfg.at("fdm") : cfg);
    const std::vector<int> k_list = cfg.value("k_list", std::vector<int>{10, 20, 40, 80});
    const int n_imp = cfg.value("impedance_points", 41);

    {
        CsvWriter csv((fs::path(args.out_dir) / "bands.csv").string(), "k,band_index,lo,hi");
        for (const int k : k_list) {
            FdmConfig c = fc;
            c.k = k;
            const auto bands = band_intervals(assemble_fdm_cell(c));
            for (size_t b = 0; b < bands.size(); ++b) {
                csv.field(k).field(static_cast<int>(b)).field(bands[b].first).field(bands[b].second);
                csv.end_row();
            }
        }
    }
    {
        CsvWriter csv((fs::path(args.out_dir) / "b0_convergence.csv").string(),
                      "k,b0_index,re,distance_to_band");
        for (const auto& row : b0_convergence(fc, k_list)) {
            csv.field(row.k).field(row.index).field(row.value).field(row.distance);
            csv.end_row();
        }
    }
    {
        const auto gap = first_gap(fdm_interface_cell(fc));
        const double pad = 0.02 * (gap.second - gap.first);
        std::vector<double> grid(static_cast<size_t>(n_imp));
        for (int i = 0; i < n_imp; ++i)
            grid[static_cast<size_t>(i)] =
                gap.first + pad + (gap.second - gap.first - 2 * pad) * i / (n_imp - 1.0);
        CsvWriter csv((fs::path(args.out_dir) / "impedance.csv").string(), "omega2,reF,imF");
        for (const auto& row : impedance_curve(fc, grid)) {
            csv.field(row.omega2).field(row.re_f).field(row.im_f);
            csv.end_row();
        }
        if (args.svg) {
            SvgPlot plot;
            std::vector<double> xs, ys;
            for (const auto& row : impedance_curve(fc, grid)) {
                xs.push_back(row.omega2);
                ys.push_back(row.re_f);
            }
            plot.line(xs, ys, "#1f77b4");
            plot.write((fs::path(args.out_dir) / "impedance.svg").string());
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectra and interface modes of tridiagonal k-Toeplitz lattice operators"};
    app.require_subcommand(1);

    CommonArgs args;
    int (*runner)(const CommonArgs&) = nullptr;
    for (const auto& [name, desc, fn] :
         std::initializer_list<std::tuple<const char*, const char*, int (*)(const CommonArgs&)>>{
             {"spectrum", "essential spectrum, edge reports, homotopy traces", cmd_spectrum},
             {"openlimit", "truncation spectra against Gamma union G0", cmd_openlimit},
             {"interface", "interface operators, modes, F diagnostics, sweeps", cmd_interface},
             {"disorder", "disordered SSH interface chains", cmd_disorder},
             {"fdm", "finite-difference continuum-limit study", cmd_fdm}}) {
        CLI::App* cmd = app.add_subcommand(name, desc);
        add_common(cmd, args);
        cmd->callback([&runner, fn]() { runner = fn; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        std::filesystem::create_directories(args.out_dir);
        const int rc = runner(args);
        write_manifest(args, app.get_subcommands().front()->get_name());
        return rc;
    } catch (const ConsistencyError& e) {
        std::cerr << "consistency violation: " << e.what() << '\n';
        return 4;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }
}
