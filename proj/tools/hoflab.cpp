// hoflab — command-line laboratory for finite Harper-Hofstadter lattices
//
// Subcommands cover butterfly sweeps, ground-state maps, fidelity traces,
// level-crossing detection, momentum analysis, the microscopic-model
// validator, and the first-crossing size law.  Outputs are CSV or JSON with
// 12 significant digits; identical invocations produce byte-identical files
// regardless of --jobs.

#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hof/butterfly.hpp"
#include "hof/ground_state.hpp"
#include "hof/io.hpp"
#include "hof/micro_model.hpp"
#include "hof/momentum.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;    // invalid flags or parameter values
constexpr int kExitNumeric = 3;  // eigensolver or reduction failure
constexpr int kExitIo = 4;       // unwritable output path

constexpr const char* kExitCodeHelp =
    "Exit codes:\n"
    "  0  success\n"
    "  2  invalid command line or parameter values\n"
    "  3  numerical failure (eigensolver non-convergence, resonant reduction)\n"
    "  4  output path not writable\n";

struct LatticeArgs {
    std::size_t size = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::string gauge = "symmetric";

    void attach(CLI::App* cmd, bool need_size = true) {
        auto* s = cmd->add_option("--size", size, "square lattice size L (rows = cols = L)");
        if (need_size) s->required();
        cmd->add_option("--rows", rows, "lattice rows (overrides --size)");
        cmd->add_option("--cols", cols, "lattice columns (overrides --size)");
        cmd->add_option("--gauge", gauge, "gauge choice: symmetric | landau")
            ->check(CLI::IsMember({"symmetric", "landau"}));
    }

    hof::LatticeSpec spec() const {
        hof::LatticeSpec s;
        s.rows = rows ? rows : size;
        s.cols = cols ? cols : size;
        s.validate();
        return s;
    }
    hof::GaugeKind kind() const {
        return gauge == "landau" ? hof::GaugeKind::Landau : hof::GaugeKind::Symmetric;
    }
};

// Write through a stringstream so a failed run never leaves a partial file.
void emit(const std::string& path, const std::string& payload) {
    if (path.empty() || path == "-") {
        std::cout << payload;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open output path: " + path);
    out << payload;
    if (!out) throw std::ios_base::failure("write failed: " + path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hoflab — finite Harper-Hofstadter lattice laboratory"};
    app.require_subcommand(1);
    app.footer(kExitCodeHelp);

    // ---- butterfly ----
    LatticeArgs bf_lat;
    std::size_t bf_steps = 201;
    double bf_min = 0.0;
    double bf_max = 1.0;
    unsigned bf_jobs = 0;
    std::string bf_out = "-";
    auto* bf = app.add_subcommand("butterfly", "full spectrum over a flux grid (CSV)");
    bf_lat.attach(bf);
    bf->add_option("--steps", bf_steps, "grid points, endpoints included")
        ->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
    bf->add_option("--alpha-min", bf_min, "lower end of the flux grid");
    bf->add_option("--alpha-max", bf_max, "upper end of the flux grid");
    bf->add_option("--jobs,-j", bf_jobs, "worker threads (0 = all cores)");
    bf->add_option("--out,-o", bf_out, "output path ('-' for stdout)");

    // ---- ground / density ----
    LatticeArgs gs_lat;
    double gs_alpha = 0.0;
    std::string gs_out = "-";
    auto* gs = app.add_subcommand("ground", "ground-state amplitudes at one flux (CSV)");
    gs_lat.attach(gs);
    gs->add_option("--alpha", gs_alpha, "flux quanta per plaquette")->required();
    gs->add_option("--out,-o", gs_out, "output path ('-' for stdout)");

    LatticeArgs dn_lat;
    double dn_alpha = 0.0;
    std::string dn_out = "-";
    auto* dn = app.add_subcommand("density", "ground-state site density at one flux (CSV)");
    dn_lat.attach(dn);
    dn->add_option("--alpha", dn_alpha, "flux quanta per plaquette")->required();
    dn->add_option("--out,-o", dn_out, "output path ('-' for stdout)");

    // ---- fidelity ----
    LatticeArgs fd_lat;
    double fd_min = 0.0;
    double fd_max = 0.6;
    double fd_step = 1e-3;
    unsigned fd_jobs = 0;
    std::string fd_out = "-";
    auto* fd = app.add_subcommand("fidelity", "ground-state fidelity trace F(alpha) (CSV)");
    fd_lat.attach(fd);
    fd->add_option("--alpha-min", fd_min, "grid start")->required();
    fd->add_option("--alpha-max", fd_max, "grid end")->required();
    fd->add_option("--step", fd_step, "grid spacing and fidelity step delta");
    fd->add_option("--jobs,-j", fd_jobs, "worker threads (0 = all cores)");
    fd->add_option("--out,-o", fd_out, "output path ('-' for stdout)");

    // ---- crossings ----
    LatticeArgs cr_lat;
    double cr_min = 0.0;
    double cr_max = 0.6;
    double cr_step = 1e-3;
    double cr_threshold = 0.5;
    bool cr_no_refine = false;
    unsigned cr_jobs = 0;
    std::string cr_out = "-";
    auto* cr = app.add_subcommand("crossings", "level-crossing report from a fidelity scan (JSON)");
    cr_lat.attach(cr);
    cr->add_option("--alpha-min", cr_min, "scan start");
    cr->add_option("--alpha-max", cr_max, "scan end");
    cr->add_option("--step", cr_step, "fidelity grid step");
    cr->add_option("--threshold", cr_threshold, "fidelity dip threshold in (0,1)");
    cr->add_flag("--no-refine", cr_no_refine, "skip bisection refinement of brackets");
    cr->add_option("--jobs,-j", cr_jobs, "worker threads (0 = all cores)");
    cr->add_option("--out,-o", cr_out, "output path ('-' for stdout)");

    // ---- momentum ----
    LatticeArgs mm_lat;
    double mm_alpha = 0.0;
    std::string mm_source = "wavefunction";
    std::size_t mm_peaks = 0;
    std::string mm_out = "-";
    std::string mm_peaks_out;
    auto* mm = app.add_subcommand("momentum", "sine-basis momentum map of the ground state (CSV)");
    mm_lat.attach(mm);
    mm->add_option("--alpha", mm_alpha, "flux quanta per plaquette")->required();
    mm->add_option("--source", mm_source, "transform source: wavefunction | density")
        ->check(CLI::IsMember({"wavefunction", "density"}));
    mm->add_option("--peaks", mm_peaks, "also locate this many top peaks (0 = skip)");
    mm->add_option("--out,-o", mm_out, "grid output path ('-' for stdout)");
    mm->add_option("--peaks-out", mm_peaks_out, "peak list output path (default: stdout)");

    // ---- validate-effective ----
    std::string ve_preset;
    double ve_g = 0.05;
    double ve_t = 0.05;
    double ve_delta = 1.0;
    std::vector<double> ve_theta;
    std::size_t ve_sites = 2;
    std::size_t ve_cutoff = 1;
    std::string ve_method = "schur";
    std::string ve_out = "-";
    auto* ve = app.add_subcommand(
        "validate-effective",
        "measure the effective hopping of the microscopic chain against T(g/2delta)^2 (JSON)");
    ve->add_option("--preset", ve_preset,
                   "named parameter point: 'reference' (alias 'paper') = "
                   "g/2pi=8 MHz, T/2pi=4 MHz, delta/2pi=40 MHz")
        ->check(CLI::IsMember({"reference", "paper"}));
    ve->add_option("--g", ve_g, "spin-photon coupling g");
    ve->add_option("--tunneling", ve_t, "photon tunneling T");
    ve->add_option("--delta", ve_delta, "photon detuning delta (> 0)");
    ve->add_option("--theta", ve_theta, "per-site drive phases (two or three values)");
    ve->add_option("--sites", ve_sites, "chain length (2 or 3)");
    ve->add_option("--cutoff", ve_cutoff, "photon cutoff per mode (>= 1)");
    ve->add_option("--method", ve_method, "measurement route: schur | dynamics")
        ->check(CLI::IsMember({"schur", "dynamics"}));
    ve->add_option("--out,-o", ve_out, "output path ('-' for stdout)");

    // ---- fit-alpha0 ----
    std::vector<std::size_t> fa_sizes{5, 6, 7, 8, 9, 10};
    std::string fa_gauge = "symmetric";
    unsigned fa_jobs = 0;
    std::string fa_out = "-";
    auto* fa = app.add_subcommand("fit-alpha0",
                                  "first level crossing vs the 2/(L+1) law per size (CSV)");
    fa->add_option("--sizes", fa_sizes, "lattice sizes to scan (each >= 5)");
    fa->add_option("--gauge", fa_gauge, "gauge choice: symmetric | landau")
        ->check(CLI::IsMember({"symmetric", "landau"}));
    fa->add_option("--jobs,-j", fa_jobs, "worker threads (0 = all cores)");
    fa->add_option("--out,-o", fa_out, "output path ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "hoflab: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        std::ostringstream payload;
        std::string out_path = "-";

        if (bf->parsed()) {
            const auto spectrum =
                hof::butterfly_scan(bf_lat.spec(), bf_lat.kind(), bf_min, bf_max, bf_steps, bf_jobs);
            hof::write_butterfly_csv(payload, spectrum);
            out_path = bf_out;
        } else if (gs->parsed()) {
            const auto rec = hof::ground_state(gs_lat.spec(), {0.0, gs_lat.kind()}, gs_alpha);
            hof::write_ground_csv(payload, rec);
            out_path = gs_out;
        } else if (dn->parsed()) {
            const auto rec = hof::ground_state(dn_lat.spec(), {0.0, dn_lat.kind()}, dn_alpha);
            hof::write_density_csv(payload, rec);
            out_path = dn_out;
        } else if (fd->parsed()) {
            const auto trace =
                hof::fidelity_trace(fd_lat.spec(), {0.0, fd_lat.kind()}, fd_min, fd_max, fd_step, fd_jobs);
            hof::write_fidelity_csv(payload, trace);
            out_path = fd_out;
        } else if (cr->parsed()) {
            const hof::LatticeSpec spec = cr_lat.spec();
            const hof::GaugeConfig cfg{0.0, cr_lat.kind()};
            if (!(cr_threshold > 0.0 && cr_threshold < 1.0)) {
                throw std::invalid_argument("crossings: threshold must lie in (0, 1)");
            }
            const auto trace = hof::fidelity_trace(spec, cfg, cr_min, cr_max, cr_step, cr_jobs);
            const auto report =
                hof::detect_crossings(trace, spec, cfg, cr_threshold, !cr_no_refine);
            payload << hof::crossing_report_json(report, spec).dump(2) << '\n';
            out_path = cr_out;
        } else if (mm->parsed()) {
            const auto rec = hof::ground_state(mm_lat.spec(), {0.0, mm_lat.kind()}, mm_alpha);
            const auto source = mm_source == "density" ? hof::MomentumSource::Density
                                                       : hof::MomentumSource::Wavefunction;
            const auto map = hof::sine_transform_2d(rec, source);
            hof::write_momentum_csv(payload, map);
            emit(mm_out, payload.str());
            if (mm_peaks > 0) {
                std::ostringstream ppay;
                hof::write_peaks_csv(ppay, hof::find_peaks(map, mm_peaks));
                emit(mm_peaks_out.empty() ? "-" : mm_peaks_out, ppay.str());
            }
            return kExitOk;
        } else if (ve->parsed()) {
            hof::FullModelSpec spec;
            if (!ve_preset.empty()) {
                spec = hof::reference_preset();
            } else {
                spec.sites = ve_sites;
                spec.g = ve_g;
                spec.tunneling = ve_t;
                spec.delta = ve_delta;
                spec.theta = ve_theta.empty() ? std::vector<double>(ve_sites, 0.0) : ve_theta;
                spec.photon_cutoff = ve_cutoff;
            }
            spec.validate();
            const auto result = ve_method == "dynamics" ? hof::dynamics_effective_hopping(spec)
                                                        : hof::schur_effective_hopping(spec);
            payload << hof::validator_json(result, spec).dump(2) << '\n';
            out_path = ve_out;
        } else if (fa->parsed()) {
            const auto gauge = fa_gauge == "landau" ? hof::GaugeKind::Landau
                                                    : hof::GaugeKind::Symmetric;
            const auto rows = hof::fit_alpha0(fa_sizes, gauge, fa_jobs);
            hof::write_fit_csv(payload, rows);
            out_path = fa_out;
        }

        emit(out_path, payload.str());
        return kExitOk;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "hoflab: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "hoflab: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "hoflab: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "hoflab: " << e.what() << '\n';
        return kExitNumeric;
    }
}
