#include <CLI11.hpp>

#include <atomic>
#include <cinttypes>
#include <complex>
#include <cstdio>
#include <mutex>
#include <thread>

#include "phononbus/coupling.hpp"
#include "phononbus/csv.hpp"
#include "phononbus/dephasing.hpp"
#include "phononbus/errors.hpp"
#include "phononbus/exciton.hpp"
#include "phononbus/feasibility.hpp"
#include "phononbus/gate_oracle.hpp"
#include "phononbus/scenario.hpp"
#include "phononbus/support.hpp"

namespace {

using namespace phononbus;

struct CommonArgs {
    std::string scenario_path;
    std::string out_path;
    std::vector<std::string> overrides;
};

void attach_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--scenario", args.scenario_path, "Scenario JSON file");
    cmd->add_option("--out", args.out_path, "Output CSV path (default: stdout)");
    cmd->add_option("--set", args.overrides, "Override, key=value (repeatable)");
}

Scenario resolve_scenario(const CommonArgs& args) {
    Scenario s = args.scenario_path.empty() ? scenario_from_json_text("{}")
                                            : load_scenario(args.scenario_path);
    for (const auto& kv : args.overrides) apply_override(s, kv);
    validate_scenario(s);
    return s;
}

// Index-sliced worker pool; results land in caller-owned slots so output
// order never depends on scheduling.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const unsigned hw = std::thread::hardware_concurrency();
    const std::size_t workers = std::min<std::size_t>(n, hw ? hw : 2);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

ModeSpectrum spectrum_for(const Scenario& s, std::size_t m_max) {
    return s.support.kind == SupportKind::String ? string_spectrum(s.support, m_max)
                                                 : rod_spectrum(s.support, m_max);
}

// ---- modes ----------------------------------------------------------------

void run_modes(const CommonArgs& args, std::size_t count) {
    Scenario s = resolve_scenario(args);
    ModeSpectrum spec = spectrum_for(s, count);
    CsvWriter csv({"m", "k_per_m", "omega_rad_s", "q0_m"});
    for (std::size_t m = 1; m <= count; ++m) {
        const Mode& mode = spec.at(m);
        csv.row_mixed({std::to_string(mode.m), CsvWriter::format(mode.k),
                       CsvWriter::format(mode.omega), CsvWriter::format(mode.q0)});
    }
    emit_csv(args.out_path, csv.str());
}

// ---- exciton --------------------------------------------------------------

const Vec3c kEps1 = {std::complex<double>(1.0 / std::sqrt(2.0), 0.0),
                     std::complex<double>(0.0, -1.0 / std::sqrt(2.0)),
                     std::complex<double>(0.0, 0.0)};
const Vec3c kEps2 = {std::complex<double>(1.0 / std::sqrt(2.0), 0.0),
                     std::complex<double>(0.0, 1.0 / std::sqrt(2.0)),
                     std::complex<double>(0.0, 0.0)};

void run_exciton(const CommonArgs& args) {
    Scenario s = resolve_scenario(args);
    auto states = build_states(s.material);

    // Human-facing expansion dump; the machine artifact is the CSV below.
    for (const auto& [label, st] : states) {
        std::fprintf(stderr, "|%s>  F_z=%+d  norm=%.12f  envelope root=%.10f\n",
                     label.c_str(), st.F_z, st.norm(), st.envelope->root_phi);
        for (const auto& t : st.terms)
            std::fprintf(stderr,
                         "    %+.6f  e_ms=%+d/2  R%d  Y(%d,%+d)  mJ=%+d/2\n",
                         t.coef.real(), t.e_ms2, t.rad_l, t.Yl, t.Ym, t.mJ2);
    }

    struct Entry {
        const char* bra;
        const char* ket;
        const char* pol_name;
        const Vec3c* pol;
    };
    const Entry entries[] = {
        {"v-1", "0", "eps2", &kEps2}, {"v-1", "1", "eps1", &kEps1},
        {"v+1", "0", "eps1", &kEps1}, {"v+1", "2", "eps2", &kEps2},
        {"0", "1", "eps1", &kEps1},   {"0", "1", "eps2", &kEps2},
        {"0", "2", "eps1", &kEps1},   {"0", "2", "eps2", &kEps2},
        {"1", "2", "eps1", &kEps1},   {"1", "2", "eps2", &kEps2},
    };
    CsvWriter csv({"bra", "ket", "polarization", "re_in_R", "im_in_R", "abs_in_R",
                   "abs_meters"});
    for (const Entry& e : entries) {
        const auto d = dipole_element_in_R(states.at(e.bra), states.at(e.ket), *e.pol);
        csv.row_mixed({e.bra, e.ket, e.pol_name, CsvWriter::format(d.real()),
                       CsvWriter::format(d.imag()), CsvWriter::format(std::abs(d)),
                       CsvWriter::format(std::abs(d) * s.material.dot_radius)});
    }
    emit_csv(args.out_path, csv.str());
}

// ---- coupling -------------------------------------------------------------

void run_coupling(const CommonArgs& args) {
    Scenario s = resolve_scenario(args);
    ModeSpectrum spec = spectrum_for(s, 1);
    const double omega1 = spec.at(1).omega;
    const double eta = lamb_dicke(s.k2_magnitude, spec, 1, s.cos_theta);
    GatePoint p;
    p.omega2 = optimal_omega2(static_cast<std::int64_t>(s.n_dots),
                              s.material.gamma_rec, omega1);
    p.eta = eta;
    RequiredIntensities ri = required_intensities(s, omega1);
    p.I1 = ri.I1;
    p.I2 = ri.I2;
    CphaseTiming timing = cphase_time(p.omega2);
    p.tau_A = timing.tau_A;
    p.tau_cphase = timing.tau_cphase;
    const double fmax = max_fidelity(static_cast<std::int64_t>(s.n_dots),
                                     s.material.gamma_rec, omega1);

    CsvWriter csv({"omega1_s_rad_s", "eta", "omega2_rad_s", "I1_W_per_m2",
                   "I2_W_per_m2", "tau_A_s", "tau_cphase_s", "max_fidelity"});
    csv.row({omega1, p.eta, p.omega2, p.I1, p.I2, p.tau_A, p.tau_cphase, fmax});
    emit_csv(args.out_path, csv.str());
}

// ---- nmax-scan ------------------------------------------------------------

void run_nmax_scan(const CommonArgs& args, double omega_min, double omega_max,
                   std::size_t samples) {
    Scenario s = resolve_scenario(args);
    FeasibilityCurve curve = feasibility_curve(s, omega_min, omega_max, samples);
    CsvWriter csv({"omega1_s_rad_s", "n_small", "n_big", "n_max"});
    for (const auto& p : curve.samples)
        csv.row_mixed({CsvWriter::format(p.omega1_s), std::to_string(p.n_small),
                       std::to_string(p.n_big), std::to_string(p.n_max)});
    emit_csv(args.out_path, csv.str());
    std::fprintf(stderr, "cusp: omega_c = %.6e rad/s, N_c = %" PRId64 "\n",
                 curve.omega_c, curve.n_c);
}

// ---- table1 ---------------------------------------------------------------

void run_table1(const CommonArgs& args) {
    Scenario base = resolve_scenario(args);
    const PhysicalConstants pc{};
    const double eps_grid[] = {0.1, 0.01, 1e-3};
    const double mult_grid[] = {1.0, 10.0, 100.0};

    std::vector<std::array<std::int64_t, 2>> cells;  // [CdTe, Si] per grid point
    CsvWriter csv({"neg_log10_epsilon", "lambda_over_lambda0", "N_c_CdTe", "N_c_Si"});
    std::fprintf(stderr, "%10s %14s %10s %10s\n", "epsilon", "lambda/lambda0",
                 "N_c CdTe", "N_c Si");
    for (double eps : eps_grid) {
        for (double mult : mult_grid) {
            if (eps == 1e-3 && mult == 100.0) continue;  // published grid stops here
            std::int64_t nc[2] = {0, 0};
            const char* mats[2] = {"CdTe", "Si"};
            for (int i = 0; i < 2; ++i) {
                Scenario s = base;
                s.material = builtin_material(mats[i]);
                s.epsilon = eps;
                s.support.linear_density_lambda = mult * pc.lambda0();
                nc[i] = feasibility_curve(s, 1e6, 1e10, 2).n_c;
            }
            csv.row_mixed({CsvWriter::format(-std::log10(eps)), CsvWriter::format(mult),
                           std::to_string(nc[0]), std::to_string(nc[1])});
            std::fprintf(stderr, "%10g %14g %10" PRId64 " %10" PRId64 "\n", eps, mult,
                         nc[0], nc[1]);
        }
    }
    emit_csv(args.out_path, csv.str());
}

// ---- fig2 -----------------------------------------------------------------

void run_fig2(const CommonArgs& args, const std::string& ratio_list,
              std::size_t grid_points) {
    Scenario s = resolve_scenario(args);

    std::vector<double> ratios;
    {
        std::stringstream ss(ratio_list);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            try {
                std::size_t used = 0;
                double r = std::stod(tok, &used);
                if (used != tok.size()) throw std::invalid_argument("junk");
                ratios.push_back(r);
            } catch (const std::exception&) {
                throw ConfigError("fig2: bad ratio '" + tok + "'");
            }
        }
    }
    if (ratios.empty()) throw ConfigError("fig2: no ratios given");
    for (double r : ratios)
        if (!(r >= 1.0)) throw ConfigError("fig2: density ratios must be >= 1");

    // Two-dot benchmark geometry, scaled off the support length: dots centred
    // just off the quarter points, 0.1% half-width.
    SupportSpec spec = s.support;
    spec.kind = SupportKind::String;
    spec.length_L = 2000e-9;
    if (!(spec.tension > 0.0)) spec.tension = 1.0;
    const double x1 = 0.2495 * spec.length_L;
    const double x2 = 0.7505 * spec.length_L;
    const double half_width = 0.001 * spec.length_L;

    ModeSpectrum bare = string_spectrum(spec, 1);
    const double S0 = dot_modal_displacement(bare, 1, x1);

    struct Row {
        double ratio = 0.0, exact = 0.0, averaged = 0.0;
    };
    std::vector<Row> rows(ratios.size());
    parallel_for(ratios.size(), [&](std::size_t i) {
        const double r = ratios[i];
        DensityProfile profile;
        profile.base_lambda = spec.linear_density_lambda;
        profile.grid_points = grid_points;
        const double added = (r - 1.0) * spec.linear_density_lambda;
        profile.increments.push_back({x1, half_width, added});
        profile.increments.push_back({x2, half_width, added});

        ModeSpectrum loaded = loaded_modes(profile, spec, 1);
        const double exact = dot_modal_displacement(loaded, 1, x1) / S0;

        SupportSpec avg_spec = spec;
        avg_spec.linear_density_lambda = profile_mean_lambda(profile, spec.length_L);
        ModeSpectrum averaged = string_spectrum(avg_spec, 1);
        const double avg = dot_modal_displacement(averaged, 1, x1) / S0;
        rows[i] = {r, exact, avg};
    });

    CsvWriter csv({"log10_density_ratio", "S11_over_S0_exact", "S11_over_S0_avg"});
    for (const Row& row : rows)
        csv.row({std::log10(row.ratio), row.exact, row.averaged});
    emit_csv(args.out_path, csv.str());
}

// ---- simulate -------------------------------------------------------------

std::string column_name(const std::string& label) {
    std::string out = label;
    for (char& c : out)
        if (c == ';' || c == ',') c = '_';
    return out;
}

void run_simulate(const CommonArgs& args, std::size_t pulse_k, double ratio,
                  std::size_t samples) {
    Scenario s = resolve_scenario(args);
    ModeSpectrum spec = spectrum_for(s, 2);
    OracleSystem sys;
    sys.omega1_s = spec.at(1).omega;
    sys.phonon_modes.resize(2);
    sys.phonon_modes[0].omega = spec.at(1).omega;
    sys.phonon_modes[1].omega = spec.at(2).omega;
    sys.gamma = static_cast<double>(s.n_dots) * s.material.gamma_rec;
    sys.omega2 = (ratio > 0.0)
                     ? ratio * sys.omega1_s
                     : optimal_omega2(static_cast<std::int64_t>(s.n_dots),
                                      s.material.gamma_rec, sys.omega1_s);
    sys.n_samples = samples;
    OracleResult res = simulate_sideband(sys, pulse_k);

    std::vector<std::string> header = {"t_s", "norm2"};
    for (const auto& [label, series] : res.populations)
        header.push_back(column_name(label));
    CsvWriter csv(header);
    for (std::size_t i = 0; i < res.times.size(); ++i) {
        std::vector<double> row = {res.times[i], res.norm2[i]};
        for (const auto& [label, series] : res.populations) row.push_back(series[i]);
        csv.row(row);
    }
    emit_csv(args.out_path, csv.str());
    std::fprintf(stderr,
                 "pulse k=%zu: overlap with ideal = %.12f, boundary population max = %.3e\n",
                 pulse_k, res.achieved_operator_overlap, res.boundary_population_max);
}

// ---- dephasing ------------------------------------------------------------

void run_dephasing(const CommonArgs& args, int l_max) {
    Scenario s = resolve_scenario(args);
    auto states = build_states(s.material);
    CouplingTable table = coupling_table(states, l_max);
    CsvWriter csv({"state", "l", "m", "coupling"});
    for (const auto& [key, value] : table.entries)
        csv.row_mixed({key.label, std::to_string(key.l), std::to_string(key.m),
                       CsvWriter::format(value)});
    emit_csv(args.out_path, csv.str());
    const char* pairs[][2] = {{"0", "1"}, {"0", "2"}, {"1", "2"}};
    for (const auto& pair : pairs)
        std::fprintf(stderr, "distinguishability(|%s>,|%s>) = %.6e\n", pair[0],
                     pair[1], distinguishability(pair[0], pair[1], table));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Phonon-bus two-qubit gate feasibility toolkit"};
    app.require_subcommand(1);

    CommonArgs modes_args;
    std::size_t modes_count = 8;
    CLI::App* modes_cmd = app.add_subcommand("modes", "Support mode spectrum CSV");
    attach_common(modes_cmd, modes_args);
    modes_cmd->add_option("--count", modes_count, "Number of modes")
        ->check(CLI::PositiveNumber);

    CommonArgs exciton_args;
    CLI::App* exciton_cmd =
        app.add_subcommand("exciton", "State expansions and dipole elements");
    attach_common(exciton_cmd, exciton_args);

    CommonArgs coupling_args;
    CLI::App* coupling_cmd =
        app.add_subcommand("coupling", "Operating point: eta, Omega2, intensities");
    attach_common(coupling_cmd, coupling_args);

    CommonArgs nmax_args;
    double omega_min = 1e6, omega_max = 1e10;
    std::size_t nmax_samples = 200;
    CLI::App* nmax_cmd =
        app.add_subcommand("nmax-scan", "Dot-count ceiling vs support fundamental");
    attach_common(nmax_cmd, nmax_args);
    nmax_cmd->add_option("--omega-min", omega_min, "Scan start, rad/s");
    nmax_cmd->add_option("--omega-max", omega_max, "Scan end, rad/s");
    nmax_cmd->add_option("--samples", nmax_samples, "Sample count");

    CommonArgs table_args;
    CLI::App* table_cmd =
        app.add_subcommand("table1", "N_c grid over epsilon and support density");
    attach_common(table_cmd, table_args);

    CommonArgs fig2_args;
    std::string fig2_ratios = "2,10,100,1000";
    std::size_t fig2_grid = 4000;
    CLI::App* fig2_cmd =
        app.add_subcommand("fig2", "Mass-loading effect on the coupling strength");
    attach_common(fig2_cmd, fig2_args);
    fig2_cmd->add_option("--ratios", fig2_ratios, "Comma-separated density ratios");
    fig2_cmd->add_option("--samples", fig2_grid, "Eigensolver grid points");

    CommonArgs sim_args;
    std::size_t pulse_k = 1, sim_samples = 1024;
    double sim_ratio = 0.0;
    CLI::App* sim_cmd = app.add_subcommand("simulate", "Sideband pulse time series");
    attach_common(sim_cmd, sim_args);
    sim_cmd->add_option("--pulse-k", pulse_k, "Pulse area index k");
    sim_cmd->add_option("--ratio", sim_ratio,
                        "Omega2/omega1_s (default: fidelity optimum)");
    sim_cmd->add_option("--samples", sim_samples, "Time samples");

    CommonArgs deph_args;
    int l_max = 4;
    CLI::App* deph_cmd =
        app.add_subcommand("dephasing", "State-phonon angular coupling table");
    attach_common(deph_cmd, deph_args);
    deph_cmd->add_option("--l-max", l_max, "Largest angular channel");

    CLI11_PARSE(app, argc, argv);

    try {
        if (modes_cmd->parsed()) run_modes(modes_args, modes_count);
        else if (exciton_cmd->parsed()) run_exciton(exciton_args);
        else if (coupling_cmd->parsed()) run_coupling(coupling_args);
        else if (nmax_cmd->parsed())
            run_nmax_scan(nmax_args, omega_min, omega_max, nmax_samples);
        else if (table_cmd->parsed()) run_table1(table_args);
        else if (fig2_cmd->parsed()) run_fig2(fig2_args, fig2_ratios, fig2_grid);
        else if (sim_cmd->parsed()) run_simulate(sim_args, pulse_k, sim_ratio, sim_samples);
        else if (deph_cmd->parsed()) run_dephasing(deph_args, l_max);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 2;
    } catch (const IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 2;
    }
    return 0;
}
