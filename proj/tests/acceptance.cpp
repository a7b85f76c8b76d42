// Acceptance gate for the feasibility engine.  Prints one PASS/FAIL line per
// criterion with the measured numbers inline and exits with the count of
// failed criteria, so CI can consume it directly.  Every tolerance and
// runtime budget is pinned here on purpose; loosening one is a design change,
// not a bug fix.

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "phononbus/constants.hpp"
#include "phononbus/coupling.hpp"
#include "phononbus/dephasing.hpp"
#include "phononbus/errors.hpp"
#include "phononbus/exciton.hpp"
#include "phononbus/feasibility.hpp"
#include "phononbus/gate_oracle.hpp"
#include "phononbus/material.hpp"
#include "phononbus/scenario.hpp"
#include "phononbus/support.hpp"

namespace {

using namespace phononbus;
using Clock = std::chrono::steady_clock;
using cd = std::complex<double>;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

const Vec3c kEps1 = {cd(1.0 / std::sqrt(2.0)), cd(0.0, -1.0 / std::sqrt(2.0)), cd(0.0)};
const Vec3c kEps2 = {cd(1.0 / std::sqrt(2.0)), cd(0.0, +1.0 / std::sqrt(2.0)), cd(0.0)};

// ---- criterion 1: N_c table against the published 16-cell grid ------------

bool criterion1() {
    const auto t0 = Clock::now();
    const PhysicalConstants pc{};
    const Scenario base = scenario_from_json_text("{}");
    const double eps_grid[] = {0.1, 0.01, 1e-3};
    const double mult_grid[] = {1.0, 10.0, 100.0};
    // Row-major over (epsilon, multiplier), the (1e-3, 100) cell absent.
    const std::int64_t ref_cdte[] = {7, 3, 1, 1, 0, 0, 0, 0};
    const std::int64_t ref_si[] = {731, 339, 158, 107, 50, 23, 16, 7};

    bool cells_ok = true;
    double worst_frac = -1.0;
    char worst_desc[128] = "none";
    int row = 0;
    for (double eps : eps_grid) {
        for (double mult : mult_grid) {
            if (eps == 1e-3 && mult == 100.0) continue;
            const std::int64_t ref[2] = {ref_cdte[row], ref_si[row]};
            const char* mats[2] = {"CdTe", "Si"};
            for (int i = 0; i < 2; ++i) {
                Scenario s = base;
                s.material = builtin_material(mats[i]);
                s.epsilon = eps;
                s.support.linear_density_lambda = mult * pc.lambda0();
                const std::int64_t nc = feasibility_curve(s, 1e6, 1e10, 2).n_c;
                // +/-20% or +/-1 count, whichever is larger.
                const double allowed = std::max(1.0, 0.2 * static_cast<double>(ref[i]));
                const double diff = std::fabs(static_cast<double>(nc - ref[i]));
                if (diff > allowed) cells_ok = false;
                if (diff / allowed > worst_frac) {
                    worst_frac = diff / allowed;
                    std::snprintf(worst_desc, sizeof(worst_desc),
                                  "%s(eps=%g,mult=%g) %" PRId64 " vs %" PRId64
                                  " (|dN|=%g, allowed %g)",
                                  mats[i], eps, mult, nc, ref[i], diff, allowed);
                }
            }
            ++row;
        }
    }
    const double dt = seconds_since(t0);
    const bool pass = cells_ok && dt < 5.0;
    std::printf("%s criterion 1: 16 N_c cells within max(20%%, 1 count) of the "
                "published grid; worst cell %s; runtime %.2f s (budget 5 s)\n",
                pass ? "PASS" : "FAIL", worst_desc, dt);
    return pass;
}

// ---- criterion 2: golden section vs closed-form optimum -------------------

bool criterion2() {
    const auto t0 = Clock::now();
    const double kOptTol = 1e-6;   // relative, on the argmax
    const double kFTol = 1e-12;    // relative on the fidelity scale

    // 10 x 10 x 10 log grid: N in [1, 1e3], Gamma in [1e2, 1e7] rad/s,
    // omega1_s in [1e6, 1e10] rad/s.
    std::vector<std::int64_t> n_grid;
    for (int j = 0; j < 10; ++j)
        n_grid.push_back(std::llround(std::pow(10.0, j / 3.0)));
    std::vector<double> gamma_grid, omega_grid;
    for (int j = 0; j < 10; ++j) {
        gamma_grid.push_back(std::pow(10.0, 2.0 + 5.0 * j / 9.0));
        omega_grid.push_back(std::pow(10.0, 6.0 + 4.0 * j / 9.0));
    }

    double worst_opt = 0.0, worst_f = 0.0;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    for (std::int64_t N : n_grid) {
        for (double g : gamma_grid) {
            for (double w : omega_grid) {
                // Golden section on log(Omega2), minimizing the summed loss.
                // Same argmax as maximizing the fidelity, but the loss has no
                // 1 - loss cancellation, so the comparison stays resolvable
                // even where the optimum is flat to machine precision.
                const auto loss_at = [&](double lx) {
                    const FidelityReport r = sideband_fidelity(
                        N, g, std::exp(lx), w, WaveConfig::StandingWave);
                    return r.background_loss + r.offresonant_loss;
                };
                double a = std::log(1e-5 * w), b = std::log(1e2 * w);
                double c = b - gr * (b - a), d = a + gr * (b - a);
                double fc = loss_at(c), fd = loss_at(d);
                for (int it = 0; it < 200 && (b - a) > 1e-12; ++it) {
                    if (fc < fd) {
                        b = d; d = c; fd = fc;
                        c = b - gr * (b - a); fc = loss_at(c);
                    } else {
                        a = c; c = d; fc = fd;
                        d = a + gr * (b - a); fd = loss_at(d);
                    }
                }
                const double found = std::exp(0.5 * (a + b));
                const double opt = optimal_omega2(N, g, w);
                worst_opt = std::max(worst_opt, std::fabs(found / opt - 1.0));

                const double f_at_opt = sideband_fidelity(
                    N, g, opt, w, WaveConfig::StandingWave).fidelity;
                const double f_closed = max_fidelity(N, g, w);
                worst_f = std::max(worst_f, std::fabs(f_at_opt - f_closed) /
                                                std::max(1.0, std::fabs(f_closed)));
            }
        }
    }
    const double dt = seconds_since(t0);
    const bool pass = worst_opt <= kOptTol && worst_f <= kFTol && dt < 1.0;
    std::printf("%s criterion 2: golden-section optimum within %.1e of closed "
                "form over 1000 grid points (worst %.2e), F(opt) vs closed-form "
                "maximum within %.1e (worst %.2e); runtime %.2f s (budget 1 s)\n",
                pass ? "PASS" : "FAIL", kOptTol, worst_opt, kFTol, worst_f, dt);
    return pass;
}

// ---- criterion 3: mass-loading benchmark ----------------------------------

bool criterion3() {
    const auto t0 = Clock::now();
    const Scenario base = scenario_from_json_text("{}");

    // Two-dot benchmark geometry (same construction as the fig2 subcommand):
    // 2 um string, dots just off the quarter points, 0.1% half-width.
    SupportSpec spec = base.support;
    spec.kind = SupportKind::String;
    spec.length_L = 2000e-9;
    if (!(spec.tension > 0.0)) spec.tension = 1.0;
    const double x1 = 0.2495 * spec.length_L;
    const double x2 = 0.7505 * spec.length_L;
    const double half_width = 0.001 * spec.length_L;
    const std::size_t grid_points = 4000;

    const ModeSpectrum bare = string_spectrum(spec, 1);
    const double S0 = dot_modal_displacement(bare, 1, x1);

    bool range_ok = true, avg_ok = true;
    double min_exact = 1e300, worst_avg = 0.0;
    for (double r : {2.0, 10.0, 100.0, 1000.0}) {
        DensityProfile profile;
        profile.base_lambda = spec.linear_density_lambda;
        profile.grid_points = grid_points;
        const double added = (r - 1.0) * spec.linear_density_lambda;
        profile.increments.push_back({x1, half_width, added});
        profile.increments.push_back({x2, half_width, added});

        const ModeSpectrum loaded = loaded_modes(profile, spec, 1);
        const double exact = dot_modal_displacement(loaded, 1, x1) / S0;

        SupportSpec avg_spec = spec;
        avg_spec.linear_density_lambda = profile_mean_lambda(profile, spec.length_L);
        const ModeSpectrum averaged = string_spectrum(avg_spec, 1);
        const double avg = dot_modal_displacement(averaged, 1, x1) / S0;

        if (!(exact >= 0.5 && exact <= 1.0)) range_ok = false;
        min_exact = std::min(min_exact, exact);
        const double rel = std::fabs(avg - exact) / exact;
        worst_avg = std::max(worst_avg, rel);
        if (rel > 0.25) avg_ok = false;
    }
    const double dt = seconds_since(t0);
    const bool pass = range_ok && avg_ok && dt < 30.0;
    std::printf("%s criterion 3: dot coupling S11/S0 stays in [0.5, 1.0] for "
                "density ratios {2,10,100,1000} (min %.4f), averaged-density "
                "approximation within 25%% (worst %.2f%%); runtime %.2f s "
                "(budget 30 s)\n",
                pass ? "PASS" : "FAIL", min_exact, 100.0 * worst_avg, dt);
    return pass;
}

// ---- criterion 4: virtual-transition dipole reference values --------------

bool criterion4() {
    const auto t0 = Clock::now();
    const auto states = build_states(builtin_material("CdTe"));  // beta=0.2, R=20 A

    const double d0 = dipole_element_in_R(states.at("v-1"), states.at("0"), kEps2).real();
    const double d1 = dipole_element_in_R(states.at("v-1"), states.at("1"), kEps1).real();
    const double ref0 = 0.11, ref1 = -0.013;  // reference values under test
    const bool hit0 = std::fabs(d0 - ref0) <= 0.3 * std::fabs(ref0);
    const bool hit1 = std::fabs(d1 - ref1) <= 0.3 * std::fabs(ref1);

    double intra_max = 0.0;
    for (const char* a : {"0", "1", "2"})
        for (const char* b : {"0", "1", "2"})
            for (const Vec3c* pol : {&kEps1, &kEps2})
                intra_max = std::max(intra_max,
                                     std::abs(dipole_element_in_R(states.at(a),
                                                                  states.at(b), *pol)));
    const bool intra_ok = intra_max < 1e-12;

    const double dt = seconds_since(t0);
    const bool pass = hit0 && hit1 && intra_ok && dt < 1.0;
    std::printf("%s criterion 4: band-edge/virtual dipole elements vs reference "
                "values at beta=0.2, R=20 A; runtime %.2f s (budget 1 s)\n",
                pass ? "PASS" : "FAIL", dt);
    std::printf("    - <v-1|eps2.r|0> = %+.6f R, reference %+.3f R, +/-30%% band "
                "[%+.4f, %+.4f] R: %s\n",
                d0, ref0, ref0 - 0.3 * std::fabs(ref0), ref0 + 0.3 * std::fabs(ref0),
                hit0 ? "inside" : "OUTSIDE");
    std::printf("    - <v-1|eps1.r|1> = %+.6f R, reference %+.3f R, +/-30%% band "
                "[%+.4f, %+.4f] R: %s\n",
                d1, ref1, ref1 - 0.3 * std::fabs(ref1), ref1 + 0.3 * std::fabs(ref1),
                hit1 ? "inside" : "OUTSIDE");
    std::printf("    - measured ratio d0/d1 = %.6f (offset from -sqrt(6): %.1e); "
                "the ratio is set by the angular algebra of the fixed state "
                "expansions and is independent of beta and R, while the "
                "reference pair implies %.2f — no envelope parameters can "
                "reproduce both reference values under this state basis\n",
                d0 / d1, std::fabs(d0 / d1 + std::sqrt(6.0)), ref0 / ref1);
    std::printf("    - intra-multiplet max |<a|eps.r|b>| over {0,1,2} = %.1e R "
                "(< 1e-12 R): %s\n",
                intra_max, intra_ok ? "ok" : "FAIL");
    return pass;
}

// ---- criterion 5: dephasing selection rules -------------------------------

bool criterion5() {
    const auto t0 = Clock::now();
    const auto states = build_states(builtin_material("CdTe"));
    const CouplingTable table = coupling_table(states, 4);

    double off_m_max = 0.0;
    for (const auto& [key, value] : table.entries)
        if (key.m != 0) off_m_max = std::max(off_m_max, std::fabs(value));
    const bool m_ok = off_m_max <= 1e-30;

    double pair_max = 0.0;
    for (int l = 0; l <= 4; ++l)
        pair_max = std::max(pair_max,
                            std::fabs(table.at("1", l, 0) - table.at("2", l, 0)));
    const double dist = distinguishability("1", "2", table);
    const bool pair_ok = pair_max <= 1e-12 && dist <= 1e-28;

    const double dt = seconds_since(t0);
    const bool pass = m_ok && pair_ok;
    std::printf("%s criterion 5: coupling-table entries for m != 0 vanish "
                "(max %.1e) and the +/-F_z pair |1>,|2> is indistinguishable "
                "(max per-channel gap %.1e, distinguishability %.1e) for l <= 4; "
                "runtime %.2f s\n",
                pass ? "PASS" : "FAIL", off_m_max, pair_max, dist, dt);
    return pass;
}

// ---- criterion 6: time-domain oracle vs loss model ------------------------

bool criterion6() {
    const auto t0 = Clock::now();
    OracleSystem sys;
    sys.omega1_s = 1e8;  // modes default to {1e8, 2e8} in the scan

    // (a) integrated spectator population within a factor 2 of 2*(Omega2/omega1s)^2.
    bool spectator_ok = true;
    double worst_spec_ratio = 1.0;
    for (const OffresonantPoint& pt : scan_offresonant(sys, {0.02, 0.05, 0.1})) {
        const double target = 2.0 * pt.ratio * pt.ratio;
        const double frac = pt.simulated_loss / target;
        if (!(frac >= 0.5 && frac <= 2.0)) spectator_ok = false;
        if (std::fabs(std::log(frac)) > std::fabs(std::log(worst_spec_ratio)))
            worst_spec_ratio = frac;
    }

    // (b) norm loss under recombination matches pi*N*Gamma/(2*Omega2) while
    // the predicted loss stays <= 1e-2 (N=50, Gamma=100 rad/s here).
    bool decay_ok = true;
    double worst_decay = 0.0;
    const double n_dots = 50.0, gamma_rec = 100.0;
    for (double ratio : {0.02, 0.05, 0.1}) {
        OracleSystem d;
        d.omega1_s = 1e8;
        d.phonon_modes = {{1e8, 3}, {2e8, 3}};
        d.omega2 = ratio * d.omega1_s;
        d.gamma = n_dots * gamma_rec;
        const OracleResult res = simulate_sideband(d, 1);
        const double loss = 1.0 - res.norm2.back();
        const double model = pi * n_dots * gamma_rec / (2.0 * d.omega2);
        if (!(model <= 1e-2)) decay_ok = false;  // guard the regime assumption
        const double rel = std::fabs(loss - model) / model;
        worst_decay = std::max(worst_decay, rel);
        if (rel > 0.10) decay_ok = false;
    }

    // (c) unitarity with recombination off.
    OracleSystem u;
    u.omega1_s = 1e8;
    u.phonon_modes = {{1e8, 3}, {2e8, 3}};
    u.omega2 = 5e6;
    const OracleResult ures = simulate_sideband(u, 1);
    double drift = 0.0;
    for (double n2 : ures.norm2) drift = std::max(drift, std::fabs(n2 - 1.0));
    const bool unitary_ok = drift <= 1e-8;

    const double dt = seconds_since(t0);
    const bool pass = spectator_ok && decay_ok && unitary_ok && dt < 60.0;
    std::printf("%s criterion 6: spectator population within factor 2 of "
                "2*(Omega2/omega1s)^2 (worst sim/model %.3f), norm loss vs "
                "pi*N*Gamma/(2*Omega2) within 10%% (worst %.2f%%), unitarity "
                "drift at Gamma=0 %.1e (<= 1e-8); runtime %.1f s (budget 60 s)\n",
                pass ? "PASS" : "FAIL", worst_spec_ratio, 100.0 * worst_decay,
                drift, dt);
    return pass;
}

// ---- criterion 7: scaling laws and curve-family shape ---------------------

bool criterion7() {
    const auto t0 = Clock::now();
    const PhysicalConstants pc{};
    const double k2 = builtin_material("CdTe").gap_wavenumber();

    // (a) eta scales as M^(-1/2): scale lambda and tension together so the
    // spectrum keeps its frequencies while the modal mass grows.
    SupportSpec sp;
    sp.kind = SupportKind::String;
    sp.length_L = 150e-6;
    sp.unit_length_l = 3e-6;
    sp.linear_density_lambda = pc.lambda0();
    sp.tension = pc.lambda0() * std::pow(1.5e4 / pi, 2);
    const double eta0 = lamb_dicke(k2, string_spectrum(sp, 1), 1, 1.0);
    double worst_eta = 0.0;
    for (double f : {4.0, 9.0, 25.0}) {
        SupportSpec sf = sp;
        sf.linear_density_lambda *= f;
        sf.tension *= f;
        const double eta_f = lamb_dicke(k2, string_spectrum(sf, 1), 1, 1.0);
        worst_eta = std::max(worst_eta,
                             std::fabs(eta0 / eta_f / std::sqrt(f) - 1.0));
    }
    const bool eta_ok = worst_eta <= 1e-13;

    // (b) I2 scales as N^(4/3) at fixed material and omega1_s with L = l*N.
    const Scenario s50 = scenario_from_json_text("{}");
    Scenario s400 = s50;
    s400.n_dots = 400;
    s400.support.length_L = s400.support.unit_length_l * 400;
    const RequiredIntensities r50 = required_intensities(s50, 1e8);
    const RequiredIntensities r400 = required_intensities(s400, 1e8);
    const double i2_dev = std::fabs(r400.I2 / r50.I2 / 16.0 - 1.0);  // 8^(4/3)
    const double i1_dev = std::fabs(r400.I1 / r50.I1 / 2.0 - 1.0);   // 8^(1/3)
    const bool i2_ok = i2_dev <= 1e-9;

    // (c) clamped-clamped rod roots.
    double worst_root = 0.0;
    for (std::size_t m = 1; m <= 12; ++m) {
        const double x = rod_root(m);
        worst_root = std::max(worst_root,
                              std::fabs(std::cos(x) - 1.0 / std::cosh(x)));
    }
    const bool root_ok = worst_root < 1e-9;

    // (d) hole-envelope normalization integral((rho_a^2+rho_b^2) u^2 du) = 1.
    double worst_norm = 0.0;
    for (double beta : {0.2, 0.5}) {
        for (EnvelopeKind kind : {EnvelopeKind::S_type, EnvelopeKind::P_type}) {
            const RadialEnvelope env = build_envelope(beta, kind);
            const int la = kind == EnvelopeKind::S_type ? 0 : 1;
            const int lb = kind == EnvelopeKind::S_type ? 2 : 3;
            const double norm = simpson(
                [&](double u) {
                    const double ra = env.component(la, u);
                    const double rb = env.component(lb, u);
                    return (ra * ra + rb * rb) * u * u;
                },
                0.0, 1.0, 4000);
            worst_norm = std::max(worst_norm, std::fabs(norm - 1.0));
        }
    }
    const bool norm_ok = worst_norm <= 1e-8;

    // Curve families behind the N_c table: unimodal in omega1_s, and the cusp
    // count ordered against the support density.
    bool shape_ok = true;
    std::int64_t prev_nc = -1;
    double prev_wc = 0.0;
    std::int64_t nc_list[3] = {0, 0, 0};
    int slot = 0;
    for (double mult : {1.0, 10.0, 100.0}) {
        Scenario s = s50;
        s.support.linear_density_lambda = mult * pc.lambda0();
        const FeasibilityCurve curve = feasibility_curve(s, 1e6, 1e10, 160);
        std::size_t peak = 0;
        for (std::size_t i = 1; i < curve.samples.size(); ++i)
            if (curve.samples[i].n_max > curve.samples[peak].n_max) peak = i;
        for (std::size_t i = 0; i + 1 < curve.samples.size(); ++i) {
            if (i < peak && curve.samples[i].n_max > curve.samples[i + 1].n_max)
                shape_ok = false;
            if (i >= peak && curve.samples[i].n_max < curve.samples[i + 1].n_max)
                shape_ok = false;
        }
        if (prev_nc >= 0 && (curve.n_c > prev_nc || curve.omega_c >= prev_wc))
            shape_ok = false;  // heavier support: fewer dots, lower cusp
        prev_nc = curve.n_c;
        prev_wc = curve.omega_c;
        nc_list[slot++] = curve.n_c;
    }

    const double dt = seconds_since(t0);
    const bool pass = eta_ok && i2_ok && root_ok && norm_ok && shape_ok;
    std::printf("%s criterion 7: eta ~ M^(-1/2) (worst dev %.1e), I2 ~ N^(4/3) "
                "at fixed omega1_s with L=l*N (dev %.1e; I1 ~ N^(1/3) dev %.1e), "
                "rod-root residuals < 1e-9 (worst %.1e), envelope norms within "
                "1e-8 (worst %.1e), N_max(omega) unimodal with cusp ordering "
                "N_c = {%" PRId64 ", %" PRId64 ", %" PRId64 "} over "
                "lambda/lambda0 = {1, 10, 100}; runtime %.2f s\n",
                pass ? "PASS" : "FAIL", worst_eta, i2_dev, i1_dev, worst_root,
                worst_norm, nc_list[0], nc_list[1], nc_list[2], dt);
    return pass;
}

}  // namespace

int main() {
    using CriterionFn = bool (*)();
    const CriterionFn criteria[] = {criterion1, criterion2, criterion3,
                                    criterion4, criterion5, criterion6,
                                    criterion7};
    int failed = 0;
    int index = 1;
    for (CriterionFn fn : criteria) {
        bool ok = false;
        try {
            ok = fn();
        } catch (const std::exception& e) {
            std::printf("FAIL criterion %d: unexpected exception: %s\n", index,
                        e.what());
        }
        if (!ok) ++failed;
        ++index;
    }
    std::printf("acceptance: %d/7 criteria passed, %d failed\n", 7 - failed,
                failed);
    return failed;
}
