#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace phononbus {

// Truncated-Fock time-domain model of one sideband pulse.  Everything is
// phrased in the interaction picture, so the only surviving scales are the
// support-mode frequencies and Omega2; the drive is red-detuned onto the
// mode at detuning_target.
struct OracleSystem {
    std::size_t dot_levels = 2;  // |0>, |1> (+ optional spectator level)
    struct PhononMode {
        double omega = 0.0;         // rad/s
        std::size_t truncation = 3; // max occupation kept (>= 2)
    };
    std::vector<PhononMode> phonon_modes;
    double omega2 = 0.0;    // sideband strength, rad/s
    double omega1_s = 0.0;  // support fundamental, rad/s (reporting scale)
    double gamma = 0.0;     // amplitude decay 2x-rate on the exciton manifold
    std::size_t detuning_target = 1;  // 1-based resonant-mode index

    bool include_counter_rotating = true;
    bool include_offresonant = true;  // couple the non-target modes
    double rel_tol = 1e-11;
    double abs_tol = 1e-13;
    std::size_t n_samples = 1024;  // population sampling grid over the pulse
};

struct OracleResult {
    std::vector<double> times;
    // basis label "q<dot>;n1,n2,..." -> population at each sample time
    std::map<std::string, std::vector<double>> populations;
    std::vector<double> norm2;  // total squared norm at each sample
    double achieved_operator_overlap = 0.0;  // |<ideal|psi(T)>|^2
    double boundary_population_max = 0.0;    // truncation-health indicator
};

// Integrates the pulse of duration k*pi/(2*Omega2) from |1>|vacuum>.  The
// resonant term flops |1,0> <-> |0,1> at rate Omega2 (full transfer at k=1;
// k=2 returns the population with a sign flip — the middle C-phase pulse).
// Throws NumericalError on truncation overflow (boundary population > 1e-4).
OracleResult simulate_sideband(const OracleSystem& system, std::size_t pulse_k);

struct OffresonantPoint {
    double ratio = 0.0;           // Omega2 / omega1_s
    double simulated_loss = 0.0;  // time-averaged spectator population
    double model_loss = 0.0;      // 2g^2/(4g^2+delta^2), g = Omega2
};

// Per-ratio comparison of the integrated spectator population against the
// detuned-Rabi time average, two modes split by omega1_s.
std::vector<OffresonantPoint> scan_offresonant(const OracleSystem& system,
                                               const std::vector<double>& ratios);

}  // namespace phononbus
