#pragma once

#include <cstdint>
#include <vector>

#include "phononbus/scenario.hpp"

namespace phononbus {

struct FidelityReport {
    double background_loss = 0.0;   // recombination during the pulse
    double offresonant_loss = 0.0;  // leakage to the neighbouring mode
    double fidelity = 0.0;          // 1 - background_loss - offresonant_loss
    WaveConfig wave_config = WaveConfig::StandingWave;

    bool feasible() const { return fidelity > 0.0; }
};

struct FeasibilitySample {
    double omega1_s = 0.0;
    std::int64_t n_small = 0;  // fidelity-limited branch (grows with omega)
    std::int64_t n_big = 0;    // intensity-limited branch (falls with omega)
    std::int64_t n_max = 0;    // min of the two
};

struct FeasibilityCurve {
    std::vector<FeasibilitySample> samples;
    std::int64_t n_c = 0;   // cusp maximum of n_max
    double omega_c = 0.0;   // support fundamental at the cusp, rad/s
};

// Standing: F = 1 - pi*N*Gamma/(2*Omega2) - 2*(Omega2/omega1s)^2
// Travelling: off-resonant term becomes 4*(Omega2/(eta*omega1s))^2.
FidelityReport sideband_fidelity(std::int64_t N, double gamma, double omega2,
                                 double omega1_s, WaveConfig wave_config,
                                 double eta = 0.0);

// F = 1 - 2*pi*N*Gamma/Omega2 - 4*(Omega2/omega1s)^2 (three standing pulses).
double cphase_fidelity(std::int64_t N, double gamma, double omega2, double omega1_s);

// Argmax of the standing-wave fidelity: (pi*omega1s^2*N*Gamma/8)^(1/3).
double optimal_omega2(std::int64_t N, double gamma, double omega1_s);

// F at the optimum: 1 - 3*(pi*N*Gamma/(2*sqrt(2)*omega1s))^(2/3).
double max_fidelity(std::int64_t N, double gamma, double omega1_s);

struct RequiredIntensities {
    double I1 = 0.0, I2 = 0.0;  // W/m^2, at the fidelity optimum
};

// Arm intensities that realize optimal_omega2 with balanced arms
// (Omega_1 = eta * Omega_2^carrier); arm 1 drives the |1>-side transition,
// arm 2 the |0>-side sideband transition.
RequiredIntensities required_intensities(const Scenario& sc, double omega1_s,
                                         const PhysicalConstants& pc = {});

// Largest N with max_fidelity >= 1 - epsilon:
// floor( omega1s * (2*epsilon/3)^(3/2) / (pi*Gamma) ).
std::int64_t nmax_small(double omega1_s, double epsilon, double gamma);

// Largest N with required I2 <= i2_max; scales as omega1s^(-5/4).
std::int64_t nmax_big(double omega1_s, const Scenario& sc,
                      const PhysicalConstants& pc = {});

// Samples log-spaced over [omega_min, omega_max]; the cusp (omega_c, n_c) is
// located from the analytic intersection of the two power-law branches, then
// floored.
FeasibilityCurve feasibility_curve(const Scenario& sc, double omega_min,
                                   double omega_max, std::size_t samples,
                                   const PhysicalConstants& pc = {});

}  // namespace phononbus
