#pragma once

#include <string>
#include <vector>

#include "phononbus/constants.hpp"
#include "phononbus/support.hpp"

namespace phononbus {

// Two-arm Raman channel through a detuned virtual level.
struct RamanChannel {
    std::string initial, virt, final_;
    double detuning_delta = 0.0;  // rad/s
    double k1 = 0.0, k2 = 0.0;    // 1/m
    double fc_1 = 0.0, fc_2 = 0.0;
};

// One operating point of the sideband drive.
struct GatePoint {
    double omega2 = 0.0;      // sideband interaction strength, rad/s
    double eta = 0.0;         // Lamb-Dicke parameter
    double I1 = 0.0, I2 = 0.0;  // W/m^2
    double tau_A = 0.0;       // single sideband pulse, s = pi/(2*omega2)
    double tau_cphase = 0.0;  // full three-pulse gate, s = 4*tau_A
};

// eta = k2 * sqrt(hbar/(M*omega_m)) * cos_theta, M = lambda*L.
double lamb_dicke(double k2, const ModeSpectrum& spectrum, std::size_t m,
                  double cos_theta, const PhysicalConstants& pc = {});

// On-resonant Rabi frequency Omega = sqrt(2*pi*alpha*I/hbar) * fc * |dipole|,
// dipole in meters, I in W/m^2.
double rabi(double intensity, double dipole, double fc_product,
            const PhysicalConstants& pc = {});

// |Omega_a * Omega_b| / Delta.
double raman_rabi(double omega_a, double omega_b, double delta);

// Omega_2 = eta * Omega_Raman.
double sideband_strength(double eta, double raman);

struct CphaseTiming {
    double tau_cphase = 0.0;
    double tau_A = 0.0;
};
CphaseTiming cphase_time(double omega2);

// Displaced-oscillator vibrational overlap exp(-1/2 sum d_k^2) for callers
// that supply per-mode dimensionless displacements; presets carry the product
// directly.
double franck_condon_product(const std::vector<double>& displacements);

}  // namespace phononbus
