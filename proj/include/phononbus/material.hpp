#pragma once

#include <string>

#include "phononbus/constants.hpp"

namespace phononbus {

// Exciton-side parameters of one nanocrystal species.  All rates/frequencies
// are angular (rad/s); intensities W/m^2; multiplet_gap_eV is the energy
// separation between the band-edge multiplet and the virtual multiplet used
// by the two-photon channel (it fixes the optical wavenumber scale).
struct Material {
    std::string name;
    double gamma_rec = 0.0;      // recombination rate, rad/s
    double omega_d1 = 0.0;       // lowest internal vibrational frequency, rad/s
    double delta = 0.0;          // two-photon detuning from the virtual level, rad/s
    double multiplet_gap_eV = 0.0;
    double dot_radius = 0.0;     // m
    double beta = 0.0;           // light/heavy hole mass ratio, (0,1)
    double fc_product_01 = 0.0;  // vibrational overlap product, |0>-side arm
    double fc_product_1v = 0.0;  // vibrational overlap product, |1>-side arm
    double dipole_0v = 0.0;      // |<v|eps.r|0>| in units of dot_radius
    double dipole_1v = 0.0;      // <v|eps.r|1> in units of dot_radius (signed)
    double i2_max = 0.0;         // damage-limited intensity ceiling, W/m^2

    // Wavenumber of a photon bridging the multiplet gap.
    double gap_wavenumber(const PhysicalConstants& pc = {}) const {
        return multiplet_gap_eV * pc.eV / (pc.hbar * pc.c);
    }
};

// Hard-coded parameter sets.  Throws ConfigError for unknown names.
Material builtin_material(const std::string& name);

// Invariant check shared by presets and config ingestion; throws ConfigError.
void validate_material(const Material& m);

}  // namespace phononbus
