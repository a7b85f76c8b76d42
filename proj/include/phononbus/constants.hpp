#pragma once

namespace phononbus {

// SI throughout (CODATA 2018).  Carried as an instance so scaling tests can
// audit dimensional behaviour (e.g. doubling hbar must scale q0 by sqrt(2)).
struct PhysicalConstants {
    double hbar = 1.054571817e-34;              // J s
    double c = 2.99792458e8;                    // m/s
    double fine_structure_alpha = 7.2973525693e-3;
    double amu = 1.66053906660e-27;             // kg
    double eV = 1.602176634e-19;                // J

    // Minimal credible linear density: a chain of carbon-scale atoms,
    // 10 amu per angstrom.
    double lambda0() const { return 10.0 * amu / 1e-10; }  // kg/m
};

inline constexpr double pi = 3.14159265358979323846;

}  // namespace phononbus
