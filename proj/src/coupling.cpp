#include "phononbus/coupling.hpp"

#include <cmath>

#include "phononbus/errors.hpp"

namespace phononbus {

double lamb_dicke(double k2, const ModeSpectrum& spectrum, std::size_t m,
                  double cos_theta, const PhysicalConstants& pc) {
    if (!(k2 > 0.0)) throw ConfigError("lamb_dicke: k2 must be > 0");
    if (!(std::abs(cos_theta) <= 1.0))
        throw ConfigError("lamb_dicke: cos_theta must lie in [-1,1]");
    const Mode& mode = spectrum.at(m);
    if (!(spectrum.total_mass_M > 0.0))
        throw ConfigError("lamb_dicke: spectrum carries no mass");
    return k2 * std::sqrt(pc.hbar / (spectrum.total_mass_M * mode.omega)) * cos_theta;
}

double rabi(double intensity, double dipole, double fc_product,
            const PhysicalConstants& pc) {
    if (!(intensity >= 0.0)) throw ConfigError("rabi: intensity must be >= 0");
    if (!(fc_product > 0.0 && fc_product <= 1.0))
        throw ConfigError("rabi: fc_product must lie in (0,1]");
    return std::sqrt(2.0 * pi * pc.fine_structure_alpha * intensity / pc.hbar) *
           fc_product * std::abs(dipole);
}

double raman_rabi(double omega_a, double omega_b, double delta) {
    if (!(delta > 0.0)) throw ConfigError("raman_rabi: delta must be > 0");
    return std::abs(omega_a * omega_b) / delta;
}

double sideband_strength(double eta, double raman) { return std::abs(eta) * raman; }

CphaseTiming cphase_time(double omega2) {
    if (!(omega2 > 0.0)) throw ConfigError("cphase_time: omega2 must be > 0");
    CphaseTiming t;
    t.tau_A = pi / (2.0 * omega2);
    t.tau_cphase = 4.0 * t.tau_A;
    return t;
}

double franck_condon_product(const std::vector<double>& displacements) {
    double s = 0.0;
    for (double d : displacements) s += d * d;
    return std::exp(-0.5 * s);
}

}  // namespace phononbus
