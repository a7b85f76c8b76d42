#include "phononbus/feasibility.hpp"

#include <cmath>

#include "phononbus/constants.hpp"
#include "phononbus/errors.hpp"

namespace phononbus {

namespace {

void check_core(std::int64_t N, double gamma, double omega2, double omega1_s) {
    if (N < 1) throw ConfigError("fidelity: N must be >= 1");
    if (!(gamma > 0.0)) throw ConfigError("fidelity: gamma must be > 0");
    if (!(omega2 > 0.0)) throw ConfigError("fidelity: omega2 must be > 0");
    if (!(omega1_s > 0.0)) throw ConfigError("fidelity: omega1_s must be > 0");
}

// Intensity-limited branch prefactor: N = big_b * omega1s^(-5/4).
double big_b(const Scenario& sc, const PhysicalConstants& pc) {
    const Material& mat = sc.material;
    const double d2 = mat.dipole_0v * mat.dot_radius;  // meters
    const double C = 2.0 * pi * pc.fine_structure_alpha * sc.k2_magnitude *
                     sc.k2_magnitude * d2 * d2 * mat.fc_product_01 * mat.fc_product_01 *
                     sc.cos_theta * sc.cos_theta /
                     (mat.delta * sc.support.linear_density_lambda * sc.support.unit_length_l);
    return std::pow(mat.i2_max * C, 0.75) * std::pow(8.0 / (pi * mat.gamma_rec), 0.25);
}

// Fidelity-limited branch prefactor: N = small_a * omega1s.
double small_a(double epsilon, double gamma) {
    return std::pow(2.0 * epsilon / 3.0, 1.5) / (pi * gamma);
}

std::int64_t floor_count(double v) {
    if (!(v >= 0.0)) return 0;
    if (!(v < 9.0e18)) throw NumericalError("dot count overflows the counter");
    return static_cast<std::int64_t>(std::floor(v));
}

}  // namespace

FidelityReport sideband_fidelity(std::int64_t N, double gamma, double omega2,
                                 double omega1_s, WaveConfig wave_config, double eta) {
    check_core(N, gamma, omega2, omega1_s);
    FidelityReport r;
    r.wave_config = wave_config;
    r.background_loss = pi * static_cast<double>(N) * gamma / (2.0 * omega2);
    if (wave_config == WaveConfig::StandingWave) {
        const double x = omega2 / omega1_s;
        r.offresonant_loss = 2.0 * x * x;
    } else {
        if (!(eta > 0.0))
            throw ConfigError("sideband_fidelity: travelling wave needs eta > 0");
        const double x = omega2 / (eta * omega1_s);
        r.offresonant_loss = 4.0 * x * x;
    }
    r.fidelity = 1.0 - r.background_loss - r.offresonant_loss;
    return r;
}

double cphase_fidelity(std::int64_t N, double gamma, double omega2, double omega1_s) {
    check_core(N, gamma, omega2, omega1_s);
    const double x = omega2 / omega1_s;
    return 1.0 - 2.0 * pi * static_cast<double>(N) * gamma / omega2 - 4.0 * x * x;
}

double optimal_omega2(std::int64_t N, double gamma, double omega1_s) {
    check_core(N, gamma, 1.0, omega1_s);
    return std::cbrt(pi * omega1_s * omega1_s * static_cast<double>(N) * gamma / 8.0);
}

double max_fidelity(std::int64_t N, double gamma, double omega1_s) {
    check_core(N, gamma, 1.0, omega1_s);
    const double y = pi * static_cast<double>(N) * gamma /
                     (2.0 * std::sqrt(2.0) * omega1_s);
    return 1.0 - 3.0 * std::pow(y, 2.0 / 3.0);
}

RequiredIntensities required_intensities(const Scenario& sc, double omega1_s,
                                         const PhysicalConstants& pc) {
    validate_scenario(sc);
    if (!(omega1_s > 0.0)) throw ConfigError("required_intensities: omega1_s must be > 0");
    const Material& mat = sc.material;
    const double omega2F = optimal_omega2(sc.n_dots, mat.gamma_rec, omega1_s);

    // Chain mass scales with the dot count: M = lambda * l * N.
    const double M = sc.support.linear_density_lambda * sc.support.unit_length_l *
                     static_cast<double>(sc.n_dots);
    const double eta =
        sc.k2_magnitude * std::sqrt(pc.hbar / (M * omega1_s)) * sc.cos_theta;

    const double d1 = mat.dipole_1v * mat.dot_radius;
    const double d2 = mat.dipole_0v * mat.dot_radius;
    const double denom = 2.0 * pi * pc.fine_structure_alpha;

    RequiredIntensities out;
    out.I1 = pc.hbar * mat.delta * omega2F /
             (denom * d1 * d1 * mat.fc_product_1v * mat.fc_product_1v);
    out.I2 = pc.hbar * mat.delta * omega2F /
             (denom * eta * eta * d2 * d2 * mat.fc_product_01 * mat.fc_product_01);
    return out;
}

std::int64_t nmax_small(double omega1_s, double epsilon, double gamma) {
    if (!(omega1_s > 0.0)) throw ConfigError("nmax_small: omega1_s must be > 0");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw ConfigError("nmax_small: epsilon must lie in (0,1)");
    if (!(gamma > 0.0)) throw ConfigError("nmax_small: gamma must be > 0");
    return floor_count(small_a(epsilon, gamma) * omega1_s);
}

std::int64_t nmax_big(double omega1_s, const Scenario& sc, const PhysicalConstants& pc) {
    validate_scenario(sc);
    if (!(omega1_s > 0.0)) throw ConfigError("nmax_big: omega1_s must be > 0");
    return floor_count(big_b(sc, pc) * std::pow(omega1_s, -1.25));
}

FeasibilityCurve feasibility_curve(const Scenario& sc, double omega_min,
                                   double omega_max, std::size_t samples,
                                   const PhysicalConstants& pc) {
    validate_scenario(sc);
    if (!(omega_min > 0.0 && omega_max > omega_min))
        throw ConfigError("feasibility_curve: need 0 < omega_min < omega_max");
    if (samples < 2) throw ConfigError("feasibility_curve: need at least 2 samples");

    const double a = small_a(sc.epsilon, sc.material.gamma_rec);
    const double b = big_b(sc, pc);

    FeasibilityCurve curve;
    curve.samples.reserve(samples);
    const double ratio = omega_max / omega_min;
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(samples - 1);
        FeasibilitySample s;
        s.omega1_s = omega_min * std::pow(ratio, t);
        s.n_small = floor_count(a * s.omega1_s);
        s.n_big = floor_count(b * std::pow(s.omega1_s, -1.25));
        s.n_max = std::min(s.n_small, s.n_big);
        curve.samples.push_back(s);
    }
    // The two branches are pure power laws; their crossing is the cusp.
    curve.omega_c = std::pow(b / a, 4.0 / 9.0);
    curve.n_c = floor_count(std::pow(a, 5.0 / 9.0) * std::pow(b, 4.0 / 9.0));
    return curve;
}

}  // namespace phononbus
