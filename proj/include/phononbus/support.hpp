#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "phononbus/constants.hpp"

namespace phononbus {

enum class SupportKind { String, Rod };

// Geometry/elasticity of the linear support plus the laser spot length l
// (= dot spacing for identical dots, so length_L = unit_length_l * N).
struct SupportSpec {
    SupportKind kind = SupportKind::String;
    double length_L = 0.0;              // m
    double linear_density_lambda = 0.0; // kg/m
    double tension = 0.0;               // N            (String)
    double stiffness = 0.0;             // m^4/s^2      (Rod: Y*Iz/lambda)
    double unit_length_l = 0.0;         // m
};

struct Mode {
    std::size_t m = 0;     // 1-based index
    double k = 0.0;        // 1/m
    double omega = 0.0;    // rad/s
    double q0 = 0.0;       // zero-point displacement scale, m
};

// Transverse spectrum of one support.  Shapes are dimensionless, scaled to
// the modal mass mu = integral(lambda c^2 dx) = mean_lambda * l (for the
// homogeneous string, integral(c^2 dx) = l), and every kind pairs that with
// q0 = sqrt(hbar/(2*mu*omega)) = sqrt(hbar/(2*lambda*l*omega)).  Shape and
// q0 only enter physics as the product c_m(x)*q0.
struct ModeSpectrum {
    std::vector<Mode> modes;
    double total_mass_M = 0.0;  // kg
    double length_L = 0.0;      // m
    std::function<double(std::size_t m, double x)> shape;  // c_m(x)

    const Mode& at(std::size_t m) const;  // 1-based, throws NumericalError
};

// Rectangular density increments riding on a uniform base (the dot-loading
// study geometry).
struct DensityProfile {
    double base_lambda = 0.0;  // kg/m
    struct Increment {
        double center = 0.0;      // m
        double half_width = 0.0;  // m
        double added_lambda = 0.0;
    };
    std::vector<Increment> increments;
    std::size_t grid_points = 4000;  // interior nodes; >= 1000 enforced
};

ModeSpectrum string_spectrum(const SupportSpec& spec, std::size_t m_max,
                             const PhysicalConstants& pc = {});

// m-th positive root x = k*L of cos(x)*cosh(x) = 1 (clamped-clamped).
// Bisection on cos(x) - sech(x) over (m*pi, (m+1)*pi), which brackets exactly
// one root for every m >= 1.
double rod_root(std::size_t m);

ModeSpectrum rod_spectrum(const SupportSpec& spec, std::size_t m_max,
                          const PhysicalConstants& pc = {});

// S = c_m(x) * q0_m.  The companion estimate sqrt(hbar/(M*omega_m)) equals S
// exactly at a homogeneous-string antinode.
double dot_modal_displacement(const ModeSpectrum& spectrum, std::size_t m, double x);

// sqrt(hbar/(M*omega_m)) with M the spectrum's total mass.
double modal_displacement_scale(const ModeSpectrum& spectrum, std::size_t m,
                                const PhysicalConstants& pc = {});

// Variable-density string modes: -theta u'' = omega^2 lambda(x) u on a uniform
// grid with fixed ends, symmetrized to a tridiagonal eigenproblem and solved
// by Sturm bisection + inverse iteration.  Throws NumericalError if the
// fundamental shifts by more than 0.1% when the grid is doubled.
ModeSpectrum loaded_modes(const DensityProfile& profile, const SupportSpec& spec,
                          std::size_t m_max, const PhysicalConstants& pc = {});

double profile_mean_lambda(const DensityProfile& profile, double length_L);

}  // namespace phononbus
