#pragma once

#include <array>
#include <complex>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "phononbus/material.hpp"

namespace phononbus {

using Vec3c = std::array<std::complex<double>, 3>;

enum class EnvelopeKind { S_type, P_type };

// Two-component hole radial envelope on the unit ball (r in units of the dot
// radius).  S_type couples l = 0 and 2; P_type couples l = 1 and 3.  The
// stored profiles satisfy integral( (rho_a^2 + rho_b^2) u^2 du ) = 1, so
// physical envelopes are rho(r/R) / R^(3/2).
struct RadialEnvelope {
    EnvelopeKind kind = EnvelopeKind::S_type;
    double beta = 0.0;
    double root_phi = 0.0;    // first root of the characteristic equation
    double norm_const = 0.0;  // overall scale applied to the raw Bessel combo
    double mixing = 0.0;      // j(phi)/j(sqrt(beta) phi) interior-matching ratio
    // Partial norms: integral(rho_l^2 u^2 du) keyed by l (sums to 1).
    std::map<int, double> partial_norm;

    // rho_l(u), u in [0,1]; l must belong to the kind.
    double component(int l, double u) const;
};

// One product term c * |electron: Y0, ms> |hole: rho_l Y_l^m u_mJ>.
struct ExcitonTerm {
    std::complex<double> coef;
    int e_ms2 = 0;  // 2*ms of the electron spinor, +/-1
    int rad_l = 0;  // which envelope component carries the hole radial part
    int Yl = 0;     // hole envelope spherical harmonic
    int Ym = 0;
    int mJ2 = 0;    // 2*mJ of the hole Bloch function, in {-3,-1,+1,+3}
};

struct ExcitonState {
    std::string label;
    int F_z = 0;
    std::vector<ExcitonTerm> terms;
    double radius_R = 0.0;
    double beta = 0.0;
    std::shared_ptr<const RadialEnvelope> envelope;  // hole multiplet radials

    // Sum over terms of |c|^2 * partial radial norm — exciton norm.
    double norm() const;
};

// First positive root of the kind's characteristic equation:
//   S: j0(x) j2(sb x) + j2(x) j0(sb x) = 0
//   P: j1(x) j3(sb x) + (2/3) j3(x) j1(sb x) = 0,   sb = sqrt(beta).
// Bracketed bisection to 1e-12; throws NumericalError if no sign change is
// found in (0, 4*pi).
double envelope_root(double beta, EnvelopeKind kind);

RadialEnvelope build_envelope(double beta, EnvelopeKind kind);

// Band-edge qubit states "0", "1", "2" and the virtual states "v+1", "v-1",
// expanded to explicit product terms with fixed tabulated weights.
std::map<std::string, ExcitonState> build_states(const Material& material);

// <a| sum_i conj(pol_i) (r_e - r_h)_i |b>, in meters.  The electron piece
// vanishes by parity (S-type electron orbitals); the hole piece is a Gaunt
// sum against radial quadratures.  Throws ConfigError on mismatched R/beta.
std::complex<double> dipole_element(const ExcitonState& a, const ExcitonState& b,
                                    const Vec3c& polarization, double R);

// Same, in units of the dot radius.
std::complex<double> dipole_element_in_R(const ExcitonState& a, const ExcitonState& b,
                                         const Vec3c& polarization);

// Angular part of <state| Y_l^m(hole) + Y_l^m(electron) |state> with every
// radial overlap replaced by 1 — the quantity whose (in)equality across
// states drives the dephasing selection rules.
double diagonal_angular_element(const ExcitonState& state, int l, int m);

}  // namespace phononbus
