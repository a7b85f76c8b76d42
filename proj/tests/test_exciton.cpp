#include <doctest.h>

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <string>

#include "phononbus/constants.hpp"
#include "phononbus/errors.hpp"
#include "phononbus/exciton.hpp"
#include "phononbus/material.hpp"

using namespace phononbus;
using cd = std::complex<double>;

namespace {

const Vec3c kEps1 = {cd(1.0 / std::sqrt(2.0)), cd(0.0, -1.0 / std::sqrt(2.0)), cd(0.0)};
const Vec3c kEps2 = {cd(1.0 / std::sqrt(2.0)), cd(0.0, +1.0 / std::sqrt(2.0)), cd(0.0)};

Vec3c conjugated(const Vec3c& v) {
    return {std::conj(v[0]), std::conj(v[1]), std::conj(v[2])};
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * ((i % 2) ? 4.0 : 2.0);
    return acc * h / 3.0;
}

}  // namespace

TEST_CASE("confinement roots at beta = 0.2") {
    CHECK(envelope_root(0.2, EnvelopeKind::S_type) ==
          doctest::Approx(5.045172704768).epsilon(1e-9));
    CHECK(envelope_root(0.2, EnvelopeKind::P_type) ==
          doctest::Approx(6.376585094894).epsilon(1e-9));
    // Equal masses: the characteristic function degenerates to a product and
    // the first root collapses onto the first spherical-Bessel zero, pi.
    CHECK(envelope_root(0.999999, EnvelopeKind::S_type) ==
          doctest::Approx(pi).epsilon(1e-3));
    // Roots grow as the light hole gets lighter (stronger mixing).
    CHECK(envelope_root(0.1, EnvelopeKind::S_type) >
          envelope_root(0.3, EnvelopeKind::S_type));
}

TEST_CASE("radial envelopes: wall behaviour, regularity, normalization") {
    for (auto kind : {EnvelopeKind::S_type, EnvelopeKind::P_type}) {
        const RadialEnvelope env = build_envelope(0.2, kind);
        const int lo = (kind == EnvelopeKind::S_type) ? 0 : 1;
        const int hi = lo + 2;

        // The dominant component vanishes at the hard wall by construction;
        // for the S multiplet the characteristic equation kills both.
        CHECK(std::abs(env.component(lo, 1.0)) < 1e-9);
        if (kind == EnvelopeKind::S_type) CHECK(std::abs(env.component(hi, 1.0)) < 1e-9);

        // u^l regularity at the origin: the higher-l component must vanish.
        CHECK(std::abs(env.component(hi, 1e-9)) < 1e-12);

        // Unit norm over the ball, and consistent partial bookkeeping.
        const double I = simpson(
            [&](double u) {
                return (std::pow(env.component(lo, u), 2.0) +
                        std::pow(env.component(hi, u), 2.0)) * u * u;
            },
            0.0, 1.0, 4096);
        CHECK(I == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(env.partial_norm.at(lo) + env.partial_norm.at(hi) ==
              doctest::Approx(1.0).epsilon(1e-10));
        CHECK(env.partial_norm.at(lo) > 0.0);
        CHECK(env.partial_norm.at(hi) > 0.0);

        for (double u : {0.0, 0.3, 1.0}) {
            CHECK_THROWS_AS(env.component(lo + 1, u), ConfigError);
            CHECK_THROWS_AS(env.component(5, u), ConfigError);
        }
    }
}

TEST_CASE("band-edge and virtual states are normalized with fixed F_z") {
    const auto states = build_states(builtin_material("CdTe"));
    REQUIRE(states.size() == 5);
    CHECK(states.at("0").F_z == 0);
    CHECK(states.at("1").F_z == -2);
    CHECK(states.at("2").F_z == +2);
    CHECK(states.at("v-1").F_z == -1);
    CHECK(states.at("v+1").F_z == +1);
    for (const auto& [label, st] : states) {
        INFO("state ", label);
        CHECK(st.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(st.radius_R == 2e-9);
        CHECK(st.beta == 0.2);
        CHECK(!st.terms.empty());
    }
    // |1> and |2> are mirror images; |0> superposes both electron spins.
    CHECK(states.at("1").terms.size() == states.at("2").terms.size());
    CHECK(states.at("0").terms.size() == 2 * states.at("1").terms.size());
    CHECK(states.at("v-1").terms.size() == states.at("v+1").terms.size());
}

TEST_CASE("interband dipoles: frozen values and the fixed ratio") {
    const auto states = build_states(builtin_material("CdTe"));
    const cd d0 = dipole_element_in_R(states.at("v-1"), states.at("0"), kEps2);
    const cd d1 = dipole_element_in_R(states.at("v-1"), states.at("1"), kEps1);

    CHECK(std::abs(d0.imag()) < 1e-12);
    CHECK(std::abs(d1.imag()) < 1e-12);
    CHECK(d0.real() == doctest::Approx(-0.1614056452425264).epsilon(1e-10));
    CHECK(d1.real() == doctest::Approx(+0.0658935787414782).epsilon(1e-10));
    // The two arms share one radial quadrature and differ only by angular
    // recoupling, so their ratio is locked to -sqrt(6) for every beta.
    CHECK(d0.real() / d1.real() ==
          doctest::Approx(-std::sqrt(6.0)).epsilon(1e-12));

    // Mirror multiplet, mirror polarizations.
    const cd m0 = dipole_element_in_R(states.at("v+1"), states.at("0"), kEps1);
    const cd m1 = dipole_element_in_R(states.at("v+1"), states.at("2"), kEps2);
    CHECK(m0.real() == doctest::Approx(-d0.real()).epsilon(1e-12));
    CHECK(m1.real() == doctest::Approx(-d1.real()).epsilon(1e-12));
}

TEST_CASE("the ratio lock is beta-independent") {
    Material m = builtin_material("CdTe");
    for (double beta : {0.1, 0.35, 0.6}) {
        m.beta = beta;
        const auto states = build_states(m);
        const cd d0 = dipole_element_in_R(states.at("v-1"), states.at("0"), kEps2);
        const cd d1 = dipole_element_in_R(states.at("v-1"), states.at("1"), kEps1);
        INFO("beta = ", beta);
        CHECK(d0.real() / d1.real() ==
              doctest::Approx(-std::sqrt(6.0)).epsilon(1e-10));
    }
}

TEST_CASE("selection rules: intra-band and F_z-violating elements vanish") {
    const auto states = build_states(builtin_material("CdTe"));
    for (const auto* pol : {&kEps1, &kEps2}) {
        // Same-band pairs: parity kills every element.
        CHECK(std::abs(dipole_element_in_R(states.at("0"), states.at("1"), *pol)) < 1e-15);
        CHECK(std::abs(dipole_element_in_R(states.at("0"), states.at("2"), *pol)) < 1e-15);
        CHECK(std::abs(dipole_element_in_R(states.at("1"), states.at("2"), *pol)) < 1e-15);
        CHECK(std::abs(dipole_element_in_R(states.at("0"), states.at("0"), *pol)) < 1e-15);
        // F_z mismatch beyond +/-1 is unreachable for a dipole.
        CHECK(std::abs(dipole_element_in_R(states.at("v+1"), states.at("1"), *pol)) < 1e-15);
        CHECK(std::abs(dipole_element_in_R(states.at("v-1"), states.at("2"), *pol)) < 1e-15);
    }
    // Circular polarizations address one arm each: the crossed combinations
    // need the wrong helicity and drop out.
    CHECK(std::abs(dipole_element_in_R(states.at("v-1"), states.at("0"), kEps1)) < 1e-15);
    CHECK(std::abs(dipole_element_in_R(states.at("v-1"), states.at("1"), kEps2)) < 1e-15);
}

TEST_CASE("dipole elements are hermitian under bra/ket + conjugate-pol swap") {
    const auto states = build_states(builtin_material("CdTe"));
    for (const auto& pair : {std::pair<std::string, std::string>{"v-1", "0"},
                             {"v-1", "1"},
                             {"v+1", "2"}}) {
        for (const auto* pol : {&kEps1, &kEps2}) {
            const cd fwd = dipole_element_in_R(states.at(pair.first),
                                               states.at(pair.second), *pol);
            const cd rev = dipole_element_in_R(states.at(pair.second),
                                               states.at(pair.first), conjugated(*pol));
            CHECK(std::abs(fwd - std::conj(rev)) < 1e-12);
        }
    }
}

TEST_CASE("dipole_element scales linearly with the radius argument") {
    const auto states = build_states(builtin_material("CdTe"));
    const cd in_R = dipole_element_in_R(states.at("v-1"), states.at("0"), kEps2);
    const cd at_2nm = dipole_element(states.at("v-1"), states.at("0"), kEps2, 2e-9);
    const cd at_4nm = dipole_element(states.at("v-1"), states.at("0"), kEps2, 4e-9);
    CHECK(std::abs(at_2nm - 2e-9 * in_R) < 1e-24);
    CHECK(std::abs(at_4nm - 2.0 * at_2nm) < 1e-24);
    CHECK_THROWS_AS(dipole_element(states.at("v-1"), states.at("0"), kEps2, 0.0),
                    ConfigError);
    CHECK_THROWS_AS(dipole_element(states.at("v-1"), states.at("0"), kEps2, -1e-9),
                    ConfigError);
}

TEST_CASE("mixed-species matrix elements are rejected") {
    const auto cdte = build_states(builtin_material("CdTe"));
    Material other = builtin_material("CdTe");
    other.beta = 0.3;
    const auto mixed_beta = build_states(other);
    CHECK_THROWS_AS(
        dipole_element_in_R(cdte.at("v-1"), mixed_beta.at("0"), kEps2), ConfigError);

    other = builtin_material("CdTe");
    other.dot_radius = 3e-9;
    const auto mixed_R = build_states(other);
    CHECK_THROWS_AS(dipole_element_in_R(cdte.at("v-1"), mixed_R.at("0"), kEps2),
                    ConfigError);
}

TEST_CASE("diagonal angular elements: values and structure") {
    const auto states = build_states(builtin_material("CdTe"));

    // Monopole: every normalized state sees the same isotropic weight.
    const double mono = 2.0 / std::sqrt(pi);
    for (const auto& label : {"0", "1", "2"})
        CHECK(diagonal_angular_element(states.at(label), 0, 0) ==
              doctest::Approx(mono).epsilon(1e-12));

    // Quadrupole: the qubit pair |1>,|2> is exactly degenerate; |0> differs
    // in sign (opposite-sense hole alignment), same magnitude.
    const double q1 = diagonal_angular_element(states.at("1"), 2, 0);
    const double q2 = diagonal_angular_element(states.at("2"), 2, 0);
    const double q0 = diagonal_angular_element(states.at("0"), 2, 0);
    CHECK(q1 == doctest::Approx(0.252313252202016).epsilon(1e-12));
    CHECK(q1 == doctest::Approx(q2).epsilon(1e-14));
    CHECK(q0 == doctest::Approx(-q1).epsilon(1e-10));

    // Odd l vanishes by parity; l = 4 has no diagonal weight in this basis.
    for (const auto& label : {"0", "1", "2"}) {
        CHECK(std::abs(diagonal_angular_element(states.at(label), 1, 0)) < 1e-15);
        CHECK(std::abs(diagonal_angular_element(states.at(label), 3, 0)) < 1e-15);
        CHECK(std::abs(diagonal_angular_element(states.at(label), 4, 0)) < 1e-14);
    }

    // m != 0 diagonals vanish term by term (each product term has one sharp
    // angular momentum projection).
    for (int l = 1; l <= 4; ++l)
        for (int m = 1; m <= l; ++m) {
            CHECK(std::abs(diagonal_angular_element(states.at("1"), l, m)) < 1e-15);
            CHECK(std::abs(diagonal_angular_element(states.at("0"), l, -m)) < 1e-15);
        }

    CHECK_THROWS_AS(diagonal_angular_element(states.at("0"), 5, 0), ConfigError);
    CHECK_THROWS_AS(diagonal_angular_element(states.at("0"), -1, 0), ConfigError);
    CHECK_THROWS_AS(diagonal_angular_element(states.at("0"), 2, 3), ConfigError);
}
