#include "phononbus/exciton.hpp"

#include <gsl/gsl_sf_bessel.h>

#include <cmath>
#include <utility>

#include "phononbus/angular.hpp"
#include "phononbus/constants.hpp"
#include "phononbus/errors.hpp"
#include "phononbus/quadrature.hpp"

namespace phononbus {

namespace {

double jl(int l, double x) { return gsl_sf_bessel_jl(l, x); }

// Characteristic functions whose first positive root fixes the interior
// matching of the two-component envelopes.
double char_fn(EnvelopeKind kind, double beta, double x) {
    const double sb = std::sqrt(beta);
    if (kind == EnvelopeKind::S_type)
        return jl(0, x) * jl(2, sb * x) + jl(2, x) * jl(0, sb * x);
    return jl(1, x) * jl(3, sb * x) + (2.0 / 3.0) * jl(3, x) * jl(1, sb * x);
}

}  // namespace

double envelope_root(double beta, EnvelopeKind kind) {
    if (!(beta > 0.0 && beta < 1.0)) throw ConfigError("beta must lie in (0,1)");
    // Both functions rise from 0 like a power at the origin; scan past that
    // for the first sign change, then bisect.
    const double x_end = 4.0 * pi;
    const int steps = 4096;
    double prev_x = 0.05, prev_f = char_fn(kind, beta, prev_x);
    for (int i = 1; i <= steps; ++i) {
        double x = 0.05 + (x_end - 0.05) * static_cast<double>(i) / steps;
        double f = char_fn(kind, beta, x);
        if (prev_f == 0.0) return prev_x;
        if (prev_f * f < 0.0) {
            double lo = prev_x, hi = x, flo = prev_f;
            for (int it = 0; it < 200; ++it) {
                double mid = 0.5 * (lo + hi);
                double fm = char_fn(kind, beta, mid);
                if ((fm > 0.0) == (flo > 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
                if (hi - lo <= 1e-13 * lo) break;
            }
            return 0.5 * (lo + hi);
        }
        prev_x = x;
        prev_f = f;
    }
    throw NumericalError("envelope_root: no sign change in (0, 4*pi)");
}

double RadialEnvelope::component(int l, double u) const {
    const double sb = std::sqrt(beta);
    if (kind == EnvelopeKind::S_type) {
        if (l == 0)
            return norm_const * (jl(0, root_phi * u) - mixing * jl(0, sb * root_phi * u));
        if (l == 2)
            return norm_const * (jl(2, root_phi * u) + mixing * jl(2, sb * root_phi * u));
    } else {
        if (l == 1)
            return norm_const * (jl(1, root_phi * u) - mixing * jl(1, sb * root_phi * u));
        if (l == 3)
            return norm_const *
                   (jl(3, root_phi * u) + (2.0 / 3.0) * mixing * jl(3, sb * root_phi * u));
    }
    throw ConfigError("radial component l does not belong to this envelope kind");
}

RadialEnvelope build_envelope(double beta, EnvelopeKind kind) {
    RadialEnvelope env;
    env.kind = kind;
    env.beta = beta;
    env.root_phi = envelope_root(beta, kind);
    const double sb = std::sqrt(beta);
    const int la = (kind == EnvelopeKind::S_type) ? 0 : 1;
    const int lb = la + 2;
    env.mixing = jl(la, env.root_phi) / jl(la, sb * env.root_phi);
    env.norm_const = 1.0;
    double na = adaptive_simpson(
        [&](double u) {
            double f = env.component(la, u);
            return f * f * u * u;
        },
        0.0, 1.0, 1e-12);
    double nb = adaptive_simpson(
        [&](double u) {
            double f = env.component(lb, u);
            return f * f * u * u;
        },
        0.0, 1.0, 1e-12);
    env.norm_const = 1.0 / std::sqrt(na + nb);
    env.partial_norm[la] = na / (na + nb);
    env.partial_norm[lb] = nb / (na + nb);
    return env;
}

namespace {

struct HoleTerm {
    double c;
    int rad_l, Yl, Ym, mJ2;
};

// Band-edge hole spinors (l = 0+2 multiplet), tabulated weights.  Each
// angular-momentum block is separately unit-normalized, so the spinor norm
// is carried entirely by the radial partial norms.
std::vector<HoleTerm> hole_S(int mF2) {
    const double a = std::sqrt(2.0 / 5.0), b = std::sqrt(1.0 / 5.0);
    switch (mF2) {
        case +1:
            return {{-1.0, 0, 0, 0, +1}, {-a, 2, 2, +2, -3}, {-a, 2, 2, -1, +3},
                    {+b, 2, 2, 0, +1}};
        case -1:
            return {{-1.0, 0, 0, 0, -1}, {-a, 2, 2, -2, +3}, {-a, 2, 2, +1, -3},
                    {+b, 2, 2, 0, -1}};
        case +3:
            return {{-1.0, 0, 0, 0, +3}, {-a, 2, 2, +2, -1}, {+a, 2, 2, +1, +1},
                    {-b, 2, 2, 0, +3}};
        case -3:
            return {{-1.0, 0, 0, 0, -3}, {-a, 2, 2, -2, +1}, {+a, 2, 2, -1, -1},
                    {-b, 2, 2, 0, -3}};
    }
    throw ConfigError("hole_S: bad projection");
}

// Virtual-multiplet hole spinors (l = 1+3).
std::vector<HoleTerm> hole_P(int mF2) {
    switch (mF2) {
        case +3:
            return {{std::sqrt(2.0 / 5.0), 1, 1, 0, +3},
                    {std::sqrt(3.0 / 5.0), 1, 1, +1, +1},
                    {3.0 * std::sqrt(1.0 / 35.0), 3, 3, 0, +3},
                    {-0.5 * std::sqrt(7.0 / 5.0), 3, 3, +1, +1},
                    {std::sqrt(1.0 / 14.0), 3, 3, +2, -1},
                    {1.5 * std::sqrt(1.0 / 7.0), 3, 3, +3, -3}};
        case -3:
            return {{std::sqrt(2.0 / 5.0), 1, 1, 0, -3},
                    {std::sqrt(3.0 / 5.0), 1, 1, -1, -1},
                    {3.0 * std::sqrt(1.0 / 35.0), 3, 3, 0, -3},
                    {-0.5 * std::sqrt(7.0 / 5.0), 3, 3, -1, -1},
                    {std::sqrt(1.0 / 14.0), 3, 3, -2, +1},
                    {1.5 * std::sqrt(1.0 / 7.0), 3, 3, -3, +3}};
        case +1:
            return {{std::sqrt(1.0 / 10.0), 1, 1, -1, +3},
                    {std::sqrt(3.0 / 5.0), 1, 1, 0, +1},
                    {std::sqrt(3.0 / 10.0), 1, 1, +1, -1},
                    {3.0 * std::sqrt(3.0 / 70.0), 3, 3, -1, +3},
                    {-std::sqrt(6.0 / 35.0), 3, 3, 0, +1},
                    {-std::sqrt(1.0 / 70.0), 3, 3, +1, -1},
                    {std::sqrt(3.0 / 7.0), 3, 3, +2, -3}};
        case -1:
            return {{std::sqrt(1.0 / 10.0), 1, 1, +1, -3},
                    {std::sqrt(3.0 / 5.0), 1, 1, 0, -1},
                    {std::sqrt(3.0 / 10.0), 1, 1, -1, +1},
                    {3.0 * std::sqrt(3.0 / 70.0), 3, 3, +1, -3},
                    {-std::sqrt(6.0 / 35.0), 3, 3, 0, -1},
                    {-std::sqrt(1.0 / 70.0), 3, 3, -1, +1},
                    {std::sqrt(3.0 / 7.0), 3, 3, -2, +3}};
    }
    throw ConfigError("hole_P: bad projection");
}

void append_product(ExcitonState& st, std::complex<double> outer, int e_ms2,
                    const std::vector<HoleTerm>& hole) {
    for (const HoleTerm& h : hole) {
        ExcitonTerm t;
        t.coef = outer * h.c;
        t.e_ms2 = e_ms2;
        t.rad_l = h.rad_l;
        t.Yl = h.Yl;
        t.Ym = h.Ym;
        t.mJ2 = h.mJ2;
        // F_z bookkeeping must close for every product term.
        if (2 * t.Ym + t.mJ2 + t.e_ms2 != 2 * st.F_z)
            throw NumericalError("state table: F_z bookkeeping violated for " + st.label);
        st.terms.push_back(t);
    }
}

}  // namespace

double ExcitonState::norm() const {
    double n = 0.0;
    for (const auto& t : terms) {
        auto it = envelope->partial_norm.find(t.rad_l);
        if (it == envelope->partial_norm.end())
            throw NumericalError("state references a radial component foreign to its envelope");
        n += std::norm(t.coef) * it->second;
    }
    return n;
}

std::map<std::string, ExcitonState> build_states(const Material& material) {
    auto s_env = std::make_shared<RadialEnvelope>(
        build_envelope(material.beta, EnvelopeKind::S_type));
    auto p_env = std::make_shared<RadialEnvelope>(
        build_envelope(material.beta, EnvelopeKind::P_type));

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);

    std::map<std::string, ExcitonState> states;
    auto start = [&](const std::string& label, int Fz,
                     std::shared_ptr<const RadialEnvelope> env) {
        ExcitonState st;
        st.label = label;
        st.F_z = Fz;
        st.radius_R = material.dot_radius;
        st.beta = material.beta;
        st.envelope = std::move(env);
        return st;
    };

    {  // |1> and |2>: the stretched pair, single product each.
        ExcitonState st = start("1", -2, s_env);
        append_product(st, 1.0, -1, hole_S(-3));
        states["1"] = std::move(st);
    }
    {
        ExcitonState st = start("2", +2, s_env);
        append_product(st, 1.0, +1, hole_S(+3));
        states["2"] = std::move(st);
    }
    {  // |0>: dark lower F_z = 0 combination (symmetric sum).
        ExcitonState st = start("0", 0, s_env);
        append_product(st, inv_sqrt2, -1, hole_S(+1));
        append_product(st, inv_sqrt2, +1, hole_S(-1));
        states["0"] = std::move(st);
    }
    {  // Virtual F_z = -1 state of the l-odd multiplet.
        ExcitonState st = start("v-1", -1, p_env);
        append_product(st, -inv_sqrt3, +1, hole_P(-3));
        append_product(st, -std::sqrt(2.0) * inv_sqrt3, -1, hole_P(-1));
        states["v-1"] = std::move(st);
    }
    {
        ExcitonState st = start("v+1", +1, p_env);
        append_product(st, -inv_sqrt3, -1, hole_P(+3));
        append_product(st, -std::sqrt(2.0) * inv_sqrt3, +1, hole_P(+1));
        states["v+1"] = std::move(st);
    }
    return states;
}

namespace {

// integral( rho_a(u) rho_b(u) u^3 du ) over the unit ball — the hole radial
// factor of a dipole element, in units of the dot radius.
double radial_dipole_integral(const RadialEnvelope& ea, int la,
                              const RadialEnvelope& eb, int lb) {
    return adaptive_simpson(
        [&](double u) { return ea.component(la, u) * eb.component(lb, u) * u * u * u; },
        0.0, 1.0, 1e-12);
}

}  // namespace

std::complex<double> dipole_element_in_R(const ExcitonState& a, const ExcitonState& b,
                                         const Vec3c& pol) {
    if (a.radius_R != b.radius_R || a.beta != b.beta)
        throw ConfigError("dipole_element: states built over different R or beta");
    using C = std::complex<double>;
    const C i(0.0, 1.0);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    // conj(eps).r = sqrt(4pi/3) r [ w_{-1} Y_1^{-1} + w_0 Y_1^0 + w_{+1} Y_1^{+1} ]
    const C w[3] = {(std::conj(pol[0]) + i * std::conj(pol[1])) * inv_sqrt2,
                    std::conj(pol[2]),
                    (-std::conj(pol[0]) + i * std::conj(pol[1])) * inv_sqrt2};
    const double pref = std::sqrt(4.0 * pi / 3.0);

    std::map<std::pair<int, int>, double> rad_cache;
    auto rad = [&](int la, int lb) {
        auto key = std::make_pair(la, lb);
        auto it = rad_cache.find(key);
        if (it == rad_cache.end())
            it = rad_cache
                     .emplace(key, radial_dipole_integral(*a.envelope, la, *b.envelope, lb))
                     .first;
        return it->second;
    };

    // Electron piece: <Y00|Y1^mu|Y00> = 0 for every mu (parity), so only the
    // hole coordinate contributes; it enters with the minus of (r_e - r_h).
    C total = 0.0;
    for (const ExcitonTerm& ta : a.terms) {
        for (const ExcitonTerm& tb : b.terms) {
            if (ta.e_ms2 != tb.e_ms2 || ta.mJ2 != tb.mJ2) continue;
            const int mu = ta.Ym - tb.Ym;
            if (mu < -1 || mu > 1) continue;
            if (w[mu + 1] == C(0.0)) continue;
            const double g = directed_gaunt(ta.Yl, ta.Ym, 1, mu, tb.Yl, tb.Ym);
            if (g == 0.0) continue;
            total -= std::conj(ta.coef) * tb.coef * w[mu + 1] * pref * g *
                     rad(ta.rad_l, tb.rad_l);
        }
    }
    return total;
}

std::complex<double> dipole_element(const ExcitonState& a, const ExcitonState& b,
                                    const Vec3c& pol, double R) {
    if (!(R > 0.0)) throw ConfigError("dipole_element: R must be > 0");
    return dipole_element_in_R(a, b, pol) * R;
}

double diagonal_angular_element(const ExcitonState& state, int l, int m) {
    if (l < 0 || l > 4) throw ConfigError("diagonal_angular_element: l must be in [0,4]");
    if (std::abs(m) > l) throw ConfigError("diagonal_angular_element: |m| must be <= l");
    std::complex<double> sum = 0.0;
    for (const ExcitonTerm& ta : state.terms) {
        for (const ExcitonTerm& tb : state.terms) {
            if (ta.e_ms2 != tb.e_ms2 || ta.mJ2 != tb.mJ2) continue;
            // Hole-side harmonic; radial overlap deliberately set to 1.
            const double gh = directed_gaunt(ta.Yl, ta.Ym, l, m, tb.Yl, tb.Ym);
            if (gh != 0.0) sum += std::conj(ta.coef) * tb.coef * gh;
            // Electron-side harmonic: the electron orbital is Y00, so the
            // angular factor collapses to the monopole; hole parts must match.
            if (ta.rad_l == tb.rad_l && ta.Yl == tb.Yl && ta.Ym == tb.Ym) {
                const double ge = directed_gaunt(0, 0, l, m, 0, 0);
                if (ge != 0.0) sum += std::conj(ta.coef) * tb.coef * ge;
            }
        }
    }
    if (std::abs(sum.imag()) > 1e-12 * (1.0 + std::abs(sum.real())))
        throw NumericalError("diagonal_angular_element: non-real result");
    return sum.real();
}

}  // namespace phononbus
