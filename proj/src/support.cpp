#include "phononbus/support.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "phononbus/errors.hpp"
#include "phononbus/quadrature.hpp"

namespace phononbus {

const Mode& ModeSpectrum::at(std::size_t m) const {
    if (m < 1 || m > modes.size())
        throw NumericalError("mode index " + std::to_string(m) + " out of range (1.." +
                             std::to_string(modes.size()) + ")");
    return modes[m - 1];
}

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0)) throw ConfigError(std::string(what) + " must be > 0");
}

void check_string_spec(const SupportSpec& spec) {
    if (spec.kind != SupportKind::String)
        throw ConfigError("support kind must be String for this operation");
    require_positive(spec.length_L, "length_L");
    require_positive(spec.linear_density_lambda, "linear_density_lambda");
    require_positive(spec.tension, "tension");
    require_positive(spec.unit_length_l, "unit_length_l");
}

}  // namespace

ModeSpectrum string_spectrum(const SupportSpec& spec, std::size_t m_max,
                             const PhysicalConstants& pc) {
    check_string_spec(spec);
    if (m_max < 1) throw ConfigError("m_max must be >= 1");

    const double L = spec.length_L;
    const double lam = spec.linear_density_lambda;
    const double l = spec.unit_length_l;
    const double wave_speed = std::sqrt(spec.tension / lam);

    ModeSpectrum s;
    s.length_L = L;
    s.total_mass_M = lam * L;
    s.modes.reserve(m_max);
    for (std::size_t m = 1; m <= m_max; ++m) {
        Mode mode;
        mode.m = m;
        mode.k = static_cast<double>(m) * pi / L;
        mode.omega = wave_speed * mode.k;
        mode.q0 = std::sqrt(pc.hbar / (2.0 * lam * l * mode.omega));
        s.modes.push_back(mode);
    }
    const double amp = std::sqrt(2.0 * l / L);
    s.shape = [L, amp](std::size_t m, double x) {
        return amp * std::sin(static_cast<double>(m) * pi * x / L);
    };
    return s;
}

double rod_root(std::size_t m) {
    if (m < 1) throw ConfigError("rod_root: m must be >= 1");
    // cos(x)cosh(x) = 1 rewritten as cos(x) - sech(x) = 0: bounded, and it
    // changes sign once across (m*pi, (m+1)*pi) because sech is tiny there.
    auto f = [](double x) { return std::cos(x) - 1.0 / std::cosh(x); };
    double lo = static_cast<double>(m) * pi;
    double hi = static_cast<double>(m + 1) * pi;
    double flo = f(lo);
    if (f(hi) * flo > 0.0) throw NumericalError("rod_root: bracket failed");
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
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

namespace {

// Clamped-clamped eigenfunction evaluated without cosh/sinh cancellation:
//   phi(xi) = (cosh xi - cos xi) - sigma (sinh xi - sin xi),
//   sigma   = (cosh x - cos x)/(sinh x - sin x) at the root x.
// Rewritten with v = (cos x - sin x - e^-x)/(1 - e^-2x - 2 sin(x) e^-x) so
// that the growing exponential enters only as e^(xi - x) <= 1.
struct RodShape {
    double x;  // root k*L
    double v, w;
    explicit RodShape(double root) : x(root) {
        const double em = std::exp(-x);
        const double denom = 1.0 - em * em - 2.0 * std::sin(x) * em;
        v = (std::cos(x) - std::sin(x) - em) / denom;
        w = v * em;
    }
    double operator()(double xi) const {
        return v * std::exp(xi - x) + (1.0 - w) * std::exp(-xi) - std::cos(xi) +
               (1.0 - 2.0 * w) * std::sin(xi);
    }
};

}  // namespace

ModeSpectrum rod_spectrum(const SupportSpec& spec, std::size_t m_max,
                          const PhysicalConstants& pc) {
    if (spec.kind != SupportKind::Rod)
        throw ConfigError("support kind must be Rod for rod_spectrum");
    require_positive(spec.length_L, "length_L");
    require_positive(spec.linear_density_lambda, "linear_density_lambda");
    require_positive(spec.stiffness, "stiffness");
    require_positive(spec.unit_length_l, "unit_length_l");
    if (m_max < 1) throw ConfigError("m_max must be >= 1");

    const double L = spec.length_L;
    const double lam = spec.linear_density_lambda;
    const double l = spec.unit_length_l;
    const double sq_stiff = std::sqrt(spec.stiffness);

    auto shapes = std::make_shared<std::vector<RodShape>>();
    auto norms = std::make_shared<std::vector<double>>();  // N_m
    shapes->reserve(m_max);

    ModeSpectrum s;
    s.length_L = L;
    s.total_mass_M = lam * L;
    for (std::size_t m = 1; m <= m_max; ++m) {
        const double x_m = rod_root(m);
        Mode mode;
        mode.m = m;
        mode.k = x_m / L;
        mode.omega = mode.k * mode.k * sq_stiff;
        mode.q0 = std::sqrt(pc.hbar / (2.0 * lam * l * mode.omega));
        s.modes.push_back(mode);

        RodShape phi(x_m);
        // integral over [0,L] of phi(kx)^2 dx = (L/x_m) integral phi^2 dxi.
        double I = adaptive_simpson([&phi](double xi) { return phi(xi) * phi(xi); },
                                    0.0, x_m, 1e-12 * x_m) *
                   (L / x_m);
        shapes->push_back(phi);
        // Modal mass lambda*l, the same convention the q0 formula assumes
        // (the homogeneous-string shape sqrt(2l/L)*sin integrates to l).
        norms->push_back(std::sqrt(l / I));
    }
    s.shape = [shapes, norms, L](std::size_t m, double x) {
        const RodShape& phi = shapes->at(m - 1);
        return norms->at(m - 1) * phi(phi.x * x / L);
    };
    return s;
}

double dot_modal_displacement(const ModeSpectrum& spectrum, std::size_t m, double x) {
    const Mode& mode = spectrum.at(m);
    if (x < 0.0 || x > spectrum.length_L)
        throw NumericalError("dot position outside the support");
    return spectrum.shape(m, x) * mode.q0;
}

double modal_displacement_scale(const ModeSpectrum& spectrum, std::size_t m,
                                const PhysicalConstants& pc) {
    return std::sqrt(pc.hbar / (spectrum.total_mass_M * spectrum.at(m).omega));
}

double profile_mean_lambda(const DensityProfile& profile, double length_L) {
    double mass = profile.base_lambda * length_L;
    for (const auto& inc : profile.increments)
        mass += 2.0 * inc.half_width * inc.added_lambda;
    return mass / length_L;
}

namespace {

void check_profile(const DensityProfile& profile, double L) {
    require_positive(profile.base_lambda, "base_lambda");
    if (profile.grid_points < 1000)
        throw ConfigError("grid_points must be >= 1000 for the loaded-mode solve");
    std::vector<std::pair<double, double>> spans;
    for (const auto& inc : profile.increments) {
        require_positive(inc.half_width, "increment half_width");
        if (!(inc.added_lambda > 0)) throw ConfigError("added_lambda must be > 0");
        double a = inc.center - inc.half_width, b = inc.center + inc.half_width;
        if (!(a > 0.0 && b < L))
            throw ConfigError("density increment must lie strictly inside (0, L)");
        spans.emplace_back(a, b);
    }
    std::sort(spans.begin(), spans.end());
    for (std::size_t i = 1; i < spans.size(); ++i)
        if (spans[i].first < spans[i - 1].second)
            throw ConfigError("density increments must not overlap");
}

// Cell-averaged density at interior node i (exact for step profiles, keeps
// the added mass second-order correct regardless of grid alignment).
std::vector<double> sample_density(const DensityProfile& profile, double L,
                                   std::size_t n, double h) {
    std::vector<double> lam(n, profile.base_lambda);
    for (std::size_t i = 0; i < n; ++i) {
        const double xl = (static_cast<double>(i) + 0.5) * h;
        const double xr = xl + h;  // cell around node x_i = (i+1)h
        for (const auto& inc : profile.increments) {
            const double a = inc.center - inc.half_width;
            const double b = inc.center + inc.half_width;
            const double overlap = std::max(0.0, std::min(xr, b) - std::max(xl, a));
            lam[i] += inc.added_lambda * overlap / h;
        }
    }
    (void)L;
    return lam;
}

// Number of eigenvalues of the symmetric tridiagonal (diag a, off b) below
// sigma, via the LDL^T sturm sequence.
std::size_t sturm_count(const std::vector<double>& a, const std::vector<double>& b,
                        double sigma) {
    std::size_t count = 0;
    double d = 1.0;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        double off = (i == 0) ? 0.0 : b[i - 1];
        d = a[i] - sigma - off * off / d;
        if (d == 0.0) d = -1e-300;
        if (d < 0.0) ++count;
    }
    return count;
}

double sturm_eigenvalue(const std::vector<double>& a, const std::vector<double>& b,
                        std::size_t index_1based) {
    double hi = 0.0;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        double r = a[i];
        if (i > 0) r += std::abs(b[i - 1]);
        if (i + 1 < n) r += std::abs(b[i]);
        hi = std::max(hi, r);
    }
    double lo = 0.0;
    for (int it = 0; it < 220; ++it) {
        double mid = 0.5 * (lo + hi);
        if (sturm_count(a, b, mid) >= index_1based)
            hi = mid;
        else
            lo = mid;
        if (hi - lo <= 1e-14 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

// Solve (T - sigma I) x = rhs, T tridiagonal, via the Thomas recurrence with
// a tiny-pivot guard (the solve is intentionally near-singular).
void shifted_solve(const std::vector<double>& a, const std::vector<double>& b,
                   double sigma, std::vector<double>& x) {
    const std::size_t n = a.size();
    std::vector<double> diag(n), rhs = x;
    for (std::size_t i = 0; i < n; ++i) diag[i] = a[i] - sigma;
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(diag[i - 1]) < 1e-280)
            diag[i - 1] = (diag[i - 1] < 0 ? -1e-280 : 1e-280);
        const double w = b[i - 1] / diag[i - 1];
        diag[i] -= w * b[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    if (std::abs(diag[n - 1]) < 1e-280)
        diag[n - 1] = (diag[n - 1] < 0 ? -1e-280 : 1e-280);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] = (rhs[i] - b[i] * x[i + 1]) / diag[i];
    }
}

struct LoadedSolve {
    std::vector<double> omegas;
    std::vector<std::vector<double>> shapes_u;  // physical displacement u_i
    double h = 0.0;
};

LoadedSolve solve_loaded(const DensityProfile& profile, const SupportSpec& spec,
                         std::size_t m_max, std::size_t n) {
    const double L = spec.length_L;
    const double h = L / static_cast<double>(n + 1);
    const double theta = spec.tension;
    const std::vector<double> lam = sample_density(profile, L, n, h);

    // Symmetrized operator B = D^-1/2 A D^-1/2 with A the fixed-end FD
    // Laplacian scaled by theta/h^2: eigenvalues are omega^2.
    std::vector<double> a(n), b(n - 1);
    const double s = theta / (h * h);
    for (std::size_t i = 0; i < n; ++i) a[i] = 2.0 * s / lam[i];
    for (std::size_t i = 0; i + 1 < n; ++i)
        b[i] = -s / std::sqrt(lam[i] * lam[i + 1]);

    LoadedSolve out;
    out.h = h;
    std::vector<std::vector<double>> vs;
    for (std::size_t m = 1; m <= m_max; ++m) {
        const double mu = sturm_eigenvalue(a, b, m);
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i)
            v[i] = std::sin(static_cast<double>(m) * pi *
                            static_cast<double>(i + 1) / static_cast<double>(n + 1));
        for (int iter = 0; iter < 4; ++iter) {
            shifted_solve(a, b, mu, v);
            for (const auto& prev : vs) {
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i) dot += v[i] * prev[i];
                for (std::size_t i = 0; i < n; ++i) v[i] -= dot * prev[i];
            }
            double nrm = 0.0;
            for (double vi : v) nrm += vi * vi;
            nrm = std::sqrt(nrm);
            if (!(nrm > 0.0)) throw NumericalError("inverse iteration collapsed");
            for (double& vi : v) vi /= nrm;
        }
        vs.push_back(v);
        std::vector<double> u(n);
        for (std::size_t i = 0; i < n; ++i) u[i] = v[i] / std::sqrt(lam[i]);
        out.omegas.push_back(std::sqrt(mu));
        out.shapes_u.push_back(std::move(u));
    }
    return out;
}

}  // namespace

ModeSpectrum loaded_modes(const DensityProfile& profile, const SupportSpec& spec,
                          std::size_t m_max, const PhysicalConstants& pc) {
    check_string_spec(spec);
    if (m_max < 1) throw ConfigError("m_max must be >= 1");
    check_profile(profile, spec.length_L);

    const double L = spec.length_L;
    const double l = spec.unit_length_l;
    const double mean_lam = profile_mean_lambda(profile, L);

    LoadedSolve coarse = solve_loaded(profile, spec, m_max, profile.grid_points);
    LoadedSolve fine = solve_loaded(profile, spec, 1, 2 * profile.grid_points);
    const double shift = std::abs(coarse.omegas[0] - fine.omegas[0]) / fine.omegas[0];
    if (shift > 1e-3)
        throw NumericalError("loaded_modes: grid too coarse (fundamental moved " +
                             std::to_string(shift * 100) + "% on refinement)");

    // Rescale to modal mass integral(c^2 lambda dx) = mean_lambda * l — the
    // convention the q0 formula assumes — then fix the sign gauge: positive
    // leaving the left clamp, the sin(kx) convention.  (The largest lobe is
    // no anchor: antisymmetric modes have two lobes equal to rounding.)
    const std::size_t n = profile.grid_points;
    const double h = coarse.h;
    const std::vector<double> lam = sample_density(profile, L, n, h);
    ModeSpectrum s;
    s.length_L = L;
    s.total_mass_M = mean_lam * L;
    auto shapes = std::make_shared<std::vector<std::vector<double>>>();
    for (std::size_t m = 0; m < m_max; ++m) {
        std::vector<double>& u = coarse.shapes_u[m];
        double wsum = 0.0;
        for (std::size_t i = 0; i < n; ++i) wsum += lam[i] * u[i] * u[i];
        wsum *= h;
        const double target = l * mean_lam;
        double scale = std::sqrt(target / wsum);
        double peak = 0.0;
        for (double ui : u)
            if (std::abs(ui) > std::abs(peak)) peak = ui;
        double lead = 0.0;
        for (double ui : u)
            if (std::abs(ui) > 1e-3 * std::abs(peak)) {
                lead = ui;
                break;
            }
        if (lead < 0.0) scale = -scale;
        for (double& ui : u) ui *= scale;

        Mode mode;
        mode.m = m + 1;
        mode.omega = coarse.omegas[m];
        mode.k = static_cast<double>(m + 1) * pi / L;  // nominal label only
        mode.q0 = std::sqrt(pc.hbar / (2.0 * l * mean_lam * mode.omega));
        s.modes.push_back(mode);
        shapes->push_back(u);
    }
    // Piecewise-linear through (0,0), (ih, u[i-1]), (L,0).
    s.shape = [shapes, h, L, n](std::size_t m, double x) {
        const std::vector<double>& u = shapes->at(m - 1);
        if (x <= 0.0 || x >= L) return 0.0;
        double t = x / h;
        std::size_t seg = static_cast<std::size_t>(t);  // in [0, n]
        if (seg > n) seg = n;
        const double frac = t - static_cast<double>(seg);
        const double ul = (seg == 0) ? 0.0 : u[seg - 1];
        const double ur = (seg >= n) ? 0.0 : u[seg];
        return ul + (ur - ul) * frac;
    };
    return s;
}

}  // namespace phononbus
