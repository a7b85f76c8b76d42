#include "phononbus/gate_oracle.hpp"

#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <complex>
#include <sstream>

#include "phononbus/constants.hpp"
#include "phononbus/errors.hpp"

namespace phononbus {

namespace {

using State = std::vector<std::complex<double>>;
const std::complex<double> I(0.0, 1.0);

// Flattened product basis |d; n_1, n_2, ...>, dot index slowest.
struct Basis {
    std::size_t dot_levels = 0;
    std::vector<std::size_t> cap;  // states per mode = truncation + 1
    std::size_t dim = 0;

    explicit Basis(const OracleSystem& sys) {
        dot_levels = sys.dot_levels;
        dim = dot_levels;
        for (const auto& m : sys.phonon_modes) {
            cap.push_back(m.truncation + 1);
            dim *= m.truncation + 1;
        }
    }

    std::size_t index(std::size_t d, const std::vector<std::size_t>& n) const {
        std::size_t idx = d;
        for (std::size_t j = 0; j < cap.size(); ++j) idx = idx * cap[j] + n[j];
        return idx;
    }

    void decode(std::size_t idx, std::size_t& d, std::vector<std::size_t>& n) const {
        n.assign(cap.size(), 0);
        for (std::size_t j = cap.size(); j-- > 0;) {
            n[j] = idx % cap[j];
            idx /= cap[j];
        }
        d = idx;
    }

    std::string label(std::size_t d, const std::vector<std::size_t>& n) const {
        std::ostringstream os;
        os << 'q' << d << ';';
        for (std::size_t j = 0; j < n.size(); ++j) {
            if (j) os << ',';
            os << n[j];
        }
        return os.str();
    }
};

// One |1,n> <-> |0,n'> matrix element of the drive.
struct Link {
    std::size_t lo = 0, hi = 0;  // lo: dot 0 side, hi: dot 1 side
    double g = 0.0;
};

struct Rhs {
    double gamma = 0.0;
    bool counter_rotating = true;
    std::vector<double> delta;     // omega_m - omega_target
    std::vector<double> sum_freq;  // omega_m + omega_target
    std::vector<char> active;
    std::vector<std::vector<Link>> rot, cr;

    void operator()(const State& psi, State& dpsi, double t) const {
        const std::size_t dim = psi.size();
        dpsi.assign(dim, 0.0);
        if (gamma > 0.0)
            for (std::size_t i = 0; i < dim; ++i) dpsi[i] = -0.5 * gamma * psi[i];
        for (std::size_t m = 0; m < rot.size(); ++m) {
            if (!active[m]) continue;
            const std::complex<double> ph = std::exp(-I * (delta[m] * t));
            for (const Link& p : rot[m]) {
                dpsi[p.lo] += -I * p.g * ph * psi[p.hi];
                dpsi[p.hi] += -I * p.g * std::conj(ph) * psi[p.lo];
            }
            if (!counter_rotating) continue;
            const std::complex<double> pc = std::exp(I * (sum_freq[m] * t));
            for (const Link& p : cr[m]) {
                dpsi[p.lo] += -I * p.g * pc * psi[p.hi];
                dpsi[p.hi] += -I * p.g * std::conj(pc) * psi[p.lo];
            }
        }
    }
};

void check_system(const OracleSystem& sys) {
    if (sys.dot_levels < 2) throw ConfigError("oracle: need at least two dot levels");
    if (sys.phonon_modes.empty()) throw ConfigError("oracle: need at least one mode");
    for (const auto& m : sys.phonon_modes) {
        if (!(m.omega > 0.0)) throw ConfigError("oracle: mode frequency must be > 0");
        if (m.truncation < 2) throw ConfigError("oracle: mode truncation must be >= 2");
    }
    if (!(sys.omega2 > 0.0)) throw ConfigError("oracle: omega2 must be > 0");
    if (sys.detuning_target < 1 || sys.detuning_target > sys.phonon_modes.size())
        throw ConfigError("oracle: detuning_target out of range");
    if (!(sys.gamma >= 0.0)) throw ConfigError("oracle: gamma must be >= 0");
    if (!(sys.rel_tol > 0.0 && sys.abs_tol > 0.0))
        throw ConfigError("oracle: tolerances must be > 0");
    if (sys.n_samples < 2) throw ConfigError("oracle: need at least 2 samples");
}

}  // namespace

OracleResult simulate_sideband(const OracleSystem& sys, std::size_t pulse_k) {
    check_system(sys);
    if (pulse_k < 1) throw ConfigError("oracle: pulse_k must be >= 1");

    const Basis basis(sys);
    const std::size_t target = sys.detuning_target - 1;
    const std::size_t n_modes = sys.phonon_modes.size();

    Rhs rhs;
    rhs.gamma = sys.gamma;
    rhs.counter_rotating = sys.include_counter_rotating;
    rhs.rot.resize(n_modes);
    rhs.cr.resize(n_modes);
    for (std::size_t m = 0; m < n_modes; ++m) {
        rhs.delta.push_back(sys.phonon_modes[m].omega - sys.phonon_modes[target].omega);
        rhs.sum_freq.push_back(sys.phonon_modes[m].omega + sys.phonon_modes[target].omega);
        rhs.active.push_back(sys.include_offresonant || m == target);
    }

    std::vector<char> at_boundary(basis.dim, 0);
    std::vector<std::string> labels(basis.dim);
    {
        std::size_t d;
        std::vector<std::size_t> n;
        for (std::size_t i = 0; i < basis.dim; ++i) {
            basis.decode(i, d, n);
            labels[i] = basis.label(d, n);
            for (std::size_t j = 0; j < n_modes; ++j)
                if (n[j] + 1 == basis.cap[j]) at_boundary[i] = 1;
            if (d != 1) continue;
            for (std::size_t m = 0; m < n_modes; ++m) {
                if (n[m] + 1 < basis.cap[m]) {
                    auto up = n;
                    ++up[m];
                    rhs.rot[m].push_back(
                        {basis.index(0, up), i,
                         sys.omega2 * std::sqrt(static_cast<double>(n[m] + 1))});
                }
                if (n[m] > 0) {
                    auto dn = n;
                    --dn[m];
                    rhs.cr[m].push_back(
                        {basis.index(0, dn), i,
                         sys.omega2 * std::sqrt(static_cast<double>(n[m]))});
                }
            }
        }
    }

    const double T = static_cast<double>(pulse_k) * pi / (2.0 * sys.omega2);
    State psi(basis.dim, 0.0);
    std::vector<std::size_t> vac(n_modes, 0);
    psi[basis.index(1, vac)] = 1.0;

    OracleResult res;
    res.times.reserve(sys.n_samples);
    for (std::size_t i = 0; i < basis.dim; ++i)
        res.populations[labels[i]].reserve(sys.n_samples);
    res.norm2.reserve(sys.n_samples);

    auto record = [&](double t) {
        res.times.push_back(t);
        double total = 0.0, boundary = 0.0;
        for (std::size_t i = 0; i < basis.dim; ++i) {
            const double p = std::norm(psi[i]);
            res.populations[labels[i]].push_back(p);
            total += p;
            if (at_boundary[i]) boundary += p;
        }
        res.norm2.push_back(total);
        if (boundary > res.boundary_population_max) res.boundary_population_max = boundary;
    };

    namespace ode = boost::numeric::odeint;
    auto stepper =
        ode::make_controlled(sys.abs_tol, sys.rel_tol, ode::runge_kutta_dopri5<State>());
    auto system_fn = [&rhs](const State& x, State& dxdt, double t) { rhs(x, dxdt, t); };

    record(0.0);
    for (std::size_t k = 1; k < sys.n_samples; ++k) {
        const double t0 = T * static_cast<double>(k - 1) / (sys.n_samples - 1);
        const double t1 = T * static_cast<double>(k) / (sys.n_samples - 1);
        ode::integrate_adaptive(stepper, system_fn, psi, t0, t1, 0.1 * (t1 - t0));
        record(t1);
    }

    // Ideal pulse in the resonant two-state subspace:
    // cos(k pi/2)|1,vac> - i sin(k pi/2)|0,1_target>.
    auto one = vac;
    one[target] = 1;
    const double half = static_cast<double>(pulse_k) * pi / 2.0;
    std::complex<double> overlap = std::cos(half) * psi[basis.index(1, vac)] +
                                   std::conj(-I * std::sin(half)) * psi[basis.index(0, one)];
    res.achieved_operator_overlap = std::norm(overlap);

    if (res.boundary_population_max > 1e-4)
        throw NumericalError("oracle: truncation boundary reached population " +
                             std::to_string(res.boundary_population_max));
    return res;
}

std::vector<OffresonantPoint> scan_offresonant(const OracleSystem& system,
                                               const std::vector<double>& ratios) {
    if (!(system.omega1_s > 0.0)) throw ConfigError("scan: omega1_s must be > 0");
    OracleSystem sys = system;
    if (sys.phonon_modes.empty()) {
        // Adjacent pair of the harmonic ladder: the drive target and its
        // neighbour one fundamental away.
        OracleSystem::PhononMode a, b;
        a.omega = sys.omega1_s;
        b.omega = 2.0 * sys.omega1_s;
        sys.phonon_modes = {a, b};
    }
    if (sys.phonon_modes.size() != 2)
        throw ConfigError("scan: need exactly two modes");
    if (sys.detuning_target < 1 || sys.detuning_target > 2)
        throw ConfigError("scan: detuning_target out of range");
    const std::size_t target = sys.detuning_target - 1;
    const std::size_t other = 1 - target;
    const double delta =
        std::abs(sys.phonon_modes[other].omega - sys.phonon_modes[target].omega);

    std::vector<std::size_t> occ(2, 0);
    occ[other] = 1;
    const Basis naming(sys);
    const std::string spectator = naming.label(0, occ);

    std::vector<OffresonantPoint> out;
    out.reserve(ratios.size());
    for (double r : ratios) {
        if (!(r > 0.0)) throw ConfigError("scan: ratios must be > 0");
        sys.omega2 = r * sys.omega1_s;
        OracleResult res = simulate_sideband(sys, 1);
        const auto& p = res.populations.at(spectator);
        double mean = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            const double w = (i == 0 || i + 1 == p.size()) ? 0.5 : 1.0;
            mean += w * p[i];
        }
        mean /= static_cast<double>(p.size() - 1);

        OffresonantPoint pt;
        pt.ratio = r;
        pt.simulated_loss = mean;
        const double g = sys.omega2;
        pt.model_loss = 2.0 * g * g / (4.0 * g * g + delta * delta);
        out.push_back(pt);
    }
    return out;
}

}  // namespace phononbus
