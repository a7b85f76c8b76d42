#pragma once

#include <cmath>
#include <cstddef>

#include "phononbus/errors.hpp"

namespace phononbus {

// Adaptive Simpson on [a,b] to absolute tolerance tol.  Integrands here are
// smooth (Bessel/trig products), so the classic 15x error estimate is safe.
template <typename F>
double adaptive_simpson(F&& f, double a, double b, double tol = 1e-10) {
    struct Impl {
        const F& f;
        std::size_t evals = 0;
        double simpson(double x0, double x2, double f0, double f1, double f2) const {
            return (x2 - x0) / 6.0 * (f0 + 4.0 * f1 + f2);
        }
        double recurse(double x0, double x2, double f0, double f1, double f2,
                       double whole, double tol, int depth) {
            double x1 = 0.5 * (x0 + x2);
            double xl = 0.5 * (x0 + x1), xr = 0.5 * (x1 + x2);
            double fl = f(xl), fr = f(xr);
            evals += 2;
            if (evals > 2000000)
                throw NumericalError("adaptive_simpson: evaluation budget exceeded");
            double left = simpson(x0, x1, f0, fl, f1);
            double right = simpson(x1, x2, f1, fr, f2);
            double err = left + right - whole;
            if (depth <= 0 || std::abs(err) <= 15.0 * tol)
                return left + right + err / 15.0;
            return recurse(x0, x1, f0, fl, f1, left, 0.5 * tol, depth - 1) +
                   recurse(x1, x2, f1, fr, f2, right, 0.5 * tol, depth - 1);
        }
    };
    Impl impl{f};
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = impl.simpson(a, b, fa, fm, fb);
    return impl.recurse(a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace phononbus
