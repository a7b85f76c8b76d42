#include "phononbus/angular.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_coupling.h>

#include <cmath>

#include "phononbus/constants.hpp"
#include "phononbus/errors.hpp"

namespace phononbus {

namespace {
struct GslQuiet {
    GslQuiet() { gsl_set_error_handler_off(); }
} quiet_;  // selection-rule violations must return 0, not abort
}  // namespace

double wigner3j(int l1, int l2, int l3, int m1, int m2, int m3) {
    gsl_sf_result r;
    int status =
        gsl_sf_coupling_3j_e(2 * l1, 2 * l2, 2 * l3, 2 * m1, 2 * m2, 2 * m3, &r);
    if (status == GSL_EDOM) return 0.0;
    if (status != GSL_SUCCESS) throw NumericalError("wigner3j evaluation failed");
    return r.val;
}

double gaunt(int l1, int m1, int l2, int m2, int l3, int m3) {
    if (m1 + m2 + m3 != 0) return 0.0;
    double pref = std::sqrt((2.0 * l1 + 1) * (2.0 * l2 + 1) * (2.0 * l3 + 1) /
                            (4.0 * pi));
    return pref * wigner3j(l1, l2, l3, 0, 0, 0) * wigner3j(l1, l2, l3, m1, m2, m3);
}

double directed_gaunt(int l1, int m1, int L, int M, int l2, int m2) {
    double sign = (m1 % 2 == 0) ? 1.0 : -1.0;
    return sign * gaunt(l1, -m1, L, M, l2, m2);
}

}  // namespace phononbus
