#pragma once

#include <functional>
#include <map>
#include <string>

#include "phononbus/exciton.hpp"

namespace phononbus {

// Diagonal state-phonon angular couplings, per state and angular channel
// (l, m).  The radial factor of each channel is an opaque positive scale
// supplied by the caller (default 1); the testable selection structure —
// m = 0 only, +/-F_z degeneracy — is independent of it.
struct CouplingTable {
    struct Key {
        std::string label;
        int l = 0;
        int m = 0;
        bool operator<(const Key& o) const {
            if (label != o.label) return label < o.label;
            if (l != o.l) return l < o.l;
            return m < o.m;
        }
    };
    std::map<Key, double> entries;
    int l_max = 0;

    double at(const std::string& label, int l, int m) const;
};

using RadialScale = std::function<double(int l)>;

CouplingTable coupling_table(const std::map<std::string, ExcitonState>& states,
                             int l_max, const RadialScale& radial_scale = {});

// Dephasing-rate proxy: sum over (l,m) of |entry(a) - entry(b)|^2.
double distinguishability(const std::string& a, const std::string& b,
                          const CouplingTable& table);

}  // namespace phononbus
