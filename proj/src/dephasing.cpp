#include "phononbus/dephasing.hpp"

#include "phononbus/errors.hpp"

namespace phononbus {

double CouplingTable::at(const std::string& label, int l, int m) const {
    auto it = entries.find(Key{label, l, m});
    if (it == entries.end())
        throw ConfigError("coupling table has no entry for '" + label + "' l=" +
                          std::to_string(l) + " m=" + std::to_string(m));
    return it->second;
}

CouplingTable coupling_table(const std::map<std::string, ExcitonState>& states,
                             int l_max, const RadialScale& radial_scale) {
    if (l_max < 0 || l_max > 4)
        throw ConfigError("coupling_table: l_max must lie in [0,4]");
    CouplingTable table;
    table.l_max = l_max;
    for (int l = 0; l <= l_max; ++l) {
        const double scale = radial_scale ? radial_scale(l) : 1.0;
        if (!(scale > 0.0))
            throw ConfigError("coupling_table: radial scale must be > 0");
        for (const auto& [label, state] : states)
            for (int m = -l; m <= l; ++m)
                table.entries[CouplingTable::Key{label, l, m}] =
                    scale * diagonal_angular_element(state, l, m);
    }
    return table;
}

double distinguishability(const std::string& a, const std::string& b,
                          const CouplingTable& table) {
    double sum = 0.0;
    for (int l = 0; l <= table.l_max; ++l)
        for (int m = -l; m <= l; ++m) {
            const double d = table.at(a, l, m) - table.at(b, l, m);
            sum += d * d;
        }
    return sum;
}

}  // namespace phononbus
