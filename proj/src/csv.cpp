#include "phononbus/csv.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include "phononbus/errors.hpp"

namespace phononbus {

void emit_csv(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open output file: " + path);
    f << content;
    f.flush();
    if (!f) throw IoError("write failed: " + path);
}

}  // namespace phononbus
