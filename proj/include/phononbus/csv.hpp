#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace phononbus {

// Byte-deterministic CSV: one header line, %.17g numbers, '\n' endings,
// no locale involvement.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (i) out_ << ',';
            out_ << header[i];
        }
        out_ << '\n';
        columns_ = header.size();
    }

    static std::string format(double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return buf;
    }

    void row(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out_ << ',';
            out_ << format(values[i]);
        }
        out_ << '\n';
    }

    void row_mixed(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

    std::string str() const { return out_.str(); }
    std::size_t columns() const { return columns_; }

private:
    std::ostringstream out_;
    std::size_t columns_ = 0;
};

// Writes to path, or stdout when path is empty.  Throws IoError on failure.
void emit_csv(const std::string& path, const std::string& content);

}  // namespace phononbus
