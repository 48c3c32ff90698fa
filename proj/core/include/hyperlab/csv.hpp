// csv.hpp
// Deterministic CSV emission: fixed "%.12g" float formatting so identical
// runs produce byte-identical report files.
#pragma once

#include <cstdio>
#include <initializer_list>
#include <string>
#include <vector>

namespace hyperlab {

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (i) out_ += ',';
            out_ += header[i];
        }
        out_ += '\n';
        columns_ = header.size();
    }

    void row(std::initializer_list<double> values) {
        std::size_t i = 0;
        for (double v : values) {
            if (i++) out_ += ',';
            out_ += format_double(v);
        }
        out_ += '\n';
    }

    void row_strings(const std::vector<std::string>& values) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out_ += ',';
            out_ += values[i];
        }
        out_ += '\n';
    }

    const std::string& str() const { return out_; }
    std::size_t columns() const { return columns_; }

private:
    std::string out_;
    std::size_t columns_ = 0;
};

} // namespace hyperlab
