#ifndef LEVYHK_CSV_HPP
#define LEVYHK_CSV_HPP

#include <charconv>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "levyhk/common.hpp"

namespace levyhk {

// 17-significant-digit decimal text: the shortest representation that
// round-trips every double exactly, fixed width for byte-stable outputs.
inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& config_lines,
              const std::vector<std::string>& columns)
        : out_(path) {
        if (!out_) throw Error("io-failure", "cannot open output file: " + path);
        for (const auto& line : config_lines) out_ << "# " << line << "\n";
        for (std::size_t i = 0; i < columns.size(); ++i)
            out_ << (i ? "," : "") << columns[i];
        out_ << "\n";
        width_ = columns.size();
    }

    void row(const std::vector<double>& values) {
        if (values.size() != width_)
            throw InvalidParameter("csv row width mismatch");
        for (std::size_t i = 0; i < values.size(); ++i)
            out_ << (i ? "," : "") << format_number(values[i]);
        out_ << "\n";
    }

    void close() { out_.close(); }

private:
    std::ofstream out_;
    std::size_t width_ = 0;
};

}  // namespace levyhk

#endif
