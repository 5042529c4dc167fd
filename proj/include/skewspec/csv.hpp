#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <string>

#include "skewspec/types.hpp"

namespace skewspec {

// Shortest round-trip decimal form, so CSV output is deterministic and exact.
inline std::string csv_num(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string csv_num(std::int64_t v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string csv_num(int v) { return csv_num(static_cast<std::int64_t>(v)); }
inline std::string csv_num(std::uint64_t v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// Minimal writer: caller supplies complete rows, LF line endings throughout.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::string& header) : f_(path, std::ios::binary) {
        if (!f_) throw ConfigError("cannot write output file: " + path);
        f_ << header << "\n";
    }

    void row(const std::string& cells) { f_ << cells << "\n"; }

    ~CsvWriter() { f_.flush(); }

private:
    std::ofstream f_;
};

}  // namespace skewspec
