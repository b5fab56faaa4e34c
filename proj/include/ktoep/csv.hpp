#pragma once

#include <cstdio>
#include <fstream>
#include <string>

namespace ktoep {

/// Line-oriented CSV writer with deterministic float formatting (%.17g):
/// identical inputs produce byte-identical files.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::string& header) : out_(path) {
        if (!out_) throw std::runtime_error("cannot open " + path);
        out_ << header << '\n';
    }

    CsvWriter& field(double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        sep();
        out_ << buf;
        return *this;
    }

    CsvWriter& field(long long x) {
        sep();
        out_ << x;
        return *this;
    }

    CsvWriter& field(int x) { return field(static_cast<long long>(x)); }

    CsvWriter& field(const std::string& s) {
        sep();
        out_ << s;
        return *this;
    }

    void end_row() {
        out_ << '\n';
        first_ = true;
    }

private:
    void sep() {
        if (!first_) out_ << ',';
        first_ = false;
    }

    std::ofstream out_;
    bool first_ = true;
};

}  // namespace ktoep
