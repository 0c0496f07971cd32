#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "cellpipe/errors.hpp"

namespace cellpipe {

// Minimal CSV writer with deterministic float formatting, so identical runs
// produce byte-identical files.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : out_(path, std::ios::trunc) {
        if (!out_) throw IoFailure("cannot open " + path + " for writing");
        path_ = path;
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
        if (!out_) throw IoFailure("write error on " + path_);
    }

    static std::string num(double v) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.10g", v);
        return buf;
    }
    static std::string num(std::size_t v) { return std::to_string(v); }
    static std::string num(int v) { return std::to_string(v); }
    static std::string num(std::uint32_t v) { return std::to_string(v); }

private:
    std::ofstream out_;
    std::string path_;
};

// Reads a CSV file into rows of cells (no quoting/escaping; our exports never
// need it). Empty lines are skipped.
std::vector<std::vector<std::string>> read_csv(const std::string& path);

}  // namespace cellpipe
