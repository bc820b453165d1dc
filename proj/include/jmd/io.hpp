/*
 * io.hpp — CSV and manifest plumbing for the CLI.
 *
 * CSV: comma-separated, UTF-8, decimal point, optional header row.
 * Values are printed with 17 significant digits so write-then-read is
 * exact for doubles. On read, a leading time column is recognized by a
 * header cell named "time" (case-insensitive) or, headerless, by a
 * strictly increasing first column with uniform spacing next to at
 * least one more column; it sets the sample rate and is not a channel.
 *
 * Manifest: plain key=value lines whose keys are the CLI flag names, so
 * a manifest doubles as a --config file for byte-identical reruns.
 * Result metadata rides along as '#' comments.
 */

#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jmd/core.hpp"

namespace jmd {

/// Raw parsed CSV: column-major values plus the header row if present.
struct CsvData {
    std::vector<std::string> header;            // empty if no header row
    std::vector<std::vector<double>> columns;   // each column has equal length
};

inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Writes columns side by side; header omitted when empty.
inline void write_csv(const std::string& path,
                      const std::vector<std::vector<double>>& columns,
                      const std::vector<std::string>& header = {}) {
    if (columns.empty()) throw std::invalid_argument("write_csv: no columns");
    const std::size_t n = columns.front().size();
    for (const auto& c : columns)
        if (c.size() != n) throw std::invalid_argument("write_csv: ragged columns");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    if (!header.empty()) {
        if (header.size() != columns.size())
            throw std::invalid_argument("write_csv: header size mismatch");
        for (std::size_t c = 0; c < header.size(); ++c)
            out << (c ? "," : "") << header[c];
        out << "\n";
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < columns.size(); ++c)
            out << (c ? "," : "") << format_g17(columns[c][i]);
        out << "\n";
    }
    if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

inline bool parse_double(const std::string& s, double& out) {
    const char* begin = s.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    if (end == begin) return false;
    while (*end != '\0') {
        if (!std::isspace(static_cast<unsigned char>(*end))) return false;
        ++end;
    }
    return true;
}

inline std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

}  // namespace detail

inline CsvData read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_csv: cannot open " + path);
    CsvData data;
    std::string line;
    bool first = true;
    std::size_t ncols = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto cells = detail::split_csv_line(line);
        if (first) {
            first = false;
            ncols = cells.size();
            // header row iff any cell fails to parse as a number
            bool all_numeric = true;
            std::vector<double> row(ncols);
            for (std::size_t c = 0; c < ncols; ++c)
                if (!detail::parse_double(cells[c], row[c])) {
                    all_numeric = false;
                    break;
                }
            data.columns.resize(ncols);
            if (all_numeric) {
                for (std::size_t c = 0; c < ncols; ++c) data.columns[c].push_back(row[c]);
            } else {
                data.header = cells;
            }
            continue;
        }
        if (cells.size() != ncols)
            throw std::runtime_error("read_csv: ragged row in " + path);
        for (std::size_t c = 0; c < ncols; ++c) {
            double v;
            if (!detail::parse_double(cells[c], v))
                throw std::runtime_error("read_csv: malformed number '" + cells[c] +
                                         "' in " + path);
            data.columns[c].push_back(v);
        }
    }
    if (data.columns.empty() || data.columns.front().empty())
        throw std::runtime_error("read_csv: no data rows in " + path);
    return data;
}

/// Interprets parsed CSV as a multichannel signal, honoring a leading
/// time column when detected.
inline Signal signal_from_csv(const CsvData& data) {
    bool time_col = false;
    double sample_rate = 1.0;
    const auto& cols = data.columns;

    if (!data.header.empty() && detail::lower(data.header.front()) == "time" &&
        cols.size() >= 2) {
        time_col = true;
    } else if (data.header.empty() && cols.size() >= 2 && cols.front().size() >= 3) {
        const auto& t = cols.front();
        bool increasing = true;
        double min_step = 0.0, max_step = 0.0;
        for (std::size_t i = 1; i < t.size(); ++i) {
            const double step = t[i] - t[i - 1];
            if (step <= 0.0) {
                increasing = false;
                break;
            }
            if (i == 1) {
                min_step = max_step = step;
            } else {
                min_step = std::min(min_step, step);
                max_step = std::max(max_step, step);
            }
        }
        if (increasing && max_step - min_step <= 1e-6 * max_step) time_col = true;
    }

    if (time_col) {
        const auto& t = cols.front();
        const double span = t.back() - t.front();
        if (span > 0.0) sample_rate = static_cast<double>(t.size() - 1) / span;
    }

    Signal sig;
    sig.sample_rate = sample_rate;
    for (std::size_t c = time_col ? 1 : 0; c < cols.size(); ++c) {
        sig.channels.push_back(cols[c]);
        if (!data.header.empty() && c < data.header.size())
            sig.labels.push_back(data.header[c]);
    }
    if (sig.channels.empty()) throw std::runtime_error("signal_from_csv: no channel columns");
    return sig;
}

/// key=value manifest with '#' metadata comments.
inline void write_manifest(const std::string& path,
                           const std::vector<std::pair<std::string, std::string>>& comments,
                           const std::vector<std::pair<std::string, std::string>>& entries) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_manifest: cannot open " + path);
    for (const auto& [k, v] : comments) out << "# " << k << "=" << v << "\n";
    for (const auto& [k, v] : entries) out << k << "=" << v << "\n";
    if (!out) throw std::runtime_error("write_manifest: write failed for " + path);
}

/// Reads the key=value pairs (comments skipped).
inline std::vector<std::pair<std::string, std::string>> read_manifest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_manifest: cannot open " + path);
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("read_manifest: malformed line '" + line + "'");
        out.emplace_back(line.substr(0, eq), line.substr(eq + 1));
    }
    return out;
}

}  // namespace jmd
