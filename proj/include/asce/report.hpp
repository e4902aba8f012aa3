// SPDX-License-Identifier: Apache-2.0
//
// asce - adaptive sparse channel estimation for MIMO systems
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#ifndef ASCE_REPORT_HPP
#define ASCE_REPORT_HPP

#include "error.hpp"
#include "experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <tuple>
#include <vector>

namespace asce
{

inline constexpr std::string_view csv_header = "algorithm,snr_db,mu,k,nt,nr,iteration,avg_mse,avg_mse_db";

/// Shortest-round-trip-safe text for a double: 17 significant digits, '.' separator.
inline std::string format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    if (ec != std::errc{})
        throw IoError("format_double: conversion failed");
    return std::string(buf, end);
}

/// Compact form for parameter columns (shortest representation that round-trips).
inline std::string format_param(double v)
{
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{})
        throw IoError("format_param: conversion failed");
    return std::string(buf, end);
}

inline double parse_double(std::string_view s)
{
    if (s == "inf")
        return HUGE_VAL;
    if (s == "-inf")
        return -HUGE_VAL;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParameterError("not a number: '" + std::string(s) + "'");
    return v;
}

inline std::size_t parse_size(std::string_view s)
{
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParameterError("not a non-negative integer: '" + std::string(s) + "'");
    return v;
}

/// Long-format CSV, one row per (cell, iteration), rows sorted by cell key then iteration.
inline void write_csv(std::vector<MseTrace> traces, std::ostream &os)
{
    std::stable_sort(traces.begin(), traces.end(), [](const MseTrace &a, const MseTrace &b) { return a.key < b.key; });
    os << csv_header << '\n';
    for (const auto &t : traces)
    {
        const std::string prefix = std::string(to_string(t.key.algorithm)) + ',' + format_param(t.key.snr_db) + ',' +
                                   format_param(t.key.mu) + ',' + std::to_string(t.key.k) + ',' +
                                   std::to_string(t.key.nt) + ',' + std::to_string(t.key.nr) + ',';
        for (std::size_t i = 0; i < t.values.size(); ++i)
            os << prefix << i << ',' << format_double(t.values[i]) << ','
               << format_double(10.0 * std::log10(t.values[i])) << '\n';
    }
}

inline void emit_csv(const std::vector<MseTrace> &traces, const std::string &path)
{
    if (traces.empty())
        throw ParameterError("emit_csv: no traces");
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw IoError("cannot open '" + path + "' for writing");
    write_csv(traces, f);
    f.flush();
    if (!f)
        throw IoError("write to '" + path + "' failed");
}

/// Reads CSV produced by write_csv back into traces (run counts are not stored).
inline std::vector<MseTrace> parse_csv(std::istream &is)
{
    std::string line;
    if (!std::getline(is, line) || line != csv_header)
        throw ParameterError("parse_csv: missing or unexpected header");
    std::vector<MseTrace> out;
    while (std::getline(is, line))
    {
        if (line.empty())
            continue;
        std::vector<std::string_view> f;
        std::string_view rest = line;
        for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos; rest.remove_prefix(pos + 1))
            f.push_back(rest.substr(0, pos));
        f.push_back(rest);
        if (f.size() != 9)
            throw ParameterError("parse_csv: expected 9 fields in '" + line + "'");
        CellKey key{parse_algorithm(f[0]), parse_double(f[1]), parse_double(f[2]),
                    parse_size(f[3]),      parse_size(f[4]),   parse_size(f[5])};
        if (out.empty() || !(out.back().key == key))
            out.push_back(MseTrace{key, {}, 0, 0});
        if (parse_size(f[6]) != out.back().values.size())
            throw ParameterError("parse_csv: iterations out of order");
        out.back().values.push_back(parse_double(f[7]));
    }
    return out;
}

/// Per-cell steady-state table with an ordering verdict, plus the NLMS
/// K-insensitivity delta. Values within the same 0.1 dB bin are a tie.
inline std::string emit_summary(const std::vector<MseTrace> &traces, double tail_fraction = 0.2)
{
    using Cell = std::tuple<double, double, std::size_t, std::size_t, std::size_t>; // snr, mu, k, nt, nr
    std::map<Cell, std::vector<std::pair<double, const MseTrace *>>> cells;
    for (const auto &t : traces)
    {
        const double db = 10.0 * std::log10(steady_state_mse(t, tail_fraction));
        cells[{t.key.snr_db, t.key.mu, t.key.k, t.key.nt, t.key.nr}].emplace_back(db, &t);
    }

    auto bin = [](double db) { return std::llround(db * 10.0); };

    std::ostringstream os;
    os << std::fixed << std::setprecision(2);
    for (auto &[cell, rows] : cells)
    {
        const auto &[snr, mu, k, nt, nr] = cell;
        os << "cell snr_db=" << format_param(snr) << " mu=" << format_param(mu) << " k=" << k << " nt=" << nt
           << " nr=" << nr << '\n';
        os << "  " << std::left << std::setw(10) << "algorithm" << std::right << std::setw(16) << "steady_mse_db"
           << std::setw(8) << "runs" << std::setw(10) << "diverged" << '\n';
        for (const auto &[db, t] : rows)
            os << "  " << std::left << std::setw(10) << to_string(t->key.algorithm) << std::right << std::setw(16)
               << db << std::setw(8) << t->runs_used << std::setw(10) << t->runs_diverged << '\n';
        if (rows.size() > 1)
        {
            auto sorted = rows;
            std::stable_sort(sorted.begin(), sorted.end(), [&](const auto &a, const auto &b) {
                return bin(a.first) < bin(b.first);
            });
            os << "  verdict: ";
            for (std::size_t i = 0; i < sorted.size(); ++i)
            {
                if (i > 0)
                    os << (bin(sorted[i].first) == bin(sorted[i - 1].first) ? " = " : " < ");
                os << to_string(sorted[i].second->key.algorithm);
            }
            bool tie = false;
            for (std::size_t i = 1; i < sorted.size(); ++i)
                tie = tie || bin(sorted[i].first) == bin(sorted[i - 1].first);
            os << (tie ? " (tie at 0.1 dB resolution)" : "") << '\n';
        }
    }

    using Group = std::tuple<double, double, std::size_t, std::size_t>; // snr, mu, nt, nr
    std::map<Group, std::map<std::size_t, double>> nlms;
    for (const auto &t : traces)
        if (t.key.algorithm == Algorithm::nlms)
            nlms[{t.key.snr_db, t.key.mu, t.key.nt, t.key.nr}][t.key.k] =
                10.0 * std::log10(steady_state_mse(t, tail_fraction));
    for (const auto &[g, by_k] : nlms)
    {
        if (by_k.size() < 2)
            continue;
        const auto &[snr, mu, nt, nr] = g;
        double lo = by_k.begin()->second, hi = lo;
        os << "nlms K-insensitivity snr_db=" << format_param(snr) << " mu=" << format_param(mu) << " nt=" << nt
           << " nr=" << nr << ':';
        for (const auto &[k, db] : by_k)
        {
            os << " K=" << k << ' ' << db << " dB";
            lo = std::min(lo, db);
            hi = std::max(hi, db);
        }
        os << ", delta " << (hi - lo) << " dB\n";
    }
    return os.str();
}

/// Gnuplot template plotting every learning curve of a results CSV in dB.
inline std::string plot_script(const std::string &csv_path)
{
    std::ostringstream os;
    os << "# columns: " << csv_header << "\n"
       << "set datafile separator ','\n"
       << "set xlabel 'iteration'\n"
       << "set ylabel 'average MSE (dB)'\n"
       << "set key outside\n"
       << "csv = '" << csv_path << "'\n"
       << "# one curve per cell: filter rows by algorithm/snr_db/mu/k/nt/nr, e.g.\n"
       << "plot csv every ::1 using (strcol(1) eq 'nlms' && $2 == 10 && $3 == 0.5 && $4 == 1 ? $7 : 1/0):9 with lines "
          "title 'nlms', \\\n"
       << "     csv every ::1 using (strcol(1) eq 'lp_nlms' && $2 == 10 && $3 == 0.5 && $4 == 1 ? $7 : 1/0):9 with lines "
          "title 'lp_nlms', \\\n"
       << "     csv every ::1 using (strcol(1) eq 'l0_nlms' && $2 == 10 && $3 == 0.5 && $4 == 1 ? $7 : 1/0):9 with lines "
          "title 'l0_nlms'\n";
    return os.str();
}

} // namespace asce

#endif
