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


#ifndef ASCE_CLI_HPP
#define ASCE_CLI_HPP

#include "error.hpp"
#include "experiment.hpp"
#include "report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace asce::cli
{

inline constexpr std::string_view tool_version = "1.0.0";

enum ExitCode : int
{
    exit_ok = 0,
    exit_usage = 1,
    exit_io = 2,
    exit_diverged = 3
};

class UsageError : public ConfigError
{
public:
    using ConfigError::ConfigError;
};

struct Options
{
    ExperimentConfig config;
    std::optional<std::string> config_path;
    std::optional<std::string> out;
    std::optional<std::string> plot_script;
    bool summary = false;
};

using Settings = std::vector<std::pair<std::string, std::string>>;

namespace detail
{
inline std::vector<std::string_view> split_list(std::string_view s)
{
    std::vector<std::string_view> out;
    while (true)
    {
        const auto pos = s.find(',');
        auto item = s.substr(0, pos);
        while (!item.empty() && item.front() == ' ')
            item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ')
            item.remove_suffix(1);
        if (!item.empty())
            out.push_back(item);
        if (pos == std::string_view::npos)
            break;
        s.remove_prefix(pos + 1);
    }
    return out;
}

template <class F>
auto parse_list(std::string_view value, F &&parse)
{
    std::vector<decltype(parse(std::string_view{}))> out;
    for (auto item : split_list(value))
        out.push_back(parse(item));
    return out;
}

inline std::string join_doubles(const std::vector<double> &v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + format_double(v[i]);
    return s;
}

inline std::string join_sizes(const std::vector<std::size_t> &v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

inline std::string trim(std::string s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}
} // namespace detail

/// Keys accepted in config files and manifests; each matches a CLI flag name.
inline const std::vector<std::string> &setting_keys()
{
    static const std::vector<std::string> keys{"algorithms", "nt",         "nr",        "length", "k",
                                               "snr-db",     "mu",         "lambda-lp", "lambda-l0", "p",
                                               "epsilon",    "beta",       "runs",      "iterations", "seed",
                                               "generator",  "fading-period", "workers"};
    return keys;
}

/// Applies one key=value setting; errors name the offending key.
inline void apply_setting(ExperimentConfig &cfg, const std::string &key, const std::string &value)
{
    using namespace detail;
    try
    {
        auto positive_double = [&](std::string_view s) {
            const double v = parse_double(s);
            if (!(v > 0.0) || !std::isfinite(v))
                throw ParameterError("must be positive");
            return v;
        };
        auto non_negative_double = [&](std::string_view s) {
            const double v = parse_double(s);
            if (!(v >= 0.0) || !std::isfinite(v))
                throw ParameterError("must be non-negative");
            return v;
        };
        auto positive_size = [&](std::string_view s) {
            const auto v = parse_size(s);
            if (v == 0)
                throw ParameterError("must be positive");
            return v;
        };
        auto need_items = [&](const auto &list) {
            if (list.empty())
                throw ParameterError("empty list");
            return list;
        };

        if (key == "algorithms")
            cfg.algorithms = need_items(parse_list(value, parse_algorithm));
        else if (key == "nt")
            cfg.nt = need_items(parse_list(value, positive_size));
        else if (key == "nr")
            cfg.nr = need_items(parse_list(value, positive_size));
        else if (key == "length")
            cfg.length = positive_size(value);
        else if (key == "k")
            cfg.sparsity = need_items(parse_list(value, positive_size));
        else if (key == "snr-db")
            cfg.snr_db = need_items(parse_list(value, [](std::string_view s) {
                const double v = parse_double(s);
                if (!std::isfinite(v))
                    throw ParameterError("must be finite");
                return v;
            }));
        else if (key == "mu")
            cfg.mu = need_items(parse_list(value, positive_double));
        else if (key == "lambda-lp")
            cfg.lambda_lp_scale = non_negative_double(value);
        else if (key == "lambda-l0")
            cfg.lambda_l0_scale = non_negative_double(value);
        else if (key == "p")
            cfg.p = positive_double(value);
        else if (key == "epsilon")
            cfg.epsilon = positive_double(value);
        else if (key == "beta")
            cfg.beta = positive_double(value);
        else if (key == "runs")
            cfg.runs = positive_size(value);
        else if (key == "iterations")
            cfg.iterations = positive_size(value);
        else if (key == "seed")
            cfg.seed = parse_size(value);
        else if (key == "generator")
            cfg.generator = parse_training_kind(value);
        else if (key == "fading-period")
            cfg.fading_period = parse_size(value);
        else if (key == "workers")
            cfg.workers = positive_size(value);
        else
            throw UsageError("unknown setting '" + key + "'");
    }
    catch (const UsageError &)
    {
        throw;
    }
    catch (const std::exception &e)
    {
        throw UsageError("invalid value for '" + key + "' ('" + value + "'): " + e.what());
    }
}

/// Canonical settings that reproduce `cfg` exactly (workers excluded: it never affects results).
inline Settings to_settings(const ExperimentConfig &cfg)
{
    using namespace detail;
    std::string algs;
    for (std::size_t i = 0; i < cfg.algorithms.size(); ++i)
        algs += (i ? "," : "") + std::string(to_string(cfg.algorithms[i]));
    return {{"algorithms", algs},
            {"nt", join_sizes(cfg.nt)},
            {"nr", join_sizes(cfg.nr)},
            {"length", std::to_string(cfg.length)},
            {"k", join_sizes(cfg.sparsity)},
            {"snr-db", join_doubles(cfg.snr_db)},
            {"mu", join_doubles(cfg.mu)},
            {"lambda-lp", format_double(cfg.lambda_lp_scale)},
            {"lambda-l0", format_double(cfg.lambda_l0_scale)},
            {"p", format_double(cfg.p)},
            {"epsilon", format_double(cfg.epsilon)},
            {"beta", format_double(cfg.beta)},
            {"runs", std::to_string(cfg.runs)},
            {"iterations", std::to_string(cfg.iterations)},
            {"seed", std::to_string(cfg.seed)},
            {"generator", std::string(to_string(cfg.generator))},
            {"fading-period", std::to_string(cfg.fading_period)}};
}

/// Reads a flat key=value file ('#' starts a comment), or the "config"
/// object of a run manifest when the file is JSON.
inline Settings read_settings_file(const std::string &path)
{
    std::ifstream f(path);
    if (!f)
        throw IoError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << f.rdbuf();
    const std::string text = buf.str();

    Settings out;
    if (const auto first = text.find_first_not_of(" \t\r\n"); first != std::string::npos && text[first] == '{')
    {
        nlohmann::json j;
        try
        {
            j = nlohmann::json::parse(text);
        }
        catch (const nlohmann::json::exception &e)
        {
            throw UsageError("config file '" + path + "': " + e.what());
        }
        if (!j.contains("config") || !j["config"].is_object())
            throw UsageError("manifest '" + path + "' has no config object");
        for (const auto &[k, v] : j["config"].items())
            out.emplace_back(k, v.is_string() ? v.get<std::string>() : v.dump());
        return out;
    }

    std::istringstream lines(text);
    std::string line;
    for (std::size_t n = 1; std::getline(lines, line); ++n)
    {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = detail::trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError("config file '" + path + "' line " + std::to_string(n) + ": expected key=value");
        out.emplace_back(detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
    }
    return out;
}

/// Parses command-line arguments (without the program name). Config-file
/// values are applied first, then flags override them. Returns std::nullopt
/// when help was requested (the help text is written to `help`).
inline std::optional<Options> parse_config(const std::vector<std::string> &args, std::ostream *help = nullptr)
{
    CLI::App app{"Monte-Carlo simulator for adaptive sparse MIMO channel estimation", "asce_sim"};
    std::map<std::string, std::string> flag_values;
    static const std::map<std::string, std::string> help_text{
        {"algorithms", "comma list of lms|nlms|lp_nlms|l0_nlms"},
        {"nt", "transmit antenna counts (comma list)"},
        {"nr", "receive antenna counts (comma list)"},
        {"length", "taps per link"},
        {"k", "dominant taps per link (comma list)"},
        {"snr-db", "SNR values in dB (comma list)"},
        {"mu", "step sizes (comma list)"},
        {"lambda-lp", "Lp weight as a multiple of the noise variance"},
        {"lambda-l0", "L0 weight as a multiple of the noise variance"},
        {"p", "Lp exponent in (0, 1]"},
        {"epsilon", "Lp attractor denominator guard"},
        {"beta", "L0 surrogate sharpness (attraction band 1/beta)"},
        {"runs", "Monte-Carlo runs per cell"},
        {"iterations", "trace length per run (entry 0 is the cold start)"},
        {"seed", "master seed"},
        {"generator", "training signal: gaussian|bpsk|ofdm"},
        {"fading-period", "redraw the channel every N iterations (0 = static)"},
        {"workers", "worker threads (results do not depend on it)"}};
    for (const auto &key : setting_keys())
        app.add_option("--" + key, flag_values[key], help_text.at(key));
    std::string config_path, out_path, plot_path;
    bool summary = false;
    app.add_option("--config", config_path, "key=value config file or run manifest");
    app.add_option("--out", out_path, "results CSV path (stdout when omitted)");
    app.add_option("--plot-script", plot_path, "write a gnuplot template for the CSV");
    app.add_flag("--summary", summary, "print a steady-state summary");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try
    {
        app.parse(argv);
    }
    catch (const CLI::CallForHelp &)
    {
        if (help)
            *help << app.help();
        return std::nullopt;
    }
    catch (const CLI::ParseError &e)
    {
        throw UsageError(e.what());
    }

    Options opt;
    if (!config_path.empty())
    {
        opt.config_path = config_path;
        for (const auto &[k, v] : read_settings_file(config_path))
            apply_setting(opt.config, k, v);
    }
    for (const auto &key : setting_keys())
        if (app.count("--" + key) > 0)
            apply_setting(opt.config, key, flag_values[key]);
    try
    {
        opt.config.validate();
    }
    catch (const ConfigError &e)
    {
        throw UsageError(e.what());
    }
    if (!out_path.empty())
        opt.out = out_path;
    if (!plot_path.empty())
        opt.plot_script = plot_path;
    opt.summary = summary;
    return opt;
}

struct CellDivergence
{
    CellKey key;
    std::size_t diverged = 0;
    std::size_t used = 0;
};

/// Provenance record written next to every results file.
struct RunManifest
{
    ExperimentConfig config;
    std::string version{tool_version};
    std::string started_utc;
    std::string finished_utc;
    std::vector<CellDivergence> cells;
    std::vector<CellFailure> failures;

    nlohmann::json to_json() const
    {
        nlohmann::json j;
        j["tool"] = "asce_sim";
        j["version"] = version;
        j["seed"] = config.seed;
        j["workers"] = config.workers;
        j["started_utc"] = started_utc;
        j["finished_utc"] = finished_utc;
        nlohmann::json cfg = nlohmann::json::object();
        for (const auto &[k, v] : to_settings(config))
            cfg[k] = v;
        j["config"] = cfg;
        auto key_json = [](const CellKey &k) {
            return nlohmann::json{{"algorithm", std::string(to_string(k.algorithm))},
                                  {"snr_db", k.snr_db},
                                  {"mu", k.mu},
                                  {"k", k.k},
                                  {"nt", k.nt},
                                  {"nr", k.nr}};
        };
        j["cells"] = nlohmann::json::array();
        for (const auto &c : cells)
        {
            auto e = key_json(c.key);
            e["runs_used"] = c.used;
            e["runs_diverged"] = c.diverged;
            j["cells"].push_back(e);
        }
        j["failures"] = nlohmann::json::array();
        for (const auto &f : failures)
        {
            auto e = key_json(f.key);
            e["message"] = f.message;
            j["failures"].push_back(e);
        }
        return j;
    }
};

inline std::string utc_timestamp()
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

inline void write_manifest(const RunManifest &m, const std::string &path)
{
    std::ofstream f(path, std::ios::trunc);
    if (!f)
        throw IoError("cannot open '" + path + "' for writing");
    f << m.to_json().dump(2) << '\n';
    if (!f)
        throw IoError("write to '" + path + "' failed");
}

inline std::string manifest_path_for(const std::string &csv_path) { return csv_path + ".manifest.json"; }

} // namespace asce::cli

#endif
