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


#include <asce/cli.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

int main(int argc, char **argv)
{
    using namespace asce;
    namespace cli = asce::cli;

    std::optional<cli::Options> parsed;
    try
    {
        parsed = cli::parse_config(std::vector<std::string>(argv + 1, argv + argc), &std::cout);
    }
    catch (const IoError &e)
    {
        std::cerr << "asce_sim: " << e.what() << '\n';
        return cli::exit_io;
    }
    catch (const std::exception &e)
    {
        std::cerr << "asce_sim: usage error: " << e.what() << "\n(see --help)\n";
        return cli::exit_usage;
    }
    if (!parsed)
        return cli::exit_ok;
    const auto &opt = *parsed;

    if (opt.out)
    {
        std::ofstream probe(*opt.out, std::ios::app);
        if (!probe)
        {
            std::cerr << "asce_sim: cannot open '" << *opt.out << "' for writing\n";
            return cli::exit_io;
        }
    }

    cli::RunManifest manifest;
    manifest.config = opt.config;
    manifest.started_utc = cli::utc_timestamp();

    GridResult grid;
    try
    {
        grid = run_grid(opt.config);
    }
    catch (const std::exception &e)
    {
        std::cerr << "asce_sim: " << e.what() << '\n';
        return cli::exit_usage;
    }
    manifest.finished_utc = cli::utc_timestamp();
    for (const auto &t : grid.traces)
        manifest.cells.push_back({t.key, t.runs_diverged, t.runs_used});
    manifest.failures = grid.failures;

    for (const auto &f : grid.failures)
        std::cerr << "asce_sim: cell " << to_string(f.key.algorithm) << " snr_db=" << format_param(f.key.snr_db)
                  << " mu=" << format_param(f.key.mu) << " k=" << f.key.k << " nt=" << f.key.nt
                  << " nr=" << f.key.nr << ": " << f.message << '\n';

    try
    {
        if (!grid.traces.empty())
        {
            if (opt.out)
            {
                emit_csv(grid.traces, *opt.out);
                cli::write_manifest(manifest, cli::manifest_path_for(*opt.out));
            }
            else
            {
                write_csv(grid.traces, std::cout);
            }
        }
        if (opt.plot_script)
        {
            std::ofstream f(*opt.plot_script, std::ios::trunc);
            f << plot_script(opt.out.value_or("results.csv"));
            if (!f)
                throw IoError("cannot write '" + *opt.plot_script + "'");
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "asce_sim: " << e.what() << '\n';
        return cli::exit_io;
    }

    if (opt.summary && !grid.traces.empty())
        (opt.out ? std::cout : std::cerr) << emit_summary(grid.traces);

    return grid.failures.empty() ? cli::exit_ok : cli::exit_diverged;
}
