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

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace asce;
namespace cli = asce::cli;

namespace
{
MseTrace trace(Algorithm a, std::vector<double> values, double snr = 10.0, std::size_t k = 1)
{
    MseTrace t;
    t.key = CellKey{a, snr, 0.5, k, 2, 2};
    t.values = std::move(values);
    t.runs_used = 1;
    return t;
}

std::string temp_path(const std::string &name)
{
    return (std::filesystem::temp_directory_path() / ("asce_test_" + name)).string();
}
} // namespace

TEST(Csv, GoldenFormat)
{
    std::ostringstream os;
    write_csv({trace(Algorithm::nlms, {4.0, 1.0, 0.1})}, os);
    EXPECT_EQ(os.str(), "algorithm,snr_db,mu,k,nt,nr,iteration,avg_mse,avg_mse_db\n"
                        "nlms,10,0.5,1,2,2,0,4,6.0205999132796242\n"
                        "nlms,10,0.5,1,2,2,1,1,0\n"
                        "nlms,10,0.5,1,2,2,2,0.10000000000000001,-10\n");
}

TEST(Csv, RowsSortedByKeyThenIteration)
{
    std::ostringstream os;
    write_csv({trace(Algorithm::nlms, {1.0}, 15.0), trace(Algorithm::l0_nlms, {1.0}), trace(Algorithm::nlms, {1.0}, 5.0)},
              os);
    std::istringstream is(os.str());
    std::string line;
    std::vector<std::string> first_fields;
    std::getline(is, line);
    while (std::getline(is, line))
        first_fields.push_back(line.substr(0, line.find(",0,")));
    EXPECT_EQ(first_fields,
              (std::vector<std::string>{"l0_nlms,10,0.5,1,2,2", "nlms,5,0.5,1,2,2", "nlms,15,0.5,1,2,2"}));
}

TEST(Csv, RoundTripIsExact)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> exp10(-12.0, 2.0);
    std::vector<MseTrace> traces;
    for (auto a : {Algorithm::nlms, Algorithm::lp_nlms, Algorithm::l0_nlms})
    {
        std::vector<double> v(50);
        for (auto &x : v)
            x = std::pow(10.0, exp10(rng));
        traces.push_back(trace(a, v));
    }
    std::stringstream ss;
    write_csv(traces, ss);
    const auto back = parse_csv(ss);
    ASSERT_EQ(back.size(), traces.size());
    std::sort(traces.begin(), traces.end(), [](const auto &a, const auto &b) { return a.key < b.key; });
    for (std::size_t i = 0; i < back.size(); ++i)
    {
        EXPECT_EQ(back[i].key, traces[i].key);
        EXPECT_EQ(back[i].values, traces[i].values);
    }
}

TEST(Csv, EmitErrors)
{
    EXPECT_THROW(emit_csv({}, temp_path("empty.csv")), ParameterError);
    EXPECT_THROW(emit_csv({trace(Algorithm::nlms, {1.0})}, "/nonexistent-dir/x.csv"), IoError);
}

TEST(Summary, VerdictOrdersByMse)
{
    const auto s = emit_summary({trace(Algorithm::nlms, std::vector<double>(10, 1e-2)),
                                 trace(Algorithm::l0_nlms, std::vector<double>(10, 1e-3))});
    EXPECT_NE(s.find("verdict: l0_nlms < nlms"), std::string::npos) << s;
}

TEST(Summary, SingleAlgorithmHasNoVerdict)
{
    const auto s = emit_summary({trace(Algorithm::nlms, std::vector<double>(10, 1e-2))});
    EXPECT_EQ(s.find("verdict"), std::string::npos);
}

TEST(Summary, EqualValuesAreATie)
{
    const auto s = emit_summary({trace(Algorithm::nlms, std::vector<double>(10, 1e-2)),
                                 trace(Algorithm::lp_nlms, std::vector<double>(10, 1.001e-2))});
    EXPECT_NE(s.find(" = "), std::string::npos) << s;
    EXPECT_NE(s.find("tie"), std::string::npos) << s;
}

TEST(Summary, NlmsKInsensitivityDelta)
{
    const auto s = emit_summary({trace(Algorithm::nlms, std::vector<double>(10, 0.1), 10.0, 1),
                                 trace(Algorithm::nlms, std::vector<double>(10, 0.1), 10.0, 4)});
    EXPECT_NE(s.find("delta 0.00 dB"), std::string::npos) << s;
}

TEST(ParseConfig, NoArgumentsGivesPaperGrid)
{
    const auto opt = cli::parse_config({});
    ASSERT_TRUE(opt);
    const auto &c = opt->config;
    EXPECT_EQ(c.length, 16u);
    EXPECT_EQ(c.sparsity, (std::vector<std::size_t>{1, 4}));
    EXPECT_EQ(c.snr_db, (std::vector<double>{5.0, 10.0, 15.0}));
    EXPECT_EQ(c.mu, (std::vector<double>{0.5, 1.0}));
    EXPECT_EQ(c.runs, 1000u);
    EXPECT_DOUBLE_EQ(c.lambda_lp_scale, 1e-4);
    EXPECT_DOUBLE_EQ(c.lambda_l0_scale, 1e-3);
    EXPECT_FALSE(opt->out);
}

TEST(ParseConfig, OverridesReduceToOneCell)
{
    const auto opt = cli::parse_config({"--runs", "100", "--snr-db", "10", "--k", "1"});
    ASSERT_TRUE(opt);
    EXPECT_EQ(opt->config.runs, 100u);
    EXPECT_EQ(opt->config.snr_db, std::vector<double>{10.0});
    EXPECT_EQ(opt->config.sparsity, std::vector<std::size_t>{1});
}

TEST(ParseConfig, InvalidValuesNameTheKey)
{
    try
    {
        cli::parse_config({"--mu", "-1"});
        FAIL();
    }
    catch (const cli::UsageError &e)
    {
        EXPECT_NE(std::string(e.what()).find("'mu'"), std::string::npos) << e.what();
    }
    EXPECT_THROW(cli::parse_config({"--runs", "many"}), cli::UsageError);
    EXPECT_THROW(cli::parse_config({"--bogus", "1"}), cli::UsageError);
    EXPECT_THROW(cli::parse_config({"--generator", "chirp"}), cli::UsageError);
    EXPECT_THROW(cli::parse_config({"--k", "17"}), cli::UsageError);
}

TEST(ParseConfig, FlagsOverrideFile)
{
    const auto path = temp_path("cfg.txt");
    {
        std::ofstream f(path);
        f << "# desk-scale run\nruns = 50\nsnr-db = 5, 15\nalgorithms=nlms,l0_nlms\n";
    }
    const auto opt = cli::parse_config({"--config", path, "--runs", "7"});
    ASSERT_TRUE(opt);
    EXPECT_EQ(opt->config.runs, 7u);
    EXPECT_EQ(opt->config.snr_db, (std::vector<double>{5.0, 15.0}));
    EXPECT_EQ(opt->config.algorithms, (std::vector<Algorithm>{Algorithm::nlms, Algorithm::l0_nlms}));
    std::remove(path.c_str());
}

TEST(ParseConfig, UnknownFileKeyRejected)
{
    const auto path = temp_path("bad.txt");
    {
        std::ofstream f(path);
        f << "colour = blue\n";
    }
    try
    {
        cli::parse_config({"--config", path});
        FAIL();
    }
    catch (const cli::UsageError &e)
    {
        EXPECT_NE(std::string(e.what()).find("colour"), std::string::npos);
    }
    std::remove(path.c_str());
    EXPECT_THROW(cli::parse_config({"--config", "/nonexistent/cfg"}), IoError);
}

TEST(Manifest, ReproducesConfig)
{
    auto opt = cli::parse_config({"--runs", "3", "--snr-db", "7.5,12", "--mu", "0.25", "--beta", "33",
                                  "--generator", "ofdm", "--seed", "99", "--nr", "2,4", "--fading-period", "50"});
    ASSERT_TRUE(opt);
    cli::RunManifest m;
    m.config = opt->config;
    const auto path = temp_path("manifest.json");
    cli::write_manifest(m, path);
    const auto again = cli::parse_config({"--config", path});
    ASSERT_TRUE(again);
    EXPECT_EQ(cli::to_settings(again->config), cli::to_settings(opt->config));
    std::remove(path.c_str());
}
