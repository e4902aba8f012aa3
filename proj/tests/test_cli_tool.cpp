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


// End-to-end checks of the asce_sim executable.

#include <asce/report.hpp>

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace
{
int run(const std::string &args)
{
    const std::string cmd = std::string(ASCE_SIM_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path &p)
{
    std::ifstream f(p, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

class CliTool : public ::testing::Test
{
protected:
    void SetUp() override
    {
        dir = fs::temp_directory_path() /
              ("asce_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    fs::path dir;
};
} // namespace

TEST_F(CliTool, ManifestRerunReproducesCsvByteForByte)
{
    const auto first = dir / "a.csv";
    ASSERT_EQ(run("--runs 5 --iterations 120 --snr-db 5,15 --k 4 --nr 2 --mu 0.5 --generator bpsk --seed 42 --out " +
                  first.string()),
              0);
    const auto manifest = fs::path(first.string() + ".manifest.json");
    ASSERT_TRUE(fs::exists(manifest));
    const auto second = dir / "b.csv";
    ASSERT_EQ(run("--config " + manifest.string() + " --workers 3 --out " + second.string()), 0);
    const auto a = slurp(first);
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, slurp(second));
}

TEST_F(CliTool, CsvHasHeaderAndOneRowPerIteration)
{
    const auto out = dir / "r.csv";
    ASSERT_EQ(run("--runs 2 --iterations 3 --snr-db 10 --k 1 --nr 2 --mu 0.5 --algorithms nlms --out " + out.string()),
              0);
    std::istringstream is(slurp(out));
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line, asce::csv_header);
    int rows = 0;
    while (std::getline(is, line))
        ++rows;
    EXPECT_EQ(rows, 3);
}

TEST_F(CliTool, ExitCodes)
{
    EXPECT_EQ(run("--help"), 0);
    EXPECT_EQ(run("--mu -1"), 1);
    EXPECT_EQ(run("--no-such-flag"), 1);
    EXPECT_EQ(run("--runs 1 --iterations 5 --out /nonexistent-dir/x.csv"), 2);
    EXPECT_EQ(run("--algorithms lms --mu 1 --runs 2 --iterations 2000 --snr-db 10 --k 1 --nr 2 --out " +
                  (dir / "d.csv").string()),
              3);
}

TEST_F(CliTool, PlotScriptReferencesCsv)
{
    const auto out = dir / "r.csv";
    const auto gp = dir / "r.gp";
    ASSERT_EQ(run("--runs 1 --iterations 5 --snr-db 10 --k 1 --nr 2 --mu 0.5 --out " + out.string() +
                  " --plot-script " + gp.string()),
              0);
    EXPECT_NE(slurp(gp).find(out.string()), std::string::npos);
}
