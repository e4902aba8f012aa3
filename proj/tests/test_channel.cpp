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


#include <asce/channel.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

using namespace asce;

TEST(GenerateSparseChannel, SingleTapHasUnitMagnitude)
{
    Rng rng(11);
    const auto h = generate_sparse_channel(16, 1, rng);
    ASSERT_EQ(h.length(), 16u);
    ASSERT_EQ(h.sparsity(), 1u);
    EXPECT_DOUBLE_EQ(std::abs(h[h.support()[0]]), 1.0);
}

TEST(GenerateSparseChannel, FourTapsUnitNorm)
{
    Rng rng(12);
    const auto h = generate_sparse_channel(16, 4, rng);
    EXPECT_EQ(h.sparsity(), 4u);
    EXPECT_NEAR(h.squared_norm(), 1.0, 1e-12);
}

TEST(GenerateSparseChannel, DenseBoundary)
{
    Rng rng(13);
    const auto h = generate_sparse_channel(16, 16, rng);
    EXPECT_EQ(h.sparsity(), 16u);
    EXPECT_NEAR(h.squared_norm(), 1.0, 1e-12);
}

TEST(GenerateSparseChannel, RejectsSparsityOutOfRange)
{
    Rng rng(1);
    EXPECT_THROW(generate_sparse_channel(16, 0, rng), ParameterError);
    EXPECT_THROW(generate_sparse_channel(16, 17, rng), ParameterError);
}

TEST(GenerateSparseChannel, SeedReproducible)
{
    for (std::uint64_t seed : {0ULL, 1ULL, 99ULL, 123456789ULL})
    {
        Rng a(seed), b(seed);
        const auto ha = generate_sparse_channel(16, 4, a);
        const auto hb = generate_sparse_channel(16, 4, b);
        ASSERT_EQ(std::vector<double>(ha.taps().begin(), ha.taps().end()),
                  std::vector<double>(hb.taps().begin(), hb.taps().end()));
    }
}

TEST(GenerateSparseChannel, InvariantsHoldOverManySeeds)
{
    Rng rng(2024);
    std::vector<int> position_hits(16, 0);
    for (int trial = 0; trial < 4000; ++trial)
    {
        const std::size_t k = 1 + static_cast<std::size_t>(trial % 16);
        const auto h = generate_sparse_channel(16, k, rng);
        ASSERT_EQ(h.sparsity(), k);
        std::size_t nonzero = 0;
        for (double t : h.taps())
            nonzero += t != 0.0;
        ASSERT_EQ(nonzero, k);
        ASSERT_NEAR(h.squared_norm(), 1.0, 1e-12);
        if (k == 1)
            ++position_hits[h.support()[0]];
    }
    // 250 single-tap draws over 16 positions: every position should show up
    for (int hits : position_hits)
        EXPECT_GT(hits, 0);
}

TEST(MimoChannel, TwoByTwoHasFourIndependentUnitLinks)
{
    Rng rng(5);
    const auto H = assemble_mimo_channel(2, 2, 16, 4, rng);
    EXPECT_EQ(H.nt_count(), 2u);
    EXPECT_EQ(H.nr_count(), 2u);
    std::set<std::vector<double>> distinct;
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t t = 0; t < 2; ++t)
        {
            const auto &l = H.link(r, t);
            EXPECT_NEAR(l.squared_norm(), 1.0, 1e-12);
            distinct.insert(std::vector<double>(l.taps().begin(), l.taps().end()));
        }
    EXPECT_EQ(distinct.size(), 4u);
    EXPECT_NEAR(H.squared_norm(), 4.0, 1e-9);
}

TEST(MimoChannel, TwoByFourHasEightLinks)
{
    Rng rng(6);
    const auto H = assemble_mimo_channel(2, 4, 16, 1, rng);
    EXPECT_EQ(H.nr_count() * H.nt_count(), 8u);
    EXPECT_NEAR(H.squared_norm(), 8.0, 1e-9);
}

TEST(MimoChannel, SingleAntennaRowIsTheLink)
{
    Rng rng(7);
    const auto H = assemble_mimo_channel(1, 1, 16, 4, rng);
    const auto row = H.miso_row(0);
    const auto taps = H.link(0, 0).taps();
    EXPECT_EQ(row, std::vector<double>(taps.begin(), taps.end()));
}

TEST(MimoChannel, RowFourOfTwoByFourMatchesConcatenation)
{
    Rng rng(8);
    const auto H = assemble_mimo_channel(2, 4, 16, 4, rng);
    std::vector<double> expected;
    for (std::size_t t = 0; t < 2; ++t)
        for (double v : H.link(3, t).taps())
            expected.push_back(v);
    EXPECT_EQ(H.miso_row(3), expected);
    EXPECT_EQ(H.miso_row(3).size(), 32u);
}

TEST(MimoChannel, RowIndexingInvariant)
{
    Rng rng(9);
    for (std::size_t nt : {1u, 2u, 3u})
        for (std::size_t nr : {1u, 2u, 4u})
        {
            const auto H = assemble_mimo_channel(nt, nr, 16, 3, rng);
            for (std::size_t r = 0; r < nr; ++r)
            {
                const auto row = H.miso_row(r);
                ASSERT_EQ(row.size(), nt * 16);
                for (std::size_t t = 0; t < nt; ++t)
                    for (std::size_t l = 0; l < 16; ++l)
                        ASSERT_EQ(row[t * 16 + l], H.link(r, t)[l]);
            }
        }
}

TEST(MimoChannel, RowIsACopy)
{
    Rng rng(10);
    const auto H = assemble_mimo_channel(2, 2, 16, 2, rng);
    auto row = H.miso_row(0);
    row[0] += 1.0;
    EXPECT_NE(H.miso_row(0)[0], row[0]);
}

TEST(MimoChannel, RejectsBadIndicesAndShapes)
{
    Rng rng(3);
    const auto H = assemble_mimo_channel(2, 2, 16, 1, rng);
    EXPECT_THROW(H.miso_row(2), ParameterError);
    EXPECT_THROW(H.link(0, 2), ParameterError);
    EXPECT_THROW(assemble_mimo_channel(0, 2, 16, 1, rng), ParameterError);
    EXPECT_THROW(assemble_mimo_channel(2, 2, 16, 0, rng), ParameterError);
    EXPECT_THROW(MimoChannel(2, 2, {}), ParameterError);
}
