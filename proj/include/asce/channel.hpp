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


#ifndef ASCE_CHANNEL_HPP
#define ASCE_CHANNEL_HPP

#include "error.hpp"
#include "random.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace asce
{

/// One L-tap sparse impulse response between a transmit/receive antenna pair.
/// Holds exactly `support().size()` nonzero taps and unit Euclidean norm.
class ChannelVector
{
public:
    ChannelVector() = default;

    /// Builds a channel from explicit taps; the support is derived from the nonzero entries.
    explicit ChannelVector(std::vector<double> taps) : taps_(std::move(taps))
    {
        for (std::size_t i = 0; i < taps_.size(); ++i)
            if (taps_[i] != 0.0)
                support_.push_back(i);
    }

    std::size_t length() const noexcept { return taps_.size(); }
    std::size_t sparsity() const noexcept { return support_.size(); }
    std::span<const double> taps() const noexcept { return taps_; }
    std::span<const std::size_t> support() const noexcept { return support_; }
    double operator[](std::size_t i) const { return taps_.at(i); }

    double squared_norm() const noexcept
    {
        double s = 0.0;
        for (double t : taps_)
            s += t * t;
        return s;
    }

private:
    std::vector<double> taps_;
    std::vector<std::size_t> support_;
};

/// Draws a K-sparse unit-norm channel. Support positions are uniform without
/// replacement over [0, length); values are standard Gaussian, then the whole
/// vector is rescaled to unit norm.
inline ChannelVector generate_sparse_channel(std::size_t length, std::size_t sparsity, Rng &rng)
{
    if (sparsity < 1 || sparsity > length)
        throw ParameterError("generate_sparse_channel: sparsity " + std::to_string(sparsity) +
                             " outside [1, " + std::to_string(length) + "]");

    // partial Fisher-Yates: the first `sparsity` entries become the support
    std::vector<std::size_t> idx(length);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < sparsity; ++i)
    {
        std::uniform_int_distribution<std::size_t> pick(i, length - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }

    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> taps(length, 0.0);
    double energy = 0.0;
    for (std::size_t i = 0; i < sparsity; ++i)
    {
        double v = 0.0;
        while (v == 0.0)
            v = gauss(rng);
        taps[idx[i]] = v;
        energy += v * v;
    }
    const double scale = 1.0 / std::sqrt(energy);
    for (auto &t : taps)
        t *= scale;
    return ChannelVector(std::move(taps));
}

/// Nr x Nt grid of per-link channel vectors, all of the same length.
class MimoChannel
{
public:
    MimoChannel() = default;

    /// `links` is receive-major: links[r * nt + t] is the link from transmit t to receive r.
    MimoChannel(std::size_t nt, std::size_t nr, std::vector<ChannelVector> links)
        : nt_(nt), nr_(nr), links_(std::move(links))
    {
        if (nt_ == 0 || nr_ == 0)
            throw ParameterError("MimoChannel: antenna counts must be positive");
        if (links_.size() != nt_ * nr_)
            throw ParameterError("MimoChannel: expected " + std::to_string(nt_ * nr_) + " links, got " +
                                 std::to_string(links_.size()));
        length_ = links_.front().length();
        for (const auto &l : links_)
            if (l.length() != length_)
                throw ParameterError("MimoChannel: links must share one length");
    }

    std::size_t nt_count() const noexcept { return nt_; }
    std::size_t nr_count() const noexcept { return nr_; }
    std::size_t link_length() const noexcept { return length_; }
    std::size_t row_length() const noexcept { return nt_ * length_; }

    /// Zero-based (receive, transmit) access.
    const ChannelVector &link(std::size_t receive, std::size_t transmit) const
    {
        if (receive >= nr_ || transmit >= nt_)
            throw ParameterError("MimoChannel::link: index out of range");
        return links_[receive * nt_ + transmit];
    }

    /// MISO row for receive antenna `receive` (zero-based): [h_{r,0}; h_{r,1}; ...],
    /// transmit-antenna-major, tap-minor. Returns a copy.
    std::vector<double> miso_row(std::size_t receive) const
    {
        if (receive >= nr_)
            throw ParameterError("miso_row: receive index " + std::to_string(receive) + " out of range [0, " +
                                 std::to_string(nr_) + ")");
        std::vector<double> row;
        row.reserve(row_length());
        for (std::size_t t = 0; t < nt_; ++t)
        {
            auto taps = links_[receive * nt_ + t].taps();
            row.insert(row.end(), taps.begin(), taps.end());
        }
        return row;
    }

    double squared_norm() const noexcept
    {
        double s = 0.0;
        for (const auto &l : links_)
            s += l.squared_norm();
        return s;
    }

private:
    std::size_t nt_ = 0;
    std::size_t nr_ = 0;
    std::size_t length_ = 0;
    std::vector<ChannelVector> links_;
};

/// Draws nr * nt independent sparse links, receive-major.
inline MimoChannel assemble_mimo_channel(std::size_t nt, std::size_t nr, std::size_t length, std::size_t sparsity,
                                         Rng &rng)
{
    if (nt == 0 || nr == 0)
        throw ParameterError("assemble_mimo_channel: antenna counts must be positive");
    std::vector<ChannelVector> links;
    links.reserve(nt * nr);
    for (std::size_t i = 0; i < nt * nr; ++i)
        links.push_back(generate_sparse_channel(length, sparsity, rng));
    return MimoChannel(nt, nr, std::move(links));
}

} // namespace asce

#endif
