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


#ifndef ASCE_SIGNAL_HPP
#define ASCE_SIGNAL_HPP

#include "channel.hpp"
#include "error.hpp"
#include "random.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace asce
{

enum class TrainingKind
{
    gaussian,
    bpsk,
    ofdm
};

inline std::string_view to_string(TrainingKind k) noexcept
{
    switch (k)
    {
    case TrainingKind::gaussian:
        return "gaussian";
    case TrainingKind::bpsk:
        return "bpsk";
    case TrainingKind::ofdm:
        return "ofdm";
    }
    return "?";
}

inline TrainingKind parse_training_kind(std::string_view name)
{
    if (name == "gaussian")
        return TrainingKind::gaussian;
    if (name == "bpsk")
        return TrainingKind::bpsk;
    if (name == "ofdm")
        return TrainingKind::ofdm;
    throw ConfigError("unknown training generator '" + std::string(name) + "' (expected gaussian|bpsk|ofdm)");
}

/// Unitary inverse DFT: x[n] = C^{-1/2} * sum_k X[k] e^{+j 2 pi k n / C}.
/// Power preserving, so sum |x|^2 == sum |X|^2.
inline std::vector<std::complex<double>> ofdm_time_samples(std::span<const std::complex<double>> freq)
{
    const std::size_t c = freq.size();
    if (c == 0)
        throw ParameterError("ofdm_time_samples: empty symbol block");
    const double scale = 1.0 / std::sqrt(static_cast<double>(c));
    const double w = 2.0 * std::numbers::pi / static_cast<double>(c);
    std::vector<std::complex<double>> out(c);
    for (std::size_t n = 0; n < c; ++n)
    {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t k = 0; k < c; ++k)
        {
            // reduce k*n mod C first so the phase argument stays small
            const auto kn = static_cast<double>((k * n) % c);
            acc += freq[k] * std::polar(1.0, w * kn);
        }
        out[n] = acc * scale;
    }
    return out;
}

/// Per-antenna training sample source with unit per-sample power (E0 = 1).
///
/// The OFDM generator draws Hermitian-symmetric unit-modulus frequency blocks
/// (BPSK on the DC and Nyquist bins, QPSK elsewhere), so the inverse DFT is
/// real and every block has mean power exactly 1. Blocks are consumed
/// sample by sample; no cyclic prefix is inserted.
class TrainingSource
{
public:
    static constexpr std::size_t default_ofdm_block = 64;

    TrainingSource(TrainingKind kind, std::size_t nt, std::size_t ofdm_block = default_ofdm_block)
        : kind_(kind), nt_(nt), block_(ofdm_block), buffers_(nt), pos_(ofdm_block)
    {
        if (nt_ == 0)
            throw ParameterError("TrainingSource: nt must be positive");
        if (kind_ == TrainingKind::ofdm && block_ == 0)
            throw ParameterError("TrainingSource: OFDM block size must be positive");
    }

    TrainingKind kind() const noexcept { return kind_; }
    std::size_t nt_count() const noexcept { return nt_; }

    /// One sample per transmit antenna.
    std::vector<double> next(Rng &rng)
    {
        std::vector<double> out(nt_);
        switch (kind_)
        {
        case TrainingKind::gaussian: {
            std::normal_distribution<double> g(0.0, 1.0);
            for (auto &v : out)
                v = g(rng);
            break;
        }
        case TrainingKind::bpsk: {
            std::bernoulli_distribution b(0.5);
            for (auto &v : out)
                v = b(rng) ? 1.0 : -1.0;
            break;
        }
        case TrainingKind::ofdm:
            if (pos_ == block_)
            {
                for (auto &buf : buffers_)
                    buf = ofdm_block(block_, rng);
                pos_ = 0;
            }
            for (std::size_t t = 0; t < nt_; ++t)
                out[t] = buffers_[t][pos_];
            ++pos_;
            break;
        }
        return out;
    }

    /// Real time-domain samples of one random Hermitian-symmetric OFDM block.
    static std::vector<double> ofdm_block(std::size_t c, Rng &rng)
    {
        std::bernoulli_distribution b(0.5);
        std::uniform_int_distribution<int> quadrant(0, 3);
        std::vector<std::complex<double>> freq(c);
        freq[0] = b(rng) ? 1.0 : -1.0;
        const std::size_t half = c / 2;
        for (std::size_t k = 1; k < c - k; ++k)
        {
            const double phase = std::numbers::pi / 4.0 + std::numbers::pi / 2.0 * quadrant(rng);
            freq[k] = std::polar(1.0, phase);
            freq[c - k] = std::conj(freq[k]);
        }
        if (c % 2 == 0 && half > 0)
            freq[half] = b(rng) ? 1.0 : -1.0;
        auto time = ofdm_time_samples(freq);
        std::vector<double> out(c);
        for (std::size_t n = 0; n < c; ++n)
            out[n] = time[n].real();
        return out;
    }

private:
    TrainingKind kind_;
    std::size_t nt_;
    std::size_t block_;
    std::vector<std::vector<double>> buffers_;
    std::size_t pos_;
};

/// Stacked delay-line regressor x(n): for each transmit antenna a block of
/// its `length` most recent samples, newest at block index 0.
class Regressor
{
public:
    Regressor() = default;
    Regressor(std::size_t nt, std::size_t length) : nt_(nt), length_(length), stacked_(nt * length, 0.0)
    {
        if (nt_ == 0 || length_ == 0)
            throw ParameterError("Regressor: nt and length must be positive");
    }

    std::size_t nt_count() const noexcept { return nt_; }
    std::size_t length() const noexcept { return length_; }
    std::size_t size() const noexcept { return stacked_.size(); }
    std::span<const double> stacked() const noexcept { return stacked_; }
    double operator[](std::size_t i) const { return stacked_.at(i); }

    /// Shifts one new sample into each antenna's block, discarding the oldest.
    void push(std::span<const double> samples)
    {
        if (samples.size() != nt_)
            throw ParameterError("Regressor::push: expected " + std::to_string(nt_) + " samples, got " +
                                 std::to_string(samples.size()));
        for (std::size_t t = 0; t < nt_; ++t)
        {
            auto first = stacked_.begin() + static_cast<std::ptrdiff_t>(t * length_);
            std::shift_right(first, first + static_cast<std::ptrdiff_t>(length_), 1);
            *first = samples[t];
        }
    }

    double squared_norm() const noexcept
    {
        double s = 0.0;
        for (double v : stacked_)
            s += v * v;
        return s;
    }

private:
    std::size_t nt_ = 0;
    std::size_t length_ = 0;
    std::vector<double> stacked_;
};

inline Regressor push_regressor(Regressor state, std::span<const double> samples)
{
    state.push(samples);
    return state;
}

/// Additive white Gaussian noise with variance sigma_n^2 = E0 / 10^(SNR/10), E0 = 1.
/// A variance of exactly zero is allowed and models the noiseless limit.
class NoiseModel
{
public:
    static constexpr double signal_power = 1.0;

    explicit NoiseModel(double variance = 0.0) : variance_(variance)
    {
        if (!(variance_ >= 0.0) || !std::isfinite(variance_))
            throw ParameterError("NoiseModel: variance must be finite and non-negative");
    }

    static NoiseModel from_snr_db(double snr_db) { return NoiseModel(variance_for_snr_db(snr_db)); }

    static double variance_for_snr_db(double snr_db) { return signal_power / std::pow(10.0, snr_db / 10.0); }
    static double snr_db_for_variance(double variance) { return 10.0 * std::log10(signal_power / variance); }

    double variance() const noexcept { return variance_; }

    // always consumes one normal draw so the stream stays aligned across SNRs
    double sample(Rng &rng) const
    {
        std::normal_distribution<double> g(0.0, 1.0);
        const double z = g(rng);
        return variance_ > 0.0 ? std::sqrt(variance_) * z : 0.0;
    }

private:
    double variance_;
};

/// H x without noise; accumulation is transmit-major, tap-minor per receive antenna.
inline std::vector<double> noiseless_output(const MimoChannel &channel, const Regressor &x)
{
    if (x.nt_count() != channel.nt_count() || x.length() != channel.link_length())
        throw ParameterError("system_output: regressor shape does not match channel");
    std::vector<double> y(channel.nr_count(), 0.0);
    const auto xs = x.stacked();
    for (std::size_t r = 0; r < channel.nr_count(); ++r)
    {
        double acc = 0.0;
        for (std::size_t t = 0; t < channel.nt_count(); ++t)
        {
            const auto taps = channel.link(r, t).taps();
            const auto block = xs.subspan(t * x.length(), x.length());
            for (std::size_t l = 0; l < taps.size(); ++l)
                acc += taps[l] * block[l];
        }
        y[r] = acc;
    }
    return y;
}

/// y[r] = h_{r:}^T x + z_r, with independent noise per receive antenna.
inline std::vector<double> system_output(const MimoChannel &channel, const Regressor &x, const NoiseModel &noise,
                                         Rng &rng)
{
    auto y = noiseless_output(channel, x);
    for (auto &v : y)
        v += noise.sample(rng);
    return y;
}

} // namespace asce

#endif
