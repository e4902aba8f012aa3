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


#ifndef ASCE_EXPERIMENT_HPP
#define ASCE_EXPERIMENT_HPP

#include "channel.hpp"
#include "error.hpp"
#include "estimator.hpp"
#include "random.hpp"
#include "signal.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

namespace asce
{

/// Monte-Carlo experiment grid. Every list is swept as a cartesian product;
/// regularization weights are given relative to the noise variance of each
/// SNR cell (lambda = scale * sigma_n^2).
struct ExperimentConfig
{
    std::vector<std::size_t> nt{2};
    std::vector<std::size_t> nr{2, 4};
    std::size_t length = 16;
    std::vector<std::size_t> sparsity{1, 4};
    std::vector<double> snr_db{5.0, 10.0, 15.0};
    std::vector<double> mu{0.5, 1.0};
    std::vector<Algorithm> algorithms{Algorithm::nlms, Algorithm::lp_nlms, Algorithm::l0_nlms};
    std::size_t runs = 1000;
    std::size_t iterations = 2000;
    std::uint64_t seed = 1;
    TrainingKind generator = TrainingKind::gaussian;
    double lambda_lp_scale = 1e-4;
    double lambda_l0_scale = 1e-3;
    double p = 0.43;
    double epsilon = 0.05;
    double beta = 20.0;
    std::size_t fading_period = 0; // 0 keeps one static channel per run
    std::size_t workers = 1;       // scheduling only, never affects results

    void validate() const
    {
        auto need = [](bool ok, const char *what) {
            if (!ok)
                throw ConfigError(what);
        };
        need(!nt.empty() && !nr.empty(), "nt/nr: at least one antenna count required");
        for (auto v : nt)
            need(v >= 1, "nt: antenna counts must be >= 1");
        for (auto v : nr)
            need(v >= 1, "nr: antenna counts must be >= 1");
        need(length >= 1, "length: must be >= 1");
        need(!sparsity.empty(), "k: at least one sparsity required");
        for (auto k : sparsity)
            need(k >= 1 && k <= length, "k: sparsity must lie in [1, length]");
        need(!snr_db.empty(), "snr-db: at least one value required");
        for (auto s : snr_db)
            need(std::isfinite(s), "snr-db: values must be finite");
        need(!mu.empty(), "mu: at least one value required");
        for (auto m : mu)
            need(m > 0.0 && std::isfinite(m), "mu: step sizes must be positive");
        need(!algorithms.empty(), "algorithms: at least one algorithm required");
        need(runs >= 1, "runs: must be >= 1");
        need(iterations >= 1, "iterations: must be >= 1");
        need(lambda_lp_scale >= 0.0 && std::isfinite(lambda_lp_scale), "lambda-lp: must be non-negative");
        need(lambda_l0_scale >= 0.0 && std::isfinite(lambda_l0_scale), "lambda-l0: must be non-negative");
        need(p > 0.0 && p <= 1.0, "p: must lie in (0, 1]");
        need(epsilon > 0.0 && std::isfinite(epsilon), "epsilon: must be positive");
        need(beta > 0.0 && std::isfinite(beta), "beta: must be positive");
        need(workers >= 1, "workers: must be >= 1");
        for (auto a : algorithms)
            for (auto m : mu)
                if (a != Algorithm::lms && m >= 2.0)
                    throw ConfigError("mu: normalized algorithms require mu < 2");
    }
};

/// Identifies one output trace.
struct CellKey
{
    Algorithm algorithm = Algorithm::nlms;
    double snr_db = 0.0;
    double mu = 0.0;
    std::size_t k = 0;
    std::size_t nt = 0;
    std::size_t nr = 0;

    auto tie() const { return std::tuple(to_string(algorithm), snr_db, mu, k, nt, nr); }
    friend bool operator==(const CellKey &a, const CellKey &b) { return a.tie() == b.tie(); }
    friend auto operator<=>(const CellKey &a, const CellKey &b) { return a.tie() <=> b.tie(); }
};

/// Averaged squared-error learning curve of one cell (linear scale).
struct MseTrace
{
    CellKey key;
    std::vector<double> values;
    std::size_t runs_used = 0;
    std::size_t runs_diverged = 0;
};

/// Channel, antenna and noise setup shared by every algorithm in a run.
struct Scenario
{
    std::size_t nt = 2;
    std::size_t nr = 2;
    std::size_t length = 16;
    std::size_t sparsity = 1;
    double snr_db = 10.0;
};

/// Everything run_single needs besides the channel.
struct RunSettings
{
    Scenario scenario;
    HyperParams hyper;
    std::size_t iterations = 2000;
    TrainingKind generator = TrainingKind::gaussian;
    std::size_t fading_period = 0;
    std::optional<double> noise_variance; // overrides the SNR-derived variance
};

/// Independent random streams of one Monte-Carlo run.
struct RunStreams
{
    std::uint64_t channel = 0;
    std::uint64_t training = 0;
    std::uint64_t noise = 0;
    std::uint64_t fading = 0;
    std::size_t run_index = 0;
};

inline RunStreams derive_run_streams(std::uint64_t master_seed, const Scenario &s, std::size_t run_index)
{
    const std::uint64_t base = derive_seed(master_seed, {s.nt, s.nr, s.length, s.sparsity, seed_key(s.snr_db), run_index});
    return RunStreams{derive_seed(base, {1}), derive_seed(base, {2}), derive_seed(base, {3}), derive_seed(base, {4}),
                      run_index};
}

struct RunOutcome
{
    /// ||H - H_hat(n)||^2 for n = 0..iterations-1; entry 0 is the cold start.
    std::vector<double> squared_error;
    /// Per receive antenna squared error, same indexing.
    std::vector<std::vector<double>> per_receive;
    /// Hash of the channel, training and received samples seen by the run.
    std::uint64_t realization_digest = 0;
};

namespace detail
{
struct Digest
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    void add(double v) noexcept
    {
        h ^= std::bit_cast<std::uint64_t>(v);
        h *= 0x100000001b3ULL;
    }
    void add(std::span<const double> vs) noexcept
    {
        for (double v : vs)
            add(v);
    }
};

inline void add_channel(Digest &d, const MimoChannel &h)
{
    for (std::size_t r = 0; r < h.nr_count(); ++r)
        d.add(h.miso_row(r));
}

inline double row_error(std::span<const double> truth, std::span<const double> estimate)
{
    double s = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i)
    {
        const double d = truth[i] - estimate[i];
        s += d * d;
    }
    return s;
}
} // namespace detail

inline HyperParams cell_hyper(const ExperimentConfig &cfg, double mu, double snr_db)
{
    const double variance = NoiseModel::variance_for_snr_db(snr_db);
    HyperParams h;
    h.mu = mu;
    h.lambda_lp = cfg.lambda_lp_scale * variance;
    h.lambda_l0 = cfg.lambda_l0_scale * variance;
    h.p = cfg.p;
    h.epsilon = cfg.epsilon;
    h.beta = cfg.beta;
    return h;
}

/// One Monte-Carlo run of one algorithm: an independent estimator per receive
/// antenna, each driven by its own error signal against the shared regressor.
inline RunOutcome run_single(const MimoChannel &initial_channel, const RunSettings &settings, Algorithm algorithm,
                             const RunStreams &streams)
{
    const auto &sc = settings.scenario;
    if (initial_channel.nt_count() != sc.nt || initial_channel.nr_count() != sc.nr ||
        initial_channel.link_length() != sc.length)
        throw ParameterError("run_single: channel shape does not match scenario");
    if (settings.iterations < 1)
        throw ParameterError("run_single: iterations must be >= 1");

    Rng training_rng(streams.training);
    Rng noise_rng(streams.noise);
    Rng fading_rng(streams.fading);

    const NoiseModel noise(settings.noise_variance.value_or(NoiseModel::variance_for_snr_db(sc.snr_db)));
    TrainingSource source(settings.generator, sc.nt);
    Regressor x(sc.nt, sc.length);

    MimoChannel channel = initial_channel;
    std::vector<std::vector<double>> rows(sc.nr);
    for (std::size_t r = 0; r < sc.nr; ++r)
        rows[r] = channel.miso_row(r);

    std::vector<EstimatorState> states;
    states.reserve(sc.nr);
    for (std::size_t r = 0; r < sc.nr; ++r)
        states.emplace_back(algorithm, settings.hyper, channel.row_length());

    RunOutcome out;
    out.squared_error.assign(settings.iterations, 0.0);
    out.per_receive.assign(sc.nr, std::vector<double>(settings.iterations, 0.0));
    detail::Digest digest;
    detail::add_channel(digest, channel);

    auto record = [&](std::size_t n) {
        double total = 0.0;
        for (std::size_t r = 0; r < sc.nr; ++r)
        {
            const double e = detail::row_error(rows[r], states[r].estimate());
            out.per_receive[r][n] = e;
            total += e;
        }
        out.squared_error[n] = total;
    };
    record(0);

    try
    {
        for (std::size_t n = 1; n < settings.iterations; ++n)
        {
            if (settings.fading_period > 0 && n > 1 && (n - 1) % settings.fading_period == 0)
            {
                channel = assemble_mimo_channel(sc.nt, sc.nr, sc.length, sc.sparsity, fading_rng);
                for (std::size_t r = 0; r < sc.nr; ++r)
                    rows[r] = channel.miso_row(r);
                detail::add_channel(digest, channel);
            }
            const auto samples = source.next(training_rng);
            x.push(samples);
            const auto y = system_output(channel, x, noise, noise_rng);
            digest.add(samples);
            digest.add(y);
            for (std::size_t r = 0; r < sc.nr; ++r)
                states[r].update(x, error(y[r], states[r].predict(x)));
            record(n);
        }
    }
    catch (const DivergenceError &err)
    {
        throw DivergenceError(std::string(err.what()) + " in run " + std::to_string(streams.run_index),
                              streams.run_index);
    }
    out.realization_digest = digest.h;
    return out;
}

/// Running pointwise mean over runs, summed in insertion order.
class MseAccumulator
{
public:
    explicit MseAccumulator(std::size_t length) : sum_(length, 0.0) {}

    void add(std::span<const double> run)
    {
        if (run.size() != sum_.size())
            throw ParameterError("average_mse: run lengths differ");
        for (std::size_t i = 0; i < sum_.size(); ++i)
            sum_[i] += run[i];
        ++used_;
    }
    void add_diverged() noexcept { ++diverged_; }

    MseTrace finish(CellKey key = {}) const
    {
        if (used_ == 0)
            throw ExperimentError("average_mse: no surviving runs (" + std::to_string(diverged_) + " diverged)");
        MseTrace t;
        t.key = key;
        t.values = sum_;
        for (auto &v : t.values)
            v /= static_cast<double>(used_);
        t.runs_used = used_;
        t.runs_diverged = diverged_;
        return t;
    }

private:
    std::vector<double> sum_;
    std::size_t used_ = 0;
    std::size_t diverged_ = 0;
};

/// Pointwise mean of the surviving runs; std::nullopt marks a diverged run.
inline MseTrace average_mse(std::span<const std::optional<std::vector<double>>> runs, CellKey key = {})
{
    if (runs.empty())
        throw ExperimentError("average_mse: no runs");
    std::size_t length = 0;
    for (const auto &r : runs)
        if (r)
        {
            length = r->size();
            break;
        }
    MseAccumulator acc(length);
    for (const auto &r : runs)
        r ? acc.add(*r) : acc.add_diverged();
    return acc.finish(key);
}

/// Mean over the last `tail_fraction` of the trace (at least one point).
inline double steady_state_mse(std::span<const double> trace, double tail_fraction = 0.2)
{
    if (trace.empty())
        throw ParameterError("steady_state_mse: empty trace");
    if (!(tail_fraction > 0.0 && tail_fraction <= 1.0))
        throw ParameterError("steady_state_mse: tail_fraction must lie in (0, 1]");
    auto tail = static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(trace.size())));
    tail = std::clamp<std::size_t>(tail, 1, trace.size());
    double s = 0.0;
    for (std::size_t i = trace.size() - tail; i < trace.size(); ++i)
        s += trace[i];
    return s / static_cast<double>(tail);
}
inline double steady_state_mse(const MseTrace &trace, double tail_fraction = 0.2)
{
    return steady_state_mse(trace.values, tail_fraction);
}

/// First iteration whose value is within `factor` times the steady-state MSE.
inline std::size_t settling_iteration(std::span<const double> trace, double factor = 2.0, double tail_fraction = 0.2)
{
    const double target = factor * steady_state_mse(trace, tail_fraction);
    for (std::size_t i = 0; i < trace.size(); ++i)
        if (trace[i] <= target)
            return i;
    return trace.size();
}

struct CellFailure
{
    CellKey key;
    std::string message;
};

struct GridResult
{
    std::vector<MseTrace> traces; // sorted by key
    std::vector<CellFailure> failures;
    std::size_t total_diverged() const noexcept
    {
        std::size_t n = 0;
        for (const auto &t : traces)
            n += t.runs_diverged;
        return n;
    }
};

namespace detail
{
// Calls fn(i) for i in [begin, end) on up to `workers` threads.
inline void parallel_for(std::size_t begin, std::size_t end, std::size_t workers,
                         const std::function<void(std::size_t)> &fn)
{
    const std::size_t count = end - begin;
    workers = std::min(workers, count);
    if (workers <= 1)
    {
        for (std::size_t i = begin; i < end; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{begin};
    std::exception_ptr first_error;
    std::atomic_flag error_set = ATOMIC_FLAG_INIT;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < end; i = next++)
                {
                    try
                    {
                        fn(i);
                    }
                    catch (...)
                    {
                        if (!error_set.test_and_set())
                            first_error = std::current_exception();
                    }
                }
            });
    }
    if (first_error)
        std::rethrow_exception(first_error);
}
} // namespace detail

/// Sweeps the full grid. Within one scenario and run index every algorithm and
/// step size sees the same channel, training and noise realizations.
/// Results are independent of `cfg.workers`.
inline GridResult run_grid(const ExperimentConfig &cfg)
{
    cfg.validate();

    struct Cell
    {
        CellKey key;
        RunSettings settings;
    };

    GridResult result;
    for (auto nt : cfg.nt)
        for (auto nr : cfg.nr)
            for (auto k : cfg.sparsity)
                for (auto snr : cfg.snr_db)
                {
                    const Scenario sc{nt, nr, cfg.length, k, snr};
                    std::vector<Cell> cells;
                    for (auto alg : cfg.algorithms)
                        for (auto mu : cfg.mu)
                        {
                            RunSettings rs;
                            rs.scenario = sc;
                            rs.hyper = cell_hyper(cfg, mu, snr);
                            rs.iterations = cfg.iterations;
                            rs.generator = cfg.generator;
                            rs.fading_period = cfg.fading_period;
                            cells.push_back({CellKey{alg, snr, mu, k, nt, nr}, rs});
                        }

                    std::vector<MseAccumulator> acc(cells.size(), MseAccumulator(cfg.iterations));
                    // runs are computed in fixed-size chunks and reduced in run order
                    const std::size_t chunk = std::max<std::size_t>(16, 4 * cfg.workers);
                    std::vector<std::vector<std::optional<std::vector<double>>>> pending(
                        chunk, std::vector<std::optional<std::vector<double>>>(cells.size()));

                    for (std::size_t first = 0; first < cfg.runs; first += chunk)
                    {
                        const std::size_t last = std::min(cfg.runs, first + chunk);
                        detail::parallel_for(first, last, cfg.workers, [&](std::size_t run) {
                            const auto streams = derive_run_streams(cfg.seed, sc, run);
                            Rng channel_rng(streams.channel);
                            const auto channel = assemble_mimo_channel(nt, nr, cfg.length, k, channel_rng);
                            auto &slot = pending[run - first];
                            for (std::size_t c = 0; c < cells.size(); ++c)
                            {
                                try
                                {
                                    slot[c] = run_single(channel, cells[c].settings, cells[c].key.algorithm, streams)
                                                  .squared_error;
                                }
                                catch (const DivergenceError &)
                                {
                                    slot[c].reset();
                                }
                            }
                        });
                        for (std::size_t run = first; run < last; ++run)
                            for (std::size_t c = 0; c < cells.size(); ++c)
                            {
                                auto &r = pending[run - first][c];
                                r ? acc[c].add(*r) : acc[c].add_diverged();
                                r.reset();
                            }
                    }

                    for (std::size_t c = 0; c < cells.size(); ++c)
                    {
                        try
                        {
                            result.traces.push_back(acc[c].finish(cells[c].key));
                        }
                        catch (const ExperimentError &e)
                        {
                            result.failures.push_back({cells[c].key, e.what()});
                        }
                    }
                }

    std::sort(result.traces.begin(), result.traces.end(),
              [](const MseTrace &a, const MseTrace &b) { return a.key < b.key; });
    return result;
}

} // namespace asce

#endif
