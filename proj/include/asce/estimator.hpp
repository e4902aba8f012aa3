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


#ifndef ASCE_ESTIMATOR_HPP
#define ASCE_ESTIMATOR_HPP

#include "error.hpp"
#include "signal.hpp"

#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace asce
{

// ---------------------------------------------------------------------------
// Sparsity penalties and their attractors. Elementwise kernels over spans,
// templated on the floating-point type.
// ---------------------------------------------------------------------------

template <std::floating_point T>
constexpr T sgn(T v) noexcept
{
    return v > T(0) ? T(1) : (v < T(0) ? T(-1) : T(0));
}

/// (sum |h_i|^p)^(1/p), p in (0, 2].
template <std::floating_point T>
T lp_norm(std::span<const T> h, T p)
{
    if (!(p > T(0) && p <= T(2)))
        throw ParameterError("lp_norm: p must lie in (0, 2]");
    T acc = 0;
    for (T v : h)
        acc += std::pow(std::abs(v), p);
    return acc == T(0) ? T(0) : std::pow(acc, T(1) / p);
}

/// Lp zero attractor: ||h||_p^(1-p) sgn(h_i) / (epsilon + |h_i|^(1-p)).
template <std::floating_point T>
std::vector<T> lp_attractor(std::span<const T> h, T p, T epsilon)
{
    if (!(epsilon > T(0)))
        throw ParameterError("lp_attractor: epsilon must be positive");
    const T scale = std::pow(lp_norm(h, p), T(1) - p);
    std::vector<T> out(h.size());
    for (std::size_t i = 0; i < h.size(); ++i)
        out[i] = h[i] == T(0) ? T(0) : scale * sgn(h[i]) / (epsilon + std::pow(std::abs(h[i]), T(1) - p));
    return out;
}

/// Smooth L0 surrogate: sum_i (1 - exp(-beta |h_i|)).
template <std::floating_point T>
T l0_approx_norm(std::span<const T> h, T beta)
{
    if (!(beta > T(0)))
        throw ParameterError("l0_approx_norm: beta must be positive");
    T acc = 0;
    for (T v : h)
        acc += -std::expm1(-beta * std::abs(v));
    return acc;
}

/// Gradient of the smooth L0 surrogate: beta sgn(h_i) exp(-beta |h_i|).
template <std::floating_point T>
std::vector<T> l0_exponential_attractor(std::span<const T> h, T beta)
{
    if (!(beta > T(0)))
        throw ParameterError("l0_exponential_attractor: beta must be positive");
    std::vector<T> out(h.size());
    for (std::size_t i = 0; i < h.size(); ++i)
        out[i] = beta * sgn(h[i]) * std::exp(-beta * std::abs(h[i]));
    return out;
}

/// First-order (Taylor) L0 attractor, twice the linearized gradient:
/// 2 beta sgn(h) - 2 beta^2 h inside |h| <= 1/beta, zero outside.
/// Subtracting a positive multiple of it shrinks |h| toward zero.
template <std::floating_point T>
std::vector<T> j_attractor(std::span<const T> h, T beta)
{
    if (!(beta > T(0)))
        throw ParameterError("j_attractor: beta must be positive");
    std::vector<T> out(h.size());
    for (std::size_t i = 0; i < h.size(); ++i)
    {
        const T v = h[i];
        out[i] = std::abs(v) * beta <= T(1) ? T(2) * beta * (sgn(v) - beta * v) : T(0);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Adaptive update rules
// ---------------------------------------------------------------------------

enum class Algorithm
{
    lms,
    nlms,
    lp_nlms,
    l0_nlms
};

inline std::string_view to_string(Algorithm a) noexcept
{
    switch (a)
    {
    case Algorithm::lms:
        return "lms";
    case Algorithm::nlms:
        return "nlms";
    case Algorithm::lp_nlms:
        return "lp_nlms";
    case Algorithm::l0_nlms:
        return "l0_nlms";
    }
    return "?";
}

inline Algorithm parse_algorithm(std::string_view name)
{
    if (name == "lms")
        return Algorithm::lms;
    if (name == "nlms")
        return Algorithm::nlms;
    if (name == "lp_nlms" || name == "lp-nlms")
        return Algorithm::lp_nlms;
    if (name == "l0_nlms" || name == "l0-nlms")
        return Algorithm::l0_nlms;
    throw ConfigError("unknown algorithm '" + std::string(name) + "' (expected lms|nlms|lp_nlms|l0_nlms)");
}

struct HyperParams
{
    double mu = 0.5;
    double lambda_lp = 0.0;
    double lambda_l0 = 0.0;
    double p = 0.43;
    double epsilon = 0.05; // Lp attractor denominator guard
    double beta = 20.0;    // L0 surrogate sharpness; attraction band is |h| <= 1/beta
    double delta = 1e-12;  // NLMS denominator guard

    double rho_lp() const noexcept { return mu * lambda_lp; }
    double rho_l0() const noexcept { return mu * lambda_l0; }

    void validate(Algorithm algorithm) const
    {
        if (!(mu > 0.0) || !std::isfinite(mu))
            throw ParameterError("HyperParams: mu must be positive");
        if (algorithm != Algorithm::lms && !(mu < 2.0))
            throw ParameterError("HyperParams: mu must lie in (0, 2) for normalized updates");
        if (!(lambda_lp >= 0.0) || !(lambda_l0 >= 0.0))
            throw ParameterError("HyperParams: regularization weights must be non-negative");
        if (!(p > 0.0 && p <= 1.0))
            throw ParameterError("HyperParams: p must lie in (0, 1]");
        if (!(epsilon > 0.0))
            throw ParameterError("HyperParams: epsilon must be positive");
        if (!(beta > 0.0))
            throw ParameterError("HyperParams: beta must be positive");
        if (!(delta >= 0.0))
            throw ParameterError("HyperParams: delta must be non-negative");
    }
};

/// Adaptive estimate of one MISO row; starts from the all-zero vector.
class EstimatorState
{
public:
    EstimatorState(Algorithm algorithm, HyperParams hyper, std::size_t size)
        : algorithm_(algorithm), hyper_(hyper), estimate_(size, 0.0)
    {
        hyper_.validate(algorithm_);
    }

    EstimatorState(Algorithm algorithm, HyperParams hyper, std::vector<double> initial)
        : algorithm_(algorithm), hyper_(hyper), estimate_(std::move(initial))
    {
        hyper_.validate(algorithm_);
    }

    Algorithm algorithm() const noexcept { return algorithm_; }
    const HyperParams &hyper() const noexcept { return hyper_; }
    std::span<const double> estimate() const noexcept { return estimate_; }
    std::size_t size() const noexcept { return estimate_.size(); }

    /// y_hat = estimate . x
    double predict(std::span<const double> x) const
    {
        check_size(x.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
            acc += estimate_[i] * x[i];
        return acc;
    }
    double predict(const Regressor &x) const { return predict(x.stacked()); }

    /// Applies this state's algorithm for one sample with a-priori error e.
    void update(std::span<const double> x, double e)
    {
        switch (algorithm_)
        {
        case Algorithm::lms:
            apply_lms(x, e);
            break;
        case Algorithm::nlms:
            apply_nlms(x, e);
            break;
        case Algorithm::lp_nlms:
            apply_lp_nlms(x, e);
            break;
        case Algorithm::l0_nlms:
            apply_l0_nlms(x, e);
            break;
        }
    }
    void update(const Regressor &x, double e) { update(x.stacked(), e); }

    void apply_lms(std::span<const double> x, double e)
    {
        check_size(x.size());
        const double g = hyper_.mu * e;
        for (std::size_t i = 0; i < x.size(); ++i)
            estimate_[i] += g * x[i];
        check_finite();
    }

    void apply_nlms(std::span<const double> x, double e)
    {
        nlms_step(x, e);
        check_finite();
    }

    void apply_lp_nlms(std::span<const double> x, double e)
    {
        const double rho = hyper_.rho_lp();
        if (rho == 0.0)
            return apply_nlms(x, e);
        const auto attract = lp_attractor<double>(estimate_, hyper_.p, hyper_.epsilon);
        nlms_step(x, e);
        for (std::size_t i = 0; i < estimate_.size(); ++i)
            estimate_[i] -= rho * attract[i];
        check_finite();
    }

    void apply_l0_nlms(std::span<const double> x, double e)
    {
        const double rho = hyper_.rho_l0();
        if (rho == 0.0)
            return apply_nlms(x, e);
        const auto attract = j_attractor<double>(estimate_, hyper_.beta);
        nlms_step(x, e);
        for (std::size_t i = 0; i < estimate_.size(); ++i)
            estimate_[i] -= rho * attract[i];
        check_finite();
    }

private:
    void check_size(std::size_t n) const
    {
        if (n != estimate_.size())
            throw ParameterError("EstimatorState: regressor length " + std::to_string(n) +
                                 " does not match estimate length " + std::to_string(estimate_.size()));
    }

    void check_finite() const
    {
        for (double v : estimate_)
            if (!std::isfinite(v))
                throw DivergenceError(std::string("estimate diverged (") + std::string(to_string(algorithm_)) + ")");
    }

    // Skips the step when the guarded denominator is zero (all-zero regressor, delta = 0).
    void nlms_step(std::span<const double> x, double e)
    {
        check_size(x.size());
        double energy = 0.0;
        for (double v : x)
            energy += v * v;
        const double denom = hyper_.delta + energy;
        if (denom == 0.0)
            return;
        const double g = hyper_.mu * e / denom;
        for (std::size_t i = 0; i < x.size(); ++i)
            estimate_[i] += g * x[i];
    }

    Algorithm algorithm_;
    HyperParams hyper_;
    std::vector<double> estimate_;
};

inline double predict(const EstimatorState &state, const Regressor &x) { return state.predict(x); }

inline double error(double y, double y_hat) noexcept { return y - y_hat; }

inline EstimatorState lms_update(EstimatorState state, const Regressor &x, double e)
{
    state.apply_lms(x.stacked(), e);
    return state;
}

inline EstimatorState nlms_update(EstimatorState state, const Regressor &x, double e)
{
    state.apply_nlms(x.stacked(), e);
    return state;
}

inline EstimatorState lp_nlms_update(EstimatorState state, const Regressor &x, double e)
{
    state.apply_lp_nlms(x.stacked(), e);
    return state;
}

inline EstimatorState l0_nlms_update(EstimatorState state, const Regressor &x, double e)
{
    state.apply_l0_nlms(x.stacked(), e);
    return state;
}

} // namespace asce

#endif
