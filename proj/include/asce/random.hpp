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

#ifndef ASCE_RANDOM_HPP
#define ASCE_RANDOM_HPP

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace asce
{

using Rng = std::mt19937_64;

namespace detail
{
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
} // namespace detail

// Derives a child seed from a parent seed and an ordered list of keys.
// The result depends only on the values, so any (cell, run) stream can be
// regenerated in isolation.
inline std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> keys) noexcept
{
    std::uint64_t h = detail::splitmix64(parent);
    for (auto k : keys)
        h = detail::splitmix64(h ^ detail::splitmix64(k));
    return h;
}

inline std::uint64_t seed_key(double value) noexcept
{
    return std::bit_cast<std::uint64_t>(value);
}

} // namespace asce

#endif
