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

#ifndef ASCE_ERROR_HPP
#define ASCE_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace asce
{

// Invalid argument to a library operation (out-of-range size, index, dimension mismatch)
class ParameterError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Invalid or unknown configuration value
class ConfigError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// An adaptive update produced a non-finite estimate
class DivergenceError : public std::runtime_error
{
public:
    explicit DivergenceError(const std::string &what, std::size_t run_index = npos)
        : std::runtime_error(what), run_(run_index) {}

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::size_t run_index() const noexcept { return run_; }

private:
    std::size_t run_;
};

// No usable Monte-Carlo runs remain for a grid cell
class ExperimentError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace asce

#endif
