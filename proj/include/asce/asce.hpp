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


#ifndef ASCE_ASCE_HPP
#define ASCE_ASCE_HPP

#include "channel.hpp"
#include "error.hpp"
#include "estimator.hpp"
#include "experiment.hpp"
#include "random.hpp"
#include "report.hpp"
#include "signal.hpp"

#endif
