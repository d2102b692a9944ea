// airbargain - joint group-head selection and airtime allocation via Nash bargaining
// Copyright (C) 2026 The airbargain authors
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

#ifndef AIRBARGAIN_CHANNEL_HPP
#define AIRBARGAIN_CHANNEL_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "airbargain/scenario.hpp"

namespace airbargain {

using capacity_matrix = std::vector<std::vector<double>>;

/// Rayleigh-fading link capacities with density
///   p(c) = ln(2)/snr * 2^c * exp(-(2^c - 1)/snr),  c >= 0.
/// With fading disabled the scenario's own capacity matrix is used verbatim
/// in every slot.
struct channel_model {
    double snr = 10.0;
    bool fading = true;
};

/// One capacity draw by inverse CDF: c = log2(1 - snr * ln(1 - u)).
double sample_capacity(const channel_model& channel, std::mt19937_64& rng);

/// Per-slot capacity matrices; directed links are drawn independently and
/// capacities stay constant within a slot. Deterministic in the seed.
std::vector<capacity_matrix> make_capacity_timeline(const scenario& scn,
                                                    const channel_model& channel, int slots,
                                                    std::uint64_t seed);

}  // namespace airbargain

#endif
