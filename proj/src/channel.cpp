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

#include "airbargain/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "airbargain/random.hpp"

namespace airbargain {

double sample_capacity(const channel_model& channel, std::mt19937_64& rng) {
    if (!(channel.snr > 0.0)) throw std::invalid_argument("channel snr must be > 0");
    // Inverse of F(c) = 1 - exp(-(2^c - 1)/snr); u = 0 is rejected so the
    // sampled rate is strictly positive.
    const double u = uniform01_open(rng);
    return std::log2(1.0 - channel.snr * std::log1p(-u));
}

std::vector<capacity_matrix> make_capacity_timeline(const scenario& scn,
                                                    const channel_model& channel, int slots,
                                                    std::uint64_t seed) {
    const int n = scn.user_count();
    std::vector<capacity_matrix> timeline;
    timeline.reserve(slots);
    if (!channel.fading) {
        for (int k = 0; k < slots; ++k) timeline.push_back(scn.link_capacity);
        return timeline;
    }
    std::mt19937_64 rng(seed);
    for (int k = 0; k < slots; ++k) {
        capacity_matrix caps(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) caps[i][j] = sample_capacity(channel, rng);
        timeline.push_back(std::move(caps));
    }
    return timeline;
}

}  // namespace airbargain
