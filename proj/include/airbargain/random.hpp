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

#ifndef AIRBARGAIN_RANDOM_HPP
#define AIRBARGAIN_RANDOM_HPP

#include <cstdint>
#include <random>

namespace airbargain {

/// Uniform double in [0, 1) built from the top 53 bits of the generator, so
/// streams are identical across standard library implementations.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in (0, 1): rejects exact zeros.
inline double uniform01_open(std::mt19937_64& rng) {
    double u = uniform01(rng);
    while (u == 0.0) u = uniform01(rng);
    return u;
}

}  // namespace airbargain

#endif
