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

#ifndef AIRBARGAIN_PRESETS_HPP
#define AIRBARGAIN_PRESETS_HPP

#include <vector>

#include "airbargain/scenario.hpp"

// Canonical experiment setups: a four-user Wi-Fi Direct style group, one
// 10 MB item per user, 20 s of airtime, 2.85 J/MB radio energy and a 0.01
// forwarding reward unless a builder says otherwise.

namespace airbargain::presets {

/// Four users with budgets [E1, 500, 400, 400] J and the given sensitivity
/// vector; every link runs at `capacity` MB/s (default 4).
scenario budget_group(double first_user_budget_j, const std::vector<double>& sensitivity,
                      double capacity = 4.0);

/// Uniform group (all budgets 500 J, sensitivity 1) for reward sweeps.
scenario reward_group(double unit_reward);

/// Uniform group with custom bargaining power and a variable first-user data
/// load (others keep 10 MB).
scenario data_load_group(const std::vector<double>& bargaining_power, double first_user_load_mb);

/// The mixed-capacity group: users 1-3 carry one item, user 4 carries two,
/// link rates differ per pair, and `preference_case` 1-4 progressively
/// removes users 1 and 2 from the interest set of user 4's first item.
scenario preference_group(int preference_case);

/// Fully symmetric group (same budgets, sensitivities, loads, rates) used by
/// the slot-wise head-rotation experiments.
scenario symmetric_group();

}  // namespace airbargain::presets

#endif
