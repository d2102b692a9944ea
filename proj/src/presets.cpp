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

#include "airbargain/presets.hpp"

#include <algorithm>
#include <stdexcept>

namespace airbargain::presets {

namespace {

std::vector<int> everyone_but(int owner, int n) {
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (i != owner) out.push_back(i);
    return out;
}

scenario four_user_base(double capacity) {
    scenario scn;
    scn.users.resize(4);
    for (auto& u : scn.users) {
        u.energy_budget_joules = 500.0;
        u.sensitivity = 1.0;
    }
    for (int i = 0; i < 4; ++i) scn.items.push_back({i, 10.0, everyone_but(i, 4)});
    scn.link_capacity = uniform_link_matrix(4, capacity);
    scn.airtime_horizon_s = 20.0;
    scn.unit_reward = 0.01;
    scn.bargaining_power = equal_power(4);
    scn.unit_energy_send = 2.85;
    scn.unit_energy_recv = 2.85;
    return scn;
}

}  // namespace

scenario budget_group(double first_user_budget_j, const std::vector<double>& sensitivity,
                      double capacity) {
    scenario scn = four_user_base(capacity);
    const double budgets[4] = {first_user_budget_j, 500.0, 400.0, 400.0};
    for (int i = 0; i < 4; ++i) {
        scn.users[i].energy_budget_joules = budgets[i];
        scn.users[i].sensitivity = sensitivity.at(i);
    }
    return scn;
}

scenario reward_group(double unit_reward) {
    scenario scn = four_user_base(4.0);
    scn.unit_reward = unit_reward;
    return scn;
}

scenario data_load_group(const std::vector<double>& bargaining_power,
                         double first_user_load_mb) {
    scenario scn = four_user_base(4.0);
    scn.bargaining_power = bargaining_power;
    scn.items[0].size_mb = first_user_load_mb;
    return scn;
}

scenario preference_group(int preference_case) {
    if (preference_case < 1 || preference_case > 4)
        throw std::invalid_argument("preference case must be 1..4");

    scenario scn = four_user_base(4.0);
    scn.items.clear();
    for (int i = 0; i < 3; ++i) scn.items.push_back({i, 10.0, everyone_but(i, 4)});
    scn.items.push_back({3, 10.0, everyone_but(3, 4)});  // the contested item
    scn.items.push_back({3, 10.0, everyone_but(3, 4)});

    // Symmetric pairwise rates (MB/s).
    auto& c = scn.link_capacity;
    c = uniform_link_matrix(4, 1.0);
    auto set = [&](int a, int b, double rate) {
        c[a][b] = rate;
        c[b][a] = rate;
    };
    set(0, 1, 3.0);
    set(0, 2, 4.0);
    set(0, 3, 2.0);
    set(1, 2, 2.0);
    set(1, 3, 1.0);
    set(2, 3, 3.0);

    auto& contested = scn.items[3].interested;
    auto drop = [&](int user) {
        contested.erase(std::remove(contested.begin(), contested.end(), user), contested.end());
    };
    if (preference_case == 2 || preference_case == 4) drop(0);
    if (preference_case == 3 || preference_case == 4) drop(1);
    return scn;
}

scenario symmetric_group() {
    return four_user_base(4.0);
}

}  // namespace airbargain::presets
