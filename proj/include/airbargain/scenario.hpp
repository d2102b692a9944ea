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

#ifndef AIRBARGAIN_SCENARIO_HPP
#define AIRBARGAIN_SCENARIO_HPP

#include <string>
#include <vector>

namespace airbargain {

/// One group member. Budgets are for the whole contact period.
struct user_profile {
    double energy_budget_joules = 0.0;  // must be > 0
    double sensitivity = 1.0;           // battery-cost sensitivity, in [0,1]
};

/// A piece of content to disseminate during the contact.
struct data_item {
    int owner = 0;                 // user index holding the data
    double size_mb = 0.0;          // must be > 0
    std::vector<int> interested;   // sorted user indices; never contains the owner
};

/// A full bargaining-game instance: who meets, what they carry, how fast
/// the links are and how long the contact lasts.
struct scenario {
    std::vector<user_profile> users;
    std::vector<data_item> items;
    std::vector<std::vector<double>> link_capacity;  // MB/s, [from][to]; diagonal unused
    double airtime_horizon_s = 20.0;                 // shared channel time available
    double unit_reward = 0.01;                       // reward per MB forwarded by the head
    std::vector<double> bargaining_power;            // per-user weight, sums to 1
    double unit_energy_send = 2.85;                  // J/MB
    double unit_energy_recv = 2.85;                  // J/MB

    int user_count() const { return static_cast<int>(users.size()); }
    int item_count() const { return static_cast<int>(items.size()); }

    /// All invariant violations, empty when the instance is well formed.
    std::vector<std::string> validation_errors() const;

    /// Throws std::invalid_argument listing every violation at once.
    void validate() const;
};

/// n x n matrix with every off-diagonal entry set to `rate` (diagonal zero).
std::vector<std::vector<double>> uniform_link_matrix(int n, double rate);

/// Equal bargaining power for n users.
std::vector<double> equal_power(int n);

}  // namespace airbargain

#endif
