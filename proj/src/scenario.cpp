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

#include "airbargain/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace airbargain {

std::vector<std::string> scenario::validation_errors() const {
    std::vector<std::string> errors;
    const int n = user_count();

    if (n < 2) errors.push_back("users: need at least 2 group members, got " + std::to_string(n));

    for (int i = 0; i < n; ++i) {
        const auto& u = users[i];
        if (!(u.energy_budget_joules > 0.0))
            errors.push_back("users[" + std::to_string(i) + "].energy_budget_joules: must be > 0");
        if (!(u.sensitivity >= 0.0 && u.sensitivity <= 1.0))
            errors.push_back("users[" + std::to_string(i) + "].sensitivity: must lie in [0,1]");
    }

    if (static_cast<int>(link_capacity.size()) != n) {
        errors.push_back("link_capacity: expected " + std::to_string(n) + " rows, got " +
                         std::to_string(link_capacity.size()));
    } else {
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(link_capacity[i].size()) != n) {
                errors.push_back("link_capacity[" + std::to_string(i) + "]: expected " +
                                 std::to_string(n) + " entries");
                continue;
            }
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                if (!(link_capacity[i][j] > 0.0))
                    errors.push_back("link_capacity[" + std::to_string(i) + "][" +
                                     std::to_string(j) + "]: must be > 0");
            }
        }
    }

    if (!(airtime_horizon_s >= 0.0)) errors.push_back("airtime_horizon_s: must be >= 0");
    if (!(unit_reward >= 0.0)) errors.push_back("unit_reward: must be >= 0");
    if (!(unit_energy_send >= 0.0)) errors.push_back("unit_energy_send: must be >= 0");
    if (!(unit_energy_recv >= 0.0)) errors.push_back("unit_energy_recv: must be >= 0");

    if (static_cast<int>(bargaining_power.size()) != n) {
        errors.push_back("bargaining_power: expected " + std::to_string(n) + " weights, got " +
                         std::to_string(bargaining_power.size()));
    } else {
        double sum = 0.0;
        bool nonneg = true;
        for (int i = 0; i < n; ++i) {
            if (bargaining_power[i] < 0.0) {
                errors.push_back("bargaining_power[" + std::to_string(i) + "]: must be >= 0");
                nonneg = false;
            }
            sum += bargaining_power[i];
        }
        if (nonneg && std::fabs(sum - 1.0) > 1e-12)
            errors.push_back("bargaining_power: weights must sum to 1 (got " + std::to_string(sum) + ")");
    }

    for (int m = 0; m < item_count(); ++m) {
        const auto& item = items[m];
        const std::string tag = "items[" + std::to_string(m) + "]";
        if (item.owner < 0 || item.owner >= n) {
            errors.push_back(tag + ".owner: index " + std::to_string(item.owner) + " out of range");
            continue;
        }
        if (!(item.size_mb > 0.0)) errors.push_back(tag + ".size_mb: must be > 0");
        for (int r : item.interested) {
            if (r < 0 || r >= n)
                errors.push_back(tag + ".interested: index " + std::to_string(r) + " out of range");
            else if (r == item.owner)
                errors.push_back(tag + ".interested: owner cannot be interested in its own data");
        }
        auto sorted = item.interested;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            errors.push_back(tag + ".interested: duplicate user index");
    }

    return errors;
}

void scenario::validate() const {
    auto errors = validation_errors();
    if (errors.empty()) return;
    std::ostringstream oss;
    oss << "invalid scenario (" << errors.size() << " violation" << (errors.size() > 1 ? "s" : "")
        << "):";
    for (const auto& e : errors) oss << "\n  - " << e;
    throw std::invalid_argument(oss.str());
}

std::vector<std::vector<double>> uniform_link_matrix(int n, double rate) {
    std::vector<std::vector<double>> m(n, std::vector<double>(n, rate));
    for (int i = 0; i < n; ++i) m[i][i] = 0.0;
    return m;
}

std::vector<double> equal_power(int n) {
    return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

}  // namespace airbargain
