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

#include "airbargain/utility.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace airbargain {

double valuation(double amount_mb) {
    if (amount_mb < 0.0) throw std::invalid_argument("valuation: amount must be non-negative");
    return std::log1p(amount_mb);
}

double energy_cost(double energy_j, double budget_j, double sensitivity) {
    if (energy_j < 0.0) throw std::invalid_argument("energy_cost: energy must be non-negative");
    if (!(budget_j > 0.0)) throw std::invalid_argument("energy_cost: budget must be positive");
    if (energy_j >= budget_j)
        throw budget_exhausted_error("energy " + std::to_string(energy_j) +
                                     " J reaches the budget of " + std::to_string(budget_j) + " J");
    // sensitivity * (1/(E-e) - 1/E), written to stay exact near zero.
    return sensitivity * energy_j / (budget_j * (budget_j - energy_j));
}

double utility(const flow_summary& flow, bool is_head, double unit_reward,
               const user_profile& user) {
    double u = valuation(flow.disseminated_mb + flow.received_interest_mb) -
               energy_cost(flow.energy_j, user.energy_budget_joules, user.sensitivity);
    if (is_head) u += unit_reward * flow.forwarded_mb;
    return u;
}

nash_products_result nash_products(const std::vector<double>& utilities,
                                   const std::vector<double>& powers) {
    if (utilities.size() != powers.size())
        throw std::invalid_argument("nash_products: size mismatch between utilities and powers");
    nash_products_result r;
    r.weighted = 1.0;
    r.plain = 1.0;
    r.log_objective = 0.0;
    for (std::size_t i = 0; i < utilities.size(); ++i) {
        const double u = utilities[i];
        if (u < 0.0)
            throw std::domain_error("nash_products: utility " + std::to_string(i) +
                                    " is negative (" + std::to_string(u) + ")");
        r.plain *= u;
        r.weighted *= std::pow(u, powers[i]);
        if (u == 0.0)
            r.log_objective = -std::numeric_limits<double>::infinity();
        else if (std::isfinite(r.log_objective))
            r.log_objective += powers[i] * std::log(u);
    }
    return r;
}

}  // namespace airbargain
