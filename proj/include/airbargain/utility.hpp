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

#ifndef AIRBARGAIN_UTILITY_HPP
#define AIRBARGAIN_UTILITY_HPP

#include <stdexcept>
#include <vector>

#include "airbargain/dissemination.hpp"
#include "airbargain/scenario.hpp"

namespace airbargain {

/// Energy use reached (or would exceed) the budget, where the cost curve
/// diverges. Distinct from an ordinary constraint violation.
struct budget_exhausted_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// log(1 + amount): strictly concave, increasing, zero at zero.
double valuation(double amount_mb);

/// sensitivity * (1/(budget-energy) - 1/budget): strictly convex, increasing,
/// zero at zero, diverging as energy approaches the budget.
/// Throws budget_exhausted_error when energy_j >= budget_j.
double energy_cost(double energy_j, double budget_j, double sensitivity);

/// valuation(d+b) - energy_cost(e) + [is_head] * unit_reward * f.
double utility(const flow_summary& flow, bool is_head, double unit_reward,
               const user_profile& user);

struct nash_products_result {
    double weighted = 0.0;       // product of u_i^alpha_i
    double plain = 0.0;          // product of u_i
    double log_objective = 0.0;  // sum of alpha_i * log u_i (-inf when any u_i == 0)
};

/// Throws std::domain_error on negative utilities.
nash_products_result nash_products(const std::vector<double>& utilities,
                                   const std::vector<double>& powers);

}  // namespace airbargain

#endif
