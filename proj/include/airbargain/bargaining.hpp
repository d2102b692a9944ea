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

#ifndef AIRBARGAIN_BARGAINING_HPP
#define AIRBARGAIN_BARGAINING_HPP

#include <vector>

#include "airbargain/dissemination.hpp"
#include "airbargain/linalg.hpp"
#include "airbargain/scenario.hpp"

namespace airbargain {

/// The smooth bargaining sub-problem for one candidate head. Every flow
/// quantity is linear in the airtime vector, so each user's utility is
///
///   u_i(x) = log(1 + base_value_i + value_rate_i . x)
///          - cost(base_energy_i + energy_rate_i . x; budget_i, sensitivity_i)
///          + unit_reward * forward_rate . x          (head only)
///          + base_reward_i
///
/// and the solver maximizes sum_i power_i * log u_i(x) over the airtime
/// simplex with per-item bounds, energy budgets and u_i > 0.
///
/// The base_* offsets are zero for a fresh contact; the slot-wise adaptive
/// scheme feeds cumulative totals through them so utilities never reset.
struct bargaining_problem {
    int head = 0;
    int users = 0;
    int items_total = 0;              // item count of the originating scenario
    std::vector<int> item_of_var;     // variable -> scenario item index
    std::vector<double> upper_bound;  // per variable, seconds
    double airtime_budget = 0.0;      // seconds available in this round

    std::vector<std::vector<double>> value_rate;   // [user][var], MB/s into v(.)
    std::vector<std::vector<double>> energy_rate;  // [user][var], J/s
    std::vector<double> forward_rate;              // [var], MB/s forwarded by the head

    std::vector<double> base_value;   // MB already valued
    std::vector<double> base_energy;  // J already spent
    std::vector<double> base_reward;  // reward already earned

    std::vector<double> energy_budget;  // E_i
    std::vector<double> sensitivity;    // delta_i
    std::vector<double> power;          // alpha_i
    double unit_reward = 0.0;

    int var_count() const { return static_cast<int>(upper_bound.size()); }

    double user_utility(int user, const std::vector<double>& x) const;
    std::vector<double> utilities(const std::vector<double>& x) const;

    /// sum_i power_i * log u_i(x); -inf when some u_i <= 0.
    double objective(const std::vector<double>& x) const;
    std::vector<double> objective_gradient(const std::vector<double>& x) const;
    linalg::matrix objective_hessian(const std::vector<double>& x) const;

    /// Expands a variable vector into a full per-item allocation.
    allocation to_allocation(const std::vector<double>& x, int item_count) const;
    /// Projects a full per-item allocation onto the variable vector.
    std::vector<double> from_allocation(const allocation& x) const;
};

/// Builds the sub-problem for a fresh contact.
bargaining_problem build_bargaining_problem(const scenario& scn, const dissemination_plan& plan);

/// Same, but with per-variable upper bounds computed from the given
/// remaining item sizes and with cumulative offsets. Variables whose bound
/// vanishes are dropped. Used by the slot-wise adaptive scheme.
bargaining_problem build_bargaining_problem(const scenario& scn, const dissemination_plan& plan,
                                            double airtime_budget,
                                            const std::vector<double>& remaining_mb,
                                            const std::vector<double>& base_value,
                                            const std::vector<double>& base_energy,
                                            const std::vector<double>& base_reward);

}  // namespace airbargain

#endif
