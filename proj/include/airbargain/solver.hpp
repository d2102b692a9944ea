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

#ifndef AIRBARGAIN_SOLVER_HPP
#define AIRBARGAIN_SOLVER_HPP

#include <stdexcept>
#include <vector>

#include "airbargain/bargaining.hpp"
#include "airbargain/dissemination.hpp"
#include "airbargain/scenario.hpp"

namespace airbargain {

struct solver_options {
    double tolerance = 1e-8;         // KKT residual target
    int max_newton_iterations = 200; // per barrier stage
    double barrier_initial_t = 1.0;
    double barrier_growth = 20.0;    // factor between barrier stages, > 1
    double utility_floor = 1e-9;     // strict lower bound enforced on every u_i
};

enum class solve_status { optimal, infeasible, budget_boundary };

const char* to_string(solve_status s);

/// Outcome of one candidate-head sub-problem.
struct sub_solution {
    int head = 0;
    solve_status status = solve_status::infeasible;
    allocation alloc;                 // per item, seconds
    std::vector<double> utilities;    // per user at the optimum
    double weighted_product = 0.0;    // product of u_i^alpha_i
    double plain_product = 0.0;       // product of u_i
    double log_objective = 0.0;
    int iterations = 0;               // Newton steps spent
    double kkt_residual = 0.0;
};

/// One round of the decomposition protocol: an agent announces the optimum
/// it obtained for the hypothesis that it becomes the head.
struct broadcast_message {
    int sender = 0;
    double weighted_product = 0.0;
};

struct joint_solution {
    int selected_head = 0;
    allocation alloc;
    std::vector<double> utilities;
    std::vector<sub_solution> candidates;     // ordered by candidate head index
    std::vector<broadcast_message> messages;  // filled by the distributed mode
};

/// Every candidate sub-problem came back infeasible: the group stays at the
/// disagreement point.
struct no_agreement_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Maximizes sum_i alpha_i log u_i over the feasible airtime set via a
/// log-barrier interior-point method with damped Newton steps.
sub_solution solve_bargaining(const bargaining_problem& problem, const solver_options& opt = {});

/// Convenience wrapper: plan + sub-problem + solve for one candidate head.
sub_solution solve_subproblem(const scenario& scn, int head, const solver_options& opt = {});

/// Master step: the candidate with the largest weighted Nash product wins;
/// candidates within 1e-9 relative are tied and the lowest index is taken.
joint_solution select_head(std::vector<sub_solution> candidates);

/// Same, but ties go to the candidate with the highest priority value first
/// (and to the lowest index only among equal priorities).
joint_solution select_head(std::vector<sub_solution> candidates,
                           const std::vector<double>& tie_priority);

/// Centralized path: solve every candidate head, then pick the best.
joint_solution solve_joint(const scenario& scn, const solver_options& opt = {});

/// Simulates the distributed protocol: each agent solves its own sub-problem,
/// broadcasts its Nash product, and applies the argmax rule locally. The
/// result matches the centralized path; the message log records the N
/// broadcasts.
joint_solution run_algorithm1(const scenario& scn, const solver_options& opt = {});

}  // namespace airbargain

#endif
