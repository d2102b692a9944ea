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

#ifndef AIRBARGAIN_ORACLE_HPP
#define AIRBARGAIN_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "airbargain/dissemination.hpp"
#include "airbargain/scenario.hpp"

// Independent checks for solver results. Everything here evaluates
// utilities through the public flow aggregation path and differentiates
// numerically, so none of the solver's internal machinery is trusted.

namespace airbargain::oracle {

struct grid_spec {
    double resolution = 0.01;  // seconds per grid step
    int max_variables = 4;     // exhaustive search is refused above this
};

struct grid_result {
    allocation best;
    double objective = 0.0;    // -inf when no grid point was feasible
    long points_checked = 0;
};

/// Objective sum_i alpha_i log u_i at a full per-item allocation.
double objective_value(const scenario& scn, int head, const allocation& x);

/// Utilities through plan -> flows -> utility.
std::vector<double> utilities_at(const scenario& scn, int head, const allocation& x);

/// True when x satisfies every constraint of the bargaining problem.
bool is_feasible(const scenario& scn, int head, const allocation& x,
                 double utility_floor = 1e-9);

/// Exhaustive enumeration of the feasible grid. Throws std::invalid_argument
/// when the instance has more allocation variables than grid.max_variables.
grid_result grid_search(const scenario& scn, int head, const grid_spec& grid,
                        double utility_floor = 1e-9);

/// Stationarity plus complementarity norm of the KKT system at x, with
/// multipliers recovered by non-negative least squares over the constraints
/// active within `activity_threshold`. Throws when x is infeasible.
double kkt_residual(const scenario& scn, int head, const allocation& x,
                    double activity_threshold = 1e-7);

/// Worst weighted proportional utility change over sampled feasible
/// allocations: max over samples of sum_i alpha_i (u_i' - u_i*) / u_i*.
/// A value <= 1e-6 certifies weighted proportional fairness on the sample.
/// Returns -inf for an empty sample. Throws when some u_i* is zero.
double fairness_probe(const scenario& scn, int head, const allocation& optimum, int sample_count,
                      std::uint64_t seed);

/// Number of sampled feasible allocations that strictly improve every user
/// at once; zero at a Pareto-optimal point.
int pareto_probe(const scenario& scn, int head, const allocation& optimum, int sample_count,
                 std::uint64_t seed);

/// Bound on the objective's Lipschitz constant (L1 gradient norm) along the
/// segment between two allocations; used to bound the solver-vs-grid gap.
double objective_lipschitz_bound(const scenario& scn, int head, const allocation& from,
                                 const allocation& to, int steps = 9);

}  // namespace airbargain::oracle

#endif
