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

#ifndef AIRBARGAIN_EXPERIMENT_HPP
#define AIRBARGAIN_EXPERIMENT_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "airbargain/scenario_io.hpp"
#include "airbargain/solver.hpp"

namespace airbargain {

/// One CSV line: a candidate head's outcome at one sweep value. For
/// slot-size sweeps the row aggregates the adaptive run (seed means) and the
/// candidate column holds the most frequent head.
struct result_row {
    double sweep_value = 0.0;
    int candidate_head = 0;  // 0-based in memory, 1-based on disk
    bool selected = false;
    solve_status status = solve_status::infeasible;
    double plain_product = 0.0;
    double weighted_product = 0.0;
    std::vector<double> utility;          // per user
    std::vector<double> airtime_s;        // per user (their items summed)
    std::vector<double> energy_j;         // per user
    std::vector<double> disseminated_mb;  // per user
    double total_disseminated_mb = 0.0;
};

struct experiment_result {
    sweep_kind sweep = sweep_kind::budget;
    int users = 0;
    std::vector<double> values;
    std::vector<result_row> rows;                 // grouped by value, then candidate
    std::vector<std::optional<int>> selected_head;  // per value; empty when no agreement
    std::optional<double> others_first_gamma;     // reward sweeps only
};

/// The sweep-modified copy of a scenario for one value.
scenario apply_sweep_value(const scenario& scn, const experiment_spec& spec, double value);

/// Joint solve where the bargaining power follows the head role: candidate
/// h's sub-problem gives `head_power` to user h and splits the rest evenly.
/// Candidates are compared by their plain Nash product (lowest index on
/// ties), the form the published tables rank by.
joint_solution role_power_selection(const scenario& scn, double head_power,
                                    const solver_options& opt = {});

/// Runs every sweep point (worker pool; output in sweep order) and collects
/// rows. Infeasible points are recorded in-row and the run continues.
experiment_result run_experiment(const scenario& scn, const experiment_spec& spec,
                                 const solver_options& opt = {});

/// Fixed-column CSV, floats with 6 significant digits, byte-stable.
void write_results_csv(const experiment_result& result, std::ostream& out);

/// Selected heads per sweep value plus the others-first reward when present.
std::string summary_json(const experiment_result& result);

/// Long-format series for plotting: "series,x,y". `kind` is
/// "<metric>_vs_<sweep>" with metric in {airtime, utility, energy, product};
/// unknown kinds throw.
void emit_plotdata(const experiment_result& result, const std::string& kind, std::ostream& out);

/// Per-user airtime: the allocation entries of the items each user owns.
std::vector<double> airtime_per_user(const scenario& scn, const allocation& alloc);

}  // namespace airbargain

#endif
