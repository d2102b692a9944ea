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

#ifndef AIRBARGAIN_ADAPTIVE_HPP
#define AIRBARGAIN_ADAPTIVE_HPP

#include <cstdint>
#include <vector>

#include "airbargain/channel.hpp"
#include "airbargain/dissemination.hpp"
#include "airbargain/scenario.hpp"
#include "airbargain/solver.hpp"

namespace airbargain {

/// Cumulative bookkeeping carried across slots: utilities in later slots are
/// evaluated on these running totals, so they never reset.
struct slot_state {
    std::vector<flow_summary> totals;   // per user, summed over past slots
    std::vector<double> rewards;        // per user, forwarding reward earned
    std::vector<double> remaining_mb;   // per item, data not yet delivered
    std::vector<bool> head_stored;      // per item, head received it in full
};

struct slot_record {
    int index = 0;
    double length_s = 0.0;
    capacity_matrix capacities;
    int head = -1;       // -1 when the slot was skipped
    bool skipped = false;
    allocation alloc;    // realized airtime per item, seconds
    std::vector<double> utilities;  // cumulative utilities after this slot
};

struct timeline_result {
    std::vector<slot_record> slots;
    std::vector<flow_summary> totals;      // final per-user flows
    std::vector<double> rewards;           // final per-user rewards
    std::vector<double> final_utilities;
    double plain_product = 0.0;
    double weighted_product = 0.0;
    std::vector<int> head_counts;          // slots each user served as head
    double total_disseminated_mb = 0.0;
};

/// Re-runs head selection and airtime allocation at the start of every slot
/// of size `slot_s` against freshly sampled capacities, maximizing the
/// cumulative-utility Nash product with the slot length as airtime budget.
/// Tied head candidates go to the user with the most remaining energy budget
/// (then the lowest index), so symmetric groups rotate the head duty.
timeline_result run_adaptive(const scenario& scn, double slot_s, const channel_model& channel,
                             std::uint64_t seed, const solver_options& opt = {});

/// Baseline: head and allocation decided once from the first slot's
/// capacities; the per-item airtime is then spread evenly over the horizon
/// while capacities keep evolving, so realized flows follow realized rates.
timeline_result run_non_adaptive(const scenario& scn, double slot_s, const channel_model& channel,
                                 std::uint64_t seed, const solver_options& opt = {});

}  // namespace airbargain

#endif
