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

#include "airbargain/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "airbargain/bargaining.hpp"
#include "airbargain/log.hpp"
#include "airbargain/utility.hpp"

namespace airbargain {

namespace {

int slot_count(double horizon, double slot_s) {
    return static_cast<int>(std::ceil(horizon / slot_s - 1e-12));
}

slot_state make_state(const scenario& scn) {
    slot_state st;
    st.totals.assign(scn.user_count(), flow_summary{});
    st.rewards.assign(scn.user_count(), 0.0);
    st.remaining_mb.resize(scn.item_count());
    for (int m = 0; m < scn.item_count(); ++m) st.remaining_mb[m] = scn.items[m].size_mb;
    st.head_stored.assign(scn.item_count(), false);
    return st;
}

std::vector<double> cumulative_utilities(const scenario& scn, const slot_state& st) {
    std::vector<double> u(scn.user_count());
    for (int i = 0; i < scn.user_count(); ++i)
        u[i] = valuation(st.totals[i].disseminated_mb + st.totals[i].received_interest_mb) -
               energy_cost(st.totals[i].energy_j, scn.users[i].energy_budget_joules,
                           scn.users[i].sensitivity) +
               st.rewards[i];
    return u;
}

void accrue(const scenario& scn, const dissemination_plan& plan, const allocation& realized,
            slot_state& st) {
    const auto flows = aggregate_flows_unchecked(scn, plan, realized);
    for (int i = 0; i < scn.user_count(); ++i) {
        st.totals[i].disseminated_mb += flows[i].disseminated_mb;
        st.totals[i].received_interest_mb += flows[i].received_interest_mb;
        st.totals[i].forwarded_mb += flows[i].forwarded_mb;
        st.totals[i].sent_mb += flows[i].sent_mb;
        st.totals[i].received_mb += flows[i].received_mb;
        st.totals[i].energy_j += flows[i].energy_j;
    }
    st.rewards[plan.head] += scn.unit_reward * flows[plan.head].forwarded_mb;

    for (int m : plan.active) {
        const double xm = realized.airtime_s[m];
        if (xm <= 0.0) continue;
        const double moved = xm / plan.items[m].time_weight;
        st.remaining_mb[m] = std::max(0.0, st.remaining_mb[m] - moved);
        // The conservative store rule: the flag flips only once the head has
        // the item in full, which under equal link progress coincides with
        // full delivery.
        if (plan.items[m].upload_required && st.remaining_mb[m] <= 1e-9)
            st.head_stored[m] = true;
    }
}

void finalize(const scenario& scn, const slot_state& st, timeline_result& result) {
    result.totals = st.totals;
    result.rewards = st.rewards;
    result.final_utilities = cumulative_utilities(scn, st);
    result.plain_product = 1.0;
    result.weighted_product = 1.0;
    for (int i = 0; i < scn.user_count(); ++i) {
        const double u = std::max(result.final_utilities[i], 0.0);
        result.plain_product *= u;
        result.weighted_product *= std::pow(u, scn.bargaining_power[i]);
    }
    result.total_disseminated_mb = 0.0;
    for (const auto& f : result.totals) result.total_disseminated_mb += f.disseminated_mb;
    result.head_counts.assign(scn.user_count(), 0);
    for (const auto& slot : result.slots)
        if (!slot.skipped && slot.head >= 0) ++result.head_counts[slot.head];
}

}  // namespace

timeline_result run_adaptive(const scenario& scn, double slot_s, const channel_model& channel,
                             std::uint64_t seed, const solver_options& opt) {
    scn.validate();
    if (!(slot_s > 0.0)) throw std::invalid_argument("slot size must be > 0");

    const int n = scn.user_count();
    const int slots = slot_count(scn.airtime_horizon_s, slot_s);
    const auto timeline = make_capacity_timeline(scn, channel, slots, seed);

    slot_state st = make_state(scn);
    timeline_result result;

    for (int k = 0; k < slots; ++k) {
        const double length = std::min(slot_s, scn.airtime_horizon_s - k * slot_s);
        scenario slot_scn = scn;
        slot_scn.link_capacity = timeline[k];

        std::vector<double> base_value(n), base_energy(n), base_reward(n);
        std::vector<double> tie_priority(n);
        for (int i = 0; i < n; ++i) {
            base_value[i] = st.totals[i].disseminated_mb + st.totals[i].received_interest_mb;
            base_energy[i] = st.totals[i].energy_j;
            base_reward[i] = st.rewards[i];
            tie_priority[i] = scn.users[i].energy_budget_joules - st.totals[i].energy_j;
        }

        std::vector<sub_solution> candidates;
        std::vector<dissemination_plan> plans;
        candidates.reserve(n);
        plans.reserve(n);
        for (int head = 0; head < n; ++head) {
            plans.push_back(build_dissemination_plan(slot_scn, head, st.head_stored));
            candidates.push_back(
                solve_bargaining(build_bargaining_problem(slot_scn, plans.back(), length,
                                                          st.remaining_mb, base_value,
                                                          base_energy, base_reward),
                                 opt));
        }

        slot_record record;
        record.index = k;
        record.length_s = length;
        record.capacities = timeline[k];
        record.alloc.airtime_s.assign(scn.item_count(), 0.0);
        try {
            joint_solution picked = select_head(std::move(candidates), tie_priority);
            record.head = picked.selected_head;
            record.alloc = picked.alloc;
            accrue(slot_scn, plans[picked.selected_head], picked.alloc, st);
            record.utilities = cumulative_utilities(scn, st);
        } catch (const no_agreement_error&) {
            record.skipped = true;
            record.utilities = cumulative_utilities(scn, st);
            log_info("slot %d skipped: no feasible candidate head", k);
        }
        result.slots.push_back(std::move(record));
    }

    finalize(scn, st, result);
    return result;
}

timeline_result run_non_adaptive(const scenario& scn, double slot_s, const channel_model& channel,
                                 std::uint64_t seed, const solver_options& opt) {
    scn.validate();
    if (!(slot_s > 0.0)) throw std::invalid_argument("slot size must be > 0");

    const int n = scn.user_count();
    const int slots = slot_count(scn.airtime_horizon_s, slot_s);
    const auto timeline = make_capacity_timeline(scn, channel, slots, seed);

    // Head and airtime decided once, from the first slot's capacities.
    scenario first_scn = scn;
    if (!timeline.empty()) first_scn.link_capacity = timeline[0];
    const joint_solution decision = solve_joint(first_scn, opt);
    const int head = decision.selected_head;

    slot_state st = make_state(scn);
    timeline_result result;

    for (int k = 0; k < slots; ++k) {
        const double length = std::min(slot_s, scn.airtime_horizon_s - k * slot_s);
        const double share = length / scn.airtime_horizon_s;
        scenario slot_scn = scn;
        slot_scn.link_capacity = timeline[k];
        const dissemination_plan plan = build_dissemination_plan(slot_scn, head);

        // Fixed airtime share for this slot; what it moves depends on the
        // realized rates, no more than the data still missing.
        allocation realized;
        realized.airtime_s.assign(scn.item_count(), 0.0);
        for (int m : plan.active) {
            const double airtime = decision.alloc.airtime_s[m] * share;
            if (airtime <= 0.0) continue;
            const double moved =
                std::min(airtime / plan.items[m].time_weight, st.remaining_mb[m]);
            realized.airtime_s[m] = moved * plan.items[m].time_weight;
        }

        // Radios stop when a battery would run out: scale the whole slot down
        // to keep every user strictly under budget.
        const auto slot_flows = aggregate_flows_unchecked(slot_scn, plan, realized);
        double scale = 1.0;
        for (int i = 0; i < n; ++i) {
            const double room =
                scn.users[i].energy_budget_joules * (1.0 - 1e-12) - st.totals[i].energy_j;
            if (slot_flows[i].energy_j > room)
                scale = std::min(scale, std::max(0.0, room / slot_flows[i].energy_j));
        }
        if (scale < 1.0)
            for (double& xm : realized.airtime_s) xm *= scale;

        slot_record record;
        record.index = k;
        record.length_s = length;
        record.capacities = timeline[k];
        record.head = head;
        record.alloc = realized;
        accrue(slot_scn, plan, realized, st);
        record.utilities = cumulative_utilities(scn, st);
        result.slots.push_back(std::move(record));
    }

    finalize(scn, st, result);
    return result;
}

}  // namespace airbargain
