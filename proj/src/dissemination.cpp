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

#include "airbargain/dissemination.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace airbargain {

namespace {

bool contains(const std::vector<int>& v, int x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

dissemination_plan build_dissemination_plan(const scenario& scn, int head) {
    return build_dissemination_plan(scn, head, std::vector<bool>(scn.item_count(), false));
}

dissemination_plan build_dissemination_plan(const scenario& scn, int head,
                                            const std::vector<bool>& head_has_item) {
    const int n = scn.user_count();
    if (head < 0 || head >= n)
        throw std::out_of_range("head index " + std::to_string(head) + " out of range [0," +
                                std::to_string(n) + ")");
    if (static_cast<int>(head_has_item.size()) != scn.item_count())
        throw std::invalid_argument("head_has_item size does not match item count");

    dissemination_plan plan;
    plan.head = head;
    plan.items.resize(scn.item_count());

    for (int m = 0; m < scn.item_count(); ++m) {
        const data_item& item = scn.items[m];
        item_dissemination& d = plan.items[m];

        if (item.owner == head) {
            // The head sends its own data directly to every interested user.
            for (int r : item.interested) d.links.push_back({head, r});
            d.upload_required = false;
            d.delivery_count = static_cast<int>(item.interested.size());
        } else if (head_has_item[m]) {
            // Already stored at the head: only the fan-out remains.
            for (int r : item.interested)
                if (r != head) d.links.push_back({head, r});
            d.upload_required = false;
            d.delivery_count = static_cast<int>(d.links.size());
        } else if (!item.interested.empty()) {
            d.links.push_back({item.owner, head});
            for (int r : item.interested)
                if (r != head) d.links.push_back({head, r});
            d.upload_required = true;
            // The upload serves the head itself when the head wants the item,
            // so every interested user ends up with a copy.
            d.delivery_count = static_cast<int>(item.interested.size());
        }

        d.transmission_count = static_cast<int>(d.links.size());
        d.time_weight = 0.0;
        for (const directed_link& l : d.links) d.time_weight += 1.0 / scn.link_capacity[l.from][l.to];
        if (d.transmission_count > 0) plan.active.push_back(m);
    }
    return plan;
}

double transmitted_amount(const item_dissemination& item, double airtime_s) {
    if (airtime_s < 0.0) throw std::invalid_argument("airtime must be non-negative");
    if (item.transmission_count == 0 || !(item.time_weight > 0.0))
        throw std::domain_error("undefined dissemination: item has no links");
    return airtime_s / item.time_weight;
}

double dissemination_rate(const item_dissemination& item) {
    if (item.delivery_count == 0) return 0.0;
    return static_cast<double>(item.delivery_count) / item.time_weight;
}

double allocation_upper_bound(const scenario& scn, const dissemination_plan& plan, int item) {
    return scn.items[item].size_mb * plan.items[item].time_weight;
}

void check_allocation(const scenario& scn, const dissemination_plan& plan, const allocation& x) {
    if (x.airtime_s.size() != plan.items.size())
        throw std::invalid_argument("allocation size does not match plan");
    constexpr double slack = 1e-9;
    double total = 0.0;
    for (int m = 0; m < static_cast<int>(plan.items.size()); ++m) {
        const double xm = x.airtime_s[m];
        if (xm < -slack)
            throw std::invalid_argument("allocation[" + std::to_string(m) + "] is negative");
        if (plan.items[m].transmission_count == 0 && xm > slack)
            throw std::invalid_argument("allocation[" + std::to_string(m) +
                                        "] assigns airtime to an inactive item");
        if (plan.items[m].transmission_count > 0 &&
            xm > allocation_upper_bound(scn, plan, m) * (1.0 + 1e-9) + slack)
            throw std::invalid_argument("allocation[" + std::to_string(m) +
                                        "] exceeds the item's airtime bound");
        total += xm;
    }
    if (total > scn.airtime_horizon_s * (1.0 + 1e-9) + slack)
        throw std::invalid_argument("allocation exceeds the airtime horizon");
}

std::vector<flow_summary> aggregate_flows(const scenario& scn, const dissemination_plan& plan,
                                          const allocation& x) {
    check_allocation(scn, plan, x);
    return aggregate_flows_unchecked(scn, plan, x);
}

std::vector<flow_summary> aggregate_flows_unchecked(const scenario& scn,
                                                    const dissemination_plan& plan,
                                                    const allocation& x) {
    const int n = scn.user_count();
    const int head = plan.head;
    std::vector<flow_summary> flows(n);

    for (int m : plan.active) {
        const double xm = x.airtime_s[m];
        if (xm == 0.0) continue;
        const data_item& item = scn.items[m];
        const item_dissemination& d = plan.items[m];
        const double moved = xm / d.time_weight;  // MB on every link

        flows[item.owner].disseminated_mb += d.delivery_count * moved;

        for (int r : item.interested) {
            if (r == head) continue;
            flows[r].received_interest_mb += moved;
            flows[r].received_mb += moved;
        }
        if (d.upload_required) {
            flows[head].received_mb += moved;
            if (contains(item.interested, head)) flows[head].received_interest_mb += moved;
            flows[item.owner].sent_mb += moved;
        }

        const int fan_out = d.transmission_count - (d.upload_required ? 1 : 0);
        if (item.owner == head) {
            flows[head].sent_mb += d.transmission_count * moved;
        } else {
            flows[head].sent_mb += fan_out * moved;
            flows[head].forwarded_mb += fan_out * moved;
        }
    }

    for (int i = 0; i < n; ++i)
        flows[i].energy_j = scn.unit_energy_send * flows[i].sent_mb +
                            scn.unit_energy_recv * flows[i].received_mb;
    return flows;
}

}  // namespace airbargain
