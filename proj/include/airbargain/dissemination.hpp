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

#ifndef AIRBARGAIN_DISSEMINATION_HPP
#define AIRBARGAIN_DISSEMINATION_HPP

#include <vector>

#include "airbargain/scenario.hpp"

namespace airbargain {

struct directed_link {
    int from = 0;
    int to = 0;
    bool operator==(const directed_link&) const = default;
};

/// How one data item travels under a given head: the owner uploads to the
/// head (unless the head already stores it), and the head fans out to the
/// remaining interested users. All links of a dissemination carry the same
/// number of bytes (equal transmission progress).
struct item_dissemination {
    std::vector<directed_link> links;       // upload link first (when present), then fan-out
    int transmission_count = 0;    // == links.size()
    bool upload_required = false;  // head must first receive the item from its owner
    int delivery_count = 0;        // interested users that receive the item here
    double time_weight = 0.0;      // seconds of airtime per MB disseminated (sum of 1/rate)
};

struct dissemination_plan {
    int head = 0;
    std::vector<item_dissemination> items;  // parallel to scenario.items
    std::vector<int> active;                // item indices that need airtime
};

/// Airtime assigned to each item's dissemination, seconds. Entries for
/// inactive items must stay zero.
struct allocation {
    std::vector<double> airtime_s;
};

/// Per-user totals over one contact (all MB except energy).
struct flow_summary {
    double disseminated_mb = 0.0;       // own data delivered to interested users
    double received_interest_mb = 0.0;  // data of interest received
    double forwarded_mb = 0.0;          // relayed for others (head only)
    double sent_mb = 0.0;
    double received_mb = 0.0;
    double energy_j = 0.0;
};

/// Head holds only its own items at contact start.
dissemination_plan build_dissemination_plan(const scenario& scn, int head);

/// `head_has_item[m]` marks items the head already stores, so the owner
/// upload is skipped for them.
dissemination_plan build_dissemination_plan(const scenario& scn, int head,
                                            const std::vector<bool>& head_has_item);

/// MB carried by every link of the item's dissemination for the given
/// airtime. Throws std::domain_error when the item has no links.
double transmitted_amount(const item_dissemination& item, double airtime_s);

/// Average dissemination rate: MB delivered to interested users per second
/// of the dissemination's airtime. Zero when nobody is interested.
double dissemination_rate(const item_dissemination& item);

/// Largest useful airtime for the item (enough to move the full size).
double allocation_upper_bound(const scenario& scn, const dissemination_plan& plan, int item);

/// Throws std::invalid_argument when the allocation violates its bounds
/// against this plan (negative entries, above per-item limits, above the
/// horizon, or airtime on inactive items).
void check_allocation(const scenario& scn, const dissemination_plan& plan, const allocation& x);

/// Per-user flow totals for an allocation. Validates the allocation first.
std::vector<flow_summary> aggregate_flows(const scenario& scn, const dissemination_plan& plan,
                                          const allocation& x);

/// Same arithmetic without the bound checks; for evaluating the (linear)
/// flow map at points an epsilon outside the feasible box, e.g. in numerical
/// differentiation.
std::vector<flow_summary> aggregate_flows_unchecked(const scenario& scn,
                                                    const dissemination_plan& plan,
                                                    const allocation& x);

}  // namespace airbargain

#endif
