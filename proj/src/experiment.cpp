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

#include "airbargain/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "airbargain/adaptive.hpp"
#include "airbargain/log.hpp"

namespace airbargain {

namespace {

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void strip_interest(std::vector<int>& interested, int user) {
    interested.erase(std::remove(interested.begin(), interested.end(), user), interested.end());
}

// All rows of one sweep value plus which candidate won.
struct sweep_point {
    std::vector<result_row> rows;
    std::optional<int> selected;
};

sweep_point run_static_point(const scenario& base, const experiment_spec& spec, double value,
                             const solver_options& opt) {
    const scenario scn = apply_sweep_value(base, spec, value);
    const int n = scn.user_count();

    // A bargaining_power sweep varies the head's own power; any other sweep
    // with a head_power set keeps that role-attached power fixed.
    std::optional<double> head_power = spec.head_power;
    if (spec.sweep == sweep_kind::bargaining_power) head_power = value;

    std::vector<sub_solution> candidates;
    candidates.reserve(n);
    sweep_point point;
    if (head_power) {
        joint_solution joint = role_power_selection(scn, *head_power, opt);
        point.selected = joint.selected_head;
        candidates = std::move(joint.candidates);
    } else {
        for (int head = 0; head < n; ++head)
            candidates.push_back(solve_subproblem(scn, head, opt));
        try {
            point.selected = select_head(candidates).selected_head;
        } catch (const no_agreement_error&) {
            point.selected = std::nullopt;
        }
    }

    for (int head = 0; head < n; ++head) {
        const sub_solution& c = candidates[head];
        result_row row;
        row.sweep_value = value;
        row.candidate_head = head;
        row.selected = point.selected && *point.selected == head;
        row.status = c.status;
        row.plain_product = c.plain_product;
        row.weighted_product = c.weighted_product;
        row.utility = c.utilities;
        row.airtime_s = airtime_per_user(scn, c.alloc);
        const auto flows =
            aggregate_flows(scn, build_dissemination_plan(scn, head), c.alloc);
        row.energy_j.resize(n);
        row.disseminated_mb.resize(n);
        for (int i = 0; i < n; ++i) {
            row.energy_j[i] = flows[i].energy_j;
            row.disseminated_mb[i] = flows[i].disseminated_mb;
            row.total_disseminated_mb += flows[i].disseminated_mb;
        }
        if (c.status == solve_status::infeasible) {
            row.utility.assign(n, 0.0);
            row.airtime_s.assign(n, 0.0);
            row.energy_j.assign(n, 0.0);
            row.disseminated_mb.assign(n, 0.0);
            row.total_disseminated_mb = 0.0;
        }
        point.rows.push_back(std::move(row));
    }
    return point;
}

sweep_point run_slot_point(const scenario& base, const experiment_spec& spec, double slot_s,
                           const solver_options& opt) {
    const int n = base.user_count();
    result_row row;
    row.sweep_value = slot_s;
    row.status = solve_status::optimal;
    row.utility.assign(n, 0.0);
    row.airtime_s.assign(n, 0.0);
    row.energy_j.assign(n, 0.0);
    row.disseminated_mb.assign(n, 0.0);

    std::vector<int> head_counts(n, 0);
    for (int seed = 0; seed < spec.seeds; ++seed) {
        const timeline_result run =
            run_adaptive(base, slot_s, spec.channel, static_cast<std::uint64_t>(seed), opt);
        row.plain_product += run.plain_product;
        row.weighted_product += run.weighted_product;
        for (int i = 0; i < n; ++i) {
            row.utility[i] += run.final_utilities[i];
            row.energy_j[i] += run.totals[i].energy_j;
            row.disseminated_mb[i] += run.totals[i].disseminated_mb;
            head_counts[i] += run.head_counts[i];
        }
        for (const auto& slot : run.slots) {
            const auto per_user = airtime_per_user(base, slot.alloc);
            for (int i = 0; i < n; ++i) row.airtime_s[i] += per_user[i];
        }
    }
    const double inv = 1.0 / spec.seeds;
    row.plain_product *= inv;
    row.weighted_product *= inv;
    for (int i = 0; i < n; ++i) {
        row.utility[i] *= inv;
        row.airtime_s[i] *= inv;
        row.energy_j[i] *= inv;
        row.disseminated_mb[i] *= inv;
        row.total_disseminated_mb += row.disseminated_mb[i];
    }

    const int top =
        static_cast<int>(std::max_element(head_counts.begin(), head_counts.end()) -
                         head_counts.begin());
    row.candidate_head = top;
    row.selected = true;

    sweep_point point;
    point.selected = top;
    point.rows.push_back(std::move(row));
    return point;
}

}  // namespace

std::vector<double> airtime_per_user(const scenario& scn, const allocation& alloc) {
    std::vector<double> out(scn.user_count(), 0.0);
    for (int m = 0; m < scn.item_count(); ++m) out[scn.items[m].owner] += alloc.airtime_s[m];
    return out;
}

joint_solution role_power_selection(const scenario& scn, double head_power,
                                    const solver_options& opt) {
    const int n = scn.user_count();
    if (!(head_power > 0.0 && head_power < 1.0))
        throw std::invalid_argument("head power must lie in (0,1)");

    std::vector<sub_solution> candidates;
    candidates.reserve(n);
    for (int head = 0; head < n; ++head) {
        scenario powered = scn;
        for (int i = 0; i < n; ++i)
            powered.bargaining_power[i] = (1.0 - head_power) / (n - 1);
        powered.bargaining_power[head] = head_power;
        candidates.push_back(solve_subproblem(powered, head, opt));
    }

    double best = -1.0;
    for (const auto& c : candidates)
        if (c.status != solve_status::infeasible) best = std::max(best, c.plain_product);
    if (best < 0.0)
        throw no_agreement_error("every candidate head is infeasible: no agreement possible");
    int winner = -1;
    for (int h = 0; h < n && winner < 0; ++h)
        if (candidates[h].status != solve_status::infeasible &&
            best - candidates[h].plain_product <= 1e-9 * std::fabs(best))
            winner = h;

    joint_solution joint;
    joint.selected_head = winner;
    joint.alloc = candidates[winner].alloc;
    joint.utilities = candidates[winner].utilities;
    joint.candidates = std::move(candidates);
    return joint;
}

scenario apply_sweep_value(const scenario& scn, const experiment_spec& spec, double value) {
    scenario out = scn;
    switch (spec.sweep) {
        case sweep_kind::budget:
            out.users.at(spec.target_user).energy_budget_joules = value;
            break;
        case sweep_kind::unit_reward:
            out.unit_reward = value;
            break;
        case sweep_kind::bargaining_power:
            // The power is role-attached; the scenario itself is unchanged
            // and the candidate construction applies the value per head.
            if (!(value > 0.0 && value < 1.0))
                throw std::invalid_argument("head power must lie in (0,1)");
            break;
        case sweep_kind::data_load: {
            int item = -1;
            for (int m = 0; m < out.item_count(); ++m)
                if (out.items[m].owner == spec.target_user) {
                    item = m;
                    break;
                }
            if (item < 0)
                throw std::invalid_argument("data_load sweep: target user owns no item");
            out.items[item].size_mb = value;
            break;
        }
        case sweep_kind::preference_case: {
            const int c = static_cast<int>(value);
            if (c < 1 || c > 4) throw std::invalid_argument("preference case must be 1..4");
            auto& interested = out.items.at(spec.target_item).interested;
            if (c == 2 || c == 4) strip_interest(interested, 0);
            if (c == 3 || c == 4) strip_interest(interested, 1);
            break;
        }
        case sweep_kind::slot_size:
            break;  // the value is the slot length, the scenario is unchanged
    }
    return out;
}

experiment_result run_experiment(const scenario& scn, const experiment_spec& spec,
                                 const solver_options& opt) {
    scn.validate();
    experiment_result result;
    result.sweep = spec.sweep;
    result.users = scn.user_count();
    result.values = spec.values;

    // One task per sweep value; output assembled in sweep order.
    std::vector<std::future<sweep_point>> tasks;
    tasks.reserve(spec.values.size());
    for (double value : spec.values) {
        tasks.push_back(std::async(std::launch::async, [&, value] {
            return spec.sweep == sweep_kind::slot_size ? run_slot_point(scn, spec, value, opt)
                                                       : run_static_point(scn, spec, value, opt);
        }));
    }

    for (std::size_t k = 0; k < tasks.size(); ++k) {
        sweep_point point = tasks[k].get();
        result.selected_head.push_back(point.selected);
        for (auto& row : point.rows) result.rows.push_back(std::move(row));
        log_info("sweep %s = %g done", to_string(spec.sweep), spec.values[k]);
    }

    if (spec.sweep == sweep_kind::unit_reward) {
        // Smallest swept reward at which the selected head keeps no airtime
        // for its own data: the others-first point.
        std::vector<std::size_t> order(result.values.size());
        for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return result.values[a] < result.values[b]; });
        for (std::size_t k : order) {
            if (!result.selected_head[k]) continue;
            const int head = *result.selected_head[k];
            for (const auto& row : result.rows) {
                if (row.sweep_value == result.values[k] && row.candidate_head == head &&
                    row.airtime_s[head] <= 1e-6) {
                    result.others_first_gamma = result.values[k];
                    break;
                }
            }
            if (result.others_first_gamma) break;
        }
    }
    return result;
}

void write_results_csv(const experiment_result& result, std::ostream& out) {
    out << "sweep,value,candidate_head,selected,status,plain_product,weighted_product";
    for (int i = 1; i <= result.users; ++i) out << ",u_" << i;
    for (int i = 1; i <= result.users; ++i) out << ",airtime_" << i;
    for (int i = 1; i <= result.users; ++i) out << ",energy_" << i;
    for (int i = 1; i <= result.users; ++i) out << ",disseminated_" << i;
    out << ",total_disseminated\n";
    for (const auto& row : result.rows) {
        out << to_string(result.sweep) << ',' << fmt6(row.sweep_value) << ','
            << row.candidate_head + 1 << ',' << (row.selected ? 1 : 0) << ','
            << to_string(row.status) << ',' << fmt6(row.plain_product) << ','
            << fmt6(row.weighted_product);
        for (double v : row.utility) out << ',' << fmt6(v);
        for (double v : row.airtime_s) out << ',' << fmt6(v);
        for (double v : row.energy_j) out << ',' << fmt6(v);
        for (double v : row.disseminated_mb) out << ',' << fmt6(v);
        out << ',' << fmt6(row.total_disseminated_mb) << "\n";
    }
}

std::string summary_json(const experiment_result& result) {
    nlohmann::ordered_json root;
    root["sweep"] = to_string(result.sweep);
    root["values"] = result.values;
    auto heads = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < result.values.size(); ++k) {
        nlohmann::ordered_json entry;
        entry["value"] = result.values[k];
        if (result.selected_head[k])
            entry["head"] = *result.selected_head[k] + 1;
        else
            entry["head"] = nullptr;
        heads.push_back(std::move(entry));
    }
    root["selected_heads"] = std::move(heads);
    if (result.others_first_gamma)
        root["others_first_gamma"] = *result.others_first_gamma;
    else
        root["others_first_gamma"] = nullptr;
    return root.dump(2) + "\n";
}

void emit_plotdata(const experiment_result& result, const std::string& kind, std::ostream& out) {
    const std::string sep = "_vs_";
    const auto pos = kind.find(sep);
    if (pos == std::string::npos) throw std::invalid_argument("unknown plot kind: " + kind);
    const std::string metric = kind.substr(0, pos);
    const std::string axis = kind.substr(pos + sep.size());
    if (axis != to_string(result.sweep))
        throw std::invalid_argument("plot kind " + kind + " does not match the " +
                                    to_string(result.sweep) + " sweep");
    if (metric != "airtime" && metric != "utility" && metric != "energy" &&
        metric != "product" && metric != "disseminated")
        throw std::invalid_argument("unknown plot kind: " + kind);

    out << "series,x,y\n";

    auto selected_row = [&](double value) -> const result_row* {
        for (const auto& row : result.rows)
            if (row.sweep_value == value && row.selected) return &row;
        return nullptr;
    };

    if (metric == "product") {
        for (const char* series : {"plain_product", "weighted_product"}) {
            for (double value : result.values) {
                const result_row* row = selected_row(value);
                if (row == nullptr) continue;
                const double y = std::string(series) == "plain_product" ? row->plain_product
                                                                        : row->weighted_product;
                out << series << ',' << fmt6(value) << ',' << fmt6(y) << "\n";
            }
        }
        return;
    }

    for (int i = 0; i < result.users; ++i) {
        for (double value : result.values) {
            const result_row* row = selected_row(value);
            if (row == nullptr) continue;
            const double y = metric == "airtime"       ? row->airtime_s[i]
                             : metric == "utility"      ? row->utility[i]
                             : metric == "disseminated" ? row->disseminated_mb[i]
                                                        : row->energy_j[i];
            out << "user_" << i + 1 << ',' << fmt6(value) << ',' << fmt6(y) << "\n";
        }
    }
}

}  // namespace airbargain
