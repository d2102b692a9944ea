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

#include "airbargain/bargaining.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace airbargain {

namespace {

bool contains(const std::vector<int>& v, int x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

bargaining_problem build_core(const scenario& scn, const dissemination_plan& plan,
                              double airtime_budget, const std::vector<double>& remaining_mb) {
    const int n = scn.user_count();
    bargaining_problem p;
    p.head = plan.head;
    p.users = n;
    p.items_total = scn.item_count();
    p.airtime_budget = airtime_budget;
    p.unit_reward = scn.unit_reward;
    p.base_value.assign(n, 0.0);
    p.base_energy.assign(n, 0.0);
    p.base_reward.assign(n, 0.0);
    p.energy_budget.resize(n);
    p.sensitivity.resize(n);
    for (int i = 0; i < n; ++i) {
        p.energy_budget[i] = scn.users[i].energy_budget_joules;
        p.sensitivity[i] = scn.users[i].sensitivity;
    }
    p.power = scn.bargaining_power;

    for (int m : plan.active) {
        const double bound = remaining_mb[m] * plan.items[m].time_weight;
        if (!(bound > 1e-15)) continue;  // nothing left to move for this item
        p.item_of_var.push_back(m);
        p.upper_bound.push_back(bound);
    }

    const int vars = p.var_count();
    p.value_rate.assign(n, std::vector<double>(vars, 0.0));
    p.energy_rate.assign(n, std::vector<double>(vars, 0.0));
    p.forward_rate.assign(vars, 0.0);

    const int head = plan.head;
    for (int v = 0; v < vars; ++v) {
        const int m = p.item_of_var[v];
        const data_item& item = scn.items[m];
        const item_dissemination& d = plan.items[m];
        const double rate = 1.0 / d.time_weight;  // MB moved per second of airtime

        std::vector<double> sent(n, 0.0), received(n, 0.0);

        p.value_rate[item.owner][v] += d.delivery_count * rate;
        for (int r : item.interested) {
            if (r == head) continue;
            p.value_rate[r][v] += rate;
            received[r] += rate;
        }
        if (d.upload_required) {
            received[head] += rate;
            if (contains(item.interested, head)) p.value_rate[head][v] += rate;
            sent[item.owner] += rate;
        }
        const int fan_out = d.transmission_count - (d.upload_required ? 1 : 0);
        if (item.owner == head) {
            sent[head] += d.transmission_count * rate;
        } else {
            sent[head] += fan_out * rate;
            p.forward_rate[v] = fan_out * rate;
        }
        for (int i = 0; i < n; ++i)
            p.energy_rate[i][v] =
                scn.unit_energy_send * sent[i] + scn.unit_energy_recv * received[i];
    }
    return p;
}

}  // namespace

double bargaining_problem::user_utility(int user, const std::vector<double>& x) const {
    const double value = base_value[user] + linalg::dot(value_rate[user], x);
    const double energy = base_energy[user] + linalg::dot(energy_rate[user], x);
    const double budget = energy_budget[user];
    double u = std::log1p(value) - sensitivity[user] * energy / (budget * (budget - energy)) +
               base_reward[user];
    if (user == head) u += unit_reward * linalg::dot(forward_rate, x);
    return u;
}

std::vector<double> bargaining_problem::utilities(const std::vector<double>& x) const {
    std::vector<double> out(users);
    for (int i = 0; i < users; ++i) out[i] = user_utility(i, x);
    return out;
}

double bargaining_problem::objective(const std::vector<double>& x) const {
    double obj = 0.0;
    for (int i = 0; i < users; ++i) {
        const double u = user_utility(i, x);
        if (!(u > 0.0)) return -std::numeric_limits<double>::infinity();
        obj += power[i] * std::log(u);
    }
    return obj;
}

std::vector<double> bargaining_problem::objective_gradient(const std::vector<double>& x) const {
    const int vars = var_count();
    std::vector<double> grad(vars, 0.0);
    for (int i = 0; i < users; ++i) {
        const double u = user_utility(i, x);
        const double value = base_value[i] + linalg::dot(value_rate[i], x);
        const double energy = base_energy[i] + linalg::dot(energy_rate[i], x);
        const double gap = energy_budget[i] - energy;
        const double wv = 1.0 / (1.0 + value);
        const double we = sensitivity[i] / (gap * gap);
        for (int v = 0; v < vars; ++v) {
            double du = wv * value_rate[i][v] - we * energy_rate[i][v];
            if (i == head) du += unit_reward * forward_rate[v];
            grad[v] += power[i] * du / u;
        }
    }
    return grad;
}

linalg::matrix bargaining_problem::objective_hessian(const std::vector<double>& x) const {
    const int vars = var_count();
    linalg::matrix hess(vars, std::vector<double>(vars, 0.0));
    std::vector<double> du(vars);
    for (int i = 0; i < users; ++i) {
        const double u = user_utility(i, x);
        const double value = base_value[i] + linalg::dot(value_rate[i], x);
        const double energy = base_energy[i] + linalg::dot(energy_rate[i], x);
        const double gap = energy_budget[i] - energy;
        const double wv = 1.0 / (1.0 + value);
        const double we = sensitivity[i] / (gap * gap);
        for (int v = 0; v < vars; ++v) {
            du[v] = wv * value_rate[i][v] - we * energy_rate[i][v];
            if (i == head) du[v] += unit_reward * forward_rate[v];
        }
        const double cv = wv * wv;                       // -v''
        const double ce = 2.0 * sensitivity[i] / (gap * gap * gap);  // g''
        for (int a = 0; a < vars; ++a) {
            for (int b = a; b < vars; ++b) {
                const double d2u = -cv * value_rate[i][a] * value_rate[i][b] -
                                   ce * energy_rate[i][a] * energy_rate[i][b];
                const double h = power[i] * (d2u / u - du[a] * du[b] / (u * u));
                hess[a][b] += h;
                if (a != b) hess[b][a] += h;
            }
        }
    }
    return hess;
}

allocation bargaining_problem::to_allocation(const std::vector<double>& x, int item_count) const {
    allocation a;
    a.airtime_s.assign(item_count, 0.0);
    for (int v = 0; v < var_count(); ++v) a.airtime_s[item_of_var[v]] = x[v];
    return a;
}

std::vector<double> bargaining_problem::from_allocation(const allocation& x) const {
    std::vector<double> out(var_count());
    for (int v = 0; v < var_count(); ++v) out[v] = x.airtime_s[item_of_var[v]];
    return out;
}

bargaining_problem build_bargaining_problem(const scenario& scn, const dissemination_plan& plan) {
    std::vector<double> remaining(scn.item_count());
    for (int m = 0; m < scn.item_count(); ++m) remaining[m] = scn.items[m].size_mb;
    return build_core(scn, plan, scn.airtime_horizon_s, remaining);
}

bargaining_problem build_bargaining_problem(const scenario& scn, const dissemination_plan& plan,
                                            double airtime_budget,
                                            const std::vector<double>& remaining_mb,
                                            const std::vector<double>& base_value,
                                            const std::vector<double>& base_energy,
                                            const std::vector<double>& base_reward) {
    if (static_cast<int>(remaining_mb.size()) != scn.item_count())
        throw std::invalid_argument("remaining_mb size does not match item count");
    bargaining_problem p = build_core(scn, plan, airtime_budget, remaining_mb);
    p.base_value = base_value;
    p.base_energy = base_energy;
    p.base_reward = base_reward;
    return p;
}

}  // namespace airbargain
