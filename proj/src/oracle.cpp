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

#include "airbargain/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "airbargain/linalg.hpp"
#include "airbargain/random.hpp"
#include "airbargain/utility.hpp"

namespace airbargain::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct instance {
    const scenario* scn;
    dissemination_plan plan;
    std::vector<int> vars;          // active item indices
    std::vector<double> upper;      // per variable

    instance(const scenario& s, int head) : scn(&s), plan(build_dissemination_plan(s, head)) {
        for (int m : plan.active) {
            vars.push_back(m);
            upper.push_back(allocation_upper_bound(s, plan, m));
        }
    }

    allocation expand(const std::vector<double>& xa) const {
        allocation x;
        x.airtime_s.assign(scn->item_count(), 0.0);
        for (std::size_t v = 0; v < vars.size(); ++v) x.airtime_s[vars[v]] = xa[v];
        return x;
    }

    std::vector<double> compress(const allocation& x) const {
        std::vector<double> xa(vars.size());
        for (std::size_t v = 0; v < vars.size(); ++v) xa[v] = x.airtime_s[vars[v]];
        return xa;
    }

    // Utilities at a (possibly epsilon-out-of-box) point; +inf energy guard.
    std::vector<double> utils(const allocation& x) const {
        const auto flows = aggregate_flows_unchecked(*scn, plan, x);
        std::vector<double> u(scn->user_count());
        for (int i = 0; i < scn->user_count(); ++i) {
            if (flows[i].energy_j >= scn->users[i].energy_budget_joules) {
                u[i] = -kInf;
                continue;
            }
            u[i] = utility(flows[i], i == plan.head, scn->unit_reward, scn->users[i]);
        }
        return u;
    }

    std::vector<double> energies(const allocation& x) const {
        const auto flows = aggregate_flows_unchecked(*scn, plan, x);
        std::vector<double> e(scn->user_count());
        for (int i = 0; i < scn->user_count(); ++i) e[i] = flows[i].energy_j;
        return e;
    }

    double objective(const std::vector<double>& alpha, const std::vector<double>& u) const {
        double obj = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (!(u[i] > 0.0)) return -kInf;
            obj += alpha[i] * std::log(u[i]);
        }
        return obj;
    }
};

// d(utilities)/dx_v by second-order differences, staying inside the box.
// Energy rows come out of the same sweep (they are linear, so exact).
void differentiate(const instance& in, const std::vector<double>& xa,
                   std::vector<std::vector<double>>& du, std::vector<std::vector<double>>& de) {
    const int n = in.scn->user_count();
    const int vars = static_cast<int>(in.vars.size());
    du.assign(n, std::vector<double>(vars, 0.0));
    de.assign(n, std::vector<double>(vars, 0.0));

    std::vector<double> point = xa;
    auto finite = [](const std::vector<double>& u) {
        for (double value : u)
            if (!std::isfinite(value)) return false;
        return true;
    };
    for (int v = 0; v < vars; ++v) {
        double h = 1e-6 * std::max(1.0, in.upper[v]);
        const double x0 = xa[v];
        std::vector<double> up, um, u2;

        auto eval = [&](double value) {
            point[v] = value;
            auto u = in.utils(in.expand(point));
            point[v] = x0;
            return u;
        };

        bool done = false;
        for (int attempt = 0; attempt < 3 && !done; ++attempt, h *= 1e-3) {
            if (x0 >= h && in.upper[v] - x0 >= h) {
                up = eval(x0 + h);
                um = eval(x0 - h);
                if (finite(up) && finite(um)) {
                    for (int i = 0; i < n; ++i) du[i][v] = (up[i] - um[i]) / (2.0 * h);
                    done = true;
                    continue;
                }
            }
            // One-sided second-order stencils; moving toward lower energy is
            // always finite, so prefer the side that evaluates cleanly.
            um = eval(x0);
            if (x0 + 2.0 * h <= in.upper[v]) {
                up = eval(x0 + h);
                u2 = eval(x0 + 2.0 * h);
                if (finite(um) && finite(up) && finite(u2)) {
                    for (int i = 0; i < n; ++i)
                        du[i][v] = (-3.0 * um[i] + 4.0 * up[i] - u2[i]) / (2.0 * h);
                    done = true;
                    continue;
                }
            }
            if (x0 - 2.0 * h >= 0.0) {
                up = eval(x0 - h);
                u2 = eval(x0 - 2.0 * h);
                if (finite(um) && finite(up) && finite(u2)) {
                    for (int i = 0; i < n; ++i)
                        du[i][v] = (3.0 * um[i] - 4.0 * up[i] + u2[i]) / (2.0 * h);
                    done = true;
                }
            }
        }

        // Energy is linear in x: one difference is exact either way.
        const double step = (in.upper[v] - x0 >= h) ? h : -h;
        point[v] = x0 + step;
        const auto ep = in.energies(in.expand(point));
        point[v] = x0;
        const auto e0 = in.energies(in.expand(point));
        for (int i = 0; i < n; ++i) de[i][v] = (ep[i] - e0[i]) / step;
    }
}

// Feasible sample in the box scaled under the airtime budget; utilities and
// energy are rejection-checked by the caller.
std::vector<double> sample_box(const instance& in, std::mt19937_64& rng, double horizon) {
    std::vector<double> xa(in.vars.size());
    double sum = 0.0;
    for (std::size_t v = 0; v < xa.size(); ++v) {
        xa[v] = uniform01(rng) * in.upper[v];
        sum += xa[v];
    }
    if (sum > horizon && sum > 0.0) {
        const double shrink = horizon / sum * uniform01(rng);
        for (double& value : xa) value *= shrink;
    }
    return xa;
}

}  // namespace

double objective_value(const scenario& scn, int head, const allocation& x) {
    const instance in(scn, head);
    return in.objective(scn.bargaining_power, in.utils(x));
}

std::vector<double> utilities_at(const scenario& scn, int head, const allocation& x) {
    const instance in(scn, head);
    return in.utils(x);
}

bool is_feasible(const scenario& scn, int head, const allocation& x, double utility_floor) {
    const instance in(scn, head);
    constexpr double slack = 1e-9;
    double sum = 0.0;
    for (int m = 0; m < scn.item_count(); ++m) {
        const double xm = x.airtime_s[m];
        if (xm < -slack) return false;
        sum += xm;
    }
    for (std::size_t v = 0; v < in.vars.size(); ++v)
        if (x.airtime_s[in.vars[v]] > in.upper[v] + slack) return false;
    for (int m = 0; m < scn.item_count(); ++m)
        if (in.plan.items[m].transmission_count == 0 && x.airtime_s[m] > slack) return false;
    if (sum > scn.airtime_horizon_s + slack) return false;
    // The energy cap may bind exactly at an optimum; only genuine excess is
    // infeasible (the utility floor below rejects diverged costs anyway).
    const auto e = in.energies(x);
    for (int i = 0; i < scn.user_count(); ++i)
        if (e[i] > scn.users[i].energy_budget_joules) return false;
    const auto u = in.utils(x);
    for (double value : u)
        if (value < utility_floor - slack) return false;
    return true;
}

grid_result grid_search(const scenario& scn, int head, const grid_spec& grid,
                        double utility_floor) {
    if (!(grid.resolution > 0.0)) throw std::invalid_argument("grid resolution must be > 0");
    const instance in(scn, head);
    const int vars = static_cast<int>(in.vars.size());
    if (vars > grid.max_variables)
        throw std::invalid_argument("grid_search: " + std::to_string(vars) +
                                    " variables exceed the limit of " +
                                    std::to_string(grid.max_variables));

    grid_result result;
    result.objective = -kInf;
    result.best.airtime_s.assign(scn.item_count(), 0.0);

    // Per-variable grid values: multiples of the resolution plus the exact bound.
    std::vector<std::vector<double>> values(vars);
    for (int v = 0; v < vars; ++v) {
        for (double s = 0.0; s <= in.upper[v] + grid.resolution * 1e-9; s += grid.resolution)
            values[v].push_back(std::min(s, in.upper[v]));
        if (values[v].back() < in.upper[v] - grid.resolution * 1e-6)
            values[v].push_back(in.upper[v]);
    }

    std::vector<double> xa(vars, 0.0);
    const double horizon = scn.airtime_horizon_s;

    auto recurse = [&](auto&& self, int v, double used) -> void {
        if (v == vars) {
            ++result.points_checked;
            const allocation x = in.expand(xa);
            const auto e = in.energies(x);
            for (int i = 0; i < scn.user_count(); ++i)
                if (e[i] > scn.users[i].energy_budget_joules) return;
            const auto u = in.utils(x);
            for (double value : u)
                if (value < utility_floor) return;
            const double obj = in.objective(scn.bargaining_power, u);
            if (obj > result.objective) {
                result.objective = obj;
                result.best = x;
            }
            return;
        }
        for (double s : values[v]) {
            if (used + s > horizon + 1e-12) break;
            xa[v] = s;
            self(self, v + 1, used + s);
        }
        xa[v] = 0.0;
    };
    if (vars > 0 && horizon > 0.0) recurse(recurse, 0, 0.0);

    if (result.objective == -kInf) {
        // Nothing feasible on the grid (e.g. zero horizon): report the
        // zero allocation with the degenerate zero-utility convention.
        result.best.airtime_s.assign(scn.item_count(), 0.0);
    }
    return result;
}

double kkt_residual(const scenario& scn, int head, const allocation& x,
                    double activity_threshold) {
    const instance in(scn, head);
    if (!is_feasible(scn, head, x, 0.0))
        throw std::invalid_argument("kkt_residual: allocation is infeasible");

    const int n = scn.user_count();
    const std::vector<double> xa = in.compress(x);
    const int vars = static_cast<int>(xa.size());
    if (vars == 0) return 0.0;

    const auto u = in.utils(x);
    const auto e = in.energies(x);
    std::vector<std::vector<double>> du, de;
    differentiate(in, xa, du, de);

    std::vector<double> fgrad(vars, 0.0);
    for (int i = 0; i < n; ++i)
        for (int v = 0; v < vars; ++v)
            fgrad[v] += scn.bargaining_power[i] * du[i][v] / u[i];

    // Active constraints and their gradients.
    std::vector<std::vector<double>> columns;
    std::vector<double> slacks;
    auto add_active = [&](double slack, std::vector<double> gradient) {
        if (slack <= activity_threshold) {
            columns.push_back(std::move(gradient));
            slacks.push_back(std::max(slack, 0.0));
        }
    };

    double sum = 0.0;
    for (double v : xa) sum += v;
    add_active(scn.airtime_horizon_s - sum, std::vector<double>(vars, 1.0));
    for (int v = 0; v < vars; ++v) {
        std::vector<double> g(vars, 0.0);
        g[v] = -1.0;
        add_active(xa[v], std::move(g));
        std::vector<double> g2(vars, 0.0);
        g2[v] = 1.0;
        add_active(in.upper[v] - xa[v], std::move(g2));
    }
    for (int i = 0; i < n; ++i) {
        add_active(scn.users[i].energy_budget_joules - e[i], de[i]);
        std::vector<double> g(vars);
        for (int v = 0; v < vars; ++v) g[v] = -du[i][v];
        add_active(u[i], std::move(g));
    }

    std::vector<double> multipliers;
    const double stationarity = linalg::nonnegative_least_squares(columns, fgrad, multipliers);
    double complementarity = 0.0;
    for (std::size_t j = 0; j < multipliers.size(); ++j)
        complementarity += multipliers[j] * slacks[j] * multipliers[j] * slacks[j];
    return stationarity + std::sqrt(complementarity);
}

double fairness_probe(const scenario& scn, int head, const allocation& optimum, int sample_count,
                      std::uint64_t seed) {
    const instance in(scn, head);
    const auto ustar = in.utils(optimum);
    for (double u : ustar)
        if (!(u > 0.0))
            throw std::domain_error("fairness_probe: solution has a zero (or negative) utility");
    if (sample_count <= 0) return -kInf;

    std::mt19937_64 rng(seed);
    double worst = -kInf;
    int accepted = 0;
    for (int attempt = 0; attempt < 50 * sample_count && accepted < sample_count; ++attempt) {
        const auto xa = sample_box(in, rng, scn.airtime_horizon_s);
        const allocation x = in.expand(xa);
        const auto e = in.energies(x);
        bool ok = true;
        for (int i = 0; i < scn.user_count(); ++i)
            if (e[i] >= scn.users[i].energy_budget_joules) ok = false;
        if (!ok) continue;
        const auto u = in.utils(x);
        for (double value : u)
            if (value < 0.0) ok = false;
        if (!ok) continue;
        ++accepted;
        double aggregate = 0.0;
        for (int i = 0; i < scn.user_count(); ++i)
            aggregate += scn.bargaining_power[i] * (u[i] - ustar[i]) / ustar[i];
        worst = std::max(worst, aggregate);
    }
    return worst;
}

int pareto_probe(const scenario& scn, int head, const allocation& optimum, int sample_count,
                 std::uint64_t seed) {
    const instance in(scn, head);
    const auto ustar = in.utils(optimum);
    if (sample_count <= 0) return 0;

    std::mt19937_64 rng(seed);
    int dominating = 0;
    int accepted = 0;
    for (int attempt = 0; attempt < 50 * sample_count && accepted < sample_count; ++attempt) {
        const auto xa = sample_box(in, rng, scn.airtime_horizon_s);
        const allocation x = in.expand(xa);
        const auto e = in.energies(x);
        bool ok = true;
        for (int i = 0; i < scn.user_count(); ++i)
            if (e[i] >= scn.users[i].energy_budget_joules) ok = false;
        if (!ok) continue;
        const auto u = in.utils(x);
        for (double value : u)
            if (value < 0.0) ok = false;
        if (!ok) continue;
        ++accepted;
        bool dominates = true;
        for (int i = 0; i < scn.user_count(); ++i)
            if (u[i] <= ustar[i] + 1e-12) dominates = false;
        if (dominates) ++dominating;
    }
    return dominating;
}

double objective_lipschitz_bound(const scenario& scn, int head, const allocation& from,
                                 const allocation& to, int steps) {
    const instance in(scn, head);
    const auto a = in.compress(from);
    const auto b = in.compress(to);
    const int vars = static_cast<int>(a.size());

    double bound = 0.0;
    std::vector<std::vector<double>> du, de;
    for (int s = 0; s <= steps; ++s) {
        const double w = steps == 0 ? 0.0 : static_cast<double>(s) / steps;
        std::vector<double> xa(vars);
        for (int v = 0; v < vars; ++v) xa[v] = (1.0 - w) * a[v] + w * b[v];
        const auto u = in.utils(in.expand(xa));
        bool positive = true;
        for (double value : u)
            if (!(value > 0.0)) positive = false;
        if (!positive) continue;
        differentiate(in, xa, du, de);
        double norm1 = 0.0;
        for (int v = 0; v < vars; ++v) {
            double g = 0.0;
            for (int i = 0; i < scn.user_count(); ++i)
                g += scn.bargaining_power[i] * du[i][v] / u[i];
            norm1 += std::fabs(g);
        }
        bound = std::max(bound, norm1);
    }
    return bound * 1.25;  // headroom for curvature between the sampled points
}

}  // namespace airbargain::oracle
