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

#include "airbargain/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "airbargain/log.hpp"

namespace airbargain {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Slack of every barrier constraint at x; any non-positive entry means x is
// outside the strictly feasible region.
struct slack_set {
    double budget = 0.0;
    std::vector<double> lower, upper;   // per variable
    std::vector<double> energy;         // per user with a non-zero energy row
    std::vector<double> utility;        // u_i - floor, per user
};

struct barrier_workspace {
    const bargaining_problem* p = nullptr;
    double floor = 0.0;
    std::vector<int> energy_users;  // users whose energy row is not all zero
    int constraint_count = 0;

    void init(const bargaining_problem& problem, double utility_floor) {
        p = &problem;
        floor = utility_floor;
        energy_users.clear();
        for (int i = 0; i < problem.users; ++i) {
            bool nonzero = false;
            for (double r : problem.energy_rate[i])
                if (r != 0.0) nonzero = true;
            if (nonzero) energy_users.push_back(i);
        }
        constraint_count =
            1 + 2 * problem.var_count() + static_cast<int>(energy_users.size()) + problem.users;
    }

    bool slacks(const std::vector<double>& x, slack_set& s) const {
        const auto& pb = *p;
        const int vars = pb.var_count();
        bool ok = true;
        double sum = 0.0;
        s.lower.resize(vars);
        s.upper.resize(vars);
        for (int v = 0; v < vars; ++v) {
            sum += x[v];
            s.lower[v] = x[v];
            s.upper[v] = pb.upper_bound[v] - x[v];
            ok = ok && s.lower[v] > 0.0 && s.upper[v] > 0.0;
        }
        s.budget = pb.airtime_budget - sum;
        ok = ok && s.budget > 0.0;
        s.energy.resize(energy_users.size());
        for (std::size_t k = 0; k < energy_users.size(); ++k) {
            const int i = energy_users[k];
            s.energy[k] = pb.energy_budget[i] - pb.base_energy[i] -
                          linalg::dot(pb.energy_rate[i], x);
            ok = ok && s.energy[k] > 0.0;
        }
        s.utility.resize(pb.users);
        for (int i = 0; i < pb.users; ++i) {
            s.utility[i] = pb.user_utility(i, x) - floor;
            ok = ok && s.utility[i] > 0.0;
        }
        return ok;
    }

    // phi(x) = -F(x) + (1/t) * sum(-log slack); +inf outside the domain.
    // Scaling the barrier instead of the objective keeps phi at O(1), so the
    // line search stays meaningful for large t. The gradient at an inner
    // optimum is exactly the KKT stationarity defect under the barrier
    // multipliers 1/(t * slack).
    double value(double t, const std::vector<double>& x) const {
        slack_set s;
        if (!slacks(x, s)) return kInf;
        double barrier = -std::log(s.budget);
        for (double v : s.lower) barrier -= std::log(v);
        for (double v : s.upper) barrier -= std::log(v);
        for (double v : s.energy) barrier -= std::log(v);
        for (double v : s.utility) barrier -= std::log(v);
        return -p->objective(x) + barrier / t;
    }

    // Gradient and Hessian of phi at a strictly feasible x.
    void derivatives(double t, const std::vector<double>& x, std::vector<double>& grad,
                     linalg::matrix& hess) const {
        const auto& pb = *p;
        const int vars = pb.var_count();
        const double inv_t = 1.0 / t;
        slack_set s;
        slacks(x, s);

        grad.assign(vars, 0.0);
        const std::vector<double> fgrad = pb.objective_gradient(x);
        hess = pb.objective_hessian(x);
        for (int a = 0; a < vars; ++a) {
            grad[a] = -fgrad[a];
            for (int b = 0; b < vars; ++b) hess[a][b] = -hess[a][b];
        }

        const double inv_budget = inv_t / s.budget;
        for (int a = 0; a < vars; ++a) {
            grad[a] += inv_budget;
            grad[a] += inv_t * (-1.0 / s.lower[a] + 1.0 / s.upper[a]);
            hess[a][a] +=
                inv_t * (1.0 / (s.lower[a] * s.lower[a]) + 1.0 / (s.upper[a] * s.upper[a]));
            for (int b = 0; b < vars; ++b) hess[a][b] += inv_budget / s.budget;
        }

        for (std::size_t k = 0; k < energy_users.size(); ++k) {
            const int i = energy_users[k];
            const double inv = inv_t / s.energy[k];
            for (int a = 0; a < vars; ++a) {
                grad[a] += pb.energy_rate[i][a] * inv;
                for (int b = 0; b < vars; ++b)
                    hess[a][b] += pb.energy_rate[i][a] * pb.energy_rate[i][b] * inv / s.energy[k];
            }
        }

        // Utility floors: -(1/t) log(u_i - floor).
        std::vector<double> du(vars);
        for (int i = 0; i < pb.users; ++i) {
            const double inv = inv_t / s.utility[i];
            const double value = pb.base_value[i] + linalg::dot(pb.value_rate[i], x);
            const double energy = pb.base_energy[i] + linalg::dot(pb.energy_rate[i], x);
            const double gap = pb.energy_budget[i] - energy;
            const double wv = 1.0 / (1.0 + value);
            const double we = pb.sensitivity[i] / (gap * gap);
            for (int v = 0; v < vars; ++v) {
                du[v] = wv * pb.value_rate[i][v] - we * pb.energy_rate[i][v];
                if (i == pb.head) du[v] += pb.unit_reward * pb.forward_rate[v];
            }
            const double cv = wv * wv;
            const double ce = 2.0 * pb.sensitivity[i] / (gap * gap * gap);
            for (int a = 0; a < vars; ++a) {
                grad[a] -= du[a] * inv;
                for (int b = a; b < vars; ++b) {
                    const double d2u = -cv * pb.value_rate[i][a] * pb.value_rate[i][b] -
                                       ce * pb.energy_rate[i][a] * pb.energy_rate[i][b];
                    const double h = (du[a] * du[b] / s.utility[i] - d2u) * inv;
                    hess[a][b] += h;
                    if (a != b) hess[b][a] += h;
                }
            }
        }
    }
};

// ---------------------------------------------------------------------------
// Active-set polish. The barrier phase localizes the optimum; this phase
// pins the active constraints exactly and drives the stationarity defect to
// Newton precision, which a slack-threshold certificate can then verify.
// Every constraint that can be active at a maximizer of sum alpha log u is
// linear in x (bounds, the airtime budget, the energy caps); the utility
// floor only repels, so it is handled by feasibility checks alone.

struct active_constraint {
    std::vector<double> row;  // row . x == rhs while active
    double rhs = 0.0;
    double sign = 1.0;        // multiplier column is sign * row
    int id = 0;               // stable identity for add/drop bookkeeping
};

struct polish_setup {
    std::vector<active_constraint> candidates;  // all linear constraints
    std::vector<double> slack_scale;            // activity threshold per candidate
};

polish_setup make_polish_setup(const bargaining_problem& p,
                               const std::vector<int>& energy_users) {
    polish_setup setup;
    const int vars = p.var_count();
    int id = 0;
    for (int v = 0; v < vars; ++v) {
        active_constraint lower;
        lower.row.assign(vars, 0.0);
        lower.row[v] = 1.0;
        lower.rhs = 0.0;
        lower.sign = -1.0;  // constraint -x_v <= 0
        lower.id = id++;
        setup.candidates.push_back(std::move(lower));
        setup.slack_scale.push_back(1.0);

        active_constraint upper;
        upper.row.assign(vars, 0.0);
        upper.row[v] = 1.0;
        upper.rhs = p.upper_bound[v];
        upper.sign = 1.0;
        upper.id = id++;
        setup.candidates.push_back(std::move(upper));
        setup.slack_scale.push_back(1.0);
    }
    active_constraint budget;
    budget.row.assign(vars, 1.0);
    budget.rhs = p.airtime_budget;
    budget.sign = 1.0;
    budget.id = id++;
    setup.candidates.push_back(std::move(budget));
    setup.slack_scale.push_back(1.0);
    for (int i : energy_users) {
        active_constraint cap;
        cap.row = p.energy_rate[i];
        cap.rhs = p.energy_budget[i] - p.base_energy[i];
        cap.sign = 1.0;
        cap.id = id++;
        setup.candidates.push_back(std::move(cap));
        setup.slack_scale.push_back(std::max(1.0, std::sqrt(linalg::dot(cap.row, cap.row))));
    }
    return setup;
}

double constraint_slack(const active_constraint& c, const std::vector<double>& x) {
    // Outward slack: how far g(x) <= 0 is from tight.
    const double value = linalg::dot(c.row, x);
    return c.sign < 0.0 ? value - c.rhs : c.rhs - value;
}

// Orthonormal basis of the rows (with transformed right-hand sides) plus a
// basis of the orthogonal complement.
void manifold_bases(const std::vector<const active_constraint*>& active, int vars,
                    std::vector<std::vector<double>>& q, std::vector<double>& beta,
                    std::vector<std::vector<double>>& nullspace) {
    q.clear();
    beta.clear();
    for (const auto* c : active) {
        std::vector<double> r = c->row;
        double b = c->rhs;
        for (std::size_t j = 0; j < q.size(); ++j) {
            const double proj = linalg::dot(q[j], r);
            for (int v = 0; v < vars; ++v) r[v] -= proj * q[j][v];
            b -= proj * beta[j];
        }
        const double norm = std::sqrt(linalg::dot(r, r));
        if (norm < 1e-10) continue;  // redundant row
        for (double& value : r) value /= norm;
        q.push_back(std::move(r));
        beta.push_back(b / norm);
    }
    nullspace.clear();
    for (int k = 0; k < vars; ++k) {
        std::vector<double> z(vars, 0.0);
        z[k] = 1.0;
        for (const auto& qr : q) {
            const double proj = qr[k];
            for (int v = 0; v < vars; ++v) z[v] -= proj * qr[v];
        }
        for (const auto& zr : nullspace) {
            const double proj = linalg::dot(zr, z);
            for (int v = 0; v < vars; ++v) z[v] -= proj * zr[v];
        }
        const double norm = std::sqrt(linalg::dot(z, z));
        if (norm < 1e-8) continue;
        for (double& value : z) value /= norm;
        nullspace.push_back(std::move(z));
    }
}

bool utilities_strictly_feasible(const bargaining_problem& p, const std::vector<double>& x,
                                 double floor) {
    for (int i = 0; i < p.users; ++i)
        if (!(p.user_utility(i, x) > floor)) return false;
    return true;
}

// Returns the achieved stationarity residual, or nothing when the polish had
// to give up (the barrier point is then kept as-is).
std::optional<double> active_set_polish(const bargaining_problem& p,
                                        const std::vector<int>& energy_users,
                                        std::vector<double>& x, double floor) {
    const int vars = p.var_count();
    const polish_setup setup = make_polish_setup(p, energy_users);

    std::vector<bool> active(setup.candidates.size(), false);
    for (std::size_t j = 0; j < setup.candidates.size(); ++j)
        active[j] = constraint_slack(setup.candidates[j], x) <= 1e-6 * setup.slack_scale[j];

    for (int round = 0; round < 24; ++round) {
        std::vector<const active_constraint*> chosen;
        for (std::size_t j = 0; j < setup.candidates.size(); ++j)
            if (active[j]) chosen.push_back(&setup.candidates[j]);

        std::vector<std::vector<double>> q, nullspace;
        std::vector<double> beta;
        manifold_bases(chosen, vars, q, beta, nullspace);

        // Land exactly on the manifold.
        std::vector<double> projected = x;
        for (std::size_t j = 0; j < q.size(); ++j) {
            const double shift = beta[j] - linalg::dot(q[j], projected);
            for (int v = 0; v < vars; ++v) projected[v] += shift * q[j][v];
        }
        bool sane = utilities_strictly_feasible(p, projected, floor);
        for (std::size_t j = 0; j < setup.candidates.size() && sane; ++j)
            if (!active[j] && constraint_slack(setup.candidates[j], projected) < -1e-10)
                sane = false;
        if (!sane) return std::nullopt;  // projection left the feasible set
        x = projected;

        // Newton on the manifold, with a ratio test against the other
        // linear constraints.
        int blocked = -1;
        for (int it = 0; it < 80 && blocked < 0; ++it) {
            const auto grad = p.objective_gradient(x);
            const int dim = static_cast<int>(nullspace.size());
            if (dim == 0) break;
            std::vector<double> gy(dim);
            for (int k = 0; k < dim; ++k) gy[k] = linalg::dot(nullspace[k], grad);
            double gsup = 0.0;
            for (double value : gy) gsup = std::max(gsup, std::fabs(value));
            if (gsup <= 1e-12) break;

            const auto hess = p.objective_hessian(x);
            linalg::matrix hy(dim, std::vector<double>(dim, 0.0));
            std::vector<double> hz(vars);
            for (int a = 0; a < dim; ++a) {
                for (int v = 0; v < vars; ++v) {
                    hz[v] = 0.0;
                    for (int w = 0; w < vars; ++w) hz[v] += hess[v][w] * nullspace[a][w];
                }
                for (int b = 0; b < dim; ++b) hy[a][b] = -linalg::dot(nullspace[b], hz);
            }
            std::vector<double> dy;
            linalg::solve_spd_regularized(hy, gy, dy);
            std::vector<double> dx(vars, 0.0);
            for (int k = 0; k < dim; ++k)
                for (int v = 0; v < vars; ++v) dx[v] += dy[k] * nullspace[k][v];

            // Largest feasible step against the inactive linear constraints.
            double alpha_max = 1.0;
            int limiting = -1;
            for (std::size_t j = 0; j < setup.candidates.size(); ++j) {
                if (active[j]) continue;
                const auto& c = setup.candidates[j];
                const double rate =
                    c.sign < 0.0 ? -linalg::dot(c.row, dx) : linalg::dot(c.row, dx);
                if (rate <= 1e-14) continue;
                const double room = constraint_slack(c, x);
                if (room / rate < alpha_max) {
                    alpha_max = room / rate;
                    limiting = static_cast<int>(j);
                }
            }

            const double f0 = p.objective(x);
            const double slope = linalg::dot(grad, dx);
            double alpha = alpha_max;
            std::vector<double> trial(vars);
            bool moved = false;
            while (alpha >= 1e-13) {
                for (int v = 0; v < vars; ++v) trial[v] = x[v] + alpha * dx[v];
                if (utilities_strictly_feasible(p, trial, floor) &&
                    p.objective(trial) >= f0 + 0.25 * alpha * slope) {
                    moved = true;
                    break;
                }
                alpha *= 0.5;
                limiting = -1;  // a shorter step no longer touches the blocker
            }
            if (!moved) break;
            x = trial;
            if (limiting >= 0 && alpha == alpha_max) blocked = limiting;
        }

        if (blocked >= 0) {
            active[blocked] = true;
            continue;
        }

        // Multipliers on the active set; drop the most negative if any.
        std::vector<std::vector<double>> columns;
        std::vector<std::size_t> column_of;
        for (std::size_t j = 0; j < setup.candidates.size(); ++j) {
            if (!active[j]) continue;
            std::vector<double> col(vars);
            for (int v = 0; v < vars; ++v)
                col[v] = setup.candidates[j].sign * setup.candidates[j].row[v];
            columns.push_back(std::move(col));
            column_of.push_back(j);
        }
        const auto grad = p.objective_gradient(x);
        std::vector<double> lambda;
        const double fit = linalg::nonnegative_least_squares(columns, grad, lambda);

        if (fit <= 1e-9 * (1.0 + std::sqrt(linalg::dot(grad, grad)))) return fit;
        // The sign constraint bit: find the blocking column by an
        // unconstrained fit and retire it.
        if (columns.empty()) return std::nullopt;
        linalg::matrix gram(columns.size(), std::vector<double>(columns.size(), 0.0));
        std::vector<double> atb(columns.size(), 0.0);
        for (std::size_t a = 0; a < columns.size(); ++a) {
            for (std::size_t b = a; b < columns.size(); ++b) {
                gram[a][b] = linalg::dot(columns[a], columns[b]);
                gram[b][a] = gram[a][b];
            }
            gram[a][a] += 1e-12;
            atb[a] = linalg::dot(columns[a], grad);
        }
        std::vector<double> free_fit;
        if (!linalg::solve_spd(gram, atb, free_fit)) return std::nullopt;
        int worst = -1;
        double most_negative = -1e-10;
        for (std::size_t a = 0; a < free_fit.size(); ++a)
            if (free_fit[a] < most_negative) {
                most_negative = free_fit[a];
                worst = static_cast<int>(a);
            }
        if (worst < 0) return std::nullopt;  // inconsistent; keep barrier point
        active[column_of[worst]] = false;
    }
    return std::nullopt;
}

void fill_products(sub_solution& sol, const std::vector<double>& powers) {
    sol.weighted_product = 1.0;
    sol.plain_product = 1.0;
    sol.log_objective = 0.0;
    for (std::size_t i = 0; i < sol.utilities.size(); ++i) {
        const double u = std::max(sol.utilities[i], 0.0);
        sol.plain_product *= u;
        sol.weighted_product *= std::pow(u, powers[i]);
        if (u > 0.0 && std::isfinite(sol.log_objective))
            sol.log_objective += powers[i] * std::log(u);
        else
            sol.log_objective = -kInf;
    }
}

// Feasible interior start: scale down an equal split until every utility
// clears the floor and every budget has room. Returns false when the scale
// underflows, which we classify as infeasible.
bool phase_one(const bargaining_problem& p, const barrier_workspace& ws,
               std::vector<double>& x) {
    const int vars = p.var_count();
    double total_bound = 0.0;
    for (double b : p.upper_bound) total_bound += b;
    const double budget = std::min(p.airtime_budget, total_bound);

    std::vector<double> base(vars);
    for (int v = 0; v < vars; ++v)
        base[v] = std::min(budget / vars, p.upper_bound[v]) * (1.0 - 1e-9);

    double scale = 1.0;
    slack_set s;
    while (scale >= 1e-12) {
        x.resize(vars);
        for (int v = 0; v < vars; ++v) x[v] = base[v] * scale;
        if (ws.slacks(x, s)) return true;
        scale *= 0.5;
    }
    return false;
}

sub_solution degenerate_solution(const bargaining_problem& p) {
    sub_solution sol;
    sol.head = p.head;
    sol.status = solve_status::budget_boundary;
    sol.alloc = p.to_allocation(std::vector<double>(p.var_count(), 0.0), p.items_total);
    sol.utilities = p.utilities(std::vector<double>(p.var_count(), 0.0));
    fill_products(sol, p.power);
    return sol;
}

}  // namespace

const char* to_string(solve_status s) {
    switch (s) {
        case solve_status::optimal: return "optimal";
        case solve_status::infeasible: return "infeasible";
        case solve_status::budget_boundary: return "budget_boundary";
    }
    return "?";
}

sub_solution solve_bargaining(const bargaining_problem& p, const solver_options& opt) {
    if (!(opt.tolerance > 0.0)) throw std::invalid_argument("solver tolerance must be > 0");
    if (!(opt.barrier_growth > 1.0))
        throw std::invalid_argument("barrier growth factor must exceed 1");
    if (p.var_count() == 0 || p.airtime_budget <= 1e-15) return degenerate_solution(p);

    barrier_workspace ws;
    ws.init(p, opt.utility_floor);

    sub_solution sol;
    sol.head = p.head;

    std::vector<double> x;
    if (!phase_one(p, ws, x)) {
        sol.status = solve_status::infeasible;
        sol.alloc = p.to_allocation(std::vector<double>(p.var_count(), 0.0), p.items_total);
        sol.utilities = p.utilities(std::vector<double>(p.var_count(), 0.0));
        sol.weighted_product = 0.0;
        sol.plain_product = 0.0;
        sol.log_objective = -kInf;
        return sol;
    }

    const int vars = p.var_count();
    std::vector<double> grad, dx;
    linalg::matrix hess;
    const double comp_norm = std::sqrt(static_cast<double>(ws.constraint_count));

    double t = opt.barrier_initial_t;
    double stationarity = 0.0;
    for (int stage = 0; stage < 64; ++stage) {
        const double grad_target = (comp_norm / t <= 0.5 * opt.tolerance)
                                       ? 0.2 * opt.tolerance   // final stage: polish hard
                                       : 1e-7 * (1.0 + 1.0 / t);
        for (int it = 0; it < opt.max_newton_iterations; ++it) {
            ws.derivatives(t, x, grad, hess);
            if (std::sqrt(linalg::dot(grad, grad)) <= grad_target) break;
            std::vector<double> neg(vars);
            for (int v = 0; v < vars; ++v) neg[v] = -grad[v];
            linalg::solve_spd_regularized(hess, neg, dx);

            const double decrement = -linalg::dot(grad, dx);
            if (!(decrement > 1e-18)) break;

            const double phi0 = ws.value(t, x);
            const double slope = linalg::dot(grad, dx);
            double alpha = 1.0;
            std::vector<double> trial(vars);
            while (alpha >= 1e-13) {
                for (int v = 0; v < vars; ++v) trial[v] = x[v] + alpha * dx[v];
                const double phi1 = ws.value(t, trial);
                if (phi1 <= phi0 + 0.25 * alpha * slope) break;
                alpha *= 0.5;
            }
            if (alpha < 1e-13) break;
            x = trial;
            ++sol.iterations;
        }
        ws.derivatives(t, x, grad, hess);
        stationarity = std::sqrt(linalg::dot(grad, grad));
        if (comp_norm / t <= 0.5 * opt.tolerance) break;
        t *= opt.barrier_growth;
    }

    // Pin the active set exactly; on the polished point the complementarity
    // products vanish and the residual is the multiplier fit alone. If the
    // polish cannot certify the point, the central-path estimate stands
    // (stationarity defect plus one 1/t per barrier constraint).
    double residual = stationarity + comp_norm / t;
    std::vector<double> polished = x;
    if (const auto fit = active_set_polish(p, ws.energy_users, polished, opt.utility_floor)) {
        x = polished;
        residual = *fit;
        // A hair of slack so constraints pinned exactly onto their planes
        // stay satisfied under any re-summation order downstream.
        for (double& v : x) v *= 1.0 - 1e-9;
    }

    sol.status = solve_status::optimal;
    sol.alloc = p.to_allocation(x, p.items_total);
    sol.utilities = p.utilities(x);
    sol.kkt_residual = residual;
    fill_products(sol, p.power);
    log_debug("head %d: %d newton steps, residual %.3e, log objective %.12f", p.head,
              sol.iterations, sol.kkt_residual, sol.log_objective);
    return sol;
}

sub_solution solve_subproblem(const scenario& scn, int head, const solver_options& opt) {
    scn.validate();
    const dissemination_plan plan = build_dissemination_plan(scn, head);
    return solve_bargaining(build_bargaining_problem(scn, plan), opt);
}

namespace {

// Shared argmax rule: highest product wins; relative ties resolved first by
// priority (when given), then by lowest candidate index.
int argmax_head(const std::vector<sub_solution>& candidates, const std::vector<double>* priority) {
    double best = -kInf;
    for (const auto& c : candidates)
        if (c.status != solve_status::infeasible) best = std::max(best, c.weighted_product);
    if (best == -kInf) return -1;

    const double window = 1e-9 * std::fabs(best);
    int winner = -1;
    for (int h = 0; h < static_cast<int>(candidates.size()); ++h) {
        const auto& c = candidates[h];
        if (c.status == solve_status::infeasible) continue;
        if (best - c.weighted_product > window) continue;
        if (winner == -1) {
            winner = h;
        } else if (priority != nullptr && (*priority)[h] > (*priority)[winner] + 1e-12) {
            winner = h;
        }
    }
    return winner;
}

joint_solution assemble(std::vector<sub_solution> candidates, int winner) {
    joint_solution joint;
    joint.selected_head = winner;
    joint.alloc = candidates[winner].alloc;
    joint.utilities = candidates[winner].utilities;
    joint.candidates = std::move(candidates);
    return joint;
}

}  // namespace

joint_solution select_head(std::vector<sub_solution> candidates) {
    const int winner = argmax_head(candidates, nullptr);
    if (winner < 0)
        throw no_agreement_error("every candidate head is infeasible: no agreement possible");
    return assemble(std::move(candidates), winner);
}

joint_solution select_head(std::vector<sub_solution> candidates,
                           const std::vector<double>& tie_priority) {
    const int winner = argmax_head(candidates, &tie_priority);
    if (winner < 0)
        throw no_agreement_error("every candidate head is infeasible: no agreement possible");
    return assemble(std::move(candidates), winner);
}

joint_solution solve_joint(const scenario& scn, const solver_options& opt) {
    scn.validate();
    std::vector<sub_solution> candidates;
    candidates.reserve(scn.user_count());
    for (int head = 0; head < scn.user_count(); ++head) {
        const dissemination_plan plan = build_dissemination_plan(scn, head);
        candidates.push_back(solve_bargaining(build_bargaining_problem(scn, plan), opt));
    }
    return select_head(std::move(candidates));
}

joint_solution run_algorithm1(const scenario& scn, const solver_options& opt) {
    scn.validate();
    const int n = scn.user_count();

    // Every agent solves the sub-problem in which it is the head...
    std::vector<sub_solution> local(n);
    for (int agent = 0; agent < n; ++agent) local[agent] = solve_subproblem(scn, agent, opt);

    // ...then broadcasts its optimum to the group.
    std::vector<broadcast_message> messages;
    messages.reserve(n);
    for (int agent = 0; agent < n; ++agent)
        messages.push_back({agent, local[agent].weighted_product});

    // Each agent applies the argmax rule on the received values on its own.
    std::vector<int> decisions(n);
    for (int agent = 0; agent < n; ++agent) decisions[agent] = argmax_head(local, nullptr);
    for (int agent = 1; agent < n; ++agent)
        if (decisions[agent] != decisions[0])
            throw std::logic_error("distributed head decisions diverged");
    if (decisions[0] < 0)
        throw no_agreement_error("every candidate head is infeasible: no agreement possible");

    joint_solution joint = assemble(std::move(local), decisions[0]);
    joint.messages = std::move(messages);
    return joint;
}

}  // namespace airbargain
