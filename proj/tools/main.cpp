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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "airbargain/adaptive.hpp"
#include "airbargain/experiment.hpp"
#include "airbargain/oracle.hpp"
#include "airbargain/presets.hpp"
#include "airbargain/scenario_io.hpp"
#include "airbargain/solver.hpp"

namespace {

using namespace airbargain;
namespace fs = std::filesystem;

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void print_candidates(const joint_solution& joint) {
    std::printf("candidate  status           plain_product  weighted_product\n");
    for (const auto& c : joint.candidates) {
        std::printf("user %-5d %-16s %-14s %s%s\n", c.head + 1, to_string(c.status),
                    fmt6(c.plain_product).c_str(), fmt6(c.weighted_product).c_str(),
                    c.head == joint.selected_head ? "   <- head" : "");
    }
}

void print_solution(const scenario& scn, const joint_solution& joint) {
    print_candidates(joint);
    std::printf("\nselected head: user %d\n", joint.selected_head + 1);
    std::printf("\nitem  owner  airtime_s  moved_mb\n");
    const auto plan = build_dissemination_plan(scn, joint.selected_head);
    for (int m = 0; m < scn.item_count(); ++m) {
        const double x = joint.alloc.airtime_s[m];
        const double moved =
            plan.items[m].transmission_count > 0 ? x / plan.items[m].time_weight : 0.0;
        std::printf("%-5d %-6d %-10s %s\n", m + 1, scn.items[m].owner + 1, fmt6(x).c_str(),
                    fmt6(moved).c_str());
    }
    const auto flows = aggregate_flows(scn, plan, joint.alloc);
    std::printf("\nuser  utility    airtime_s  energy_j\n");
    const auto per_user = airtime_per_user(scn, joint.alloc);
    for (int i = 0; i < scn.user_count(); ++i)
        std::printf("%-5d %-10s %-10s %s\n", i + 1, fmt6(joint.utilities[i]).c_str(),
                    fmt6(per_user[i]).c_str(), fmt6(flows[i].energy_j).c_str());
}

void write_solution_json(const scenario& scn, const joint_solution& joint, const fs::path& path) {
    nlohmann::ordered_json root;
    root["selected_head"] = joint.selected_head + 1;
    root["utilities"] = joint.utilities;
    root["airtime_per_item_s"] = joint.alloc.airtime_s;
    root["airtime_per_user_s"] = airtime_per_user(scn, joint.alloc);
    auto candidates = nlohmann::ordered_json::array();
    for (const auto& c : joint.candidates)
        candidates.push_back({{"head", c.head + 1},
                              {"status", to_string(c.status)},
                              {"plain_product", c.plain_product},
                              {"weighted_product", c.weighted_product},
                              {"kkt_residual", c.kkt_residual}});
    root["candidates"] = std::move(candidates);
    if (!joint.messages.empty()) {
        auto messages = nlohmann::ordered_json::array();
        for (const auto& m : joint.messages)
            messages.push_back(
                {{"sender", m.sender + 1}, {"weighted_product", m.weighted_product}});
        root["messages"] = std::move(messages);
    }
    std::ofstream out(path);
    out << root.dump(2) << "\n";
    std::printf("\nwrote %s\n", path.string().c_str());
}

int cmd_solve(const std::string& path, std::optional<int> head, bool algorithm1,
              const solver_options& opt, const std::optional<std::string>& out_dir) {
    const scenario_file file = load_scenario(path);
    if (head) {
        const sub_solution sol = solve_subproblem(file.scn, *head - 1, opt);
        std::printf("candidate head user %d: %s\n", *head, to_string(sol.status));
        std::printf("plain_product=%s weighted_product=%s kkt_residual=%s\n",
                    fmt6(sol.plain_product).c_str(), fmt6(sol.weighted_product).c_str(),
                    fmt6(sol.kkt_residual).c_str());
        for (int i = 0; i < file.scn.user_count(); ++i)
            std::printf("u_%d=%s ", i + 1, fmt6(sol.utilities[i]).c_str());
        std::printf("\n");
        return sol.status == solve_status::infeasible ? 1 : 0;
    }
    const joint_solution joint =
        algorithm1 ? run_algorithm1(file.scn, opt) : solve_joint(file.scn, opt);
    if (algorithm1)
        std::printf("distributed mode: %zu broadcast messages exchanged\n",
                    joint.messages.size());
    print_solution(file.scn, joint);
    if (out_dir) {
        fs::create_directories(*out_dir);
        write_solution_json(file.scn, joint, fs::path(*out_dir) / "solution.json");
    }
    return 0;
}

int cmd_sweep(const std::string& path, const solver_options& opt,
              const std::optional<std::string>& out_dir) {
    const scenario_file file = load_scenario(path);
    if (!file.experiment) {
        std::fprintf(stderr, "%s has no experiment block\n", path.c_str());
        return 2;
    }
    const experiment_result result = run_experiment(file.scn, *file.experiment, opt);

    const fs::path dir = out_dir ? fs::path(*out_dir) : fs::path(file.experiment->output_dir);
    fs::create_directories(dir);

    {
        std::ofstream csv(dir / "results.csv");
        write_results_csv(result, csv);
    }
    {
        std::ofstream json_out(dir / "summary.json");
        json_out << summary_json(result);
    }
    for (const char* metric : {"airtime", "utility", "energy", "disseminated", "product"}) {
        const std::string kind = std::string(metric) + "_vs_" + to_string(result.sweep);
        std::ofstream plot(dir / (kind + ".csv"));
        emit_plotdata(result, kind, plot);
    }

    std::printf("sweep %s over %zu values: results in %s\n", to_string(result.sweep),
                result.values.size(), dir.string().c_str());
    for (std::size_t k = 0; k < result.values.size(); ++k) {
        if (result.selected_head[k])
            std::printf("  %s=%s -> head user %d\n", to_string(result.sweep),
                        fmt6(result.values[k]).c_str(), *result.selected_head[k] + 1);
        else
            std::printf("  %s=%s -> no agreement\n", to_string(result.sweep),
                        fmt6(result.values[k]).c_str());
    }
    if (result.others_first_gamma)
        std::printf("others-first reward: %s\n", fmt6(*result.others_first_gamma).c_str());
    return 0;
}

void write_timeline_csv(const scenario& scn, const timeline_result& run, const fs::path& path) {
    std::ofstream out(path);
    out << "slot,length_s,head,skipped";
    for (int i = 0; i < scn.user_count(); ++i)
        for (int j = 0; j < scn.user_count(); ++j)
            if (i != j) out << ",c_" << i + 1 << "_" << j + 1;
    for (int m = 1; m <= scn.item_count(); ++m) out << ",x_item_" << m;
    for (int i = 1; i <= scn.user_count(); ++i) out << ",u_" << i;
    out << "\n";
    for (const auto& slot : run.slots) {
        out << slot.index << ',' << fmt6(slot.length_s) << ','
            << (slot.head >= 0 ? slot.head + 1 : 0) << ',' << (slot.skipped ? 1 : 0);
        for (int i = 0; i < scn.user_count(); ++i)
            for (int j = 0; j < scn.user_count(); ++j)
                if (i != j) out << ',' << fmt6(slot.capacities[i][j]);
        for (double x : slot.alloc.airtime_s) out << ',' << fmt6(x);
        for (double u : slot.utilities) out << ',' << fmt6(u);
        out << "\n";
    }
}

int cmd_adaptive(const std::string& path, double slot_s, int seeds, std::uint64_t seed0,
                 std::optional<double> snr, bool no_fading, bool compare,
                 const solver_options& opt, const std::optional<std::string>& out_dir) {
    const scenario_file file = load_scenario(path);
    channel_model channel;
    if (file.experiment) channel = file.experiment->channel;
    if (snr) channel.snr = *snr;  // explicit flags win over the file
    if (no_fading) channel.fading = false;

    const fs::path dir = out_dir ? fs::path(*out_dir) : fs::path(".");
    fs::create_directories(dir);

    std::ofstream summary(dir / "adaptive_summary.csv");
    summary << "seed,slot_s,scheme,plain_product,weighted_product,total_aod_mb";
    for (int i = 1; i <= file.scn.user_count(); ++i) summary << ",heads_" << i;
    for (int i = 1; i <= file.scn.user_count(); ++i) summary << ",energy_" << i;
    summary << "\n";

    double mean_adaptive = 0.0, mean_fixed = 0.0;
    double aod_adaptive = 0.0, aod_fixed = 0.0;
    for (int s = 0; s < seeds; ++s) {
        const std::uint64_t seed = seed0 + static_cast<std::uint64_t>(s);
        const timeline_result run = run_adaptive(file.scn, slot_s, channel, seed, opt);
        mean_adaptive += run.plain_product;
        aod_adaptive += run.total_disseminated_mb;
        summary << seed << ',' << fmt6(slot_s) << ",adaptive," << fmt6(run.plain_product) << ','
                << fmt6(run.weighted_product) << ',' << fmt6(run.total_disseminated_mb);
        for (int c : run.head_counts) summary << ',' << c;
        for (const auto& f : run.totals) summary << ',' << fmt6(f.energy_j);
        summary << "\n";
        if (s == 0) write_timeline_csv(file.scn, run, dir / "timeline.csv");

        if (compare) {
            const timeline_result fixed = run_non_adaptive(file.scn, slot_s, channel, seed, opt);
            mean_fixed += fixed.plain_product;
            aod_fixed += fixed.total_disseminated_mb;
            summary << seed << ',' << fmt6(slot_s) << ",non_adaptive,"
                    << fmt6(fixed.plain_product) << ',' << fmt6(fixed.weighted_product) << ','
                    << fmt6(fixed.total_disseminated_mb);
            for (int c : fixed.head_counts) summary << ',' << c;
            for (const auto& f : fixed.totals) summary << ',' << fmt6(f.energy_j);
            summary << "\n";
        }
    }

    std::printf("adaptive: mean plain product %s, mean AoD %s MB over %d seed(s)\n",
                fmt6(mean_adaptive / seeds).c_str(), fmt6(aod_adaptive / seeds).c_str(), seeds);
    if (compare)
        std::printf("non-adaptive: mean plain product %s, mean AoD %s MB\n",
                    fmt6(mean_fixed / seeds).c_str(), fmt6(aod_fixed / seeds).c_str());
    std::printf("wrote %s and %s\n", (dir / "adaptive_summary.csv").string().c_str(),
                (dir / "timeline.csv").string().c_str());
    return 0;
}

int cmd_verify(const std::string& path, double resolution, int samples,
               const solver_options& opt) {
    const scenario_file file = load_scenario(path);
    const scenario& scn = file.scn;
    int failures = 0;
    auto report = [&](bool ok, const std::string& what) {
        std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", what.c_str());
        if (!ok) ++failures;
    };

    for (int head = 0; head < scn.user_count(); ++head) {
        const std::string tag = "head " + std::to_string(head + 1) + ": ";
        const sub_solution sol = solve_subproblem(scn, head, opt);
        if (sol.status != solve_status::optimal) {
            report(true, tag + "status " + to_string(sol.status) + " (skipping probes)");
            continue;
        }
        const double residual = oracle::kkt_residual(scn, head, sol.alloc);
        report(residual <= 1e-6, tag + "KKT residual " + fmt6(residual) + " <= 1e-6");

        const dissemination_plan plan = build_dissemination_plan(scn, head);
        if (static_cast<int>(plan.active.size()) <= 4) {
            // Coarsen until the enumeration stays near two million points.
            double res = resolution;
            for (;;) {
                double estimate = 1.0;
                for (int m : plan.active)
                    estimate *= std::min(allocation_upper_bound(scn, plan, m),
                                         scn.airtime_horizon_s) / res + 1.0;
                for (std::size_t k = 2; k <= plan.active.size(); ++k) estimate /= double(k);
                if (estimate <= 2e6) break;
                res *= 2.0;
            }
            const oracle::grid_spec grid{res, 4};
            const auto gr = oracle::grid_search(scn, head, grid);
            const double solver_obj = oracle::objective_value(scn, head, sol.alloc);
            const double lipschitz =
                oracle::objective_lipschitz_bound(scn, head, gr.best, sol.alloc);
            const double gap = solver_obj - gr.objective;
            report(gap >= -1e-6 && gap <= lipschitz * res,
                   tag + "grid gap " + fmt6(gap) + " within " + fmt6(lipschitz * res) +
                       " (resolution " + fmt6(res) + ")");
        } else {
            report(true, tag + "grid search skipped (too many variables)");
        }

        bool fairness_ok = true;
        std::string fairness_note = "all utilities positive";
        for (double u : sol.utilities)
            if (!(u > 0.0)) fairness_ok = false;
        if (fairness_ok) {
            const double probe = oracle::fairness_probe(scn, head, sol.alloc, samples, 7);
            fairness_ok = probe <= 1e-6;
            fairness_note = "fairness aggregate " + fmt6(probe) + " <= 1e-6";
        }
        report(fairness_ok, tag + fairness_note);

        const int dominating = oracle::pareto_probe(scn, head, sol.alloc, samples, 11);
        report(dominating == 0,
               tag + "Pareto probe: " + std::to_string(dominating) + " dominating samples");
    }
    std::printf("%s\n", failures == 0 ? "all checks passed" : "some checks FAILED");
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Joint group-head selection and airtime allocation via Nash bargaining"};
    app.require_subcommand(1);
    app.fallthrough();

    solver_options opt;
    std::optional<std::string> out_dir;
    app.add_option("--tolerance", opt.tolerance, "KKT residual target")->capture_default_str();
    app.add_option("--out", out_dir, "output directory");

    std::string scenario_path;
    std::optional<int> head;
    bool algorithm1 = false;
    auto* solve = app.add_subcommand("solve", "solve one scenario");
    solve->add_option("scenario", scenario_path, "scenario file")->required();
    solve->add_option("--head", head, "solve only this candidate head (1-based)");
    solve->add_flag("--algorithm1", algorithm1, "simulate the distributed protocol");

    auto* sweep = app.add_subcommand("sweep", "run the scenario's experiment block");
    sweep->add_option("scenario", scenario_path, "scenario file")->required();

    double slot_s = 1.0;
    std::optional<double> snr;
    int seeds = 1;
    std::uint64_t seed0 = 0;
    bool no_fading = false, compare = false;
    auto* adaptive = app.add_subcommand("adaptive", "slot-wise adaptive scheme");
    adaptive->add_option("scenario", scenario_path, "scenario file")->required();
    adaptive->add_option("--slot", slot_s, "slot size in seconds")->required();
    adaptive->add_option("--seeds", seeds, "number of seeds")->capture_default_str();
    adaptive->add_option("--seed", seed0, "first seed")->capture_default_str();
    adaptive->add_option("--snr", snr, "Rayleigh channel SNR (default 10)");
    adaptive->add_flag("--no-fading", no_fading, "keep the scenario's capacities constant");
    adaptive->add_flag("--compare", compare, "also run the non-adaptive baseline");

    double resolution = 0.05;
    int samples = 1000;
    auto* verify = app.add_subcommand("verify", "run the oracle suite on a scenario");
    verify->add_option("scenario", scenario_path, "scenario file")->required();
    verify->add_option("--resolution", resolution, "grid resolution, seconds")
        ->capture_default_str();
    verify->add_option("--samples", samples, "probe sample count")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(scenario_path, head, algorithm1, opt, out_dir);
        if (sweep->parsed()) return cmd_sweep(scenario_path, opt, out_dir);
        if (adaptive->parsed())
            return cmd_adaptive(scenario_path, slot_s, seeds, seed0, snr, no_fading, compare, opt,
                                out_dir);
        if (verify->parsed()) return cmd_verify(scenario_path, resolution, samples, opt);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
