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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "airbargain/experiment.hpp"
#include "airbargain/presets.hpp"
#include "airbargain/scenario_io.hpp"

using namespace airbargain;

namespace {

const std::string scenario_dir = AIRBARGAIN_SCENARIO_DIR;

bool same_scenario(const scenario& a, const scenario& b) {
    if (a.user_count() != b.user_count() || a.item_count() != b.item_count()) return false;
    for (int i = 0; i < a.user_count(); ++i) {
        if (a.users[i].energy_budget_joules != b.users[i].energy_budget_joules) return false;
        if (a.users[i].sensitivity != b.users[i].sensitivity) return false;
        if (a.bargaining_power[i] != b.bargaining_power[i]) return false;
    }
    for (int m = 0; m < a.item_count(); ++m) {
        if (a.items[m].owner != b.items[m].owner) return false;
        if (a.items[m].size_mb != b.items[m].size_mb) return false;
        if (a.items[m].interested != b.items[m].interested) return false;
    }
    return a.link_capacity == b.link_capacity && a.airtime_horizon_s == b.airtime_horizon_s &&
           a.unit_reward == b.unit_reward && a.unit_energy_send == b.unit_energy_send &&
           a.unit_energy_recv == b.unit_energy_recv;
}

}  // namespace

TEST_CASE("the bundled four-user scenario loads with the documented parameters") {
    const scenario_file file = load_scenario(scenario_dir + "/table2.scn");
    const scenario& scn = file.scn;
    CHECK(scn.user_count() == 4);
    CHECK(scn.users[0].energy_budget_joules == 300.0);
    CHECK(scn.users[1].energy_budget_joules == 500.0);
    CHECK(scn.users[2].energy_budget_joules == 400.0);
    CHECK(scn.users[3].energy_budget_joules == 400.0);
    CHECK(scn.users[0].sensitivity == 0.0);
    CHECK(scn.users[1].sensitivity == 1.0);
    CHECK(scn.airtime_horizon_s == 20.0);
    CHECK(scn.unit_reward == 0.01);
    CHECK(scn.unit_energy_send == 2.85);
    CHECK(scn.link_capacity[0][1] == 4.0);
    REQUIRE(file.experiment.has_value());
    CHECK(file.experiment->sweep == sweep_kind::budget);
    CHECK(file.experiment->target_user == 0);

    CHECK(same_scenario(scn, presets::budget_group(300.0, {0.0, 1.0, 1.0, 1.0})));
}

TEST_CASE("schema violations are reported exhaustively with field names") {
    const std::string bad = R"({
      "users": [
        {"energy_budget_joules": 300.0, "sensitivity": 0.0, "bargaining_power": 0.9},
        {"energy_budget_joules": 500.0, "sensitivity": 1.0, "bargaining_power": 0.9}
      ],
      "items": [
        {"owner": 1, "size_mb": 10.0, "interested": [1, 2]}
      ],
      "link_capacity_mb_per_s": {"uniform": 4.0}
    })";
    try {
        parse_scenario_text(bad, "bad.scn");
        FAIL("expected a validation error");
    } catch (const std::invalid_argument& e) {
        const std::string what = e.what();
        CHECK(what.find("bargaining_power") != std::string::npos);
        CHECK(what.find("interested") != std::string::npos);
    }
}

TEST_CASE("unknown keys are rejected") {
    const std::string bad = R"({
      "users": [
        {"energy_budget_joules": 300.0, "sensitivity": 0.0},
        {"energy_budget_joules": 500.0, "sensitivity": 1.0}
      ],
      "items": [{"owner": 1, "size_mb": 10.0, "interested": [2]}],
      "link_capacity_mb_per_s": {"uniform": 4.0},
      "airtime_horizon_secs": 20.0
    })";
    CHECK_THROWS_WITH_AS(parse_scenario_text(bad, "bad.scn"),
                         doctest::Contains("airtime_horizon_secs"), std::invalid_argument);
}

TEST_CASE("defaults apply when optional fields are omitted") {
    const std::string minimal = R"({
      "users": [
        {"energy_budget_joules": 300.0, "sensitivity": 0.0},
        {"energy_budget_joules": 500.0, "sensitivity": 1.0}
      ],
      "items": [{"owner": 1, "size_mb": 10.0, "interested": [2]}],
      "link_capacity_mb_per_s": {"uniform": 4.0}
    })";
    const scenario_file file = parse_scenario_text(minimal, "minimal.scn");
    CHECK(file.scn.airtime_horizon_s == 20.0);
    CHECK(file.scn.unit_reward == 0.01);
    CHECK(file.scn.unit_energy_send == 2.85);
    CHECK(file.scn.unit_energy_recv == 2.85);
    CHECK(file.scn.bargaining_power == std::vector<double>{0.5, 0.5});
    CHECK_FALSE(file.experiment.has_value());
}

TEST_CASE("serialization round-trips exactly") {
    scenario_file file;
    file.scn = presets::preference_group(3);
    experiment_spec spec;
    spec.sweep = sweep_kind::preference_case;
    spec.values = {1, 2, 3, 4};
    spec.target_user = 0;
    spec.target_item = 3;
    spec.seeds = 5;
    spec.channel = {12.5, true};
    spec.output_dir = "out";
    file.experiment = spec;

    const std::string text = serialize_scenario(file);
    const scenario_file back = parse_scenario_text(text, "roundtrip");
    CHECK(same_scenario(file.scn, back.scn));
    REQUIRE(back.experiment.has_value());
    CHECK(back.experiment->sweep == spec.sweep);
    CHECK(back.experiment->values == spec.values);
    CHECK(back.experiment->target_item == spec.target_item);
    CHECK(back.experiment->seeds == spec.seeds);
    CHECK(back.experiment->channel.snr == spec.channel.snr);

    // Serialize-parse-serialize is a fixed point.
    CHECK(serialize_scenario(back) == text);
}

TEST_CASE("experiment runs produce byte-identical csv output") {
    scenario scn = presets::symmetric_group();
    experiment_spec spec;
    spec.sweep = sweep_kind::data_load;
    spec.values = {6.0, 10.0, 14.0};
    spec.target_user = 0;

    const experiment_result first = run_experiment(scn, spec);
    const experiment_result second = run_experiment(scn, spec);
    std::ostringstream a, b;
    write_results_csv(first, a);
    write_results_csv(second, b);
    CHECK(a.str() == b.str());
    CHECK(a.str().find("sweep,value,candidate_head,selected,status") == 0);

    // One row per (value, candidate head).
    CHECK(first.rows.size() == 3 * 4);
}

TEST_CASE("plot data is a long-format projection of the selected rows") {
    scenario scn = presets::symmetric_group();
    experiment_spec spec;
    spec.sweep = sweep_kind::unit_reward;
    spec.values = {0.0, 0.01};
    spec.target_user = 0;
    const experiment_result result = run_experiment(scn, spec);

    std::ostringstream out;
    emit_plotdata(result, "airtime_vs_unit_reward", out);
    const std::string text = out.str();
    CHECK(text.find("series,x,y\n") == 0);
    CHECK(text.find("user_1,0,") != std::string::npos);
    CHECK(text.find("user_4,0.01,") != std::string::npos);

    std::ostringstream products;
    emit_plotdata(result, "product_vs_unit_reward", products);
    CHECK(products.str().find("plain_product,0,") != std::string::npos);

    CHECK_THROWS_AS(emit_plotdata(result, "airtime_vs_budget", std::cout),
                    std::invalid_argument);
    CHECK_THROWS_AS(emit_plotdata(result, "nonsense", std::cout), std::invalid_argument);

    experiment_result empty;
    empty.sweep = sweep_kind::budget;
    empty.users = 0;
    std::ostringstream header_only;
    emit_plotdata(empty, "utility_vs_budget", header_only);
    CHECK(header_only.str() == "series,x,y\n");
}
