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

#ifndef AIRBARGAIN_SCENARIO_IO_HPP
#define AIRBARGAIN_SCENARIO_IO_HPP

#include <optional>
#include <string>

#include "airbargain/channel.hpp"
#include "airbargain/scenario.hpp"

namespace airbargain {

enum class sweep_kind {
    budget,
    unit_reward,
    bargaining_power,
    data_load,
    preference_case,
    slot_size,
};

const char* to_string(sweep_kind k);
std::optional<sweep_kind> sweep_kind_from_string(const std::string& name);

/// What to vary, over which values, and how to run it.
struct experiment_spec {
    sweep_kind sweep = sweep_kind::budget;
    std::vector<double> values;
    int target_user = 0;   // whose budget / load varies
    int target_item = -1;  // item whose interest set varies (preference sweep)
    int seeds = 1;         // Monte-Carlo repetitions for slot-size sweeps
    channel_model channel; // fading model for slot-size sweeps
    std::string output_dir = ".";
    // Role-attached bargaining power: when set, each candidate head's
    // sub-problem gives this weight to the head itself. A bargaining_power
    // sweep varies exactly this quantity.
    std::optional<double> head_power;
};

struct scenario_file {
    scenario scn;
    std::optional<experiment_spec> experiment;
};

/// Parses and validates a scenario file (JSON tree with unit-carrying key
/// names; user and item indices are 1-based on disk). Unknown keys are
/// rejected and all problems are reported at once.
scenario_file parse_scenario_text(const std::string& text, const std::string& origin);
scenario_file load_scenario(const std::string& path);

/// Canonical serialization; load(serialize(s)) reproduces s exactly.
std::string serialize_scenario(const scenario_file& file);
void save_scenario(const scenario_file& file, const std::string& path);

}  // namespace airbargain

#endif
