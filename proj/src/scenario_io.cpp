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

#include "airbargain/scenario_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace airbargain {

using json = nlohmann::ordered_json;

const char* to_string(sweep_kind k) {
    switch (k) {
        case sweep_kind::budget: return "budget";
        case sweep_kind::unit_reward: return "unit_reward";
        case sweep_kind::bargaining_power: return "bargaining_power";
        case sweep_kind::data_load: return "data_load";
        case sweep_kind::preference_case: return "preference_case";
        case sweep_kind::slot_size: return "slot_size";
    }
    return "?";
}

std::optional<sweep_kind> sweep_kind_from_string(const std::string& name) {
    for (sweep_kind k :
         {sweep_kind::budget, sweep_kind::unit_reward, sweep_kind::bargaining_power,
          sweep_kind::data_load, sweep_kind::preference_case, sweep_kind::slot_size})
        if (name == to_string(k)) return k;
    return std::nullopt;
}

namespace {

struct reader {
    std::vector<std::string> errors;

    void reject_unknown(const json& obj, const std::string& path,
                        std::initializer_list<const char*> allowed) {
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            bool known = false;
            for (const char* key : allowed)
                if (it.key() == key) known = true;
            if (!known) errors.push_back(path + ": unknown key \"" + it.key() + "\"");
        }
    }

    double number(const json& obj, const std::string& path, const char* key, double fallback,
                  bool required = false) {
        if (!obj.contains(key)) {
            if (required) errors.push_back(path + "." + key + ": missing");
            return fallback;
        }
        if (!obj[key].is_number()) {
            errors.push_back(path + "." + key + ": expected a number");
            return fallback;
        }
        return obj[key].get<double>();
    }

    int integer(const json& obj, const std::string& path, const char* key, int fallback,
                bool required = false) {
        if (!obj.contains(key)) {
            if (required) errors.push_back(path + "." + key + ": missing");
            return fallback;
        }
        if (!obj[key].is_number_integer()) {
            errors.push_back(path + "." + key + ": expected an integer");
            return fallback;
        }
        return obj[key].get<int>();
    }
};

experiment_spec parse_experiment(reader& r, const json& e, int user_count, int item_count) {
    experiment_spec spec;
    r.reject_unknown(e, "experiment",
                     {"sweep", "values", "target_user", "target_item", "seeds", "channel",
                      "output_dir", "head_power"});

    if (!e.contains("sweep") || !e["sweep"].is_string()) {
        r.errors.push_back("experiment.sweep: missing or not a string");
    } else {
        const auto kind = sweep_kind_from_string(e["sweep"].get<std::string>());
        if (!kind) {
            r.errors.push_back("experiment.sweep: unknown sweep \"" +
                               e["sweep"].get<std::string>() + "\"");
        } else {
            spec.sweep = *kind;
        }
    }

    if (!e.contains("values") || !e["values"].is_array() || e["values"].empty()) {
        r.errors.push_back("experiment.values: missing or empty array");
    } else {
        for (const auto& v : e["values"]) {
            if (!v.is_number()) {
                r.errors.push_back("experiment.values: every entry must be a number");
                break;
            }
            spec.values.push_back(v.get<double>());
        }
    }

    const int user = r.integer(e, "experiment", "target_user", 1);
    if (user < 1 || user > user_count)
        r.errors.push_back("experiment.target_user: index out of range");
    else
        spec.target_user = user - 1;

    if (e.contains("target_item")) {
        const int item = r.integer(e, "experiment", "target_item", 1);
        if (item < 1 || item > item_count)
            r.errors.push_back("experiment.target_item: index out of range");
        else
            spec.target_item = item - 1;
    }

    spec.seeds = r.integer(e, "experiment", "seeds", 1);
    if (spec.seeds < 1) r.errors.push_back("experiment.seeds: must be >= 1");

    if (e.contains("channel")) {
        const auto& c = e["channel"];
        if (!c.is_object()) {
            r.errors.push_back("experiment.channel: expected an object");
        } else {
            r.reject_unknown(c, "experiment.channel", {"snr", "fading"});
            spec.channel.snr = r.number(c, "experiment.channel", "snr", 10.0);
            if (!(spec.channel.snr > 0.0))
                r.errors.push_back("experiment.channel.snr: must be > 0");
            if (c.contains("fading")) {
                if (!c["fading"].is_boolean())
                    r.errors.push_back("experiment.channel.fading: expected a boolean");
                else
                    spec.channel.fading = c["fading"].get<bool>();
            }
        }
    }

    if (e.contains("output_dir")) {
        if (!e["output_dir"].is_string())
            r.errors.push_back("experiment.output_dir: expected a string");
        else
            spec.output_dir = e["output_dir"].get<std::string>();
    }

    if (e.contains("head_power")) {
        const double power = r.number(e, "experiment", "head_power", 0.0);
        if (!(power > 0.0 && power < 1.0))
            r.errors.push_back("experiment.head_power: must lie in (0,1)");
        else
            spec.head_power = power;
    }

    if (spec.sweep == sweep_kind::bargaining_power)
        for (double v : spec.values)
            if (!(v > 0.0 && v < 1.0))
                r.errors.push_back("experiment.values: head powers must lie in (0,1)");

    if (spec.sweep == sweep_kind::preference_case) {
        if (spec.target_item < 0)
            r.errors.push_back("experiment.target_item: required for a preference_case sweep");
        for (double v : spec.values)
            if (v < 1.0 || v > 4.0)
                r.errors.push_back("experiment.values: preference cases must lie in 1..4");
    }
    if (spec.sweep == sweep_kind::slot_size)
        for (double v : spec.values)
            if (!(v > 0.0)) r.errors.push_back("experiment.values: slot sizes must be > 0");

    return spec;
}

}  // namespace

scenario_file parse_scenario_text(const std::string& text, const std::string& origin) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(origin + ": " + e.what());
    }
    if (!root.is_object()) throw std::runtime_error(origin + ": top level must be an object");

    reader r;
    r.reject_unknown(root, origin,
                     {"users", "items", "link_capacity_mb_per_s", "airtime_horizon_seconds",
                      "unit_reward_per_mb", "unit_energy_send_joules_per_mb",
                      "unit_energy_recv_joules_per_mb", "experiment"});

    scenario_file file;
    scenario& scn = file.scn;

    int n = 0;
    int powers_given = 0;
    if (!root.contains("users") || !root["users"].is_array()) {
        r.errors.push_back("users: missing or not an array");
    } else {
        n = static_cast<int>(root["users"].size());
        for (int i = 0; i < n; ++i) {
            const auto& u = root["users"][i];
            const std::string path = "users[" + std::to_string(i + 1) + "]";
            user_profile profile;
            if (!u.is_object()) {
                r.errors.push_back(path + ": expected an object");
                scn.users.push_back(profile);
                continue;
            }
            r.reject_unknown(u, path, {"energy_budget_joules", "sensitivity", "bargaining_power"});
            profile.energy_budget_joules =
                r.number(u, path, "energy_budget_joules", 0.0, /*required=*/true);
            profile.sensitivity = r.number(u, path, "sensitivity", 1.0, /*required=*/true);
            if (u.contains("bargaining_power")) {
                ++powers_given;
                scn.bargaining_power.push_back(r.number(u, path, "bargaining_power", 0.0));
            }
            scn.users.push_back(profile);
        }
    }
    if (powers_given == 0) {
        scn.bargaining_power = equal_power(std::max(n, 1));
    } else if (powers_given != n) {
        r.errors.push_back(
            "users: bargaining_power must be given for every user or for none");
        scn.bargaining_power = equal_power(std::max(n, 1));
    }

    if (!root.contains("items") || !root["items"].is_array()) {
        r.errors.push_back("items: missing or not an array");
    } else {
        for (std::size_t m = 0; m < root["items"].size(); ++m) {
            const auto& it = root["items"][m];
            const std::string path = "items[" + std::to_string(m + 1) + "]";
            data_item item;
            if (!it.is_object()) {
                r.errors.push_back(path + ": expected an object");
                scn.items.push_back(item);
                continue;
            }
            r.reject_unknown(it, path, {"owner", "size_mb", "interested"});
            item.owner = r.integer(it, path, "owner", 1, /*required=*/true) - 1;
            item.size_mb = r.number(it, path, "size_mb", 0.0, /*required=*/true);
            if (!it.contains("interested") || !it["interested"].is_array()) {
                r.errors.push_back(path + ".interested: missing or not an array");
            } else {
                for (const auto& v : it["interested"]) {
                    if (!v.is_number_integer()) {
                        r.errors.push_back(path + ".interested: entries must be integers");
                        break;
                    }
                    item.interested.push_back(v.get<int>() - 1);
                }
            }
            scn.items.push_back(item);
        }
    }

    if (!root.contains("link_capacity_mb_per_s")) {
        r.errors.push_back("link_capacity_mb_per_s: missing");
    } else {
        const auto& c = root["link_capacity_mb_per_s"];
        if (c.is_object()) {
            r.reject_unknown(c, "link_capacity_mb_per_s", {"uniform"});
            const double rate = r.number(c, "link_capacity_mb_per_s", "uniform", 0.0,
                                         /*required=*/true);
            scn.link_capacity = uniform_link_matrix(n, rate);
        } else if (c.is_array()) {
            for (std::size_t i = 0; i < c.size(); ++i) {
                std::vector<double> row;
                if (!c[i].is_array()) {
                    r.errors.push_back("link_capacity_mb_per_s[" + std::to_string(i + 1) +
                                       "]: expected an array");
                } else {
                    for (const auto& v : c[i]) {
                        if (!v.is_number()) {
                            r.errors.push_back("link_capacity_mb_per_s: entries must be numbers");
                            break;
                        }
                        row.push_back(v.get<double>());
                    }
                }
                scn.link_capacity.push_back(std::move(row));
            }
        } else {
            r.errors.push_back("link_capacity_mb_per_s: expected a matrix or {\"uniform\": rate}");
        }
    }

    scn.airtime_horizon_s = r.number(root, origin, "airtime_horizon_seconds", 20.0);
    scn.unit_reward = r.number(root, origin, "unit_reward_per_mb", 0.01);
    scn.unit_energy_send = r.number(root, origin, "unit_energy_send_joules_per_mb", 2.85);
    scn.unit_energy_recv = r.number(root, origin, "unit_energy_recv_joules_per_mb", 2.85);

    if (root.contains("experiment")) {
        if (!root["experiment"].is_object())
            r.errors.push_back("experiment: expected an object");
        else
            file.experiment = parse_experiment(r, root["experiment"], n, scn.item_count());
    }

    // Structural problems first; only a structurally sound tree is asked to
    // satisfy the scenario invariants.
    if (r.errors.empty())
        for (auto& e : scn.validation_errors()) r.errors.push_back(std::move(e));

    if (!r.errors.empty()) {
        std::ostringstream oss;
        oss << origin << ": " << r.errors.size() << " problem" << (r.errors.size() > 1 ? "s" : "")
            << ":";
        for (const auto& e : r.errors) oss << "\n  - " << e;
        throw std::invalid_argument(oss.str());
    }
    return file;
}

scenario_file load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario_text(buffer.str(), path);
}

std::string serialize_scenario(const scenario_file& file) {
    const scenario& scn = file.scn;
    json root = json::object();

    root["users"] = json::array();
    for (int i = 0; i < scn.user_count(); ++i) {
        json u = json::object();
        u["energy_budget_joules"] = scn.users[i].energy_budget_joules;
        u["sensitivity"] = scn.users[i].sensitivity;
        u["bargaining_power"] = scn.bargaining_power[i];
        root["users"].push_back(std::move(u));
    }

    root["items"] = json::array();
    for (const auto& item : scn.items) {
        json it = json::object();
        it["owner"] = item.owner + 1;
        it["size_mb"] = item.size_mb;
        json interested = json::array();
        for (int r : item.interested) interested.push_back(r + 1);
        it["interested"] = std::move(interested);
        root["items"].push_back(std::move(it));
    }

    root["link_capacity_mb_per_s"] = scn.link_capacity;
    root["airtime_horizon_seconds"] = scn.airtime_horizon_s;
    root["unit_reward_per_mb"] = scn.unit_reward;
    root["unit_energy_send_joules_per_mb"] = scn.unit_energy_send;
    root["unit_energy_recv_joules_per_mb"] = scn.unit_energy_recv;

    if (file.experiment) {
        const experiment_spec& spec = *file.experiment;
        json e = json::object();
        e["sweep"] = to_string(spec.sweep);
        e["values"] = spec.values;
        e["target_user"] = spec.target_user + 1;
        if (spec.target_item >= 0) e["target_item"] = spec.target_item + 1;
        e["seeds"] = spec.seeds;
        e["channel"] = {{"snr", spec.channel.snr}, {"fading", spec.channel.fading}};
        e["output_dir"] = spec.output_dir;
        if (spec.head_power) e["head_power"] = *spec.head_power;
        root["experiment"] = std::move(e);
    }

    return root.dump(2) + "\n";
}

void save_scenario(const scenario_file& file, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << serialize_scenario(file);
}

}  // namespace airbargain
