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

#include <cmath>
#include <random>

#include "airbargain/adaptive.hpp"
#include "airbargain/channel.hpp"
#include "airbargain/presets.hpp"
#include "airbargain/random.hpp"
#include "airbargain/solver.hpp"
#include "airbargain/utility.hpp"

using namespace airbargain;

namespace {

// Mean of c * p(c) for the fading capacity density, by Simpson's rule.
double capacity_mean_by_quadrature(double snr) {
    const double upper = std::log2(1.0 + snr * 60.0);  // survival ~ e^-60
    const int steps = 20000;
    const double h = upper / steps;
    auto integrand = [&](double c) {
        return c * std::log(2.0) / snr * std::pow(2.0, c) *
               std::exp(-(std::pow(2.0, c) - 1.0) / snr);
    };
    double sum = integrand(0.0) + integrand(upper);
    for (int k = 1; k < steps; ++k) sum += integrand(k * h) * (k % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

}  // namespace

TEST_CASE("capacity sampler: boundary, determinism and moments") {
    const channel_model channel{10.0, true};

    // The inverse CDF vanishes as u -> 0+.
    CHECK(std::log2(1.0 - channel.snr * std::log1p(-1e-15)) == doctest::Approx(0.0).epsilon(1e-9));

    std::mt19937_64 a(123), b(123);
    for (int k = 0; k < 100; ++k) CHECK(sample_capacity(channel, a) == sample_capacity(channel, b));

    std::mt19937_64 rng(7);
    double mean = 0.0;
    const int draws = 1000000;
    for (int k = 0; k < draws; ++k) {
        const double c = sample_capacity(channel, rng);
        CHECK(c > 0.0);
        mean += c;
    }
    mean /= draws;
    const double reference = capacity_mean_by_quadrature(channel.snr);
    CHECK(std::fabs(mean - reference) / reference < 0.01);
}

TEST_CASE("capacity timeline: constant mode repeats the scenario matrix") {
    const scenario scn = presets::symmetric_group();
    const auto timeline = make_capacity_timeline(scn, {10.0, false}, 3, 99);
    REQUIRE(timeline.size() == 3);
    for (const auto& caps : timeline) CHECK(caps == scn.link_capacity);

    const auto faded = make_capacity_timeline(scn, {10.0, true}, 3, 99);
    CHECK(faded[0] != faded[1]);
    const auto again = make_capacity_timeline(scn, {10.0, true}, 3, 99);
    CHECK(faded[0] == again[0]);
}

TEST_CASE("a single slot equals the static joint solution") {
    const scenario scn = presets::symmetric_group();
    const channel_model constant{10.0, false};
    const timeline_result run = run_adaptive(scn, scn.airtime_horizon_s, constant, 0);
    const joint_solution fixed = solve_joint(scn);

    REQUIRE(run.slots.size() == 1);
    CHECK(run.slots[0].head == fixed.selected_head);
    for (int m = 0; m < scn.item_count(); ++m)
        CHECK(run.slots[0].alloc.airtime_s[m] ==
              doctest::Approx(fixed.alloc.airtime_s[m]).epsilon(1e-9));
    for (int i = 0; i < scn.user_count(); ++i)
        CHECK(run.final_utilities[i] == doctest::Approx(fixed.utilities[i]).epsilon(1e-9));
}

TEST_CASE("symmetric users rotate head duty slot by slot") {
    const scenario scn = presets::symmetric_group();
    const channel_model constant{10.0, false};

    const timeline_result fine = run_adaptive(scn, 1.0, constant, 0);
    REQUIRE(fine.slots.size() == 20);
    for (int count : fine.head_counts) CHECK(count == 5);

    const timeline_result coarse = run_adaptive(scn, 20.0, constant, 0);
    REQUIRE(coarse.slots.size() == 1);
    int heads = 0;
    for (int count : coarse.head_counts) heads += count > 0 ? 1 : 0;
    CHECK(heads == 1);

    // Finer slotting spreads the energy load at least as evenly.
    auto spread = [&](const timeline_result& run) {
        double lo = 1e300, hi = -1e300;
        for (const auto& f : run.totals) {
            lo = std::min(lo, f.energy_j);
            hi = std::max(hi, f.energy_j);
        }
        return hi - lo;
    };
    CHECK(spread(fine) <= spread(coarse) + 1e-9);
}

TEST_CASE("exhausted data leaves later slots empty") {
    scenario scn = presets::symmetric_group();
    for (auto& item : scn.items) item.size_mb = 1.0;  // drains within ~3 s
    const channel_model constant{10.0, false};
    const timeline_result run = run_adaptive(scn, 1.0, constant, 0);

    double trailing = 0.0;
    for (std::size_t k = 10; k < run.slots.size(); ++k)
        for (double x : run.slots[k].alloc.airtime_s) trailing += x;
    CHECK(trailing == 0.0);
    // Everything was delivered: 3 interested users x 1 MB x 4 items.
    CHECK(run.total_disseminated_mb == doctest::Approx(12.0).epsilon(1e-6));
}

TEST_CASE("cumulative utilities never reset across slots") {
    const scenario scn = presets::symmetric_group();
    const channel_model channel{10.0, true};
    const timeline_result run = run_adaptive(scn, 2.0, channel, 5);

    std::vector<double> previous(scn.user_count(), 0.0);
    for (const auto& slot : run.slots) {
        for (int i = 0; i < scn.user_count(); ++i) {
            // Utilities evaluated on cumulative state with zero fresh airtime
            // can only move by the new slot's contribution, never below the
            // valuation already earned minus the cost already paid.
            CHECK(slot.utilities[i] >= previous[i] - 0.05);
        }
        previous = slot.utilities;
    }
    for (int i = 0; i < scn.user_count(); ++i)
        CHECK(run.final_utilities[i] == doctest::Approx(run.slots.back().utilities[i]));
}

TEST_CASE("non-adaptive with a constant channel equals the single-slot adaptive run") {
    const scenario scn = presets::symmetric_group();
    const channel_model constant{10.0, false};
    const timeline_result fixed = run_non_adaptive(scn, scn.airtime_horizon_s, constant, 0);
    const timeline_result adaptive = run_adaptive(scn, scn.airtime_horizon_s, constant, 0);

    CHECK(fixed.slots.size() == 1);
    CHECK(fixed.slots[0].head == adaptive.slots[0].head);
    CHECK(fixed.plain_product == doctest::Approx(adaptive.plain_product).epsilon(1e-9));
    CHECK(fixed.total_disseminated_mb ==
          doctest::Approx(adaptive.total_disseminated_mb).epsilon(1e-9));

    // Multi-slot non-adaptive under a constant channel also realizes exactly
    // the planned flows.
    const timeline_result sliced = run_non_adaptive(scn, 5.0, constant, 0);
    CHECK(sliced.plain_product == doctest::Approx(fixed.plain_product).epsilon(1e-9));
}

TEST_CASE("adapting to fading beats the fixed plan on average") {
    const scenario scn = presets::symmetric_group();
    const channel_model channel{10.0, true};
    const int seeds = 12;  // the acceptance suite runs the full comparison
    double adaptive_product = 0.0, fixed_product = 0.0;
    double adaptive_aod = 0.0, fixed_aod = 0.0;
    for (int seed = 0; seed < seeds; ++seed) {
        const timeline_result a = run_adaptive(scn, 4.0, channel, seed);
        const timeline_result f = run_non_adaptive(scn, 4.0, channel, seed);
        adaptive_product += a.plain_product;
        fixed_product += f.plain_product;
        adaptive_aod += a.total_disseminated_mb;
        fixed_aod += f.total_disseminated_mb;
    }
    CHECK(adaptive_product / seeds >= fixed_product / seeds);
    CHECK(adaptive_aod > fixed_aod);
}

TEST_CASE("slot bookkeeping stays within the horizon and the budgets") {
    const scenario scn = presets::symmetric_group();
    const channel_model channel{8.0, true};
    const timeline_result run = run_adaptive(scn, 3.0, channel, 11);

    CHECK(run.slots.size() == 7);  // ceil(20/3)
    double total_airtime = 0.0;
    for (const auto& slot : run.slots) {
        double in_slot = 0.0;
        for (double x : slot.alloc.airtime_s) in_slot += x;
        CHECK(in_slot <= slot.length_s + 1e-9);
        total_airtime += in_slot;
    }
    CHECK(total_airtime <= scn.airtime_horizon_s + 1e-9);
    for (int i = 0; i < scn.user_count(); ++i)
        CHECK(run.totals[i].energy_j < scn.users[i].energy_budget_joules);
}
