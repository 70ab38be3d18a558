// Copyright 2026 The randprep authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "randprep/amplitudes.hpp"
#include "randprep/ensemble.hpp"
#include "randprep/metrics.hpp"
#include "randprep/sampler.hpp"
#include "test_support.hpp"

using namespace randprep;
using testsupport::close;
using testsupport::make_toy;

namespace {

Ensemble toy_ensemble() {
    AmplitudeVector psi = make_toy();
    return build_ensemble(partition(psi, 0.2), psi);
}

Observable z_first() {
    Eigen::MatrixXd z(2, 2);
    z << 1, 0, 0, -1;
    return make_observable(1, z);
}

}  // namespace

TEST_CASE("sampling is reproducible per seed") {
    std::mt19937_64 rng(71);
    AmplitudeVector psi = testsupport::random_unit_state(rng, 6);
    Ensemble e = build_ensemble(partition(psi, 0.08), psi);
    REQUIRE(e.size() >= 10);

    SampleRun a = sample_members(e, 5000, 99);
    SampleRun b = sample_members(e, 5000, 99);
    REQUIRE(a.draw_counts.size() == b.draw_counts.size());
    for (std::size_t i = 0; i < a.draw_counts.size(); i++) {
        CHECK(a.draw_counts[i] == b.draw_counts[i]);
    }

    SampleRun c = sample_members(e, 5000, 100);
    bool identical = a.draw_counts == c.draw_counts;
    CHECK_FALSE(identical);
}

TEST_CASE("draw counts cover the members and sum to the shot count") {
    Ensemble e = toy_ensemble();
    SampleRun run = sample_members(e, 20000, 7);
    std::size_t total = 0;
    std::size_t prev_index = 0;
    bool first = true;
    for (const auto &[index, count] : run.draw_counts) {
        CHECK((index == 1 || index == 2));  // tail indices of the toy state
        CHECK(count > 0);
        if (!first) {
            CHECK(index > prev_index);
        }
        prev_index = index;
        first = false;
        total += count;
    }
    CHECK(total == 20000);

    // Two equal probabilities: each count within five binomial sigmas.
    double sigma = std::sqrt(20000 * 0.25);
    CHECK(std::fabs(static_cast<double>(run.draw_counts[0].second) - 10000.0) <= 5.0 * sigma);

    CHECK_THROWS_AS(sample_members(e, 0, 7), std::invalid_argument);
}

TEST_CASE("empirical distribution converges in total variation") {
    Ensemble e = toy_ensemble();
    std::size_t shots = 100000;
    double budget = 5.0 * std::sqrt(static_cast<double>(e.size()) / static_cast<double>(shots));
    for (std::uint64_t seed = 0; seed < 10; seed++) {
        SampleRun run = sample_members(e, shots, seed);
        CHECK(empirical_tv_distance(run, e) <= budget);
    }
}

TEST_CASE("identity observables are estimated exactly") {
    Ensemble e = toy_ensemble();
    Observable identity = make_observable(2, Eigen::MatrixXd::Identity(4, 4));
    SampleRun run = estimate_observable(e, identity, 1000, 5);
    CHECK(close(run.estimate, 1.0, 1e-12));
    CHECK(run.std_error <= 1e-12);
    CHECK(close(exact_mixture_value(e, identity), 1.0, 1e-12));
}

TEST_CASE("observable estimates land within five standard errors") {
    Ensemble e = toy_ensemble();
    Observable z0 = z_first();
    double exact = exact_mixture_value(e, z0);
    CHECK(close(exact, 0.9607843137254903, 1e-14));

    int failures = 0;
    for (std::uint64_t seed = 0; seed < 20; seed++) {
        SampleRun run = estimate_observable(e, z0, 10000, seed);
        CHECK(run.std_error > 0.0);
        if (std::fabs(run.estimate - exact) > 5.0 * run.std_error) {
            failures++;
        }
    }
    CHECK(failures == 0);
}

TEST_CASE("mixture expectation equals the density-matrix value") {
    Ensemble e = toy_ensemble();
    Observable z0 = z_first();
    double via_density = mixture_expectation(mixture_density(e), z0);
    CHECK(close(exact_mixture_value(e, z0), via_density, 1e-14));
}

TEST_CASE("run reports serialize every field") {
    Ensemble e = toy_ensemble();
    SampleRun run = estimate_observable(e, z_first(), 500, 11);
    double exact = exact_mixture_value(e, z_first());
    nlohmann::json doc = nlohmann::json::parse(run_report_json(run, exact));

    CHECK(doc["seed"].get<std::uint64_t>() == 11);
    CHECK(doc["shots"].get<std::size_t>() == 500);
    CHECK(doc["estimate"].get<double>() == run.estimate);
    CHECK(doc["std_error"].get<double>() == run.std_error);
    CHECK(doc["exact_value"].get<double>() == exact);
    std::size_t total = 0;
    for (const auto &[key, value] : doc["draw_counts"].items()) {
        total += value.get<std::size_t>();
    }
    CHECK(total == 500);
}
