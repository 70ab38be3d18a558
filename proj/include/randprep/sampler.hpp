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

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "randprep/ensemble.hpp"
#include "randprep/metrics.hpp"

namespace randprep {

/// Result of a seeded Monte Carlo run over ensemble members.
/// draw_counts holds (basis index m, draw count) sorted by index, with
/// counts summing to `shots`. For observable runs, `estimate` is the
/// draw average of the exact member expectations (the classical
/// randomness of the scheme is simulated; there is no measurement shot
/// noise within a member) and std_error = sample standard deviation /
/// sqrt(shots).
struct SampleRun {
    std::uint64_t seed = 0;
    std::size_t shots = 0;
    std::vector<std::pair<std::size_t, std::size_t>> draw_counts;
    double estimate = 0;
    double std_error = 0;
};

/// Draws `shots` member indices i.i.d. from {p_m} by inverse CDF over
/// the members in ascending index order, using a 64-bit seeded
/// generator. Identical (ensemble, shots, seed) give identical draws.
SampleRun sample_members(const Ensemble &e, std::size_t shots, std::uint64_t seed);

/// Runs sample_members, then averages the exact member expectations
/// <psi_m| O |psi_m> over the draws. The estimate converges to the
/// mixture expectation Tr[rho O] as shots grow.
SampleRun estimate_observable(const Ensemble &e, const Observable &obs, std::size_t shots,
                              std::uint64_t seed);

/// Exact mixture expectation sum_m p_m <psi_m| O |psi_m>, the
/// infinite-shot limit of estimate_observable.
double exact_mixture_value(const Ensemble &e, const Observable &obs);

/// Total-variation distance between the empirical draw frequencies and
/// the ensemble probabilities.
double empirical_tv_distance(const SampleRun &run, const Ensemble &e);

/// JSON run report: {seed, shots, estimate, std_error, exact_value,
/// draw_counts} with 17-significant-digit decimals.
std::string run_report_json(const SampleRun &run, double exact_value);

}  // namespace randprep
