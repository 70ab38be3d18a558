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

#include "randprep/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "randprep/textio.hpp"

namespace randprep {

namespace {

// Uniform double in [0, 1) from the top 53 bits of the generator; fixed
// here rather than delegated to the library distribution so draws are
// identical across standard library implementations.
double uniform01(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

SampleRun sample_members(const Ensemble &e, std::size_t shots, std::uint64_t seed) {
    if (shots < 1) {
        throw std::invalid_argument("shots must be at least 1");
    }
    std::size_t count = e.size();
    std::vector<double> cdf(count);
    double acc = 0;
    for (std::size_t k = 0; k < count; k++) {
        acc += e.members[k].probability;
        cdf[k] = acc;
    }

    std::vector<std::size_t> hits(count, 0);
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < shots; s++) {
        double u = uniform01(rng);
        std::size_t k = std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
        if (k >= count) {
            k = count - 1;  // u landed past the rounded total
        }
        hits[k]++;
    }

    SampleRun run;
    run.seed = seed;
    run.shots = shots;
    for (std::size_t k = 0; k < count; k++) {
        if (hits[k] > 0) {
            run.draw_counts.emplace_back(e.members[k].index_m, hits[k]);
        }
    }
    return run;
}

SampleRun estimate_observable(const Ensemble &e, const Observable &obs, std::size_t shots,
                              std::uint64_t seed) {
    SampleRun run = sample_members(e, shots, seed);

    // Exact expectation of each drawn member; draw_counts and members
    // are both in ascending index order, so one sweep aligns them.
    std::vector<double> values(run.draw_counts.size(), 0.0);
    std::size_t pos = 0;
    for (std::size_t k = 0; k < e.size() && pos < run.draw_counts.size(); k++) {
        if (e.members[k].index_m == run.draw_counts[pos].first) {
            values[pos] = expectation(e.member_state(k), obs);
            pos++;
        }
    }

    double shots_d = static_cast<double>(shots);
    double total = 0;
    for (std::size_t i = 0; i < run.draw_counts.size(); i++) {
        total += static_cast<double>(run.draw_counts[i].second) * values[i];
    }
    run.estimate = total / shots_d;

    double ss = 0;
    for (std::size_t i = 0; i < run.draw_counts.size(); i++) {
        double dev = values[i] - run.estimate;
        ss += static_cast<double>(run.draw_counts[i].second) * dev * dev;
    }
    double sample_var = shots > 1 ? ss / (shots_d - 1.0) : 0.0;
    run.std_error = std::sqrt(sample_var / shots_d);
    return run;
}

double exact_mixture_value(const Ensemble &e, const Observable &obs) {
    double total = 0;
    for (std::size_t k = 0; k < e.size(); k++) {
        total += e.members[k].probability * expectation(e.member_state(k), obs);
    }
    return total;
}

double empirical_tv_distance(const SampleRun &run, const Ensemble &e) {
    double shots = static_cast<double>(run.shots);
    double tv = 0;
    std::size_t pos = 0;
    for (std::size_t k = 0; k < e.size(); k++) {
        double freq = 0;
        if (pos < run.draw_counts.size() && run.draw_counts[pos].first == e.members[k].index_m) {
            freq = static_cast<double>(run.draw_counts[pos].second) / shots;
            pos++;
        }
        tv += std::fabs(freq - e.members[k].probability);
    }
    return 0.5 * tv;
}

std::string run_report_json(const SampleRun &run, double exact_value) {
    std::ostringstream out;
    out << "{\n"
        << "  \"seed\": " << run.seed << ",\n"
        << "  \"shots\": " << run.shots << ",\n"
        << "  \"estimate\": " << format_real(run.estimate) << ",\n"
        << "  \"std_error\": " << format_real(run.std_error) << ",\n"
        << "  \"exact_value\": " << format_real(exact_value) << ",\n"
        << "  \"draw_counts\": {";
    for (std::size_t i = 0; i < run.draw_counts.size(); i++) {
        out << "\"" << run.draw_counts[i].first << "\": " << run.draw_counts[i].second;
        if (i + 1 < run.draw_counts.size()) {
            out << ", ";
        }
    }
    out << "}\n}\n";
    return out.str();
}

}  // namespace randprep
