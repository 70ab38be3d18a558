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

#include <cstddef>
#include <string>
#include <vector>

#include "randprep/amplitudes.hpp"

namespace randprep {

/// One threshold of an error sweep. Thresholds whose kept set or tail
/// is empty produce a skipped row carrying only the threshold and a
/// note; all other fields are the partition statistics, the analytic
/// bounds, and the two exact trace distances.
struct SweepRow {
    double threshold = 0;
    bool skipped = false;
    std::string note;
    std::size_t k_kept = 0;
    double eps = 0;
    double ell1_tail = 0;
    double c_ratio = 0;
    double a_max = 0;
    double b_bias = 0;
    double lemma_bound = 0;
    double theory_curve = 0;
    double dist_det = 0;
    double dist_rand = 0;
};

/// Geometric grid of `count` thresholds from t_min to t_max inclusive,
/// returned in decreasing order. Requires 0 < t_min <= t_max and
/// count >= 1 (a single-point grid needs t_min = t_max).
std::vector<double> geometric_grid(double t_min, double t_max, std::size_t count);

/// Computes one row per threshold (processed in decreasing order).
/// Rows are independent; `threads` > 1 distributes them over worker
/// threads without changing any output bit.
std::vector<SweepRow> run_sweep(const AmplitudeVector &psi, std::vector<double> thresholds,
                                int threads = 1);

/// Checks every emitted row: dist_rand <= lemma_bound, dist_det agrees
/// with the 2*eps closed form to 1e-10, and dist_rand <= theory_curve
/// wherever c <= 4 and eps <= 0.2. Throws std::runtime_error on the
/// first violation.
void verify_sweep_rows(const std::vector<SweepRow> &rows);

/// CSV with a fixed header and 17-significant-digit decimals:
/// threshold,k_kept,eps,ell1_tail,c_ratio,a_max,b_bias,lemma_bound,
/// theory_curve,dist_det,dist_rand,note
std::string sweep_csv(const std::vector<SweepRow> &rows);

/// Parses sweep_csv output back into rows (exact round trip).
std::vector<SweepRow> parse_sweep_csv(const std::string &text);

/// Worker cap from the RANDPREP_THREADS environment variable, falling
/// back to the hardware concurrency when unset.
int thread_cap_from_env();

}  // namespace randprep
