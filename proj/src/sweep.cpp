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

#include "randprep/sweep.hpp"
#include "randprep/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "randprep/bounds.hpp"
#include "randprep/ensemble.hpp"
#include "randprep/metrics.hpp"
#include "randprep/textio.hpp"

namespace randprep {

namespace {

const char *kCsvHeader =
    "threshold,k_kept,eps,ell1_tail,c_ratio,a_max,b_bias,lemma_bound,theory_curve,dist_det,"
    "dist_rand,note";

SweepRow compute_row(const AmplitudeVector &psi, double threshold) {
    SweepRow row;
    row.threshold = threshold;

    Partition p;
    try {
        p = partition(psi, threshold);
    } catch (const std::invalid_argument &) {
        row.skipped = true;
        row.note = "skipped: empty kept set";
        return row;
    }
    if (p.set_b.empty()) {
        row.skipped = true;
        row.note = "skipped: empty tail";
        return row;
    }

    row.k_kept = p.k_kept;
    row.eps = p.eps;
    row.ell1_tail = p.ell1_tail;
    row.c_ratio = p.c_ratio;
    row.dist_det = truncation_error(p, psi);

    Ensemble e = build_ensemble(p, psi);
    MixingBounds mb = compute_mixing_bounds(e, psi);
    row.a_max = mb.a_max;
    row.b_bias = mb.b_bias;
    row.lemma_bound = mb.lemma_bound;
    row.theory_curve = mb.theory_curve;
    row.dist_rand = mixed_trace_distance(mixture_density(e), psi);
    return row;
}

}  // namespace

std::vector<double> geometric_grid(double t_min, double t_max, std::size_t count) {
    if (!(t_min > 0) || !(t_max >= t_min) || count < 1) {
        throw std::invalid_argument("grid requires 0 < t_min <= t_max and count >= 1");
    }
    if (count == 1) {
        if (t_min != t_max) {
            throw std::invalid_argument("single-point grid requires t_min = t_max");
        }
        return {t_min};
    }
    std::vector<double> grid(count);
    double log_min = std::log(t_min);
    double log_max = std::log(t_max);
    for (std::size_t i = 0; i < count; i++) {
        double frac = static_cast<double>(i) / static_cast<double>(count - 1);
        grid[i] = std::exp(log_max + frac * (log_min - log_max));
    }
    grid.front() = t_max;
    grid.back() = t_min;
    return grid;
}

std::vector<SweepRow> run_sweep(const AmplitudeVector &psi, std::vector<double> thresholds,
                                int threads) {
    std::sort(thresholds.begin(), thresholds.end(), std::greater<double>());
    std::vector<SweepRow> rows(thresholds.size());

    int workers = std::max(1, std::min<int>(threads, static_cast<int>(thresholds.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < thresholds.size(); i++) {
            rows[i] = compute_row(psi, thresholds[i]);
        }
        return rows;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= thresholds.size()) {
                return;
            }
            try {
                rows[i] = compute_row(psi, thresholds[i]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; w++) {
        pool.emplace_back(work);
    }
    for (std::thread &t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
    return rows;
}

void verify_sweep_rows(const std::vector<SweepRow> &rows) {
    for (const SweepRow &row : rows) {
        if (row.skipped) {
            continue;
        }
        if (row.dist_rand > row.lemma_bound + 1e-12) {
            throw numeric_assertion_error("sweep row violates the mixing bound at threshold " +
                                     format_real(row.threshold));
        }
        if (std::fabs(row.dist_det - 2.0 * row.eps) > 1e-10) {
            throw numeric_assertion_error("sweep row deterministic distance is off closed form at threshold " +
                                     format_real(row.threshold));
        }
        if (row.c_ratio <= 4.0 && row.eps <= 0.2 && row.dist_rand > row.theory_curve + 1e-12) {
            throw numeric_assertion_error("sweep row violates the theory curve at threshold " +
                                     format_real(row.threshold));
        }
    }
}

std::string sweep_csv(const std::vector<SweepRow> &rows) {
    std::ostringstream out;
    out << kCsvHeader << "\n";
    for (const SweepRow &row : rows) {
        out << format_real(row.threshold) << ",";
        if (row.skipped) {
            out << ",,,,,,,,,," << row.note << "\n";
            continue;
        }
        out << row.k_kept << "," << format_real(row.eps) << "," << format_real(row.ell1_tail) << ","
            << format_real(row.c_ratio) << "," << format_real(row.a_max) << ","
            << format_real(row.b_bias) << "," << format_real(row.lemma_bound) << ","
            << format_real(row.theory_curve) << "," << format_real(row.dist_det) << ","
            << format_real(row.dist_rand) << "," << row.note << "\n";
    }
    return out.str();
}

std::vector<SweepRow> parse_sweep_csv(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw std::runtime_error("sweep CSV header mismatch");
    }
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); i++) {
            if (i == line.size() || line[i] == ',') {
                fields.push_back(line.substr(start, i - start));
                start = i + 1;
            }
        }
        if (fields.size() != 12) {
            throw std::runtime_error("sweep CSV row has wrong field count");
        }
        SweepRow row;
        row.threshold = std::strtod(fields[0].c_str(), nullptr);
        row.note = fields[11];
        if (fields[1].empty()) {
            row.skipped = true;
            rows.push_back(row);
            continue;
        }
        row.k_kept = static_cast<std::size_t>(std::strtoull(fields[1].c_str(), nullptr, 10));
        row.eps = std::strtod(fields[2].c_str(), nullptr);
        row.ell1_tail = std::strtod(fields[3].c_str(), nullptr);
        row.c_ratio = std::strtod(fields[4].c_str(), nullptr);
        row.a_max = std::strtod(fields[5].c_str(), nullptr);
        row.b_bias = std::strtod(fields[6].c_str(), nullptr);
        row.lemma_bound = std::strtod(fields[7].c_str(), nullptr);
        row.theory_curve = std::strtod(fields[8].c_str(), nullptr);
        row.dist_det = std::strtod(fields[9].c_str(), nullptr);
        row.dist_rand = std::strtod(fields[10].c_str(), nullptr);
        rows.push_back(row);
    }
    return rows;
}

int thread_cap_from_env() {
    const char *env = std::getenv("RANDPREP_THREADS");
    if (env != nullptr) {
        int parsed = std::atoi(env);
        if (parsed >= 1) {
            return parsed;
        }
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace randprep
