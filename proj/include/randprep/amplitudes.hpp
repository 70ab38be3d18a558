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

namespace randprep {

/// A normalized real amplitude vector over the 2^n computational basis
/// states of an n-qubit register. Entries are signed; zeros are allowed.
/// Instances are immutable by convention once constructed.
struct AmplitudeVector {
    int n_qubits = 0;
    std::vector<double> values;  // length 2^n_qubits, unit l2 norm
    std::string label;

    std::size_t dim() const {
        return std::size_t{1} << n_qubits;
    }
};

/// Threshold split of an amplitude vector: set_a holds indices with
/// |alpha_i| >= t (kept), set_b indices with 0 < |alpha_j| < t (tail).
/// Exact zeros belong to neither set. Derived tail statistics:
///   eps       l2 norm of the tail,
///   ell1_tail l1 norm of the tail,
///   c_ratio   ell1_tail / eps (0 when the tail is empty),
///   k_kept    |set_a|.
struct Partition {
    double threshold = 0;
    std::vector<std::size_t> set_a;
    std::vector<std::size_t> set_b;
    double eps = 0;
    double ell1_tail = 0;
    double c_ratio = 0;
    std::size_t k_kept = 0;
};

/// Pads `raw` with zeros to length 2^n_qubits and scales it to unit l2
/// norm, preserving order and signs.
///
/// Throws std::invalid_argument:
///   "invalid amplitude"   on a non-finite entry,
///   "dimension overflow"  when raw is longer than 2^n_qubits,
///   "zero vector"         when every entry is zero.
AmplitudeVector normalize(const std::vector<double> &raw, int n_qubits, const std::string &label = "unlabeled");

/// Splits `psi` at threshold `t` by magnitude. Ties (|alpha_i| = t) go to
/// the kept set. Throws "empty kept set" when t exceeds every magnitude,
/// and std::invalid_argument when t <= 0.
Partition partition(const AmplitudeVector &psi, double t);

/// Returns sqrt(|B|) * eps - ell1_tail, which is nonnegative up to
/// rounding for every partition (Cauchy-Schwarz on the tail). Throws
/// "empty tail" when the tail is empty.
double cauchy_schwarz_check(const Partition &p);

/// Renders the state-file format: a JSON object with fields n_qubits,
/// values, label. Values are decimal text with 17 significant digits so
/// that a round trip reproduces the binary doubles exactly.
std::string state_file_json(const AmplitudeVector &psi);

void write_state_file(const AmplitudeVector &psi, const std::string &path);

/// Reads the state-file format written by write_state_file. Vectors that
/// are already unit norm within 1e-12 are kept bit-identical; anything
/// else is renormalized on ingest.
AmplitudeVector read_state_file(const std::string &path);

}  // namespace randprep
