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

#include "randprep/amplitudes.hpp"
#include "randprep/bounds.hpp"

namespace randprep {

/// Transverse-field Ising chain H = -J sum_i Z_i Z_{i+1} - h sum_i X_i
/// with periodic boundary. n_sites = 2 is excluded because the periodic
/// bond sum would count the single bond twice.
struct TfimSpec {
    int n_sites = 0;
    double coupling_j = 1.0;
    double field_h = 1.0;
};

/// Synthetic sorted-magnitude profile r^(k-1) (geometric, rate in
/// (0, 1)) or k^(-rate) (power law, rate > 1/2), padded to the next
/// power of two and normalized. seed 0 gives alternating signs; any
/// other seed draws random signs reproducibly.
struct SyntheticSpec {
    DecayKind kind = DecayKind::geometric;
    double rate = 0.5;
    std::size_t dim = 2;
    std::uint64_t seed = 0;
};

/// Ground state of the chain, sign-fixed so the largest-magnitude
/// amplitude is positive. Dense eigensolver up to 12 sites, Lanczos
/// with full reorthogonalization above. The returned vector satisfies
/// |H v - E0 v| <= 1e-8. Throws "degenerate ground state" when the
/// spectral gap is below 1e-10 (no unique ground vector exists).
AmplitudeVector tfim_ground_state(const TfimSpec &spec);

/// Ground energy and state together, for callers that need E0.
std::pair<double, AmplitudeVector> tfim_ground_pair(const TfimSpec &spec);

/// Same computation restricted to the Lanczos path regardless of size;
/// used to validate the two paths against each other.
std::pair<double, AmplitudeVector> tfim_ground_pair_lanczos(const TfimSpec &spec);

/// Builds the synthetic profile state. Deterministic given its inputs.
AmplitudeVector synthetic_state(const SyntheticSpec &spec);

/// Loads an amplitude vector from either the state-file format or a
/// plain whitespace-separated list of decimals, then zero-pads to
/// 2^n_qubits and normalizes. The label records "file:<path>".
AmplitudeVector load_state(const std::string &path, int n_qubits);

}  // namespace randprep
