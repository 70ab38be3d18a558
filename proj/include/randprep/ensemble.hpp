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
#include "randprep/metrics.hpp"

namespace randprep {

/// One prepared instance of the randomized scheme: the kept amplitudes
/// plus a single amplified tail term at basis index `index_m`, selected
/// with probability `probability` = |alpha_m| / S. The stored state is
/// the normalized vector; `amplified_coefficient` = sgn(alpha_m) * S is
/// its tail entry before normalization.
struct EnsembleMember {
    std::size_t index_m = 0;
    double probability = 0;
    double amplified_coefficient = 0;
    AmplitudeVector state;  // empty in lazy mode; see Ensemble::member_state
};

/// The full randomized-preparation ensemble: one member per tail index,
/// all sharing the normalization gamma = sqrt(1 - eps^2 + S^2). When the
/// tail exceeds `member_cap` at build time, member states are not stored
/// and are materialized on demand instead.
struct Ensemble {
    std::vector<EnsembleMember> members;  // ascending index_m
    double gamma = 1;
    Partition partition;
    AmplitudeVector target;
    bool lazy = false;

    std::size_t size() const {
        return members.size();
    }

    /// Returns member k's normalized state, materializing it in lazy
    /// mode. Identical to members[k].state when states are stored.
    AmplitudeVector member_state(std::size_t k) const;
};

constexpr std::size_t kDefaultMemberCap = 4096;

/// Builds the canonical ensemble for a partition with nonempty kept set
/// and tail: p_m = |alpha_m| / S and member states
/// gamma^-1 (psi_A + sgn(alpha_m) S |m>). Throws "nothing to randomize"
/// when the tail is empty.
Ensemble build_ensemble(const Partition &p, const AmplitudeVector &psi,
                        std::size_t member_cap = kDefaultMemberCap);

/// Norm of (sum_m p_m gamma psi_tilde_m) - psi. The weighted sum of the
/// unnormalized members reconstructs the target exactly in exact
/// arithmetic, so this is rounding-level small (<= 1e-12).
double reconstruction_residual(const Ensemble &e, const AmplitudeVector &psi);

/// Low-rank representation of the mixture sum_m p_m |psi_m><psi_m|.
/// Materializes member states in lazy mode.
DensityRepr mixture_density(const Ensemble &e);

/// Writes the ensemble summary: gamma and one {m, p_m,
/// amplified_coefficient} record per member, as JSON with
/// 17-significant-digit decimals.
void write_ensemble_summary(const Ensemble &e, const std::string &path);

}  // namespace randprep
