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

#include "randprep/amplitudes.hpp"
#include "randprep/ensemble.hpp"

namespace randprep {

/// Analytic error quantities for a canonical ensemble:
///   a_max           worst member deviation, max_m |psi_tilde_m - psi|,
///   b_bias          mixture bias, |sum_m p_m psi_tilde_m - psi|,
///   lemma_bound     a_max^2 + 2 b_bias, an upper bound on the exact
///                   mixture trace distance,
///   theory_curve    ((c+2)^2 + c/2) eps^2,
///   appendix_a_bound (c+2) eps, the leading-order bound on a_max.
struct MixingBounds {
    double a_max = 0;
    double b_bias = 0;
    double lemma_bound = 0;
    double theory_curve = 0;
    double appendix_a_bound = 0;
};

enum class DecayKind { geometric, power_law };

/// Fitted profile of sorted amplitude magnitudes:
///   geometric  |alpha|_(k) = prefactor * rate^(k-1), rate in (0, 1),
///   power_law  |alpha|_(k) = prefactor * k^(-rate),  rate > 1/2.
/// fit_decay may return a rate outside these ranges for degenerate
/// inputs (for example a constant vector fits geometric rate 1); such
/// models are rejected by resource_plan.
struct DecayModel {
    DecayKind kind = DecayKind::geometric;
    double rate = 0;
    double prefactor = 0;
    double fit_residual = 0;
};

enum class Scheme { deterministic, randomized };

/// Smallest kept counts meeting a target error tau under a decay model:
/// k_det keeps eps(K) <= tau, k_rand keeps eps(K)^2 <= tau, both found
/// by direct summation of the model profile. The t_count fields price
/// the corresponding preparations under the rotation-cost toy model.
struct ResourcePlan {
    double tau = 0;
    std::size_t k_det = 0;
    std::size_t k_rand = 0;
    double ratio = 0;
    double t_count_det = 0;
    double t_count_rand = 0;
};

/// Computes a_max and b_bias by direct vector arithmetic over the
/// members, then the derived bound values. The closed form
/// b = |1/gamma - 1| is used only as a cross-check; a disagreement
/// beyond 1e-12 throws.
MixingBounds compute_mixing_bounds(const Ensemble &e, const AmplitudeVector &psi);

/// Tail l1/l2 ratio bound sqrt((1+r)/(1-r)) for a geometric profile.
/// Requires 0 < r < 1.
double geometric_constant(double r);

/// Tail l1/l2 ratio bound zeta(r)/sqrt(zeta(2r)) for a power-law
/// profile. Requires r > 1; at r <= 1 the l1 tail diverges and the
/// function throws "l1 condition diverges". zeta is evaluated by
/// partial summation with an integral-tail correction accurate below
/// 1e-12.
double power_law_constant(double r);

/// Riemann zeta for real s > 1 (same evaluation scheme as above).
double zeta(double s);

/// Fits both decay models to the sorted nonzero magnitudes of `psi` by
/// least squares in log space over the tail (ranks past the first 10%)
/// and returns the smaller-residual model. Requires at least 8 nonzero
/// amplitudes ("insufficient data" otherwise).
DecayModel fit_decay(const AmplitudeVector &psi);

/// Inverts eps(K) for the model by direct summation, searching
/// K in [1, max_rank]. Throws "target too strict" when even max_rank
/// kept amplitudes miss the target, and std::invalid_argument when the
/// model rate is outside its domain or tau is not in (0, 1).
ResourcePlan resource_plan(const DecayModel &model, double tau, std::size_t max_rank = 1u << 20,
                           double gates_per_bit = 3.0);

/// Rotation-synthesis toy cost: each encoded amplitude costs
/// max(0, gates_per_bit * log2(1/|amplitude|)). The deterministic
/// scheme encodes the kept set; the randomized scheme adds one
/// amplified rotation priced at the tail l1 norm. Only the
/// deterministic/randomized comparison is meaningful.
double t_count_estimate(const Partition &p, const AmplitudeVector &psi, Scheme scheme,
                        double gates_per_bit = 3.0);

/// Smallest number of kept amplitudes (sorted by magnitude) of the
/// actual vector `psi` meeting target error tau: eps(K) <= tau for the
/// deterministic scheme, eps(K)^2 <= tau for the randomized one.
std::size_t kept_count_for_error(const AmplitudeVector &psi, double tau, Scheme scheme);

/// JSON bounds report: {eps, S, c, gamma, a, b, lemma_bound,
/// theory_curve, appendix_a_bound} with 17-significant-digit decimals.
std::string bounds_report_json(const Partition &p, double gamma, const MixingBounds &mb);

}  // namespace randprep
