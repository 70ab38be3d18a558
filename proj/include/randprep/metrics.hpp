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

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "randprep/amplitudes.hpp"

namespace randprep {

/// Low-rank density operator: a convex mixture of pure states stored as
/// (weight, state) pairs. Weights sum to 1 within 1e-12 and every state
/// is unit norm. The 2^n x 2^n matrix is never materialized here.
struct DensityRepr {
    std::vector<std::pair<double, AmplitudeVector>> pairs;
};

/// Real-symmetric observable acting on the first k qubits of a register
/// (qubit 0 is the most significant bit of the basis index), extended by
/// identity on the rest. spectral_norm is the largest |eigenvalue|.
struct Observable {
    int k_qubits = 0;
    Eigen::MatrixXd matrix;
    double spectral_norm = 0;
};

/// Validates symmetry (deviation <= 1e-12) and computes the spectral
/// norm. Throws std::invalid_argument on asymmetric or misshaped input.
Observable make_observable(int k_qubits, const Eigen::MatrixXd &matrix);

/// Reads an observable file: a JSON object {k_qubits, rows} with rows a
/// 2^k x 2^k matrix of decimal numbers. Symmetry is validated on load.
Observable load_observable(const std::string &path);

/// Writes the observable file format with 17-significant-digit decimals.
void write_observable_file(const Observable &obs, const std::string &path);

/// Trace distance between two pure states, 2 sqrt(1 - <psi|phi>^2),
/// clamped to [0, 2]. Evaluated as |psi - phi| * |psi + phi|, which is
/// the same quantity for unit vectors and avoids cancellation near
/// overlap 1.
double pure_trace_distance(const AmplitudeVector &psi, const AmplitudeVector &phi);

/// Trace distance between `psi` and its renormalized kept part, equal to
/// 2 * eps. Cross-checked internally against pure_trace_distance to
/// 1e-12.
double truncation_error(const Partition &p, const AmplitudeVector &psi);

/// Exact trace distance between a low-rank mixture and a pure target.
/// The difference operator lives in the span of {psi} and the mixture
/// states; it is projected onto an orthonormal basis of that span and
/// eigendecomposed there, so the result is exact up to rounding.
double mixed_trace_distance(const DensityRepr &rho, const AmplitudeVector &psi);

/// Brute-force check: materializes both density matrices and sums the
/// absolute eigenvalues of the difference. Throws "oracle size limit"
/// for more than 10 qubits.
double dense_trace_distance_oracle(const DensityRepr &rho, const AmplitudeVector &psi);

/// Expectation <psi| O (x) I |psi> of an observable on the first k
/// qubits.
double expectation(const AmplitudeVector &psi, const Observable &obs);

/// Mixture expectation Tr[rho O] = sum_k w_k <phi_k| O |phi_k>.
double mixture_expectation(const DensityRepr &rho, const Observable &obs);

/// |Tr[(rho_pure - rho) O]| where rho_pure = |psi><psi|. The result is
/// bounded by spectral_norm * trace distance (Hoelder duality); the
/// bound is asserted and a violation throws, since it cannot occur for
/// correct inputs. Pass the trace distance in `trace_distance_hint` to
/// reuse a precomputed value; a negative hint recomputes it.
double observable_error(const DensityRepr &rho, const AmplitudeVector &psi, const Observable &obs,
                        double trace_distance_hint = -1.0);

}  // namespace randprep
