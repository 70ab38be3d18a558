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

#include "randprep/metrics.hpp"
#include "randprep/errors.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "randprep/textio.hpp"

namespace randprep {

namespace {

// Mixture weight below which pairs are dropped before the subspace
// projection. Removing total weight w perturbs the trace norm by at
// most w, far inside the 1e-10 oracle-agreement tolerance.
constexpr double kDeflateTol = 1e-14;

// Eigenvalues smaller than this are treated as zero when summing |lambda|.
constexpr double kEigenClamp = 1e-14;

// Residual norm below which a spanning vector counts as linearly
// dependent and is dropped during orthonormalization.
constexpr double kRankTol = 1e-10;

Eigen::Map<const Eigen::VectorXd> as_vec(const AmplitudeVector &psi) {
    return {psi.values.data(), static_cast<Eigen::Index>(psi.values.size())};
}

void check_same_dim(const DensityRepr &rho, const AmplitudeVector &psi) {
    for (const auto &[w, phi] : rho.pairs) {
        if (phi.values.size() != psi.values.size()) {
            throw std::invalid_argument("dimension mismatch between mixture and target");
        }
    }
}

// Modified Gram-Schmidt with a second orthogonalization pass. Returns an
// orthonormal basis of the span of `vectors`; inputs whose residual falls
// below kRankTol are dropped as dependent.
Eigen::MatrixXd orthonormal_basis(const std::vector<const AmplitudeVector *> &vectors) {
    Eigen::Index n = static_cast<Eigen::Index>(vectors.front()->values.size());
    Eigen::MatrixXd q(n, static_cast<Eigen::Index>(vectors.size()));
    Eigen::Index d = 0;
    for (const AmplitudeVector *v : vectors) {
        Eigen::VectorXd w = as_vec(*v);
        for (int pass = 0; pass < 2; pass++) {
            for (Eigen::Index j = 0; j < d; j++) {
                w -= q.col(j).dot(w) * q.col(j);
            }
        }
        double norm = w.norm();
        if (norm < kRankTol) {
            continue;
        }
        q.col(d) = w / norm;
        d++;
    }
    return q.leftCols(d);
}

double sum_abs_eigenvalues(const Eigen::MatrixXd &m, double clamp) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    double total = 0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); i++) {
        double mag = std::fabs(solver.eigenvalues()[i]);
        if (mag >= clamp) {
            total += mag;
        }
    }
    return total;
}

}  // namespace

Observable make_observable(int k_qubits, const Eigen::MatrixXd &matrix) {
    if (k_qubits < 1 || k_qubits > 10) {
        throw std::invalid_argument("observable must act on 1..10 qubits");
    }
    Eigen::Index side = Eigen::Index{1} << k_qubits;
    if (matrix.rows() != side || matrix.cols() != side) {
        throw std::invalid_argument("observable matrix side must be 2^k_qubits");
    }
    double asym = (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12) {
        throw std::invalid_argument("observable matrix is not symmetric");
    }
    Observable obs;
    obs.k_qubits = k_qubits;
    obs.matrix = matrix;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix, Eigen::EigenvaluesOnly);
    obs.spectral_norm = solver.eigenvalues().cwiseAbs().maxCoeff();
    return obs;
}

Observable load_observable(const std::string &path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::parse_error &e) {
        throw std::runtime_error("observable file parse error: " + std::string(e.what()));
    }
    if (!doc.is_object() || !doc.contains("k_qubits") || !doc.contains("rows")) {
        throw std::runtime_error("observable file missing required fields (k_qubits, rows)");
    }
    int k = doc["k_qubits"].get<int>();
    auto rows = doc["rows"].get<std::vector<std::vector<double>>>();
    Eigen::Index side = Eigen::Index{1} << k;
    if (static_cast<Eigen::Index>(rows.size()) != side) {
        throw std::runtime_error("observable file has wrong row count");
    }
    Eigen::MatrixXd m(side, side);
    for (Eigen::Index i = 0; i < side; i++) {
        if (static_cast<Eigen::Index>(rows[i].size()) != side) {
            throw std::runtime_error("observable file has ragged rows");
        }
        for (Eigen::Index j = 0; j < side; j++) {
            m(i, j) = rows[i][j];
        }
    }
    return make_observable(k, m);
}

void write_observable_file(const Observable &obs, const std::string &path) {
    std::ostringstream out;
    out << "{\n  \"k_qubits\": " << obs.k_qubits << ",\n  \"rows\": [\n";
    for (Eigen::Index i = 0; i < obs.matrix.rows(); i++) {
        out << "    [";
        for (Eigen::Index j = 0; j < obs.matrix.cols(); j++) {
            out << format_real(obs.matrix(i, j));
            if (j + 1 < obs.matrix.cols()) {
                out << ", ";
            }
        }
        out << (i + 1 < obs.matrix.rows() ? "],\n" : "]\n");
    }
    out << "  ]\n}\n";
    write_text_file(path, out.str());
}

double pure_trace_distance(const AmplitudeVector &psi, const AmplitudeVector &phi) {
    if (psi.values.size() != phi.values.size()) {
        throw std::invalid_argument("dimension mismatch");
    }
    // For unit vectors 1 - o^2 = (|psi - phi|^2 / 2)(|psi + phi|^2 / 2),
    // so the distance is the product of the two norms.
    double diff_sq = 0;
    double sum_sq = 0;
    for (std::size_t i = 0; i < psi.values.size(); i++) {
        double d = psi.values[i] - phi.values[i];
        double s = psi.values[i] + phi.values[i];
        diff_sq += d * d;
        sum_sq += s * s;
    }
    double dist = std::sqrt(diff_sq * sum_sq);
    return std::clamp(dist, 0.0, 2.0);
}

double truncation_error(const Partition &p, const AmplitudeVector &psi) {
    if (p.set_a.empty()) {
        throw std::invalid_argument("empty kept set");
    }
    double result = 2.0 * p.eps;
    double kept_sq = 0;
    for (std::size_t i : p.set_a) {
        kept_sq += psi.values[i] * psi.values[i];
    }
    AmplitudeVector kept;
    kept.n_qubits = psi.n_qubits;
    kept.label = psi.label;
    kept.values.assign(psi.values.size(), 0.0);
    double inv = 1.0 / std::sqrt(kept_sq);
    for (std::size_t i : p.set_a) {
        kept.values[i] = psi.values[i] * inv;
    }
    double direct = pure_trace_distance(psi, kept);
    if (std::fabs(direct - result) > 1e-12) {
        throw numeric_assertion_error("truncation error disagrees with the closed form");
    }
    return result;
}

double mixed_trace_distance(const DensityRepr &rho, const AmplitudeVector &psi) {
    check_same_dim(rho, psi);
    if (rho.pairs.empty()) {
        throw std::invalid_argument("empty mixture");
    }

    // Drop negligible-weight pairs (total dropped mass <= kDeflateTol).
    std::vector<std::size_t> order(rho.pairs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return rho.pairs[a].first < rho.pairs[b].first;
    });
    std::vector<std::size_t> kept;
    double dropped = 0;
    for (std::size_t pos = 0; pos < order.size(); pos++) {
        double w = rho.pairs[order[pos]].first;
        if (pos + 1 < order.size() && dropped + w <= kDeflateTol) {
            dropped += w;
        } else {
            kept.push_back(order[pos]);
        }
    }
    std::sort(kept.begin(), kept.end());

    std::vector<const AmplitudeVector *> span;
    span.reserve(kept.size() + 1);
    span.push_back(&psi);
    for (std::size_t k : kept) {
        span.push_back(&rho.pairs[k].second);
    }
    Eigen::MatrixXd q = orthonormal_basis(span);

    // Coordinates of the mixture states and the target in the subspace.
    Eigen::MatrixXd states(q.rows(), static_cast<Eigen::Index>(kept.size()));
    Eigen::VectorXd weights(static_cast<Eigen::Index>(kept.size()));
    for (std::size_t k = 0; k < kept.size(); k++) {
        states.col(static_cast<Eigen::Index>(k)) = as_vec(rho.pairs[kept[k]].second);
        weights[static_cast<Eigen::Index>(k)] = rho.pairs[kept[k]].first;
    }
    Eigen::MatrixXd coords = q.transpose() * states;
    Eigen::VectorXd target = q.transpose() * as_vec(psi);

    Eigen::MatrixXd diff = coords * weights.asDiagonal() * coords.transpose() - target * target.transpose();
    diff = ((diff + diff.transpose()) * 0.5).eval();
    return sum_abs_eigenvalues(diff, kEigenClamp);
}

double dense_trace_distance_oracle(const DensityRepr &rho, const AmplitudeVector &psi) {
    check_same_dim(rho, psi);
    if (psi.n_qubits > 10) {
        throw std::invalid_argument("oracle size limit");
    }
    Eigen::Index n = static_cast<Eigen::Index>(psi.values.size());
    Eigen::MatrixXd diff = Eigen::MatrixXd::Zero(n, n);
    for (const auto &[w, phi] : rho.pairs) {
        Eigen::Map<const Eigen::VectorXd> v = as_vec(phi);
        diff.noalias() += w * (v * v.transpose());
    }
    Eigen::Map<const Eigen::VectorXd> v = as_vec(psi);
    diff.noalias() -= v * v.transpose();
    return sum_abs_eigenvalues(diff, 0.0);
}

double expectation(const AmplitudeVector &psi, const Observable &obs) {
    if (obs.k_qubits > psi.n_qubits) {
        throw std::invalid_argument("observable acts on more qubits than the state has");
    }
    // Basis index = (first-k-qubit index) * 2^(n-k) + rest, so the state
    // reshapes column-major into a (rest x first) matrix and
    // <psi|O (x) I|psi> = sum_ab O(a,b) <col_a, col_b>.
    Eigen::Index cols = Eigen::Index{1} << obs.k_qubits;
    Eigen::Index rows = static_cast<Eigen::Index>(psi.values.size()) / cols;
    Eigen::Map<const Eigen::MatrixXd> m(psi.values.data(), rows, cols);
    Eigen::MatrixXd gram = m.transpose() * m;
    return (obs.matrix.cwiseProduct(gram)).sum();
}

double mixture_expectation(const DensityRepr &rho, const Observable &obs) {
    double total = 0;
    for (const auto &[w, phi] : rho.pairs) {
        total += w * expectation(phi, obs);
    }
    return total;
}

double observable_error(const DensityRepr &rho, const AmplitudeVector &psi, const Observable &obs,
                        double trace_distance_hint) {
    check_same_dim(rho, psi);
    double err = std::fabs(expectation(psi, obs) - mixture_expectation(rho, obs));
    double dist = trace_distance_hint >= 0 ? trace_distance_hint : mixed_trace_distance(rho, psi);
    double bound = obs.spectral_norm * dist;
    if (err > bound * (1.0 + 1e-10) + 1e-12) {
        throw numeric_assertion_error("observable error exceeds the trace-norm bound");
    }
    return err;
}

}  // namespace randprep
