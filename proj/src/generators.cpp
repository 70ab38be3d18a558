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

#include "randprep/generators.hpp"
#include "randprep/errors.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"
#include "randprep/textio.hpp"

namespace randprep {

namespace {

constexpr int kDenseSiteLimit = 12;
constexpr int kLanczosMaxIter = 200;
constexpr double kLanczosResidual = 1e-10;
constexpr double kDegeneracyGap = 1e-10;
constexpr double kGroundResidual = 1e-8;

void check_spec(const TfimSpec &spec) {
    if (spec.n_sites < 3 || spec.n_sites > 14) {
        throw std::invalid_argument("n_sites must be in [3, 14]");
    }
    if (!std::isfinite(spec.coupling_j) || !std::isfinite(spec.field_h)) {
        throw std::invalid_argument("couplings must be finite");
    }
}

// Diagonal part -J sum_i Z_i Z_{i+1} evaluated on a basis bit string.
std::vector<double> zz_diagonal(const TfimSpec &spec) {
    std::size_t dim = std::size_t{1} << spec.n_sites;
    std::vector<double> diag(dim);
    for (std::size_t b = 0; b < dim; b++) {
        int bonds = 0;
        for (int i = 0; i < spec.n_sites; i++) {
            int s1 = (b >> i) & 1;
            int s2 = (b >> ((i + 1) % spec.n_sites)) & 1;
            bonds += (s1 == s2) ? 1 : -1;
        }
        diag[b] = -spec.coupling_j * bonds;
    }
    return diag;
}

// y = H x with the bit-flip field applied site by site.
void apply_hamiltonian(const TfimSpec &spec, const std::vector<double> &diag,
                       const std::vector<double> &x, std::vector<double> &y) {
    std::size_t dim = x.size();
    for (std::size_t i = 0; i < dim; i++) {
        y[i] = diag[i] * x[i];
    }
    for (int b = 0; b < spec.n_sites; b++) {
        std::size_t mask = std::size_t{1} << b;
        for (std::size_t i = 0; i < dim; i++) {
            y[i] -= spec.field_h * x[i ^ mask];
        }
    }
}

double ground_residual(const TfimSpec &spec, const std::vector<double> &diag, double energy,
                       const std::vector<double> &v) {
    std::vector<double> hv(v.size());
    apply_hamiltonian(spec, diag, v, hv);
    double resid_sq = 0;
    for (std::size_t i = 0; i < v.size(); i++) {
        double d = hv[i] - energy * v[i];
        resid_sq += d * d;
    }
    return std::sqrt(resid_sq);
}

// Lowest two eigenpairs by LAPACK on the materialized matrix.
void dense_lowest_two(const TfimSpec &spec, const std::vector<double> &diag, double *e0, double *e1,
                      std::vector<double> *v0) {
    lapack_int n = lapack_int{1} << spec.n_sites;
    std::vector<double> h(static_cast<std::size_t>(n) * n, 0.0);
    for (lapack_int i = 0; i < n; i++) {
        h[static_cast<std::size_t>(i) * n + i] = diag[i];
        for (int b = 0; b < spec.n_sites; b++) {
            lapack_int j = i ^ (lapack_int{1} << b);
            h[static_cast<std::size_t>(i) * n + j] -= spec.field_h;
        }
    }
    std::vector<double> w(2), z(static_cast<std::size_t>(n) * 2);
    std::vector<lapack_int> isuppz(4);
    lapack_int found = 0;
    lapack_int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'L', n, h.data(), n, 0, 0, 1, 2,
                                     0.0, &found, w.data(), z.data(), n, isuppz.data());
    if (info != 0 || found < 2) {
        throw std::runtime_error("dense eigensolver failed");
    }
    *e0 = w[0];
    *e1 = w[1];
    v0->assign(z.begin(), z.begin() + n);
}

// Lanczos with full reorthogonalization. Vectors in `deflate` are
// projected out of the start vector and every Krylov step, which makes
// a second run converge to the lowest energy orthogonal to them.
double lanczos_lowest(const TfimSpec &spec, const std::vector<double> &diag,
                      const std::vector<std::vector<double>> &deflate, std::vector<double> *ground) {
    std::size_t dim = std::size_t{1} << spec.n_sites;
    std::vector<std::vector<double>> basis;
    std::vector<double> alphas, betas;

    auto project_out = [&](std::vector<double> &w) {
        for (const auto &d : deflate) {
            double dot = 0;
            for (std::size_t i = 0; i < dim; i++) {
                dot += d[i] * w[i];
            }
            for (std::size_t i = 0; i < dim; i++) {
                w[i] -= dot * d[i];
            }
        }
    };

    // The start seed shifts with the deflation count: a Krylov space
    // holds only one direction per eigenspace, so a deflated rerun from
    // the same start vector would have zero overlap with any degenerate
    // partner and silently miss it.
    std::mt19937_64 rng(0x52414E44u + static_cast<std::uint64_t>(deflate.size()));
    std::vector<double> v(dim);
    for (std::size_t i = 0; i < dim; i++) {
        v[i] = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
    }
    project_out(v);
    double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    if (norm == 0) {
        throw std::runtime_error("lanczos start vector vanished");
    }
    for (double &x : v) {
        x /= norm;
    }
    basis.push_back(v);

    std::vector<double> w(dim);
    double theta = 0;
    std::vector<double> ritz;
    for (int iter = 0; iter < kLanczosMaxIter; iter++) {
        apply_hamiltonian(spec, diag, basis.back(), w);
        project_out(w);
        double alpha = std::inner_product(w.begin(), w.end(), basis.back().begin(), 0.0);
        alphas.push_back(alpha);

        // Two full reorthogonalization passes keep the basis orthonormal
        // to machine precision.
        for (int pass = 0; pass < 2; pass++) {
            for (const auto &q : basis) {
                double dot = std::inner_product(w.begin(), w.end(), q.begin(), 0.0);
                for (std::size_t i = 0; i < dim; i++) {
                    w[i] -= dot * q[i];
                }
            }
        }
        double beta = std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));

        // Ritz values of the tridiagonal section.
        std::size_t m = alphas.size();
        std::vector<double> d = alphas;
        std::vector<double> e = betas;
        std::vector<double> zmat(m * m);
        lapack_int info = LAPACKE_dstev(LAPACK_COL_MAJOR, 'V', static_cast<lapack_int>(m), d.data(),
                                        e.data(), zmat.data(), static_cast<lapack_int>(m));
        if (info != 0) {
            throw std::runtime_error("tridiagonal eigensolver failed");
        }
        theta = d[0];
        ritz.assign(zmat.begin(), zmat.begin() + m);
        double resid = beta * std::fabs(ritz[m - 1]);
        if (resid <= kLanczosResidual || beta < 1e-13 || iter == kLanczosMaxIter - 1) {
            break;
        }
        betas.push_back(beta);
        for (double &x : w) {
            x /= beta;
        }
        basis.push_back(w);
    }

    ground->assign(dim, 0.0);
    for (std::size_t j = 0; j < basis.size() && j < ritz.size(); j++) {
        double c = ritz[j];
        for (std::size_t i = 0; i < dim; i++) {
            (*ground)[i] += c * basis[j][i];
        }
    }
    double gn = std::sqrt(std::inner_product(ground->begin(), ground->end(), ground->begin(), 0.0));
    for (double &x : *ground) {
        x /= gn;
    }
    return theta;
}

void fix_sign(std::vector<double> *v) {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < v->size(); i++) {
        if (std::fabs((*v)[i]) > std::fabs((*v)[arg])) {
            arg = i;
        }
    }
    if ((*v)[arg] < 0) {
        for (double &x : *v) {
            x = -x;
        }
    }
}

}  // namespace

std::pair<double, AmplitudeVector> tfim_ground_pair(const TfimSpec &spec) {
    check_spec(spec);
    std::vector<double> diag = zz_diagonal(spec);
    double e0 = 0;
    std::vector<double> v0;
    if (spec.n_sites <= kDenseSiteLimit) {
        double e1 = 0;
        dense_lowest_two(spec, diag, &e0, &e1, &v0);
        if (e1 - e0 < kDegeneracyGap) {
            throw std::runtime_error("degenerate ground state");
        }
    } else {
        e0 = lanczos_lowest(spec, diag, {}, &v0);
        std::vector<double> v1;
        double e1 = lanczos_lowest(spec, diag, {v0}, &v1);
        if (e1 - e0 < kDegeneracyGap) {
            throw std::runtime_error("degenerate ground state");
        }
    }
    if (ground_residual(spec, diag, e0, v0) > kGroundResidual) {
        throw numeric_assertion_error("eigensolver residual too large");
    }
    fix_sign(&v0);

    AmplitudeVector psi = normalize(v0, spec.n_sites, "tfim");
    return {e0, psi};
}

std::pair<double, AmplitudeVector> tfim_ground_pair_lanczos(const TfimSpec &spec) {
    check_spec(spec);
    std::vector<double> diag = zz_diagonal(spec);
    std::vector<double> v0;
    double e0 = lanczos_lowest(spec, diag, {}, &v0);
    std::vector<double> v1;
    double e1 = lanczos_lowest(spec, diag, {v0}, &v1);
    if (e1 - e0 < kDegeneracyGap) {
        throw std::runtime_error("degenerate ground state");
    }
    if (ground_residual(spec, diag, e0, v0) > kGroundResidual) {
        throw numeric_assertion_error("eigensolver residual too large");
    }
    fix_sign(&v0);
    AmplitudeVector psi = normalize(v0, spec.n_sites, "tfim");
    return {e0, psi};
}

AmplitudeVector tfim_ground_state(const TfimSpec &spec) {
    return tfim_ground_pair(spec).second;
}

AmplitudeVector synthetic_state(const SyntheticSpec &spec) {
    if (spec.dim < 2) {
        throw std::invalid_argument("dim must be at least 2");
    }
    if (spec.kind == DecayKind::geometric) {
        if (!(spec.rate > 0) || !(spec.rate < 1)) {
            throw std::invalid_argument("geometric rate must be in (0, 1)");
        }
    } else if (!(spec.rate > 0.5)) {
        throw std::invalid_argument("power-law rate must exceed 1/2");
    }

    std::vector<double> raw(spec.dim);
    std::mt19937_64 rng(spec.seed);
    for (std::size_t k = 0; k < spec.dim; k++) {
        double mag = spec.kind == DecayKind::geometric
                         ? std::pow(spec.rate, static_cast<double>(k))
                         : std::pow(static_cast<double>(k + 1), -spec.rate);
        bool negative = spec.seed == 0 ? (k % 2 == 1) : (rng() & 1) != 0;
        raw[k] = negative ? -mag : mag;
    }

    int n_qubits = 1;
    while ((std::size_t{1} << n_qubits) < spec.dim) {
        n_qubits++;
    }
    return normalize(raw, n_qubits, "synthetic");
}

AmplitudeVector load_state(const std::string &path, int n_qubits) {
    std::string text = read_text_file(path);
    std::vector<double> raw;

    nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_object() && doc.contains("values")) {
        raw = doc["values"].get<std::vector<double>>();
    } else {
        std::istringstream in(text);
        std::string token;
        while (in >> token) {
            std::size_t used = 0;
            double value = 0;
            try {
                value = std::stod(token, &used);
            } catch (const std::exception &) {
                throw std::runtime_error("cannot parse amplitude token: " + token);
            }
            if (used != token.size()) {
                throw std::runtime_error("cannot parse amplitude token: " + token);
            }
            raw.push_back(value);
        }
        if (raw.empty()) {
            throw std::runtime_error("no amplitudes found in file: " + path);
        }
    }
    return normalize(raw, n_qubits, "file:" + path);
}

}  // namespace randprep
