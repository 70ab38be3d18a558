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

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "randprep/amplitudes.hpp"
#include "randprep/generators.hpp"
#include "randprep/textio.hpp"
#include "test_support.hpp"

using namespace randprep;
using testsupport::close;
using testsupport::temp_path;

namespace {

// Independent application of the Hamiltonian used by the generator:
// diagonal ZZ bonds plus single-site bit flips, periodic chain.
std::vector<double> apply_tfim(const TfimSpec &spec, const std::vector<double> &x) {
    std::size_t dim = x.size();
    std::vector<double> y(dim, 0.0);
    for (std::size_t b = 0; b < dim; b++) {
        int bonds = 0;
        for (int i = 0; i < spec.n_sites; i++) {
            int s1 = (b >> i) & 1;
            int s2 = (b >> ((i + 1) % spec.n_sites)) & 1;
            bonds += (s1 == s2) ? 1 : -1;
        }
        y[b] += -spec.coupling_j * bonds * x[b];
        for (int i = 0; i < spec.n_sites; i++) {
            y[b] -= spec.field_h * x[b ^ (std::size_t{1} << i)];
        }
    }
    return y;
}

double eigen_residual(const TfimSpec &spec, double energy, const AmplitudeVector &psi) {
    std::vector<double> hv = apply_tfim(spec, psi.values);
    double resid_sq = 0;
    for (std::size_t i = 0; i < hv.size(); i++) {
        double d = hv[i] - energy * psi.values[i];
        resid_sq += d * d;
    }
    return std::sqrt(resid_sq);
}

std::size_t rotate_bits(std::size_t b, int n) {
    return ((b << 1) | (b >> (n - 1))) & ((std::size_t{1} << n) - 1);
}

}  // namespace

TEST_CASE("tfim ground energies match high-precision references") {
    // The 3-site critical chain has ground energy exactly -4.
    auto [e3, psi3] = tfim_ground_pair({3, 1.0, 1.0});
    CHECK(close(e3, -4.0, 1e-10));
    CHECK(eigen_residual({3, 1.0, 1.0}, e3, psi3) <= 1e-8);

    auto [e4, psi4] = tfim_ground_pair({4, 1.0, 1.0});
    CHECK(close(e4, -5.2262518595055045, 1e-9));

    auto [e6, psi6] = tfim_ground_pair({6, 1.0, 1.0});
    CHECK(close(e6, -7.727406610312543, 1e-9));

    auto [e8, psi8] = tfim_ground_pair({8, 1.0, 1.0});
    CHECK(close(e8, -10.251661790966029, 1e-9));
    CHECK(eigen_residual({8, 1.0, 1.0}, e8, psi8) <= 1e-8);
}

TEST_CASE("tfim ground states carry the lattice symmetries") {
    TfimSpec spec{6, 1.0, 1.0};
    AmplitudeVector psi = tfim_ground_state(spec);
    std::size_t dim = psi.dim();
    std::size_t mask = dim - 1;

    double max_translation = 0;
    double max_flip = 0;
    double min_value = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < dim; b++) {
        max_translation = std::max(
            max_translation, std::fabs(psi.values[b] - psi.values[rotate_bits(b, spec.n_sites)]));
        max_flip = std::max(max_flip, std::fabs(psi.values[b] - psi.values[~b & mask]));
        min_value = std::min(min_value, psi.values[b]);
    }
    CHECK(max_translation <= 1e-8);
    CHECK(max_flip <= 1e-8);
    // Ferromagnetic couplings give a strictly positive ground vector in
    // this gauge; the sign convention pins the global phase.
    CHECK(min_value > 0.0);
}

TEST_CASE("lanczos and dense paths agree") {
    TfimSpec spec{8, 1.0, 1.0};
    auto [e_dense, psi_dense] = tfim_ground_pair(spec);
    auto [e_lanczos, psi_lanczos] = tfim_ground_pair_lanczos(spec);
    CHECK(close(e_dense, e_lanczos, 1e-8));

    double overlap = 0;
    for (std::size_t i = 0; i < psi_dense.dim(); i++) {
        overlap += psi_dense.values[i] * psi_lanczos.values[i];
    }
    CHECK(overlap >= 1.0 - 1e-8);
    CHECK(eigen_residual(spec, e_lanczos, psi_lanczos) <= 1e-8);
}

TEST_CASE("zero field makes the ground state degenerate") {
    CHECK_THROWS_WITH_AS(tfim_ground_pair({3, 1.0, 0.0}), "degenerate ground state",
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(tfim_ground_pair({4, 1.0, 0.0}), "degenerate ground state",
                         std::runtime_error);
    // Same detection on the iterative path.
    CHECK_THROWS_WITH_AS(tfim_ground_pair_lanczos({10, 1.0, 0.0}), "degenerate ground state",
                         std::runtime_error);
}

TEST_CASE("tfim_ground_pair validates its parameters") {
    CHECK_THROWS_AS(tfim_ground_pair({2, 1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(tfim_ground_pair({15, 1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(tfim_ground_pair({5, std::numeric_limits<double>::quiet_NaN(), 1.0}),
                    std::invalid_argument);
}

TEST_CASE("synthetic geometric states have exact proportions") {
    AmplitudeVector psi = synthetic_state({DecayKind::geometric, 0.5, 4, 0});
    REQUIRE(psi.dim() == 4);
    CHECK(close(psi.values[1] / psi.values[0], -0.5, 1e-15));
    CHECK(close(psi.values[2] / psi.values[0], 0.25, 1e-15));
    CHECK(close(psi.values[3] / psi.values[0], -0.125, 1e-15));

    double norm_sq = 0;
    for (double v : psi.values) {
        norm_sq += v * v;
    }
    CHECK(close(norm_sq, 1.0, 1e-14));
    CHECK(psi.label == "synthetic");

    // Seed zero alternates signs deterministically.
    CHECK(psi.values[0] > 0);
    CHECK(psi.values[1] < 0);
    CHECK(psi.values[2] > 0);
}

TEST_CASE("synthetic power-law states follow the rank profile") {
    AmplitudeVector psi = synthetic_state({DecayKind::power_law, 2.0, 8, 0});
    for (std::size_t k = 0; k < 8; k++) {
        double expected = std::pow(static_cast<double>(k + 1), -2.0);
        CHECK(close(std::fabs(psi.values[k] / psi.values[0]), expected, 1e-14));
    }
}

TEST_CASE("synthetic states pad to the next register size") {
    AmplitudeVector psi = synthetic_state({DecayKind::geometric, 0.5, 6, 0});
    CHECK(psi.n_qubits == 3);
    CHECK(psi.dim() == 8);
    CHECK(psi.values[6] == 0.0);
    CHECK(psi.values[7] == 0.0);
}

TEST_CASE("synthetic sign seeds are reproducible") {
    SyntheticSpec spec{DecayKind::geometric, 0.8, 64, 12345};
    AmplitudeVector a = synthetic_state(spec);
    AmplitudeVector b = synthetic_state(spec);
    REQUIRE(a.dim() == b.dim());
    for (std::size_t i = 0; i < a.dim(); i++) {
        CHECK(a.values[i] == b.values[i]);
    }

    AmplitudeVector c = synthetic_state({DecayKind::geometric, 0.8, 64, 54321});
    bool any_sign_differs = false;
    for (std::size_t i = 0; i < a.dim(); i++) {
        if ((a.values[i] < 0) != (c.values[i] < 0)) {
            any_sign_differs = true;
        }
        CHECK(close(std::fabs(a.values[i]), std::fabs(c.values[i]), 1e-16));
    }
    CHECK(any_sign_differs);
}

TEST_CASE("synthetic_state rejects bad parameters") {
    CHECK_THROWS_AS(synthetic_state({DecayKind::geometric, 0.5, 1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(synthetic_state({DecayKind::geometric, 1.0, 16, 0}), std::invalid_argument);
    CHECK_THROWS_AS(synthetic_state({DecayKind::geometric, 0.0, 16, 0}), std::invalid_argument);
    CHECK_THROWS_AS(synthetic_state({DecayKind::power_law, 0.5, 16, 0}), std::invalid_argument);
}

TEST_CASE("load_state accepts state files and raw token lists") {
    AmplitudeVector psi = synthetic_state({DecayKind::geometric, 0.6, 8, 0});
    std::string json_path = temp_path("load.state");
    write_state_file(psi, json_path);
    AmplitudeVector from_json = load_state(json_path, 3);
    for (std::size_t i = 0; i < psi.dim(); i++) {
        CHECK(close(from_json.values[i], psi.values[i], 1e-15));
    }
    CHECK(from_json.label == "file:" + json_path);

    std::string raw_path = temp_path("load.txt");
    write_text_file(raw_path, "3.0  4.0\n");
    AmplitudeVector from_raw = load_state(raw_path, 1);
    CHECK(close(from_raw.values[0], 0.6, 1e-15));
    CHECK(close(from_raw.values[1], 0.8, 1e-15));
}

TEST_CASE("load_state rejects unparseable content") {
    std::string bad_path = temp_path("load_bad.txt");
    write_text_file(bad_path, "1.0 oops 2.0\n");
    CHECK_THROWS_AS(load_state(bad_path, 2), std::runtime_error);

    std::string empty_path = temp_path("load_empty.txt");
    write_text_file(empty_path, "\n");
    CHECK_THROWS_AS(load_state(empty_path, 2), std::runtime_error);

    std::string overflow_path = temp_path("load_overflow.txt");
    write_text_file(overflow_path, "1 2 3 4 5\n");
    CHECK_THROWS_WITH_AS(load_state(overflow_path, 2), "dimension overflow",
                         std::invalid_argument);
}
