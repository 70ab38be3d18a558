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

#include "randprep/amplitudes.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "randprep/textio.hpp"

namespace randprep {

AmplitudeVector normalize(const std::vector<double> &raw, int n_qubits, const std::string &label) {
    if (n_qubits < 1 || n_qubits > 30) {
        throw std::invalid_argument("n_qubits must be in [1, 30]");
    }
    std::size_t dim = std::size_t{1} << n_qubits;
    if (raw.size() > dim) {
        throw std::invalid_argument("dimension overflow");
    }
    double norm_sq = 0;
    for (double v : raw) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("invalid amplitude");
        }
        norm_sq += v * v;
    }
    if (norm_sq == 0) {
        throw std::invalid_argument("zero vector");
    }

    AmplitudeVector psi;
    psi.n_qubits = n_qubits;
    psi.label = label;
    psi.values.assign(dim, 0.0);
    double inv_norm = 1.0 / std::sqrt(norm_sq);
    for (std::size_t i = 0; i < raw.size(); i++) {
        psi.values[i] = raw[i] * inv_norm;
    }
    return psi;
}

Partition partition(const AmplitudeVector &psi, double t) {
    if (!(t > 0)) {
        throw std::invalid_argument("threshold must be positive");
    }
    Partition p;
    p.threshold = t;
    double eps_sq = 0;
    double ell1 = 0;
    for (std::size_t i = 0; i < psi.values.size(); i++) {
        double mag = std::fabs(psi.values[i]);
        if (mag >= t) {
            p.set_a.push_back(i);
        } else if (mag > 0) {
            p.set_b.push_back(i);
            eps_sq += mag * mag;
            ell1 += mag;
        }
    }
    if (p.set_a.empty()) {
        throw std::invalid_argument("empty kept set");
    }
    p.eps = std::sqrt(eps_sq);
    p.ell1_tail = ell1;
    p.c_ratio = p.set_b.empty() ? 0.0 : ell1 / p.eps;
    p.k_kept = p.set_a.size();
    return p;
}

double cauchy_schwarz_check(const Partition &p) {
    if (p.set_b.empty()) {
        throw std::invalid_argument("empty tail");
    }
    return std::sqrt(static_cast<double>(p.set_b.size())) * p.eps - p.ell1_tail;
}

std::string state_file_json(const AmplitudeVector &psi) {
    std::ostringstream out;
    out << "{\n  \"n_qubits\": " << psi.n_qubits << ",\n  \"values\": [";
    for (std::size_t i = 0; i < psi.values.size(); i++) {
        if (i % 4 == 0) {
            out << "\n    ";
        }
        out << format_real(psi.values[i]);
        if (i + 1 < psi.values.size()) {
            out << ", ";
        }
    }
    out << "\n  ],\n  \"label\": " << nlohmann::json(psi.label).dump() << "\n}\n";
    return out.str();
}

void write_state_file(const AmplitudeVector &psi, const std::string &path) {
    write_text_file(path, state_file_json(psi));
}

AmplitudeVector read_state_file(const std::string &path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::parse_error &e) {
        throw std::runtime_error("state file parse error: " + std::string(e.what()));
    }
    if (!doc.is_object() || !doc.contains("n_qubits") || !doc.contains("values") || !doc.contains("label")) {
        throw std::runtime_error("state file missing required fields (n_qubits, values, label)");
    }
    int n_qubits = doc["n_qubits"].get<int>();
    std::vector<double> raw = doc["values"].get<std::vector<double>>();
    std::string label = doc["label"].get<std::string>();

    AmplitudeVector psi = normalize(raw, n_qubits, label);
    // Keep already-normalized inputs bit-identical so that write/read
    // round trips are exact; the scale factor would otherwise perturb
    // the last bit.
    double norm_sq = 0;
    for (double v : raw) {
        norm_sq += v * v;
    }
    if (std::fabs(norm_sq - 1.0) <= 1e-12) {
        for (std::size_t i = 0; i < raw.size(); i++) {
            psi.values[i] = raw[i];
        }
    }
    return psi;
}

}  // namespace randprep
