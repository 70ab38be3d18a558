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

#include "randprep/ensemble.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "randprep/textio.hpp"

namespace randprep {

namespace {

// Normalized member state: gamma^-1 on the kept part, the amplified
// coefficient over gamma at index m, zero elsewhere on the tail.
AmplitudeVector materialize_member(const Partition &p, const AmplitudeVector &psi, std::size_t index_m,
                                   double amplified, double gamma) {
    AmplitudeVector state;
    state.n_qubits = psi.n_qubits;
    state.label = psi.label;
    state.values.assign(psi.values.size(), 0.0);
    double inv_gamma = 1.0 / gamma;
    for (std::size_t i : p.set_a) {
        state.values[i] = psi.values[i] * inv_gamma;
    }
    state.values[index_m] = amplified * inv_gamma;
    return state;
}

}  // namespace

AmplitudeVector Ensemble::member_state(std::size_t k) const {
    const EnsembleMember &m = members.at(k);
    if (!lazy) {
        return m.state;
    }
    return materialize_member(partition, target, m.index_m, m.amplified_coefficient, gamma);
}

Ensemble build_ensemble(const Partition &p, const AmplitudeVector &psi, std::size_t member_cap) {
    if (p.set_b.empty()) {
        throw std::invalid_argument("nothing to randomize");
    }
    if (p.set_a.empty()) {
        throw std::invalid_argument("empty kept set");
    }

    Ensemble e;
    e.partition = p;
    e.target = psi;
    e.gamma = std::sqrt(1.0 - p.eps * p.eps + p.ell1_tail * p.ell1_tail);
    e.lazy = p.set_b.size() > member_cap;

    double s = p.ell1_tail;
    e.members.reserve(p.set_b.size());
    for (std::size_t m : p.set_b) {
        EnsembleMember member;
        member.index_m = m;
        double alpha = psi.values[m];
        member.probability = std::fabs(alpha) / s;
        member.amplified_coefficient = std::copysign(s, alpha);
        if (!e.lazy) {
            member.state = materialize_member(p, psi, m, member.amplified_coefficient, e.gamma);
        }
        e.members.push_back(std::move(member));
    }
    return e;
}

double reconstruction_residual(const Ensemble &e, const AmplitudeVector &psi) {
    std::vector<double> acc(psi.values.size(), 0.0);
    for (std::size_t k = 0; k < e.size(); k++) {
        AmplitudeVector state = e.member_state(k);
        double scale = e.members[k].probability * e.gamma;
        for (std::size_t i = 0; i < acc.size(); i++) {
            acc[i] += scale * state.values[i];
        }
    }
    double resid_sq = 0;
    for (std::size_t i = 0; i < acc.size(); i++) {
        double d = acc[i] - psi.values[i];
        resid_sq += d * d;
    }
    return std::sqrt(resid_sq);
}

DensityRepr mixture_density(const Ensemble &e) {
    DensityRepr rho;
    rho.pairs.reserve(e.size());
    for (std::size_t k = 0; k < e.size(); k++) {
        rho.pairs.emplace_back(e.members[k].probability, e.member_state(k));
    }
    return rho;
}

void write_ensemble_summary(const Ensemble &e, const std::string &path) {
    std::ostringstream out;
    out << "{\n  \"gamma\": " << format_real(e.gamma) << ",\n  \"members\": [\n";
    for (std::size_t k = 0; k < e.size(); k++) {
        const EnsembleMember &m = e.members[k];
        out << "    {\"m\": " << m.index_m << ", \"p_m\": " << format_real(m.probability)
            << ", \"amplified_coefficient\": " << format_real(m.amplified_coefficient) << "}";
        out << (k + 1 < e.size() ? ",\n" : "\n");
    }
    out << "  ]\n}\n";
    write_text_file(path, out.str());
}

}  // namespace randprep
