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

#include "randprep/bounds.hpp"
#include "randprep/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "randprep/textio.hpp"

namespace randprep {

namespace {

// Partial-summation cutoff for zeta-type tails; the integral correction
// below this point keeps the remainder under 1e-12 for every s > 1.
constexpr std::size_t kSeriesCutoff = 10000;

// Tail sum_{k > start} k^-s via Euler-Maclaurin at a = start + 1:
//   a^(1-s)/(s-1) + a^-s/2 + s a^(-s-1)/12 - s(s+1)(s+2) a^(-s-3)/720.
// The next correction is O(a^(-s-5)), negligible at a >= 10001.
double power_tail_correction(std::size_t start, double s) {
    double a = static_cast<double>(start) + 1.0;
    double integral = std::pow(a, 1.0 - s) / (s - 1.0);
    double half = 0.5 * std::pow(a, -s);
    double second = s * std::pow(a, -s - 1.0) / 12.0;
    double fourth = s * (s + 1.0) * (s + 2.0) * std::pow(a, -s - 3.0) / 720.0;
    return integral + half + second - fourth;
}

// sum_{k > K} k^-s for s > 1.
double power_tail(std::size_t k, double s) {
    std::size_t cutoff = std::max(k, kSeriesCutoff);
    double total = 0;
    for (std::size_t i = cutoff; i > k; i--) {
        total += std::pow(static_cast<double>(i), -s);
    }
    return total + power_tail_correction(cutoff, s);
}

double rotation_cost(double magnitude, double gates_per_bit) {
    if (!(magnitude > 0) || magnitude >= 1) {
        return 0;
    }
    return std::max(0.0, gates_per_bit * std::log2(1.0 / magnitude));
}

struct LineFit {
    double slope = 0;
    double intercept = 0;
    double rms_residual = 0;
};

LineFit least_squares(const std::vector<double> &x, const std::vector<double> &y) {
    double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); i++) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LineFit fit;
    double denom = n * sxx - sx * sx;
    fit.slope = denom == 0 ? 0 : (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); i++) {
        double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / n);
    return fit;
}

// Smallest K in [1, max_rank] with eps2(K) <= target, assuming eps2 is
// nonincreasing in K.
std::size_t invert_monotone(const std::function<double(std::size_t)> &eps2, double target,
                            std::size_t max_rank) {
    if (eps2(max_rank) > target) {
        throw std::invalid_argument("target too strict");
    }
    std::size_t lo = 1, hi = max_rank;
    if (eps2(lo) <= target) {
        return lo;
    }
    while (lo + 1 < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (eps2(mid) <= target) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

}  // namespace

MixingBounds compute_mixing_bounds(const Ensemble &e, const AmplitudeVector &psi) {
    std::size_t dim = psi.values.size();
    std::vector<double> mean(dim, 0.0);
    double a_sq_max = 0;
    for (std::size_t k = 0; k < e.size(); k++) {
        AmplitudeVector state = e.member_state(k);
        double p = e.members[k].probability;
        double dev_sq = 0;
        for (std::size_t i = 0; i < dim; i++) {
            double d = state.values[i] - psi.values[i];
            dev_sq += d * d;
            mean[i] += p * state.values[i];
        }
        a_sq_max = std::max(a_sq_max, dev_sq);
    }
    double bias_sq = 0;
    for (std::size_t i = 0; i < dim; i++) {
        double d = mean[i] - psi.values[i];
        bias_sq += d * d;
    }

    MixingBounds mb;
    mb.a_max = std::sqrt(a_sq_max);
    mb.b_bias = std::sqrt(bias_sq);
    double closed_form = std::fabs(1.0 / e.gamma - 1.0);
    if (std::fabs(mb.b_bias - closed_form) > 1e-12) {
        throw numeric_assertion_error("bias norm disagrees with the closed form");
    }
    mb.lemma_bound = mb.a_max * mb.a_max + 2.0 * mb.b_bias;
    double c = e.partition.c_ratio;
    double eps = e.partition.eps;
    mb.theory_curve = ((c + 2.0) * (c + 2.0) + c / 2.0) * eps * eps;
    mb.appendix_a_bound = (c + 2.0) * eps;
    return mb;
}

double geometric_constant(double r) {
    if (!(r > 0) || !(r < 1)) {
        throw std::invalid_argument("geometric rate must be in (0, 1)");
    }
    return std::sqrt((1.0 + r) / (1.0 - r));
}

double zeta(double s) {
    if (!(s > 1)) {
        throw std::invalid_argument("zeta requires s > 1");
    }
    double total = 0;
    for (std::size_t k = kSeriesCutoff; k >= 1; k--) {
        total += std::pow(static_cast<double>(k), -s);
    }
    return total + power_tail_correction(kSeriesCutoff, s);
}

double power_law_constant(double r) {
    if (!(r > 1)) {
        throw std::invalid_argument("l1 condition diverges");
    }
    return zeta(r) / std::sqrt(zeta(2.0 * r));
}

DecayModel fit_decay(const AmplitudeVector &psi) {
    std::vector<double> mags;
    for (double v : psi.values) {
        if (v != 0) {
            mags.push_back(std::fabs(v));
        }
    }
    if (mags.size() < 8) {
        throw std::invalid_argument("insufficient data");
    }
    std::sort(mags.begin(), mags.end(), std::greater<double>());

    std::size_t start = mags.size() / 10;  // skip the head, fit the tail
    std::vector<double> x_geo, x_pow, y;
    for (std::size_t i = start; i < mags.size(); i++) {
        double rank = static_cast<double>(i + 1);
        x_geo.push_back(rank - 1.0);
        x_pow.push_back(std::log(rank));
        y.push_back(std::log(mags[i]));
    }
    LineFit geo = least_squares(x_geo, y);
    LineFit pow_fit = least_squares(x_pow, y);

    DecayModel model;
    if (geo.rms_residual <= pow_fit.rms_residual) {
        model.kind = DecayKind::geometric;
        model.rate = std::exp(geo.slope);
        model.prefactor = std::exp(geo.intercept);
        model.fit_residual = geo.rms_residual;
    } else {
        model.kind = DecayKind::power_law;
        model.rate = -pow_fit.slope;
        model.prefactor = std::exp(pow_fit.intercept);
        model.fit_residual = pow_fit.rms_residual;
    }
    return model;
}

ResourcePlan resource_plan(const DecayModel &model, double tau, std::size_t max_rank,
                           double gates_per_bit) {
    if (!(tau > 0) || !(tau < 1)) {
        throw std::invalid_argument("tau must be in (0, 1)");
    }
    if (max_rank < 1) {
        throw std::invalid_argument("max_rank must be at least 1");
    }

    // eps(K)^2 of the normalized infinite profile, and the normalized
    // magnitude of rank k.
    std::function<double(std::size_t)> eps2;
    std::function<double(std::size_t)> magnitude;
    std::function<double(std::size_t)> ell1_tail;
    if (model.kind == DecayKind::geometric) {
        double r = model.rate;
        if (!(r > 0) || !(r < 1)) {
            throw std::invalid_argument("geometric rate must be in (0, 1)");
        }
        double c0 = std::sqrt(1.0 - r * r);
        eps2 = [r](std::size_t k) { return std::pow(r, 2.0 * static_cast<double>(k)); };
        magnitude = [r, c0](std::size_t k) { return c0 * std::pow(r, static_cast<double>(k) - 1.0); };
        ell1_tail = [r, c0](std::size_t k) { return c0 * std::pow(r, static_cast<double>(k)) / (1.0 - r); };
    } else {
        double r = model.rate;
        if (!(r > 0.5)) {
            throw std::invalid_argument("power-law rate must exceed 1/2");
        }
        double total = zeta(2.0 * r);
        double inv_l2 = 1.0 / std::sqrt(total);
        eps2 = [r, total](std::size_t k) { return power_tail(k, 2.0 * r) / total; };
        magnitude = [r, inv_l2](std::size_t k) {
            return inv_l2 * std::pow(static_cast<double>(k), -r);
        };
        // The l1 tail diverges at r <= 1; the amplified rotation then
        // needs no synthesis precision and costs nothing.
        if (r > 1) {
            ell1_tail = [r, inv_l2](std::size_t k) { return inv_l2 * power_tail(k, r); };
        } else {
            ell1_tail = [](std::size_t) { return std::numeric_limits<double>::infinity(); };
        }
    }

    ResourcePlan plan;
    plan.tau = tau;
    plan.k_det = invert_monotone(eps2, tau * tau, max_rank);
    plan.k_rand = invert_monotone(eps2, tau, max_rank);
    plan.ratio = static_cast<double>(plan.k_det) / static_cast<double>(plan.k_rand);

    for (std::size_t k = 1; k <= plan.k_det; k++) {
        plan.t_count_det += rotation_cost(magnitude(k), gates_per_bit);
    }
    for (std::size_t k = 1; k <= plan.k_rand; k++) {
        plan.t_count_rand += rotation_cost(magnitude(k), gates_per_bit);
    }
    plan.t_count_rand += rotation_cost(ell1_tail(plan.k_rand), gates_per_bit);
    return plan;
}

double t_count_estimate(const Partition &p, const AmplitudeVector &psi, Scheme scheme,
                        double gates_per_bit) {
    double total = 0;
    for (std::size_t i : p.set_a) {
        total += rotation_cost(std::fabs(psi.values[i]), gates_per_bit);
    }
    if (scheme == Scheme::randomized && !p.set_b.empty()) {
        total += rotation_cost(p.ell1_tail, gates_per_bit);
    }
    return total;
}

std::size_t kept_count_for_error(const AmplitudeVector &psi, double tau, Scheme scheme) {
    if (!(tau > 0) || !(tau < 1)) {
        throw std::invalid_argument("tau must be in (0, 1)");
    }
    std::vector<double> mags;
    for (double v : psi.values) {
        if (v != 0) {
            mags.push_back(std::fabs(v));
        }
    }
    std::sort(mags.begin(), mags.end(), std::greater<double>());

    double target = scheme == Scheme::deterministic ? tau * tau : tau;
    // Backward suffix accumulation keeps eps(K)^2 cancellation-free.
    double suffix = 0;
    std::size_t k = mags.size();
    while (k > 1 && suffix + mags[k - 1] * mags[k - 1] <= target) {
        suffix += mags[k - 1] * mags[k - 1];
        k--;
    }
    return k;
}

std::string bounds_report_json(const Partition &p, double gamma, const MixingBounds &mb) {
    std::ostringstream out;
    out << "{\n"
        << "  \"eps\": " << format_real(p.eps) << ",\n"
        << "  \"S\": " << format_real(p.ell1_tail) << ",\n"
        << "  \"c\": " << format_real(p.c_ratio) << ",\n"
        << "  \"gamma\": " << format_real(gamma) << ",\n"
        << "  \"a\": " << format_real(mb.a_max) << ",\n"
        << "  \"b\": " << format_real(mb.b_bias) << ",\n"
        << "  \"lemma_bound\": " << format_real(mb.lemma_bound) << ",\n"
        << "  \"theory_curve\": " << format_real(mb.theory_curve) << ",\n"
        << "  \"appendix_a_bound\": " << format_real(mb.appendix_a_bound) << "\n"
        << "}\n";
    return out.str();
}

}  // namespace randprep
