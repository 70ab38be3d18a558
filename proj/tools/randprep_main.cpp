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

#include <cstddef>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "randprep/amplitudes.hpp"
#include "randprep/bounds.hpp"
#include "randprep/ensemble.hpp"
#include "randprep/errors.hpp"
#include "randprep/generators.hpp"
#include "randprep/metrics.hpp"
#include "randprep/sampler.hpp"
#include "randprep/sweep.hpp"
#include "randprep/textio.hpp"

namespace {

using namespace randprep;

// Prints to stdout when no output path was given.
void emit(const std::string &text, const std::string &out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        write_text_file(out_path, text);
    }
}

// States written by `gen` carry their qubit count; raw amplitude lists
// need --n to fix the register size.
AmplitudeVector load_input_state(const std::string &path, int n_qubits) {
    if (n_qubits > 0) {
        return load_state(path, n_qubits);
    }
    return read_state_file(path);
}

DecayKind parse_kind(const std::string &name) {
    if (name == "geometric") {
        return DecayKind::geometric;
    }
    if (name == "power_law") {
        return DecayKind::power_law;
    }
    throw std::invalid_argument("unknown decay kind: " + name);
}

// Grid spec format: t_min:t_max:count.
std::vector<double> parse_grid(const std::string &spec) {
    std::istringstream in(spec);
    std::string a;
    std::string b;
    std::string c;
    if (!std::getline(in, a, ':') || !std::getline(in, b, ':') || !std::getline(in, c) ||
        a.empty() || b.empty() || c.empty()) {
        throw std::invalid_argument("threshold grid must be t_min:t_max:count");
    }
    double t_min = 0;
    double t_max = 0;
    unsigned long count = 0;
    try {
        t_min = std::stod(a);
        t_max = std::stod(b);
        count = std::stoul(c);
    } catch (const std::exception &) {
        throw std::invalid_argument("threshold grid must be t_min:t_max:count");
    }
    return geometric_grid(t_min, t_max, count);
}

std::string analysis_report_json(double threshold, const Partition &p, double gamma,
                                 const MixingBounds &mb, double dist_det, double dist_rand) {
    std::ostringstream out;
    out << "{\n"
        << "  \"threshold\": " << format_real(threshold) << ",\n"
        << "  \"k_kept\": " << p.k_kept << ",\n"
        << "  \"eps\": " << format_real(p.eps) << ",\n"
        << "  \"S\": " << format_real(p.ell1_tail) << ",\n"
        << "  \"c\": " << format_real(p.c_ratio) << ",\n"
        << "  \"gamma\": " << format_real(gamma) << ",\n"
        << "  \"a\": " << format_real(mb.a_max) << ",\n"
        << "  \"b\": " << format_real(mb.b_bias) << ",\n"
        << "  \"lemma_bound\": " << format_real(mb.lemma_bound) << ",\n"
        << "  \"theory_curve\": " << format_real(mb.theory_curve) << ",\n"
        << "  \"appendix_a_bound\": " << format_real(mb.appendix_a_bound) << ",\n"
        << "  \"dist_det\": " << format_real(dist_det) << ",\n"
        << "  \"dist_rand\": " << format_real(dist_rand) << "\n"
        << "}\n";
    return out.str();
}

std::string plan_report_json(const DecayModel &model, const ResourcePlan &plan) {
    std::ostringstream out;
    out << "{\n"
        << "  \"kind\": \"" << (model.kind == DecayKind::geometric ? "geometric" : "power_law")
        << "\",\n"
        << "  \"rate\": " << format_real(model.rate) << ",\n"
        << "  \"fit_residual\": " << format_real(model.fit_residual) << ",\n"
        << "  \"tau\": " << format_real(plan.tau) << ",\n"
        << "  \"k_det\": " << plan.k_det << ",\n"
        << "  \"k_rand\": " << plan.k_rand << ",\n"
        << "  \"ratio\": " << format_real(plan.ratio) << ",\n"
        << "  \"t_count_det\": " << format_real(plan.t_count_det) << ",\n"
        << "  \"t_count_rand\": " << format_real(plan.t_count_rand) << "\n"
        << "}\n";
    return out.str();
}

void run_analyze(const AmplitudeVector &psi, double threshold, const std::string &out_path) {
    Partition p = partition(psi, threshold);
    if (p.set_b.empty()) {
        // Nothing is discarded: both reconstructions equal the target.
        emit(analysis_report_json(threshold, p, 1.0, MixingBounds{}, 0.0, 0.0), out_path);
        return;
    }
    double dist_det = truncation_error(p, psi);
    Ensemble e = build_ensemble(p, psi);
    MixingBounds mb = compute_mixing_bounds(e, psi);
    double dist_rand = mixed_trace_distance(mixture_density(e), psi);
    if (dist_rand > mb.lemma_bound + 1e-12) {
        throw numeric_assertion_error("randomized distance exceeds the mixing bound");
    }
    emit(analysis_report_json(threshold, p, e.gamma, mb, dist_det, dist_rand), out_path);
}

void run_sweep_cmd(const AmplitudeVector &psi, const std::string &grid_spec,
                   const std::string &out_path, int threads) {
    std::vector<double> grid = parse_grid(grid_spec);
    if (threads <= 0) {
        threads = thread_cap_from_env();
    }
    std::vector<SweepRow> rows = run_sweep(psi, grid, threads);
    verify_sweep_rows(rows);
    std::string csv = sweep_csv(rows);
    // Round-trip the serialized table so the emitted artifact itself is
    // what gets re-verified.
    verify_sweep_rows(parse_sweep_csv(csv));
    emit(csv, out_path);
}

void run_sample(const AmplitudeVector &psi, double threshold, std::size_t shots,
                std::uint64_t seed, const std::string &obs_path, const std::string &out_path) {
    Partition p = partition(psi, threshold);
    Ensemble e = build_ensemble(p, psi);
    Observable obs = obs_path.empty()
                         ? make_observable(1, Eigen::MatrixXd::Identity(2, 2))
                         : load_observable(obs_path);
    SampleRun run = estimate_observable(e, obs, shots, seed);
    emit(run_report_json(run, exact_mixture_value(e, obs)), out_path);
}

void run_resources(const std::string &state_path, int n_qubits, const std::string &kind_name,
                   double rate, double tau, std::size_t max_rank, double gates_per_bit,
                   const std::string &out_path) {
    DecayModel model;
    if (!kind_name.empty()) {
        model.kind = parse_kind(kind_name);
        model.rate = rate;
        model.prefactor = 1.0;
        model.fit_residual = 0.0;
    } else if (!state_path.empty()) {
        model = fit_decay(load_input_state(state_path, n_qubits));
    } else {
        throw std::invalid_argument("resources needs --state or --kind/--rate");
    }
    if (max_rank == 0) {
        max_rank = std::size_t{1} << 20;
        if (!state_path.empty()) {
            max_rank = load_input_state(state_path, n_qubits).dim();
        }
    }
    ResourcePlan plan = resource_plan(model, tau, max_rank, gates_per_bit);
    emit(plan_report_json(model, plan), out_path);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"randomized truncated state preparation toolkit"};
    app.require_subcommand(1);

    // gen
    CLI::App *gen = app.add_subcommand("gen", "generate a state file");
    gen->require_subcommand(1);

    CLI::App *gen_tfim = gen->add_subcommand("tfim", "transverse-field Ising ground state");
    // Frees -h so the field-strength option can use that letter.
    gen_tfim->set_help_flag("--help", "print help");
    int tfim_n = 0;
    double tfim_j = 1.0;
    double tfim_h = 1.0;
    std::string tfim_out;
    gen_tfim->add_option("--n", tfim_n, "site count (3..14)")->required();
    gen_tfim->add_option("--j", tfim_j, "coupling strength");
    gen_tfim->add_option("--h", tfim_h, "transverse field");
    gen_tfim->add_option("-o,--output", tfim_out, "state file path (stdout when omitted)");
    gen_tfim->callback([&]() {
        AmplitudeVector psi = tfim_ground_state({tfim_n, tfim_j, tfim_h});
        if (tfim_out.empty()) {
            std::cout << state_file_json(psi);
        } else {
            write_state_file(psi, tfim_out);
            std::cout << "wrote " << tfim_out << " (" << psi.dim() << " amplitudes)\n";
        }
    });

    CLI::App *gen_syn = gen->add_subcommand("synthetic", "synthetic decay-profile state");
    std::string syn_kind;
    double syn_rate = 0.5;
    std::size_t syn_dim = 2;
    std::uint64_t syn_seed = 0;
    std::string syn_out;
    gen_syn->add_option("--kind", syn_kind, "geometric or power_law")
        ->required()
        ->check(CLI::IsMember({"geometric", "power_law"}));
    gen_syn->add_option("--rate", syn_rate, "decay rate")->required();
    gen_syn->add_option("--dim", syn_dim, "amplitude count")->required();
    gen_syn->add_option("--seed", syn_seed, "sign-pattern seed (0 = alternating)");
    gen_syn->add_option("-o,--output", syn_out, "state file path (stdout when omitted)");
    gen_syn->callback([&]() {
        AmplitudeVector psi = synthetic_state({parse_kind(syn_kind), syn_rate, syn_dim, syn_seed});
        if (syn_out.empty()) {
            std::cout << state_file_json(psi);
        } else {
            write_state_file(psi, syn_out);
            std::cout << "wrote " << syn_out << " (" << psi.dim() << " amplitudes)\n";
        }
    });

    // analyze
    CLI::App *analyze = app.add_subcommand("analyze", "bounds report at one threshold");
    std::string an_state;
    int an_n = 0;
    double an_threshold = 0;
    std::string an_out;
    analyze->add_option("--state", an_state, "state file")->required();
    analyze->add_option("--n", an_n, "qubit count for raw amplitude lists");
    analyze->add_option("--threshold", an_threshold, "magnitude cutoff")->required();
    analyze->add_option("-o,--output", an_out, "report path (stdout when omitted)");
    analyze->callback(
        [&]() { run_analyze(load_input_state(an_state, an_n), an_threshold, an_out); });

    // sweep
    CLI::App *sweep = app.add_subcommand("sweep", "threshold sweep CSV");
    std::string sw_state;
    int sw_n = 0;
    std::string sw_grid;
    std::string sw_out;
    int sw_threads = 0;
    sweep->add_option("--state", sw_state, "state file")->required();
    sweep->add_option("--n", sw_n, "qubit count for raw amplitude lists");
    sweep->add_option("--thresholds", sw_grid, "geometric grid t_min:t_max:count")->required();
    sweep->add_option("-o,--output", sw_out, "CSV path (stdout when omitted)");
    sweep->add_option("--threads", sw_threads, "worker cap (default RANDPREP_THREADS)");
    sweep->callback(
        [&]() { run_sweep_cmd(load_input_state(sw_state, sw_n), sw_grid, sw_out, sw_threads); });

    // sample
    CLI::App *sample = app.add_subcommand("sample", "seeded member sampling");
    std::string sa_state;
    int sa_n = 0;
    double sa_threshold = 0;
    std::size_t sa_shots = 0;
    std::uint64_t sa_seed = 0;
    std::string sa_obs;
    std::string sa_out;
    sample->add_option("--state", sa_state, "state file")->required();
    sample->add_option("--n", sa_n, "qubit count for raw amplitude lists");
    sample->add_option("--threshold", sa_threshold, "magnitude cutoff")->required();
    sample->add_option("--shots", sa_shots, "draw count")->required();
    sample->add_option("--seed", sa_seed, "generator seed")->required();
    sample->add_option("--observable", sa_obs, "observable file (identity when omitted)");
    sample->add_option("-o,--output", sa_out, "report path (stdout when omitted)");
    sample->callback([&]() {
        run_sample(load_input_state(sa_state, sa_n), sa_threshold, sa_shots, sa_seed, sa_obs,
                   sa_out);
    });

    // resources
    CLI::App *resources = app.add_subcommand("resources", "rank and T-count plan");
    std::string re_state;
    int re_n = 0;
    std::string re_kind;
    double re_rate = 0;
    double re_tau = 0;
    std::size_t re_max_rank = 0;
    double re_gpb = 3.0;
    std::string re_out;
    resources->add_option("--state", re_state, "state file to fit");
    resources->add_option("--n", re_n, "qubit count for raw amplitude lists");
    resources->add_option("--kind", re_kind, "decay kind override")
        ->check(CLI::IsMember({"geometric", "power_law"}));
    resources->add_option("--rate", re_rate, "decay rate override");
    resources->add_option("--tau", re_tau, "target trace-distance error")->required();
    resources->add_option("--max-rank", re_max_rank, "largest kept count to consider");
    resources->add_option("--gates-per-bit", re_gpb, "rotation cost per accuracy bit");
    resources->add_option("-o,--output", re_out, "report path (stdout when omitted)");
    resources->callback([&]() {
        run_resources(re_state, re_n, re_kind, re_rate, re_tau, re_max_rank, re_gpb, re_out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 1;
    } catch (const numeric_assertion_error &e) {
        std::cerr << "assertion failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
