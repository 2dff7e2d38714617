// perciso: percolation isoperimetry laboratory CLI.
//
// Subcommands: sample, solve, gradient, events, profile, experiment.
// Exit codes: 0 success, 2 usage/input error, 3 size-guard violation,
// 4 phi undefined (giant component too small), 1 internal error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "perciso/perciso.hpp"

namespace {

using namespace perciso;

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open for writing: " + path);
    out << content;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) std::cout << content;
    else write_text_file(out_path, content);
}

struct SolveInput {
    Configuration cfg;
    GiantComponent giant;
};

SolveInput load_solvable(const std::string& in_path) {
    Configuration cfg = read_config_file(in_path);
    GiantComponent giant = giant_component(cfg);
    if (giant.size < 2)
        throw phi_undefined_error("phi undefined: giant component has size " +
                                  std::to_string(giant.size));
    return {std::move(cfg), std::move(giant)};
}

int cmd_sample(int d, int n, double p, std::uint64_t seed, const std::string& out) {
    const TorusSpec spec(d, n);
    const Configuration cfg = sample_configuration(spec, p, seed);
    std::ostringstream os;
    write_config(os, cfg);
    emit(out, os.str());
    return 0;
}

int cmd_solve(const std::string& in, const std::string& mode_str, const std::string& out) {
    const SolveMode mode = solve_mode_from_string(mode_str);
    SolveInput si = load_solvable(in);
    const auto t0 = std::chrono::steady_clock::now();
    const CheegerResult res = solve_cheeger(si.cfg, si.giant, mode);
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    const TorusSpec& spec = si.cfg.spec();
    nlohmann::json j = result_record_json("solve", spec.d(), spec.n(), -1.0, 0, res,
                                          si.giant.size, nullptr, ms);
    j["p"] = nullptr;
    j["seed"] = nullptr;
    emit(out, j.dump() + "\n");
    return 0;
}

int cmd_gradient(const std::string& in, const std::string& mode_str, const std::string& out) {
    const SolveMode mode = solve_mode_from_string(mode_str);
    if (mode == SolveMode::heuristic)
        throw std::invalid_argument("gradient: mode must be brute or exact");
    SolveInput si = load_solvable(in);
    const ClusterGraph graph = build_cluster_graph(si.cfg, si.giant);
    const ExactRatio phi =
        (mode == SolveMode::brute ? cheeger_brute(graph) : cheeger_exact_phi(graph)).phi;
    const auto grads = edge_gradients(si.cfg, si.giant, phi, mode);
    std::ostringstream os;
    write_gradient_csv(os, grads);
    emit(out, os.str());
    return 0;
}

int cmd_events(const std::string& in, const std::string& constants_path,
               const std::string& mode_str, const std::string& out) {
    const SolveMode mode = solve_mode_from_string(mode_str);
    if (mode == SolveMode::heuristic)
        throw std::invalid_argument("events: mode must be brute or exact");
    const EventConstants k = constants_path.empty() ? EventConstants::defaults()
                                                    : EventConstants::from_file(constants_path);
    const Configuration cfg = read_config_file(in);
    const EventReport rep = check_events(cfg, k, mode);
    emit(out, event_report_json(rep).dump(2) + "\n");
    return 0;
}

int cmd_profile(const std::string& in, const std::string& eps_str, const std::string& out) {
    SolveInput si = load_solvable(in);
    double eps = 0.0;
    if (eps_str == "auto") eps = epsilon_n(si.cfg.spec());
    else {
        try {
            eps = std::stod(eps_str);
        } catch (const std::exception&) {
            throw std::invalid_argument("profile: --epsilon must be 'auto' or a real > 1");
        }
    }
    const IsoProfileResult res = iso_profile(si.cfg, si.giant, eps, SolveMode::exact);
    emit(out, iso_profile_json(res).dump(2) + "\n");
    return 0;
}

int cmd_experiment(const std::string& plan_path, const std::string& out_dir, int threads) {
    const ExperimentPlan plan = parse_plan_file(plan_path);
    std::filesystem::create_directories(out_dir);
    std::vector<SummaryStats> stats;
    for (const int n : plan.n_list) {
        const std::vector<SampleRecord> records = run_samples(plan, n, threads);
        std::ofstream jsonl(out_dir + "/records_n" + std::to_string(n) + ".jsonl");
        if (!jsonl)
            throw std::invalid_argument("cannot open records file in " + out_dir);
        for (const SampleRecord& rec : records)
            jsonl << sample_record_json(plan, rec).dump() << '\n';
        stats.push_back(summarize(plan, n, records));
        std::cerr << "n=" << n << " done: " << records.size() << " samples\n";
    }
    std::ofstream csv(out_dir + "/summary.csv");
    if (!csv) throw std::invalid_argument("cannot open summary.csv in " + out_dir);
    write_summary_csv(csv, plan, stats);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"perciso: isoperimetry of supercritical bond percolation on the torus"};
    app.require_subcommand(1);

    int d = 2, n = 0;
    double p = 0.5;
    std::uint64_t seed = 0;
    std::string in_path, out_path, mode = "exact", constants_path, eps_str = "auto";
    std::string plan_path, out_dir;
    int threads = 1;

    auto* s_sample = app.add_subcommand("sample", "sample a Bernoulli(p) bond configuration");
    s_sample->add_option("--d", d, "torus dimension")->required();
    s_sample->add_option("--n", n, "torus side length (>= 3)")->required();
    s_sample->add_option("--p", p, "open-edge probability")->required();
    s_sample->add_option("--seed", seed, "64-bit seed")->required();
    s_sample->add_option("--out", out_path, "output configuration file");

    auto* s_solve = app.add_subcommand("solve", "Cheeger constant of the giant component");
    s_solve->add_option("--in", in_path, "configuration file")->required();
    s_solve->add_option("--mode", mode, "brute|exact|heuristic");
    s_solve->add_option("--out", out_path, "result record (JSON line)");

    auto* s_grad = app.add_subcommand("gradient", "per-edge flip gradient of phi (CSV)");
    s_grad->add_option("--in", in_path, "configuration file")->required();
    s_grad->add_option("--mode", mode, "brute|exact");
    s_grad->add_option("--out", out_path, "output CSV");

    auto* s_events = app.add_subcommand("events", "evaluate H_n^1..H_n^5, G_n, H_n");
    s_events->add_option("--in", in_path, "configuration file")->required();
    s_events->add_option("--constants", constants_path, "constants file (key=value)");
    s_events->add_option("--mode", mode, "brute|exact");
    s_events->add_option("--out", out_path, "event report (JSON)");

    auto* s_profile = app.add_subcommand("profile", "isoperimetric profile I_epsilon");
    s_profile->add_option("--in", in_path, "configuration file")->required();
    s_profile->add_option("--epsilon", eps_str, "'auto' for epsilon(n), or a real > 1");
    s_profile->add_option("--out", out_path, "profile result (JSON)");

    auto* s_exp = app.add_subcommand("experiment", "run a Monte Carlo experiment plan");
    s_exp->add_option("--plan", plan_path, "plan file (key=value)")->required();
    s_exp->add_option("--out-dir", out_dir, "output directory")->required();
    s_exp->add_option("--threads", threads, "worker count (output-invariant)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "error: usage: " << e.what() << "\n";
        return 2;
    }

    try {
        if (s_sample->parsed()) return cmd_sample(d, n, p, seed, out_path);
        if (s_solve->parsed()) return cmd_solve(in_path, mode, out_path);
        if (s_grad->parsed()) return cmd_gradient(in_path, mode, out_path);
        if (s_events->parsed()) return cmd_events(in_path, constants_path, mode, out_path);
        if (s_profile->parsed()) return cmd_profile(in_path, eps_str, out_path);
        if (s_exp->parsed()) return cmd_experiment(plan_path, out_dir, threads);
    } catch (const guard_error& e) {
        std::cerr << "error: guard: " << e.what() << " (value=" << e.value() << ")\n";
        return 3;
    } catch (const phi_undefined_error& e) {
        std::cerr << "error: phi-undefined: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: usage: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
