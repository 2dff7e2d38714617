#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "perciso/events.hpp"

namespace perciso {

struct ExperimentPlan {
    int d = 2;
    std::vector<int> n_list;
    double p = 0.0;
    int samples = 0;
    std::uint64_t master_seed = 0;
    EventConstants constants = EventConstants::defaults();
    SolveMode solver_mode = SolveMode::exact;
    bool record_gradients = false;

    void validate() const {
        if (d < 1) throw std::invalid_argument("plan: d must be >= 1");
        if (n_list.empty()) throw std::invalid_argument("plan: n_list must be nonempty");
        for (const int n : n_list)
            if (n < 3) throw std::invalid_argument("plan: every n must be >= 3");
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("plan: p must be in [0,1]");
        if (samples < 2) throw std::invalid_argument("plan: samples must be >= 2");
        if (record_gradients && solver_mode == SolveMode::heuristic)
            throw std::invalid_argument("plan: gradient recording needs an optimal solver mode");
    }

    /// Pre-derived per-sample seed: a per-n stream keyed off the master seed,
    /// indexed by sample, so results never depend on worker count or order.
    [[nodiscard]] std::uint64_t sample_seed(int n, int index) const noexcept {
        const std::uint64_t sub = splitmix_at(master_seed, static_cast<std::uint64_t>(n));
        return splitmix_at(sub, static_cast<std::uint64_t>(index));
    }
};

struct GradientRecord {
    EdgeId edge = -1;
    FlipCase fcase = FlipCase::Case1;
    bool defined = false;
    ExactRatio value;  // phi(w) - phi(w^e)
};

struct SampleRecord {
    int n = 0;
    int sample_index = -1;
    std::uint64_t seed = 0;
    std::int64_t giant_size = 0;
    bool censored = true;  // phi undefined (|C| < 2)
    ExactRatio phi;
    std::int64_t max_minimizer_size = 0;
    std::int64_t witness_size = 0;
    SolveMode method = SolveMode::exact;
    bool optimal = false;
    bool events_computed = false;
    EventReport events;
    bool gradients_recorded = false;
    std::vector<GradientRecord> gradients;
    double timing_ms = 0.0;
};

/// Per-edge discrete gradient of phi: value phi(w) - phi(w^e), exact, with
/// the flip-case label. Edges not touching C that leave the giant unchanged
/// are an identical instance (gradient 0, no solve). Enforces |grad| <= 4d.
[[nodiscard]] inline std::vector<GradientRecord> edge_gradients(
    const Configuration& cfg, const GiantComponent& giant, const ExactRatio& phi,
    SolveMode mode, const ExactOptions& opt = {}) {
    if (mode == SolveMode::heuristic)
        throw std::invalid_argument("edge_gradients: needs an optimal solver mode");
    const TorusSpec& spec = cfg.spec();
    std::vector<GradientRecord> out;
    out.reserve(static_cast<std::size_t>(spec.edge_count()));
    const std::int64_t four_d = 4LL * spec.d();
    for (EdgeId e = 0; e < spec.edge_count(); ++e) {
        GradientRecord gr;
        gr.edge = e;
        const auto ends = spec.edge_endpoints(e);
        const bool x_in = giant.contains(ends.from);
        const bool y_in = giant.contains(ends.to);
        const bool open = cfg.open(e);
        const Configuration flipped = cfg.flipped(e);
        const GiantComponent after = giant_component(flipped);

        if (!x_in && !y_in) {
            gr.fcase = open ? FlipCase::Case2 : FlipCase::Case1;
        } else if (x_in && y_in) {
            if (!open) {
                gr.fcase = FlipCase::Case3;
            } else {
                bool lost = false;
                if (after.vertices != giant.vertices) {
                    for (const VertexId v : giant.vertices)
                        if (!after.contains(v)) { lost = true; break; }
                }
                gr.fcase = lost ? FlipCase::Case4b : FlipCase::Case4a;
            }
        } else {
            if (open)
                throw std::logic_error("edge_gradients: open edge half inside the giant");
            gr.fcase = FlipCase::Case5;
        }

        if (!x_in && !y_in && after.vertices == giant.vertices) {
            // identical instance: C and its open edges untouched
            gr.defined = true;
            gr.value = ExactRatio(0, 1);
        } else if (after.size < 2) {
            gr.defined = false;
        } else {
            const ClusterGraph g2 = build_cluster_graph(flipped, after);
            const ExactRatio phi_e = mode == SolveMode::brute
                                         ? cheeger_brute(g2).phi
                                         : cheeger_exact_phi(g2, opt).phi;
            gr.defined = true;
            gr.value = phi - phi_e;
            const ExactRatio mag = gr.value.abs();
            if (static_cast<__int128>(mag.num) > static_cast<__int128>(four_d) * mag.den)
                throw std::logic_error("gradient bound violated: |grad phi| > 4d");
        }
        out.push_back(std::move(gr));
    }
    return out;
}

namespace detail {

inline SampleRecord compute_sample(const ExperimentPlan& plan, int n, int index,
                                   const ExactOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    SampleRecord rec;
    rec.n = n;
    rec.sample_index = index;
    rec.seed = plan.sample_seed(n, index);
    rec.method = plan.solver_mode;

    const TorusSpec spec(plan.d, n);
    const Configuration cfg = sample_configuration(spec, plan.p, rec.seed);
    const GiantComponent giant = giant_component(cfg);
    rec.giant_size = giant.size;
    rec.censored = giant.size < 2;

    const CheegerResult* base_ptr = nullptr;
    CheegerResult base;
    if (!rec.censored) {
        const ClusterGraph graph = build_cluster_graph(cfg, giant);
        switch (plan.solver_mode) {
            case SolveMode::brute: base = cheeger_brute(graph); break;
            case SolveMode::exact: base = cheeger_exact(graph, opt); break;
            case SolveMode::heuristic: base = cheeger_heuristic(graph, opt.warm_start); break;
        }
        base_ptr = &base;
        rec.phi = base.phi;
        rec.max_minimizer_size = base.max_minimizer_size;
        rec.witness_size = base.witness.size();
        rec.optimal = base.optimal;
    }

    if (plan.solver_mode != SolveMode::heuristic) {
        rec.events = check_events_with_base(cfg, plan.constants, plan.solver_mode, giant,
                                            base_ptr, opt);
        rec.events_computed = true;
    }

    if (plan.record_gradients && plan.solver_mode != SolveMode::heuristic && !rec.censored) {
        rec.gradients_recorded = true;
        rec.gradients = edge_gradients(cfg, giant, base.phi, plan.solver_mode, opt);
    }

    rec.timing_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    return rec;
}

}  // namespace detail

/// All samples for one n. Samples are independent tasks; records land in
/// sample-index slots, so any worker count yields identical output.
[[nodiscard]] inline std::vector<SampleRecord> run_samples(const ExperimentPlan& plan, int n,
                                                           int threads = 1,
                                                           const ExactOptions& opt = {}) {
    plan.validate();
    std::vector<SampleRecord> records(static_cast<std::size_t>(plan.samples));
    if (threads <= 1) {
        for (int i = 0; i < plan.samples; ++i)
            records[static_cast<std::size_t>(i)] = detail::compute_sample(plan, n, i, opt);
        return records;
    }
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::string error;
    std::mutex error_mu;
    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= plan.samples || failed.load()) return;
            try {
                records[static_cast<std::size_t>(i)] = detail::compute_sample(plan, n, i, opt);
            } catch (const std::exception& ex) {
                std::lock_guard<std::mutex> lock(error_mu);
                failed.store(true);
                if (error.empty()) error = ex.what();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failed.load()) throw std::runtime_error("experiment worker failed: " + error);
    return records;
}

struct ConfidenceInterval {
    double lo = 0.0, hi = 0.0;
};

struct EventFrequencies {
    int total = 0;
    int count_h1 = 0, count_h2 = 0, count_h3 = 0, count_h4 = 0, count_h5 = 0;
    int count_g = 0, count_h_all = 0;

    [[nodiscard]] double freq_h1() const { return total ? double(count_h1) / total : 0.0; }
    [[nodiscard]] double freq_h2() const { return total ? double(count_h2) / total : 0.0; }
    [[nodiscard]] double freq_h3() const { return total ? double(count_h3) / total : 0.0; }
    [[nodiscard]] double freq_h4() const { return total ? double(count_h4) / total : 0.0; }
    [[nodiscard]] double freq_h5() const { return total ? double(count_h5) / total : 0.0; }
    [[nodiscard]] double freq_g() const { return total ? double(count_g) / total : 0.0; }
    [[nodiscard]] double freq_h_all() const { return total ? double(count_h_all) / total : 0.0; }
};

/// Wilson score interval at 95%.
[[nodiscard]] inline ConfidenceInterval wilson_ci(int successes, int total) {
    if (total == 0) return {0.0, 1.0};
    const double z = 1.959963984540054;
    const double n = total, ph = double(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (ph + z2 / (2 * n)) / denom;
    const double spread = z * std::sqrt(ph * (1 - ph) / n + z2 / (4 * n * n)) / denom;
    return {std::max(0.0, center - spread), std::min(1.0, center + spread)};
}

struct TalagrandDiagnostic {
    double full_sum = 0.0;        // sum_e ||grad||_2^2 / (1 + log(||2||/||1||))
    double naive_sum = 0.0;       // sum_e ||grad||_2^2
    double reduced = 0.0;         // d n^d ||grad_{e0}||_2^2
    double scaled = 0.0;          // n^d * full_sum
    double max_log_ratio = 0.0;   // max_e log(||2||/||1||)
    double diff_se = 0.0;         // bootstrap SE of full_sum - reduced
};

struct SummaryStats {
    int n = 0;
    int samples = 0;
    int censored = 0;
    double mean_phi = 0.0, var_phi = 0.0;
    double n_mean = 0.0, scaled_var = 0.0;
    ConfidenceInterval mean_ci, var_ci;
    EventFrequencies events;
    bool has_gradients = false;
    double sup_grad = 0.0;          // max |grad phi| over all samples/edges
    double sup_nd_grad_hn = -1.0;   // max over H_n samples of n^d |grad|; -1 if none
    TalagrandDiagnostic talagrand;
    std::int64_t case_counts[7] = {0, 0, 0, 0, 0, 0, 0};
    double case_max_grad[7] = {0, 0, 0, 0, 0, 0, 0};
    std::int64_t undefined_gradients = 0;
};

namespace detail {

inline void mean_var(const std::vector<double>& xs, double& mean, double& var) {
    const std::size_t n = xs.size();
    mean = 0.0;
    var = 0.0;
    if (n == 0) return;
    for (const double x : xs) mean += x;
    mean /= static_cast<double>(n);
    if (n < 2) return;
    for (const double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(n - 1);
}

}  // namespace detail

[[nodiscard]] inline SummaryStats summarize(const ExperimentPlan& plan, int n,
                                            const std::vector<SampleRecord>& records) {
    SummaryStats s;
    s.n = n;
    s.samples = static_cast<int>(records.size());
    const std::int64_t nd = [&] {
        std::int64_t v = 1;
        for (int i = 0; i < plan.d; ++i) v *= n;
        return v;
    }();

    std::vector<double> phis;
    phis.reserve(records.size());
    for (const auto& r : records) {
        if (r.censored) ++s.censored;
        else phis.push_back(r.phi.to_double());
        if (r.events_computed) {
            s.events.count_h1 += r.events.h1;
            s.events.count_h2 += r.events.h2;
            s.events.count_h3 += r.events.h3;
            s.events.count_h4 += r.events.h4;
            s.events.count_h5 += r.events.h5;
            s.events.count_g += r.events.g;
            s.events.count_h_all += r.events.h_all;
        }
    }
    s.events.total = s.samples;

    detail::mean_var(phis, s.mean_phi, s.var_phi);
    s.n_mean = n * s.mean_phi;
    s.scaled_var = static_cast<double>(nd) * s.var_phi;

    // Bootstrap CIs (percentile, 1000 resamples) seeded from the plan.
    if (phis.size() >= 2) {
        const int reps = 1000;
        std::vector<double> boot_mean(reps), boot_var(reps);
        SplitMixStream rng(splitmix_at(plan.master_seed, 0xB007'0000ULL + static_cast<std::uint64_t>(n)));
        std::vector<double> resample(phis.size());
        for (int r = 0; r < reps; ++r) {
            for (std::size_t i = 0; i < phis.size(); ++i)
                resample[i] = phis[rng.next_below(phis.size())];
            detail::mean_var(resample, boot_mean[r], boot_var[r]);
        }
        std::sort(boot_mean.begin(), boot_mean.end());
        std::sort(boot_var.begin(), boot_var.end());
        const int lo = static_cast<int>(0.025 * reps), hi = static_cast<int>(0.975 * reps) - 1;
        s.mean_ci = {boot_mean[lo], boot_mean[hi]};
        s.var_ci = {boot_var[lo], boot_var[hi]};
    }

    // Gradient reductions.
    const std::vector<const SampleRecord*> with_grads = [&] {
        std::vector<const SampleRecord*> v;
        for (const auto& r : records)
            if (r.gradients_recorded) v.push_back(&r);
        return v;
    }();
    if (!with_grads.empty()) {
        s.has_gradients = true;
        const std::size_t edge_count = with_grads.front()->gradients.size();

        auto talagrand_of = [&](const std::vector<const SampleRecord*>& sample_set,
                                double* max_log_ratio) {
            // per-edge ||.||_2^2 and ||.||_1 over the empirical sample
            double full = 0.0, naive = 0.0, reduced_sq = 0.0;
            if (max_log_ratio) *max_log_ratio = 0.0;
            for (std::size_t e = 0; e < edge_count; ++e) {
                double sum_sq = 0.0, sum_abs = 0.0;
                std::int64_t cnt = 0;
                for (const SampleRecord* r : sample_set) {
                    const GradientRecord& gr = r->gradients[e];
                    if (!gr.defined) continue;
                    const double g = gr.value.to_double();
                    sum_sq += g * g;
                    sum_abs += std::abs(g);
                    ++cnt;
                }
                if (cnt == 0 || sum_sq == 0.0) continue;
                const double norm2_sq = sum_sq / static_cast<double>(cnt);
                const double norm1 = sum_abs / static_cast<double>(cnt);
                // >= 1 by Cauchy-Schwarz; clamp against roundoff
                const double ratio = std::max(std::sqrt(norm2_sq) / norm1, 1.0);
                const double lr = std::log(ratio);
                full += norm2_sq / (1.0 + lr);
                naive += norm2_sq;
                if (max_log_ratio) *max_log_ratio = std::max(*max_log_ratio, lr);
                if (e == 0) reduced_sq = norm2_sq;
            }
            struct Out { double full, naive, reduced_sq; } out{full, naive, reduced_sq};
            return out;
        };

        const auto base = talagrand_of(with_grads, &s.talagrand.max_log_ratio);
        s.talagrand.full_sum = base.full;
        s.talagrand.naive_sum = base.naive;
        s.talagrand.reduced =
            static_cast<double>(plan.d) * static_cast<double>(nd) * base.reduced_sq;
        s.talagrand.scaled = static_cast<double>(nd) * base.full;

        // bootstrap SE of full - reduced
        {
            const int reps = 1000;
            std::vector<double> diffs(reps);
            SplitMixStream rng(splitmix_at(plan.master_seed, 0x7A1A'0000ULL + static_cast<std::uint64_t>(n)));
            std::vector<const SampleRecord*> resample(with_grads.size());
            for (int r = 0; r < reps; ++r) {
                for (std::size_t i = 0; i < with_grads.size(); ++i)
                    resample[i] = with_grads[rng.next_below(with_grads.size())];
                const auto t = talagrand_of(resample, nullptr);
                diffs[r] = t.full - static_cast<double>(plan.d) * static_cast<double>(nd) *
                                        t.reduced_sq;
            }
            double dm, dv;
            detail::mean_var(diffs, dm, dv);
            s.talagrand.diff_se = std::sqrt(dv);
        }

        for (const SampleRecord* r : with_grads) {
            const bool in_hn = r->events_computed && r->events.h_all;
            for (const GradientRecord& gr : r->gradients) {
                if (!gr.defined) {
                    ++s.undefined_gradients;
                    ++s.case_counts[static_cast<int>(gr.fcase)];
                    continue;
                }
                const double g = std::abs(gr.value.to_double());
                s.sup_grad = std::max(s.sup_grad, g);
                if (in_hn)
                    s.sup_nd_grad_hn =
                        std::max(s.sup_nd_grad_hn, static_cast<double>(nd) * g);
                const int ci = static_cast<int>(gr.fcase);
                ++s.case_counts[ci];
                s.case_max_grad[ci] = std::max(s.case_max_grad[ci], g);
            }
        }
    }
    return s;
}

/// Monte Carlo campaign over the plan's n-grid: per-n summary statistics of
/// phi (mean, unbiased variance, n*mean, n^d*variance with bootstrap CIs).
[[nodiscard]] inline std::vector<SummaryStats> run_variance_experiment(
    const ExperimentPlan& plan, int threads = 1, const ExactOptions& opt = {}) {
    plan.validate();
    std::vector<SummaryStats> out;
    for (const int n : plan.n_list)
        out.push_back(summarize(plan, n, run_samples(plan, n, threads, opt)));
    return out;
}

struct EventProbabilityRow {
    int n = 0;
    EventFrequencies freq;
    ConfidenceInterval ci_h_all;
    ConfidenceInterval ci_h1_fail;
};

/// Empirical frequencies of H_n^1..H_n^5, G_n, H_n with binomial CIs.
[[nodiscard]] inline std::vector<EventProbabilityRow> estimate_event_probabilities(
    const ExperimentPlan& plan, int threads = 1, const ExactOptions& opt = {}) {
    plan.validate();
    if (plan.solver_mode == SolveMode::heuristic)
        throw std::invalid_argument("event probabilities need an optimal solver mode");
    std::vector<EventProbabilityRow> rows;
    for (const int n : plan.n_list) {
        const SummaryStats s = summarize(plan, n, run_samples(plan, n, threads, opt));
        EventProbabilityRow row;
        row.n = n;
        row.freq = s.events;
        row.ci_h_all = wilson_ci(s.events.count_h_all, s.events.total);
        row.ci_h1_fail = wilson_ci(s.events.total - s.events.count_h1, s.events.total);
        rows.push_back(row);
    }
    return rows;
}

struct TalagrandRow {
    int n = 0;
    TalagrandDiagnostic diag;
};

[[nodiscard]] inline std::vector<TalagrandRow> talagrand_diagnostic(
    const ExperimentPlan& plan, int threads = 1, const ExactOptions& opt = {}) {
    plan.validate();
    if (!plan.record_gradients)
        throw std::invalid_argument("talagrand diagnostic needs record_gradients");
    if (plan.solver_mode != SolveMode::exact && plan.solver_mode != SolveMode::brute)
        throw std::invalid_argument("talagrand diagnostic needs an optimal solver mode");
    std::vector<TalagrandRow> rows;
    for (const int n : plan.n_list) {
        const SummaryStats s = summarize(plan, n, run_samples(plan, n, threads, opt));
        rows.push_back({n, s.talagrand});
    }
    return rows;
}

struct GradientTailRow {
    int n = 0;
    double max_grad = 0.0;          // hard bound: <= 4d always
    double max_nd_grad_hn = -1.0;   // over H_n samples
    std::int64_t case_counts[7] = {0, 0, 0, 0, 0, 0, 0};
    double case_max_grad[7] = {0, 0, 0, 0, 0, 0, 0};
};

[[nodiscard]] inline std::vector<GradientTailRow> gradient_tail_summary(
    const ExperimentPlan& plan, int threads = 1, const ExactOptions& opt = {}) {
    plan.validate();
    if (!plan.record_gradients)
        throw std::invalid_argument("gradient tails need record_gradients");
    std::vector<GradientTailRow> rows;
    for (const int n : plan.n_list) {
        const SummaryStats s = summarize(plan, n, run_samples(plan, n, threads, opt));
        GradientTailRow row;
        row.n = n;
        row.max_grad = s.sup_grad;
        row.max_nd_grad_hn = s.sup_nd_grad_hn;
        for (int i = 0; i < 7; ++i) {
            row.case_counts[i] = s.case_counts[i];
            row.case_max_grad[i] = s.case_max_grad[i];
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace perciso
