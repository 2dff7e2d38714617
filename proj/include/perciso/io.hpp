#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "perciso/experiments.hpp"

namespace perciso {

/// Configuration text format:
///   PERC1 <d> <n>
///   <d*n^d characters over {0,1}, canonical EdgeId order>
///   # optional trailing comment lines
inline void write_config(std::ostream& out, const Configuration& cfg) {
    const TorusSpec& spec = cfg.spec();
    out << "PERC1 " << spec.d() << ' ' << spec.n() << '\n';
    std::string bits(static_cast<std::size_t>(spec.edge_count()), '0');
    for (EdgeId e = 0; e < spec.edge_count(); ++e)
        if (cfg.open(e)) bits[static_cast<std::size_t>(e)] = '1';
    out << bits << '\n';
}

inline void write_config_file(const std::string& path, const Configuration& cfg) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open for writing: " + path);
    write_config(out, cfg);
}

[[nodiscard]] inline Configuration read_config(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw std::invalid_argument("config: empty input");
    std::istringstream hs(header);
    std::string magic;
    int d = 0, n = 0;
    if (!(hs >> magic >> d >> n) || magic != "PERC1")
        throw std::invalid_argument("config: bad header, expected 'PERC1 d n'");
    const TorusSpec spec(d, n);
    std::string body;
    if (!std::getline(in, body)) throw std::invalid_argument("config: missing body line");
    if (!body.empty() && body.back() == '\r') body.pop_back();
    if (static_cast<std::int64_t>(body.size()) != spec.edge_count())
        throw std::invalid_argument("config: body has " + std::to_string(body.size()) +
                                    " characters, expected " +
                                    std::to_string(spec.edge_count()));
    Configuration cfg(spec);
    for (EdgeId e = 0; e < spec.edge_count(); ++e) {
        const char c = body[static_cast<std::size_t>(e)];
        if (c == '1') cfg.set(e, true);
        else if (c != '0') throw std::invalid_argument("config: body must be over {0,1}");
    }
    std::string rest;
    while (std::getline(in, rest)) {
        if (!rest.empty() && rest.back() == '\r') rest.pop_back();
        if (rest.empty() || rest[0] == '#') continue;
        throw std::invalid_argument("config: unexpected trailing content");
    }
    return cfg;
}

[[nodiscard]] inline Configuration read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open configuration file: " + path);
    return read_config(in);
}

/// Experiment plan: key=value lines. Required keys d, n_list, p, samples,
/// master_seed. Optional: solver_mode (exact), record_gradients (false),
/// constants_file, and inline c1..c6 / C_claim overrides. Unknown keys are
/// rejected.
[[nodiscard]] inline ExperimentPlan parse_plan(std::istream& in) {
    ExperimentPlan plan;
    bool saw_d = false, saw_n = false, saw_p = false, saw_samples = false, saw_seed = false;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument("plan line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        while (!line.empty() &&
               (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
            line.pop_back();
        const auto start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail("expected key=value");
        std::string key = line.substr(start, eq - start);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        std::string value = line.substr(eq + 1);
        const auto vs = value.find_first_not_of(" \t");
        value = vs == std::string::npos ? "" : value.substr(vs);
        try {
            if (key == "d") { plan.d = std::stoi(value); saw_d = true; }
            else if (key == "n_list") {
                std::istringstream vsin(value);
                std::string tok;
                plan.n_list.clear();
                while (std::getline(vsin, tok, ',')) {
                    if (tok.empty()) fail("empty entry in n_list");
                    plan.n_list.push_back(std::stoi(tok));
                }
                if (plan.n_list.empty()) fail("n_list must be nonempty");
                saw_n = true;
            }
            else if (key == "p") { plan.p = std::stod(value); saw_p = true; }
            else if (key == "samples") { plan.samples = std::stoi(value); saw_samples = true; }
            else if (key == "master_seed") { plan.master_seed = std::stoull(value); saw_seed = true; }
            else if (key == "solver_mode") plan.solver_mode = solve_mode_from_string(value);
            else if (key == "record_gradients") {
                if (value == "true" || value == "1") plan.record_gradients = true;
                else if (value == "false" || value == "0") plan.record_gradients = false;
                else fail("record_gradients must be true/false");
            }
            else if (key == "constants_file") plan.constants = EventConstants::from_file(value);
            else if (key == "c1") plan.constants.c1 = DecimalConstant::parse(value);
            else if (key == "c2") plan.constants.c2 = DecimalConstant::parse(value);
            else if (key == "c3") plan.constants.c3 = DecimalConstant::parse(value);
            else if (key == "c4") plan.constants.c4 = DecimalConstant::parse(value);
            else if (key == "c5") plan.constants.c5 = DecimalConstant::parse(value);
            else if (key == "c6") plan.constants.c6 = DecimalConstant::parse(value);
            else if (key == "C_claim") plan.constants.claim_constant = DecimalConstant::parse(value);
            else fail("unknown key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception&) {
            fail("malformed value for '" + key + "'");
        }
    }
    if (!saw_d) throw std::invalid_argument("plan: missing required key 'd'");
    if (!saw_n) throw std::invalid_argument("plan: missing required key 'n_list'");
    if (!saw_p) throw std::invalid_argument("plan: missing required key 'p'");
    if (!saw_samples) throw std::invalid_argument("plan: missing required key 'samples'");
    if (!saw_seed) throw std::invalid_argument("plan: missing required key 'master_seed'");
    plan.constants.validate();
    plan.validate();
    return plan;
}

[[nodiscard]] inline ExperimentPlan parse_plan_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open plan file: " + path);
    return parse_plan(in);
}

// ---- JSON serialization -------------------------------------------------

[[nodiscard]] inline nlohmann::json event_report_json(const EventReport& rep) {
    nlohmann::json j{
        {"h1", rep.h1}, {"h2", rep.h2}, {"h3", rep.h3},
        {"h4", rep.h4}, {"h5", rep.h5}, {"g", rep.g}, {"h_all", rep.h_all},
    };
    nlohmann::json det{
        {"giant_size", rep.details.giant_size},
        {"phi_defined", rep.details.phi_defined},
        {"max_sym_diff", rep.details.max_sym_diff},
        {"max_sym_diff_edge", rep.details.max_sym_diff_edge},
    };
    if (rep.details.phi_defined) {
        det["phi_num"] = rep.details.phi.num;
        det["phi_den"] = rep.details.phi.den;
        det["max_minimizer_size"] = rep.details.max_minimizer_size;
        det["iso_value"] = rep.details.iso_value;
        det["iso_threshold"] = rep.details.iso_threshold;
        det["epsilon"] = rep.details.epsilon;
    }
    if (rep.details.h5_fail_edge >= 0) det["h5_fail_edge"] = rep.details.h5_fail_edge;
    j["details"] = det;
    return j;
}

/// One ResultRecord line: kind identifies the producer subcommand.
[[nodiscard]] inline nlohmann::json result_record_json(
    const std::string& kind, int d, int n, double p, std::uint64_t seed,
    const CheegerResult& res, std::int64_t giant_size, const EventReport* events,
    double timing_ms) {
    nlohmann::json j{
        {"kind", kind},
        {"d", d},
        {"n", n},
        {"p", p},
        {"seed", seed},
        {"phi_num", res.phi.num},
        {"phi_den", res.phi.den},
        {"phi_real", res.phi.to_double()},
        {"giant_size", giant_size},
        {"max_minimizer_size", res.max_minimizer_size},
        {"method", to_string(res.method)},
        {"optimal", res.optimal},
        {"witness_size", res.witness.size()},
        {"timing_ms", timing_ms},
    };
    if (events) j["events"] = event_report_json(*events);
    return j;
}

[[nodiscard]] inline nlohmann::json sample_record_json(const ExperimentPlan& plan,
                                                       const SampleRecord& rec) {
    nlohmann::json j{
        {"kind", "sample"},
        {"d", plan.d},
        {"n", rec.n},
        {"p", plan.p},
        {"seed", rec.seed},
        {"sample_index", rec.sample_index},
        {"giant_size", rec.giant_size},
        {"censored", rec.censored},
        {"method", to_string(rec.method)},
        {"timing_ms", rec.timing_ms},
    };
    if (!rec.censored) {
        j["phi_num"] = rec.phi.num;
        j["phi_den"] = rec.phi.den;
        j["phi_real"] = rec.phi.to_double();
        j["max_minimizer_size"] = rec.max_minimizer_size;
        j["witness_size"] = rec.witness_size;
        j["optimal"] = rec.optimal;
    }
    if (rec.events_computed) j["events"] = event_report_json(rec.events);
    if (rec.gradients_recorded) {
        nlohmann::json grads = nlohmann::json::array();
        for (const GradientRecord& gr : rec.gradients) {
            nlohmann::json g{
                {"edge", gr.edge},
                {"case", to_string(gr.fcase)},
                {"defined", gr.defined},
            };
            if (gr.defined) {
                g["num"] = gr.value.num;
                g["den"] = gr.value.den;
            }
            grads.push_back(std::move(g));
        }
        j["gradients"] = std::move(grads);
    }
    return j;
}

/// Summary CSV; one row per n. Deterministic float formatting via %.12g.
[[nodiscard]] inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline void write_summary_csv(std::ostream& out, const ExperimentPlan& plan,
                              const std::vector<SummaryStats>& stats) {
    out << "n,samples,censored,mean_phi,var_phi,n_mean_phi,scaled_var,"
           "mean_ci_lo,mean_ci_hi,var_ci_lo,var_ci_hi,"
           "freq_h1,freq_h2,freq_h3,freq_h4,freq_h5,freq_g,freq_h_all,"
           "sup_grad,sup_nd_grad_hn,talagrand_sum,talagrand_scaled,"
           "talagrand_reduced,talagrand_diff_se\n";
    for (const SummaryStats& s : stats) {
        out << s.n << ',' << s.samples << ',' << s.censored << ','
            << format_double(s.mean_phi) << ',' << format_double(s.var_phi) << ','
            << format_double(s.n_mean) << ',' << format_double(s.scaled_var) << ','
            << format_double(s.mean_ci.lo) << ',' << format_double(s.mean_ci.hi) << ','
            << format_double(s.var_ci.lo) << ',' << format_double(s.var_ci.hi) << ','
            << format_double(s.events.freq_h1()) << ',' << format_double(s.events.freq_h2())
            << ',' << format_double(s.events.freq_h3()) << ','
            << format_double(s.events.freq_h4()) << ',' << format_double(s.events.freq_h5())
            << ',' << format_double(s.events.freq_g()) << ','
            << format_double(s.events.freq_h_all()) << ',' << format_double(s.sup_grad)
            << ',' << format_double(s.sup_nd_grad_hn) << ','
            << format_double(s.talagrand.full_sum) << ','
            << format_double(s.talagrand.scaled) << ','
            << format_double(s.talagrand.reduced) << ','
            << format_double(s.talagrand.diff_se) << '\n';
    }
    (void)plan;
}

/// Per-edge gradient CSV: edge_id, case, grad_num, grad_den (NA when the
/// flipped phi is undefined).
inline void write_gradient_csv(std::ostream& out, const std::vector<GradientRecord>& grads) {
    out << "edge_id,case,grad_num,grad_den\n";
    for (const GradientRecord& gr : grads) {
        out << gr.edge << ',' << to_string(gr.fcase) << ',';
        if (gr.defined) out << gr.value.num << ',' << gr.value.den << '\n';
        else out << "NA,NA\n";
    }
}

[[nodiscard]] inline nlohmann::json iso_profile_json(const IsoProfileResult& res) {
    return nlohmann::json{
        {"kind", "profile"},
        {"epsilon", res.epsilon},
        {"value", res.value},
        {"witness_size", res.witness.size()},
        {"witness", res.witness},
    };
}

}  // namespace perciso
