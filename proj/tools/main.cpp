#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "geocoder/coding.hpp"
#include "geocoder/duality.hpp"
#include "geocoder/markov.hpp"
#include "geocoder/measure.hpp"
#include "render.hpp"

using json = nlohmann::ordered_json;
using namespace geocoder;
using geocoder::cli::Csv;
using geocoder::cli::num;

namespace {

struct Config {
    int genus = 2;
    std::string partition = "midpoints";
    std::string format = "json";
    std::uint64_t seed = 1;
    double tol = 0;
    std::string output;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void common(CLI::App* cmd, Config& cfg, std::vector<std::string> formats, bool with_partition = true) {
    cmd->add_option("-g,--genus", cfg.genus, "surface genus (>= 2)")->capture_default_str();
    if (with_partition)
        cmd->add_option("-p,--partition", cfg.partition,
                        "midpoints | product | mixed | endpoints:P | endpoints:Q | endpoints:<PQ...> | custom:<a1,...>")
            ->capture_default_str();
    cmd->add_option("-f,--format", cfg.format, "output format")
        ->check(CLI::IsMember(formats))
        ->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    cmd->add_option("--tol", cfg.tol, "angular tolerance (overrides GEODESIC_CODER_TOL)");
    cmd->add_option("-o,--output", cfg.output, "write to a file instead of stdout");
}

json code_json(const CodingSequence& c) {
    json j;
    j["flavor"] = to_string(c.flavor);
    j["genus"] = c.genus;
    j["partition"] = c.partition_kind;
    j["period"] = c.period;
    j["canonical_period"] = canonical_rotation(c.period);
    j["future"] = c.future;
    j["past"] = c.past;
    j["reducing_word"] = c.reducing_word;
    return j;
}

std::vector<int> parse_word(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            int v = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw UsageError("bad letter '" + tok + "' in word");
        }
    }
    if (out.empty()) throw UsageError("empty word");
    return out;
}

double angle_arg(const std::string& text) {
    try {
        return wrap(parse_angle(text));
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
}

std::string cmd_surface(const Config& cfg) {
    Surface s = Surface::build(cfg.genus);
    if (cfg.format == "csv") {
        Csv t{{"i", "V_re", "V_im", "P", "Q", "M", "sigma", "rho", "theta", "tau"}, {}};
        for (int i = 1; i <= s.n(); ++i)
            t.rows.push_back({std::to_string(i), num(s.V(i).real()), num(s.V(i).imag()), num(s.P(i)), num(s.Q(i)),
                              num(s.M(i)), std::to_string(s.sigma(i)), std::to_string(s.rho(i)),
                              std::to_string(s.theta(i)), std::to_string(s.tau(i))});
        return t.str();
    }
    json j;
    j["genus"] = s.genus();
    j["n"] = s.n();
    json rows = json::array();
    for (int i = 1; i <= s.n(); ++i) {
        json r;
        r["i"] = i;
        r["V"] = {s.V(i).real(), s.V(i).imag()};
        r["P"] = s.P(i);
        r["Q"] = s.Q(i);
        r["M"] = s.M(i);
        r["sigma"] = s.sigma(i);
        r["rho"] = s.rho(i);
        r["theta"] = s.theta(i);
        r["tau"] = s.tau(i);
        rows.push_back(r);
    }
    j["sides"] = rows;
    j["relation_error"] = relation_report(s).max();
    return j.dump(2) + "\n";
}

std::string cmd_attractor(const Config& cfg) {
    Surface s = Surface::build(cfg.genus);
    Partition A = parse_partition(s, cfg.partition);
    Attractor at = attractor(s, A);
    if (cfg.format == "svg") return cli::attractor_svg(at);
    if (cfg.format == "csv") {
        Csv t{{"strip", "piece", "u_lo", "u_hi", "w_lo", "w_hi"}, {}};
        for (const Rect& r : at.rects)
            t.rows.push_back({std::to_string(r.strip), std::to_string(r.piece), num(r.u_lo), num(r.u_hi),
                              num(r.w_lo), num(r.w_hi)});
        return t.str();
    }
    json j;
    j["genus"] = s.genus();
    j["partition"] = A.label;
    j["provenance"] = at.provenance == Provenance::ClosedForm ? "closed-form" : "numeric";
    j["iterations"] = at.iterations;
    json rects = json::array();
    for (const Rect& r : at.rects)
        rects.push_back({{"strip", r.strip}, {"piece", r.piece}, {"u", {r.u_lo, r.u_hi}}, {"w", {r.w_lo, r.w_hi}}});
    j["rects"] = rects;
    return j.dump(2) + "\n";
}

struct CodeArgs {
    std::string axis, u, w, flavor = "arithmetic";
    int future = 24, past = 12;
};

std::string cmd_code(const Config& cfg, const CodeArgs& a) {
    Surface s = Surface::build(cfg.genus);
    Partition A = parse_partition(s, cfg.partition);
    Attractor at = attractor(s, A);
    Geodesic g;
    if (!a.axis.empty()) {
        g = axis(s, parse_word(a.axis));
    } else if (!a.u.empty() && !a.w.empty()) {
        g = {angle_arg(a.u), angle_arg(a.w)};
    } else {
        throw UsageError("code needs --axis or both --u and --w");
    }
    json j;
    j["u"] = g.u;
    j["w"] = g.w;
    if (a.flavor == "arithmetic" || a.flavor == "both")
        j["arithmetic"] = code_json(arithmetic_code(s, at, g, a.future, a.past));
    if (a.flavor == "geometric" || a.flavor == "both") {
        Geodesic gg = g;
        std::vector<int> word;
        if (!in_omega_g(s, g.u, g.w)) {
            // Reduce, then carry the reduced geodesic to one crossing the polygon.
            Reduction r = reduce(s, at, g.u, g.w);
            gg = phi_inverse(s, at, r.u, r.w);
            word = r.applied;
        }
        json c = code_json(geometric_code(s, gg, a.future, a.past));
        c["reducing_word"] = word;
        j["geometric"] = c;
    }
    return j.dump(2) + "\n";
}

std::string cmd_reduce(const Config& cfg, const std::string& u, const std::string& w, int max_steps) {
    Surface s = Surface::build(cfg.genus);
    Attractor at = attractor(s, parse_partition(s, cfg.partition));
    Reduction r = reduce(s, at, angle_arg(u), angle_arg(w), max_steps);
    json j;
    j["u"] = r.u;
    j["w"] = r.w;
    j["applied"] = r.applied;
    j["steps"] = r.applied.size();
    return j.dump(2) + "\n";
}

std::string cmd_cycles(const Config& cfg) {
    Surface s = Surface::build(cfg.genus);
    Partition A = parse_partition(s, cfg.partition);
    CycleReport rep = cycle_report(s, A);
    if (cfg.format == "csv") {
        Csv t{{"i", "A", "B", "C", "cycle_end", "short_cycle", "mismatch", "b", "a"}, {}};
        for (int i = 1; i <= s.n(); ++i) {
            const CycleEntry& e = rep.at(i);
            t.rows.push_back({std::to_string(i), num(A.at(i)), num(e.B), num(e.C), num(e.cycle_end),
                              e.short_cycle ? "true" : "false", num(e.mismatch), num(e.interval.b),
                              num(e.interval.a)});
        }
        return t.str();
    }
    json j;
    j["genus"] = s.genus();
    j["partition"] = A.label;
    j["short_cycle"] = rep.all_short();
    json rows = json::array();
    for (int i = 1; i <= s.n(); ++i) {
        const CycleEntry& e = rep.at(i);
        rows.push_back({{"i", i},
                        {"A", A.at(i)},
                        {"B", e.B},
                        {"C", e.C},
                        {"cycle_end", e.cycle_end},
                        {"short_cycle", e.short_cycle},
                        {"mismatch", e.mismatch},
                        {"admissible_interval", {e.interval.b, e.interval.a}}});
    }
    j["points"] = rows;
    return j.dump(2) + "\n";
}

std::string cmd_markov(const Config& cfg) {
    Surface s = Surface::build(cfg.genus);
    Partition A = parse_partition(s, cfg.partition);
    CycleReport rep = cycle_report(s, A);
    auto witnesses = markov_condition(s, A, rep);
    Attractor at = attractor(s, A);
    FinePartition fine = fine_partition(s, A, at);
    TransitionMatrix tm = transition_matrix(s, fine);
    SoficGraph g = sofic_presentation(s, tm);
    if (cfg.format == "dot") return to_dot(g);
    if (cfg.format == "csv") {
        Csv t{{"state"}, {}};
        for (int b = 0; b < tm.size; ++b) t.header.push_back(tm.name(b));
        for (int a = 0; a < tm.size; ++a) {
            std::vector<std::string> row{tm.name(a)};
            for (int b = 0; b < tm.size; ++b) row.push_back(tm.at(a, b) ? "1" : "0");
            t.rows.push_back(row);
        }
        return t.str();
    }
    json j;
    j["genus"] = s.genus();
    j["partition"] = A.label;
    j["markov_condition"] = all_witnessed(witnesses);
    json w = json::array();
    for (const auto& x : witnesses)
        w.push_back({{"i", x.i}, {"j", x.j}, {"kind", to_string(x.kind)}, {"error", x.error}});
    j["witnesses"] = w;
    j["states"] = tm.size;
    json active = json::array();
    for (int a = 0; a < tm.size; ++a)
        if (tm.active[a]) active.push_back(tm.name(a));
    j["active_states"] = active;
    std::size_t ones = 0;
    for (auto v : tm.m) ones += v;
    j["transitions"] = ones;
    j["perron_eigenvalue"] = perron_eigenvalue(tm);
    json rows = json::array();
    for (int a = 0; a < tm.size; ++a) {
        std::string r;
        for (int b = 0; b < tm.size; ++b) r += tm.at(a, b) ? '1' : '0';
        rows.push_back(r);
    }
    j["matrix"] = rows;
    return j.dump(2) + "\n";
}

std::string cmd_dual(const Config& cfg, const std::string& a, const std::string& b, const DualityOptions& opt) {
    Surface s = Surface::build(cfg.genus);
    DualityVerdict v = dual_check(s, parse_partition(s, a), parse_partition(s, b), opt);
    json j;
    j["a"] = a;
    j["b"] = b;
    j["dual"] = v.dual();
    j["reflection_match"] = v.reflection_match;
    j["diagram_commutes"] = v.diagram_commutes;
    j["grid_size"] = v.grid_size;
    j["mismatched_cells"] = v.mismatched_cells;
    j["interior_mismatches"] = v.interior_mismatches;
    j["samples"] = v.samples;
    j["max_diagram_error"] = v.max_diagram_error;
    if (v.counterexample)
        j["counterexample"] = {{"u", v.counterexample->u}, {"w", v.counterexample->w}};
    else
        j["counterexample"] = nullptr;
    j["note"] = "empirical verdict";
    return j.dump(2) + "\n";
}

std::string cmd_entropy(const Config& cfg, double samples_d, std::size_t return_samples) {
    if (samples_d < 0) throw UsageError("--samples must be non-negative");
    auto samples = static_cast<std::size_t>(samples_d);
    Surface s = Surface::build(cfg.genus);
    Attractor at = attractor(s, parse_partition(s, cfg.partition));
    MeasureReport closed = entropy(s, at, MassMethod::ClosedForm);
    MeasureReport mc = entropy(s, at, MassMethod::MonteCarlo, samples, cfg.seed);
    double sigma = std::abs(closed.K - mc.K) / std::max(mc.K_error, 1e-300);
    json j;
    j["genus"] = s.genus();
    j["partition"] = at.partition.label;
    auto rep = [](const MeasureReport& r) {
        return json{{"method", to_string(r.method)}, {"K", r.K}, {"K_error", r.K_error}, {"entropy", r.entropy},
                    {"entropy_error", r.error}};
    };
    j["closed_form"] = rep(closed);
    j["monte_carlo"] = rep(mc);
    j["monte_carlo"]["samples"] = samples;
    j["agreement_sigma"] = sigma;
    if (return_samples > 0 && at.provenance == Provenance::ClosedForm) {
        MassEstimate g = mean_return_time(s, at, return_samples, cfg.seed);
        j["mean_return_time"] = {{"value", g.value}, {"error", g.stderr_}, {"samples", g.hits}};
    }
    if (cfg.format == "csv") {
        Csv t{{"method", "K", "K_error", "entropy", "entropy_error"}, {}};
        for (const auto& r : {closed, mc})
            t.rows.push_back({to_string(r.method), num(r.K), num(r.K_error), num(r.entropy), num(r.error)});
        return t.str();
    }
    return j.dump(2) + "\n";
}

std::string cmd_probe(const Config& cfg, int m_max, int samples) {
    Surface s = Surface::build(cfg.genus);
    Attractor at = attractor(s, parse_partition(s, cfg.partition));
    std::vector<ProbeResult> res;
    for (int m = 1; m <= m_max; ++m) res.push_back(code_continuity_probe(s, at, m, samples, cfg.seed));
    if (cfg.format == "csv") {
        Csv t{{"m", "max_distance", "ratio", "base_points", "accepted_pairs"}, {}};
        for (std::size_t k = 0; k < res.size(); ++k)
            t.rows.push_back({std::to_string(res[k].m), num(res[k].max_distance),
                              k ? num(res[k].max_distance / res[k - 1].max_distance) : "",
                              std::to_string(res[k].base_points), std::to_string(res[k].accepted_pairs)});
        return t.str();
    }
    json rows = json::array();
    for (std::size_t k = 0; k < res.size(); ++k) {
        json r{{"m", res[k].m},
               {"max_distance", res[k].max_distance},
               {"base_points", res[k].base_points},
               {"accepted_pairs", res[k].accepted_pairs}};
        r["ratio"] = k ? json(res[k].max_distance / res[k - 1].max_distance) : json(nullptr);
        rows.push_back(r);
    }
    return json{{"genus", s.genus()}, {"partition", at.partition.label}, {"levels", rows}}.dump(2) + "\n";
}

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidArgument:
        case ErrorKind::InvalidPattern:
        case ErrorKind::IndexOutOfRange: return 2;
        default: return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized Bowen-Series boundary maps: attractors, codes, Markov partitions, entropy"};
    app.require_subcommand(1);
    Config cfg;

    auto* surface = app.add_subcommand("surface", "polygon data and index tables");
    common(surface, cfg, {"json", "csv"}, false);

    auto* attr = app.add_subcommand("attractor", "attractor of the natural extension");
    common(attr, cfg, {"json", "csv", "svg"});

    CodeArgs code_args;
    auto* code = app.add_subcommand("code", "arithmetic and geometric codes");
    common(code, cfg, {"json"});
    code->add_option("--axis", code_args.axis, "comma-separated generator word, e.g. 2,8,5");
    code->add_option("--u", code_args.u, "backward endpoint (radians or pi*p/q)");
    code->add_option("--w", code_args.w, "forward endpoint (radians or pi*p/q)");
    code->add_option("--flavor", code_args.flavor)
        ->check(CLI::IsMember({"arithmetic", "geometric", "both"}))
        ->capture_default_str();
    code->add_option("--future", code_args.future)->check(CLI::NonNegativeNumber)->capture_default_str();
    code->add_option("--past", code_args.past)->check(CLI::NonNegativeNumber)->capture_default_str();

    std::string ru, rw;
    int max_steps = 1000;
    auto* red = app.add_subcommand("reduce", "apply F until the geodesic is reduced");
    common(red, cfg, {"json"});
    red->add_option("--u", ru)->required();
    red->add_option("--w", rw)->required();
    red->add_option("--max-steps", max_steps)->capture_default_str();

    auto* cycles = app.add_subcommand("cycles", "cycle data B_i, C_i and the short cycle property");
    common(cycles, cfg, {"json", "csv"});

    auto* markov = app.add_subcommand("markov", "Markov condition, transition matrix and sofic graph");
    common(markov, cfg, {"json", "csv", "dot"});

    std::string da = "endpoints:P", db = "endpoints:Q";
    DualityOptions dopt;
    auto* dual = app.add_subcommand("dual", "duality check between two partitions");
    common(dual, cfg, {"json"}, false);
    dual->add_option("--a", da)->capture_default_str();
    dual->add_option("--b", db)->capture_default_str();
    dual->add_option("--grid", dopt.grid_size)->check(CLI::PositiveNumber)->capture_default_str();
    dual->add_option("--samples", dopt.samples)->check(CLI::PositiveNumber)->capture_default_str();

    double samples = 1e6;
    std::size_t return_samples = 0;
    auto* ent = app.add_subcommand("entropy", "invariant mass K and entropy");
    common(ent, cfg, {"json", "csv"});
    ent->add_option("--samples", samples, "Monte-Carlo samples (accepts 1e7)")->capture_default_str();
    ent->add_option("--return-samples", return_samples, "samples for the mean return time (0 skips)")
        ->capture_default_str();

    int m_max = 10, probe_samples = 200;
    auto* probe = app.add_subcommand("probe-continuity", "endpoint spread of geodesics sharing a code window");
    common(probe, cfg, {"json", "csv"});
    probe->add_option("--m-max", m_max)->check(CLI::PositiveNumber)->capture_default_str();
    probe->add_option("--samples", probe_samples)->check(CLI::PositiveNumber)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (cfg.tol > 0) set_angle_tol(cfg.tol);
        std::string out;
        if (*surface) out = cmd_surface(cfg);
        else if (*attr) out = cmd_attractor(cfg);
        else if (*code) out = cmd_code(cfg, code_args);
        else if (*red) out = cmd_reduce(cfg, ru, rw, max_steps);
        else if (*cycles) out = cmd_cycles(cfg);
        else if (*markov) out = cmd_markov(cfg);
        else if (*dual) {
            dopt.seed = cfg.seed;
            out = cmd_dual(cfg, da, db, dopt);
        } else if (*ent) out = cmd_entropy(cfg, samples, return_samples);
        else if (*probe) out = cmd_probe(cfg, m_max, probe_samples);
        if (cfg.output.empty()) {
            std::cout << out;
        } else {
            std::ofstream f(cfg.output, std::ios::binary);
            if (!f) throw UsageError("cannot write " + cfg.output);
            f << out;
        }
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    }
}
