// qent4.cpp
// Command-line surface: state reports (invariants, tangles, entropies,
// spectra), the property-verification suite, figure-data CSV emission,
// optimization runs, and family samplers.
//
// Exit codes: 0 ok, 1 verification failure, 2 input parse error,
// 3 norm rejection, 4 invalid configuration, 5 io error.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qent4/qent4.hpp"

namespace {

using nlohmann::json;
using namespace qent4;

enum exit_code : int {
    exit_ok = 0,
    exit_verify_failure = 1,
    exit_parse = 2,
    exit_norm = 3,
    exit_config = 4,
    exit_io = 5,
};

struct cli_error {
    int code;
    std::string message;
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw cli_error{exit_io, "cannot open input file '" + path + "'"};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Parse a state document and apply the norm policy: a deficit up to 1e-8
// is fixed silently, up to 1e-3 with a warning, anything larger is
// rejected.
pure_state4 load_state(const std::string& path) {
    state_document doc;
    try {
        doc = parse_state_document(read_input(path));
    } catch (const state_document_error& e) {
        throw cli_error{exit_parse, e.what()};
    }
    pure_state4 s = document_state(doc);
    const double deficit = std::abs(s.norm() - 1.0);
    if (deficit > 1e-3)
        throw cli_error{exit_norm, "state norm is off by " + std::to_string(deficit) +
                                       ", beyond the 1e-3 rejection threshold"};
    if (deficit > 1e-8)
        std::cerr << "qent4: warning: normalizing input with norm deficit " << deficit << "\n";
    return s.normalized();
}

json complex_pair(const cplx& v) { return json::array({v.real(), v.imag()}); }

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string format_sig12(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

entropy_measure parse_objective(const std::string& text) {
    if (text == "vn" || text == "vonneumann" || text == "von-neumann")
        return {entropy_family::von_neumann, 1.0};
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw cli_error{exit_config,
                        "objective must be 'vn' or '<tsallis|renyi>:<alpha>', got '" + text + "'"};
    const std::string fam = text.substr(0, colon);
    double alpha = 0.0;
    try {
        alpha = std::stod(text.substr(colon + 1));
    } catch (...) {
        throw cli_error{exit_config, "bad alpha in objective '" + text + "'"};
    }
    if (!(alpha > 0.0)) throw cli_error{exit_config, "alpha must be positive"};
    if (fam == "tsallis") return {entropy_family::tsallis, alpha};
    if (fam == "renyi") return {entropy_family::renyi, alpha};
    throw cli_error{exit_config, "unknown entropy family '" + fam + "'"};
}

// state labels: the named states plus eqlast:<theta>
pure_state4 resolve_state_label(const std::string& label) {
    if (label.rfind("eqlast:", 0) == 0) {
        try {
            return eq_last_state(std::stod(label.substr(7)));
        } catch (...) {
            throw cli_error{exit_config, "bad theta in state label '" + label + "'"};
        }
    }
    if (const auto id = parse_state_name(label)) return named_state(*id);
    throw cli_error{exit_config, "unknown state label '" + label + "'"};
}

int cmd_invariants(const std::string& input) {
    const pure_state4 s = load_state(input);
    const invariant_vector_t iv = invariant_vector(s);
    json out;
    out["E"] = json::array();
    for (const cplx& e : iv.E) out["E"].push_back(complex_pair(e));
    out["f"] = iv.f;
    out["four_tangle"] = four_tangle(s);
    emit(out);
    return exit_ok;
}

int cmd_tangles(const std::string& input) {
    const pure_state4 s = load_state(input);
    const tangle_summary ts = summarize_tangles(s);
    json out;
    out["per_cut"] = {{"ab_cd", ts.per_cut[0]}, {"ac_bd", ts.per_cut[1]}, {"ad_bc", ts.per_cut[2]}};
    out["tau1"] = ts.tau1;
    out["tau2"] = ts.tau2;
    out["four_tangle"] = ts.four_tangle;
    emit(out);
    return exit_ok;
}

int cmd_spectra(const std::string& input) {
    const pure_state4 s = load_state(input);
    json out;
    out["P"] = cut_spectrum(s, cut::ab_cd);
    out["Q"] = cut_spectrum(s, cut::ac_bd);
    out["R"] = cut_spectrum(s, cut::ad_bc);
    emit(out);
    return exit_ok;
}

int cmd_entropy(const std::string& input, const std::string& family, double alpha) {
    entropy_measure m;
    if (family == "tsallis")
        m = {entropy_family::tsallis, alpha};
    else if (family == "renyi")
        m = {entropy_family::renyi, alpha};
    else if (family == "vn" || family == "vonneumann")
        m = {entropy_family::von_neumann, 1.0};
    else
        throw cli_error{exit_config, "unknown entropy family '" + family + "'"};
    if (m.family != entropy_family::von_neumann && !(alpha > 0.0))
        throw cli_error{exit_config, "alpha must be positive"};

    const pure_state4 s = load_state(input);
    json out;
    out["family"] = family;
    out["alpha"] = m.family == entropy_family::von_neumann ? 1.0 : alpha;
    out["per_cut"] = {{"ab_cd", entropy(cut_spectrum(s, cut::ab_cd), m)},
                      {"ac_bd", entropy(cut_spectrum(s, cut::ac_bd), m)},
                      {"ad_bc", entropy(cut_spectrum(s, cut::ad_bc), m)}};
    out["E1"] = avg_entropy_E1(s, m);
    out["E2"] = avg_entropy_E2(s, m);
    // Tsallis requests at alpha ~ 1 return the von Neumann limit in nats;
    // everything else is bits (Renyi, vN) or dimensionless (Tsallis)
    if (m.family == entropy_family::renyi || m.family == entropy_family::von_neumann)
        out["units"] = "bits";
    else
        out["units"] = std::abs(m.alpha - 1.0) < 1e-6 ? "nats" : "dimensionless";
    emit(out);
    return exit_ok;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int samples_override) {
    verify_options opt;
    opt.seed = seed;
    if (suite == "fast")
        opt.samples = 1000;
    else if (suite == "full")
        opt.samples = 100000;
    else
        throw cli_error{exit_config, "suite must be 'fast' or 'full'"};
    if (samples_override > 0) opt.samples = samples_override;

    const auto results = run_verification(opt);
    bool all_pass = true;
    for (const auto& r : results) {
        all_pass &= r.pass;
        std::printf("[%s] %-40s worst=%-12.3e%s%s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.worst, r.note.empty() ? "" : " ", r.note.c_str());
    }
    std::printf("%zu properties, %s\n", results.size(), all_pass ? "all passed" : "FAILURES");
    return all_pass ? exit_ok : exit_verify_failure;
}

int cmd_figure(const std::string& states_csv, const std::string& family, double amin, double amax,
               double astep, const std::string& out_path) {
    if (family != "tsallis" && family != "renyi")
        throw cli_error{exit_config, "figure family must be 'tsallis' or 'renyi'"};
    if (!(astep > 0.0) || !(amin > 0.0) || !(amax >= amin))
        throw cli_error{exit_config, "need 0 < alpha-min <= alpha-max and alpha-step > 0"};

    std::vector<std::string> labels;
    std::string tok;
    std::istringstream ss(states_csv);
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) labels.push_back(tok);
    if (labels.empty()) throw cli_error{exit_config, "no states given"};

    // spectra are alpha-independent: resolve once per state
    struct entry {
        std::string label;
        std::array<spectrum4, 3> spectra;
    };
    std::vector<entry> states;
    for (const auto& label : labels) {
        const pure_state4 s = resolve_state_label(label);
        states.push_back({label,
                          {cut_spectrum(s, cut::ab_cd), cut_spectrum(s, cut::ac_bd),
                           cut_spectrum(s, cut::ad_bc)}});
    }

    std::vector<double> alphas;
    for (int k = 0;; ++k) {
        const double a = amin + k * astep;
        if (a > amax + 1e-9 * astep) break;
        alphas.push_back(std::min(a, amax));
    }

    const entropy_family fam =
        family == "tsallis" ? entropy_family::tsallis : entropy_family::renyi;
    std::vector<std::vector<double>> values(alphas.size(),
                                            std::vector<double>(states.size(), 0.0));
    parallel_for(alphas.size(), [&](std::size_t i) {
        for (std::size_t j = 0; j < states.size(); ++j) {
            const entropy_measure m{fam, alphas[i]};
            values[i][j] = (entropy(states[j].spectra[0], m) + entropy(states[j].spectra[1], m) +
                            entropy(states[j].spectra[2], m)) /
                           3.0;
        }
    });

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty() && out_path != "-") {
        file.open(out_path);
        if (!file) throw cli_error{exit_io, "cannot write to '" + out_path + "'"};
        out = &file;
    }
    *out << "alpha,family,state,value\n";
    for (std::size_t i = 0; i < alphas.size(); ++i)
        for (std::size_t j = 0; j < states.size(); ++j)
            *out << format_sig12(alphas[i]) << ',' << family << ',' << states[j].label << ','
                 << format_sig12(values[i][j]) << '\n';
    out->flush();
    if (out != &std::cout && !*out) throw cli_error{exit_io, "short write to '" + out_path + "'"};
    return exit_ok;
}

int cmd_optimize(const std::string& objective_text, const std::string& family_text,
                 const std::string& direction_text, int restarts, std::uint64_t seed,
                 int max_iters, double tolerance) {
    search_config cfg;
    cfg.objective = parse_objective(objective_text);
    if (family_text == "classA")
        cfg.family = search_family::class_a;
    else if (family_text == "classM")
        cfg.family = search_family::class_m;
    else if (family_text == "eqlast")
        cfg.family = search_family::eq_last_theta;
    else
        throw cli_error{exit_config, "family must be classA, classM or eqlast"};
    if (direction_text == "maximize")
        cfg.direction = search_direction::maximize;
    else if (direction_text == "minimize")
        cfg.direction = search_direction::minimize;
    else
        throw cli_error{exit_config, "direction must be maximize or minimize"};
    cfg.restarts = restarts;
    cfg.seed = seed;
    cfg.max_iters = max_iters;
    cfg.tolerance = tolerance;

    if (cfg.family == search_family::class_m && cfg.direction == search_direction::minimize &&
        (cfg.objective.family != entropy_family::tsallis ||
         std::abs(cfg.objective.alpha - 1.0) < 1e-6))
        throw cli_error{exit_config,
                        "minimize over classM is supported only for tsallis with alpha != 1"};

    search_result res;
    try {
        res = optimize_E2(cfg);
    } catch (const std::invalid_argument& e) {
        throw cli_error{exit_config, e.what()};
    }

    // regime-predicted winner, for the equivalence verdict
    std::string predicted;
    const double alpha = cfg.objective.alpha;
    if (cfg.direction == search_direction::maximize) {
        switch (cfg.objective.family) {
            case entropy_family::tsallis: predicted = alpha > 2.0 ? "L" : "M"; break;
            case entropy_family::von_neumann: predicted = "M"; break;
            case entropy_family::renyi:
                // proven for alpha >= 2; conjectured split at the crossover below
                predicted = alpha >= crossover_alpha(1.3, 1.9) ? "cluster" : "M";
                break;
        }
    } else {
        predicted = (cfg.objective.family == entropy_family::tsallis && alpha > 2.0) ? "M" : "L";
    }

    auto verdict_against = [&](const std::string& name) {
        if (name == "cluster") {
            for (state_name c : {state_name::c1, state_name::c2, state_name::c3})
                if (lu_equivalent(res.best_state, named_state(c), 1e-5) == lu_verdict::equivalent)
                    return lu_verdict::equivalent;
            return lu_verdict::inequivalent;
        }
        return lu_equivalent(res.best_state, named_state(name), 1e-5);
    };
    const lu_verdict verdict = verdict_against(predicted);
    const char* verdict_text = verdict == lu_verdict::equivalent     ? "equivalent"
                               : verdict == lu_verdict::inequivalent ? "inequivalent"
                                                                     : "inconclusive";

    const invariant_vector_t iv = invariant_vector(res.best_state);
    json out;
    out["best_value"] = res.best_value;
    out["best_params"] = res.best_params;
    out["restart_values"] = res.trace;
    out["best_state"] = make_state_document(res.best_state);
    out["invariants"] = json::object();
    out["invariants"]["E"] = json::array();
    for (const cplx& e : iv.E) out["invariants"]["E"].push_back(complex_pair(e));
    out["invariants"]["f"] = iv.f;
    out["predicted_winner"] = predicted;
    out["verdict_vs_predicted"] = verdict_text;
    emit(out);
    return exit_ok;
}

int cmd_sample(const std::string& family, std::uint64_t seed, int count,
               const std::string& out_path, std::optional<double> p_opt,
               std::optional<double> theta_opt) {
    if (count < 1) throw cli_error{exit_config, "count must be >= 1"};

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty() && out_path != "-") {
        file.open(out_path);
        if (!file) throw cli_error{exit_io, "cannot write to '" + out_path + "'"};
        out = &file;
    }

    std::mt19937_64 rng(seed);
    for (int i = 0; i < count; ++i) {
        pure_state4 s;
        if (family == "A")
            s = sample_class_A(rng);
        else if (family == "M")
            s = sample_class_M(rng).first;
        else if (family == "Tmin")
            s = sample_T_min(rng);
        else if (family == "C") {
            double p, theta;
            if (p_opt && theta_opt) {
                p = *p_opt;
                theta = *theta_opt;
            } else {
                // rejection-sample the admissible region
                for (;;) {
                    p = detail::uniform(rng, 0.5, 1.0);
                    theta = detail::uniform(rng, 0.0, 2.0 * std::numbers::pi);
                    const double c = std::cos(theta);
                    if (c * c <= (1.0 - p) / (3.0 * p)) break;
                }
            }
            try {
                s = sample_class_C(p, theta);
            } catch (const std::invalid_argument& e) {
                throw cli_error{exit_config, e.what()};
            }
        } else {
            throw cli_error{exit_config,
                            "unknown family '" + family + "' (expected A, M, C or Tmin)"};
        }
        *out << make_state_document(s).dump() << "\n";
    }
    out->flush();
    if (out != &std::cout && !*out) throw cli_error{exit_io, "short write to '" + out_path + "'"};
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polynomial invariants, tangles and alpha-entropies of 4-qubit pure states"};
    app.require_subcommand(1);

    std::string input = "-";
    std::string family = "tsallis";
    double alpha = 2.0;
    std::string suite = "fast";
    std::uint64_t seed = 7;
    int samples = 0;
    std::string states_csv = "M,L,C1";
    double amin = 0.1, amax = 6.0, astep = 0.01;
    std::string out_path;
    std::string objective = "tsallis:3";
    std::string opt_family = "classA";
    std::string direction = "maximize";
    int restarts = 64;
    int max_iters = 4000;
    double tolerance = 1e-12;
    int count = 1;
    std::string sample_family = "A";
    double p_val = 0.0, theta_val = 0.0;

    auto* c_inv = app.add_subcommand("invariants", "E_0..E_3, f_0..f_6 and the 4-tangle");
    c_inv->add_option("input", input, "state JSON file, or - for stdin");

    auto* c_tan = app.add_subcommand("tangles", "per-cut tangles, tau1, tau2, 4-tangle");
    c_tan->add_option("input", input, "state JSON file, or - for stdin");

    auto* c_spc = app.add_subcommand("spectra", "spectra of the three 2+2 cut marginals");
    c_spc->add_option("input", input, "state JSON file, or - for stdin");

    auto* c_ent = app.add_subcommand("entropy", "per-cut and averaged alpha-entropies");
    c_ent->add_option("input", input, "state JSON file, or - for stdin");
    c_ent->add_option("--family", family, "tsallis | renyi | vn");
    c_ent->add_option("--alpha", alpha, "entropy order (ignored for vn)");

    auto* c_ver = app.add_subcommand("verify", "run the property-verification suite");
    c_ver->add_option("--suite", suite, "fast (1e3 samples) or full (1e5)");
    c_ver->add_option("--seed", seed, "rng seed");
    c_ver->add_option("--samples", samples, "override the per-property sample count");

    auto* c_fig = app.add_subcommand("figure", "emit long-format CSV entropy curves");
    c_fig->add_option("--states", states_csv, "comma list: GHZ4,C1,C2,C3,L,M,eqlast:<theta>");
    c_fig->add_option("--family", family, "tsallis | renyi");
    c_fig->add_option("--alpha-min", amin, "grid start (inclusive)");
    c_fig->add_option("--alpha-max", amax, "grid end (inclusive)");
    c_fig->add_option("--alpha-step", astep, "grid step");
    c_fig->add_option("-o,--output", out_path, "output path (default stdout)");

    auto* c_opt = app.add_subcommand("optimize", "multistart optimization of the cut average");
    c_opt->add_option("--objective", objective, "vn or tsallis:<a> or renyi:<a>");
    c_opt->add_option("--family", opt_family, "classA | classM | eqlast");
    c_opt->add_option("--direction", direction, "maximize | minimize");
    c_opt->add_option("--restarts", restarts, "independent restarts");
    c_opt->add_option("--seed", seed, "rng seed");
    c_opt->add_option("--max-iters", max_iters, "iterations per restart");
    c_opt->add_option("--tolerance", tolerance, "simplex diameter stop");

    auto* c_smp = app.add_subcommand("sample", "newline-delimited state documents");
    c_smp->add_option("--family", sample_family, "A | M | C | Tmin");
    c_smp->add_option("--seed", seed, "rng seed");
    c_smp->add_option("--count", count, "number of samples");
    c_smp->add_option("-o,--output", out_path, "output path (default stdout)");
    auto* p_flag = c_smp->add_option("--p", p_val, "class-C weight (with --theta)");
    auto* t_flag = c_smp->add_option("--theta", theta_val, "class-C phase (with --p)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return exit_config;
    }

    try {
        if (c_inv->parsed()) return cmd_invariants(input);
        if (c_tan->parsed()) return cmd_tangles(input);
        if (c_spc->parsed()) return cmd_spectra(input);
        if (c_ent->parsed()) return cmd_entropy(input, family, alpha);
        if (c_ver->parsed()) return cmd_verify(suite, seed, samples);
        if (c_fig->parsed()) return cmd_figure(states_csv, family, amin, amax, astep, out_path);
        if (c_opt->parsed())
            return cmd_optimize(objective, opt_family, direction, restarts, seed, max_iters,
                                tolerance);
        if (c_smp->parsed()) {
            std::optional<double> p_opt, theta_opt;
            if (p_flag->count()) p_opt = p_val;
            if (t_flag->count()) theta_opt = theta_val;
            if (p_opt.has_value() != theta_opt.has_value())
                throw cli_error{exit_config, "--p and --theta must be given together"};
            return cmd_sample(sample_family, seed, count, out_path, p_opt, theta_opt);
        }
    } catch (const cli_error& e) {
        std::cerr << "qent4: error: " << e.message << "\n";
        return e.code;
    } catch (const std::invalid_argument& e) {
        std::cerr << "qent4: error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "qent4: error: " << e.what() << "\n";
        return exit_io;
    }
    return exit_config;
}
