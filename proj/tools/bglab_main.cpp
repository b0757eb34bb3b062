// Command-line front end: every subsystem behind one binary with
// reproducible seeds and machine-readable output.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>
#include <json.hpp>

#include "bglab/acceptance.hpp"
#include "bglab/amalgam.hpp"
#include "bglab/approx_rep.hpp"
#include "bglab/group_words.hpp"
#include "bglab/moments.hpp"
#include "bglab/optimizer.hpp"
#include "bglab/rng.hpp"

namespace {

using nlohmann::json;
using namespace bglab;

void apply_thread_env() {
#ifdef _OPENMP
    if (const char* env = std::getenv("BGLAB_THREADS")) {
        const int t = std::atoi(env);
        if (t > 0) omp_set_num_threads(t);
    }
#endif
}

// Injects config-file values as extra argv entries for options the user
// did not pass explicitly, so flags always win.
std::vector<std::string> with_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string config_path;
    for (std::size_t i = 0; i + 1 < args.size(); ++i)
        if (args[i] == "--config") config_path = args[i + 1];
    if (config_path.empty()) return args;

    std::ifstream in(config_path);
    if (!in) throw std::runtime_error("cannot open config file " + config_path);
    json cfg = json::parse(in);

    auto has_flag = [&](const std::string& name) {
        const std::string flag = "--" + name;
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
        return false;
    };
    // Top-level keys apply globally; an object named like the current
    // subcommand applies to it.
    json effective = json::object();
    for (auto& [key, value] : cfg.items()) {
        if (value.is_object()) {
            if (!args.empty() && args[0] == key)
                for (auto& [k2, v2] : value.items()) effective[k2] = v2;
        } else {
            effective[key] = value;
        }
    }
    for (auto& [key, value] : effective.items()) {
        if (has_flag(key)) continue;
        if (value.is_boolean()) {
            if (value.get<bool>()) args.push_back("--" + key);
        } else {
            args.push_back("--" + key);
            args.push_back(value.is_string() ? value.get<std::string>() : value.dump());
        }
    }
    return args;
}

void emit(const json& out, const std::string& path) {
    const std::string text = out.dump(2) + "\n";
    if (path.empty()) {
        std::fputs(text.c_str(), stdout);
    } else {
        std::ofstream f(path);
        f << text;
    }
}

void stamp(json& out, bool deterministic) {
    if (!deterministic)
        out["generated_unix_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                                       std::chrono::system_clock::now().time_since_epoch())
                                       .count();
}

json a13_json(const A13Report& rep) {
    json v = json::array();
    for (const auto& viol : rep.violations) {
        const char* rule = viol.rule == A13Rule::A2 ? "A2" : viol.rule == A13Rule::A3 ? "A3" : "A1";
        v.push_back({{"position", viol.position}, {"rule", rule}});
    }
    return {{"satisfied", rep.satisfied}, {"violations", v}};
}

std::string dotted(const std::vector<int>& idx) {
    std::string s;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i) s += '.';
        s += std::to_string(idx[i]);
    }
    return s;
}

void write_moments_csv(const MomentVector& mv, const std::string& path) {
    std::ofstream f(path);
    f << "index,re,im\n";
    char buf[128];
    for (std::size_t k = 0; k < mv.values.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g\n",
                      dotted(mv.index_set.indices[k]).c_str(), mv.values[k].real(),
                      mv.values[k].imag());
        f << buf;
    }
}

json moments_json(const MomentVector& mv) {
    json arr = json::array();
    for (std::size_t k = 0; k < mv.values.size(); ++k)
        arr.push_back({{"index", dotted(mv.index_set.indices[k])},
                       {"re", mv.values[k].real()},
                       {"im", mv.values[k].imag()}});
    return arr;
}

std::vector<double> parse_value_list(const std::string& text) {
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) vals.push_back(std::stod(tok));
    }
    return vals;
}

FunctionalCoeffs load_coeffs(const std::string& coeff_text, int n) {
    FunctionalCoeffs A = FunctionalCoeffs::make(n);
    std::string text = coeff_text;
    if (!text.empty() && text.find(',') == std::string::npos &&
        (text.size() > 5 && text.substr(text.size() - 5) == ".json")) {
        std::ifstream in(text);
        if (!in) throw std::runtime_error("cannot open coefficient file " + text);
        json j = json::parse(in);
        const auto& rows = j.contains("a_ij") ? j["a_ij"] : j;
        for (int i = 0; i < n; ++i)
            for (int k = i; k < n; ++k) A.at(i, k) = rows.at(i).at(k).get<double>();
        return A;
    }
    const std::vector<double> vals = parse_value_list(text);
    if (vals.size() != PairMoments::tri_size(n))
        throw std::runtime_error("expected " + std::to_string(PairMoments::tri_size(n)) +
                                 " upper-triangular coefficients");
    std::size_t k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) A.at(i, j) = vals[k++];
    return A;
}

}  // namespace

int main(int argc, char** argv) {
    apply_thread_env();

    CLI::App app{"verification lab for the amalgamated-trace representation toolkit"};
    app.require_subcommand(1);
    std::string config_path, out_path;
    bool deterministic = false;
    app.add_option("--config", config_path, "JSON config file mirroring the flags");
    app.add_option("--out", out_path, "write the JSON report to this path");
    app.add_flag("--deterministic", deterministic, "suppress timestamps and timings");

    // approx-rep
    auto* rep_cmd = app.add_subcommand("approx-rep", "build the 6n model and verify its properties");
    long rep_n = 4;
    int rep_pmax = 6;
    rep_cmd->add_option("--n", rep_n, "block count (dimension 6n)")->required();
    rep_cmd->add_option("--pmax", rep_pmax, "largest exponent in the vanishing checks");

    // word
    auto* word_cmd = app.add_subcommand("word", "group word engine");
    std::string word_normalize, word_check;
    std::vector<std::string> word_equal;
    word_cmd->add_option("--normalize", word_normalize, "rewrite into the sign-form normal form");
    word_cmd->add_option("--check", word_check, "parse, reduce and report on a word");
    word_cmd->add_option("--equal", word_equal, "decide equality of two words")->expected(2);

    // trace
    auto* trace_cmd = app.add_subcommand("trace", "amalgamated trace of a word in A = a1 v, B = b");
    std::string trace_word;
    long trace_n = 4;
    int mc_samples = 0, mc_aux = 16, mc_probes = 16;
    std::uint64_t trace_seed = 1;
    trace_cmd->add_option("--word", trace_word, "word in a, b")->required();
    trace_cmd->add_option("--n", trace_n, "model size");
    trace_cmd->add_option("--mc-samples", mc_samples, "Monte Carlo samples (0 = skip)");
    trace_cmd->add_option("--mc-aux", mc_aux, "auxiliary dimension of the sampled model");
    trace_cmd->add_option("--mc-probes", mc_probes, "trace probes per sample");
    trace_cmd->add_option("--seed", trace_seed, "sampling seed");

    // moments
    auto* mom_cmd = app.add_subcommand("moments", "moment vectors of random tuples");
    std::string mom_kind = "unitary";
    int mom_n = 2, mom_p = 2, mom_dim = 3;
    std::uint64_t mom_seed = 1;
    bool mom_gauge = false;
    std::string mom_csv;
    mom_cmd->add_option("kind", mom_kind, "unitary | projection | hull")
        ->check(CLI::IsMember({"unitary", "projection", "hull"}));
    mom_cmd->add_option("--n", mom_n, "tuple size");
    mom_cmd->add_option("--p", mom_p, "maximal product length");
    mom_cmd->add_option("--dim", mom_dim, "matrix dimension");
    mom_cmd->add_option("--seed", mom_seed, "tuple seed");
    mom_cmd->add_flag("--gauge", mom_gauge, "also emit the gauge-averaged vector");
    mom_cmd->add_option("--csv", mom_csv, "write the moment vector as CSV");
    std::string mom_values;
    mom_cmd->add_option("--values", mom_values, "explicit pair moments for hull mode");

    // hull
    auto* hull_cmd = app.add_subcommand("hull", "abelian hull membership with certificate");
    int hull_n = 2;
    std::string hull_values;
    hull_cmd->add_option("--n", hull_n, "number of projections")->required();
    hull_cmd->add_option("--values", hull_values, "comma list, upper triangle row-major")
        ->required();

    // optimize
    auto* opt_cmd = app.add_subcommand("optimize", "maximize a linear functional on pair moments");
    int opt_n = 2, opt_restarts = 16;
    std::size_t opt_dim = 3;
    std::string opt_coeffs, opt_traj;
    std::uint64_t opt_seed = 1;
    opt_cmd->add_option("--n", opt_n, "number of projections")->required();
    opt_cmd->add_option("--dim", opt_dim, "matrix dimension")->required();
    opt_cmd->add_option("--coeffs", opt_coeffs, "inline comma list or a .json file")->required();
    opt_cmd->add_option("--restarts", opt_restarts, "random restarts");
    opt_cmd->add_option("--seed", opt_seed, "restart seed");
    opt_cmd->add_option("--trajectory", opt_traj, "write the ascent trajectory as CSV");

    // suite
    auto* suite_cmd = app.add_subcommand("suite", "run the full verification battery");
    std::uint64_t suite_seed = 7;
    suite_cmd->add_option("--seed", suite_seed, "battery seed");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    std::vector<std::string> args;
    try {
        args = with_config(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    try {
        std::vector<const char*> cargs;
        cargs.push_back(argv[0]);
        for (const auto& a : args) cargs.push_back(a.c_str());
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (rep_cmd->parsed()) {
            const ApproxRep rep = build_rep(rep_n);
            const RepReport rpt = verify_properties(rep, rep_pmax);
            json out = {{"n", rpt.n},
                        {"dim", rep.dim},
                        {"relation_error", rpt.relation_error},
                        {"centered_norm_p1", rpt.centered_norms.at(1)},
                        {"centered_norm_m1", rpt.centered_norms.at(-1)},
                        {"centered_norm_p2", rpt.centered_norms.at(2)},
                        {"centered_norm_m2", rpt.centered_norms.at(-2)},
                        {"property3_residual", rpt.property3_residual},
                        {"pn_lower", rpt.pn_lower},
                        {"eq_phase_residual", rpt.eq_phase_residual}};
            stamp(out, deterministic);
            emit(out, out_path);
            return 0;
        }

        if (word_cmd->parsed()) {
            if (word_equal.empty() && word_normalize.empty() && word_check.empty()) {
                std::cerr << "word: one of --normalize, --check, --equal is required\n";
                return 2;
            }
            json out;
            if (!word_equal.empty()) {
                const GroupWord w1 = GroupWord::parse(word_equal[0]);
                const GroupWord w2 = GroupWord::parse(word_equal[1]);
                out = {{"input", w1.format()},
                       {"other", w2.format()},
                       {"equal", britton_equal(w1, w2)}};
            } else if (!word_normalize.empty()) {
                const GroupWord w = GroupWord::parse(word_normalize);
                const GroupWord norm = normalize_a13(w);
                out = {{"input", w.format()},
                       {"output", norm.format()},
                       {"equal", britton_equal(w, norm)},
                       {"a13", a13_json(a13_check(norm))},
                       {"a_degree", total_a_degree(w).str()}};
            } else {
                const GroupWord w = GroupWord::parse(word_check);
                out = {{"input", word_check},
                       {"output", w.format()},
                       {"is_identity", britton_is_identity(w)},
                       {"a13", a13_json(a13_check(w))},
                       {"a_degree", total_a_degree(w).str()}};
            }
            stamp(out, deterministic);
            emit(out, out_path);
            return 0;
        }

        if (trace_cmd->parsed()) {
            const GroupWord w = GroupWord::parse(trace_word);
            const ApproxRep rep = build_rep(trace_n);
            const AmalgamEvaluator ev(rep);
            const Claim2Report c2 = claim2_check(w, ev);
            json out = {{"word", w.format()},
                        {"n", trace_n},
                        {"tau_re", c2.tau_value.real()},
                        {"tau_im", c2.tau_value.imag()},
                        {"abs_tau", std::abs(c2.tau_value)},
                        {"is_identity", c2.is_identity},
                        {"wrapped", c2.wrapped},
                        {"a13", a13_json(a13_check(w))}};
            if (mc_samples > 0) {
                McConfig cfg;
                cfg.samples = mc_samples;
                cfg.aux_dim = mc_aux;
                cfg.probes = mc_probes;
                cfg.seed = trace_seed;
                const McResult mc = mc_trace(w, rep, cfg);
                out["mc"] = {{"mean_re", mc.mean.real()},
                             {"mean_im", mc.mean.imag()},
                             {"std_error", mc.std_error},
                             {"samples", mc.samples},
                             {"sigmas", std::abs(mc.mean - c2.tau_value) / mc.std_error}};
            }
            stamp(out, deterministic);
            emit(out, out_path);
            return 0;
        }

        if (mom_cmd->parsed()) {
            json out;
            if (mom_kind == "hull") {
                const std::vector<double> vals = parse_value_list(mom_values);
                PairMoments pm;
                pm.n = mom_n;
                pm.values = vals;
                if (vals.size() != PairMoments::tri_size(mom_n))
                    throw std::runtime_error("hull: bad value count");
                const HullCertificate cert = hull_membership(pm);
                out["member"] = cert.member;
                if (cert.member) {
                    json w = json::object();
                    for (const auto& [mask, weight] : cert.weights)
                        w[std::to_string(mask)] = weight;
                    out["weights"] = w;
                } else {
                    out["separating_functional"] = cert.separating_functional;
                    out["violation"] = cert.violation;
                }
            } else if (mom_kind == "unitary") {
                Rng rng = make_rng(mom_seed);
                std::vector<CMatrix> us;
                for (int i = 0; i < mom_n; ++i)
                    us.push_back(random_haar_unitary(static_cast<std::size_t>(mom_dim), rng));
                const MomentVector mv = unitary_moments(us, mom_p);
                out = {{"n", mom_n}, {"p", mom_p}, {"dim", mom_dim}, {"moments", moments_json(mv)}};
                if (mom_gauge) out["gauge_averaged"] = moments_json(gauge_average(mv));
                if (!mom_csv.empty()) write_moments_csv(mv, mom_csv);
            } else {
                Rng rng = make_rng(mom_seed);
                std::vector<CMatrix> es;
                for (int i = 0; i < mom_n; ++i)
                    es.push_back(random_projection(static_cast<std::size_t>(mom_dim), rng));
                const PairMoments pm = projection_moments(es);
                json vals = json::array();
                for (int i = 0; i < mom_n; ++i)
                    for (int j = i; j < mom_n; ++j)
                        vals.push_back({{"i", i + 1}, {"j", j + 1}, {"value", pm.at(i, j)}});
                out = {{"n", mom_n}, {"dim", mom_dim}, {"pair_moments", vals}};
            }
            stamp(out, deterministic);
            emit(out, out_path);
            return 0;
        }

        if (hull_cmd->parsed()) {
            PairMoments pm;
            pm.n = hull_n;
            pm.values = parse_value_list(hull_values);
            if (pm.values.size() != PairMoments::tri_size(hull_n))
                throw std::runtime_error("hull: expected " +
                                         std::to_string(PairMoments::tri_size(hull_n)) +
                                         " values");
            const HullCertificate cert = hull_membership(pm);
            json out = {{"n", hull_n}, {"member", cert.member}};
            if (cert.member) {
                json w = json::object();
                for (const auto& [mask, weight] : cert.weights)
                    w[std::to_string(mask)] = weight;
                out["weights"] = w;
            } else {
                out["separating_functional"] = cert.separating_functional;
                out["violation"] = cert.violation;
            }
            stamp(out, deterministic);
            emit(out, out_path);
            return 0;
        }

        if (opt_cmd->parsed()) {
            const FunctionalCoeffs A = load_coeffs(opt_coeffs, opt_n);
            SolveOptions so;
            so.restarts = opt_restarts;
            so.seed = opt_seed;
            so.record_trajectory = !opt_traj.empty();
            const OptimizerState st = solve(A, opt_dim, so);
            json residuals = json::array();
            for (const auto& k : st.residuals)
                residuals.push_back({{"commutator_hs", k.commutator_hs},
                                     {"corner_pos_min", k.corner_pos_min},
                                     {"corner_neg_max", k.corner_neg_max},
                                     {"tau_e_omega", k.tau_e_omega},
                                     {"tau_comp_omega", k.tau_comp_omega}});
            const PairMoments pm = projection_moments(st.es);
            json moments = json::array();
            for (int i = 0; i < opt_n; ++i)
                for (int j = i; j < opt_n; ++j)
                    moments.push_back({{"i", i + 1}, {"j", j + 1}, {"value", pm.at(i, j)}});
            json out = {{"objective", st.objective},
                        {"converged", st.converged},
                        {"sweeps", st.sweeps},
                        {"moments", moments},
                        {"residuals", residuals}};
            if (static_cast<std::size_t>(opt_n) * opt_dim <= 24)
                out["brute_force"] = brute_force_diagonal(A, opt_dim);
            if (!opt_traj.empty()) {
                std::ofstream f(opt_traj);
                f << "step,objective\n";
                char buf[64];
                for (std::size_t s = 0; s < st.trajectory.size(); ++s) {
                    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", s, st.trajectory[s]);
                    f << buf;
                }
            }
            stamp(out, deterministic);
            emit(out, out_path);
            return 0;
        }

        if (suite_cmd->parsed()) {
            SuiteOptions so;
            so.seed = suite_seed;
            so.deterministic = deterministic;
            const SuiteReport rpt = run_acceptance(so);
            std::fputs(format_summary(rpt).c_str(), stdout);
            json out = {{"seed", suite_seed},
                        {"all_pass", rpt.all_pass},
                        {"criteria", report_json(rpt.criteria, !deterministic)}};
            stamp(out, deterministic);
            if (!out_path.empty()) emit(out, out_path);
            return rpt.all_pass ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
