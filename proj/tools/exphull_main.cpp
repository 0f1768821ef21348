// exphull: bounded checkers for finitely presented partial exponential
// fields, subvarieties of G_a^n x G_m^n under integer-matrix actions, the
// Laurent support-permutation engine, and desk-scale Mordell-Lang
// decompositions in algebraic tori.

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "exphull/config_io.hpp"
#include "exphull/report.hpp"

using namespace exphull;

namespace {

struct CommonOpts {
    long height = 3;
    long word = 8;
    int depth = 2;
    long budget = 1000000;
    int threads = 1;
    std::string output;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--height", opts.height, "height bound for subspace/matrix searches");
    cmd->add_option("--word", opts.word, "word-length bound for group enumeration");
    cmd->add_option("--depth", opts.depth, "division depth for group enumeration");
    cmd->add_option("--budget", opts.budget, "Groebner reduction-step budget");
    cmd->add_option("--threads", opts.threads, "search worker threads (results are identical)");
    cmd->add_option("--output", opts.output, "write the report to this path instead of stdout");
}

void apply_common(const CommonOpts& opts) {
    if (opts.height < 1 || opts.word < 1 || opts.depth < 1)
        throw Error("bounds must be >= 1");
    long budget = opts.budget;
    if (budget == 1000000) {
        if (const char* env = std::getenv("EXPHULL_BUDGET")) budget = std::atol(env);
    }
    if (budget < 1) throw Error("budget must be >= 1");
    set_groebner_budget(budget);
    set_search_threads(opts.threads);
}

json base_report(const std::string& command, const CommonOpts& opts) {
    json report;
    report["command"] = command;
    report["bounds"] = {
        {"height", opts.height}, {"word", opts.word}, {"depth", opts.depth},
        {"budget", opts.budget}};
    return report;
}

void config_flags(json& report, const GammaConfig& cfg) {
    report["flags"] = {{"irreducible_asserted", cfg.irreducible_asserted},
                       {"conditional_on_irreducibility", true}};
}

int emit(json report, const CommonOpts& opts, int code,
         std::chrono::steady_clock::time_point start) {
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    report["timing_ms"] = elapsed;
    std::string text = dump_report(report);
    if (opts.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(opts.output);
        if (!out) throw Error("cannot write " + opts.output);
        out << text;
    }
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exphull: predimension, strong hulls, rotundity, and Mordell-Lang at desk scale"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string config_path, variety_path, torus_path, group_path, eq_path, dec_path;
    std::string sub_spec = "full", over_spec = "kernel", base_spec, candidate_spec = "full";
    std::string point_spec, sequence_spec, character_spec;

    auto* cmd_delta = app.add_subcommand("delta", "predimension of sub over over");
    cmd_delta->add_option("--config", config_path, "configuration file")->required();
    cmd_delta->add_option("--sub", sub_spec, "subspace (full|kernel|base|span(...))");
    cmd_delta->add_option("--over", over_spec, "base subspace of the relative predimension");
    add_common(cmd_delta, opts);

    auto* cmd_schanuel = app.add_subcommand("schanuel", "bounded Schanuel check");
    cmd_schanuel->add_option("--config", config_path)->required();
    add_common(cmd_schanuel, opts);

    auto* cmd_strong = app.add_subcommand("strong", "bounded strongness of a subspace");
    cmd_strong->add_option("--config", config_path)->required();
    cmd_strong->add_option("--sub", sub_spec)->required();
    add_common(cmd_strong, opts);

    auto* cmd_hull = app.add_subcommand("hull", "bounded hull certificate");
    cmd_hull->add_option("--config", config_path)->required();
    cmd_hull->add_option("--base", base_spec, "defaults to the config base prefix");
    cmd_hull->add_option("--candidate", candidate_spec)->required();
    add_common(cmd_hull, opts);

    auto* cmd_rotund = app.add_subcommand("rotund", "bounded rotundity of a variety");
    cmd_rotund->add_option("--variety", variety_path)->required();
    add_common(cmd_rotund, opts);

    auto* cmd_free = app.add_subcommand("free", "bounded freeness of a variety");
    cmd_free->add_option("--variety", variety_path)->required();
    add_common(cmd_free, opts);

    auto* cmd_dagger = app.add_subcommand("dagger", "dagger-set membership of a point");
    cmd_dagger->add_option("--variety", variety_path)->required();
    cmd_dagger->add_option("--config", config_path)->required();
    cmd_dagger->add_option("--point", point_spec, "rows 'combo; combo; ...'")->required();
    cmd_dagger->add_option("--base", base_spec, "independence base (default kernel)");
    add_common(cmd_dagger, opts);

    auto* cmd_coset = app.add_subcommand("coset-form", "coset-of-subtorus normal form");
    cmd_coset->add_option("--torus", torus_path, "torus ideal file")->required();
    add_common(cmd_coset, opts);

    auto* cmd_mlfind = app.add_subcommand("ml-find", "bounded coset discovery in a torus");
    cmd_mlfind->add_option("--torus", torus_path)->required();
    cmd_mlfind->add_option("--group", group_path)->required();
    add_common(cmd_mlfind, opts);

    auto* cmd_mlverify = app.add_subcommand("ml-verify", "verify a coset decomposition");
    cmd_mlverify->add_option("--torus", torus_path)->required();
    cmd_mlverify->add_option("--group", group_path)->required();
    cmd_mlverify->add_option("--dec", dec_path, "decomposition JSON (ml-find output)")->required();
    add_common(cmd_mlverify, opts);

    auto* cmd_case2 = app.add_subcommand("case2", "support-permutation pipeline");
    cmd_case2->add_option("--eq", eq_path, "functional equation file")->required();
    add_common(cmd_case2, opts);

    auto* cmd_witness = app.add_subcommand("witness", "witnessing-sequence check");
    cmd_witness->add_option("--config", config_path)->required();
    cmd_witness->add_option("--sequence", sequence_spec, "'pair:x, pair:y, ...'")->required();
    add_common(cmd_witness, opts);

    CLI11_PARSE(app, argc, argv);
    auto start = std::chrono::steady_clock::now();

    try {
        apply_common(opts);

        if (app.got_subcommand(cmd_delta)) {
            auto cfg = parse_gamma_config(read_file(config_path));
            auto sub = parse_subspace(cfg, sub_spec);
            auto over = parse_subspace(cfg, over_spec);
            long value = delta_value(cfg, sub, over);
            json report = base_report("delta", opts);
            config_flags(report, cfg);
            report["result"] = {{"value", value}};
            return emit(report, opts, 0, start);
        }
        if (app.got_subcommand(cmd_schanuel)) {
            auto cfg = parse_gamma_config(read_file(config_path));
            auto verdict = schanuel_check(cfg, opts.height);
            json report = base_report("schanuel", opts);
            config_flags(report, cfg);
            report["result"] = verdict_to_json(verdict);
            return emit(report, opts, exit_code_for(verdict), start);
        }
        if (app.got_subcommand(cmd_strong)) {
            auto cfg = parse_gamma_config(read_file(config_path));
            auto sub = parse_subspace(cfg, sub_spec);
            auto verdict = is_strong_bounded(cfg, sub, opts.height);
            json report = base_report("strong", opts);
            config_flags(report, cfg);
            report["result"] = verdict_to_json(verdict);
            return emit(report, opts, exit_code_for(verdict), start);
        }
        if (app.got_subcommand(cmd_hull)) {
            auto cfg = parse_gamma_config(read_file(config_path));
            auto base = base_spec.empty() ? base_subspace(cfg) : parse_subspace(cfg, base_spec);
            auto candidate = parse_subspace(cfg, candidate_spec);
            auto verdict = hull_certify(cfg, base, candidate, opts.height);
            json report = base_report("hull", opts);
            config_flags(report, cfg);
            report["result"] = verdict_to_json(verdict);
            return emit(report, opts, exit_code_for(verdict), start);
        }
        if (app.got_subcommand(cmd_rotund)) {
            auto vty = parse_variety(read_file(variety_path));
            auto verdict = is_rotund_bounded(vty, opts.height);
            json report = base_report("rotund", opts);
            report["flags"] = {{"conditional_on_irreducibility", true}};
            report["result"] = verdict_to_json(verdict);
            return emit(report, opts, exit_code_for(verdict), start);
        }
        if (app.got_subcommand(cmd_free)) {
            auto vty = parse_variety(read_file(variety_path));
            auto verdict = is_free_bounded(vty, opts.height);
            json report = base_report("free", opts);
            report["flags"] = {{"conditional_on_irreducibility", true}};
            report["result"] = verdict_to_json(verdict);
            return emit(report, opts, exit_code_for(verdict), start);
        }
        if (app.got_subcommand(cmd_dagger)) {
            auto vty = parse_variety(read_file(variety_path));
            auto cfg = parse_gamma_config(read_file(config_path));
            auto point = parse_point(cfg, point_spec);
            auto base = base_spec.empty() ? kernel_subspace(cfg) : parse_subspace(cfg, base_spec);
            bool member = dagger_member(vty, cfg, point, base);
            json report = base_report("dagger", opts);
            config_flags(report, cfg);
            report["result"] = {{"member", member}};
            return emit(report, opts, member ? 0 : 1, start);
        }
        if (app.got_subcommand(cmd_coset)) {
            auto w = parse_torus_ideal(read_file(torus_path));
            auto form = coset_normal_form(w, opts.height);
            json report = base_report("coset-form", opts);
            if (form) {
                report["result"] = {{"status", "coset"}, {"form", coset_form_to_json(*form)}};
                return emit(report, opts, 0, start);
            }
            report["result"] = {{"status", "no_coset_found_up_to_height"}};
            return emit(report, opts, 1, start);
        }
        if (app.got_subcommand(cmd_mlfind)) {
            auto w = parse_torus_ideal(read_file(torus_path));
            auto grp = parse_group(read_file(group_path));
            grp.depth = opts.depth;
            auto dec = find_cosets_bounded(w, grp, opts.word, opts.height);
            json report = base_report("ml-find", opts);
            report["result"] = decomposition_to_json(dec, nullptr);
            return emit(report, opts, 0, start);
        }
        if (app.got_subcommand(cmd_mlverify)) {
            auto w = parse_torus_ideal(read_file(torus_path));
            auto grp = parse_group(read_file(group_path));
            grp.depth = opts.depth;
            json dec_json = json::parse(read_file(dec_path));
            if (dec_json.contains("result")) dec_json = dec_json["result"]; // accept full reports
            auto dec = decomposition_from_json(dec_json, grp);
            auto verdict = verify_decomposition(w, grp, dec, opts.word);
            json report = base_report("ml-verify", opts);
            report["result"] = verdict_to_json(verdict);
            return emit(report, opts, exit_code_for(verdict), start);
        }
        if (app.got_subcommand(cmd_case2)) {
            auto eq = parse_equation(read_file(eq_path));
            json report = base_report("case2", opts);
            json result;
            auto s = support(eq.p);
            result["h"] = s.h();
            json sup = json::array();
            for (const auto& e : s.exponents) sup.push_back(e);
            result["support"] = sup;
            auto sol = solve_permutation(s, eq.n_matrix);
            int code = 0;
            if (sol) {
                result["mu"] = sol->perm;
                json uj = json::array();
                for (const auto& q : sol->u) uj.push_back(q.get_str());
                result["u"] = uj;
                Integer hfact(1);
                for (int i = 2; i <= s.h(); ++i) hfact *= i;
                auto iter = iterate_relation(eq.n_matrix, sol->u, hfact);
                json vj = json::array();
                for (const auto& q : iter.u_sum) vj.push_back(q.get_str());
                result["v"] = vj;
                auto beta = derive_beta_constraint(eq.p, eq.n_matrix);
                if (beta) {
                    json bj = json::array();
                    for (const auto& q : *beta) bj.push_back(q.get_str());
                    result["admissible_beta"] = bj;
                } else {
                    result["admissible_beta"] = "unconstrained";
                }
            } else {
                result["mu"] = nullptr;
                result["note"] = "no permutation-translation solution; equation (support) "
                                 "obstructed";
                code = 1;
            }
            result["equation_verified"] = verify_equation(eq);
            report["result"] = result;
            return emit(report, opts, code, start);
        }
        if (app.got_subcommand(cmd_witness)) {
            auto cfg = parse_gamma_config(read_file(config_path));
            std::vector<std::string> sequence;
            std::vector<WitnessFlag> flags;
            if (!sequence_spec.empty())
                for (const auto& part : [&] {
                         std::vector<std::string> parts;
                         std::string cur;
                         for (char c : sequence_spec) {
                             if (c == ',') {
                                 parts.push_back(cur);
                                 cur.clear();
                             } else
                                 cur += c;
                         }
                         parts.push_back(cur);
                         return parts;
                     }()) {
                    auto colon = part.find(':');
                    if (colon == std::string::npos)
                        throw ParseError(0, "sequence entries look like pair:x or pair:y");
                    std::string name = part.substr(0, colon);
                    std::string flag = part.substr(colon + 1);
                    name.erase(0, name.find_first_not_of(" \t"));
                    name.erase(name.find_last_not_of(" \t") + 1);
                    flag.erase(0, flag.find_first_not_of(" \t"));
                    flag.erase(flag.find_last_not_of(" \t") + 1);
                    sequence.push_back(name);
                    if (flag == "x")
                        flags.push_back(WitnessFlag::XAlgebraic);
                    else if (flag == "y")
                        flags.push_back(WitnessFlag::YAlgebraic);
                    else
                        throw ParseError(0, "flag must be x or y");
                }
            auto verdict = witnessing_check(cfg, sequence, flags);
            json report = base_report("witness", opts);
            config_flags(report, cfg);
            report["result"] = verdict_to_json(verdict);
            return emit(report, opts, exit_code_for(verdict), start);
        }
        throw Error("no subcommand dispatched");
    } catch (const std::exception& e) {
        json report;
        report["error"] = e.what();
        std::cout << dump_report(report);
        return 3;
    }
}
