// Command-line front end: instance generation, single runs, cut and
// branching score reports, minimum-tree oracle, and statement reproduction
// sweeps. All state flows through flags; output is json, csv, or dot.

#include "bnclab/cutsel.hpp"
#include "bnclab/engine.hpp"
#include "bnclab/instances.hpp"
#include "bnclab/io.hpp"
#include "bnclab/oracle.hpp"
#include "bnclab/repro.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace bnclab;

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file " + out_path);
    os << text;
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    return buf.str();
}

// "3", "3..8", or "3,5,10".
std::vector<int> parse_int_range(const std::string& text) {
    std::vector<int> out;
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const int lo = std::stoi(text.substr(0, dots));
        const int hi = std::stoi(text.substr(dots + 2));
        for (int v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    }
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(std::stoi(part));
    if (out.empty()) throw std::invalid_argument("empty range: " + text);
    return out;
}

struct FamilyFlags {
    std::string family;
    int n = 0;
    int m = 0;
    std::string s = "3/2";
    std::string eps = "1";
    std::string eta = "1/1000000";
    std::string instance_path;
};

void add_family_flags(CLI::App* cmd, FamilyFlags& flags) {
    cmd->add_option("--family", flags.family, "toy|gadget2d|triangles|blocks|scaled-blocks");
    cmd->add_option("--n", flags.n, "size parameter n");
    cmd->add_option("--m", flags.m, "block count m (gadget2d)");
    cmd->add_option("--s", flags.s, "toy parameter s in (1,2), rational");
    cmd->add_option("--eps", flags.eps, "triangles perturbation budget, rational");
    cmd->add_option("--eta", flags.eta, "eta for the scaled family, rational");
    cmd->add_option("--instance", flags.instance_path, "instance JSON file instead of a family");
}

struct Problem {
    Instance instance;
    std::map<std::string, std::vector<Cut>> pools;
    std::map<std::string, Rational> derived;
    std::string family = "file";
    std::string params;
};

Problem load_problem(const FamilyFlags& flags) {
    Problem p;
    if (!flags.instance_path.empty()) {
        LoadedInstance loaded = instance_from_json(read_file(flags.instance_path));
        p.instance = std::move(loaded.instance);
        p.pools = std::move(loaded.pools);
        p.params = flags.instance_path;
        return p;
    }
    if (flags.family.empty())
        throw CLI::ValidationError("--family or --instance is required");
    FamilySpec spec;
    spec.family = family_from_name(flags.family);
    spec.s = parse_rational(flags.s);
    spec.m = flags.m;
    spec.n = flags.n;
    spec.eps = parse_rational(flags.eps);
    spec.eta = parse_rational(flags.eta);
    GeneratedInstance g = generate(spec);
    p.instance = std::move(g.instance);
    p.pools = std::move(g.pools);
    p.derived = std::move(g.derived);
    p.family = flags.family;
    std::ostringstream ps;
    switch (spec.family) {
        case Family::Toy: ps << "s=" << to_string(spec.s); break;
        case Family::Gadget2D: ps << "m=" << spec.m; break;
        case Family::Triangles: ps << "n=" << spec.n << ",eps=" << to_string(spec.eps); break;
        case Family::BlockFamily: ps << "n=" << spec.n; break;
        case Family::ScaledBlockFamily:
            ps << "n=" << spec.n << ",eta=" << to_string(spec.eta);
            break;
    }
    p.params = ps.str();
    return p;
}

// "none", "pool:C1", or "select:<efficacy|parallelism|improvement|mix(l)>:<budget>".
std::vector<Cut> resolve_cuts(const Problem& p, const std::string& spec) {
    if (spec.empty() || spec == "none") return {};
    if (spec.rfind("pool:", 0) == 0) {
        const std::string name = spec.substr(5);
        const auto it = p.pools.find(name);
        if (it == p.pools.end()) throw std::invalid_argument("unknown cut pool " + name);
        return it->second;
    }
    if (spec.rfind("select:", 0) == 0) {
        const auto second = spec.find(':', 7);
        if (second == std::string::npos)
            throw std::invalid_argument("select needs a scorer and a budget");
        const std::string scorer_name = spec.substr(7, second - 7);
        const int budget = std::stoi(spec.substr(second + 1));
        std::vector<Cut> pool;
        for (const auto& [name, cuts] : p.pools)
            pool.insert(pool.end(), cuts.begin(), cuts.end());
        CutScorer scorer = ScorerEfficacy{};
        if (scorer_name == "efficacy")
            scorer = ScorerEfficacy{};
        else if (scorer_name == "parallelism")
            scorer = ScorerParallelism{};
        else if (scorer_name == "improvement")
            scorer = ScorerBoundImprovement{};
        else if (scorer_name.rfind("mix(", 0) == 0 && scorer_name.back() == ')')
            scorer = LambdaMix{parse_rational(scorer_name.substr(4, scorer_name.size() - 5))};
        else
            throw std::invalid_argument("unknown scorer " + scorer_name);
        const CutScoreContext ctx = make_root_context(p.instance);
        return select_top_m(pool, scorer, budget, ctx);
    }
    throw std::invalid_argument("bad --cuts value: " + spec);
}

PolicySpec resolve_policy(const std::string& name, const std::string& eta,
                          const std::string& epsilon, const std::string& kappa, int k,
                          const std::string& tiebreak) {
    PolicySpec policy;
    if (name == "sb")
        policy = PolicySpec::strong_branching(parse_rational(eta));
    else if (name == "perturbed-sb")
        policy = PolicySpec::perturbed_sb(parse_rational(epsilon), parse_rational(eta));
    else if (name == "capped-sb")
        policy = PolicySpec::capped_sb(parse_rational(kappa), TieBreak::SmallestIndex,
                                       parse_rational(eta));
    else if (name == "deviation")
        policy = PolicySpec::deviation(k, parse_rational(eta));
    else
        throw std::invalid_argument("unknown policy " + name);
    if (tiebreak == "prefer-y1")
        policy.tie_break = TieBreak::PreferY1ThenSmallest;
    else if (tiebreak != "smallest")
        throw std::invalid_argument("unknown tiebreak " + tiebreak);
    return policy;
}

int run_reproduce(const std::string& statement, const std::string& range_n,
                  const std::string& range_m, const std::string& range_k,
                  const std::string& eps, const std::string& eta, const std::string& format,
                  const std::string& out_path, const std::string& artifact_dir) {
    ExperimentReport rep;
    if (statement == "toy") {
        rep = reproduce_toy(parse_rational("3/2"));
    } else if (statement == "thm1") {
        const auto ms = parse_int_range(range_m.empty() ? "1..18" : range_m);
        if (ms.back() > 18) throw std::invalid_argument("thm1 guard: m <= 18");
        rep = reproduce_thm1(ms.front(), ms.back());
    } else if (statement == "thm2") {
        const auto ms = parse_int_range(range_m.empty() ? "1..3" : range_m);
        if (ms.back() > 4) throw std::invalid_argument("thm2 guard: m <= 4");
        rep = reproduce_thm2(ms.front(), ms.back(), parse_rational(eps.empty() ? "1" : eps));
    } else if (statement == "thm3") {
        const auto ns = parse_int_range(range_n.empty() ? "3..8" : range_n);
        if (ns.back() > 10) throw std::invalid_argument("thm3 guard: n <= 10");
        std::vector<Rational> eps_list;
        if (eps.empty()) {
            eps_list = {make_rational(1, 10), make_rational(1, 1000000)};
        } else {
            std::stringstream ss(eps);
            std::string part;
            while (std::getline(ss, part, ';')) eps_list.push_back(parse_rational(part));
        }
        rep = reproduce_thm3(ns.front(), ns.back(), eps_list,
                             parse_rational(eta.empty() ? "1/1000000" : eta));
    } else if (statement == "prop1") {
        const auto ns = parse_int_range(range_n.empty() ? "3..8" : range_n);
        if (ns.back() > 10) throw std::invalid_argument("prop1 guard: n <= 10");
        rep = reproduce_prop1(ns.front(), ns.back(), {make_rational(1, 2), Rational(9)});
    } else if (statement == "thm4") {
        const auto ns = parse_int_range(range_n.empty() ? "7,14" : range_n);
        for (int n : ns)
            if (n > 20) throw std::invalid_argument("thm4 guard: n <= 20");
        int k_cap = 10;
        if (!range_k.empty()) k_cap = parse_int_range(range_k).back();
        rep = reproduce_thm4(ns, k_cap);
    } else if (statement == "lemma-blocks") {
        rep = reproduce_lemma_blocks(parse_int_range(range_n.empty() ? "3,5,10" : range_n));
    } else if (statement == "lemma-sb") {
        const auto ns = parse_int_range(range_n.empty() ? "3..10" : range_n);
        if (ns.back() > 12) throw std::invalid_argument("lemma-sb guard: n <= 12");
        rep = reproduce_lemma_sb(ns.front(), ns.back());
    } else {
        throw std::invalid_argument("unknown statement " + statement);
    }

    if (!artifact_dir.empty()) {
        const std::string base = artifact_dir + "/" + statement;
        std::ofstream(base + ".json", std::ios::binary) << report_to_json(rep);
        std::ofstream(base + ".csv", std::ios::binary) << report_to_csv(rep);
        rep.artifacts.push_back(base + ".json");
        rep.artifacts.push_back(base + ".csv");
    }
    write_output(format == "csv" ? report_to_csv(rep) : report_to_json(rep), out_path);
    return rep.all_satisfied() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-arithmetic branch-and-cut laboratory"};
    app.require_subcommand(1);

    std::string format = "json";
    std::string out_path;
    app.add_option("--format", format, "json|csv|dot")->capture_default_str();
    app.add_option("--out", out_path, "output file (stdout when omitted)");

    // generate
    auto* cmd_generate = app.add_subcommand("generate", "write an instance JSON file");
    cmd_generate->fallthrough();
    FamilyFlags gen_flags;
    add_family_flags(cmd_generate, gen_flags);

    // solve
    auto* cmd_solve = app.add_subcommand("solve", "run branch and bound, emit the tree record");
    cmd_solve->fallthrough();
    FamilyFlags solve_flags;
    add_family_flags(cmd_solve, solve_flags);
    std::string solve_cuts = "none";
    std::string solve_policy = "sb";
    std::string solve_eta = "1/1000000", solve_eps = "1/10", solve_kappa = "9";
    int solve_k = 0;
    std::string solve_tiebreak = "smallest";
    std::string solve_incumbent;
    bool no_warm_start = false;
    cmd_solve->add_option("--cuts", solve_cuts, "none | pool:NAME | select:SCORER:BUDGET");
    cmd_solve->add_option("--policy", solve_policy, "sb|perturbed-sb|capped-sb|deviation");
    cmd_solve->add_option("--policy-eta", solve_eta, "eta_SB, rational");
    cmd_solve->add_option("--epsilon", solve_eps, "perturbed-sb epsilon, rational");
    cmd_solve->add_option("--kappa", solve_kappa, "capped-sb cap, rational");
    cmd_solve->add_option("--k", solve_k, "deviation count");
    cmd_solve->add_option("--tiebreak", solve_tiebreak, "smallest|prefer-y1");
    cmd_solve->add_option("--incumbent", solve_incumbent, "warm-start incumbent, rational");
    cmd_solve->add_flag("--no-warm-start", no_warm_start, "start without an incumbent");

    // score-cuts
    auto* cmd_score_cuts = app.add_subcommand("score-cuts", "emit cut score report rows");
    cmd_score_cuts->fallthrough();
    FamilyFlags sc_flags;
    add_family_flags(cmd_score_cuts, sc_flags);
    std::string sc_pool;
    std::string sc_lambdas;
    cmd_score_cuts->add_option("--pool", sc_pool, "pool name (default: union of all pools)");
    cmd_score_cuts->add_option("--lambdas", sc_lambdas,
                               "mixed-score weights, ';' separated rationals");

    // score-branching
    auto* cmd_score_branching =
        app.add_subcommand("score-branching", "emit the branching score report for one node");
    cmd_score_branching->fallthrough();
    FamilyFlags sb_flags;
    add_family_flags(cmd_score_branching, sb_flags);
    std::string sb_cuts = "none";
    std::vector<std::string> sb_fix;
    std::string sb_policy = "sb", sb_eta = "1/1000000", sb_eps = "1/10", sb_kappa = "9";
    int sb_k = 0;
    std::string sb_tiebreak = "smallest";
    cmd_score_branching->add_option("--cuts", sb_cuts, "root cuts, as in solve");
    cmd_score_branching->add_option("--fix", sb_fix, "variable fixing label=0|1, repeatable");
    cmd_score_branching->add_option("--policy", sb_policy, "policy, as in solve");
    cmd_score_branching->add_option("--policy-eta", sb_eta, "eta_SB");
    cmd_score_branching->add_option("--epsilon", sb_eps, "perturbed-sb epsilon");
    cmd_score_branching->add_option("--kappa", sb_kappa, "capped-sb cap");
    cmd_score_branching->add_option("--k", sb_k, "deviation count");
    cmd_score_branching->add_option("--tiebreak", sb_tiebreak, "smallest|prefer-y1");

    // oracle
    auto* cmd_oracle = app.add_subcommand("oracle", "minimum tree size over all rules");
    cmd_oracle->fallthrough();
    FamilyFlags or_flags;
    add_family_flags(cmd_oracle, or_flags);
    std::string or_cuts = "none";
    std::string or_class = "fractional";
    std::string or_incumbent;
    bool or_force = false;
    cmd_oracle->add_option("--cuts", or_cuts, "root cuts, as in solve");
    cmd_oracle->add_option("--branch-class", or_class, "fractional|any");
    cmd_oracle->add_option("--incumbent", or_incumbent,
                           "incumbent, rational (default: enumeration optimum)");
    cmd_oracle->add_flag("--force", or_force, "lift the default triangles guard to m = 4");

    // reproduce
    auto* cmd_reproduce = app.add_subcommand("reproduce", "replay one statement sweep");
    cmd_reproduce->fallthrough();
    std::string statement;
    std::string r_n, r_m, r_k, r_eps, r_eta;
    cmd_reproduce->add_option("statement", statement,
                              "toy|thm1|thm2|thm3|prop1|thm4|lemma-blocks|lemma-sb")
        ->required();
    cmd_reproduce->add_option("--n", r_n, "n range, e.g. 3..8 or 7,14");
    cmd_reproduce->add_option("--m", r_m, "m range");
    cmd_reproduce->add_option("--k", r_k, "k cap");
    cmd_reproduce->add_option("--eps", r_eps, "epsilon list, ';' separated rationals");
    cmd_reproduce->add_option("--eta", r_eta, "eta_SB");
    std::string r_artifacts;
    cmd_reproduce->add_option("--artifacts", r_artifacts, "directory for report artifact files");

    // export-dot
    auto* cmd_export = app.add_subcommand("export-dot", "tree record JSON to DOT");
    cmd_export->fallthrough();
    std::string in_path;
    cmd_export->add_option("--in", in_path, "tree record JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_generate->parsed()) {
            const Problem p = load_problem(gen_flags);
            write_output(instance_to_json(p.instance, p.pools), out_path);
            return 0;
        }
        if (cmd_solve->parsed()) {
            const Problem p = load_problem(solve_flags);
            const std::vector<Cut> cuts = resolve_cuts(p, solve_cuts);
            const PolicySpec policy = resolve_policy(solve_policy, solve_eta, solve_eps,
                                                     solve_kappa, solve_k, solve_tiebreak);
            std::optional<Rational> incumbent;
            if (!no_warm_start)
                incumbent = solve_incumbent.empty()
                                ? enumerate_binary(p.instance, cuts).opt_value
                                : parse_rational(solve_incumbent);
            TreeRecord tree = run_bnb(p.instance, cuts, policy, incumbent);
            tree.meta["family"] = p.family;
            tree.meta["params"] = p.params;
            tree.meta["cuts"] = solve_cuts;
            if (format == "dot")
                write_output(export_dot(tree), out_path);
            else if (format == "csv") {
                std::ostringstream os;
                os << "family,params,policy,cutPool,treeSize,optValue\n"
                   << p.family << ',' << p.params << ',' << policy.name() << ',' << solve_cuts
                   << ',' << tree.tree_size() << ','
                   << (tree.opt_value ? to_string(*tree.opt_value) : "none") << '\n';
                write_output(os.str(), out_path);
            } else {
                write_output(tree_to_json(tree), out_path);
            }
            return 0;
        }
        if (cmd_score_cuts->parsed()) {
            const Problem p = load_problem(sc_flags);
            std::vector<Cut> pool;
            if (sc_pool.empty()) {
                for (const auto& [name, cuts] : p.pools)
                    pool.insert(pool.end(), cuts.begin(), cuts.end());
            } else {
                pool = p.pools.at(sc_pool);
            }
            const CutScoreContext ctx = make_root_context(p.instance);
            std::vector<Rational> lambdas;
            if (!sc_lambdas.empty()) {
                std::stringstream ss(sc_lambdas);
                std::string part;
                while (std::getline(ss, part, ';')) lambdas.push_back(parse_rational(part));
            }
            const auto reports = score_pool(ctx, pool, lambdas);
            if (format == "csv") {
                std::ostringstream os;
                os << "cutId,efficacyNumer,efficacyNormSq,efficacyApprox,parallelismNumer,"
                      "parallelismNormSq,parallelismApprox,boundImprovement\n";
                for (const auto& r : reports)
                    os << r.cut_id << ',' << to_string(r.efficacy.numer) << ','
                       << to_string(r.efficacy.norm_sq) << ',' << r.efficacy.approx() << ','
                       << to_string(r.parallelism.numer) << ','
                       << to_string(r.parallelism.norm_sq) << ',' << r.parallelism.approx()
                       << ',' << to_string(r.bound_improvement) << '\n';
                write_output(os.str(), out_path);
            } else {
                nlohmann::ordered_json j = nlohmann::ordered_json::array();
                for (const auto& r : reports) {
                    nlohmann::ordered_json rj;
                    rj["cutId"] = r.cut_id;
                    rj["efficacy"] = {{"numer", to_string(r.efficacy.numer)},
                                      {"normSq", to_string(r.efficacy.norm_sq)},
                                      {"approx", r.efficacy.approx()}};
                    rj["parallelism"] = {{"numer", to_string(r.parallelism.numer)},
                                         {"normSq", to_string(r.parallelism.norm_sq)},
                                         {"approx", r.parallelism.approx()}};
                    rj["boundImprovement"] = to_string(r.bound_improvement);
                    if (!r.lambda_mix.empty()) {
                        nlohmann::ordered_json mix = nlohmann::ordered_json::object();
                        for (const auto& [lambda, terms] : r.lambda_mix)
                            mix[to_string(lambda)] = {
                                {"effTerm",
                                 {{"numer", to_string(terms.first.numer)},
                                  {"normSq", to_string(terms.first.norm_sq)}}},
                                {"parTerm",
                                 {{"numer", to_string(terms.second.numer)},
                                  {"normSq", to_string(terms.second.norm_sq)}}},
                                {"approx", terms.first.approx() + terms.second.approx()}};
                        rj["lambdaMix"] = std::move(mix);
                    }
                    j.push_back(std::move(rj));
                }
                write_output(j.dump(2) + "\n", out_path);
            }
            return 0;
        }
        if (cmd_score_branching->parsed()) {
            const Problem p = load_problem(sb_flags);
            const std::vector<Cut> cuts = resolve_cuts(p, sb_cuts);
            const PolicySpec policy =
                resolve_policy(sb_policy, sb_eta, sb_eps, sb_kappa, sb_k, sb_tiebreak);
            Fixings fixings;
            for (const auto& fx : sb_fix) {
                const auto eq = fx.rfind('=');
                if (eq == std::string::npos || eq + 2 != fx.size())
                    throw std::invalid_argument("bad --fix " + fx + ", expected label=0|1");
                const std::string label = fx.substr(0, eq);
                int var = -1;
                for (int j = 0; j < p.instance.num_vars(); ++j)
                    if (p.instance.vars[j].label == label) var = j;
                if (var < 0) throw std::invalid_argument("unknown variable label " + label);
                fixings.assign(var, fx.back() - '0');
            }
            SubproblemSolver solver(p.instance, cuts);
            const LpOutcome lp = solver.solve(fixings);
            if (lp.status != LpStatus::Optimal)
                throw std::runtime_error("node LP is not optimal; no branching to score");
            Brancher brancher(solver);
            const BranchScoreReport rep =
                brancher.report(policy, NodeView{fixings, lp});
            nlohmann::ordered_json j;
            j["instance"] = p.instance.name;
            j["fixings"] = fixings.key();
            j["nodeValue"] = lp.value.str();
            auto& cands = j["candidates"];
            cands = nlohmann::ordered_json::array();
            for (const auto& c : rep.candidates) {
                nlohmann::ordered_json cj;
                cj["var"] = c.var;
                cj["label"] = c.label;
                cj["down"] = c.down_improvement.str();
                cj["up"] = c.up_improvement.str();
                cj["score"] = c.score.str();
                cands.push_back(std::move(cj));
            }
            j["chosen"] = rep.chosen;
            j["chosenLabel"] = p.instance.vars[rep.chosen].label;
            write_output(j.dump(2) + "\n", out_path);
            return 0;
        }
        if (cmd_oracle->parsed()) {
            const Problem p = load_problem(or_flags);
            const std::vector<Cut> cuts = resolve_cuts(p, or_cuts);
            const int ints = static_cast<int>(p.instance.integer_vars().size());
            const int guard = or_force ? kOracleGuard : 9;
            if (ints > guard)
                throw std::invalid_argument(
                    "oracle guard: " + std::to_string(ints) +
                    " integer variables (use --force up to " + std::to_string(kOracleGuard) +
                    ")");
            const Rational incumbent = or_incumbent.empty()
                                           ? enumerate_binary(p.instance, cuts).opt_value
                                           : parse_rational(or_incumbent);
            const BranchClass bc =
                or_class == "any" ? BranchClass::AnyUnfixed : BranchClass::FractionalOnly;
            const OracleResult res = min_tree_size(p.instance, cuts, bc, incumbent);
            nlohmann::ordered_json j;
            j["instance"] = p.instance.name;
            j["branchClass"] = or_class == "any" ? "AnyUnfixed" : "FractionalOnly";
            j["incumbent"] = to_string(incumbent);
            j["minTreeSize"] = res.min_tree_size;
            j["statesExplored"] = res.states_explored;
            nlohmann::ordered_json w = nlohmann::ordered_json::object();
            for (const auto& [state, var] : res.witness_policy)
                w[state.empty() ? "root" : state] = p.instance.vars[var].label;
            j["witnessPolicy"] = std::move(w);
            write_output(j.dump(2) + "\n", out_path);
            return 0;
        }
        if (cmd_reproduce->parsed())
            return run_reproduce(statement, r_n, r_m, r_k, r_eps, r_eta, format, out_path,
                                 r_artifacts);
        if (cmd_export->parsed()) {
            write_output(export_dot_from_json(read_file(in_path)), out_path);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
