#include "bnclab/oracle.hpp"

#include "bnclab/lp.hpp"

#include <stdexcept>
#include <unordered_map>

namespace bnclab {

namespace {

struct OracleSearch {
    const SubproblemSolver& solver;
    const std::vector<int> integer_vars;
    BranchClass branch_class;
    Rational incumbent;
    bool memoize;
    std::unordered_map<std::string, long> memo;
    std::map<std::string, int> choice;  // every internal state's argmin
    long states = 0;

    long visit(const Fixings& fixings) {
        const std::string key = fixings.key();
        if (memoize) {
            auto it = memo.find(key);
            if (it != memo.end()) return it->second;
        }
        ++states;
        const LpOutcome lp = solver.solve(fixings);
        if (lp.status == LpStatus::Unbounded) throw std::runtime_error("unbounded node LP");
        long result = 1;
        bool prunes = lp.status == LpStatus::Infeasible ||
                      lp.value <= ExtendedRational(incumbent);
        if (!prunes) {
            prunes = true;
            for (const int j : integer_vars)
                if (!is_integral(lp.vertex[j])) {
                    prunes = false;
                    break;
                }
        }
        if (!prunes) {
            long best = -1;
            int best_var = -1;
            for (const int j : integer_vars) {
                if (fixings.has(j)) continue;
                if (branch_class == BranchClass::FractionalOnly && is_integral(lp.vertex[j]))
                    continue;
                const long cost = visit(fixings.with(j, 0)) + visit(fixings.with(j, 1));
                if (best < 0 || cost < best) {
                    best = cost;
                    best_var = j;
                }
            }
            if (best < 0)
                throw std::logic_error("fractional vertex without a branching candidate");
            result = 1 + best;
            choice[key] = best_var;
        }
        if (memoize) memo.emplace(key, result);
        return result;
    }
};

}  // namespace

OracleResult min_tree_size(const Instance& instance, const std::vector<Cut>& cuts,
                           BranchClass branch_class, const Rational& incumbent, bool memoize) {
    const auto ints = instance.integer_vars();
    if (static_cast<int>(ints.size()) > kOracleGuard)
        throw std::invalid_argument("oracle guard: too many integer variables");

    SubproblemSolver solver(instance, cuts);
    OracleSearch search{solver, ints, branch_class, incumbent, memoize, {}, {}, 0};
    OracleResult result;
    result.min_tree_size = search.visit(Fixings{});
    result.states_explored = search.states;

    // Keep only the states reachable by following the witness from the root.
    std::vector<Fixings> stack{Fixings{}};
    while (!stack.empty()) {
        const Fixings state = std::move(stack.back());
        stack.pop_back();
        const auto it = search.choice.find(state.key());
        if (it == search.choice.end()) continue;  // pruned leaf state
        result.witness_policy[state.key()] = it->second;
        stack.push_back(state.with(it->second, 0));
        stack.push_back(state.with(it->second, 1));
    }
    return result;
}

TreeRecord chain_upper_bound_tree(const Instance& triangles, const std::vector<Cut>& ctilde) {
    int blocks = 0;
    for (const auto& v : triangles.vars)
        if (v.integer && v.block) blocks = std::max(blocks, *v.block);
    if (blocks == 0) throw std::invalid_argument("chain tree needs a blocked instance");

    std::vector<int> first_var(blocks + 1, -1);
    for (int j = 0; j < triangles.num_vars(); ++j) {
        const VarInfo& v = triangles.vars[j];
        if (v.integer && v.block && v.family == "x1") first_var[*v.block] = j;
    }
    for (int t = 1; t <= blocks; ++t)
        if (first_var[t] < 0)
            throw std::invalid_argument("chain tree: block " + std::to_string(t) +
                                        " lacks an x_{t,1} variable");

    const Rational opt = enumerate_binary(triangles, ctilde).opt_value;
    SubproblemSolver solver(triangles, ctilde);
    auto chooser = [&](const NodeView& node) {
        const int depth = node.fix_count();
        if (depth >= blocks) throw std::logic_error("chain tree deeper than block count");
        return first_var[depth + 1];
    };
    std::map<std::string, std::string> meta;
    meta["policy"] = "chain-x1";
    return run_bnb_with_chooser(solver, chooser, opt, std::move(meta));
}

}  // namespace bnclab
