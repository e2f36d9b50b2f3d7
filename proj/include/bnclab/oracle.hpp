#ifndef BNCLAB_ORACLE_HPP
#define BNCLAB_ORACLE_HPP

#include "bnclab/engine.hpp"
#include "bnclab/model.hpp"

#include <map>
#include <string>
#include <vector>

namespace bnclab {

enum class BranchClass { AnyUnfixed, FractionalOnly };

inline constexpr int kOracleGuard = 12;  // max integer variables (3^vars states)

struct OracleResult {
    long min_tree_size = 0;
    long states_explored = 0;
    // One optimal branching choice per state reachable under the witness,
    // keyed by the canonical fixing string of the state.
    std::map<std::string, int> witness_policy;
};

// Minimum node count over all branching choices in the given class, with a
// fixed incumbent throughout: a state costs 1 when it prunes (infeasible,
// value <= incumbent, or integral vertex) and 1 + best pair of child costs
// otherwise. Memoized on the fixing state, so permuted paths collapse.
OracleResult min_tree_size(const Instance& instance, const std::vector<Cut>& cuts,
                           BranchClass branch_class, const Rational& incumbent,
                           bool memoize = true);

// The explicit complete tree of depth m for the triangles family under the
// perturbed pool: branch x_{1,1}, ..., x_{m,1} in depth order through the
// engine. Warm started at the integer optimum m.
TreeRecord chain_upper_bound_tree(const Instance& triangles, const std::vector<Cut>& ctilde);

}  // namespace bnclab

#endif
