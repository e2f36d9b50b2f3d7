#ifndef BNCLAB_REPRO_HPP
#define BNCLAB_REPRO_HPP

#include "bnclab/rational.hpp"

#include <string>
#include <vector>

namespace bnclab {

struct Claim {
    std::string description;
    std::string bound;  // the statement being checked, human readable
    std::string observed;
    bool satisfied = false;
};

struct ExperimentReport {
    std::string experiment_id;
    std::vector<Claim> claims;
    std::vector<std::string> artifacts;
    long runtime_ms = 0;

    bool all_satisfied() const;
    void add(std::string description, std::string bound, std::string observed, bool ok);
};

// Each suite replays one statement end to end and evaluates every claim in
// exact arithmetic. All branch-and-bound runs are warm started at the
// enumeration optimum and every produced tree is re-checked for
// well-formedness, best-bound order, and per-node LP certificates.

// Two-cut root example: bound improvement and the proxy scores disagree.
ExperimentReport reproduce_toy(const Rational& s);

// Cut selection by bound improvement versus efficacy on the gadget product
// instance; runs under C2 are skipped above c2_run_cap to keep the sweep
// inside its time budget; the default cap covers the whole default sweep.
ExperimentReport reproduce_thm1(int m_lo, int m_hi, int c2_run_cap = 18);

// Tiny right-hand-side perturbations flip the minimum tree size.
ExperimentReport reproduce_thm2(int m_lo, int m_hi, const Rational& eps);

// Epsilon-close scores with exponentially different trees.
ExperimentReport reproduce_thm3(int n_lo, int n_hi, const std::vector<Rational>& eps_list,
                                const Rational& eta);

// Identical capped scores, different tie-breaking.
ExperimentReport reproduce_prop1(int n_lo, int n_hi, const std::vector<Rational>& kappa_list);

// k forced deviations from strong branching.
ExperimentReport reproduce_thm4(const std::vector<int>& n_list, int k_cap = 10);

// Single-block LP values of the block family.
ExperimentReport reproduce_lemma_blocks(const std::vector<int>& n_list);

// Strong branching solves the block family in 2n + 1 nodes.
ExperimentReport reproduce_lemma_sb(int n_lo, int n_hi);

std::string report_to_json(const ExperimentReport& report);
std::string report_to_csv(const ExperimentReport& report);

}  // namespace bnclab

#endif
