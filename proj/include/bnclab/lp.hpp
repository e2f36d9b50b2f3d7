#ifndef BNCLAB_LP_HPP
#define BNCLAB_LP_HPP

#include "bnclab/model.hpp"
#include "bnclab/rational.hpp"

#include <memory>
#include <unordered_map>
#include <vector>

namespace bnclab {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpOutcome {
    LpStatus status = LpStatus::Infeasible;
    ExtendedRational value = ExtendedRational::neg_inf();  // -inf when infeasible
    std::vector<Rational> vertex;                          // present iff Optimal

    // Dual certificate, filled on Optimal solves: one multiplier per row
    // (instance rows first, then cuts) and one reduced cost per variable.
    std::vector<Rational> row_duals;
    std::vector<Rational> reduced_costs;

    long pivot_count = 0;
};

// Exact primal simplex oracle for one (instance, cut set) pair. Solves are
// decomposed over the connected components of the constraint graph; Bland's
// smallest-index rule makes the returned vertex deterministic, and the
// component order reproduces the monolithic pivot sequence. Results are
// memoized per component fixing state, which repeated strong-branching
// probes hit heavily.
class SubproblemSolver {
  public:
    SubproblemSolver(const Instance& instance, std::vector<Cut> cuts,
                     bool memoize = true, bool force_single_component = false);
    ~SubproblemSolver();

    SubproblemSolver(const SubproblemSolver&) = delete;
    SubproblemSolver& operator=(const SubproblemSolver&) = delete;

    LpOutcome solve(const Fixings& fixings) const;

    const Instance& instance() const { return instance_; }
    const std::vector<Cut>& cuts() const { return cuts_; }

    // Enable to dump pivot sequences to stderr.
    void set_trace(bool on);

  private:
    struct Impl;
    const Instance& instance_;
    std::vector<Cut> cuts_;
    std::unique_ptr<Impl> impl_;
};

// One-shot exact solve of max c.x subject to instance rows, cuts, bounds and
// fixings. Fixings must target integer variables with values inside bounds.
LpOutcome solve_lp(const Instance& instance, const std::vector<Cut>& cuts,
                   const Fixings& fixings);

// True iff outcome.vertex is exactly feasible, its objective matches
// outcome.value, and a dual-feasible multiplier certificate with equal
// objective exists. A complete optimality proof in exact arithmetic.
bool verify_optimality(const Instance& instance, const std::vector<Cut>& cuts,
                       const Fixings& fixings, const LpOutcome& outcome);

// Same check sourcing the certificate from an existing (memoizing) solver.
bool verify_optimality(const SubproblemSolver& solver, const Fixings& fixings,
                       const LpOutcome& outcome);

}  // namespace bnclab

#endif
