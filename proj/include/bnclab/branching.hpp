#ifndef BNCLAB_BRANCHING_HPP
#define BNCLAB_BRANCHING_HPP

#include "bnclab/lp.hpp"
#include "bnclab/model.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bnclab {

enum class PolicyKind { StrongBranching, PerturbedSB, CappedSB, DeviationPolicy };
enum class TieBreak { SmallestIndex, PreferY1ThenSmallest };

inline Rational default_eta() { return make_rational(1, 1000000); }

// Declarative branching policy: scorer plus tie-break plus parameters.
struct PolicySpec {
    PolicyKind kind = PolicyKind::StrongBranching;
    Rational eta = default_eta();          // eta_SB > 0
    std::optional<Rational> epsilon;       // PerturbedSB: adds epsilon/2 to fractional y·,1
    std::optional<Rational> kappa;         // CappedSB: score = min(SB, kappa)
    std::optional<int> k;                  // DeviationPolicy: forced deviations
    TieBreak tie_break = TieBreak::SmallestIndex;

    static PolicySpec strong_branching(Rational eta = default_eta());
    static PolicySpec perturbed_sb(Rational epsilon, Rational eta = default_eta());
    static PolicySpec capped_sb(Rational kappa, TieBreak tb, Rational eta = default_eta());
    static PolicySpec deviation(int k, Rational eta = default_eta());

    void validate() const;
    std::string name() const;
};

// A solved, still-open node: cumulative fixings plus its LP outcome.
struct NodeView {
    const Fixings& fixings;
    const LpOutcome& lp;

    int fix_count() const { return fixings.size(); }
};

struct CandidateScore {
    int var = -1;
    std::string label;
    ExtendedRational down_improvement;
    ExtendedRational up_improvement;
    ExtendedRational score;
};

struct BranchScoreReport {
    std::vector<CandidateScore> candidates;
    int chosen = -1;
};

// Branching-score evaluation bound to one (instance, cut set) solver.
class Brancher {
  public:
    explicit Brancher(const SubproblemSolver& solver);

    // Integer variables fractional in the node vertex, ascending index.
    std::vector<int> candidates(const NodeView& node) const;

    // (down, up) LP bound improvements for fixing variable j; +inf marks an
    // infeasible child.
    std::pair<ExtendedRational, ExtendedRational> sb_improvements(const NodeView& node,
                                                                  int j) const;

    // The policy's exact score for candidate j. DeviationPolicy scores like
    // strong branching; its forced choice lives in choose().
    ExtendedRational score(const PolicySpec& policy, const NodeView& node, int j) const;

    // Argmax under exact comparison with the policy tie-break applied.
    int choose(const PolicySpec& policy, const NodeView& node) const;

    BranchScoreReport report(const PolicySpec& policy, const NodeView& node) const;

    const SubproblemSolver& solver() const { return solver_; }

  private:
    ExtendedRational raw_sb_score(const PolicySpec& policy, const NodeView& node, int j) const;
    int deviation_target(const NodeView& node) const;

    const SubproblemSolver& solver_;
};

}  // namespace bnclab

#endif
