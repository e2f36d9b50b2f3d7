#ifndef BNCLAB_CUTSEL_HPP
#define BNCLAB_CUTSEL_HPP

#include "bnclab/lp.hpp"
#include "bnclab/model.hpp"
#include "bnclab/surd.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace bnclab {

// Distance from the point to the cut hyperplane, as (a.x - b) / ||a||.
// The point is usually the root LP optimum; a positive value means the cut
// is violated there.
SurdScore efficacy(const Cut& cut, const std::vector<Rational>& x_lp);

// Cosine of the angle between the cut normal and the objective, as
// |<a, c>| / (||a|| ||c||).
SurdScore parallelism(const Cut& cut, const std::vector<Rational>& objective);

// Root LP decrease caused by adding the candidate cuts on top of base_cuts,
// evaluated by one LP with the whole candidate set. Never negative for
// valid cuts; an infeasible LP after adding signals an invalid candidate.
Rational bound_improvement(const Instance& instance, const std::vector<Cut>& base_cuts,
                           const std::vector<Cut>& candidate);

struct LambdaMix {
    Rational lambda;  // in [0, 1]
};
struct ScorerEfficacy {};
struct ScorerParallelism {};
struct ScorerBoundImprovement {};
using CutScorer = std::variant<ScorerEfficacy, ScorerParallelism, ScorerBoundImprovement,
                               LambdaMix>;

std::string scorer_name(const CutScorer& scorer);

// Root context shared by the proxy scorers.
struct CutScoreContext {
    const Instance& instance;
    std::vector<Rational> root_vertex;  // LP optimum before any pool cut
};

CutScoreContext make_root_context(const Instance& instance);

struct CutScoreReport {
    std::string cut_id;
    SurdScore efficacy;
    SurdScore parallelism;
    Rational bound_improvement;
    // Per requested lambda: the two surd terms whose sum ranks the cut under
    // the mixed score, lambda*efficacy and (1-lambda)*parallelism.
    std::vector<std::pair<Rational, std::pair<SurdScore, SurdScore>>> lambda_mix;
};

std::vector<CutScoreReport> score_pool(const CutScoreContext& ctx, const std::vector<Cut>& pool,
                                       const std::vector<Rational>& lambdas = {});

// The m largest-scoring cuts, ties broken by pool order (stable). LambdaMix
// ranks by lambda*efficacy + (1-lambda)*parallelism compared exactly.
std::vector<Cut> select_top_m(const std::vector<Cut>& pool, const CutScorer& scorer, int m,
                              const CutScoreContext& ctx);

}  // namespace bnclab

#endif
