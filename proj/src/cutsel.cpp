#include "bnclab/cutsel.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace bnclab {

namespace {

Rational self_dot(const SparseVec& coeffs) {
    Rational acc(0);
    for (const auto& [var, c] : coeffs) acc += c * c;
    return acc;
}

Rational sparse_dense_dot(const SparseVec& coeffs, const std::vector<Rational>& dense) {
    Rational acc(0);
    for (const auto& [var, c] : coeffs) acc += c * dense[var];
    return acc;
}

}  // namespace

SurdScore efficacy(const Cut& cut, const std::vector<Rational>& x_lp) {
    const Rational norm_sq = self_dot(cut.coeffs);
    if (norm_sq == 0) throw std::invalid_argument("efficacy of a zero cut is undefined");
    return SurdScore(dot(cut.coeffs, x_lp) - cut.rhs, norm_sq);
}

SurdScore parallelism(const Cut& cut, const std::vector<Rational>& objective) {
    const Rational alpha_sq = self_dot(cut.coeffs);
    Rational c_sq(0);
    for (const auto& c : objective) c_sq += c * c;
    if (alpha_sq == 0 || c_sq == 0)
        throw std::invalid_argument("parallelism needs nonzero cut and objective");
    Rational inner = sparse_dense_dot(cut.coeffs, objective);
    if (inner < 0) inner = -inner;
    return SurdScore(inner, alpha_sq * c_sq);
}

Rational bound_improvement(const Instance& instance, const std::vector<Cut>& base_cuts,
                           const std::vector<Cut>& candidate) {
    const LpOutcome before = solve_lp(instance, base_cuts, Fixings{});
    if (before.status != LpStatus::Optimal)
        throw std::runtime_error("bound_improvement: base LP is not optimal");
    std::vector<Cut> all = base_cuts;
    all.insert(all.end(), candidate.begin(), candidate.end());
    const LpOutcome after = solve_lp(instance, all, Fixings{});
    if (after.status != LpStatus::Optimal)
        throw std::runtime_error("bound_improvement: LP infeasible after candidate cuts");
    return before.value.value() - after.value.value();
}

std::string scorer_name(const CutScorer& scorer) {
    if (std::holds_alternative<ScorerEfficacy>(scorer)) return "efficacy";
    if (std::holds_alternative<ScorerParallelism>(scorer)) return "parallelism";
    if (std::holds_alternative<ScorerBoundImprovement>(scorer)) return "bound-improvement";
    return "lambda-mix(" + to_string(std::get<LambdaMix>(scorer).lambda) + ")";
}

CutScoreContext make_root_context(const Instance& instance) {
    LpOutcome root = solve_lp(instance, {}, Fixings{});
    if (root.status != LpStatus::Optimal)
        throw std::runtime_error("root LP must be optimal for cut scoring");
    return CutScoreContext{instance, std::move(root.vertex)};
}

std::vector<CutScoreReport> score_pool(const CutScoreContext& ctx, const std::vector<Cut>& pool,
                                       const std::vector<Rational>& lambdas) {
    std::vector<CutScoreReport> out;
    out.reserve(pool.size());
    for (const auto& cut : pool) {
        CutScoreReport row{cut.id, efficacy(cut, ctx.root_vertex),
                           parallelism(cut, ctx.instance.objective),
                           bound_improvement(ctx.instance, {}, {cut}),
                           {}};
        for (const auto& lambda : lambdas)
            row.lambda_mix.emplace_back(
                lambda, std::make_pair(scale(lambda, row.efficacy),
                                       scale(1 - lambda, row.parallelism)));
        out.push_back(std::move(row));
    }
    return out;
}

std::vector<Cut> select_top_m(const std::vector<Cut>& pool, const CutScorer& scorer, int m,
                              const CutScoreContext& ctx) {
    if (m < 0 || m > static_cast<int>(pool.size()))
        throw std::invalid_argument("cut budget outside pool size");

    // higher(i, j): does pool[i] score strictly above pool[j]?
    std::function<bool(int, int)> higher;
    std::vector<Rational> improvements;
    std::vector<SurdScore> eff, par;

    if (std::holds_alternative<ScorerBoundImprovement>(scorer)) {
        improvements.reserve(pool.size());
        for (const auto& cut : pool)
            improvements.push_back(bound_improvement(ctx.instance, {}, {cut}));
        higher = [&](int i, int j) { return improvements[i] > improvements[j]; };
    } else {
        eff.reserve(pool.size());
        par.reserve(pool.size());
        for (const auto& cut : pool) {
            eff.push_back(efficacy(cut, ctx.root_vertex));
            par.push_back(parallelism(cut, ctx.instance.objective));
        }
        if (std::holds_alternative<ScorerEfficacy>(scorer)) {
            higher = [&](int i, int j) {
                return surd_compare(eff[i], eff[j]) == Ordering::Greater;
            };
        } else if (std::holds_alternative<ScorerParallelism>(scorer)) {
            higher = [&](int i, int j) {
                return surd_compare(par[i], par[j]) == Ordering::Greater;
            };
        } else {
            const Rational lambda = std::get<LambdaMix>(scorer).lambda;
            if (lambda < 0 || lambda > 1)
                throw std::invalid_argument("lambda must lie in [0, 1]");
            higher = [&, lambda](int i, int j) {
                return compare_surd_sums(scale(lambda, eff[i]),
                                         scale(1 - lambda, par[i]),
                                         scale(lambda, eff[j]),
                                         scale(1 - lambda, par[j])) == Ordering::Greater;
            };
        }
    }

    std::vector<int> order(pool.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return higher(i, j); });

    std::vector<Cut> selected;
    selected.reserve(m);
    for (int k = 0; k < m; ++k) selected.push_back(pool[order[k]]);
    return selected;
}

}  // namespace bnclab
