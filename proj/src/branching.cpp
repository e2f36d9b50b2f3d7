#include "bnclab/branching.hpp"

#include <stdexcept>

namespace bnclab {

PolicySpec PolicySpec::strong_branching(Rational eta) {
    PolicySpec p;
    p.kind = PolicyKind::StrongBranching;
    p.eta = std::move(eta);
    return p;
}

PolicySpec PolicySpec::perturbed_sb(Rational epsilon, Rational eta) {
    PolicySpec p;
    p.kind = PolicyKind::PerturbedSB;
    p.eta = std::move(eta);
    p.epsilon = std::move(epsilon);
    return p;
}

PolicySpec PolicySpec::capped_sb(Rational kappa, TieBreak tb, Rational eta) {
    PolicySpec p;
    p.kind = PolicyKind::CappedSB;
    p.eta = std::move(eta);
    p.kappa = std::move(kappa);
    p.tie_break = tb;
    return p;
}

PolicySpec PolicySpec::deviation(int k, Rational eta) {
    PolicySpec p;
    p.kind = PolicyKind::DeviationPolicy;
    p.eta = std::move(eta);
    p.k = k;
    return p;
}

void PolicySpec::validate() const {
    if (eta <= 0) throw std::invalid_argument("eta must be positive");
    switch (kind) {
        case PolicyKind::PerturbedSB:
            if (!epsilon || *epsilon <= 0)
                throw std::invalid_argument("PerturbedSB needs epsilon > 0");
            break;
        case PolicyKind::CappedSB:
            if (!kappa || *kappa <= 0) throw std::invalid_argument("CappedSB needs kappa > 0");
            break;
        case PolicyKind::DeviationPolicy:
            if (!k || *k < 0) throw std::invalid_argument("DeviationPolicy needs k >= 0");
            break;
        default: break;
    }
}

std::string PolicySpec::name() const {
    std::string base;
    switch (kind) {
        case PolicyKind::StrongBranching: base = "sb"; break;
        case PolicyKind::PerturbedSB: base = "perturbed-sb(eps=" + to_string(*epsilon) + ")"; break;
        case PolicyKind::CappedSB: base = "capped-sb(kappa=" + to_string(*kappa) + ")"; break;
        case PolicyKind::DeviationPolicy: base = "deviation(k=" + std::to_string(*k) + ")"; break;
    }
    if (tie_break == TieBreak::PreferY1ThenSmallest) base += "+prefer-y1";
    return base;
}

Brancher::Brancher(const SubproblemSolver& solver) : solver_(solver) {}

std::vector<int> Brancher::candidates(const NodeView& node) const {
    if (node.lp.status != LpStatus::Optimal)
        throw std::logic_error("candidates on a non-optimal node");
    const Instance& inst = solver_.instance();
    std::vector<int> out;
    for (int j = 0; j < inst.num_vars(); ++j) {
        if (!inst.vars[j].integer) continue;
        if (!is_integral(node.lp.vertex[j])) out.push_back(j);
    }
    return out;
}

std::pair<ExtendedRational, ExtendedRational> Brancher::sb_improvements(const NodeView& node,
                                                                        int j) const {
    auto child_gap = [&](int value) -> ExtendedRational {
        const LpOutcome child = solver_.solve(node.fixings.with(j, value));
        if (child.status == LpStatus::Infeasible) return ExtendedRational::pos_inf();
        if (child.status == LpStatus::Unbounded)
            throw std::runtime_error("unbounded child LP");
        return ExtendedRational(node.lp.value.value() - child.value.value());
    };
    return {child_gap(0), child_gap(1)};
}

ExtendedRational Brancher::raw_sb_score(const PolicySpec& policy, const NodeView& node,
                                        int j) const {
    const auto [d0, d1] = sb_improvements(node, j);
    return ext_product_score(d0, d1, policy.eta);
}

ExtendedRational Brancher::score(const PolicySpec& policy, const NodeView& node, int j) const {
    policy.validate();
    ExtendedRational s = raw_sb_score(policy, node, j);
    switch (policy.kind) {
        case PolicyKind::PerturbedSB:
            // Boost only fractional y·,1 entries; candidates are always
            // fractional, the check covers direct score queries.
            if (solver_.instance().vars[j].family == "y1" && !is_integral(node.lp.vertex[j]))
                s = s + ExtendedRational(*policy.epsilon / 2);
            return s;
        case PolicyKind::CappedSB: return min(s, ExtendedRational(*policy.kappa));
        default: return s;
    }
}

int Brancher::deviation_target(const NodeView& node) const {
    const Instance& inst = solver_.instance();
    const int block = node.fix_count() + 1;
    for (int j = 0; j < inst.num_vars(); ++j)
        if (inst.vars[j].family == "y1" && inst.vars[j].block && *inst.vars[j].block == block)
            return j;
    throw std::runtime_error("deviation policy: no y_{" + std::to_string(block) +
                             ",1} variable in instance");
}

int Brancher::choose(const PolicySpec& policy, const NodeView& node) const {
    policy.validate();
    const std::vector<int> cands = candidates(node);
    if (cands.empty()) throw std::logic_error("choose() on a node without candidates");

    if (policy.kind == PolicyKind::DeviationPolicy && node.fix_count() < *policy.k) {
        const int target = deviation_target(node);
        for (int c : cands)
            if (c == target) return target;
        throw std::runtime_error("deviation policy override is not fractional at node");
    }

    std::vector<ExtendedRational> scores;
    scores.reserve(cands.size());
    for (int j : cands) scores.push_back(score(policy, node, j));
    ExtendedRational best = scores[0];
    for (const auto& s : scores) best = max(best, s);

    if (policy.tie_break == TieBreak::PreferY1ThenSmallest) {
        const Instance& inst = solver_.instance();
        for (std::size_t i = 0; i < cands.size(); ++i)
            if (scores[i] == best && inst.vars[cands[i]].family == "y1") return cands[i];
    }
    for (std::size_t i = 0; i < cands.size(); ++i)
        if (scores[i] == best) return cands[i];
    throw std::logic_error("argmax lookup failed");
}

BranchScoreReport Brancher::report(const PolicySpec& policy, const NodeView& node) const {
    BranchScoreReport rep;
    for (int j : candidates(node)) {
        const auto [d0, d1] = sb_improvements(node, j);
        rep.candidates.push_back(CandidateScore{j, solver_.instance().vars[j].label, d0, d1,
                                                score(policy, node, j)});
    }
    rep.chosen = choose(policy, node);
    return rep;
}

}  // namespace bnclab
