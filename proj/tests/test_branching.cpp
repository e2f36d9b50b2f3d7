#include "bnclab/branching.hpp"
#include "bnclab/instances.hpp"

#include <doctest.h>

using namespace bnclab;

namespace {

struct NodeFixture {
    SubproblemSolver solver;
    Fixings fixings;
    LpOutcome lp;

    NodeFixture(const Instance& inst, const std::vector<Cut>& cuts, Fixings fx = {})
        : solver(inst, cuts), fixings(std::move(fx)), lp(solver.solve(fixings)) {
        REQUIRE(lp.status == LpStatus::Optimal);
    }
    NodeView view() const { return NodeView{fixings, lp}; }
};

}  // namespace

TEST_CASE("strong branching improvements on a free block") {
    const GeneratedInstance g = gen_blockfamily(3);  // M = 29
    NodeFixture node(g.instance, {});
    Brancher brancher(node.solver);

    const auto [b0, b1] = brancher.sb_improvements(node.view(), 0);  // b_1
    CHECK(b0 == ExtendedRational(Rational(7)));
    CHECK(b1 == ExtendedRational(Rational(22)));  // M - 7

    const auto [y0, y1] = brancher.sb_improvements(node.view(), 6);  // y_1,1
    CHECK(y0 == ExtendedRational(Rational(3)));
    CHECK(y1 == ExtendedRational(Rational(3)));

    const auto [w0, w1] = brancher.sb_improvements(node.view(), 9);  // y_1,2
    CHECK(w0 == ExtendedRational(Rational(5)));
    CHECK(w1 == ExtendedRational(Rational(1)));

    const PolicySpec sb = PolicySpec::strong_branching();
    CHECK(brancher.score(sb, node.view(), 0) == ExtendedRational(Rational(7 * 22)));
    CHECK(brancher.choose(sb, node.view()) == 0);  // b_1
}

TEST_CASE("infeasible child scores infinity") {
    const GeneratedInstance g = gen_gadget2d(1);
    NodeFixture node(g.instance, g.pools.at("C2"), Fixings{}.with(0, 0));  // x_1 = 0
    Brancher brancher(node.solver);
    const auto [d0, d1] = brancher.sb_improvements(node.view(), 1);  // y_1
    CHECK(d0 == ExtendedRational(make_rational(3, 2)));
    CHECK(d1.is_pos_inf());
    CHECK(brancher.score(PolicySpec::strong_branching(), node.view(), 1).is_pos_inf());
    CHECK(brancher.choose(PolicySpec::strong_branching(), node.view()) == 1);
}

TEST_CASE("perturbed scores sit eta^2 apart on the scaled family") {
    const Rational eta = make_rational(1, 1000000);
    const GeneratedInstance g = gen_scaled_blockfamily(3, eta);
    NodeFixture node(g.instance, {});
    Brancher brancher(node.solver);
    const Rational eps = make_rational(1, 10);
    const PolicySpec sb = PolicySpec::strong_branching(eta);
    const PolicySpec hat = PolicySpec::perturbed_sb(eps, eta);

    for (const int j : brancher.candidates(node.view())) {
        CHECK(brancher.score(sb, node.view(), j) == ExtendedRational(Rational(eta * eta)));
        const ExtendedRational hat_score = brancher.score(hat, node.view(), j);
        if (g.instance.vars[j].family == "y1")
            CHECK(hat_score == ExtendedRational(Rational(eta * eta + eps / 2)));
        else
            CHECK(hat_score == ExtendedRational(Rational(eta * eta)));
    }
    CHECK(brancher.choose(sb, node.view()) == 0);   // smallest index b_1
    CHECK(brancher.choose(hat, node.view()) == 6);  // y_1,1
}

TEST_CASE("capped scores tie and the tie-break decides") {
    const GeneratedInstance g = gen_blockfamily(4);
    NodeFixture node(g.instance, {});
    Brancher brancher(node.solver);
    const PolicySpec by_index = PolicySpec::capped_sb(Rational(9), TieBreak::SmallestIndex);
    const PolicySpec by_y1 = PolicySpec::capped_sb(Rational(9), TieBreak::PreferY1ThenSmallest);

    CHECK(brancher.score(by_index, node.view(), 0) == ExtendedRational(Rational(9)));
    CHECK(brancher.score(by_index, node.view(), 8) == ExtendedRational(Rational(9)));  // y_1,1
    CHECK(brancher.choose(by_index, node.view()) == 0);
    CHECK(brancher.choose(by_y1, node.view()) == 8);
}

TEST_CASE("deviation policy overrides then falls back to strong branching") {
    const GeneratedInstance g = gen_blockfamily(3);
    NodeFixture root(g.instance, {});
    Brancher brancher(root.solver);
    const PolicySpec dev2 = PolicySpec::deviation(2);
    CHECK(brancher.choose(dev2, root.view()) == 6);  // y_1,1 while Fix < k

    NodeFixture deep(g.instance, {}, Fixings{}.with(6, 0).with(7, 1));
    CHECK(deep.fixings.size() == 2);
    CHECK(brancher.choose(dev2, deep.view()) ==
          brancher.choose(PolicySpec::strong_branching(), deep.view()));

    const PolicySpec dev0 = PolicySpec::deviation(0);
    CHECK(brancher.choose(dev0, root.view()) ==
          brancher.choose(PolicySpec::strong_branching(), root.view()));
}

TEST_CASE("scaling the objective and eta preserves choices") {
    const Rational eta(3);
    const GeneratedInstance base = gen_blockfamily(3);
    const GeneratedInstance scaled = gen_scaled_blockfamily(3, Rational(1));
    const Rational alpha = scaled.derived.at("alpha");

    NodeFixture node_base(base.instance, {});
    NodeFixture node_scaled(scaled.instance, {});
    Brancher bb(node_base.solver);
    Brancher bs(node_scaled.solver);

    for (const int j : bb.candidates(node_base.view())) {
        const auto [d0, d1] = bb.sb_improvements(node_base.view(), j);
        const auto [s0, s1] = bs.sb_improvements(node_scaled.view(), j);
        CHECK(s0 == ExtendedRational(Rational(alpha * d0.value())));
        CHECK(s1 == ExtendedRational(Rational(alpha * d1.value())));
    }
    CHECK(bb.choose(PolicySpec::strong_branching(eta), node_base.view()) ==
          bs.choose(PolicySpec::strong_branching(Rational(alpha * eta)), node_scaled.view()));
}

TEST_CASE("a cap above every finite score reduces to strong branching") {
    const GeneratedInstance g = gen_blockfamily(3);
    const PolicySpec sb = PolicySpec::strong_branching();
    const PolicySpec capped =
        PolicySpec::capped_sb(Rational(1000000), TieBreak::SmallestIndex);
    NodeFixture root(g.instance, {});
    Brancher brancher(root.solver);
    CHECK(brancher.choose(capped, root.view()) == brancher.choose(sb, root.view()));
    NodeFixture deep(g.instance, {}, Fixings{}.with(0, 0).with(6, 1));
    CHECK(brancher.choose(capped, deep.view()) == brancher.choose(sb, deep.view()));
}

TEST_CASE("choose fails cleanly without candidates") {
    const GeneratedInstance g = gen_blockfamily(1);
    Fixings all;
    for (int j = 0; j < 5; ++j) all.assign(j, j == 0 ? 0 : 1);
    NodeFixture node(g.instance, {}, all);
    Brancher brancher(node.solver);
    CHECK(brancher.candidates(node.view()).empty());
    CHECK_THROWS(brancher.choose(PolicySpec::strong_branching(), node.view()));
}

TEST_CASE("policy validation") {
    CHECK_THROWS(PolicySpec::strong_branching(Rational(0)).validate());
    CHECK_THROWS(PolicySpec::perturbed_sb(Rational(0)).validate());
    CHECK_THROWS(PolicySpec::capped_sb(Rational(0), TieBreak::SmallestIndex).validate());
    CHECK_THROWS(PolicySpec::deviation(-1).validate());
    CHECK(PolicySpec::deviation(0).name() == "deviation(k=0)");
    CHECK(PolicySpec::capped_sb(Rational(9), TieBreak::PreferY1ThenSmallest).name() ==
          "capped-sb(kappa=9)+prefer-y1");
}

TEST_CASE("branch score report lists candidates in index order") {
    const GeneratedInstance g = gen_blockfamily(2);
    NodeFixture node(g.instance, {});
    Brancher brancher(node.solver);
    const BranchScoreReport rep = brancher.report(PolicySpec::strong_branching(), node.view());
    REQUIRE(!rep.candidates.empty());
    CHECK(rep.chosen == 0);
    for (std::size_t i = 1; i < rep.candidates.size(); ++i)
        CHECK(rep.candidates[i - 1].var < rep.candidates[i].var);
    // p variables sit at 1 in the vertex and never appear as candidates.
    for (const auto& c : rep.candidates) CHECK(g.instance.vars[c.var].family != "p");
}
