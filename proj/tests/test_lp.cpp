#include "bnclab/instances.hpp"
#include "bnclab/lp.hpp"

#include <doctest.h>

#include <random>

using namespace bnclab;

TEST_CASE("toy root LP solves the equality row") {
    const GeneratedInstance g = gen_toy(make_rational(3, 2));
    const LpOutcome lp = solve_lp(g.instance, {}, Fixings{});
    REQUIRE(lp.status == LpStatus::Optimal);
    CHECK(lp.value == ExtendedRational(Rational(0)));
    CHECK(lp.vertex == std::vector<Rational>{make_rational(3, 2), Rational(0)});
    CHECK(verify_optimality(g.instance, {}, Fixings{}, lp));
}

TEST_CASE("block LP values match the closed forms") {
    const GeneratedInstance g = gen_blockfamily_single_block(3);  // M = 29
    SubproblemSolver solver(g.instance, {});

    const LpOutcome free_lp = solver.solve(Fixings{});
    REQUIRE(free_lp.status == LpStatus::Optimal);
    CHECK(free_lp.value == ExtendedRational(Rational(56)));
    const std::vector<Rational> expect{make_rational(1, 2), Rational(1), make_rational(3, 4),
                                       make_rational(3, 4), make_rational(3, 4)};
    CHECK(free_lp.vertex == expect);
    CHECK(verify_optimality(solver, Fixings{}, free_lp));

    const LpOutcome b1 = solver.solve(Fixings{}.with(0, 1));
    CHECK(b1.value == ExtendedRational(Rational(34)));
    CHECK(verify_optimality(solver, Fixings{}.with(0, 1), b1));
}

TEST_CASE("fully fixed LP returns the point objective") {
    const GeneratedInstance g = gen_blockfamily_single_block(3);
    Fixings all;
    all.assign(0, 0);
    all.assign(1, 1);
    all.assign(2, 1);
    all.assign(3, 1);
    all.assign(4, 1);
    const LpOutcome lp = solve_lp(g.instance, {}, all);
    REQUIRE(lp.status == LpStatus::Optimal);
    CHECK(lp.value == ExtendedRational(Rational(29 + 20)));
}

TEST_CASE("infeasible fixings are reported with value -inf") {
    const GeneratedInstance g = gen_gadget2d(1);
    const std::vector<Cut>& c1 = g.pools.at("C1");
    // Under 20y - 7x <= 0, fixing y = 1 forces 7x >= 20, impossible in the box.
    const LpOutcome lp = solve_lp(g.instance, c1, Fixings{}.with(1, 1));
    CHECK(lp.status == LpStatus::Infeasible);
    CHECK(lp.value.is_neg_inf());
    CHECK(lp.vertex.empty());
}

TEST_CASE("optimality verification rejects perturbed vertices") {
    const GeneratedInstance g = gen_blockfamily_single_block(3);
    const LpOutcome lp = solve_lp(g.instance, {}, Fixings{});
    REQUIRE(lp.status == LpStatus::Optimal);

    LpOutcome shifted = lp;
    shifted.vertex[0] += make_rational(1, 1000);
    CHECK_FALSE(verify_optimality(g.instance, {}, Fixings{}, shifted));

    LpOutcome wrong_value = lp;
    wrong_value.value = ExtendedRational(Rational(57));
    CHECK_FALSE(verify_optimality(g.instance, {}, Fixings{}, wrong_value));

    const LpOutcome toy = solve_lp(gen_toy(make_rational(3, 2)).instance, {}, Fixings{});
    CHECK(verify_optimality(gen_toy(make_rational(3, 2)).instance, {}, Fixings{}, toy));
}

TEST_CASE("cuts and fixings never raise the LP value") {
    const GeneratedInstance g = gen_gadget2d(2);
    const std::vector<Cut>& c1 = g.pools.at("C1");
    const std::vector<Cut>& c2 = g.pools.at("C2");

    const Rational base = solve_lp(g.instance, {}, Fixings{}).value.value();
    std::vector<Cut> acc;
    for (const auto& cut : c2) {
        const Rational before = solve_lp(g.instance, acc, Fixings{}).value.value();
        acc.push_back(cut);
        const Rational after = solve_lp(g.instance, acc, Fixings{}).value.value();
        CHECK(after <= before);
    }
    CHECK(solve_lp(g.instance, c1, Fixings{}).value.value() <= base);

    std::mt19937_64 rng(3);
    Fixings fx;
    Rational prev = base;
    for (int j = 0; j < g.instance.num_vars(); ++j) {
        fx.assign(j, static_cast<int>(rng() % 2));
        const LpOutcome lp = solve_lp(g.instance, {}, fx);
        if (lp.status != LpStatus::Optimal) break;
        CHECK(lp.value.value() <= prev);
        prev = lp.value.value();
    }
}

TEST_CASE("component decomposition matches the monolithic pivot order") {
    const GeneratedInstance g = gen_blockfamily(3);
    SubproblemSolver split(g.instance, {});
    SubproblemSolver merged(g.instance, {}, /*memoize=*/true, /*force_single_component=*/true);

    std::mt19937_64 rng(5);
    for (int it = 0; it < 25; ++it) {
        Fixings fx;
        for (int j = 0; j < g.instance.num_vars(); ++j)
            if (rng() % 3 == 0) fx.assign(j, static_cast<int>(rng() % 2));
        const LpOutcome a = split.solve(fx);
        const LpOutcome b = merged.solve(fx);
        REQUIRE(a.status == b.status);
        if (a.status != LpStatus::Optimal) continue;
        CHECK(a.value == b.value);
        CHECK(a.vertex == b.vertex);
    }
}

TEST_CASE("pivot counts stay bounded") {
    const GeneratedInstance g = gen_blockfamily(8);
    const LpOutcome lp = solve_lp(g.instance, {}, Fixings{});
    REQUIRE(lp.status == LpStatus::Optimal);
    CHECK(lp.pivot_count < 500);
}

TEST_CASE("fixing validation") {
    const GeneratedInstance g = gen_toy(make_rational(3, 2));
    CHECK_THROWS(solve_lp(g.instance, {}, Fixings{}.with(1, 0)));   // continuous variable
    CHECK_THROWS(solve_lp(g.instance, {}, Fixings{}.with(99, 0)));  // unknown index
}
