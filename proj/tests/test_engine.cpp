#include "bnclab/engine.hpp"
#include "bnclab/instances.hpp"

#include "dfs_enumerator.hpp"

#include <doctest.h>

using namespace bnclab;

TEST_CASE("strong branching solves the block family in 2n+1 nodes") {
    const GeneratedInstance g = gen_blockfamily(3);
    const TreeRecord tree =
        run_bnb(g.instance, {}, PolicySpec::strong_branching(), Rational(147));
    CHECK(tree.tree_size() == 7);
    REQUIRE(tree.opt_value.has_value());
    CHECK(*tree.opt_value == 147);
    check_tree_well_formed(tree);

    // The chain fixes b_1, b_2, b_3 to zero in processing order.
    CHECK(tree.nodes[0].branched_on == 0);
    CHECK(tree.processing_order[0] == 0);
}

TEST_CASE("perturbed scores blow the scaled family up") {
    const GeneratedInstance g = gen_scaled_blockfamily(3, Rational(1));
    const Rational opt = enumerate_binary(g.instance, {}).opt_value;
    const TreeRecord tree =
        run_bnb(g.instance, {}, PolicySpec::perturbed_sb(make_rational(1, 10)), opt);
    CHECK(tree.tree_size() >= 15);  // 2^(n+1) - 1
    check_tree_well_formed(tree);
    // Independent recursion agrees on the exact size.
    CHECK(tree.tree_size() ==
          testing::dfs_tree_size(g.instance, {}, PolicySpec::perturbed_sb(make_rational(1, 10)),
                                 opt));
}

TEST_CASE("gadget runs under the two pools") {
    const GeneratedInstance g = gen_gadget2d(2);
    const Rational opt(12);
    const TreeRecord with_c1 =
        run_bnb(g.instance, g.pools.at("C1"), PolicySpec::strong_branching(), opt);
    CHECK(with_c1.tree_size() <= 5);
    check_tree_well_formed(with_c1);
    const TreeRecord with_c2 =
        run_bnb(g.instance, g.pools.at("C2"), PolicySpec::strong_branching(), opt);
    CHECK(with_c2.tree_size() >= 1);
    check_tree_well_formed(with_c2);
    CHECK(with_c2.tree_size() ==
          testing::dfs_tree_size(g.instance, g.pools.at("C2"), PolicySpec::strong_branching(),
                                 opt));
}

TEST_CASE("deviation counting") {
    const GeneratedInstance g = gen_blockfamily(7);
    const PolicySpec sb = PolicySpec::strong_branching();
    CHECK(count_deviations(g.instance, {}, sb, PolicySpec::deviation(3),
                           DeviationMode::AlongExpertRun) == 3);
    CHECK(count_deviations(g.instance, {}, sb, sb, DeviationMode::AlongExpertRun) == 0);
    CHECK(count_deviations(g.instance, {}, sb, PolicySpec::deviation(0),
                           DeviationMode::AlongExpertRun) == 0);
    CHECK(count_deviations(g.instance, {}, sb, PolicySpec::deviation(0),
                           DeviationMode::AlongCandidateRun) == 0);
}

TEST_CASE("warm starts never grow the tree") {
    const GeneratedInstance g = gen_blockfamily(3);
    const TreeRecord cold = run_bnb(g.instance, {}, PolicySpec::strong_branching(), {});
    const TreeRecord warm = run_bnb(g.instance, {}, PolicySpec::strong_branching(),
                                    Rational(147));
    CHECK(warm.tree_size() <= cold.tree_size());
    REQUIRE(cold.opt_value.has_value());
    CHECK(*cold.opt_value == 147);  // found by search, not seeded
    CHECK(!cold.incumbent_trace.empty());

    const GeneratedInstance tri = gen_triangles(4, Rational(1));
    const TreeRecord tri_cold =
        run_bnb(tri.instance, tri.pools.at("Ctilde"), PolicySpec::strong_branching(), {});
    REQUIRE(tri_cold.opt_value.has_value());
    CHECK(*tri_cold.opt_value == enumerate_binary(tri.instance, {}).opt_value);
    check_tree_well_formed(tri_cold);
    const TreeRecord tri_warm = run_bnb(tri.instance, tri.pools.at("Ctilde"),
                                        PolicySpec::strong_branching(), Rational(1));
    CHECK(tri_warm.tree_size() <= tri_cold.tree_size());

    const GeneratedInstance gadget = gen_gadget2d(2);
    const TreeRecord gadget_cold =
        run_bnb(gadget.instance, gadget.pools.at("C2"), PolicySpec::strong_branching(), {});
    const TreeRecord gadget_warm = run_bnb(gadget.instance, gadget.pools.at("C2"),
                                           PolicySpec::strong_branching(), Rational(12));
    CHECK(gadget_warm.tree_size() <= gadget_cold.tree_size());
    REQUIRE(gadget_cold.opt_value.has_value());
    CHECK(*gadget_cold.opt_value == 12);
}

TEST_CASE("edge monotonicity and statuses") {
    const GeneratedInstance g = gen_gadget2d(2);
    const TreeRecord tree =
        run_bnb(g.instance, g.pools.at("C2"), PolicySpec::strong_branching(), Rational(12));
    for (const auto& node : tree.nodes) {
        if (node.parent >= 0) CHECK(node.lp.value <= tree.nodes[node.parent].lp.value);
        CHECK(node.status != NodeStatus::Open);
        CHECK(node.depth == node.fixings.size());
    }
}

TEST_CASE("tree records replay byte-identically") {
    const GeneratedInstance g = gen_blockfamily(4);
    auto once = [&]() {
        return tree_to_json(
            run_bnb(g.instance, {}, PolicySpec::capped_sb(Rational(9),
                                                          TieBreak::PreferY1ThenSmallest),
                    Rational(4 * (36 + 20))));
    };
    CHECK(once() == once());
}

TEST_CASE("dot export shape") {
    const GeneratedInstance g1 = gen_blockfamily(1);
    const Rational opt = enumerate_binary(g1.instance, {}).opt_value;
    const TreeRecord tree = run_bnb(g1.instance, {}, PolicySpec::strong_branching(), opt);
    REQUIRE(tree.tree_size() == 3);
    const std::string dot = export_dot(tree);
    CHECK(dot.find("digraph bnb") != std::string::npos);
    CHECK(dot.find("b_1=0") != std::string::npos);
    CHECK(dot.find("b_1=1") != std::string::npos);
    CHECK(export_dot_from_json(tree_to_json(tree)) == dot);

    // A warm-started root at the optimum prunes immediately: one node, no edges.
    const GeneratedInstance tri = gen_triangles(4, Rational(1));
    const TreeRecord one =
        run_bnb(tri.instance, tri.pools.at("C"), PolicySpec::strong_branching(), Rational(1));
    CHECK(one.tree_size() == 1);
    CHECK(export_dot(one).find("->") == std::string::npos);
}

TEST_CASE("well-formedness checker rejects corrupted records") {
    const GeneratedInstance g = gen_blockfamily(2);  // M = 22, OPT = 84
    TreeRecord tree = run_bnb(g.instance, {}, PolicySpec::strong_branching(), Rational(84));
    REQUIRE(tree.tree_size() == 5);
    check_tree_well_formed(tree);
    TreeRecord broken = tree;
    std::swap(broken.processing_order[0], broken.processing_order[1]);
    CHECK_THROWS(check_tree_well_formed(broken));
    TreeRecord wrong_depth = tree;
    wrong_depth.nodes[1].depth += 1;
    CHECK_THROWS(check_tree_well_formed(wrong_depth));
}

TEST_CASE("chooser errors surface") {
    const GeneratedInstance g = gen_blockfamily(2);
    SubproblemSolver solver(g.instance, {});
    CHECK_THROWS(run_bnb_with_chooser(
        solver, [](const NodeView&) { return 2; },  // p_1 is never fractional
        Rational(84), {}));
    const GeneratedInstance toy = gen_toy(make_rational(3, 2));
    CHECK_THROWS(run_bnb(toy.instance, {}, PolicySpec::strong_branching(), {}));
}
