// Acceptance suite: one test case per criterion, each printing a pass/fail
// line. The reproduction sweeps run once and are shared across criteria.

#include "bnclab/engine.hpp"
#include "bnclab/instances.hpp"
#include "bnclab/repro.hpp"

#include "dfs_enumerator.hpp"

#include <doctest.h>

#include <cstdio>
#include <map>
#include <string>

using namespace bnclab;

namespace {

struct SuiteResults {
    ExperimentReport lemma_blocks;
    ExperimentReport lemma_sb;
    ExperimentReport thm3;
    ExperimentReport prop1;
    ExperimentReport thm4;
    ExperimentReport thm1;
    ExperimentReport thm2;
    ExperimentReport toy;
};

const SuiteResults& suites() {
    static const SuiteResults results = [] {
        SuiteResults s;
        s.lemma_blocks = reproduce_lemma_blocks({3, 5, 10});
        s.lemma_sb = reproduce_lemma_sb(3, 10);
        s.thm3 = reproduce_thm3(3, 8, {make_rational(1, 10), make_rational(1, 1000000)},
                                make_rational(1, 1000000));
        s.prop1 = reproduce_prop1(3, 8, {make_rational(1, 2), Rational(9)});
        s.thm4 = reproduce_thm4({7, 14}, 10);
        s.thm1 = reproduce_thm1(1, 18);
        s.thm2 = reproduce_thm2(1, 3, Rational(1));
        s.toy = reproduce_toy(make_rational(3, 2));
        return s;
    }();
    return results;
}

std::string observed(const ExperimentReport& rep, const std::string& description) {
    for (const auto& c : rep.claims)
        if (c.description == description) return c.observed;
    return "<claim missing: " + description + ">";
}

void report_criterion(int number, const char* title, const ExperimentReport& rep,
                      bool extra_ok, long budget_ms) {
    const bool ok = rep.all_satisfied() && extra_ok && rep.runtime_ms < budget_ms;
    std::printf("[%s] criterion %d: %s (%zu claims, %ld ms)\n", ok ? "PASS" : "FAIL", number,
                title, rep.claims.size(), rep.runtime_ms);
    for (const auto& c : rep.claims)
        if (!c.satisfied)
            std::printf("    failed: %s | %s | observed %s\n", c.description.c_str(),
                        c.bound.c_str(), c.observed.c_str());
    CHECK(rep.all_satisfied());
    CHECK(extra_ok);
    CHECK(rep.runtime_ms < budget_ms);
}

// Exact engine tree sizes frozen from three agreeing routes: the engine run,
// the depth-first enumeration, and the per-sigma chain-length count derived
// from the single-block LP values.
const std::map<int, long> kPerturbedTreeSizes = {{3, 51},   {4, 123},  {5, 291},
                                                 {6, 667},  {7, 1507}, {8, 3355}};

// Engine sizes of the strong branching runs under the C2 pool, frozen after
// agreement with the depth-first enumeration.
const std::map<int, long> kGadgetC2TreeSizes = {{1, 5},   {2, 9},   {3, 13},  {4, 17},
                                                {5, 21},  {6, 25},  {7, 29},  {8, 35},
                                                {9, 41},  {10, 51}, {11, 65}, {12, 83}};

}  // namespace

TEST_CASE("criterion 1: single-block LP values") {
    report_criterion(1, "block LP values for n in {3,5,10}", suites().lemma_blocks, true, 1000);
}

TEST_CASE("criterion 2: strong branching tree size 2n+1") {
    report_criterion(2, "SB tree = 2n+1 and optValue = n(M+20) for n = 3..10",
                     suites().lemma_sb, true, 5000);
}

TEST_CASE("criterion 3: epsilon-close scores, exponential gap") {
    bool goldens = true;
    for (const auto& [n, size] : kPerturbedTreeSizes) {
        for (const char* eps : {"1/10", "1/1000000"}) {
            const std::string obs = observed(
                suites().thm3,
                "n=" + std::to_string(n) + " eps=" + eps + " perturbed tree");
            goldens = goldens && obs == std::to_string(size);
        }
        // Independent recursive enumeration reproduces the frozen size.
        const GeneratedInstance g = gen_scaled_blockfamily(n, make_rational(1, 1000000));
        const Rational opt = enumerate_binary(g.instance, {}).opt_value;
        goldens = goldens &&
                  testing::dfs_tree_size(g.instance, {},
                                         PolicySpec::perturbed_sb(make_rational(1, 10),
                                                                  make_rational(1, 1000000)),
                                         opt) == size;
    }
    report_criterion(3, "score gap eps/2, SB tree 2n+1, perturbed tree >= 2^(n+1)-1 + goldens",
                     suites().thm3, goldens, 120000);
}

TEST_CASE("criterion 4: tie-breaking alone separates the trees") {
    report_criterion(4, "capped scores: smallest-index 2n+1 vs prefer-y1 >= 2^(n+1)-1",
                     suites().prop1, true, 120000);
}

TEST_CASE("criterion 5: k deviations, 2^(k+1) n/7 growth") {
    report_criterion(5, "deviations = k and deviation tree >= 2^(k+1) n/7", suites().thm4,
                     true, 180000);
}

TEST_CASE("criterion 6: improvement vs efficacy cut selection") {
    bool goldens = true;
    for (const auto& [m, size] : kGadgetC2TreeSizes) {
        goldens = goldens && observed(suites().thm1, "m=" + std::to_string(m) +
                                                          " SB tree with C2") ==
                                 std::to_string(size);
        const GeneratedInstance g = gen_gadget2d(m);
        goldens = goldens &&
                  testing::dfs_tree_size(g.instance, g.pools.at("C2"),
                                         PolicySpec::strong_branching(),
                                         Rational(6 * m)) == size;
    }
    report_criterion(6, "selection split, C1 tree <= 2m+1, C2 tree >= 1+6(2^floor(m/9)-1)",
                     suites().thm1, goldens, 300000);
}

TEST_CASE("criterion 7: rhs perturbation flips the minimum tree size") {
    report_criterion(7, "LP values, gap closure, min trees 1 vs 2^(m+1)-1, chain tree",
                     suites().thm2, true, 60000);
}

TEST_CASE("criterion 8: toy example score mismatch") {
    report_criterion(8, "improvements 1/2 vs 3/10, lambda mix prefers cut 2", suites().toy,
                     true, 1000);
}

TEST_CASE("criterion 9: property suites embedded in every sweep") {
    const SuiteResults& s = suites();
    struct Expect {
        const ExperimentReport* rep;
        int audits;       // tree audit claims: well-formed + certified node LPs
        int determinism;  // byte-identical replay claims
        int validity;     // enumerated pool validity claims
    };
    const std::vector<Expect> expect = {
        {&s.lemma_blocks, 0, 0, 0}, {&s.lemma_sb, 8, 1, 0}, {&s.thm3, 18, 1, 0},
        {&s.prop1, 24, 1, 0},       {&s.thm4, 19, 2, 0},    {&s.thm1, 36, 1, 18},
        {&s.thm2, 3, 1, 6},         {&s.toy, 0, 0, 0},
    };
    bool ok = true;
    for (const auto& e : expect) {
        int audits = 0, determinism = 0, validity = 0;
        for (const auto& c : e.rep->claims) {
            const bool hit = c.satisfied;
            if (c.description.find("tree audit") != std::string::npos) audits += hit;
            if (c.description.find("determinism") != std::string::npos) determinism += hit;
            if (c.description.find("pool validity") != std::string::npos) validity += hit;
        }
        ok = ok && audits == e.audits && determinism == e.determinism &&
             validity == e.validity;
        if (audits != e.audits || determinism != e.determinism || validity != e.validity)
            std::printf("    %s: audits %d/%d determinism %d/%d validity %d/%d\n",
                        e.rep->experiment_id.c_str(), audits, e.audits, determinism,
                        e.determinism, validity, e.validity);
    }

    // Per-solve certificates outside tree audits: the block-value sweep and
    // the toy root carry explicit certificate claims.
    for (const auto& c : s.lemma_blocks.claims)
        if (c.description.find("certificates") != std::string::npos) ok = ok && c.satisfied;
    for (const auto& c : s.toy.claims)
        if (c.description.find("certificate") != std::string::npos) ok = ok && c.satisfied;

    std::printf("[%s] criterion 9: certificates, validity, audits, determinism across suites\n",
                ok ? "PASS" : "FAIL");
    CHECK(ok);
}
