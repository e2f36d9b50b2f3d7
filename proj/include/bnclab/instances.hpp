#ifndef BNCLAB_INSTANCES_HPP
#define BNCLAB_INSTANCES_HPP

#include "bnclab/model.hpp"

#include <map>
#include <string>
#include <vector>

namespace bnclab {

enum class Family { Toy, Gadget2D, Triangles, BlockFamily, ScaledBlockFamily };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

// Declarative description of one generated instance; the CLI parses flags
// into this and reports echo it back.
struct FamilySpec {
    Family family = Family::BlockFamily;
    Rational s;        // Toy, in (1, 2)
    int m = 0;         // Gadget2D blocks
    int n = 0;         // Triangles variables / block-family blocks
    Rational eps;      // Triangles perturbation budget
    Rational eta;      // ScaledBlockFamily eta_SB
};

struct GeneratedInstance {
    Instance instance;
    // Pool name -> cuts ("C1"/"C2" for the gadget, "C"/"Ctilde" for the
    // triangles). Families without root cuts leave this empty.
    std::map<std::string, std::vector<Cut>> pools;
    // Family constants worth echoing: "M", "alpha", "epsPrime", "m".
    std::map<std::string, Rational> derived;
};

// Two-variable mixed-integer example with one equality row and two valid
// cuts that the proxy scores and the LP bound improvement rank oppositely.
GeneratedInstance gen_toy(const Rational& s);

// m disjoint copies of the 2d polytope gadget with cut pools C1 and C2.
GeneratedInstance gen_gadget2d(int m);

// Stable set on floor(n/3) disjoint triangles plus padding variables pinned
// to zero; pools C and Ctilde differ only in right-hand sides, by epsPrime.
GeneratedInstance gen_triangles(int n, const Rational& eps);

// Block family I_n with M = 7n + 8: per block, binaries b, p, y1, y2, y3.
GeneratedInstance gen_blockfamily(int n);

// I_n with every objective coefficient multiplied by alpha = eta/(2(M+27)).
GeneratedInstance gen_scaled_blockfamily(int n, const Rational& eta);

// One standalone block of I_n (the constant M still comes from n); used by
// the block-value checks.
GeneratedInstance gen_blockfamily_single_block(int n);

GeneratedInstance generate(const FamilySpec& spec);

}  // namespace bnclab

#endif
