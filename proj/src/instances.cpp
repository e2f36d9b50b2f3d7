#include "bnclab/instances.hpp"

#include <algorithm>
#include <stdexcept>

namespace bnclab {

namespace {

VarInfo make_var(std::string label, bool integer, Rational lb, Rational ub, int block) {
    VarInfo v;
    v.label = std::move(label);
    v.integer = integer;
    v.lb = std::move(lb);
    v.ub = std::move(ub);
    v.block = block;
    v.family = family_of_label(v.label);
    return v;
}

}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::Toy: return "toy";
        case Family::Gadget2D: return "gadget2d";
        case Family::Triangles: return "triangles";
        case Family::BlockFamily: return "blocks";
        case Family::ScaledBlockFamily: return "scaled-blocks";
    }
    throw std::logic_error("unknown family");
}

Family family_from_name(const std::string& name) {
    if (name == "toy") return Family::Toy;
    if (name == "gadget2d") return Family::Gadget2D;
    if (name == "triangles") return Family::Triangles;
    if (name == "blocks") return Family::BlockFamily;
    if (name == "scaled-blocks") return Family::ScaledBlockFamily;
    throw std::invalid_argument("unknown family name: " + name);
}

GeneratedInstance gen_toy(const Rational& s) {
    if (s <= 1 || s >= 2) throw std::invalid_argument("toy requires 1 < s < 2");
    GeneratedInstance g;
    Instance& inst = g.instance;
    inst.name = "toy[s=" + to_string(s) + "]";
    inst.vars.push_back(make_var("x", true, 0, 2, 1));
    inst.vars.push_back(make_var("y", false, 0, s, 1));
    inst.objective = {Rational(0), Rational(-1)};
    inst.rows.push_back({{{0, Rational(1)}, {1, Rational(1)}}, Sense::Equal, s});

    Cut cut1{"cut1", {{0, make_rational(-1, 2)}, {1, Rational(-1)}}, Rational(-1), {}};
    Cut cut2{"cut2", {{0, make_rational(-1, 3)}, {1, Rational(-2)}}, Rational(-1), {}};
    g.pools["pool"] = {cut1, cut2};
    return g;
}

GeneratedInstance gen_gadget2d(int m) {
    if (m < 1) throw std::invalid_argument("gadget2d requires m >= 1");
    GeneratedInstance g;
    Instance& inst = g.instance;
    inst.name = "gadget2d[m=" + std::to_string(m) + "]";
    std::vector<Cut> c1, c2;
    for (int i = 1; i <= m; ++i) {
        const int x = 2 * (i - 1);
        const int y = x + 1;
        inst.vars.push_back(make_var("x_" + std::to_string(i), true, 0, 1, i));
        inst.vars.push_back(make_var("y_" + std::to_string(i), true, 0, 1, i));
        inst.objective.push_back(Rational(6));
        inst.objective.push_back(Rational(5));
        inst.rows.push_back({{{x, Rational(-7)}, {y, Rational(1)}}, Sense::LessEq,
                             make_rational(3, 10)});
        inst.rows.push_back({{{x, Rational(5)}, {y, Rational(8)}}, Sense::LessEq,
                             make_rational(17, 2)});
        inst.rows.push_back({{{x, Rational(3)}, {y, Rational(2)}}, Sense::LessEq,
                             make_rational(37, 10)});
        c1.push_back({"c1_" + std::to_string(i),
                      {{x, Rational(-7)}, {y, Rational(20)}},
                      Rational(0),
                      {}});
        c2.push_back({"c2_" + std::to_string(i),
                      {{x, Rational(13)}, {y, Rational(10)}},
                      Rational(14),
                      {}});
    }
    g.pools["C1"] = std::move(c1);
    g.pools["C2"] = std::move(c2);
    return g;
}

GeneratedInstance gen_triangles(int n, const Rational& eps) {
    if (n < 4) throw std::invalid_argument("triangles requires n >= 4");
    if (eps <= 0) throw std::invalid_argument("triangles requires eps > 0");
    const int m = n / 3;
    const int r = n - 3 * m;
    const Rational quarter = make_rational(1, 4);
    const Rational eps_prime = std::min(quarter, Rational(eps / m));

    GeneratedInstance g;
    Instance& inst = g.instance;
    inst.name = "triangles[n=" + std::to_string(n) + ",eps=" + to_string(eps) + "]";
    std::vector<Cut> pool_c, pool_ct;
    for (int t = 1; t <= m; ++t) {
        const int base = 3 * (t - 1);
        for (int i = 1; i <= 3; ++i) {
            inst.vars.push_back(
                make_var("x_" + std::to_string(t) + "," + std::to_string(i), true, 0, 1, t));
            inst.objective.push_back(Rational(1));
        }
        inst.rows.push_back(
            {{{base, Rational(1)}, {base + 1, Rational(1)}}, Sense::LessEq, Rational(1)});
        inst.rows.push_back(
            {{{base, Rational(1)}, {base + 2, Rational(1)}}, Sense::LessEq, Rational(1)});
        inst.rows.push_back(
            {{{base + 1, Rational(1)}, {base + 2, Rational(1)}}, Sense::LessEq, Rational(1)});

        const SparseVec sum = {{base, Rational(1)}, {base + 1, Rational(1)},
                               {base + 2, Rational(1)}};
        const std::string id_c = "c_" + std::to_string(t);
        const std::string id_ct = "ct_" + std::to_string(t);
        pool_c.push_back({id_c, sum, Rational(1), id_ct});
        pool_ct.push_back({id_ct, sum, Rational(1) + eps_prime, id_c});
    }
    for (int j = 1; j <= r; ++j) {
        const int idx = 3 * m + j - 1;
        inst.vars.push_back(make_var("y_" + std::to_string(j), false, 0, 1, 0));
        inst.vars.back().block.reset();
        inst.objective.push_back(Rational(0));
        inst.rows.push_back({{{idx, Rational(1)}}, Sense::Equal, Rational(0)});
    }
    g.pools["C"] = std::move(pool_c);
    g.pools["Ctilde"] = std::move(pool_ct);
    g.derived["epsPrime"] = eps_prime;
    g.derived["m"] = Rational(m);
    return g;
}

namespace {

GeneratedInstance blockfamily_impl(int n, int blocks, const Rational& scale,
                                   const std::string& name) {
    GeneratedInstance g;
    const Rational M(7 * n + 8);
    Instance& inst = g.instance;
    inst.name = name;
    // Variable order: all b, then all p, then y·,1, y·,2, y·,3.
    const int nb = blocks;
    auto b_idx = [&](int i) { return i - 1; };
    auto p_idx = [&](int i) { return nb + i - 1; };
    auto y_idx = [&](int i, int k) { return (2 + k) * nb + i - 1; };  // k in {0, 1, 2}

    inst.vars.resize(5 * nb);
    inst.objective.assign(5 * nb, Rational(0));
    for (int i = 1; i <= nb; ++i) {
        inst.vars[b_idx(i)] = make_var("b_" + std::to_string(i), true, 0, 1, i);
        inst.vars[p_idx(i)] = make_var("p_" + std::to_string(i), true, 0, 1, i);
        for (int k = 1; k <= 3; ++k)
            inst.vars[y_idx(i, k - 1)] = make_var(
                "y_" + std::to_string(i) + "," + std::to_string(k), true, 0, 1, i);
        inst.objective[b_idx(i)] = Rational(24) * scale;
        inst.objective[p_idx(i)] = M * scale;
        inst.objective[y_idx(i, 0)] = Rational(4) * scale;
        inst.objective[y_idx(i, 1)] = Rational(8) * scale;
        inst.objective[y_idx(i, 2)] = Rational(8) * scale;
    }
    for (int i = 1; i <= nb; ++i) {
        auto row = [&](SparseVec coeffs) {
            std::sort(coeffs.begin(), coeffs.end());
            inst.rows.push_back({std::move(coeffs), Sense::LessEq, Rational(2)});
        };
        row({{b_idx(i), Rational(2)}, {p_idx(i), Rational(1)}});
        row({{b_idx(i), Rational(1)}, {y_idx(i, 0), Rational(1)}, {y_idx(i, 1), Rational(1)}});
        row({{b_idx(i), Rational(1)}, {y_idx(i, 0), Rational(1)}, {y_idx(i, 2), Rational(1)}});
        row({{b_idx(i), Rational(1)}, {y_idx(i, 1), Rational(1)}, {y_idx(i, 2), Rational(1)}});
    }
    g.derived["M"] = M;
    return g;
}

}  // namespace

GeneratedInstance gen_blockfamily(int n) {
    if (n < 1) throw std::invalid_argument("block family requires n >= 1");
    return blockfamily_impl(n, n, Rational(1), "blocks[n=" + std::to_string(n) + "]");
}

GeneratedInstance gen_scaled_blockfamily(int n, const Rational& eta) {
    if (n < 3) throw std::invalid_argument("scaled block family requires n >= 3");
    if (eta <= 0) throw std::invalid_argument("eta must be positive");
    const Rational M(7 * n + 8);
    const Rational alpha = eta / (2 * (M + 27));
    GeneratedInstance g = blockfamily_impl(
        n, n, alpha, "scaled-blocks[n=" + std::to_string(n) + ",eta=" + to_string(eta) + "]");
    g.derived["alpha"] = alpha;
    return g;
}

GeneratedInstance gen_blockfamily_single_block(int n) {
    if (n < 1) throw std::invalid_argument("block family requires n >= 1");
    return blockfamily_impl(n, 1, Rational(1),
                            "blocks-single[n=" + std::to_string(n) + "]");
}

GeneratedInstance generate(const FamilySpec& spec) {
    switch (spec.family) {
        case Family::Toy: return gen_toy(spec.s);
        case Family::Gadget2D: return gen_gadget2d(spec.m);
        case Family::Triangles: return gen_triangles(spec.n, spec.eps);
        case Family::BlockFamily: return gen_blockfamily(spec.n);
        case Family::ScaledBlockFamily: return gen_scaled_blockfamily(spec.n, spec.eta);
    }
    throw std::logic_error("unknown family");
}

}  // namespace bnclab
