#include "bnclab/surd.hpp"

#include <cmath>
#include <vector>

namespace bnclab {

SurdScore::SurdScore(Rational n, Rational s) : numer(std::move(n)), norm_sq(std::move(s)) {
    if (norm_sq <= 0) throw std::invalid_argument("SurdScore norm_sq must be positive");
}

double SurdScore::approx() const { return to_double(numer) / std::sqrt(to_double(norm_sq)); }

Ordering surd_compare(const SurdScore& a, const SurdScore& b) {
    const int sa = a.numer.sign();
    const int sb = b.numer.sign();
    if (sa != sb) return ordering_from_sign(sa < sb ? -1 : 1);
    if (sa == 0) return Ordering::Equal;
    // Same nonzero sign: compare squares, reversing for negatives.
    const Rational lhs = a.numer * a.numer * b.norm_sq;
    const Rational rhs = b.numer * b.numer * a.norm_sq;
    return ordering_from_sign(sa * lhs.compare(rhs));
}

SurdScore scale(const Rational& lambda, const SurdScore& s) {
    return SurdScore(lambda * s.numer, s.norm_sq);
}

SurdScore subtract_same_norm(const SurdScore& a, const SurdScore& b) {
    if (a.norm_sq != b.norm_sq)
        throw std::invalid_argument("subtract_same_norm requires matching norm_sq");
    return SurdScore(a.numer - b.numer, a.norm_sq);
}

namespace {

// sign of sqrt(x) - r for x >= 0.
int cmp_sqrt_vs_rational(const Rational& x, const Rational& r) {
    if (r < 0) return 1;
    return (x - r * r).sign();
}

// sign of (sum of sqrt(A)) - (sum of sqrt(B)) with all radicands > 0 and
// |A| + |B| <= 4. Squares each side at most twice, splitting on the sign of
// intermediate rational remainders.
int cmp_sqrt_lists(std::vector<Rational> A, std::vector<Rational> B);

// sign of sqrt(x) - (sqrt(y) + r). Radicands nonnegative, r any sign.
int cmp_sqrt_vs_sqrt_plus_rational(const Rational& x, const Rational& y, const Rational& r) {
    if (r == 0) return (x - y).sign();
    if (r > 0) {
        if (x <= y) return -1;
        // Both sides positive; square once.
        const Rational rem = x - y - r * r;
        if (rem < 0) return -1;
        return (rem * rem - 4 * r * r * y).sign();
    }
    // r < 0: sqrt(x) + |r| versus sqrt(y).
    if (x >= y) return 1;
    const Rational rem = y - x - r * r;
    if (rem < 0) return 1;
    return (4 * r * r * x - rem * rem).sign();
}

int cmp_sqrt_lists(std::vector<Rational> A, std::vector<Rational> B) {
    std::erase_if(A, [](const Rational& v) { return v == 0; });
    std::erase_if(B, [](const Rational& v) { return v == 0; });
    if (A.empty() && B.empty()) return 0;
    if (A.empty()) return -1;
    if (B.empty()) return 1;
    if (A.size() == 1 && B.size() == 1) return (A[0] - B[0]).sign();
    if (A.size() == 1 && B.size() > 1) return -cmp_sqrt_lists(std::move(B), std::move(A));

    if (A.size() == 2 && B.size() == 1) {
        // (sqrt(a1)+sqrt(a2))^2 = a1+a2+2 sqrt(a1 a2) versus b.
        const Rational rem = B[0] - A[0] - A[1];
        return cmp_sqrt_vs_rational(4 * A[0] * A[1], rem);
    }
    if (A.size() == 2 && B.size() == 2) {
        // Square both sides, then compare the surd remainders.
        const Rational r = (B[0] + B[1]) - (A[0] + A[1]);
        return cmp_sqrt_vs_sqrt_plus_rational(4 * A[0] * A[1], 4 * B[0] * B[1], r);
    }
    if (A.size() == 3 && B.size() == 1) {
        // sqrt(a1)+sqrt(a2) versus sqrt(b)-sqrt(a3).
        if (B[0] <= A[2]) return 1;
        const Rational rem = B[0] + A[2] - A[0] - A[1];
        if (rem <= 0) return 1;
        // 2 sqrt(a1 a2) + 2 sqrt(b a3) versus rem; square once more.
        const Rational x = 4 * A[0] * A[1];
        const Rational y = 4 * B[0] * A[2];
        const Rational rem2 = rem * rem - x - y;
        if (rem2 < 0) return 1;
        return (4 * x * y - rem2 * rem2).sign();
    }
    // |A| = 4, B nonempty cannot happen with four input terms.
    throw std::logic_error("unsupported surd sum shape");
}

}  // namespace

Ordering compare_surd_sums(const SurdScore& a1, const SurdScore& a2, const SurdScore& b1,
                           const SurdScore& b2) {
    // Move every term to the side where it is nonnegative; value of a term
    // as a radicand is numer^2 / norm_sq.
    std::vector<Rational> lhs, rhs;
    auto push = [&](const SurdScore& s, bool on_lhs) {
        if (s.numer == 0) return;
        const Rational radicand = s.numer * s.numer / s.norm_sq;
        const bool positive = s.numer > 0;
        (positive == on_lhs ? lhs : rhs).push_back(radicand);
    };
    push(a1, true);
    push(a2, true);
    push(b1, false);
    push(b2, false);
    return ordering_from_sign(cmp_sqrt_lists(std::move(lhs), std::move(rhs)));
}

}  // namespace bnclab
