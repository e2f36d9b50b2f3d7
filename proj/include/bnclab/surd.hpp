#ifndef BNCLAB_SURD_HPP
#define BNCLAB_SURD_HPP

#include "bnclab/rational.hpp"

namespace bnclab {

enum class Ordering { Less, Equal, Greater };

inline Ordering ordering_from_sign(int s) {
    return s < 0 ? Ordering::Less : (s > 0 ? Ordering::Greater : Ordering::Equal);
}

// Exact representative of numer / sqrt(norm_sq). Efficacy and parallelism
// scores live here because the cut norms are irrational; no square root is
// ever evaluated, comparisons go through sign analysis and squaring.
struct SurdScore {
    Rational numer;
    Rational norm_sq;  // > 0

    SurdScore(Rational n, Rational s);
    double approx() const;
};

// Exact order of the represented real values.
Ordering surd_compare(const SurdScore& a, const SurdScore& b);

// lambda * s represents (lambda * numer) / sqrt(norm_sq).
SurdScore scale(const Rational& lambda, const SurdScore& s);

// Difference of two scores over the same radicand (same norm_sq).
SurdScore subtract_same_norm(const SurdScore& a, const SurdScore& b);

// Exact order of a1 + a2 versus b1 + b2. Used to rank lambda-mixed
// efficacy/parallelism scores, whose two terms carry different radicands.
Ordering compare_surd_sums(const SurdScore& a1, const SurdScore& a2, const SurdScore& b1,
                           const SurdScore& b2);

}  // namespace bnclab

#endif
