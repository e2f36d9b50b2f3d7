#include "bnclab/rational.hpp"
#include "bnclab/surd.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace bnclab;

namespace {

Rational random_rational(std::mt19937_64& rng, long num_span = 200, long den_span = 40) {
    std::uniform_int_distribution<long> num(-num_span, num_span);
    std::uniform_int_distribution<long> den(1, den_span);
    return make_rational(num(rng), den(rng));
}

}  // namespace

TEST_CASE("rational parsing canonicalizes") {
    CHECK(to_string(parse_rational("3/6")) == "1/2");
    CHECK(to_string(parse_rational("-7/2")) == "-7/2");
    CHECK(to_string(parse_rational("5")) == "5");
    CHECK(to_string(parse_rational("-4/2")) == "-2");
    CHECK(to_string(make_rational(6, -4)) == "-3/2");
    CHECK(parse_rational("0/17") == 0);
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("a/b"));
    CHECK_THROWS(parse_rational("1.5"));
}

TEST_CASE("rational arithmetic round-trips") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 500; ++it) {
        const Rational x = random_rational(rng);
        const Rational y = random_rational(rng);
        CHECK((x + y) - y == x);
        if (y != 0) CHECK((x * y) / y == x);
    }
}

TEST_CASE("extended rational ordering") {
    const ExtendedRational ninf = ExtendedRational::neg_inf();
    const ExtendedRational pinf = ExtendedRational::pos_inf();
    const ExtendedRational mid{make_rational(1, 3)};
    CHECK(ninf < mid);
    CHECK(mid < pinf);
    CHECK(ninf < pinf);
    CHECK(pinf == ExtendedRational::pos_inf());
    CHECK_THROWS(pinf.value());
    CHECK((pinf + mid).is_pos_inf());
    CHECK((mid - pinf).is_neg_inf());
    CHECK_THROWS(pinf - pinf);
}

TEST_CASE("product score examples") {
    const Rational tiny = make_rational(1, 1000000);
    CHECK(ext_product_score(Rational(7), Rational(21), tiny) ==
          ExtendedRational(Rational(147)));
    CHECK(ext_product_score(ExtendedRational::pos_inf(), Rational(3), Rational(1)).is_pos_inf());
    CHECK(ext_product_score(Rational(0), Rational(0), make_rational(1, 2)) ==
          ExtendedRational(make_rational(1, 4)));
    CHECK_THROWS(ext_product_score(Rational(1), Rational(1), Rational(0)));
}

TEST_CASE("product score is symmetric and monotone") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 300; ++it) {
        const Rational eta = make_rational(1 + static_cast<long>(rng() % 20), 7);
        const Rational a = random_rational(rng, 60, 12);
        const Rational b = random_rational(rng, 60, 12);
        const Rational bump = make_rational(static_cast<long>(rng() % 9), 5);
        CHECK(ext_product_score(a, b, eta) == ext_product_score(b, a, eta));
        CHECK(ext_product_score(Rational(a + bump), b, eta) >= ext_product_score(a, b, eta));
    }
    CHECK(ext_product_score(Rational(5), ExtendedRational::pos_inf(), Rational(1)) ==
          ext_product_score(ExtendedRational::pos_inf(), Rational(5), Rational(1)));
}

TEST_CASE("surd comparison examples") {
    CHECK(surd_compare(SurdScore(make_rational(37, 10), Rational(449)),
                       SurdScore(make_rational(27, 10), Rational(269))) == Ordering::Greater);
    CHECK(surd_compare(SurdScore(Rational(0), Rational(5)),
                       SurdScore(Rational(0), Rational(7))) == Ordering::Equal);
    CHECK(surd_compare(SurdScore(make_rational(1, 4), make_rational(5, 4)),
                       SurdScore(make_rational(3, 2), make_rational(37, 4))) == Ordering::Less);
    // Sign splits decide without squaring.
    CHECK(surd_compare(SurdScore(Rational(-1), Rational(2)),
                       SurdScore(Rational(1), Rational(999))) == Ordering::Less);
    CHECK(surd_compare(SurdScore(Rational(-3), Rational(2)),
                       SurdScore(Rational(-1), Rational(2))) == Ordering::Less);
    CHECK_THROWS(SurdScore(Rational(1), Rational(0)));
    CHECK_THROWS(SurdScore(Rational(1), Rational(-2)));
}

TEST_CASE("surd comparison agrees with floating point on clear gaps") {
    std::mt19937_64 rng(13);
    for (int it = 0; it < 2000; ++it) {
        const Rational a = random_rational(rng);
        const Rational b = random_rational(rng);
        const Rational p = make_rational(1 + static_cast<long>(rng() % 400), 1 + rng() % 9);
        const Rational q = make_rational(1 + static_cast<long>(rng() % 400), 1 + rng() % 9);
        const double lhs = to_double(a) / std::sqrt(to_double(p));
        const double rhs = to_double(b) / std::sqrt(to_double(q));
        if (std::abs(lhs - rhs) <= 1e-9) continue;
        const Ordering got = surd_compare(SurdScore(a, p), SurdScore(b, q));
        CHECK(got == (lhs < rhs ? Ordering::Less : Ordering::Greater));
    }
}

TEST_CASE("surd sums: exact equalities and flips") {
    auto sqrt_of = [](long v) { return SurdScore(Rational(v), Rational(v)); };  // sqrt(v)
    // sqrt(2) + sqrt(8) = 3 sqrt(2) = sqrt(18).
    CHECK(compare_surd_sums(sqrt_of(2), sqrt_of(8), sqrt_of(18),
                            SurdScore(Rational(0), Rational(1))) == Ordering::Equal);
    CHECK(compare_surd_sums(sqrt_of(2), sqrt_of(3), sqrt_of(8),
                            SurdScore(Rational(0), Rational(1))) == Ordering::Greater);
    // Mixed signs: sqrt(5) - sqrt(2) vs sqrt(2): 2.236 - 1.414 < 1.414.
    CHECK(compare_surd_sums(sqrt_of(5), SurdScore(Rational(-2), Rational(2)), sqrt_of(2),
                            SurdScore(Rational(0), Rational(1))) == Ordering::Less);
    // All four terms nonzero and equal totals: sqrt(8)+sqrt(18) = sqrt(2)+sqrt(32).
    CHECK(compare_surd_sums(sqrt_of(8), sqrt_of(18), sqrt_of(2), sqrt_of(32)) ==
          Ordering::Equal);
}

TEST_CASE("surd sums agree with long double on clear gaps") {
    std::mt19937_64 rng(17);
    auto term = [&](bool allow_negative) {
        Rational numer = random_rational(rng, 30, 6);
        if (!allow_negative && numer < 0) numer = -numer;
        const Rational norm = make_rational(1 + static_cast<long>(rng() % 60), 1 + rng() % 5);
        return SurdScore(numer, norm);
    };
    auto value = [](const SurdScore& s) {
        return static_cast<long double>(to_double(s.numer)) /
               std::sqrt(static_cast<long double>(to_double(s.norm_sq)));
    };
    for (int it = 0; it < 4000; ++it) {
        const bool signs = it % 2 == 0;
        const SurdScore a1 = term(signs), a2 = term(signs);
        const SurdScore b1 = term(signs), b2 = term(signs);
        const long double lhs = value(a1) + value(a2);
        const long double rhs = value(b1) + value(b2);
        if (std::abs(static_cast<double>(lhs - rhs)) <= 1e-9) continue;
        const Ordering got = compare_surd_sums(a1, a2, b1, b2);
        CHECK(got == (lhs < rhs ? Ordering::Less : Ordering::Greater));
    }
}

TEST_CASE("scale and same-norm subtraction") {
    const SurdScore s(make_rational(3, 2), Rational(5));
    const SurdScore scaled_s = scale(make_rational(2, 3), s);
    CHECK(scaled_s.numer == 1);
    CHECK(scaled_s.norm_sq == 5);
    const SurdScore t(make_rational(1, 2), Rational(5));
    const SurdScore diff = subtract_same_norm(s, t);
    CHECK(diff.numer == 1);
    CHECK_THROWS(subtract_same_norm(s, SurdScore(Rational(1), Rational(7))));
}
