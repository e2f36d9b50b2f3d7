#ifndef BNCLAB_RATIONAL_HPP
#define BNCLAB_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bnclab {

// Exact arbitrary-precision rational. GMP keeps values canonical
// (gcd(|num|, den) = 1, den > 0) as long as construction goes through
// arithmetic; see parse_rational for the string path.
using Rational = boost::multiprecision::number<boost::multiprecision::backends::gmp_rational,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::backends::gmp_int,
                                             boost::multiprecision::et_off>;

inline Rational make_rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    return Rational(num) / Rational(den);
}

// Parses "p/q" or "p" (optional sign, decimal digits). Canonicalizes, so
// "3/6" parses to 1/2.
Rational parse_rational(std::string_view text);

// Canonical "p/q" form, "p" when the denominator is 1.
inline std::string to_string(const Rational& q) { return q.str(); }

inline bool is_integral(const Rational& q) { return denominator(q) == 1; }

double to_double(const Rational& q);

// A rational extended with +/- infinity. Node LP values use -inf for
// infeasible subproblems and branching scores use +inf for infeasible
// children, so the same type carries both.
class ExtendedRational {
  public:
    ExtendedRational() : kind_(Kind::Finite), value_(0) {}
    ExtendedRational(Rational v) : kind_(Kind::Finite), value_(std::move(v)) {}
    ExtendedRational(long v) : kind_(Kind::Finite), value_(v) {}

    static ExtendedRational pos_inf() { return ExtendedRational(Kind::PosInf); }
    static ExtendedRational neg_inf() { return ExtendedRational(Kind::NegInf); }

    bool is_finite() const { return kind_ == Kind::Finite; }
    bool is_pos_inf() const { return kind_ == Kind::PosInf; }
    bool is_neg_inf() const { return kind_ == Kind::NegInf; }

    // Finite value; throws on infinities.
    const Rational& value() const;

    // Total order with -inf < finite < +inf.
    int compare(const ExtendedRational& other) const;

    bool operator==(const ExtendedRational& o) const { return compare(o) == 0; }
    bool operator!=(const ExtendedRational& o) const { return compare(o) != 0; }
    bool operator<(const ExtendedRational& o) const { return compare(o) < 0; }
    bool operator<=(const ExtendedRational& o) const { return compare(o) <= 0; }
    bool operator>(const ExtendedRational& o) const { return compare(o) > 0; }
    bool operator>=(const ExtendedRational& o) const { return compare(o) >= 0; }

    // Addition where at most one operand is infinite (sufficient for score
    // arithmetic; inf + inf of mixed sign throws).
    ExtendedRational operator+(const ExtendedRational& o) const;
    ExtendedRational operator-(const ExtendedRational& o) const;

    // "p/q", "inf" or "-inf".
    std::string str() const;

  private:
    enum class Kind { NegInf, Finite, PosInf };
    explicit ExtendedRational(Kind k) : kind_(k), value_(0) {}

    Kind kind_;
    Rational value_;
};

std::ostream& operator<<(std::ostream& os, const ExtendedRational& v);

ExtendedRational max(const ExtendedRational& a, const ExtendedRational& b);
ExtendedRational min(const ExtendedRational& a, const ExtendedRational& b);

// Strong branching product score: +inf if either improvement is +inf,
// otherwise max(d0, eta) * max(d1, eta). Requires eta > 0.
ExtendedRational ext_product_score(const ExtendedRational& d0, const ExtendedRational& d1,
                                   const Rational& eta);

}  // namespace bnclab

#endif
