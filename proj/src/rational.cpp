#include "bnclab/rational.hpp"

#include <cctype>
#include <ostream>

namespace bnclab {

Rational parse_rational(std::string_view text) {
    auto is_int = [](std::string_view s) {
        if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!is_int(text)) throw std::invalid_argument("bad rational: " + std::string(text));
        return Rational(BigInt(std::string(text)));
    }
    const std::string_view num = text.substr(0, slash);
    const std::string_view den = text.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) throw std::invalid_argument("bad rational: " + std::string(text));
    const BigInt d{std::string(den)};
    if (d == 0) throw std::invalid_argument("bad rational (zero denominator): " + std::string(text));
    return Rational(BigInt{std::string(num)}) / Rational(d);
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

const Rational& ExtendedRational::value() const {
    if (kind_ != Kind::Finite) throw std::logic_error("value() on infinite ExtendedRational");
    return value_;
}

int ExtendedRational::compare(const ExtendedRational& other) const {
    if (kind_ == other.kind_) {
        if (kind_ != Kind::Finite) return 0;
        return value_.compare(other.value_);
    }
    return static_cast<int>(kind_) < static_cast<int>(other.kind_) ? -1 : 1;
}

ExtendedRational ExtendedRational::operator+(const ExtendedRational& o) const {
    if (is_finite() && o.is_finite()) return ExtendedRational(value_ + o.value_);
    if (is_finite()) return o;
    if (o.is_finite()) return *this;
    if (kind_ == o.kind_) return *this;
    throw std::logic_error("inf + -inf is undefined");
}

ExtendedRational ExtendedRational::operator-(const ExtendedRational& o) const {
    if (o.is_finite()) {
        if (is_finite()) return ExtendedRational(value_ - o.value_);
        return *this;
    }
    if (is_finite() || kind_ != o.kind_) return o.is_pos_inf() ? neg_inf() : pos_inf();
    throw std::logic_error("inf - inf is undefined");
}

std::string ExtendedRational::str() const {
    switch (kind_) {
        case Kind::NegInf: return "-inf";
        case Kind::PosInf: return "inf";
        default: return value_.str();
    }
}

std::ostream& operator<<(std::ostream& os, const ExtendedRational& v) { return os << v.str(); }

ExtendedRational max(const ExtendedRational& a, const ExtendedRational& b) {
    return a.compare(b) >= 0 ? a : b;
}

ExtendedRational min(const ExtendedRational& a, const ExtendedRational& b) {
    return a.compare(b) <= 0 ? a : b;
}

ExtendedRational ext_product_score(const ExtendedRational& d0, const ExtendedRational& d1,
                                   const Rational& eta) {
    if (eta <= 0) throw std::invalid_argument("eta must be positive");
    if (d0.is_pos_inf() || d1.is_pos_inf()) return ExtendedRational::pos_inf();
    const Rational a = d0.is_finite() && d0.value() > eta ? d0.value() : eta;
    const Rational b = d1.is_finite() && d1.value() > eta ? d1.value() : eta;
    return ExtendedRational(a * b);
}

}  // namespace bnclab
