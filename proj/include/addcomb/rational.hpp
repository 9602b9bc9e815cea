#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace addcomb {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_ratio(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    return Rational(num, den);
}

// Parses "3", "8/5", "-7/2". No whitespace.
inline Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        return make_ratio(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("malformed rational: " + text);
    }
}

inline std::string to_string(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

// Nonnegative rational extended with +infinity; used for the T parameter
// and for quantities that can degenerate (K of a singleton).
struct ExtRational {
    Rational value{0};
    bool infinite = false;

    ExtRational() = default;
    ExtRational(const Rational& v) : value(v) {}          // NOLINT(*explicit*)
    ExtRational(long long v) : value(v) {}                // NOLINT(*explicit*)
    static ExtRational inf() {
        ExtRational t;
        t.infinite = true;
        return t;
    }

    bool is_finite() const { return !infinite; }

    friend bool operator==(const ExtRational& a, const ExtRational& b) {
        if (a.infinite || b.infinite) return a.infinite == b.infinite;
        return a.value == b.value;
    }
    friend bool operator<(const ExtRational& a, const ExtRational& b) {
        if (a.infinite) return false;
        if (b.infinite) return true;
        return a.value < b.value;
    }
    friend bool operator<=(const ExtRational& a, const ExtRational& b) {
        return a == b || a < b;
    }
};

// Accepts "inf", "infinity" or a rational literal.
inline ExtRational parse_ext_rational(const std::string& text) {
    if (text == "inf" || text == "infinity" || text == "Inf") return ExtRational::inf();
    return ExtRational(parse_rational(text));
}

inline std::string to_string(const ExtRational& t) {
    return t.infinite ? "inf" : to_string(t.value);
}

// Smallest integer k with k >= a/b (a, b > 0).
inline std::uint64_t ceil_div_u64(std::uint64_t a, std::uint64_t b) {
    return (a + b - 1) / b;
}

// Rational square root bracket: returns r with r >= sqrt(x) (upper=true)
// or r <= sqrt(x) (upper=false), tight to within 1/2^precision_bits.
inline Rational sqrt_bound(const Rational& x, bool upper, unsigned precision_bits = 8) {
    if (x < 0) throw std::invalid_argument("sqrt of negative rational");
    if (x == 0) return Rational(0);
    // Scale so that we take an integer sqrt of x * 4^precision_bits.
    const BigInt scale = BigInt(1) << precision_bits;
    const BigInt num = boost::multiprecision::numerator(x) * scale * scale;
    const BigInt den = boost::multiprecision::denominator(x);
    // isqrt(num/den) bracketed by integer sqrt of num*den over den.
    const BigInt m = num * den;
    BigInt root = boost::multiprecision::sqrt(m);
    if (upper && root * root < m) root += 1;
    // root/(den*scale) approximates sqrt(x); direction verified below.
    Rational r = make_ratio(root, den * scale);
    if (upper) {
        while (r * r < x) r += make_ratio(1, scale);
    } else {
        while (r * r > x) r -= make_ratio(1, scale);
        if (r < 0) r = 0;
    }
    return r;
}

}  // namespace addcomb
