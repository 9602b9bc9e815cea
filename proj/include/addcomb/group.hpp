#pragma once

#include <cctype>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace addcomb {

using Element = std::uint64_t;

inline constexpr std::uint64_t kDefaultMaxOrder = std::uint64_t(1) << 24;

// A finite abelian group Z/n1 x ... x Z/nd. Elements are canonical
// mixed-radix indices in [0, order): index = sum_i coord_i * stride_i with
// stride_0 = 1 and the first factor least significant. Factor order is
// kept exactly as written in the spec string, no normalization.
class GroupSpec {
  public:
    explicit GroupSpec(std::vector<std::uint64_t> factors,
                       std::uint64_t max_order = kDefaultMaxOrder)
        : factors_(std::move(factors)) {
        if (factors_.empty()) throw std::invalid_argument("group needs at least one factor");
        order_ = 1;
        strides_.reserve(factors_.size());
        for (std::uint64_t n : factors_) {
            if (n < 2) throw std::invalid_argument("cyclic factor must be >= 2");
            strides_.push_back(order_);
            if (order_ > max_order / n)
                throw std::invalid_argument("group order exceeds configured maximum");
            order_ *= n;
        }
        boolean_cube_ = true;
        for (std::uint64_t n : factors_) boolean_cube_ &= (n == 2);
    }

    const std::vector<std::uint64_t>& factors() const { return factors_; }
    std::uint64_t order() const { return order_; }
    std::size_t rank() const { return factors_.size(); }

    void check_element(Element a) const {
        if (a >= order_) throw std::invalid_argument("element index out of range");
    }

    Element add(Element a, Element b) const {
        check_element(a);
        check_element(b);
        if (boolean_cube_) return a ^ b;
        if (factors_.size() == 1) {
            Element s = a + b;
            return s >= order_ ? s - order_ : s;
        }
        Element out = 0;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            const std::uint64_t n = factors_[i];
            std::uint64_t ca = (a / strides_[i]) % n;
            std::uint64_t cb = (b / strides_[i]) % n;
            std::uint64_t c = ca + cb;
            if (c >= n) c -= n;
            out += c * strides_[i];
        }
        return out;
    }

    Element neg(Element a) const {
        check_element(a);
        if (boolean_cube_) return a;
        if (factors_.size() == 1) return a == 0 ? 0 : order_ - a;
        Element out = 0;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            const std::uint64_t n = factors_[i];
            std::uint64_t c = (a / strides_[i]) % n;
            out += (c == 0 ? 0 : n - c) * strides_[i];
        }
        return out;
    }

    Element sub(Element a, Element b) const { return add(a, neg(b)); }

    Element scalar_mul(long long n, Element a) const {
        check_element(a);
        bool negate = n < 0;
        unsigned long long k = negate ? -static_cast<unsigned long long>(n)
                                      : static_cast<unsigned long long>(n);
        Element acc = 0;
        Element base = a;
        while (k > 0) {  // doubling
            if (k & 1) acc = add(acc, base);
            base = add(base, base);
            k >>= 1;
        }
        return negate ? neg(acc) : acc;
    }

    // Additive order of a: smallest l >= 1 with l*a = 0.
    std::uint64_t element_order(Element a) const {
        check_element(a);
        if (a == 0) return 1;
        std::uint64_t ord = 1;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            const std::uint64_t n = factors_[i];
            std::uint64_t c = (a / strides_[i]) % n;
            if (c == 0) continue;
            std::uint64_t oi = n / std::gcd(n, c);
            ord = std::lcm(ord, oi);
        }
        return ord;
    }

    Element encode(const std::vector<std::uint64_t>& coords) const {
        if (coords.size() != factors_.size())
            throw std::invalid_argument("coordinate tuple arity mismatch");
        Element out = 0;
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (coords[i] >= factors_[i])
                throw std::invalid_argument("coordinate out of range");
            out += coords[i] * strides_[i];
        }
        return out;
    }

    std::vector<std::uint64_t> decode(Element a) const {
        check_element(a);
        std::vector<std::uint64_t> coords(factors_.size());
        for (std::size_t i = 0; i < factors_.size(); ++i)
            coords[i] = (a / strides_[i]) % factors_[i];
        return coords;
    }

    bool is_boolean_cube() const { return boolean_cube_; }

    std::string to_string() const {
        if (boolean_cube_ && factors_.size() > 1)
            return "F2^" + std::to_string(factors_.size());
        std::string out;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (i) out += "x";
            out += "Z/" + std::to_string(factors_[i]);
        }
        return out;
    }

    friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
        return a.factors_ == b.factors_;
    }

  private:
    std::vector<std::uint64_t> factors_;
    std::vector<std::uint64_t> strides_;
    std::uint64_t order_ = 1;
    bool boolean_cube_ = false;
};

// Grammar: spec := term ("x" term)*, term := "Z/" int | "F2^" int.
// Whitespace-free, case-sensitive. "F2^n" desugars to n factors of Z/2.
inline GroupSpec parse_group_spec(const std::string& text,
                                  std::uint64_t max_order = kDefaultMaxOrder) {
    std::vector<std::uint64_t> factors;
    std::size_t pos = 0;
    auto parse_int = [&]() -> std::uint64_t {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw std::invalid_argument("malformed group spec: " + text);
        unsigned long long v = 0;
        try {
            v = std::stoull(text.substr(start, pos - start));
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed group spec: " + text);
        }
        return v;
    };
    while (true) {
        if (text.compare(pos, 2, "Z/") == 0) {
            pos += 2;
            factors.push_back(parse_int());
        } else if (text.compare(pos, 3, "F2^") == 0) {
            pos += 3;
            std::uint64_t n = parse_int();
            if (n == 0) throw std::invalid_argument("F2^0 is not a group spec");
            for (std::uint64_t i = 0; i < n; ++i) factors.push_back(2);
        } else {
            throw std::invalid_argument("malformed group spec: " + text);
        }
        if (pos == text.size()) break;
        if (text[pos] != 'x') throw std::invalid_argument("malformed group spec: " + text);
        ++pos;
    }
    return GroupSpec(std::move(factors), max_order);
}

}  // namespace addcomb
