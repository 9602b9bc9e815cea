#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "addcomb/rational.hpp"

namespace addcomb {

// Deterministic cross-platform randomness: mt19937_64 seeded directly,
// uniform draws by rejection, Bernoulli by exact threshold on a 64-bit
// draw. std::*_distribution is avoided on purpose (implementation-defined
// sequences would break reproducible reports).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t u64() { return eng_(); }

    // Uniform in [0, n), n >= 1.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = eng_();
        while (v >= limit) v = eng_();
        return v % n;
    }

    // True with probability num/den (0 <= num/den <= 1), exact on the
    // 64-bit lattice: draws u and tests u * den < num * 2^64.
    bool bernoulli(const Rational& p) {
        const BigInt num = boost::multiprecision::numerator(p);
        const BigInt den = boost::multiprecision::denominator(p);
        const BigInt u = eng_();
        return u * den < num * (BigInt(1) << 64);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace addcomb
