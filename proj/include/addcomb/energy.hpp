#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "addcomb/convolution.hpp"
#include "addcomb/report.hpp"

namespace addcomb {

enum class EnergyMethod { naive, rep_squared };

// Exact common additive energy. Values are arbitrary-width: T_k grows
// like |A|^(2k-1).
struct EnergyValue {
    BigInt value;
    EnergyMethod method = EnergyMethod::rep_squared;
};

// E(A,B) = #{(a1,a2,b1,b2) : a1 - b1 = a2 - b2} = sum_x r_{A-B}(x)^2.
inline EnergyValue common_energy(const GroupSet& a, const GroupSet& b) {
    a.check_same_group(b);
    if (a.empty() || b.empty()) throw std::invalid_argument("energy of an empty set");
    const RepFunction r = rep_function(a, b, Sign::minus);
    BigInt e = 0;
    for (std::uint64_t c : r.counts) e += BigInt(c) * c;
    return {e, EnergyMethod::rep_squared};
}

inline EnergyValue common_energy(const GroupSet& a) { return common_energy(a, a); }

// Plain uint64 energy for small inputs; the subset-search hot path.
// Caller guarantees |A||B| is small enough that the sum fits.
inline std::uint64_t energy_u64(const GroupSet& a, const GroupSet& b) {
    const RepFunction r = rep_function(a, b, Sign::minus, RepMethod::naive);
    std::uint64_t e = 0;
    for (std::uint64_t c : r.counts) e += c * c;
    return e;
}

// T_k(f) for integer-valued f of finite support: k-fold self-convolution
// g = f*...*f, then sum g^2. Exact big-integer arithmetic throughout.
inline BigInt t_k(const GroupSpec& g, const std::vector<BigInt>& f, unsigned k) {
    if (k < 2) throw std::invalid_argument("t_k needs k >= 2");
    if (f.size() != g.order()) throw std::invalid_argument("function array length != order");
    std::vector<BigInt> acc = f;
    for (unsigned step = 1; step < k; ++step) {
        std::vector<BigInt> next(g.order(), BigInt(0));
        for (Element x = 0; x < g.order(); ++x) {
            if (acc[x] == 0) continue;
            for (Element y = 0; y < g.order(); ++y) {
                if (f[y] == 0) continue;
                next[g.add(x, y)] += acc[x] * f[y];
            }
        }
        acc.swap(next);
    }
    BigInt out = 0;
    for (const BigInt& v : acc) out += v * v;
    return out;
}

inline BigInt t_k(const GroupSet& a, unsigned k) {
    std::vector<BigInt> f(a.group().order(), BigInt(0));
    a.for_each([&](Element e) { f[e] = 1; });
    return t_k(a.group(), f, k);
}

// Cauchy-Schwarz: E(A,B) * |A +- B| >= |A|^2 |B|^2.
inline CheckReport cs_energy_lower_bound(const GroupSet& a, const GroupSet& b, Sign sign) {
    a.check_same_group(b);
    if (a.empty() || b.empty()) throw std::invalid_argument("cs bound needs nonempty sets");
    const BigInt e = common_energy(a, b).value;
    const BigInt span = sign == Sign::plus ? sumset(a, b).size() : difference_set(a, b).size();
    const Rational lhs = Rational(BigInt(a.size()) * a.size() * BigInt(b.size()) * b.size());
    const Rational rhs = Rational(e * span);
    return CheckReport::inequality("energy_cauchy_schwarz", a.group().to_string(),
                                   {{"A", a.elements()}, {"B", b.elements()}}, lhs, rhs,
                                   {sign == Sign::plus ? "sign=+" : "sign=-"});
}

}  // namespace addcomb
