#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "addcomb/set.hpp"

namespace addcomb {

enum class Sign { plus, minus };
enum class RepMethod { naive, convolution, auto_pick };

// r_{A+B} or r_{A-B} as a dense integer array over the whole group.
struct RepFunction {
    GroupSpec group;
    std::vector<std::uint64_t> counts;
    RepMethod used = RepMethod::naive;
    std::string note;  // nonempty when a requested convolution fell back

    std::uint64_t at(Element e) const { return counts[e]; }
    std::uint64_t total() const {
        std::uint64_t s = 0;
        for (auto c : counts) s += c;
        return s;
    }
    GroupSet support() const {
        GroupSet s(group);
        for (Element e = 0; e < counts.size(); ++e)
            if (counts[e]) s.insert(e);
        return s;
    }
};

namespace detail {

using cplx = std::complex<double>;

inline void fft_pow2(std::vector<cplx>& v, bool inverse) {
    const std::size_t n = v.size();
    if (n <= 1) return;
    for (std::size_t i = 1, j = 0; i < n; ++i) {  // bit reversal
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(v[i], v[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / double(len);
        const cplx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx u = v[i + k];
                cplx t = v[i + k + len / 2] * w;
                v[i + k] = u + t;
                v[i + k + len / 2] = u - t;
                w *= wl;
            }
        }
    }
    if (inverse) {
        for (auto& x : v) x /= double(n);
    }
}

// Chirp factor exp(sign * i*pi*j^2/n) with j^2 reduced mod 2n in exact
// integer arithmetic so large j lose no precision.
inline cplx chirp(std::uint64_t j, std::uint64_t n, double sgn) {
    const std::uint64_t q = (static_cast<unsigned __int128>(j) * j) % (2 * n);
    const double ang = sgn * std::numbers::pi * double(q) / double(n);
    return {std::cos(ang), std::sin(ang)};
}

// Arbitrary-length DFT via Bluestein's reduction to a power-of-two
// linear convolution.
inline void dft_bluestein(std::vector<cplx>& v, bool inverse) {
    const std::size_t n = v.size();
    const double sgn = inverse ? 1.0 : -1.0;
    std::size_t m = std::bit_ceil(2 * n - 1);
    std::vector<cplx> a(m, cplx(0)), b(m, cplx(0));
    for (std::size_t j = 0; j < n; ++j) a[j] = v[j] * chirp(j, n, sgn);
    for (std::size_t j = 0; j < n; ++j) {
        const cplx c = chirp(j, n, -sgn);
        b[j] = c;
        if (j) b[m - j] = c;
    }
    fft_pow2(a, false);
    fft_pow2(b, false);
    for (std::size_t j = 0; j < m; ++j) a[j] *= b[j];
    fft_pow2(a, true);
    for (std::size_t k = 0; k < n; ++k) v[k] = a[k] * chirp(k, n, sgn);
    if (inverse) {
        for (auto& x : v) x /= double(n);
    }
}

inline void dft_axis(std::vector<cplx>& v, bool inverse) {
    if (v.size() <= 1) return;
    if (std::has_single_bit(v.size()))
        fft_pow2(v, inverse);
    else
        dft_bluestein(v, inverse);
}

// In-place multidimensional DFT over the group's mixed-radix layout.
inline void dft_group(const GroupSpec& g, std::vector<cplx>& data, bool inverse) {
    const auto& factors = g.factors();
    std::uint64_t stride = 1;
    for (std::uint64_t n : factors) {
        const std::uint64_t block = stride * n;
        std::vector<cplx> line(n);
        for (std::uint64_t base = 0; base < data.size(); base += block) {
            for (std::uint64_t off = 0; off < stride; ++off) {
                for (std::uint64_t j = 0; j < n; ++j) line[j] = data[base + off + j * stride];
                dft_axis(line, inverse);
                for (std::uint64_t j = 0; j < n; ++j) data[base + off + j * stride] = line[j];
            }
        }
        stride = block;
    }
}

// Integer Walsh-Hadamard transform for F2^k groups; exact in int64.
inline void wht_int(std::vector<std::int64_t>& v, std::uint64_t n) {
    for (std::uint64_t len = 1; len < n; len <<= 1) {
        for (std::uint64_t i = 0; i < n; i += len << 1) {
            for (std::uint64_t j = i; j < i + len; ++j) {
                const std::int64_t u = v[j], t = v[j + len];
                v[j] = u + t;
                v[j + len] = u - t;
            }
        }
    }
}

}  // namespace detail

// Exactness envelope for the convolution path: the boolean-cube WHT is
// exact int64 while order*|A||B| stays below 2^62; the float FFT is
// trusted while max-count*order stays below 2^52 (counts are bounded by
// min(|A|,|B|)).
inline bool convolution_envelope_ok(const GroupSpec& g, std::uint64_t size_a,
                                    std::uint64_t size_b) {
    if (size_a == 0 || size_b == 0) return true;
    if (g.is_boolean_cube())
        return g.order() <= (std::uint64_t(1) << 62) / (size_a * size_b);
    const std::uint64_t max_count_bound = std::min(size_a, size_b);
    return g.order() <= (std::uint64_t(1) << 52) / max_count_bound;
}

namespace detail {

inline bool rep_naive_fill(const GroupSet& a, const GroupSet& b, Sign sign,
                           std::vector<std::uint64_t>& counts) {
    const GroupSpec& g = a.group();
    const auto eb = b.elements();
    a.for_each([&](Element x) {
        for (Element y : eb) {
            Element e = sign == Sign::plus ? g.add(x, y) : g.sub(x, y);
            ++counts[e];
        }
    });
    return true;
}

// Exact convolution path. Returns false when the exactness envelope or
// the rounding residual check rejects the float result.
inline bool rep_convolution_fill(const GroupSet& a, const GroupSet& b, Sign sign,
                                 std::vector<std::uint64_t>& counts, std::string& note) {
    const GroupSpec& g = a.group();
    const std::uint64_t order = g.order();
    const GroupSet bb = sign == Sign::plus ? b : b.negate();

    if (!convolution_envelope_ok(g, a.size(), b.size())) {
        note = "convolution exactness envelope exceeded; fell back to naive";
        return false;
    }

    if (g.is_boolean_cube()) {
        std::vector<std::int64_t> fa(order, 0), fb(order, 0);
        a.for_each([&](Element e) { fa[e] = 1; });
        bb.for_each([&](Element e) { fb[e] = 1; });
        wht_int(fa, order);
        wht_int(fb, order);
        for (std::uint64_t i = 0; i < order; ++i) fa[i] *= fb[i];
        wht_int(fa, order);
        for (std::uint64_t i = 0; i < order; ++i) counts[i] = std::uint64_t(fa[i] / std::int64_t(order));
        return true;
    }

    std::vector<cplx> fa(order, cplx(0)), fb(order, cplx(0));
    a.for_each([&](Element e) { fa[e] = cplx(1); });
    bb.for_each([&](Element e) { fb[e] = cplx(1); });
    dft_group(g, fa, false);
    dft_group(g, fb, false);
    for (std::uint64_t i = 0; i < order; ++i) fa[i] *= fb[i];
    dft_group(g, fa, true);
    for (std::uint64_t i = 0; i < order; ++i) {
        const double re = fa[i].real();
        const double rounded = std::round(re);
        if (std::abs(re - rounded) >= 0.25 || rounded < -0.25) {
            note = "convolution rounding residual too large; fell back to naive";
            return false;
        }
        counts[i] = static_cast<std::uint64_t>(rounded);
    }
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    if (total != a.size() * b.size()) {
        note = "convolution mass check failed; fell back to naive";
        return false;
    }
    return true;
}

}  // namespace detail

// counts[x] = #{(a,b) in A x B : a +- b = x}. The convolution path is
// exact-or-fallback: a failed envelope or residual check reruns naive and
// leaves a note. auto picks by the |A||B| vs order*log2(order) cost model.
inline RepFunction rep_function(const GroupSet& a, const GroupSet& b, Sign sign,
                                RepMethod method = RepMethod::auto_pick) {
    a.check_same_group(b);
    const GroupSpec& g = a.group();
    RepFunction rf{g, std::vector<std::uint64_t>(g.order(), 0), RepMethod::naive, {}};

    RepMethod chosen = method;
    if (method == RepMethod::auto_pick) {
        const double naive_cost = double(a.size()) * double(b.size());
        const double conv_cost =
            double(g.order()) * std::max(1.0, std::log2(double(g.order())));
        chosen = naive_cost <= conv_cost ? RepMethod::naive : RepMethod::convolution;
    }
    if (chosen == RepMethod::convolution) {
        if (detail::rep_convolution_fill(a, b, sign, rf.counts, rf.note)) {
            rf.used = RepMethod::convolution;
            return rf;
        }
        std::fill(rf.counts.begin(), rf.counts.end(), 0);
    }
    detail::rep_naive_fill(a, b, sign, rf.counts);
    rf.used = RepMethod::naive;
    return rf;
}

}  // namespace addcomb
