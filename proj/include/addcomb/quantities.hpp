#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "addcomb/energy.hpp"
#include "addcomb/rng.hpp"

namespace addcomb {

struct SearchBudget {
    unsigned max_exact_bits = 24;   // cap on |A|+|B| (or |A|) for exhaustive search
    unsigned heuristic_iters = 400; // restarts for the stochastic fallback
    std::uint64_t seed = 1;

    void validate() const {
        if (max_exact_bits == 0 || heuristic_iters == 0)
            throw std::invalid_argument("budget limits must be positive");
    }
};

enum class Exactness { exact, lower_bound, upper_bound };
enum class QuantityKind { doubling, s_t, e_t, shift_k, longest_ap, dimension, petridis };

struct QuantityResult {
    QuantityKind kind;
    Rational value{0};
    bool infinite = false;  // K(A) when no nonzero shift overlaps
    std::optional<ExtRational> T;
    std::optional<GroupSet> witness_x;
    std::optional<GroupSet> witness_y;
    Exactness exactness = Exactness::exact;
    std::vector<std::string> notes;
};

inline std::string to_string(QuantityKind k) {
    switch (k) {
        case QuantityKind::doubling: return "D";
        case QuantityKind::s_t: return "S_T";
        case QuantityKind::e_t: return "E_T";
        case QuantityKind::shift_k: return "K";
        case QuantityKind::longest_ap: return "k";
        case QuantityKind::dimension: return "dim";
        default: return "petridis";
    }
}

inline std::string to_string(Exactness e) {
    switch (e) {
        case Exactness::exact: return "exact";
        case Exactness::lower_bound: return "lower-bound";
        default: return "upper-bound";
    }
}

// Smallest admissible |X| for the constraint |X| >= |A|/T, by exact
// rational comparison; T = inf admits any nonempty X.
inline std::uint64_t floor_size(std::uint64_t a_size, const ExtRational& T) {
    if (!T.infinite && T.value < 1) throw std::invalid_argument("T must be >= 1");
    if (T.infinite) return 1;
    const BigInt num = boost::multiprecision::numerator(T.value);
    const BigInt den = boost::multiprecision::denominator(T.value);
    // k >= |A| * den / num
    BigInt k = (BigInt(a_size) * den + num - 1) / num;
    if (k < 1) k = 1;
    return static_cast<std::uint64_t>(k);
}

// ---------------------------------------------------------------------
// Exact subset-pair search. For X over positions of A (sorted ascending,
// so numeric position-mask order equals numeric group-mask order) the
// tables keep, for every |X| = k:
//   s_best[k]: max |X||Y| over Y subseteq B with X+Y direct,
//   e_best[k]: max |X|^2|Y|^2 / E(X,Y) over nonempty Y subseteq B,
// each with the lexicographically smallest (X mask, Y mask) witness.
// S_T / E_T for every T then reduce over k >= floor_size(|A|, T).
// ---------------------------------------------------------------------

struct PairEntry {
    bool found = false;
    std::uint64_t num = 0;  // S tables: |X||Y| (den = 1); E tables: |X|^2|Y|^2
    std::uint64_t den = 1;  // E tables: E(X,Y)
    std::uint64_t xmask = 0, ymask = 0;  // position masks

    // strictly larger value, or equal value with lexicographically
    // smaller (xmask, ymask)
    bool improved_by(std::uint64_t n, std::uint64_t d, std::uint64_t xm,
                     std::uint64_t ym) const {
        if (!found) return true;
        const unsigned __int128 lhs = static_cast<unsigned __int128>(n) * den;
        const unsigned __int128 rhs = static_cast<unsigned __int128>(num) * d;
        if (lhs != rhs) return lhs > rhs;
        if (xm != xmask) return xm < xmask;
        return ym < ymask;
    }
};

struct PairTables {
    bool exact = false;
    std::vector<Element> ea, eb;         // sorted elements of A and B
    std::vector<PairEntry> s_best;       // index k = |X|, entries 1..|A|
    std::vector<PairEntry> e_best;
};

namespace detail {

inline constexpr unsigned kHardExactCap = 40;  // u64 masks and u64 value math

struct DiffAlphabet {
    // ids of pairwise differences; group-size independent
    std::vector<int> aa;  // na*na, id of ea[i]-ea[j] in the A-A alphabet, -1 on diag
    std::vector<int> bb;  // nb*nb, id of eb[i]-eb[j] in the A-A alphabet or -1
    std::vector<int> ab;  // na*nb, id of ea[i]-eb[j] in the A-B alphabet
    std::size_t aa_count = 0, ab_count = 0;
};

inline DiffAlphabet build_alphabet(const GroupSpec& g, const std::vector<Element>& ea,
                                   const std::vector<Element>& eb) {
    DiffAlphabet al;
    const std::size_t na = ea.size(), nb = eb.size();
    std::map<Element, int> ids_aa, ids_ab;
    al.aa.assign(na * na, -1);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            if (i == j) continue;
            Element d = g.sub(ea[i], ea[j]);
            auto [it, fresh] = ids_aa.try_emplace(d, int(ids_aa.size()));
            al.aa[i * na + j] = it->second;
        }
    al.bb.assign(nb * nb, -1);
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            if (i == j) continue;
            Element d = g.sub(eb[i], eb[j]);
            auto it = ids_aa.find(d);
            al.bb[i * nb + j] = it == ids_aa.end() ? -1 : it->second;
        }
    al.ab.assign(na * nb, 0);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            Element d = g.sub(ea[i], eb[j]);
            auto [it, fresh] = ids_ab.try_emplace(d, int(ids_ab.size()));
            al.ab[i * nb + j] = it->second;
        }
    al.aa_count = ids_aa.size();
    al.ab_count = ids_ab.size();
    return al;
}

// Max independent set among B positions with per-position conflict masks;
// returns (size, lex-min mask) via exhaustive DFS with a size bound.
struct IsSearch {
    const std::vector<std::uint64_t>& conf;
    unsigned nb;
    unsigned best_l = 0;
    std::uint64_t best_ym = 0;

    void dfs(unsigned pos, std::uint64_t ym, unsigned cnt, std::uint64_t blocked) {
        if (pos == nb) {
            if (cnt > best_l || (cnt == best_l && ym < best_ym)) {
                best_l = cnt;
                best_ym = ym;
            }
            return;
        }
        if (cnt + (nb - pos) < best_l) return;
        if (!((blocked >> pos) & 1))
            dfs(pos + 1, ym | (std::uint64_t(1) << pos), cnt + 1, blocked | conf[pos]);
        dfs(pos + 1, ym, cnt, blocked);
    }
};

}  // namespace detail

inline PairTables exact_pair_tables(const GroupSet& A, const GroupSet& B,
                                    bool s_only = false) {
    A.check_same_group(B);
    if (A.empty() || B.empty())
        throw std::invalid_argument("subset-pair search needs nonempty sets");
    const GroupSpec& g = A.group();
    PairTables t;
    t.ea = A.elements();
    t.eb = B.elements();
    const unsigned na = unsigned(t.ea.size()), nb = unsigned(t.eb.size());
    if (na + nb > detail::kHardExactCap)
        throw std::invalid_argument("exact subset-pair search limited to |A|+|B| <= 40");
    t.s_best.assign(na + 1, {});
    t.e_best.assign(na + 1, {});
    const detail::DiffAlphabet al = detail::build_alphabet(g, t.ea, t.eb);

    // ---- S scan: branch on X, then max independent Y per X ----
    std::vector<char> in_dx(al.aa_count, 0);
    std::vector<int> dx_ids;
    std::vector<std::uint64_t> conf(nb);
    std::vector<unsigned> xpos;
    for (std::uint64_t xm = 1; xm < (std::uint64_t(1) << na); ++xm) {
        const unsigned k = unsigned(std::popcount(xm));
        PairEntry& slot = t.s_best[k];
        if (slot.found && std::uint64_t(k) * nb <= slot.num) continue;  // cannot strictly beat
        xpos.clear();
        for (unsigned i = 0; i < na; ++i)
            if ((xm >> i) & 1) xpos.push_back(i);
        dx_ids.clear();
        for (unsigned i : xpos)
            for (unsigned j : xpos) {
                if (i == j) continue;
                const int id = al.aa[i * na + j];
                if (!in_dx[id]) {
                    in_dx[id] = 1;
                    dx_ids.push_back(id);
                }
            }
        for (unsigned j = 0; j < nb; ++j) {
            std::uint64_t m = 0;
            for (unsigned jp = 0; jp < nb; ++jp) {
                if (jp == j) continue;
                const int id = al.bb[j * nb + jp];
                if (id >= 0 && in_dx[id]) m |= std::uint64_t(1) << jp;
            }
            conf[j] = m;
        }
        detail::IsSearch is{conf, nb};
        is.dfs(0, 0, 0, 0);
        for (int id : dx_ids) in_dx[id] = 0;
        if (is.best_l == 0) continue;  // unreachable: singletons always valid
        const std::uint64_t prod = std::uint64_t(k) * is.best_l;
        if (slot.improved_by(prod, 1, xm, is.best_ym)) {
            slot = PairEntry{true, prod, 1, xm, is.best_ym};
        }
    }

    if (s_only) {
        t.exact = true;
        return t;
    }

    // ---- E scan: Gray-code over Y with incremental energy ----
    std::vector<std::uint32_t> cnt(al.ab_count, 0);
    for (std::uint64_t xm = 1; xm < (std::uint64_t(1) << na); ++xm) {
        const unsigned k = unsigned(std::popcount(xm));
        PairEntry& slot = t.e_best[k];
        // value <= |X||Y| <= k*nb since E(X,Y) >= |X||Y|
        if (slot.found) {
            const unsigned __int128 bound =
                static_cast<unsigned __int128>(k) * nb * slot.den;
            if (bound <= slot.num) continue;
        }
        xpos.clear();
        for (unsigned i = 0; i < na; ++i)
            if ((xm >> i) & 1) xpos.push_back(i);
        std::uint64_t e = 0, ym = 0;
        unsigned l = 0;
        for (std::uint64_t step = 1; step < (std::uint64_t(1) << nb); ++step) {
            const unsigned j = unsigned(std::countr_zero(step));
            const std::uint64_t bit = std::uint64_t(1) << j;
            if (ym & bit) {
                for (unsigned i : xpos) {
                    std::uint32_t& c = cnt[al.ab[i * nb + j]];
                    e -= 2 * std::uint64_t(c) - 1;
                    --c;
                }
                ym ^= bit;
                --l;
            } else {
                for (unsigned i : xpos) {
                    std::uint32_t& c = cnt[al.ab[i * nb + j]];
                    e += 2 * std::uint64_t(c) + 1;
                    ++c;
                }
                ym ^= bit;
                ++l;
            }
            if (!ym) continue;
            const std::uint64_t kl = std::uint64_t(k) * l;
            if (t.e_best[k].improved_by(kl * kl, e, xm, ym))
                t.e_best[k] = PairEntry{true, kl * kl, e, xm, ym};
        }
        // unwind the final Gray state
        while (ym) {
            const unsigned j = unsigned(std::countr_zero(ym));
            for (unsigned i : xpos) --cnt[al.ab[i * nb + j]];
            ym &= ym - 1;
        }
    }
    t.exact = true;
    return t;
}

namespace detail {

inline GroupSet set_from_position_mask(const GroupSpec& g, const std::vector<Element>& elems,
                                       std::uint64_t mask) {
    GroupSet s(g);
    while (mask) {
        const unsigned i = unsigned(std::countr_zero(mask));
        s.insert(elems[i]);
        mask &= mask - 1;
    }
    return s;
}

// reduce a per-k table over k >= floor_k
inline const PairEntry* best_entry(const std::vector<PairEntry>& table, std::uint64_t floor_k) {
    const PairEntry* best = nullptr;
    for (std::uint64_t k = floor_k; k < table.size(); ++k) {
        const PairEntry& e = table[k];
        if (!e.found) continue;
        if (!best || best->improved_by(e.num, e.den, e.xmask, e.ymask)) best = &e;
    }
    return best;
}

// --- heuristic lower-bound search (shared by S beyond budget) ---

struct HeuristicPair {
    std::uint64_t product = 0;
    GroupSet x, y;
    HeuristicPair(const GroupSpec& g) : x(g), y(g) {}
};

inline GroupSet diff_bitset(const GroupSet& s) { return difference_set(s, s); }

inline HeuristicPair heuristic_direct_pair(const GroupSet& A, const GroupSet& B,
                                           std::uint64_t floor_k, const SearchBudget& budget) {
    const GroupSpec& g = A.group();
    const auto ea = A.elements();
    const auto eb = B.elements();
    HeuristicPair best(g);
    // trivial witness: X = A, Y any singleton
    best.x = A;
    best.y = GroupSet::singleton(g, eb.front());
    best.product = A.size();

    Rng rng(budget.seed);
    std::vector<Element> order_a = ea, order_b = eb;
    for (unsigned iter = 0; iter < budget.heuristic_iters; ++iter) {
        rng.shuffle(order_b);
        rng.shuffle(order_a);
        const std::uint64_t target_l = 1 + rng.below(eb.size());
        GroupSet y(g);
        for (std::uint64_t i = 0; i < target_l; ++i) y.insert(order_b[i]);
        GroupSet dy = diff_bitset(y);
        dy.erase(0);
        // greedy maximal X compatible with Y
        GroupSet x(g);
        for (Element a : order_a) {
            bool ok = true;
            x.for_each([&](Element x0) {
                if (ok && dy.contains(g.sub(a, x0))) ok = false;
            });
            if (ok) x.insert(a);
        }
        if (x.size() < floor_k) continue;
        // greedy extension of Y against the built X
        GroupSet dx = diff_bitset(x);
        dx.erase(0);
        for (Element b : eb) {
            if (y.contains(b)) continue;
            bool ok = true;
            y.for_each([&](Element y0) {
                if (ok && dx.contains(g.sub(b, y0))) ok = false;
            });
            if (ok) y.insert(b);
        }
        const std::uint64_t prod = x.size() * y.size();
        if (prod > best.product) {
            best.product = prod;
            best.x = x;
            best.y = y;
        }
    }
    return best;
}

inline std::uint64_t energy_small(const GroupSpec& g, const std::vector<Element>& xs,
                                  const std::vector<Element>& ys) {
    std::map<Element, std::uint64_t> c;
    for (Element x : xs)
        for (Element y : ys) ++c[g.sub(x, y)];
    std::uint64_t e = 0;
    for (auto& [d, v] : c) e += v * v;
    return e;
}

struct HeuristicEnergyPair {
    // value = num / (|A| * den)
    std::uint64_t num = 0, den = 1;
    GroupSet x, y;
    HeuristicEnergyPair(const GroupSpec& g) : x(g), y(g) {}
};

inline HeuristicEnergyPair heuristic_energy_pair(const GroupSet& A, const GroupSet& B,
                                                 std::uint64_t floor_k,
                                                 const SearchBudget& budget) {
    const GroupSpec& g = A.group();
    const auto ea = A.elements();
    const auto eb = B.elements();
    HeuristicEnergyPair best(g);
    auto consider = [&](const std::vector<Element>& xs, const std::vector<Element>& ys) {
        if (xs.size() < floor_k || ys.empty()) return;
        const std::uint64_t e = energy_small(g, xs, ys);
        const std::uint64_t kl = xs.size() * ys.size();
        const unsigned __int128 lhs = static_cast<unsigned __int128>(kl) * kl * best.den;
        const unsigned __int128 rhs = static_cast<unsigned __int128>(best.num) * e;
        if (lhs > rhs) {
            best.num = kl * kl;
            best.den = e;
            best.x = GroupSet::from_elements(g, xs);
            best.y = GroupSet::from_elements(g, ys);
        }
    };
    consider(ea, eb);  // X = A, Y = B
    consider(ea, {eb.front()});
    Rng rng(budget.seed);
    std::vector<Element> order_a = ea, order_b = eb;
    for (unsigned iter = 0; iter < budget.heuristic_iters; ++iter) {
        rng.shuffle(order_a);
        rng.shuffle(order_b);
        const std::uint64_t ka =
            std::max<std::uint64_t>(floor_k, 1 + rng.below(ea.size()));
        const std::uint64_t lb = 1 + rng.below(eb.size());
        if (ka > ea.size()) continue;
        std::vector<Element> xs(order_a.begin(), order_a.begin() + ka);
        std::vector<Element> ys(order_b.begin(), order_b.begin() + lb);
        consider(xs, ys);
    }
    return best;
}

}  // namespace detail

// S_T from a precomputed exact table.
inline QuantityResult s_from_tables(const PairTables& t, const GroupSet& A,
                                    const ExtRational& T) {
    const std::uint64_t floor_k = floor_size(A.size(), T);
    const PairEntry* e = detail::best_entry(t.s_best, floor_k);
    if (!e) throw std::logic_error("no admissible direct pair (impossible for T >= 1)");
    QuantityResult r;
    r.kind = QuantityKind::s_t;
    r.T = T;
    r.value = make_ratio(e->num, A.size());
    r.witness_x = detail::set_from_position_mask(A.group(), t.ea, e->xmask);
    r.witness_y = detail::set_from_position_mask(A.group(), t.eb, e->ymask);
    r.exactness = Exactness::exact;
    return r;
}

inline QuantityResult e_from_tables(const PairTables& t, const GroupSet& A,
                                    const ExtRational& T) {
    const std::uint64_t floor_k = floor_size(A.size(), T);
    const PairEntry* e = detail::best_entry(t.e_best, floor_k);
    if (!e) throw std::logic_error("no admissible pair (impossible for T >= 1)");
    QuantityResult r;
    r.kind = QuantityKind::e_t;
    r.T = T;
    r.value = make_ratio(e->num, BigInt(A.size()) * e->den);
    r.witness_x = detail::set_from_position_mask(A.group(), t.ea, e->xmask);
    r.witness_y = detail::set_from_position_mask(A.group(), t.eb, e->ymask);
    r.exactness = Exactness::exact;
    return r;
}

inline QuantityResult doubling(const GroupSet& a, const GroupSet& b) {
    if (a.empty()) throw std::invalid_argument("doubling needs nonempty A");
    a.check_same_group(b);
    QuantityResult r;
    r.kind = QuantityKind::doubling;
    r.value = make_ratio(sumset(a, b).size(), a.size());
    r.exactness = Exactness::exact;
    return r;
}

inline QuantityResult doubling(const GroupSet& a) { return doubling(a, a); }

inline QuantityResult s_quantity(const GroupSet& a, const GroupSet& b, const ExtRational& T,
                                 const SearchBudget& budget = {}) {
    if (a.empty() || b.empty()) throw std::invalid_argument("S_T needs nonempty sets");
    if (!T.infinite && T.value < 1) throw std::invalid_argument("T must be >= 1");
    budget.validate();
    if (a.size() + b.size() <= budget.max_exact_bits) {
        return s_from_tables(exact_pair_tables(a, b, /*s_only=*/true), a, T);
    }
    const std::uint64_t floor_k = floor_size(a.size(), T);
    auto h = detail::heuristic_direct_pair(a, b, floor_k, budget);
    QuantityResult r;
    r.kind = QuantityKind::s_t;
    r.T = T;
    r.value = make_ratio(h.product, a.size());
    r.witness_x = h.x;
    r.witness_y = h.y;
    r.exactness = Exactness::lower_bound;
    r.notes.push_back("budget exceeded: greedy/stochastic witness, value is a lower bound");
    return r;
}

inline QuantityResult e_quantity(const GroupSet& a, const GroupSet& b, const ExtRational& T,
                                 const SearchBudget& budget = {}) {
    if (a.empty() || b.empty()) throw std::invalid_argument("E_T needs nonempty sets");
    if (!T.infinite && T.value < 1) throw std::invalid_argument("T must be >= 1");
    budget.validate();
    if (a.size() + b.size() <= budget.max_exact_bits) {
        return e_from_tables(exact_pair_tables(a, b), a, T);
    }
    const std::uint64_t floor_k = floor_size(a.size(), T);
    auto h = detail::heuristic_energy_pair(a, b, floor_k, budget);
    QuantityResult r;
    r.kind = QuantityKind::e_t;
    r.T = T;
    r.value = make_ratio(h.num, BigInt(a.size()) * h.den);
    r.witness_x = h.x;
    r.witness_y = h.y;
    r.exactness = Exactness::lower_bound;
    r.notes.push_back("budget exceeded: stochastic witness, value is a lower bound");
    return r;
}

// K(A) = min_{s != 0} |A| / |A cap (A - s)|; +infinity when every nonzero
// shift misses.
inline QuantityResult shift_ratio_K(const GroupSet& a) {
    if (a.empty()) throw std::invalid_argument("K needs a nonempty set");
    const GroupSpec& g = a.group();
    if (g.order() < 2) throw std::invalid_argument("K needs a nontrivial group");
    const RepFunction r = rep_function(a, a, Sign::minus);
    std::uint64_t best_overlap = 0;
    Element best_s = 0;
    for (Element s = 1; s < g.order(); ++s) {
        if (r.at(s) > best_overlap) {
            best_overlap = r.at(s);
            best_s = s;
        }
    }
    QuantityResult out;
    out.kind = QuantityKind::shift_k;
    out.exactness = Exactness::exact;
    if (best_overlap == 0) {
        out.infinite = true;
        return out;
    }
    out.value = make_ratio(a.size(), best_overlap);
    GroupSet overlap(g);
    a.for_each([&](Element x) {
        if (a.contains(g.add(x, best_s))) overlap.insert(x);
    });
    out.witness_x = overlap;
    out.witness_y = GroupSet::singleton(g, best_s);
    return out;
}

// Longest arithmetic progression {a, a+d, ..., a+(l-1)d} of distinct
// elements inside A; l never exceeds the additive order of d.
inline QuantityResult longest_ap(const GroupSet& a) {
    if (a.empty()) throw std::invalid_argument("longest_ap needs a nonempty set");
    const GroupSpec& g = a.group();
    const auto elems = a.elements();
    std::uint64_t best_len = 1;
    Element best_a = elems.front(), best_d = 0;
    for (Element start : elems) {
        for (Element d = 1; d < g.order(); ++d) {
            const std::uint64_t cap = g.element_order(d);
            std::uint64_t len = 1;
            Element cur = start;
            while (len < cap) {
                cur = g.add(cur, d);
                if (!a.contains(cur)) break;
                ++len;
            }
            if (len > best_len) {
                best_len = len;
                best_a = start;
                best_d = d;
            }
        }
    }
    QuantityResult out;
    out.kind = QuantityKind::longest_ap;
    out.value = Rational(best_len);
    out.exactness = Exactness::exact;
    GroupSet w(g);
    Element cur = best_a;
    for (std::uint64_t i = 0; i < best_len; ++i) {
        w.insert(cur);
        if (best_d) cur = g.add(cur, best_d);
    }
    out.witness_x = w;
    return out;
}

namespace detail {

// Subset sums of the current dissociated candidate as a group bitset;
// a set is dissociated iff all its 2^k subset sums are distinct.
struct DimSearch {
    const GroupSpec& g;
    const std::vector<Element>& elems;
    std::uint64_t cap;
    unsigned best_size = 0;
    std::uint64_t best_mask = 0;

    std::vector<std::vector<Element>> sums_stack;  // sums per include-depth

    void dfs(unsigned pos, unsigned depth, std::uint64_t mask) {
        const std::uint64_t n = elems.size();
        if (depth > best_size || (depth == best_size && mask < best_mask)) {
            best_size = depth;
            best_mask = mask;
        }
        if (pos == n) return;
        if (depth + (n - pos) < best_size) return;
        if (depth < cap) {
            const Element a = elems[pos];
            const auto& sums = sums_stack[depth];
            bool collide = false;
            for (Element s : sums) {
                Element t_ = g.add(s, a);
                if (std::binary_search(sums.begin(), sums.end(), t_)) {
                    collide = true;
                    break;
                }
            }
            if (!collide) {
                auto& next = sums_stack[depth + 1];
                next.clear();
                next.reserve(sums.size() * 2);
                for (Element s : sums) next.push_back(s);
                for (Element s : sums) next.push_back(g.add(s, a));
                std::sort(next.begin(), next.end());
                dfs(pos + 1, depth + 1, mask | (std::uint64_t(1) << pos));
            }
        }
        dfs(pos + 1, depth, mask);
    }
};

}  // namespace detail

// dim(A): largest dissociated subset (0 never qualifies: eps*0 = 0 is a
// nontrivial vanishing combination).
inline QuantityResult additive_dimension(const GroupSet& a, const SearchBudget& budget = {}) {
    if (a.empty()) throw std::invalid_argument("dim needs a nonempty set");
    budget.validate();
    const GroupSpec& g = a.group();
    std::vector<Element> elems;
    for (Element e : a.elements())
        if (e != 0) elems.push_back(e);

    QuantityResult out;
    out.kind = QuantityKind::dimension;
    // 2^dim distinct subset sums must fit in the group
    const std::uint64_t cap = std::uint64_t(std::bit_width(g.order())) - 1;

    if (elems.size() <= budget.max_exact_bits) {
        detail::DimSearch search{g, elems, cap, 0, 0, {}};
        search.sums_stack.assign(std::min<std::size_t>(elems.size(), cap) + 1, {});
        search.sums_stack[0] = {0};
        search.dfs(0, 0, 0);
        out.value = Rational(search.best_size);
        out.witness_x = detail::set_from_position_mask(g, elems, search.best_mask);
        out.exactness = Exactness::exact;
        return out;
    }
    // greedy lower bound
    std::vector<Element> chosen;
    std::vector<Element> sums = {0};
    for (Element e : elems) {
        if (chosen.size() >= cap) break;
        bool collide = false;
        for (Element s : sums) {
            if (std::binary_search(sums.begin(), sums.end(), g.add(s, e))) {
                collide = true;
                break;
            }
        }
        if (collide) continue;
        std::vector<Element> next = sums;
        for (Element s : sums) next.push_back(g.add(s, e));
        std::sort(next.begin(), next.end());
        sums.swap(next);
        chosen.push_back(e);
    }
    out.value = Rational(chosen.size());
    out.witness_x = GroupSet::from_elements(g, chosen);
    out.exactness = Exactness::lower_bound;
    out.notes.push_back("budget exceeded: greedy dissociated subset, value is a lower bound");
    return out;
}

// Literal sign-vector dissociativity test: every assignment in {0,±1}^k.
// Meet-in-the-middle above 12 elements (subset-sum representation counts
// of the two halves multiply through an exact convolution).
inline bool is_dissociated(const GroupSet& lambda) {
    const GroupSpec& g = lambda.group();
    if (lambda.contains(0)) return false;
    const auto elems = lambda.elements();
    const std::size_t k = elems.size();
    if (k == 0) return true;
    if (k <= 12) {
        std::vector<int> eps(k, -1);
        while (true) {
            Element sum = 0;
            bool nontrivial = false;
            for (std::size_t i = 0; i < k; ++i) {
                if (eps[i] == 0) continue;
                nontrivial = true;
                sum = eps[i] > 0 ? g.add(sum, elems[i]) : g.sub(sum, elems[i]);
            }
            if (nontrivial && sum == 0) return false;
            std::size_t i = 0;
            while (i < k && eps[i] == 1) eps[i++] = -1;
            if (i == k) break;
            ++eps[i];
        }
        return true;
    }
    // all 2^k subset sums distinct <=> dissociated; count representations
    // of each group element by subset sums of the two halves and convolve.
    const std::size_t half = k / 2;
    auto counts_of = [&](std::size_t lo, std::size_t hi) {
        std::vector<std::uint64_t> c(g.order(), 0);
        const std::size_t m = hi - lo;
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << m); ++mask) {
            Element s = 0;
            for (std::size_t i = 0; i < m; ++i)
                if ((mask >> i) & 1) s = g.add(s, elems[lo + i]);
            ++c[s];
        }
        return c;
    };
    const auto c1 = counts_of(0, half);
    const auto c2 = counts_of(half, k);
    std::vector<std::uint64_t> conv(g.order(), 0);
    for (Element x = 0; x < g.order(); ++x) {
        if (!c1[x]) continue;
        for (Element y = 0; y < g.order(); ++y) {
            if (!c2[y]) continue;
            conv[g.add(x, y)] += c1[x] * c2[y];
        }
    }
    for (Element x = 0; x < g.order(); ++x)
        if (conv[x] > 1) return false;
    return true;
}

namespace detail {

struct PetridisSearch {
    const GroupSpec& g;
    const std::vector<Element>& elems;  // elements of A
    std::vector<std::uint32_t> cnt;     // r_{A+X} over the group
    std::uint64_t covered = 0;
    std::uint64_t best_num = 0, best_den = 0;  // |A+X| / |X|
    std::uint64_t best_mask = 0;

    void include(Element x) {
        for (Element a : elems) {
            Element t_ = g.add(a, x);
            if (cnt[t_]++ == 0) ++covered;
        }
    }
    void exclude(Element x) {
        for (Element a : elems) {
            Element t_ = g.add(a, x);
            if (--cnt[t_] == 0) --covered;
        }
    }

    void dfs(unsigned pos, unsigned k, std::uint64_t mask) {
        if (k > 0) {
            const bool better =
                best_den == 0 || covered * best_den < best_num * k ||
                (covered * best_den == best_num * k && mask < best_mask);
            if (better) {
                best_num = covered;
                best_den = k;
                best_mask = mask;
            }
        }
        if (pos == elems.size()) return;
        // every |A+X| >= |A|; subtree values are at least |A|/(k + remaining)
        if (best_den != 0) {
            const std::uint64_t max_k = k + (elems.size() - pos);
            if (elems.size() * best_den > best_num * max_k) return;
        }
        include(elems[pos]);
        dfs(pos + 1, k + 1, mask | (std::uint64_t(1) << pos));
        exclude(elems[pos]);
        dfs(pos + 1, k, mask);
    }
};

}  // namespace detail

// Petridis ratio: min over nonempty X subseteq A of |A+X|/|X|.
inline QuantityResult petridis_ratio(const GroupSet& a, const SearchBudget& budget = {}) {
    if (a.empty()) throw std::invalid_argument("petridis needs a nonempty set");
    budget.validate();
    const GroupSpec& g = a.group();
    const auto elems = a.elements();
    QuantityResult out;
    out.kind = QuantityKind::petridis;

    if (elems.size() <= budget.max_exact_bits) {
        detail::PetridisSearch search{g, elems, std::vector<std::uint32_t>(g.order(), 0)};
        search.dfs(0, 0, 0);
        out.value = make_ratio(search.best_num, search.best_den);
        out.witness_x = detail::set_from_position_mask(g, elems, search.best_mask);
        out.exactness = Exactness::exact;
        return out;
    }
    // sampled upper bound: the minimum over the candidates seen
    Rng rng(budget.seed);
    Rational best = make_ratio(sumset(a, a).size(), a.size());
    GroupSet best_x = a;
    std::vector<Element> order = elems;
    for (unsigned iter = 0; iter < budget.heuristic_iters; ++iter) {
        rng.shuffle(order);
        const std::uint64_t k = 1 + rng.below(order.size());
        GroupSet x(g);
        for (std::uint64_t i = 0; i < k; ++i) x.insert(order[i]);
        const Rational v = make_ratio(sumset(a, x).size(), x.size());
        if (v < best) {
            best = v;
            best_x = x;
        }
    }
    out.value = best;
    out.witness_x = best_x;
    out.exactness = Exactness::upper_bound;
    out.notes.push_back("budget exceeded: sampled subsets, value is an upper bound");
    return out;
}

}  // namespace addcomb
