#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "addcomb/quantities.hpp"
#include "addcomb/rng.hpp"

namespace addcomb {

// Failures of randomized or greedy constructions (CLI exit 4).
struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline GroupSet make_ap(const GroupSpec& g, Element start, Element diff, std::uint64_t len) {
    if (len < 1) throw std::invalid_argument("AP length must be >= 1");
    g.check_element(start);
    g.check_element(diff);
    if (len > 1 && len > g.element_order(diff))
        throw ConstructionError("AP self-intersects: length exceeds the order of the difference");
    GroupSet s(g);
    Element cur = start;
    for (std::uint64_t i = 0; i < len; ++i) {
        s.insert(cur);
        cur = g.add(cur, diff);
    }
    return s;
}

inline GroupSet make_subgroup(const GroupSpec& g, const std::vector<Element>& generators) {
    GroupSet h(g);
    h.insert(0);
    std::vector<Element> frontier = {0};
    while (!frontier.empty()) {
        std::vector<Element> next;
        for (Element x : frontier) {
            for (Element gen : generators) {
                const Element y = g.add(x, gen);
                if (!h.contains(y)) {
                    h.insert(y);
                    next.push_back(y);
                }
            }
        }
        frontier.swap(next);
    }
    return h;
}

inline bool is_subgroup(const GroupSet& h) {
    return !h.empty() && h.contains(0) && sumset(h, h) == h;
}

// Union of mutually additively disjoint subgroups (pairwise intersection
// {0} and pairwise direct sums; both verified).
inline GroupSet make_subgroup_union(const GroupSpec& g, const std::vector<GroupSet>& subgroups) {
    if (subgroups.empty()) throw std::invalid_argument("union of no subgroups");
    for (const auto& h : subgroups)
        if (!is_subgroup(h)) throw std::invalid_argument("operand is not a subgroup");
    for (std::size_t i = 0; i < subgroups.size(); ++i) {
        for (std::size_t j = i + 1; j < subgroups.size(); ++j) {
            GroupSet common = subgroups[i].intersect(subgroups[j]);
            common.erase(0);
            if (!common.empty())
                throw ConstructionError("subgroups are not additively disjoint");
            if (!is_direct_sum(subgroups[i], subgroups[j]))
                throw ConstructionError("subgroup pair is not a direct sum");
        }
    }
    GroupSet u(g);
    for (const auto& h : subgroups) u = u.unite(h);
    return u;
}

// Greedy Sidon set (all differences of distinct ordered pairs distinct)
// over a seeded random candidate order. The property is verified, not
// assumed: r_{A-A}(x) <= 1 off zero by construction invariant.
inline GroupSet make_sidon(const GroupSpec& g, std::uint64_t size, std::uint64_t seed) {
    if (size < 1) throw std::invalid_argument("Sidon size must be >= 1");
    std::vector<Element> candidates(g.order());
    for (Element e = 0; e < g.order(); ++e) candidates[e] = e;
    Rng rng(seed);
    rng.shuffle(candidates);

    GroupSet a(g);
    GroupSet diffs(g);  // all current nonzero differences
    for (Element c : candidates) {
        if (a.contains(c)) continue;
        bool ok = true;
        std::set<Element> fresh;
        a.for_each([&](Element x) {
            if (!ok) return;
            const Element d1 = g.sub(c, x);
            const Element d2 = g.sub(x, c);
            if (d1 == d2) {  // difference of additive order 2 repeats itself
                ok = false;
                return;
            }
            if (diffs.contains(d1) || diffs.contains(d2)) {
                ok = false;
                return;
            }
            if (!fresh.insert(d1).second || !fresh.insert(d2).second) ok = false;
        });
        if (!ok) continue;
        a.insert(c);
        for (Element d : fresh) diffs.insert(d);
        if (a.size() == size) return a;
    }
    throw ConstructionError("greedy Sidon construction exhausted the group at size " +
                            std::to_string(a.size()));
}

inline bool is_sidon(const GroupSet& a) {
    const RepFunction r = rep_function(a, a, Sign::minus);
    for (Element x = 1; x < a.group().order(); ++x)
        if (r.at(x) > 1) return false;
    return true;
}

// Each element included independently with probability delta in (0,1).
inline GroupSet sample_random_set(const GroupSpec& g, const Rational& delta,
                                  std::uint64_t seed) {
    if (delta <= 0 || delta >= 1) throw std::invalid_argument("delta must be in (0,1)");
    Rng rng(seed);
    GroupSet s(g);
    for (Element e = 0; e < g.order(); ++e)
        if (rng.bernoulli(delta)) s.insert(e);
    return s;
}

// ---------------------------------------------------------------------
// Randomized direct pair: the executable form of the probabilistic
// construction behind the K-parameterized energy decomposition. Las Vegas
// with bounded retries; every postcondition is rechecked from scratch.
// ---------------------------------------------------------------------

struct RandomDirectPairTrace {
    Rational K{0};            // E(A,B) = |A||B|^2 / K
    Rational M{0};            // threshold parameter, rounded conservatively up
    Rational delta{0};        // sampling probability, rounded conservatively down
    std::uint64_t omega_size = 0;  // ordered pairs of B exceeding the overlap threshold
    unsigned attempts = 0;
    bool success = false;
    GroupSet a_star, b_star;
    double measured_c0 = 0.0;  // |B_*| / (kappa*K)^{1/4}
    std::vector<std::string> notes;

    RandomDirectPairTrace(const GroupSpec& g) : a_star(g), b_star(g) {}
};

inline RandomDirectPairTrace direct_pair_random(const GroupSet& a, const GroupSet& b,
                                                const Rational& kappa, std::uint64_t seed,
                                                unsigned max_attempts = 64) {
    a.check_same_group(b);
    if (a.empty() || b.empty()) throw std::invalid_argument("nonempty sets required");
    if (kappa <= 0 || kappa >= 1) throw std::invalid_argument("kappa must be in (0,1)");
    const GroupSpec& g = a.group();
    RandomDirectPairTrace trace(g);

    const BigInt energy = common_energy(a, b).value;
    trace.K = make_ratio(BigInt(a.size()) * b.size() * b.size(), energy);
    if (trace.K > Rational(b.size()))
        throw std::invalid_argument("precondition K <= |B| violated");

    // M = 2*sqrt(K/kappa), rounded up so the overlap threshold |A|/M and
    // the pair budget |B_*|^2/M stay on the safe side of the one-sided
    // inequalities.
    trace.M = 2 * sqrt_bound(trace.K / kappa, /*upper=*/true);
    // delta = sqrt(K/2M)/|B|, rounded down.
    trace.delta = sqrt_bound(trace.K / (2 * trace.M), /*upper=*/false) / Rational(b.size());

    const RepFunction raa = rep_function(a, a, Sign::minus);
    // pair (b1,b2) is heavy when r_{A-A}(b1-b2) >= |A|/M
    auto heavy = [&](Element b1, Element b2) {
        return Rational(raa.at(g.sub(b1, b2))) * trace.M >= Rational(a.size());
    };
    const auto eb = b.elements();
    for (Element b1 : eb)
        for (Element b2 : eb)
            if (b1 != b2 && heavy(b1, b2)) ++trace.omega_size;

    const Rational window_lo = trace.delta * Rational(b.size()) / 2;
    const Rational window_hi = 2 * trace.delta * Rational(b.size());
    const bool degenerate_window = window_hi < 1;
    if (degenerate_window)
        trace.notes.push_back("window top below 1: accepting singleton B_*");

    Rng rng(seed);
    for (unsigned attempt = 1; attempt <= max_attempts; ++attempt) {
        trace.attempts = attempt;
        GroupSet bs(g);
        for (Element e : eb)
            if (rng.bernoulli(trace.delta)) bs.insert(e);
        if (bs.empty()) continue;
        const Rational size_r(bs.size());
        if (degenerate_window) {
            if (bs.size() != 1) continue;
        } else if (size_r < window_lo || size_r > window_hi) {
            continue;
        }
        bool hit_heavy = false;
        const auto ebs = bs.elements();
        for (Element b1 : ebs) {
            for (Element b2 : ebs)
                if (b1 != b2 && heavy(b1, b2)) {
                    hit_heavy = true;
                    break;
                }
            if (hit_heavy) break;
        }
        if (hit_heavy) continue;

        // A_* = A minus the union of A + (b2 - b1) over ordered pairs
        GroupSet astar = a;
        for (Element b1 : ebs)
            for (Element b2 : ebs) {
                if (b1 == b2) continue;
                const Element shift = g.sub(b2, b1);
                a.for_each([&](Element x) {
                    if (a.contains(g.add(x, shift)))
                        astar.erase(g.add(x, shift));
                });
            }
        // postconditions, rechecked from first principles
        const bool size_ok = Rational(astar.size()) > (1 - kappa) * Rational(a.size());
        const bool direct_ok = !astar.empty() && is_direct_sum(astar, bs);
        if (!size_ok || !direct_ok) {
            trace.notes.push_back("attempt " + std::to_string(attempt) +
                                  ": postcondition recheck failed");
            continue;
        }
        trace.success = true;
        trace.a_star = astar;
        trace.b_star = bs;
        const double kk = static_cast<double>(kappa * trace.K);
        trace.measured_c0 = double(bs.size()) / std::pow(kk, 0.25);
        return trace;
    }
    trace.notes.push_back("max attempts exhausted");
    return trace;
}

// ---------------------------------------------------------------------
// Exact direct-pair witness of prescribed sizes (k, l).
// ---------------------------------------------------------------------

enum class WitnessStatus { found, absent, unknown };

struct DirectPairWitness {
    WitnessStatus status = WitnessStatus::unknown;
    bool hypotheses_met = false;
    std::optional<GroupSet> x, y;
    std::vector<std::string> notes;
};

namespace detail {

struct FixedSizeSearch {
    const GroupSpec& g;
    const std::vector<Element>& ea;
    const std::vector<Element>& eb;
    unsigned k, l;
    std::uint64_t found_x = 0, found_y = 0;
    bool done = false;

    bool search() {
        std::vector<unsigned> xsel;
        dfs_x(0, xsel);
        return done;
    }

    void dfs_x(unsigned pos, std::vector<unsigned>& xsel) {
        if (done) return;
        if (xsel.size() == k) {
            try_y(xsel);
            return;
        }
        if (pos == ea.size() || ea.size() - pos < k - xsel.size()) return;
        xsel.push_back(pos);
        dfs_x(pos + 1, xsel);
        xsel.pop_back();
        dfs_x(pos + 1, xsel);
    }

    void try_y(const std::vector<unsigned>& xsel) {
        GroupSet dx(g);
        for (unsigned i : xsel)
            for (unsigned j : xsel)
                if (i != j) dx.insert(g.sub(ea[i], ea[j]));
        const unsigned nb = unsigned(eb.size());
        std::vector<std::uint64_t> conf(nb, 0);
        for (unsigned i = 0; i < nb; ++i)
            for (unsigned j = 0; j < nb; ++j)
                if (i != j && dx.contains(g.sub(eb[i], eb[j])))
                    conf[i] |= std::uint64_t(1) << j;
        // find an independent set of size exactly l, first in mask order
        std::uint64_t ym = 0;
        if (dfs_y(0, 0, conf, ym)) {
            found_y = ym;
            std::uint64_t xm = 0;
            for (unsigned i : xsel) xm |= std::uint64_t(1) << i;
            found_x = xm;
            done = true;
        }
    }

    bool dfs_y(unsigned pos, unsigned cnt, const std::vector<std::uint64_t>& conf,
               std::uint64_t& ym) {
        if (cnt == l) return true;
        const unsigned nb = unsigned(eb.size());
        if (pos == nb || nb - pos < l - cnt) return false;
        bool blocked = false;
        std::uint64_t m = ym;
        while (m) {
            const unsigned j = unsigned(std::countr_zero(m));
            if ((conf[j] >> pos) & 1) {
                blocked = true;
                break;
            }
            m &= m - 1;
        }
        if (!blocked) {
            ym |= std::uint64_t(1) << pos;
            if (dfs_y(pos + 1, cnt + 1, conf, ym)) return true;
            ym &= ~(std::uint64_t(1) << pos);
        }
        return dfs_y(pos + 1, cnt, conf, ym);
    }
};

}  // namespace detail

inline DirectPairWitness direct_pair_witness(const GroupSet& a, const GroupSet& b,
                                             std::uint64_t k, std::uint64_t l,
                                             const SearchBudget& budget = {}) {
    a.check_same_group(b);
    if (a.empty() || b.empty()) throw std::invalid_argument("nonempty sets required");
    if (k < 1 || l < 1) throw std::invalid_argument("witness sizes must be >= 1");
    if (k > a.size() || l > b.size())
        throw std::invalid_argument("witness sizes exceed the sets");
    DirectPairWitness out;

    const BigInt energy = common_energy(a, b).value;
    const BigInt excess = energy - BigInt(a.size()) * b.size();  // energy above the diagonal
    bool hyp = excess > BigInt(a.size());
    if (2 * k > a.size()) hyp = false;  // needs k <= |A|/2
    if (hyp) {
        // k*l^2 <= |A|^2 |B|^2 / (2E)
        const BigInt lhs = BigInt(k) * l * l * 2 * excess;
        const BigInt rhs = BigInt(a.size()) * a.size() * BigInt(b.size()) * b.size();
        hyp = lhs <= rhs;
    }
    out.hypotheses_met = hyp;
    if (!hyp) out.notes.push_back("hypothesis not met");

    const auto ea = a.elements();
    const auto eb = b.elements();
    if (a.size() + b.size() > budget.max_exact_bits) {
        // out-of-budget: one greedy attempt, else unknown
        auto h = detail::heuristic_direct_pair(a, b, 1, budget);
        // trim the heuristic witness to the requested sizes when possible
        if (h.x.size() >= k && h.y.size() >= l) {
            GroupSet x(a.group()), y(a.group());
            for (Element e : h.x.elements())
                if (x.size() < k) x.insert(e);
            for (Element e : h.y.elements())
                if (y.size() < l) y.insert(e);
            if (is_direct_sum(x, y)) {
                out.status = WitnessStatus::found;
                out.x = x;
                out.y = y;
                return out;
            }
        }
        out.status = WitnessStatus::unknown;
        out.notes.push_back("budget exceeded: exhaustive search skipped");
        return out;
    }

    detail::FixedSizeSearch search{a.group(), ea, eb, unsigned(k), unsigned(l)};
    if (search.search()) {
        out.status = WitnessStatus::found;
        out.x = detail::set_from_position_mask(a.group(), ea, search.found_x);
        out.y = detail::set_from_position_mask(a.group(), eb, search.found_y);
    } else {
        out.status = WitnessStatus::absent;
        if (hyp)
            out.notes.push_back(
                "verification failure: hypotheses hold but no witness exists");
    }
    return out;
}

// ---------------------------------------------------------------------
// Covering constructions.
// ---------------------------------------------------------------------

struct CoverWitness {
    GroupSet core;                    // the covering core (A' or the final A_s)
    std::vector<Element> translates;  // greedy order of Y, or the x_i sequence Z
    GroupSet complement_cover;        // Y for the maximal complement; A1 for exhaustion
    std::uint64_t steps = 0;
    bool verified = false;
    std::vector<std::string> notes;

    CoverWitness(const GroupSpec& g) : core(g), complement_cover(g) {}
};

// Grow Y subseteq ambient maximal with core + Y direct (greedy over
// ascending element order); by maximality ambient is covered by
// core - core + Y, and that inclusion is recomputed exactly.
inline CoverWitness maximal_direct_complement(const GroupSet& core, const GroupSet& ambient) {
    core.check_same_group(ambient);
    if (core.empty()) throw std::invalid_argument("core must be nonempty");
    const GroupSpec& g = core.group();
    CoverWitness w(g);
    w.core = core;
    GroupSet dcore = difference_set(core, core);
    dcore.erase(0);
    GroupSet y(g);
    ambient.for_each([&](Element cand) {
        bool ok = true;
        if (y.contains(cand)) return;
        y.for_each([&](Element y0) {
            if (!ok) return;
            if (dcore.contains(g.sub(cand, y0)) || dcore.contains(g.sub(y0, cand))) ok = false;
        });
        if (ok) {
            y.insert(cand);
            w.translates.push_back(cand);
        }
    });
    w.complement_cover = y;
    w.steps = y.size();
    const GroupSet cover = sumset(difference_set(core, core), y);
    w.verified = ambient.is_subset_of(cover);
    if (!w.verified) w.notes.push_back("covering inclusion failed");
    return w;
}

// Exhaustion: grow A_1 = A1 by translates of A1 that maximize the newly
// covered part of the complement, until at least half of A is reached.
inline CoverWitness exhaustion_cover(const GroupSet& a, const GroupSet& a1,
                                     const Rational& m_star, const SearchBudget& budget = {}) {
    a.check_same_group(a1);
    if (a1.empty() || !a1.is_subset_of(a))
        throw std::invalid_argument("A1 must be a nonempty subset of A");
    (void)budget;
    const GroupSpec& g = a.group();
    CoverWitness w(g);
    w.complement_cover = a1;
    w.notes.push_back("M_star=" + to_string(m_star));
    GroupSet cur = a1;
    while (cur.size() * 2 < a.size()) {
        const GroupSet comp = a.minus(cur);
        std::uint64_t best_overlap = 0;
        Element best_x = 0;
        for (Element x = 0; x < g.order(); ++x) {
            std::uint64_t overlap = 0;
            a1.for_each([&](Element t) {
                if (comp.contains(g.add(t, x))) ++overlap;
            });
            if (overlap > best_overlap) {
                best_overlap = overlap;
                best_x = x;
            }
        }
        if (best_overlap == 0) {
            w.core = cur;
            w.verified = false;
            w.notes.push_back("stalled before reaching |A|/2");
            return w;
        }
        GroupSet chunk(g);
        a1.for_each([&](Element t) {
            const Element y = g.add(t, best_x);
            if (comp.contains(y)) chunk.insert(y);
        });
        cur = cur.unite(chunk);
        w.translates.push_back(best_x);
        ++w.steps;
    }
    w.core = cur;
    // verify |A_s| >= |A|/2 and A_s subseteq (A1 + Z) cup A1
    GroupSet covered = a1;
    for (Element x : w.translates) covered = covered.unite(a1.translate(x));
    w.verified = cur.size() * 2 >= a.size() && cur.is_subset_of(covered);
    if (!w.verified) w.notes.push_back("cover verification failed");
    return w;
}

// ---------------------------------------------------------------------
// Half-direct search: X, Y subseteq A with |X| >= (1/2 - kappa)|A| and
// X + Y direct, maximizing |X||Y|.
// ---------------------------------------------------------------------

struct HalfDirectResult {
    GroupSet x, y;
    Rational value{0};  // |X||Y| / |A|
    Exactness exactness = Exactness::exact;

    HalfDirectResult(const GroupSpec& g) : x(g), y(g) {}
};

inline HalfDirectResult half_direct_search(const GroupSet& a, const Rational& kappa,
                                           const SearchBudget& budget = {}) {
    if (a.empty()) throw std::invalid_argument("nonempty set required");
    if (kappa <= 0 || kappa >= Rational(1, 2))
        throw std::invalid_argument("kappa must be in (0, 1/2)");
    const Rational bound = (Rational(1, 2) - kappa) * Rational(a.size());
    const BigInt num = boost::multiprecision::numerator(bound);
    const BigInt den = boost::multiprecision::denominator(bound);
    std::uint64_t floor_k = static_cast<std::uint64_t>((num + den - 1) / den);
    if (floor_k < 1) floor_k = 1;

    HalfDirectResult out(a.group());
    if (2 * a.size() <= budget.max_exact_bits) {
        const PairTables t = exact_pair_tables(a, a, /*s_only=*/true);
        const PairEntry* e = detail::best_entry(t.s_best, floor_k);
        if (!e) throw std::logic_error("floor above |A| is impossible for kappa < 1/2");
        out.x = detail::set_from_position_mask(a.group(), t.ea, e->xmask);
        out.y = detail::set_from_position_mask(a.group(), t.eb, e->ymask);
        out.value = make_ratio(e->num, a.size());
        out.exactness = Exactness::exact;
        return out;
    }
    auto h = detail::heuristic_direct_pair(a, a, floor_k, budget);
    out.x = h.x;
    out.y = h.y;
    out.value = make_ratio(h.product, a.size());
    out.exactness = Exactness::lower_bound;
    return out;
}

}  // namespace addcomb
