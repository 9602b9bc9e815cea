#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "addcomb/constructions.hpp"
#include "addcomb/quantities.hpp"
#include "addcomb/report.hpp"

namespace addcomb {

// Exhaustive family larger than the refusal limit (CLI exit 3).
struct FamilyTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<NamedSet> named(const GroupSet& a) {
    return {{"A", a.elements()}};
}
inline std::vector<NamedSet> named(const GroupSet& a, const GroupSet& b) {
    return {{"A", a.elements()}, {"B", b.elements()}};
}
inline std::vector<NamedSet> named(const GroupSet& a, const GroupSet& b, const GroupSet& c) {
    return {{"A", a.elements()}, {"B", b.elements()}, {"C", c.elements()}};
}

inline Rational rational_pow(const Rational& base, unsigned exp) {
    Rational out(1);
    Rational b = base;
    unsigned e = exp;
    while (e) {
        if (e & 1) out *= b;
        b *= b;
        e >>= 1;
    }
    return out;
}

// deterministic fixed-point rationalization of a double (for measured
// constants that involve logarithms)
inline Rational fixed_point_rational(double v) {
    const double scaled = v * double(1 << 20);
    return make_ratio(BigInt(static_cast<long long>(std::llround(scaled))), BigInt(1) << 20);
}

inline std::string t_note(const ExtRational& T) { return "T=" + to_string(T); }

inline bool within_budget(const GroupSet& a, const GroupSet& b, const SearchBudget& budget) {
    return a.size() + b.size() <= budget.max_exact_bits;
}

}  // namespace detail

// ---------------------------------------------------------------------
// Instance checks. Each returns one report per verified sub-inequality.
// ---------------------------------------------------------------------

// 1 <= S_T <= E_T <= D, plus the measured constant in E_T <= c*T*S_T^2
// for finite T.
inline std::vector<CheckReport> check_chain(const GroupSet& a, const GroupSet& b,
                                            const ExtRational& T,
                                            const SearchBudget& budget = {},
                                            const PairTables* tables = nullptr) {
    const std::string grp = a.group().to_string();
    const auto sets = detail::named(a, b);
    if (!tables && !detail::within_budget(a, b, budget))
        return {CheckReport::skipped("chain", grp, sets, "budget: exact S/E unavailable")};
    PairTables local;
    if (!tables) {
        local = exact_pair_tables(a, b);
        tables = &local;
    }
    const Rational s = s_from_tables(*tables, a, T).value;
    const Rational e = e_from_tables(*tables, a, T).value;
    const Rational d = doubling(a, b).value;
    std::vector<CheckReport> out;
    out.push_back(CheckReport::inequality("chain.one_le_S", grp, sets, Rational(1), s,
                                          {detail::t_note(T)}));
    out.push_back(CheckReport::inequality("chain.S_le_E", grp, sets, s, e,
                                          {detail::t_note(T)}));
    out.push_back(CheckReport::inequality("chain.E_le_D", grp, sets, e, d,
                                          {detail::t_note(T)}));
    if (!T.infinite) {
        const Rational c = e / (T.value * s * s);
        out.push_back(CheckReport::measured("chain.E_over_TS2", grp, sets, c,
                                            {detail::t_note(T)}));
    }
    return out;
}

// D <= c*S^36 and D <= c*E_2^26; the minimal c is the measured
// constant. The chain direction E_2 <= D is exact.
inline std::vector<CheckReport> check_polynomial_criterion(const GroupSet& a,
                                                           const SearchBudget& budget = {}) {
    const std::string grp = a.group().to_string();
    const auto sets = detail::named(a);
    if (!detail::within_budget(a, a, budget))
        return {CheckReport::skipped("poly", grp, sets, "budget: exact S/E unavailable")};
    const PairTables tables = exact_pair_tables(a, a);
    const Rational s = s_from_tables(tables, a, ExtRational::inf()).value;
    const Rational e2 = e_from_tables(tables, a, ExtRational(2)).value;
    const Rational d = doubling(a).value;

    std::vector<CheckReport> out;
    out.push_back(CheckReport::inequality("poly.E2_le_D", grp, sets, e2, d));
    const Rational c1 = d / detail::rational_pow(s, 36);
    const Rational c2 = d / detail::rational_pow(e2, 26);
    out.push_back(CheckReport::measured(
        "poly.S36_constant", grp, sets, c1,
        {c1 <= 1 ? "holds with constant 1" : "needs constant > 1"}));
    out.push_back(CheckReport::measured(
        "poly.E2_26_constant", grp, sets, c2,
        {c2 <= 1 ? "holds with constant 1" : "needs constant > 1"}));
    return out;
}

// S_T[B;C] <= E_T[B;A] * S[A;C] and E_T[B;C] <= E_T[B;A] * E[A;C].
inline std::vector<CheckReport> check_triangle(const GroupSet& a, const GroupSet& b,
                                               const GroupSet& c, const ExtRational& T,
                                               const SearchBudget& budget = {}) {
    const std::string grp = a.group().to_string();
    const auto sets = detail::named(a, b, c);
    if (!detail::within_budget(b, c, budget) || !detail::within_budget(b, a, budget) ||
        !detail::within_budget(a, c, budget))
        return {CheckReport::skipped("triangle", grp, sets, "budget: exact S/E unavailable")};
    const PairTables t_bc = exact_pair_tables(b, c);
    const PairTables t_ba = exact_pair_tables(b, a);
    const PairTables t_ac = exact_pair_tables(a, c);
    const Rational s_bc = s_from_tables(t_bc, b, T).value;
    const Rational e_bc = e_from_tables(t_bc, b, T).value;
    const Rational e_ba = e_from_tables(t_ba, b, T).value;
    const Rational s_ac = s_from_tables(t_ac, a, ExtRational::inf()).value;
    const Rational e_ac = e_from_tables(t_ac, a, ExtRational::inf()).value;
    std::vector<CheckReport> out;
    out.push_back(CheckReport::inequality("triangle.S", grp, sets, s_bc, e_ba * s_ac,
                                          {detail::t_note(T)}));
    out.push_back(CheckReport::inequality("triangle.E", grp, sets, e_bc, e_ba * e_ac,
                                          {detail::t_note(T)}));
    return out;
}

// k(A) <= 2 S[A] or K(A) <= 8 S[A]; exactly one branch is enough.
inline std::vector<CheckReport> check_dichotomy(const GroupSet& a,
                                                const SearchBudget& budget = {}) {
    const std::string grp = a.group().to_string();
    const auto sets = detail::named(a);
    if (!detail::within_budget(a, a, budget))
        return {CheckReport::skipped("dichotomy", grp, sets, "budget: exact S unavailable")};
    const PairTables tables = exact_pair_tables(a, a, /*s_only=*/true);
    const Rational s = s_from_tables(tables, a, ExtRational::inf()).value;
    const Rational k = longest_ap(a).value;
    const QuantityResult kq = shift_ratio_K(a);

    const Rational branch_k = k / (2 * s);
    std::vector<std::string> notes = {"k=" + to_string(k), "S=" + to_string(s)};
    Rational lhs = branch_k;
    if (kq.infinite) {
        notes.push_back("K=inf: AP branch must hold");
    } else {
        notes.push_back("K=" + to_string(kq.value));
        const Rational branch_K = kq.value / (8 * s);
        lhs = std::min(branch_k, branch_K);
    }
    return {CheckReport::inequality("dichotomy", grp, sets, lhs, Rational(1),
                                    std::move(notes))};
}

// dim(A) against S^2 log|A| and E log|A| (implicit constants: measured).
inline std::vector<CheckReport> check_dim_bounds(const GroupSet& a,
                                                 const SearchBudget& budget = {}) {
    const std::string grp = a.group().to_string();
    const auto sets = detail::named(a);
    if (a.size() < 2)
        return {CheckReport::skipped("dim_bounds", grp, sets, "log|A| = 0 for singletons")};
    if (!detail::within_budget(a, a, budget))
        return {CheckReport::skipped("dim_bounds", grp, sets, "budget: exact S/E unavailable")};
    const PairTables tables = exact_pair_tables(a, a);
    const Rational s = s_from_tables(tables, a, ExtRational::inf()).value;
    const Rational e = e_from_tables(tables, a, ExtRational::inf()).value;
    const Rational dim = additive_dimension(a, budget).value;
    const double logn = std::log(double(a.size()));
    const double c1 =
        static_cast<double>(dim) / (static_cast<double>(s * s) * logn);
    const double c2 = static_cast<double>(dim) / (static_cast<double>(e) * logn);
    std::vector<CheckReport> out;
    out.push_back(CheckReport::measured("dim.over_S2log", grp, sets,
                                        detail::fixed_point_rational(c1),
                                        {"dim=" + to_string(dim)}));
    out.push_back(CheckReport::measured("dim.over_Elog", grp, sets,
                                        detail::fixed_point_rational(c2),
                                        {"dim=" + to_string(dim)}));
    return out;
}

// |A||B-C| <= |B-A||A-C|.
inline std::vector<CheckReport> check_ruzsa(const GroupSet& a, const GroupSet& b,
                                            const GroupSet& c) {
    const Rational lhs = Rational(BigInt(a.size()) * difference_set(b, c).size());
    const Rational rhs =
        Rational(BigInt(difference_set(b, a).size()) * difference_set(a, c).size());
    return {CheckReport::inequality("ruzsa_triangle", a.group().to_string(),
                                    detail::named(a, b, c), lhs, rhs)};
}

// |nA - mA| <= (|A+A|/|A|)^(n+m) |A| for 1 <= n, m <= 3.
inline std::vector<CheckReport> check_plunnecke(const GroupSet& a, unsigned max_nm = 3) {
    const std::string grp = a.group().to_string();
    const auto sets = detail::named(a);
    const Rational d = doubling(a).value;
    std::vector<CheckReport> out;
    for (unsigned n = 1; n <= max_nm; ++n) {
        for (unsigned m = 1; m <= max_nm; ++m) {
            const Rational lhs(higher_sumset(a, n, m).size());
            const Rational rhs = detail::rational_pow(d, n + m) * Rational(a.size());
            out.push_back(CheckReport::inequality(
                "plunnecke.n" + std::to_string(n) + "m" + std::to_string(m), grp, sets, lhs,
                rhs));
        }
    }
    return out;
}

// Cauchy-Schwarz, both signs.
inline std::vector<CheckReport> check_cs(const GroupSet& a, const GroupSet& b) {
    return {cs_energy_lower_bound(a, b, Sign::plus), cs_energy_lower_bound(a, b, Sign::minus)};
}

// Petridis sandwich R_A <= D[A] <= R_A^2.
inline std::vector<CheckReport> check_petridis_sandwich(const GroupSet& a,
                                                        const SearchBudget& budget = {}) {
    const std::string grp = a.group().to_string();
    const auto sets = detail::named(a);
    if (a.size() > budget.max_exact_bits)
        return {CheckReport::skipped("petridis", grp, sets, "budget: exact ratio unavailable")};
    const Rational r = petridis_ratio(a, budget).value;
    const Rational d = doubling(a).value;
    std::vector<CheckReport> out;
    out.push_back(CheckReport::inequality("petridis.R_le_D", grp, sets, r, d));
    out.push_back(CheckReport::inequality("petridis.D_le_R2", grp, sets, d, r * r));
    return out;
}

// E(A,B) >= |A||B|^2 / E_1[A;B] exactly; the S_1^2 counterpart and the
// subset form carry implicit constants and are measured.
inline std::vector<CheckReport> check_E_S_bounds(const GroupSet& a, const GroupSet& b,
                                                 const SearchBudget& budget = {}) {
    const std::string grp = a.group().to_string();
    const auto sets = detail::named(a, b);
    if (!detail::within_budget(a, b, budget))
        return {CheckReport::skipped("es_bounds", grp, sets, "budget: exact S/E unavailable")};
    const PairTables tables = exact_pair_tables(a, b);
    const Rational e(common_energy(a, b).value);
    const Rational ab2 = Rational(BigInt(a.size()) * b.size() * b.size());
    const Rational e1 = e_from_tables(tables, a, ExtRational(1)).value;
    const Rational s1 = s_from_tables(tables, a, ExtRational(1)).value;

    std::vector<CheckReport> out;
    out.push_back(CheckReport::inequality("es.E1_definitional", grp, sets, ab2, e * e1));
    out.push_back(CheckReport::measured("es.S1_constant", grp, sets, e * s1 * s1 / ab2));

    // E(A',B) >= c |A'|^3 |B|^2 / (|A|^2 S_T^2), T = |A|/|A'|, over all
    // nonempty A' (exhaustive; the family keeps |A| small)
    Rational worst;
    bool have = false;
    std::vector<Element> witness;
    const auto ea = a.elements();
    for (std::uint64_t m = 1; m < (std::uint64_t(1) << ea.size()); ++m) {
        GroupSet ap(a.group());
        for (std::size_t i = 0; i < ea.size(); ++i)
            if ((m >> i) & 1) ap.insert(ea[i]);
        const ExtRational T{make_ratio(a.size(), ap.size())};
        const Rational st = s_from_tables(tables, a, T).value;
        const Rational eab(common_energy(ap, b).value);
        const Rational denom = Rational(BigInt(ap.size()) * ap.size() * ap.size()) *
                               Rational(BigInt(b.size()) * b.size());
        const Rational c = eab * Rational(BigInt(a.size()) * a.size()) * st * st / denom;
        if (!have || c < worst) {
            worst = c;
            have = true;
            witness = ap.elements();
        }
    }
    CheckReport sub = CheckReport::measured("es.subset_constant", grp, sets, worst);
    std::string wnote = "extremal A'={";
    for (std::size_t i = 0; i < witness.size(); ++i)
        wnote += (i ? "," : "") + std::to_string(witness[i]);
    sub.notes.push_back(wnote + "}");
    out.push_back(std::move(sub));
    return out;
}

// Both monotonicity laws: S_T[A;B] >= S_T[A;B'] for B' subseteq B, and
// R*S_{RT}[A;B] >= S_T[A';B] for A' subseteq A with R = |A|/|A'|.
inline std::vector<CheckReport> check_s_decrease(const GroupSet& a, const GroupSet& b,
                                                 const ExtRational& T,
                                                 const SearchBudget& budget = {}) {
    const std::string grp = a.group().to_string();
    const auto sets = detail::named(a, b);
    if (!detail::within_budget(a, b, budget))
        return {CheckReport::skipped("s_decrease", grp, sets, "budget: exact S unavailable")};
    const PairTables tables = exact_pair_tables(a, b, /*s_only=*/true);
    const Rational st = s_from_tables(tables, a, T).value;

    // part 1: the worst subset B'
    Rational worst_b(0);
    std::vector<Element> wb;
    const auto eb = b.elements();
    for (std::uint64_t m = 1; m < (std::uint64_t(1) << eb.size()); ++m) {
        GroupSet bp(a.group());
        for (std::size_t i = 0; i < eb.size(); ++i)
            if ((m >> i) & 1) bp.insert(eb[i]);
        const Rational v = s_quantity(a, bp, T, budget).value;
        if (v > worst_b) {
            worst_b = v;
            wb = bp.elements();
        }
    }
    std::vector<CheckReport> out;
    {
        std::string note = "extremal B'={";
        for (std::size_t i = 0; i < wb.size(); ++i) note += (i ? "," : "") + std::to_string(wb[i]);
        out.push_back(CheckReport::inequality("s_decrease.subset_B", grp, sets, worst_b, st,
                                              {detail::t_note(T), note + "}"}));
    }

    // part 2: max over A' of S_T[A';B] / (R * S_{RT}[A;B])
    Rational worst_a(0);
    std::vector<Element> wa;
    const auto ea = a.elements();
    for (std::uint64_t m = 1; m < (std::uint64_t(1) << ea.size()); ++m) {
        GroupSet ap(a.group());
        for (std::size_t i = 0; i < ea.size(); ++i)
            if ((m >> i) & 1) ap.insert(ea[i]);
        const Rational ratio = make_ratio(a.size(), ap.size());
        const ExtRational rt =
            T.infinite ? ExtRational::inf() : ExtRational(T.value * ratio);
        const Rational lhs_v = ratio * s_from_tables(tables, a, rt).value;
        const Rational rhs_v = s_quantity(ap, b, T, budget).value;
        const Rational q = rhs_v / lhs_v;
        if (q > worst_a) {
            worst_a = q;
            wa = ap.elements();
        }
    }
    {
        std::string note = "extremal A'={";
        for (std::size_t i = 0; i < wa.size(); ++i) note += (i ? "," : "") + std::to_string(wa[i]);
        out.push_back(CheckReport::inequality("s_decrease.subset_A", grp, sets, worst_a,
                                              Rational(1), {detail::t_note(T), note + "}"}));
    }
    return out;
}

// ---------------------------------------------------------------------
// Families.
// ---------------------------------------------------------------------

struct FamilyDescriptor {
    enum class Kind { subsets, pairs, triples };
    Kind kind = Kind::subsets;
    std::string group_spec;
    std::uint64_t max_size = 6;
    std::optional<std::uint64_t> count;  // absent = exhaustive (subsets only)
    std::uint64_t seed = 0;
    std::string raw;
};

// `subsets(Z/12, max=6)`, `pairs(Z/16, max=6, n=200, seed=5)`,
// `triples(Z/16, max=6, n=500, seed=7)`
inline FamilyDescriptor parse_family(const std::string& text) {
    FamilyDescriptor fd;
    fd.raw = text;
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    const auto open = t.find('(');
    if (open == std::string::npos || t.back() != ')')
        throw std::invalid_argument("malformed family: " + text);
    const std::string kind = t.substr(0, open);
    if (kind == "subsets")
        fd.kind = FamilyDescriptor::Kind::subsets;
    else if (kind == "pairs")
        fd.kind = FamilyDescriptor::Kind::pairs;
    else if (kind == "triples")
        fd.kind = FamilyDescriptor::Kind::triples;
    else
        throw std::invalid_argument("unknown family kind: " + kind);
    std::string body = t.substr(open + 1, t.size() - open - 2);
    std::vector<std::string> parts;
    std::string cur;
    for (char c : body) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else
            cur += c;
    }
    if (!cur.empty()) parts.push_back(cur);
    if (parts.empty()) throw std::invalid_argument("family needs a group: " + text);
    fd.group_spec = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const auto eq = parts[i].find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("malformed family option: " + parts[i]);
        const std::string key = parts[i].substr(0, eq);
        const std::string val = parts[i].substr(eq + 1);
        if (key == "max")
            fd.max_size = std::stoull(val);
        else if (key == "n")
            fd.count = std::stoull(val);
        else if (key == "seed")
            fd.seed = std::stoull(val);
        else
            throw std::invalid_argument("unknown family option: " + key);
    }
    if (fd.max_size < 1) throw std::invalid_argument("family needs max >= 1");
    if (fd.kind != FamilyDescriptor::Kind::subsets && !fd.count)
        throw std::invalid_argument("pairs/triples families need n=<count>");
    return fd;
}

struct FamilyInstance {
    std::vector<GroupSet> sets;  // 1, 2 or 3 sets
};

inline std::vector<FamilyInstance> enumerate_family(const FamilyDescriptor& fd,
                                                    std::uint64_t max_order = kDefaultMaxOrder) {
    const GroupSpec g = parse_group_spec(fd.group_spec, max_order);
    std::vector<FamilyInstance> out;
    if (fd.kind == FamilyDescriptor::Kind::subsets && !fd.count) {
        if (g.order() > 24)
            throw FamilyTooLarge(
                "exhaustive subsets of a group of order > 24; use n=<count> sampling");
        // mask-lexicographic enumeration
        for (std::uint64_t m = 1; m < (std::uint64_t(1) << g.order()); ++m) {
            if (std::uint64_t(std::popcount(m)) > fd.max_size) continue;
            GroupSet s(g);
            for (Element e = 0; e < g.order(); ++e)
                if ((m >> e) & 1) s.insert(e);
            out.push_back({{s}});
        }
        return out;
    }
    const unsigned arity = fd.kind == FamilyDescriptor::Kind::subsets  ? 1
                           : fd.kind == FamilyDescriptor::Kind::pairs ? 2
                                                                      : 3;
    Rng rng(fd.seed);
    const std::uint64_t size_cap = std::min<std::uint64_t>(fd.max_size, g.order());
    auto sample_set = [&]() {
        GroupSet s(g);
        const std::uint64_t size = 1 + rng.below(size_cap);
        while (s.size() < size) s.insert(rng.below(g.order()));
        return s;
    };
    for (std::uint64_t i = 0; i < *fd.count; ++i) {
        FamilyInstance inst;
        for (unsigned j = 0; j < arity; ++j) inst.sets.push_back(sample_set());
        out.push_back(std::move(inst));
    }
    return out;
}

struct FamilyRunSummary {
    std::string family;
    std::vector<std::string> checks;
    std::vector<std::string> t_values;
    std::uint64_t seed = 0;
    std::uint64_t instances = 0;
    std::uint64_t checked = 0, passed = 0, failed = 0, na = 0;
    std::vector<CheckReport> failures;
    std::map<std::string, CheckReport> argmax_ratio;
    std::map<std::string, CheckReport> argmin_ratio;
    std::map<std::string, Rational> measured_max;
    std::map<std::string, Rational> measured_min;

    void absorb(CheckReport r) {
        r.seed = seed;
        ++checked;
        switch (r.outcome) {
            case Outcome::pass: ++passed; break;
            case Outcome::fail: ++failed; break;
            case Outcome::na: ++na; break;
        }
        if (r.is_measured() && r.ratio) {
            auto [it, fresh] = measured_max.try_emplace(r.check_id, *r.ratio);
            if (!fresh && *r.ratio > it->second) it->second = *r.ratio;
            auto [it2, fresh2] = measured_min.try_emplace(r.check_id, *r.ratio);
            if (!fresh2 && *r.ratio < it2->second) it2->second = *r.ratio;
        }
        if (r.ratio) {
            auto mx = argmax_ratio.find(r.check_id);
            if (mx == argmax_ratio.end() || *r.ratio > *mx->second.ratio)
                argmax_ratio.insert_or_assign(r.check_id, r);
            auto mn = argmin_ratio.find(r.check_id);
            if (mn == argmin_ratio.end() || *r.ratio < *mn->second.ratio)
                argmin_ratio.insert_or_assign(r.check_id, r);
        }
        if (r.outcome == Outcome::fail) failures.push_back(std::move(r));
    }
};

// Applies the named checks to each instance. Single-set checks read the
// first set; pair checks fall back to (A,A) and triple checks to
// (A,A,A)/(A,B,B) when the family has lower arity.
inline FamilyRunSummary run_family(const FamilyDescriptor& fd,
                                   const std::vector<std::string>& checks,
                                   const std::vector<ExtRational>& t_values,
                                   const SearchBudget& budget = {},
                                   std::uint64_t max_order = kDefaultMaxOrder) {
    FamilyRunSummary summary;
    summary.family = fd.raw;
    summary.checks = checks;
    for (const auto& T : t_values) summary.t_values.push_back(to_string(T));
    summary.seed = fd.seed;

    const auto instances = enumerate_family(fd, max_order);
    summary.instances = instances.size();
    for (const auto& inst : instances) {
        const GroupSet& a = inst.sets[0];
        const GroupSet& b = inst.sets.size() > 1 ? inst.sets[1] : inst.sets[0];
        const GroupSet& c = inst.sets.size() > 2 ? inst.sets[2] : b;
        const bool exact_ok = detail::within_budget(a, b, budget);
        PairTables tables;
        bool have_tables = false;
        auto tables_ptr = [&]() -> const PairTables* {
            if (!exact_ok) return nullptr;
            if (!have_tables) {
                tables = exact_pair_tables(a, b);
                have_tables = true;
            }
            return &tables;
        };
        for (const auto& name : checks) {
            std::vector<CheckReport> reports;
            if (name == "chain") {
                for (const auto& T : t_values) {
                    auto r = check_chain(a, b, T, budget, tables_ptr());
                    reports.insert(reports.end(), r.begin(), r.end());
                }
            } else if (name == "dichotomy") {
                reports = check_dichotomy(a, budget);
            } else if (name == "polynomial_criterion") {
                reports = check_polynomial_criterion(a, budget);
            } else if (name == "triangle") {
                for (const auto& T : t_values) {
                    auto r = check_triangle(a, b, c, T, budget);
                    reports.insert(reports.end(), r.begin(), r.end());
                }
            } else if (name == "cs") {
                reports = check_cs(a, b);
            } else if (name == "ruzsa") {
                reports = check_ruzsa(a, b, c);
            } else if (name == "plunnecke") {
                reports = check_plunnecke(a);
            } else if (name == "petridis") {
                reports = check_petridis_sandwich(a, budget);
            } else if (name == "es_bounds") {
                reports = check_E_S_bounds(a, b, budget);
            } else if (name == "s_decrease") {
                for (const auto& T : t_values) {
                    auto r = check_s_decrease(a, b, T, budget);
                    reports.insert(reports.end(), r.begin(), r.end());
                }
            } else if (name == "dim_bounds") {
                reports = check_dim_bounds(a, budget);
            } else {
                throw std::invalid_argument("unknown check: " + name);
            }
            for (auto& r : reports) summary.absorb(std::move(r));
        }
    }
    return summary;
}

// ---------------------------------------------------------------------
// Random-set experiment: witness lower bounds on S[A] across deltas.
// ---------------------------------------------------------------------

struct RandomSExperiment {
    struct Row {
        Rational delta;
        unsigned trials = 0;
        std::uint64_t median_size = 0;
        Rational median_s;      // median witness-based lower bound on S[A]
        double s_scaled = 0;    // median_s * sqrt(delta)
        std::uint64_t median_ap = 0;
        double rs2_bound = 0;   // min(1/delta, log|A|/log(1/delta)) at the median size
    };
    std::string group;
    std::uint64_t seed = 0;
    std::vector<Row> rows;
    std::vector<CheckReport> trend;
};

inline RandomSExperiment experiment_random_s(const GroupSpec& g,
                                             const std::vector<Rational>& deltas,
                                             unsigned trials, std::uint64_t seed,
                                             const SearchBudget& budget = {}) {
    if (trials == 0) throw std::invalid_argument("trials must be positive");
    RandomSExperiment out;
    out.group = g.to_string();
    out.seed = seed;
    std::vector<Rational> ds = deltas;
    std::sort(ds.begin(), ds.end(), [](const Rational& x, const Rational& y) { return x > y; });

    Rng master(seed);
    for (const Rational& delta : ds) {
        RandomSExperiment::Row row;
        row.delta = delta;
        row.trials = trials;
        std::vector<Rational> values;
        std::vector<std::uint64_t> ap_lengths, sizes;
        for (unsigned t = 0; t < trials; ++t) {
            GroupSet a(g);
            do {
                a = sample_random_set(g, delta, master.u64());
            } while (a.empty());
            SearchBudget b = budget;
            b.seed = master.u64();
            values.push_back(s_quantity(a, a, ExtRational::inf(), b).value);
            ap_lengths.push_back(
                static_cast<std::uint64_t>(longest_ap(a).value));
            sizes.push_back(a.size());
        }
        std::sort(values.begin(), values.end());
        std::sort(ap_lengths.begin(), ap_lengths.end());
        std::sort(sizes.begin(), sizes.end());
        row.median_s = values[(values.size() - 1) / 2];
        row.median_ap = ap_lengths[(ap_lengths.size() - 1) / 2];
        row.median_size = sizes[(sizes.size() - 1) / 2];
        row.s_scaled =
            static_cast<double>(row.median_s) * std::sqrt(static_cast<double>(delta));
        const double logn = std::log(double(std::max<std::uint64_t>(row.median_size, 2)));
        const double log1d = std::log(1.0 / static_cast<double>(delta));
        row.rs2_bound = std::min(1.0 / static_cast<double>(delta), logn / log1d);
        out.rows.push_back(std::move(row));
    }

    // trend: for delta' = delta/4 the median lower bound must strictly grow
    for (std::size_t i = 0; i + 1 < out.rows.size(); ++i) {
        for (std::size_t j = i + 1; j < out.rows.size(); ++j) {
            if (out.rows[i].delta != 4 * out.rows[j].delta) continue;
            CheckReport r;
            r.check_id = "random_S.trend";
            r.group = out.group;
            r.lhs = out.rows[i].median_s;
            r.rhs = out.rows[j].median_s;
            r.outcome = r.lhs < r.rhs ? Outcome::pass : Outcome::fail;
            if (r.lhs > 0) r.ratio = r.rhs / r.lhs;
            r.notes = {"strict", "delta=" + to_string(out.rows[i].delta),
                       "delta'=" + to_string(out.rows[j].delta)};
            r.seed = seed;
            out.trend.push_back(std::move(r));
        }
    }
    return out;
}

}  // namespace addcomb
