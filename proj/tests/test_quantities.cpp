#include <catch2/catch_amalgamated.hpp>

#include "addcomb/quantities.hpp"
#include "addcomb/rng.hpp"
#include "oracles.hpp"

using namespace addcomb;

namespace {
GroupSet make(const GroupSpec& g, std::initializer_list<Element> elems) {
    return GroupSet::from_elements(g, std::vector<Element>(elems));
}

GroupSet random_nonempty(const GroupSpec& g, Rng& rng, std::uint64_t max_size) {
    while (true) {
        GroupSet s(g);
        const std::uint64_t target = 1 + rng.below(max_size);
        for (std::uint64_t i = 0; i < target; ++i) s.insert(rng.below(g.order()));
        if (!s.empty()) return s;
    }
}
}  // namespace

TEST_CASE("doubling examples") {
    auto z100 = parse_group_spec("Z/100");
    const auto sidon = make(z100, {0, 1, 3, 7});
    CHECK(doubling(sidon).value == make_ratio(10, 4));  // (|A|+1)/2

    auto z6 = parse_group_spec("Z/6");
    CHECK(doubling(make(z6, {0, 2, 4})).value == Rational(1));

    CHECK(doubling(make(z100, {0, 1, 2, 3, 4})).value == make_ratio(9, 5));
    CHECK_THROWS_AS(doubling(GroupSet(z100)), std::invalid_argument);
}

TEST_CASE("S examples") {
    auto z6 = parse_group_spec("Z/6");
    const auto h = make(z6, {0, 2, 4});
    auto s = s_quantity(h, h, ExtRational::inf());
    CHECK(s.value == Rational(1));
    CHECK(s.exactness == Exactness::exact);

    auto z100 = parse_group_spec("Z/100");
    const auto a = make(z100, {0, 1, 2, 3, 4});
    auto s2 = s_quantity(a, a, ExtRational::inf());
    CHECK(s2.value == make_ratio(8, 5));
    REQUIRE(s2.witness_x.has_value());
    REQUIRE(s2.witness_y.has_value());
    CHECK(*s2.witness_x == make(z100, {0, 1, 2, 3}));
    CHECK(*s2.witness_y == make(z100, {0, 4}));

    // Sidon set of size 2m: disjoint halves give S >= m^2/(2m)
    const auto sidon = make(z100, {0, 1, 3, 7, 12, 20});
    auto s3 = s_quantity(sidon, sidon, ExtRational::inf());
    CHECK(s3.value >= make_ratio(9, 6));

    CHECK_THROWS_AS(s_quantity(a, a, ExtRational(Rational(1, 2))), std::invalid_argument);
    CHECK_THROWS_AS(s_quantity(GroupSet(z100), a, ExtRational::inf()), std::invalid_argument);
}

TEST_CASE("E examples") {
    auto z6 = parse_group_spec("Z/6");
    const auto h = make(z6, {0, 2, 4});
    for (auto T : {ExtRational(1), ExtRational(2), ExtRational::inf()})
        CHECK(e_quantity(h, h, T).value == Rational(1));

    auto z10 = parse_group_spec("Z/10");
    const auto a = make(z10, {0, 1, 2});
    auto e = e_quantity(a, a, ExtRational::inf());
    CHECK(e.value >= make_ratio(27, 19));  // X = Y = A candidate
    auto oracle = oracles::e_oracle(a, a, ExtRational::inf());
    CHECK(e.value == oracle.value);
    CHECK(*e.witness_x == oracle.x);
    CHECK(*e.witness_y == oracle.y);

    // E_1 >= |A|^3 / E(A) via the single pair X = Y = A
    auto e1 = e_quantity(a, a, ExtRational(1));
    CHECK(e1.value >= make_ratio(27, 19));
}

TEST_CASE("S and E agree with the naive oracle on random instances") {
    Rng rng(41);
    const std::vector<std::string> groups = {"Z/12", "Z/16", "Z/4xZ/6", "F2^4"};
    for (int t = 0; t < 30; ++t) {
        auto g = parse_group_spec(groups[t % groups.size()]);
        auto a = random_nonempty(g, rng, 5);
        auto b = random_nonempty(g, rng, 5);
        for (auto T : {ExtRational(1), ExtRational(2), ExtRational(Rational(7, 2)),
                       ExtRational::inf()}) {
            auto s = s_quantity(a, b, T);
            auto so = oracles::s_oracle(a, b, T);
            REQUIRE(s.value == so.value);
            REQUIRE(*s.witness_x == so.x);
            REQUIRE(*s.witness_y == so.y);

            auto e = e_quantity(a, b, T);
            auto eo = oracles::e_oracle(a, b, T);
            REQUIRE(e.value == eo.value);
            REQUIRE(*e.witness_x == eo.x);
            REQUIRE(*e.witness_y == eo.y);
        }
    }
}

TEST_CASE("witnesses reproduce reported values") {
    Rng rng(43);
    auto g = parse_group_spec("Z/16");
    for (int t = 0; t < 20; ++t) {
        auto a = random_nonempty(g, rng, 6);
        auto b = random_nonempty(g, rng, 6);
        auto s = s_quantity(a, b, ExtRational(2));
        REQUIRE(is_direct_sum(*s.witness_x, *s.witness_y));
        REQUIRE(s.witness_x->is_subset_of(a));
        REQUIRE(s.witness_y->is_subset_of(b));
        REQUIRE(s.value ==
                make_ratio(s.witness_x->size() * s.witness_y->size(), a.size()));
        REQUIRE(Rational(s.witness_x->size()) * ExtRational(2).value >=
                Rational(a.size()));

        auto e = e_quantity(a, b, ExtRational(2));
        const BigInt en = common_energy(*e.witness_x, *e.witness_y).value;
        const std::uint64_t k = e.witness_x->size(), l = e.witness_y->size();
        REQUIRE(e.value == make_ratio(BigInt(k) * k * BigInt(l) * l, BigInt(a.size()) * en));
    }
}

TEST_CASE("monotonicity in T and the chain") {
    Rng rng(47);
    auto g = parse_group_spec("Z/12");
    const std::vector<ExtRational> ts = {ExtRational(1), ExtRational(Rational(3, 2)),
                                         ExtRational(2), ExtRational(4), ExtRational::inf()};
    for (int t = 0; t < 25; ++t) {
        auto a = random_nonempty(g, rng, 6);
        auto b = random_nonempty(g, rng, 6);
        auto tables = exact_pair_tables(a, b);
        Rational prev_s(-1), prev_e(-1);
        for (const auto& T : ts) {
            auto s = s_from_tables(tables, a, T);
            auto e = e_from_tables(tables, a, T);
            REQUIRE(s.value >= prev_s);
            REQUIRE(e.value >= prev_e);
            prev_s = s.value;
            prev_e = e.value;
            // chain: 1 <= S_T <= E_T <= D
            REQUIRE(Rational(1) <= s.value);
            REQUIRE(s.value <= e.value);
            REQUIRE(e.value <= doubling(a, b).value);
        }
    }
}

TEST_CASE("S and E are at most |B|") {
    Rng rng(53);
    auto g = parse_group_spec("Z/14");
    for (int t = 0; t < 20; ++t) {
        auto a = random_nonempty(g, rng, 5);
        auto b = random_nonempty(g, rng, 5);
        auto tables = exact_pair_tables(a, b);
        CHECK(s_from_tables(tables, a, ExtRational::inf()).value <= Rational(b.size()));
        CHECK(e_from_tables(tables, a, ExtRational::inf()).value <= Rational(b.size()));
    }
}

TEST_CASE("maximal S witness yields the covering relations") {
    // B subseteq X-X+Y and A subseteq Y-Y+X at the maximizer
    Rng rng(59);
    auto g = parse_group_spec("Z/16");
    for (int t = 0; t < 20; ++t) {
        auto a = random_nonempty(g, rng, 6);
        auto b = random_nonempty(g, rng, 6);
        auto s = s_quantity(a, b, ExtRational::inf());
        const GroupSet& x = *s.witness_x;
        const GroupSet& y = *s.witness_y;
        REQUIRE(b.is_subset_of(sumset(difference_set(x, x), y)));
        REQUIRE(a.is_subset_of(sumset(difference_set(y, y), x)));
    }
}

TEST_CASE("heuristic mode returns certified lower bounds") {
    auto g = parse_group_spec("Z/64");
    Rng rng(61);
    GroupSet a(g);
    for (Element e = 0; e < 64; ++e)
        if (rng.below(2) == 0) a.insert(e);
    SearchBudget tight;
    tight.max_exact_bits = 8;
    tight.seed = 5;
    auto s = s_quantity(a, a, ExtRational::inf(), tight);
    CHECK(s.exactness == Exactness::lower_bound);
    REQUIRE(is_direct_sum(*s.witness_x, *s.witness_y));
    CHECK(s.value == make_ratio(s.witness_x->size() * s.witness_y->size(), a.size()));
    CHECK(s.value >= Rational(1));

    auto e = e_quantity(a, a, ExtRational(2), tight);
    CHECK(e.exactness == Exactness::lower_bound);
    CHECK(e.value >= Rational(1));
}

TEST_CASE("K examples") {
    auto z100 = parse_group_spec("Z/100");
    auto k = shift_ratio_K(make(z100, {0, 1, 2, 3}));
    CHECK_FALSE(k.infinite);
    CHECK(k.value == make_ratio(4, 3));

    auto z6 = parse_group_spec("Z/6");
    CHECK(shift_ratio_K(make(z6, {0, 2, 4})).value == Rational(1));

    auto s = shift_ratio_K(make(z100, {42}));
    CHECK(s.infinite);
}

TEST_CASE("longest AP examples") {
    auto z20 = parse_group_spec("Z/20");
    auto r = longest_ap(make(z20, {0, 1, 2, 5, 9}));
    CHECK(r.value == Rational(3));
    REQUIRE(r.witness_x.has_value());
    CHECK(*r.witness_x == make(z20, {0, 1, 2}));  // deterministic first maximizer

    auto z6 = parse_group_spec("Z/6");
    CHECK(longest_ap(GroupSet::full(z6)).value == Rational(6));
    CHECK(longest_ap(make(z6, {3})).value == Rational(1));
}

TEST_CASE("longest AP counts only distinct elements") {
    // d of additive order 2: progression caps at length 2
    auto z8 = parse_group_spec("Z/8");
    auto r = longest_ap(make(z8, {0, 4}));
    CHECK(r.value == Rational(2));
    // whole subgroup of order 4 via d = 2
    auto r2 = longest_ap(make(z8, {0, 2, 4, 6}));
    CHECK(r2.value == Rational(4));
}

TEST_CASE("additive dimension examples") {
    auto z100 = parse_group_spec("Z/100");
    CHECK(additive_dimension(make(z100, {1, 2, 4})).value == Rational(3));
    CHECK(additive_dimension(make(z100, {1, 2, 3})).value == Rational(2));
    auto zero = additive_dimension(make(z100, {0}));
    CHECK(zero.value == Rational(0));
    CHECK(zero.witness_x->empty());
}

TEST_CASE("dimension witness is dissociated and maximal by oracle") {
    Rng rng(67);
    auto g = parse_group_spec("Z/64");
    for (int t = 0; t < 15; ++t) {
        auto a = random_nonempty(g, rng, 7);
        auto r = additive_dimension(a);
        REQUIRE(is_dissociated(*r.witness_x));
        REQUIRE(oracles::dissociated_by_subset_sums(*r.witness_x));
        // no larger dissociated subset exists
        const auto elems = a.elements();
        std::uint64_t target = static_cast<std::uint64_t>(r.value) + 1;
        bool found_bigger = false;
        for (std::uint64_t m = 1; m < (std::uint64_t(1) << elems.size()); ++m) {
            if (std::uint64_t(std::popcount(m)) != target) continue;
            GroupSet cand(g);
            for (std::size_t i = 0; i < elems.size(); ++i)
                if ((m >> i) & 1) cand.insert(elems[i]);
            if (oracles::dissociated_by_subset_sums(cand)) {
                found_bigger = true;
                break;
            }
        }
        REQUIRE_FALSE(found_bigger);
    }
}

TEST_CASE("sign-vector and subset-sum dissociativity tests agree") {
    Rng rng(71);
    auto g = parse_group_spec("Z/32");
    for (int t = 0; t < 60; ++t) {
        auto s = random_nonempty(g, rng, 6);
        REQUIRE(is_dissociated(s) == oracles::dissociated_by_subset_sums(s));
    }
    // meet-in-the-middle branch: 13+ elements
    auto big = parse_group_spec("F2^20");
    GroupSet lam(big);
    for (unsigned i = 0; i < 14; ++i) lam.insert(std::uint64_t(1) << i);
    CHECK(is_dissociated(lam));
    lam.insert(3);  // e0 + e1 collision
    CHECK_FALSE(is_dissociated(lam));
}

TEST_CASE("petridis examples") {
    auto z10 = parse_group_spec("Z/10");
    auto r = petridis_ratio(make(z10, {0, 1}));
    CHECK(r.value == make_ratio(3, 2));
    CHECK(*r.witness_x == make(z10, {0, 1}));

    auto z6 = parse_group_spec("Z/6");
    auto h = make(z6, {0, 2, 4});
    CHECK(petridis_ratio(h).value == Rational(1));

    auto z100 = parse_group_spec("Z/100");
    const auto sidon = make(z100, {0, 1, 3, 7});
    auto rs = petridis_ratio(sidon);
    CHECK(rs.value == oracles::petridis_oracle(sidon));
    CHECK(rs.value <= doubling(sidon).value);
}

TEST_CASE("petridis agrees with oracle and sandwiches the doubling") {
    Rng rng(73);
    auto g = parse_group_spec("Z/18");
    for (int t = 0; t < 25; ++t) {
        auto a = random_nonempty(g, rng, 6);
        auto r = petridis_ratio(a);
        REQUIRE(r.value == oracles::petridis_oracle(a));
        const Rational d = doubling(a).value;
        REQUIRE(r.value <= d);
        REQUIRE(d <= r.value * r.value);
        // witness reproduces the value
        REQUIRE(r.value == make_ratio(sumset(a, *r.witness_x).size(), r.witness_x->size()));
    }
}

TEST_CASE("S decrease properties") {
    // S_T[A;B] >= S_T[A;B'] for B' subseteq B, and R*S_{RT}[A;B] >= S_T[A';B]
    Rng rng(79);
    auto g = parse_group_spec("Z/12");
    for (int t = 0; t < 10; ++t) {
        auto a = random_nonempty(g, rng, 5);
        auto b = random_nonempty(g, rng, 5);
        auto tables = exact_pair_tables(a, b);
        for (auto T : {ExtRational(1), ExtRational(2), ExtRational::inf()}) {
            const Rational st = s_from_tables(tables, a, T).value;
            // part 1: subsets of B
            const auto eb = b.elements();
            for (std::uint64_t m = 1; m < (std::uint64_t(1) << eb.size()); ++m) {
                GroupSet bp(g);
                for (std::size_t i = 0; i < eb.size(); ++i)
                    if ((m >> i) & 1) bp.insert(eb[i]);
                REQUIRE(st >= s_quantity(a, bp, T).value);
            }
            // part 2: subsets of A
            const auto ea = a.elements();
            for (std::uint64_t m = 1; m < (std::uint64_t(1) << ea.size()); ++m) {
                GroupSet ap(g);
                for (std::size_t i = 0; i < ea.size(); ++i)
                    if ((m >> i) & 1) ap.insert(ea[i]);
                const Rational ratio = make_ratio(a.size(), ap.size());
                ExtRational rt = T.infinite ? ExtRational::inf() : ExtRational(T.value * ratio);
                REQUIRE(ratio * s_quantity(a, b, rt).value >= s_quantity(ap, b, T).value);
            }
        }
    }
}

TEST_CASE("pair search rejects oversize exact requests") {
    auto g = parse_group_spec("Z/64");
    GroupSet a = GroupSet::full(g);
    CHECK_THROWS_AS(exact_pair_tables(a, a), std::invalid_argument);
}
