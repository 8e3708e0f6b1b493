#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace eqpart;
using eqpart::testutil::equivalent_brute;
using eqpart::testutil::random_element;
using eqpart::testutil::random_word_set;

TEST_CASE("canonical key invariance") {
    std::mt19937 rng(4242);
    for (GroupKind g : {GroupKind::full_cube, GroupKind::perm_only, GroupKind::perm_fix_first}) {
        for (int it = 0; it < 60; ++it) {
            const int n = 3 + static_cast<int>(rng() % 3);
            const int size = 1 + static_cast<int>(rng() % ((1 << n) - 1));
            const auto c = random_word_set(rng, n, size);
            const auto key = canonical_key(c, n, g);
            const auto a = random_element(rng, n, g);
            CHECK(canonical_key(apply_automorphism(a, c), n, g) == key);
        }
    }
}

TEST_CASE("canonical key examples") {
    // the two diagonals of Q_2 are translates of each other
    const auto k1 = canonical_key({parse_word("00"), parse_word("11")}, 2, GroupKind::full_cube);
    const auto k2 = canonical_key({parse_word("01"), parse_word("10")}, 2, GroupKind::full_cube);
    CHECK(k1 == k2);
    CHECK(k1.image == std::vector<Word>{parse_word("00"), parse_word("11")});

    // but they are not equivalent under coordinate permutations alone
    CHECK_FALSE(canonical_key({parse_word("00"), parse_word("11")}, 2, GroupKind::perm_only) ==
                canonical_key({parse_word("01"), parse_word("10")}, 2, GroupKind::perm_only));
}

TEST_CASE("canonical completeness against brute force") {
    std::mt19937 rng(515151);
    int checked_equal = 0;
    for (GroupKind g : {GroupKind::full_cube, GroupKind::perm_only, GroupKind::perm_fix_first}) {
        for (int it = 0; it < 70; ++it) {
            const int n = 2 + static_cast<int>(rng() % 3);
            const int size = 1 + static_cast<int>(rng() % 5);
            auto c = random_word_set(rng, n, size);
            std::vector<Word> d;
            if (it % 2 == 0) {
                d = apply_automorphism(random_element(rng, n, g), c);
            } else {
                d = random_word_set(rng, n, size);
            }
            const bool same_key = canonical_key(c, n, g) == canonical_key(d, n, g);
            const bool equivalent = equivalent_brute(c, d, n, g);
            CHECK(same_key == equivalent);
            if (same_key) ++checked_equal;
        }
    }
    CHECK(checked_equal > 50);
}

TEST_CASE("automorphism order and class size") {
    CHECK(aut_group_order({parse_word("00"), parse_word("11")}, 2, GroupKind::full_cube) == 4);
    CHECK(class_size({parse_word("00"), parse_word("11")}, 2) == 2);

    // full set is fixed by the whole group
    std::vector<Word> all;
    for (Word w = 0; w < 8; ++w) all.push_back(w);
    CHECK(aut_group_order(all, 3, GroupKind::full_cube) == cube_group_order(3));
    CHECK(class_size(all, 3) == 1);

    // brute-force oracle at small n
    std::mt19937 rng(777);
    for (GroupKind g : {GroupKind::full_cube, GroupKind::perm_only, GroupKind::perm_fix_first}) {
        for (int it = 0; it < 25; ++it) {
            const int n = 2 + static_cast<int>(rng() % 3);
            const auto c = random_word_set(rng, n, 1 + static_cast<int>(rng() % 6));
            std::uint64_t brute = 0;
            std::vector<Word> cs = c;
            std::sort(cs.begin(), cs.end());
            for (const auto& a : testutil::group_elements(n, g))
                if (apply_automorphism(a, cs) == cs) ++brute;
            CHECK(aut_group_order(c, n, g) == brute);
        }
    }
}

TEST_CASE("periods form a group") {
    const CubeSet diag = CubeSet::of(2, {parse_word("00"), parse_word("11")});
    const auto periods = translational_periods(diag, 2);
    CHECK(periods == std::vector<Word>{parse_word("00"), parse_word("11")});

    std::mt19937 rng(31);
    for (int it = 0; it < 30; ++it) {
        const int n = 3 + static_cast<int>(rng() % 2);
        const auto c = CubeSet::from_words(n, random_word_set(rng, n, 1 + rng() % 8));
        const auto periods2 = translational_periods(c, n);
        REQUIRE(!periods2.empty());
        CHECK(periods2[0] == 0);
        CubeSet pg(n);
        for (Word p : periods2) pg.insert(p);
        for (Word a : periods2)
            for (Word b : periods2) CHECK(pg.contains(static_cast<Word>(a ^ b)));
    }
}

TEST_CASE("orbit counting") {
    // translation by 11 joins the two diagonal words
    Canonicalizer canon;
    auto r = canon.run({parse_word("00"), parse_word("11")}, 2, GroupKind::full_cube, true);
    CHECK(r.orbit_count == 1);

    // brute-force orbit oracle
    std::mt19937 rng(888);
    for (int it = 0; it < 25; ++it) {
        const int n = 2 + static_cast<int>(rng() % 3);
        auto c = random_word_set(rng, n, 1 + static_cast<int>(rng() % 6));
        std::sort(c.begin(), c.end());
        detail::DisjointSet uf;
        uf.reset(static_cast<int>(c.size()));
        for (const auto& a : testutil::group_elements(n, GroupKind::full_cube)) {
            if (apply_automorphism(a, c) != c) continue;
            for (std::size_t i = 0; i < c.size(); ++i) {
                const Word u = a.apply(c[i]);
                const auto it2 = std::lower_bound(c.begin(), c.end(), u);
                uf.unite(static_cast<int>(i), static_cast<int>(it2 - c.begin()));
            }
        }
        CHECK(orbit_count(c, n) == uf.components);
    }
}
