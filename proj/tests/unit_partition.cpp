#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace eqpart;

namespace {

// Independent strength oracle: direct member counting over enumerated subcubes.
int strength_oracle(const CubeSet& c, int n) {
    int t = 0;
    while (t < n) {
        const int cand = t + 1;
        if (c.size() % (std::size_t(1) << cand) != 0) break;
        const std::size_t want = c.size() >> cand;
        bool ok = true;
        for (const Subcube& sc : enumerate_subcubes(n, n - cand))
            if (count_in_subcube(c, sc) != want) ok = false;
        if (!ok) break;
        t = cand;
    }
    return t;
}

}  // namespace

TEST_CASE("expected ones") {
    CHECK(expected_ones(QuotientMatrix{2, 10, 6, 6}, 12) == 1536);
    CHECK(expected_ones(QuotientMatrix{3, 9, 7, 5}, 12) == 1792);
    CHECK(expected_ones(QuotientMatrix{0, 3, 1, 2}, 3) == 2);
    CHECK_THROWS(expected_ones(QuotientMatrix{0, 3, 2, 1}, 2));  // 4*2/5 not integral
}

TEST_CASE("verify equitable at n = 3") {
    const QuotientMatrix s{0, 3, 1, 2};
    const Partition p = Partition::from_words(3, {parse_word("000"), parse_word("111")});
    CHECK(verify_equitable(p, s));

    Partition bad = p;
    bad.cell_plus.erase(parse_word("111"));
    bad.cell_plus.insert(parse_word("110"));
    Word witness = 0;
    CHECK_FALSE(verify_equitable(bad, s, &witness));
}

TEST_CASE("strength") {
    CubeSet full(4);
    for (std::uint32_t w = 0; w < 16; ++w) full.insert(static_cast<Word>(w));
    CHECK(strength(full, 4) == 4);
    for (int t = 0; t < 4; ++t) CHECK(strength_plus(full, 4, t));

    const CubeSet pair = CubeSet::of(3, {parse_word("000"), parse_word("111")});
    CHECK(strength(pair, 3) == 1);
    CHECK(strength(pair, 3) == strength_oracle(pair, 3));

    std::mt19937 rng(2024);
    for (int it = 0; it < 20; ++it) {
        const auto ws = eqpart::testutil::random_word_set(rng, 5, 8);
        const CubeSet c = CubeSet::from_words(5, ws);
        CHECK(strength(c, 5) == strength_oracle(c, 5));
    }
}

TEST_CASE("squares and heaviness") {
    CHECK(contains_square(CubeSet::of(4, {parse_word("0000"), parse_word("0001"),
                                          parse_word("0010"), parse_word("0011")}),
                          4));
    CHECK_FALSE(contains_square(CubeSet::of(4, {parse_word("0000"), parse_word("0001"),
                                                parse_word("0010"), parse_word("0111")}),
                                4));

    // 5-path in a 3-subcube, padded with zeros to n = 12
    CubeSet path(12);
    for (const char* s : {"110", "010", "000", "001", "101"})
        path.insert(static_cast<Word>(parse_word(s) << 9));
    CHECK(is_heavy(path, 12));
    path.erase(static_cast<Word>(parse_word("110") << 9));
    CHECK_FALSE(is_heavy(path, 12));
}

TEST_CASE("local partition conditions") {
    const QuotientMatrix s{2, 10, 6, 6};
    const int n = 12;

    // the (1,2)-seed of the heavy pipeline
    LocalPartition b;
    b.n = n;
    b.r0 = 1;
    b.r1 = 2;
    b.p_plus = CubeSet(n);
    for (Word w : {Word(0), unit(n, 2), unit(n, 3),
                   static_cast<Word>(unit(n, 1) | unit(n, 2)),
                   static_cast<Word>(unit(n, 1) | unit(n, 3)),
                   static_cast<Word>(unit(n, 1) | unit(n, 4)),
                   static_cast<Word>(unit(n, 1) | unit(n, 5)),
                   static_cast<Word>(unit(n, 1) | unit(n, 6))})
        b.p_plus.insert(w);
    CHECK(validate_local(b, s));

    LocalPartition bad = b;
    bad.p_plus.erase(0);
    CHECK(check_local(bad, s) == LocalCondition::c2);

    LocalPartition bad3 = b;
    bad3.p_plus.insert(unit(n, 1));
    CHECK(check_local(bad3, s) == LocalCondition::c3);

    // dropping a weight-2 word starves condition (IV) for the unit word e_1
    LocalPartition bad4 = b;
    bad4.p_plus.erase(static_cast<Word>(unit(n, 1) | unit(n, 6)));
    CHECK(check_local(bad4, s) == LocalCondition::c4);
}

TEST_CASE("square through zero") {
    const int n = 12;
    CubeSet plus(n);
    plus.insert(0);
    plus.insert(unit(n, 11));
    plus.insert(unit(n, 12));
    CHECK_FALSE(has_square_through_zero(plus, n));
    plus.insert(static_cast<Word>(unit(n, 11) | unit(n, 12)));
    CHECK(has_square_through_zero(plus, n));
}
