#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace eqpart;

TEST_CASE("word text convention") {
    CHECK(parse_word("100000000000") == (1u << 11));
    CHECK(parse_word("000000000001") == 1u);
    CHECK(word_to_string(parse_word("010011"), 6) == "010011");
    CHECK(unit(12, 1) == parse_word("100000000000"));
    CHECK(unit(12, 12) == 1u);
    CHECK(starts_with_one(parse_word("100"), 3));
    CHECK_FALSE(starts_with_one(parse_word("011"), 3));
}

TEST_CASE("neighbors in coordinate order") {
    CHECK(neighbors(parse_word("000"), 3) ==
          std::vector<Word>{parse_word("100"), parse_word("010"), parse_word("001")});
    CHECK(neighbors(parse_word("101"), 3) ==
          std::vector<Word>{parse_word("001"), parse_word("111"), parse_word("100")});

    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> dist(0, (1 << 12) - 1);
    for (int it = 0; it < 1000; ++it) {
        const Word x = static_cast<Word>(dist(rng));
        auto nb = neighbors(x, 12);
        REQUIRE(nb.size() == 12);
        std::set<Word> distinct(nb.begin(), nb.end());
        CHECK(distinct.size() == 12);
        for (Word y : nb) CHECK(hamming_distance(x, y) == 1);
    }
}

TEST_CASE("weight and orthogonality") {
    CHECK(weight(parse_word("000000000000")) == 0);
    CHECK(weight(parse_word("111100000000")) == 4);
    std::mt19937 rng(7);
    for (int it = 0; it < 200; ++it) {
        const Word x = static_cast<Word>(rng() & full_mask(12));
        CHECK(weight(x) + weight(complement_word(x, 12)) == 12);
        CHECK(orthogonal(x, 0));
    }
    CHECK(orthogonal(parse_word("1100"), parse_word("0011")));
    CHECK_FALSE(orthogonal(parse_word("1100"), parse_word("0110")));
}

TEST_CASE("subcube enumeration") {
    CHECK(enumerate_subcubes(2, 1).size() == 4);
    CHECK(enumerate_subcubes(3, 0).size() == 8);

    std::size_t count = 0;
    for_each_subcube(12, 4, [&](const Subcube&) { ++count; });
    CHECK(count == 126720);  // C(12,8) * 2^8

    // the k = 0 subcubes are the 8 singletons covering Q_3
    CubeSet seen(3);
    for (const Subcube& sc : enumerate_subcubes(3, 0)) {
        auto mem = sc.members();
        REQUIRE(mem.size() == 1);
        seen.insert(mem[0]);
    }
    CHECK(seen.size() == 8);

    // double counting: summing |members| over all k-subcubes
    for (int k = 0; k <= 4; ++k) {
        std::size_t total = 0;
        for (const Subcube& sc : enumerate_subcubes(4, k)) {
            CHECK(sc.dimension() == k);
            total += sc.members().size();
        }
        CHECK(total == binomial(4, 4 - k) * (1u << (4 - k)) * (1u << k));
    }
}

TEST_CASE("automorphism action") {
    const auto id = CubeAutomorphism::identity(2);
    CHECK(apply_automorphism(id, std::vector<Word>{0, 3}) == std::vector<Word>{0, 3});

    CubeAutomorphism tr = CubeAutomorphism::identity(2);
    tr.translation = parse_word("11");
    CHECK(apply_automorphism(tr, std::vector<Word>{parse_word("00"), parse_word("01")}) ==
          std::vector<Word>{parse_word("10"), parse_word("11")});

    std::mt19937 rng(99);
    for (int it = 0; it < 100; ++it) {
        const auto a = testutil::random_element(rng, 5, GroupKind::full_cube);
        const auto b = testutil::random_element(rng, 5, GroupKind::full_cube);
        const auto c = testutil::random_word_set(rng, 5, 8);
        CHECK(apply_automorphism(a, c).size() == c.size());

        // composition consistency
        const auto ab = a.composed_with(b);
        for (Word w : c) CHECK(ab.apply(w) == a.apply(b.apply(w)));

        // distance preservation
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j)
                CHECK(hamming_distance(a.apply(c[i]), a.apply(c[j])) ==
                      hamming_distance(c[i], c[j]));

        // inverse
        const auto ai = a.inverse();
        for (Word w : c) CHECK(ai.apply(a.apply(w)) == w);
    }
}
