#include <catch2/catch_amalgamated.hpp>

#include "eqpart/analysis.hpp"
#include "eqpart/codec.hpp"

using namespace eqpart;

namespace {
const std::string kCatalog = std::string(EQPART_SOURCE_DIR) + "/data/oa1536_12_2_7_representatives.txt";

Partition decoded(int idx) {
    static const std::vector<AppendixRecord> recs = load_appendix_file(kCatalog);
    return decode_appendix(recs[idx - 1]);
}

CycleFormula formula(std::initializer_list<std::pair<int, int>> items) {
    CycleFormula f;
    for (auto [len, cnt] : items) f.count_by_length[len] = cnt;
    return f;
}
}  // namespace

TEST_CASE("cycle formula basics") {
    CubeSet q2(2);
    for (Word w = 0; w < 4; ++w) q2.insert(w);
    CHECK(cycle_formula(q2, 2) == formula({{4, 1}}));

    CubeSet not2reg = CubeSet::of(3, {parse_word("000"), parse_word("111")});
    CHECK_THROWS(cycle_formula(not2reg, 3));
}

TEST_CASE("cycle formulas of catalog entries") {
    CHECK(cycle_formula(decoded(1).cell_plus, 12) == formula({{4, 384}}));
    CHECK(cycle_formula(decoded(95).cell_plus, 12) == formula({{24, 64}}));
    CHECK(cycle_formula(decoded(60).cell_plus, 12) ==
          formula({{4, 32}, {18, 8}, {20, 32}, {30, 8}, {36, 4}, {60, 4}}));
    CHECK(cycle_formula(decoded(69).cell_plus, 12) == formula({{4, 64}, {40, 8}, {120, 8}}));
    CHECK(cycle_formula(decoded(1).cell_plus, 12).total_mass() == 1536);
}

TEST_CASE("cycle stats extras") {
    // every 4-cycle runs along exactly 2 directions
    const CycleStats cs = cycle_stats(decoded(1).cell_plus, 12);
    REQUIRE(cs.direction_counts.size() == 384);
    CHECK(cs.direction_counts.front() == 2);
    CHECK(cs.direction_counts.back() == 2);
    CHECK(cs.translation_classes >= 1);
}

TEST_CASE("fourier spectrum of catalog entries") {
    const QuotientMatrix s = kTargetQuotient;

    const FourierSpectrum f1 = fourier(decoded(1), s);
    REQUIRE(f1.integral());
    const auto h1 = f1.value_histogram();
    CHECK(f1.nonzero_count() == 15);
    for (auto [v, cnt] : h1) CHECK((v == 0 || v == 2 || v == -2));
    CHECK(f1.sum_of_squares_num() == 60 * f1.denominator * f1.denominator);

    const FourierSpectrum f81 = fourier(decoded(81), s);
    CHECK(f81.nonzero_count() == 60);
    for (auto [v, cnt] : f81.value_histogram()) CHECK((v >= -1 && v <= 1));

    // cross-validation against the full transform: coefficients vanish off the
    // weight-8 level and match the subcube-count evaluation on it
    const auto full = fourier_full_numerators(decoded(1), s);
    for (std::uint32_t y = 0; y < full.size(); ++y) {
        const Word yw = static_cast<Word>(y);
        if (weight(yw) == f1.level) {
            CHECK(full[y] == (f1.numerators.at(yw) << f1.level));
        } else {
            CHECK(full[y] == 0);
        }
    }
}

TEST_CASE("fourier at small n") {
    const QuotientMatrix s{0, 3, 1, 2};
    const Partition p = Partition::from_words(3, {parse_word("000"), parse_word("111")});
    const FourierSpectrum f = fourier(p, s);
    CHECK(f.level == 2);
    CHECK(f.sum_of_squares_num() == 3 * f.denominator * f.denominator);  // b*c
    const auto full = fourier_full_numerators(p, s);
    for (std::uint32_t y = 0; y < full.size(); ++y) {
        const Word yw = static_cast<Word>(y);
        if (weight(yw) == 2)
            CHECK(full[y] == f.numerators.at(yw) << 2);
        else
            CHECK(full[y] == 0);
    }
}

TEST_CASE("subcube distributions") {
    CubeSet all(12);
    for (std::uint32_t w = 0; w < 4096; ++w) all.insert(static_cast<Word>(w));
    const auto hist_all = subcube_distribution(all, 12, 4);
    REQUIRE(hist_all.size() == 1);
    CHECK(hist_all.begin()->first == 16);

    // counts in 4-subcubes sit at 6 +- the weight-8 coefficient
    const auto h81 = subcube_distribution(decoded(81).cell_plus, 12, 4);
    std::vector<std::size_t> support;
    for (auto [k, v] : h81) support.push_back(k);
    CHECK(support == std::vector<std::size_t>{5, 6, 7});

    const auto h1 = subcube_distribution(decoded(1).cell_plus, 12, 4);
    support.clear();
    for (auto [k, v] : h1) support.push_back(k);
    CHECK(support == std::vector<std::size_t>{4, 6, 8});
}

TEST_CASE("full report for entry 1") {
    const PropertyReport r = full_report(decoded(1), kTargetQuotient, 1);
    CHECK(r.cardinality == 1536);
    CHECK(r.strength == 7);
    CHECK_FALSE(r.strength_plus_flag);
    CHECK(r.square);
    CHECK_FALSE(r.heavy);  // all induced cycles are 4-cycles: no 5-path fits a 3-subcube
    CHECK(r.cycles == formula({{4, 384}}));
    CHECK(r.aut_order == 983040);
    CHECK(r.period_count == 128);
    CHECK_FALSE(r.odd_weight_period);
    CHECK(r.orbit_count == 1);
    CHECK(r.fourier_nonzero == 15);
}
