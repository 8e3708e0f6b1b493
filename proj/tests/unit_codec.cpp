#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "eqpart/codec.hpp"

using namespace eqpart;

namespace {
const std::string kCatalog = std::string(EQPART_SOURCE_DIR) + "/data/oa1536_12_2_7_representatives.txt";

const std::vector<AppendixRecord>& records() {
    static const std::vector<AppendixRecord> recs = load_appendix_file(kCatalog);
    return recs;
}
}  // namespace

TEST_CASE("catalog parses") {
    const auto& recs = records();
    REQUIRE(recs.size() == 103);
    CHECK(recs.front().index == 1);
    CHECK(recs.back().index == 103);
    CHECK(recs.front().hex.substr(0, 4) == "7321");
    for (const auto& r : recs) CHECK(r.hex.size() == 124);
    // the three records whose first encoded value is 0
    CHECK(records()[74].hex[0] == '3');
    CHECK(records()[75].hex[0] == '3');
    CHECK(records()[76].hex[0] == '3');
}

TEST_CASE("decode record 1") {
    const Partition p = decode_appendix(records()[0]);
    CHECK(p.cell_plus.size() == 1536);
    CHECK(p.cell_plus.contains(0));
    CHECK(verify_equitable(p, kTargetQuotient));
}

TEST_CASE("decode record 75 with leading zero bit") {
    const Partition p = decode_appendix(records()[74]);
    CHECK(p.cell_plus.size() == 1536);
    CHECK(verify_equitable(p, kTargetQuotient));
}

TEST_CASE("encode round trip") {
    for (int idx : {1, 2, 50, 75, 78, 103}) {
        const AppendixRecord& rec = records()[idx - 1];
        const Partition p = decode_appendix(rec);
        const AppendixRecord back = encode_appendix(p, idx);
        CHECK(back.hex == rec.hex);
    }
}

TEST_CASE("weight layer reconstruction is idempotent") {
    for (int idx : {1, 60, 103}) {
        const Partition p = decode_appendix(records()[idx - 1]);
        CubeSet layer4(kTargetN);
        for (Word w : p.cell_plus.words())
            if (weight(w) == 4) layer4.insert(w);
        CHECK(reconstruct_from_weight4(layer4) == p.cell_plus);
    }
}

TEST_CASE("corrupt records rejected") {
    AppendixRecord bad = records()[0];
    bad.hex[5] = bad.hex[5] == '0' ? '1' : '0';
    CHECK_THROWS_AS(decode_appendix(bad), CorruptRecord);
    AppendixRecord bad2 = records()[0];
    bad2.hex[0] = '9';  // first symbol must encode only 3 bits
    CHECK_THROWS_AS(decode_appendix(bad2), CorruptRecord);
}

TEST_CASE("lexicographic minimum") {
    const Partition diag = Partition::from_words(2, {parse_word("01"), parse_word("10")});
    const Partition min = lexicographic_min(diag);
    CHECK(min.cell_plus.words() == std::vector<Word>{parse_word("00"), parse_word("11")});

    // a translate of record 1 normalizes back to record 1's cell set
    const Partition p1 = decode_appendix(records()[0]);
    const Partition shifted{kTargetN, p1.cell_plus.translated(parse_word("010010001000"))};
    CHECK(lexicographic_min(shifted).cell_plus == p1.cell_plus);
}

TEST_CASE("partition file round trip") {
    const Partition p = Partition::from_words(3, {parse_word("000"), parse_word("111")});
    std::ostringstream os;
    write_partition_file(os, p, QuotientMatrix{0, 3, 1, 2});
    CHECK(os.str() == "n 3\nquotient 0 3 1 2\n000\n111\n");
    std::istringstream is(os.str());
    const auto back = read_partition_file(is);
    CHECK(back.n == 3);
    CHECK(back.quotient == QuotientMatrix{0, 3, 1, 2});
    CHECK(back.partition.cell_plus == p.cell_plus);

    std::istringstream dup("n 3\nquotient 0 3 1 2\n000\n000\n");
    CHECK_THROWS(read_partition_file(dup));
}
