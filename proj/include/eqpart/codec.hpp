// Serialization: the hex catalog format for [[2,10],[6,6]]-partitions of the
// 12-cube (characteristic function restricted to the weight-4 layer, with the
// other layers reconstructed), a plain text partition file format, and the
// lexicographically minimal class representative.

#pragma once

#include <fstream>
#include <sstream>

#include "canon.hpp"
#include "partition.hpp"

namespace eqpart {

inline constexpr int kWeight4Words = 495;  // C(12,4)
inline constexpr int kHexSymbols = 124;    // 3 + 4*123 = 495 bits

struct AppendixRecord {
    int index = 0;       // 1..103
    std::string hex;     // 124 lowercase hex symbols
};

struct CorruptRecord : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Weight-4 words of Q_12 in increasing (lexicographic) order.
inline const std::vector<Word>& weight4_words() {
    static const std::vector<Word> words = [] {
        std::vector<Word> out;
        out.reserve(kWeight4Words);
        for (std::uint32_t w = 0; w <= full_mask(kTargetN); ++w)
            if (weight(static_cast<Word>(w)) == 4) out.push_back(static_cast<Word>(w));
        return out;
    }();
    return words;
}

inline int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    throw CorruptRecord("invalid hex symbol");
}

inline char hex_symbol(int v) { return v < 10 ? static_cast<char>('0' + v) : static_cast<char>('a' + v - 10); }

// The 495 bits of a record: first symbol carries 3 bits, the rest 4, all
// most-significant-first along the word sequence.
inline std::vector<bool> record_bits(const AppendixRecord& rec) {
    if (rec.hex.size() != kHexSymbols) throw CorruptRecord("record must have 124 hex symbols");
    std::vector<bool> bits;
    bits.reserve(kWeight4Words);
    const int v0 = hex_value(rec.hex[0]);
    if (v0 >= 8) throw CorruptRecord("first symbol encodes 3 bits and must be below 8");
    for (int b = 2; b >= 0; --b) bits.push_back((v0 >> b) & 1);
    for (int i = 1; i < kHexSymbols; ++i) {
        const int v = hex_value(rec.hex[i]);
        for (int b = 3; b >= 0; --b) bits.push_back((v >> b) & 1);
    }
    return bits;
}

// Reconstructs the full first cell from its weight-4 layer:
//  * weights 3,2,1,0 descending: a word joins the first cell iff it has at
//    most 2 neighbors of the layer above in the cell;
//  * weights 5..12 ascending: membership is forced by the downset quota
//    (6/16)*2^w; a strict-downset deficit other than 0 or 1 is a corruption.
inline CubeSet reconstruct_from_weight4(const CubeSet& layer4) {
    const int n = kTargetN;
    CubeSet plus(n);
    for (Word w : layer4.words()) plus.insert(w);

    for (int w = 3; w >= 0; --w) {
        for (std::uint32_t x = 0; x <= full_mask(n); ++x) {
            const Word word = static_cast<Word>(x);
            if (weight(word) != w) continue;
            int above = 0;
            for_each_neighbor(word, n, [&](Word u) {
                if (weight(u) == w + 1 && plus.contains(u)) ++above;
            });
            if (above <= 2) plus.insert(word);
        }
    }

    for (int w = 5; w <= n; ++w) {
        const std::uint64_t quota = downset_quota(kTargetQuotient, w);
        for (std::uint32_t x = 0; x <= full_mask(n); ++x) {
            const Word word = static_cast<Word>(x);
            if (weight(word) != w) continue;
            // strict downset {y < x coordinatewise}
            std::uint64_t have = 0;
            Word sub = static_cast<Word>((word - 1) & word);
            while (true) {
                if (plus.contains(sub)) ++have;
                if (sub == 0) break;
                sub = static_cast<Word>((sub - 1) & word);
            }
            if (have + 1 == quota)
                plus.insert(word);
            else if (have != quota)
                throw CorruptRecord("downset count incompatible with the quota");
        }
    }
    return plus;
}

inline Partition decode_appendix(const AppendixRecord& rec) {
    const std::vector<bool> bits = record_bits(rec);
    const std::vector<Word>& w4 = weight4_words();
    CubeSet layer(kTargetN);
    for (int i = 0; i < kWeight4Words; ++i)
        if (bits[i]) layer.insert(w4[i]);
    Partition p{kTargetN, reconstruct_from_weight4(layer)};
    if (p.cell_plus.size() != expected_ones(kTargetQuotient, kTargetN))
        throw CorruptRecord("reconstructed cell has the wrong cardinality");
    if (!verify_equitable(p, kTargetQuotient))
        throw CorruptRecord("reconstructed partition is not equitable");
    return p;
}

inline AppendixRecord encode_appendix(const Partition& p, int index = 0) {
    require(p.n == kTargetN, "catalog encoding is defined for n = 12");
    require(verify_equitable(p, kTargetQuotient), "partition must be [[2,10],[6,6]]-equitable");
    const std::vector<Word>& w4 = weight4_words();
    std::vector<int> bits(kWeight4Words);
    for (int i = 0; i < kWeight4Words; ++i) bits[i] = p.cell_plus.contains(w4[i]) ? 1 : 0;
    std::string hex(kHexSymbols, '0');
    hex[0] = hex_symbol(bits[0] * 4 + bits[1] * 2 + bits[2]);
    for (int i = 1; i < kHexSymbols; ++i) {
        const int base = 3 + (i - 1) * 4;
        hex[i] = hex_symbol(bits[base] * 8 + bits[base + 1] * 4 + bits[base + 2] * 2 + bits[base + 3]);
    }
    return AppendixRecord{index, hex};
}

// The equivalent partition (full cube group) whose sorted first cell is
// lexicographically least; this is the published class representative.
inline Partition lexicographic_min(const Partition& p) {
    Canonicalizer canon;
    CanonResult r = canon.run(p.cell_plus.words(), p.n, GroupKind::full_cube, false);
    return Partition{p.n, CubeSet::from_words(p.n, r.image)};
}

// ---------------------------------------------------------------------------
// Catalog file: the published 103-record listing, two 62-symbol lines per
// record preceded by the record number.

inline std::vector<AppendixRecord> parse_appendix_listing(std::istream& in) {
    std::vector<AppendixRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        std::size_t pos = line.find_first_not_of(' ');
        if (pos == std::string::npos) continue;
        std::size_t dot = line.find('.');
        if (dot != std::string::npos && dot > pos &&
            line.find_first_not_of("0123456789", pos) == dot) {
            AppendixRecord rec;
            rec.index = std::stoi(line.substr(pos, dot - pos));
            std::size_t h = line.find_first_not_of(' ', dot + 1);
            rec.hex = h == std::string::npos ? "" : line.substr(h);
            records.push_back(std::move(rec));
        } else {
            if (records.empty()) throw CorruptRecord("continuation line before any record");
            records.back().hex += line.substr(pos);
        }
    }
    for (const AppendixRecord& r : records)
        if (r.hex.size() != kHexSymbols) throw CorruptRecord("record with wrong symbol count");
    return records;
}

inline std::vector<AppendixRecord> load_appendix_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "cannot open catalog file");
    return parse_appendix_listing(in);
}

// ---------------------------------------------------------------------------
// Plain partition file: header with n and the quotient matrix, then the
// sorted first cell, one word per line as an n-character 0/1 string.

struct PartitionFileContent {
    int n = 0;
    QuotientMatrix quotient;
    Partition partition;
};

inline void write_partition_file(std::ostream& os, const Partition& p, const QuotientMatrix& s) {
    os << "n " << p.n << "\n";
    os << "quotient " << s.s_pp << " " << s.s_pm << " " << s.s_mp << " " << s.s_mm << "\n";
    for (Word w : p.cell_plus.words()) os << word_to_string(w, p.n) << "\n";
}

inline void save_partition_file(const std::string& path, const Partition& p, const QuotientMatrix& s) {
    std::ofstream os(path);
    require(os.good(), "cannot open output file");
    write_partition_file(os, p, s);
}

inline PartitionFileContent read_partition_file(std::istream& in) {
    PartitionFileContent out;
    std::string line;
    bool have_n = false, have_q = false;
    std::vector<Word> words;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        if (tok == "n") {
            require(bool(ls >> out.n), "malformed n line");
            require(out.n >= 1 && out.n <= kMaxN, "dimension out of range");
            have_n = true;
        } else if (tok == "quotient") {
            require(bool(ls >> out.quotient.s_pp >> out.quotient.s_pm >> out.quotient.s_mp >>
                          out.quotient.s_mm),
                    "malformed quotient line");
            have_q = true;
        } else {
            require(have_n, "word line before the n header");
            require(static_cast<int>(tok.size()) == out.n, "word length differs from n");
            words.push_back(parse_word(tok));
        }
    }
    require(have_n && have_q, "missing n or quotient header");
    std::sort(words.begin(), words.end());
    require(std::adjacent_find(words.begin(), words.end()) == words.end(),
            "duplicate word in partition file");
    out.partition = Partition::from_words(out.n, words);
    return out;
}

inline PartitionFileContent load_partition_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "cannot open partition file");
    return read_partition_file(in);
}

}  // namespace eqpart
