// Core hypercube combinatorics: binary words, weights, neighborhoods,
// subcubes and the automorphism group of Q_n (translations + coordinate
// permutations).
//
// Conventions used throughout the library:
//   * a vertex of Q_n is an n-bit word stored in an unsigned integer,
//   * coordinate 1 is the MOST significant of the n used bits, so the
//     text form "100000000000" (coordinate 1 set) parses to 1 << (n-1),
//   * integer order on words equals lexicographic order on their
//     0/1 strings,
//   * n is limited to 16 so that a word always fits one machine register.

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace eqpart {

using Word = std::uint16_t;

constexpr int kMaxN = 16;

inline void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// Thrown when an internal consistency check fails (never a data condition).
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

inline void internal_check(bool cond, const char* msg) {
    if (!cond) throw InternalError(msg);
}

inline constexpr Word full_mask(int n) {
    return static_cast<Word>((1u << n) - 1u);
}

inline int weight(Word x) { return std::popcount(static_cast<unsigned>(x)); }

// Bit holding coordinate i (1-based, coordinate 1 leftmost in text form).
inline constexpr Word coord_bit(int n, int i) {
    return static_cast<Word>(1u << (n - i));
}

// Unit vector e_i.
inline constexpr Word unit(int n, int i) { return coord_bit(n, i); }

inline bool coord_value(Word x, int n, int i) {
    return (x >> (n - i)) & 1u;
}

// First coordinate of the word (the paper's v_1).
inline bool starts_with_one(Word x, int n) { return coord_value(x, n, 1); }

inline Word complement_word(Word x, int n) {
    return static_cast<Word>(x ^ full_mask(n));
}

// Supports are disjoint ("no ones in the same position").
inline bool orthogonal(Word x, Word y) { return (x & y) == 0; }

inline int hamming_distance(Word x, Word y) { return weight(x ^ y); }

// The n words at Hamming distance 1, ordered by flipped coordinate index.
inline std::vector<Word> neighbors(Word x, int n) {
    std::vector<Word> out;
    out.reserve(n);
    for (int i = 1; i <= n; ++i) out.push_back(static_cast<Word>(x ^ coord_bit(n, i)));
    return out;
}

template <typename Fn>
inline void for_each_neighbor(Word x, int n, Fn&& fn) {
    for (int i = 1; i <= n; ++i) fn(static_cast<Word>(x ^ coord_bit(n, i)));
}

inline std::string word_to_string(Word x, int n) {
    std::string s(n, '0');
    for (int i = 1; i <= n; ++i)
        if (coord_value(x, n, i)) s[i - 1] = '1';
    return s;
}

inline Word parse_word(const std::string& s) {
    require(!s.empty() && s.size() <= kMaxN, "word string must have 1..16 characters");
    Word x = 0;
    for (char ch : s) {
        require(ch == '0' || ch == '1', "word string must consist of 0/1");
        x = static_cast<Word>((x << 1) | (ch == '1' ? 1u : 0u));
    }
    return x;
}

// ---------------------------------------------------------------------------
// Membership set over {0,1}^n, bitset backed.

class CubeSet {
public:
    CubeSet() : n_(0) {}
    explicit CubeSet(int n) : n_(n), bits_((std::size_t(1) << n) / 64 + 1, 0) {
        require(n >= 1 && n <= kMaxN, "dimension must be 1..16");
    }
    static CubeSet of(int n, std::initializer_list<Word> ws) {
        CubeSet s(n);
        for (Word w : ws) s.insert(w);
        return s;
    }
    static CubeSet from_words(int n, const std::vector<Word>& ws) {
        CubeSet s(n);
        for (Word w : ws) s.insert(w);
        return s;
    }

    int dimension() const { return n_; }
    bool contains(Word w) const { return (bits_[w >> 6] >> (w & 63)) & 1u; }
    void insert(Word w) {
        if (!contains(w)) {
            bits_[w >> 6] |= std::uint64_t(1) << (w & 63);
            ++count_;
        }
    }
    void erase(Word w) {
        if (contains(w)) {
            bits_[w >> 6] &= ~(std::uint64_t(1) << (w & 63));
            --count_;
        }
    }
    std::size_t size() const { return count_; }
    bool empty() const { return count_ == 0; }

    // Members in increasing word order.
    std::vector<Word> words() const {
        std::vector<Word> out;
        out.reserve(count_);
        Word total = static_cast<Word>((1u << n_) - 1u);
        for (std::uint32_t w = 0; w <= total; ++w)
            if (contains(static_cast<Word>(w))) out.push_back(static_cast<Word>(w));
        return out;
    }

    CubeSet translated(Word t) const {
        CubeSet out(n_);
        Word total = static_cast<Word>((1u << n_) - 1u);
        for (std::uint32_t w = 0; w <= total; ++w)
            if (contains(static_cast<Word>(w))) out.insert(static_cast<Word>(w ^ t));
        return out;
    }

    bool operator==(const CubeSet& o) const {
        return n_ == o.n_ && bits_ == o.bits_;
    }

private:
    int n_;
    std::size_t count_ = 0;
    std::vector<std::uint64_t> bits_;
};

// ---------------------------------------------------------------------------
// Subcubes.

struct Subcube {
    Word fixed_mask = 0;  // bits of the fixed coordinates
    Word fixed_vals = 0;  // their values (subset of fixed_mask)
    int n = 0;

    int dimension() const { return n - weight(fixed_mask); }
    bool contains(Word x) const { return (x & fixed_mask) == fixed_vals; }

    std::vector<Word> members() const {
        Word free_mask = static_cast<Word>(full_mask(n) & ~fixed_mask);
        std::vector<Word> out;
        out.reserve(std::size_t(1) << dimension());
        // enumerate subsets of free_mask in increasing order
        Word sub = 0;
        while (true) {
            out.push_back(static_cast<Word>(sub | fixed_vals));
            if (sub == free_mask) break;
            sub = static_cast<Word>((sub - free_mask) & free_mask);
        }
        std::sort(out.begin(), out.end());
        return out;
    }
};

// All k-dimensional subcubes: fixed-coordinate sets in lexicographic order
// (as increasing index tuples), fixed values in lexicographic order.
template <typename Fn>
inline void for_each_subcube(int n, int k, Fn&& fn) {
    require(k >= 0 && k <= n, "subcube dimension out of range");
    const int t = n - k;  // number of fixed coordinates
    std::vector<int> idx(t);
    for (int i = 0; i < t; ++i) idx[i] = i + 1;
    while (true) {
        Word mask = 0;
        for (int i : idx) mask = static_cast<Word>(mask | coord_bit(n, i));
        const std::uint32_t vmax = t == 0 ? 0 : (1u << t) - 1u;
        for (std::uint32_t v = 0; v <= vmax; ++v) {
            Word vals = 0;
            for (int j = 0; j < t; ++j)
                if ((v >> (t - 1 - j)) & 1u) vals = static_cast<Word>(vals | coord_bit(n, idx[j]));
            fn(Subcube{mask, vals, n});
            if (t == 0) break;
        }
        // next combination
        int j = t - 1;
        while (j >= 0 && idx[j] == n - (t - 1 - j)) --j;
        if (j < 0) break;
        ++idx[j];
        for (int l = j + 1; l < t; ++l) idx[l] = idx[l - 1] + 1;
    }
}

inline std::vector<Subcube> enumerate_subcubes(int n, int k) {
    std::vector<Subcube> out;
    for_each_subcube(n, k, [&](const Subcube& s) { out.push_back(s); });
    return out;
}

// ---------------------------------------------------------------------------
// Automorphisms of Q_n: x -> permute(x) + translation.

struct CubeAutomorphism {
    int n = 0;
    Word translation = 0;
    // perm[i] = image coordinate of coordinate i+1 (0-based array, 1-based coords).
    std::array<std::uint8_t, kMaxN> perm{};

    static CubeAutomorphism identity(int n) {
        CubeAutomorphism a;
        a.n = n;
        for (int i = 0; i < n; ++i) a.perm[i] = static_cast<std::uint8_t>(i + 1);
        return a;
    }

    Word permute(Word x) const {
        Word y = 0;
        for (int i = 1; i <= n; ++i)
            if (coord_value(x, n, i)) y = static_cast<Word>(y | coord_bit(n, perm[i - 1]));
        return y;
    }

    Word apply(Word x) const { return static_cast<Word>(permute(x) ^ translation); }

    // this after other: x -> this(other(x)).
    CubeAutomorphism composed_with(const CubeAutomorphism& other) const {
        CubeAutomorphism r;
        r.n = n;
        for (int i = 0; i < n; ++i) r.perm[i] = perm[other.perm[i] - 1];
        r.translation = static_cast<Word>(permute(other.translation) ^ translation);
        return r;
    }

    CubeAutomorphism inverse() const {
        CubeAutomorphism r;
        r.n = n;
        for (int i = 0; i < n; ++i) r.perm[perm[i] - 1] = static_cast<std::uint8_t>(i + 1);
        r.translation = r.permute(translation);
        return r;
    }
};

inline std::vector<Word> apply_automorphism(const CubeAutomorphism& a, const std::vector<Word>& c) {
    std::vector<Word> out;
    out.reserve(c.size());
    for (Word w : c) out.push_back(a.apply(w));
    std::sort(out.begin(), out.end());
    return out;
}

inline CubeSet apply_automorphism(const CubeAutomorphism& a, const CubeSet& c) {
    CubeSet out(c.dimension());
    for (Word w : c.words()) out.insert(a.apply(w));
    return out;
}

// n! for small n, as used in group orders.
inline std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

inline std::uint64_t cube_group_order(int n) {
    return (std::uint64_t(1) << n) * factorial(n);
}

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

}  // namespace eqpart
