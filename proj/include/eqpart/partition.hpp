// Equitable 2-partitions of Q_n, their quotient matrices, orthogonal-array
// strength checks, square/heavy structural predicates, and local partitions
// with boundary conditions (I)-(V).

#pragma once

#include <optional>
#include <ostream>

#include "bitword.hpp"

namespace eqpart {

// 2x2 quotient matrix [[s_pp, s_pm], [s_mp, s_mm]].
struct QuotientMatrix {
    int s_pp = 0, s_pm = 0, s_mp = 0, s_mm = 0;

    bool row_sums_equal(int n) const { return s_pp + s_pm == n && s_mp + s_mm == n; }
    bool operator==(const QuotientMatrix&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const QuotientMatrix& s) {
    return os << "[[" << s.s_pp << "," << s.s_pm << "],[" << s.s_mp << "," << s.s_mm << "]]";
}

// |C_+| = 2^n * c / (b + c) for an equitable partition with quotient S.
inline std::uint64_t expected_ones(const QuotientMatrix& s, int n) {
    require(s.s_pm + s.s_mp > 0, "b + c must be positive");
    const std::uint64_t num = (std::uint64_t(1) << n) * static_cast<std::uint64_t>(s.s_mp);
    const std::uint64_t den = static_cast<std::uint64_t>(s.s_pm + s.s_mp);
    require(num % den == 0, "2^n * c / (b+c) is not an integer; S infeasible for this n");
    return num / den;
}

// The quotient matrix of the main classified instance.
inline constexpr QuotientMatrix kTargetQuotient{2, 10, 6, 6};
inline constexpr int kTargetN = 12;

// Quota of first-cell elements in the downset of a weight-w word:
// (c / (b+c)) * 2^w, valid while n - w does not exceed the strength.
inline std::uint64_t downset_quota(const QuotientMatrix& s, int w) {
    const std::uint64_t num = (std::uint64_t(1) << w) * static_cast<std::uint64_t>(s.s_mp);
    const std::uint64_t den = static_cast<std::uint64_t>(s.s_pm + s.s_mp);
    internal_check(num % den == 0, "downset quota must be an integer");
    return num / den;
}

// A 2-partition of {0,1}^n given by its first cell.
struct Partition {
    int n = 0;
    CubeSet cell_plus;

    static Partition from_words(int n, const std::vector<Word>& ws) {
        return Partition{n, CubeSet::from_words(n, ws)};
    }
    bool in_plus(Word w) const { return cell_plus.contains(w); }
};

// Counts neighbors of x inside `set`.
inline int neighbor_count(const CubeSet& set, Word x, int n) {
    int c = 0;
    for (int i = 1; i <= n; ++i)
        if (set.contains(static_cast<Word>(x ^ coord_bit(n, i)))) ++c;
    return c;
}

// True iff every vertex of cell i has exactly S_ij neighbors in cell j.
// On failure optionally reports a witness vertex.
inline bool verify_equitable(const Partition& p, const QuotientMatrix& s,
                             Word* witness = nullptr) {
    require(s.row_sums_equal(p.n), "quotient row sums must equal n");
    const Word total = full_mask(p.n);
    for (std::uint32_t w = 0; w <= total; ++w) {
        const Word x = static_cast<Word>(w);
        const int deg = neighbor_count(p.cell_plus, x, p.n);
        const int want = p.in_plus(x) ? s.s_pp : s.s_mp;
        if (deg != want) {
            if (witness) *witness = x;
            return false;
        }
    }
    return true;
}

inline std::size_t count_in_subcube(const CubeSet& c, const Subcube& sc) {
    std::size_t cnt = 0;
    for (Word w : sc.members())
        if (c.contains(w)) ++cnt;
    return cnt;
}

// Bits of x at the positions of mask, packed densely.
inline std::uint32_t compress_bits(Word x, Word mask) {
    std::uint32_t out = 0;
    int shift = 0;
    Word m = mask;
    while (m) {
        const Word low = static_cast<Word>(m & (~m + 1u));
        if (x & low) out |= 1u << shift;
        ++shift;
        m = static_cast<Word>(m & (m - 1u));
    }
    return out;
}

// Tallies |C ∩ sc| over all subcubes with t fixed coordinates, one fixed-set
// at a time (counts for all 2^t fixed values per set are produced together).
template <typename Fn>
inline void for_each_subcube_count(const CubeSet& c, int n, int t, Fn&& fn) {
    require(t >= 0 && t <= n, "fixed-coordinate count out of range");
    const std::vector<Word> ws = c.words();
    std::vector<std::uint32_t> counts(std::size_t(1) << t);
    std::vector<int> idx(t);
    for (int i = 0; i < t; ++i) idx[i] = i + 1;
    while (true) {
        Word mask = 0;
        for (int i : idx) mask = static_cast<Word>(mask | coord_bit(n, i));
        std::fill(counts.begin(), counts.end(), 0u);
        for (Word w : ws) ++counts[compress_bits(w, mask)];
        for (std::uint32_t v = 0; v < (std::uint32_t(1) << t); ++v) fn(counts[v]);
        if (t == 0) break;
        int j = t - 1;
        while (j >= 0 && idx[j] == n - (t - 1 - j)) --j;
        if (j < 0) break;
        ++idx[j];
        for (int l = j + 1; l < t; ++l) idx[l] = idx[l - 1] + 1;
    }
}

// Maximum t such that every (n-t)-subcube holds exactly |C|/2^t elements of C.
inline int strength(const CubeSet& c, int n) {
    require(!c.empty(), "strength of an empty set is undefined");
    const std::size_t m = c.size();
    int t = 0;
    while (t < n) {
        const int cand = t + 1;
        if (m % (std::size_t(1) << cand) != 0) break;
        const std::uint32_t want = static_cast<std::uint32_t>(m >> cand);
        bool ok = true;
        for_each_subcube_count(c, n, cand, [&](std::uint32_t got) {
            if (got != want) ok = false;
        });
        if (!ok) break;
        t = cand;
    }
    return t;
}

// True iff every (n-t-1)-subcube count lies in {m/2^{t+1}-1, m/2^{t+1}, m/2^{t+1}+1}.
inline bool strength_plus(const CubeSet& c, int n, int t) {
    require(t >= 0 && t + 1 <= n, "strength_plus level out of range");
    const std::size_t m = c.size();
    if (m % (std::size_t(1) << (t + 1)) != 0) return false;  // target count not integral
    const long long mid = static_cast<long long>(m >> (t + 1));
    bool ok = true;
    for_each_subcube_count(c, n, t + 1, [&](std::uint32_t got) {
        if (static_cast<long long>(got) < mid - 1 || static_cast<long long>(got) > mid + 1) ok = false;
    });
    return ok;
}

// Four words of the form {x, x+e_i, x+e_j, x+e_i+e_j} inside C.
inline bool contains_square(const CubeSet& c, int n) {
    for (Word x : c.words()) {
        for (int i = 1; i <= n; ++i) {
            const Word xi = static_cast<Word>(x ^ coord_bit(n, i));
            if (xi < x || !c.contains(xi)) continue;  // x smallest corner in direction i
            for (int j = i + 1; j <= n; ++j) {
                const Word xj = static_cast<Word>(x ^ coord_bit(n, j));
                if (xj < x || !c.contains(xj)) continue;
                if (c.contains(static_cast<Word>(xi ^ coord_bit(n, j)))) return true;
            }
        }
    }
    return false;
}

// Some 3-subcube of Q_n holds at least 5 elements of C.
inline bool is_heavy(const CubeSet& c, int n) {
    if (n < 3) return false;
    bool heavy = false;
    for_each_subcube_count(c, n, n - 3, [&](std::uint32_t got) {
        if (got >= 5) heavy = true;
    });
    return heavy;
}

// ---------------------------------------------------------------------------
// Local partitions.

// Domain of an (r0,r1)-local partition: words starting with 0 of weight <= r0
// plus words starting with 1 of weight <= r1.
inline bool in_local_domain(Word x, int n, int r0, int r1) {
    return weight(x) <= (starts_with_one(x, n) ? r1 : r0);
}

template <typename Fn>
inline void for_each_domain_word(int n, int r0, int r1, Fn&& fn) {
    const Word total = full_mask(n);
    for (std::uint32_t w = 0; w <= total; ++w)
        if (in_local_domain(static_cast<Word>(w), n, r0, r1)) fn(static_cast<Word>(w));
}

struct LocalPartition {
    int n = 0;
    int r0 = 0, r1 = 0;
    CubeSet p_plus;  // p_minus is the rest of the domain

    bool in_plus(Word w) const { return p_plus.contains(w); }
    bool in_minus(Word w) const {
        return in_local_domain(w, n, r0, r1) && !p_plus.contains(w);
    }

    std::vector<Word> plus_words() const { return p_plus.words(); }
    std::vector<Word> minus_words() const {
        std::vector<Word> out;
        for_each_domain_word(n, r0, r1, [&](Word w) {
            if (!p_plus.contains(w)) out.push_back(w);
        });
        return out;
    }
};

enum class LocalCondition { none = 0, c1, c2, c3, c4, c5 };

// Checks conditions (I)-(V); reports the first violated one.
//   (I)   p_plus lies inside the domain (p_minus is stored implicitly as the rest);
//   (II)  the all-zero word is in p_plus;
//   (III) 10...0 is in p_minus;
//   (IV)  every word v of weight < r_{v_1} has exactly S_{i+} neighbors in
//         p_plus and S_{i-} in p_minus, where i is the cell of v;
//   (V)   every word of p_plus has at most S_{++} neighbors in p_plus.
inline LocalCondition check_local(const LocalPartition& l, const QuotientMatrix& s) {
    const int n = l.n;
    require(s.row_sums_equal(n), "quotient row sums must equal n");
    for (Word w : l.p_plus.words())
        if (!in_local_domain(w, n, l.r0, l.r1)) return LocalCondition::c1;
    if (!l.in_plus(0)) return LocalCondition::c2;
    if (!l.in_minus(unit(n, 1))) return LocalCondition::c3;

    LocalCondition bad = LocalCondition::none;
    for_each_domain_word(n, l.r0, l.r1, [&](Word v) {
        if (bad != LocalCondition::none) return;
        const bool plus = l.in_plus(v);
        const int r_here = starts_with_one(v, n) ? l.r1 : l.r0;
        if (weight(v) < r_here) {
            int in_plus = 0, in_minus = 0;
            for_each_neighbor(v, n, [&](Word u) {
                if (l.in_plus(u)) ++in_plus;
                else if (l.in_minus(u)) ++in_minus;
                else internal_check(false, "neighborhood of an interior word leaves the domain");
            });
            const int want_plus = plus ? s.s_pp : s.s_mp;
            const int want_minus = plus ? s.s_pm : s.s_mm;
            if (in_plus != want_plus || in_minus != want_minus) {
                bad = LocalCondition::c4;
                return;
            }
        }
        if (plus) {
            int in_plus = 0;
            for_each_neighbor(v, n, [&](Word u) {
                if (l.in_plus(u)) ++in_plus;
            });
            if (in_plus > s.s_pp) bad = LocalCondition::c5;
        }
    });
    return bad;
}

inline bool validate_local(const LocalPartition& l, const QuotientMatrix& s) {
    return check_local(l, s) == LocalCondition::none;
}

// Square through the all-zero word: its two weight-1 p_plus neighbors close
// to a 4-cycle (the membership test used by the square pipeline filter).
inline bool has_square_through_zero(const CubeSet& plus, int n) {
    Word a = 0, b = 0;
    int found = 0;
    for (int i = 1; i <= n; ++i) {
        const Word e = coord_bit(n, i);
        if (plus.contains(e)) {
            (found == 0 ? a : b) = e;
            ++found;
        }
    }
    if (found < 2) return false;
    if (found == 2) return plus.contains(static_cast<Word>(a | b));
    // more than two weight-1 words: fall back to the general test
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            const Word ei = coord_bit(n, i), ej = coord_bit(n, j);
            if (plus.contains(ei) && plus.contains(ej) && plus.contains(static_cast<Word>(ei | ej)))
                return true;
        }
    return false;
}

}  // namespace eqpart
