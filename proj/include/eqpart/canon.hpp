// Canonical forms under the three group actions used for isomorph rejection:
// full cube automorphisms (translations + coordinate permutations), coordinate
// permutations only, and coordinate permutations fixing coordinate 1.
//
// The canonical form of a word set C is the lexicographically least sorted
// tuple among the images of C under the group.  It is found by branch and
// bound over (translation root, coordinate assignment).  Coordinates are
// assigned to output positions starting from the LEAST significant bit, so
// after k assignments the image words supported on the chosen coordinates
// are exactly the image elements below 2^k: the initial segment of the final
// sorted tuple is known and can be compared against the incumbent directly.
// This keeps the search effective even on sets whose low-order projection
// counts are all equal (orthogonal arrays), where prefix-counting bounds
// carry no information.
//
// The number of group elements realizing the canonical image equals the
// stabilizer order, so the same traversal yields automorphism group orders
// and, by accumulating quotients of optimal leaves, the orbit partition.

#pragma once

#include <cstring>
#include <numeric>

#include "partition.hpp"

namespace eqpart {

enum class GroupKind { full_cube, perm_only, perm_fix_first };

inline const char* group_name(GroupKind g) {
    switch (g) {
        case GroupKind::full_cube: return "full_cube";
        case GroupKind::perm_only: return "perm_only";
        case GroupKind::perm_fix_first: return "perm_fix_first";
    }
    return "?";
}

inline std::uint64_t group_order(GroupKind g, int n) {
    switch (g) {
        case GroupKind::full_cube: return cube_group_order(n);
        case GroupKind::perm_only: return factorial(n);
        case GroupKind::perm_fix_first: return factorial(n - 1);
    }
    return 0;
}

// Permutation subgroups given by a coordinate coloring: allowed permutations
// move each coordinate within its color class.  Coordinate i has color
// coloring[i-1].  The trivial coloring gives the full symmetric group; giving
// coordinate 1 its own color fixes it; finer colorings realize stabilizers of
// seed configurations.
using Coloring = std::array<std::uint8_t, kMaxN>;

inline Coloring trivial_coloring() {
    Coloring c{};
    return c;
}

inline Coloring fix_first_coloring() {
    Coloring c{};
    c[0] = 1;
    return c;
}

inline std::uint64_t coloring_order(const Coloring& c, int n) {
    std::array<int, 256> counts{};
    for (int i = 0; i < n; ++i) ++counts[c[i]];
    std::uint64_t order = 1;
    for (int i = 0; i < n; ++i)
        if (counts[c[i]]) {
            order *= factorial(counts[c[i]]);
            counts[c[i]] = 0;
        }
    return order;
}

struct CanonicalKey {
    GroupKind group = GroupKind::perm_only;
    int n = 0;
    std::vector<Word> image;  // canonical sorted image

    auto tie() const { return std::tuple<int, int, const std::vector<Word>&>(int(group), n, image); }
    bool operator==(const CanonicalKey& o) const { return tie() == o.tie(); }
    bool operator<(const CanonicalKey& o) const { return tie() < o.tie(); }

    std::string bytes() const {
        std::string s;
        s.reserve(image.size() * 2 + 2);
        s.push_back(static_cast<char>(group));
        s.push_back(static_cast<char>(n));
        for (Word w : image) {
            s.push_back(static_cast<char>(w & 0xff));
            s.push_back(static_cast<char>(w >> 8));
        }
        return s;
    }
};

struct CanonResult {
    std::vector<Word> image;
    std::uint64_t aut_order = 0;
    int orbit_count = 0;                  // only if orbits were requested
    std::vector<int> orbit_of;            // per word of the sorted input
};

namespace detail {

struct DisjointSet {
    std::vector<int> parent;
    int components = 0;
    void reset(int m) {
        parent.resize(m);
        std::iota(parent.begin(), parent.end(), 0);
        components = m;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) {
            parent[b] = a;
            --components;
        }
    }
};

}  // namespace detail

class Canonicalizer {
public:
    CanonResult run(std::vector<Word> words, int n, GroupKind g, bool want_orbits = false) {
        Coloring col = g == GroupKind::perm_fix_first ? fix_first_coloring() : trivial_coloring();
        return run_colored(std::move(words), n, col, g == GroupKind::full_cube, want_orbits);
    }

    // `words` need not be sorted; duplicates are rejected.
    CanonResult run_colored(std::vector<Word> words, int n, const Coloring& coloring,
                            bool with_translations, bool want_orbits = false) {
        require(n >= 1 && n <= kMaxN, "dimension must be 1..16");
        std::sort(words.begin(), words.end());
        require(std::adjacent_find(words.begin(), words.end()) == words.end(),
                "duplicate words in set");

        n_ = n;
        coloring_ = coloring;
        translations_ = with_translations;
        for (int d = 0; d < n; ++d) pos_color_[d] = coloring_[n - d - 1];
        input_ = std::move(words);
        m_ = input_.size();
        want_orbits_ = want_orbits;

        CanonResult res;
        if (m_ == 0 || m_ == (std::size_t(1) << n)) {
            // fixed by the whole group
            res.image = input_;
            res.aut_order =
                (with_translations ? (std::uint64_t(1) << n) : 1) * coloring_order(coloring, n);
            res.orbit_count = m_ == 0 ? 0 : 1;
            res.orbit_of.assign(m_, 0);
            return res;
        }

        best_.assign(m_, full_mask(n));  // sentinel: larger than any real image
        have_best_ = false;
        best_count_ = 0;
        uf_.reset(static_cast<int>(m_));
        cw_.resize(m_);
        pval_.assign(m_, 0);
        known_.assign(m_, 0);
        coord_of_depth_.fill(0);

        // The all-zero word has empty support: its image value (0) is known
        // before any coordinate is assigned, so it seeds the known segment.
        if (with_translations) {
            // Roots equivalent under already-discovered automorphisms yield the
            // same images and equally many optimal leaves: process one per class.
            std::vector<std::int64_t> processed(m_, -1);
            for (std::size_t ri = 0; ri < m_; ++ri) {
                const int rep = uf_.find(static_cast<int>(ri));
                std::int64_t known_count = -1;
                for (std::size_t rj = 0; rj < ri && known_count < 0; ++rj)
                    if (processed[rj] >= 0 && uf_.find(static_cast<int>(rj)) == rep)
                        known_count = processed[rj];
                if (known_count >= 0) {
                    best_count_ += static_cast<std::uint64_t>(known_count);
                    processed[ri] = known_count;
                    continue;
                }
                root_ = input_[ri];
                for (std::size_t i = 0; i < m_; ++i) cw_[i] = static_cast<Word>(input_[i] ^ root_);
                std::sort(cw_.begin(), cw_.end());
                std::fill(pval_.begin(), pval_.end(), 0);
                compute_twins();
                known_[0] = 0;  // cw_ contains the root translated to zero
                const std::uint64_t epoch0 = update_epoch_;
                const std::uint64_t count0 = best_count_;
                start_root(1);
                if (update_epoch_ != epoch0) {
                    // earlier roots' leaves no longer count toward the incumbent
                    std::fill(processed.begin(), processed.end(), std::int64_t(-1));
                    processed[ri] = static_cast<std::int64_t>(best_count_);
                } else {
                    processed[ri] = static_cast<std::int64_t>(best_count_ - count0);
                }
            }
        } else {
            root_ = 0;
            cw_ = input_;
            compute_twins();
            std::size_t seed = 0;
            if (!cw_.empty() && cw_[0] == 0) {
                known_[0] = 0;
                seed = 1;
            }
            start_root(seed);
        }

        res.image.assign(best_.begin(), best_.end());
        res.aut_order = best_count_;
        if (want_orbits_) {
            res.orbit_of.resize(m_);
            std::vector<int> label(m_, -1);
            int next = 0;
            for (std::size_t i = 0; i < m_; ++i) {
                int r = uf_.find(static_cast<int>(i));
                if (label[r] < 0) label[r] = next++;
                res.orbit_of[i] = label[r];
            }
            res.orbit_count = next;
        }
        return res;
    }

private:
    enum class Cmp { lt, eq };

    void start_root(std::size_t seed_len) {
        // compare the seeded segment against the incumbent
        Cmp c = Cmp::eq;
        for (std::size_t i = 0; i < seed_len; ++i) {
            if (known_[i] < best_[i]) {
                c = Cmp::lt;
                break;
            }
            if (known_[i] > best_[i]) return;
        }
        if (c == Cmp::eq && seed_len < m_ && best_[seed_len] == 0) return;  // extra zero impossible
        // move the zero word (if present) out of the active range
        std::size_t end = m_;
        if (seed_len == 1) {
            for (std::size_t i = 0; i < m_; ++i)
                if (cw_[i] == 0) {
                    std::swap(cw_[i], cw_[m_ - 1]);
                    std::swap(pval_[i], pval_[m_ - 1]);
                    end = m_ - 1;
                    break;
                }
        }
        dfs(0, 0, seed_len, end, c);
    }

    // Counts (and absorbs, when orbit tracking is on) optimal leaves reached
    // with the current assignment extended by every color-respecting
    // arrangement of the remaining coordinates; used when the image is
    // already complete.
    void settle(int depth, Word chosen_mask, Cmp c) {
        std::uint64_t arrangements = 1;
        {
            std::array<int, kMaxN> rest_per_color{};
            for (int j = 1; j <= n_; ++j)
                if (!(chosen_mask & coord_bit(n_, j))) ++rest_per_color[coloring_[j - 1]];
            for (int col = 0; col < kMaxN; ++col) arrangements *= factorial(rest_per_color[col]);
        }
        // complete the assignment deterministically for the recorded element:
        // each position takes the largest unused coordinate of its color
        Word mask = chosen_mask;
        for (int d = depth; d < n_; ++d) {
            const std::uint8_t want = pos_color_[d];
            for (int j = n_; j >= 1; --j) {
                const Word jb = coord_bit(n_, j);
                if (!(mask & jb) && coloring_[j - 1] == want) {
                    coord_of_depth_[d] = static_cast<std::uint8_t>(j);
                    mask = static_cast<Word>(mask | jb);
                    break;
                }
            }
        }
        internal_check(mask == full_mask(n_), "assignment completion mismatch");

        // automorphisms feed orbit output and the equivalent-root skipping
        const bool track = want_orbits_ || translations_;
        if (c == Cmp::lt || !have_best_) {
            std::copy(known_.begin(), known_.end(), best_.begin());
            have_best_ = true;
            best_count_ = arrangements;
            ++update_epoch_;
            if (track) {
                uf_.reset(static_cast<int>(m_));
                g0_ = leaf_element();
                g0_inv_ = g0_.inverse();
            }
        } else {
            best_count_ += arrangements;
            if (track && uf_.components > 1) absorb_automorphism();
        }
    }

    // depth: number of assigned positions; known_len: image values determined;
    // cw_[0..active_end) are the words not yet fully inside the assigned span
    // (cw_ and pval_ are permuted in place as words retire); c: relation of
    // known_[0..known_len) to the incumbent prefix, exact at call time.
    void dfs(int depth, Word chosen_mask, std::size_t known_len, std::size_t active_end, Cmp c) {
        if (known_len == m_ || depth == n_) {
            internal_check(known_len == m_, "incomplete image at leaf");
            settle(depth, chosen_mask, c);
            return;
        }

        // One pass over the active words fills every candidate's value list:
        // a word is determined by candidate j exactly when j is its single
        // coordinate outside the chosen span.
        Level& lv = levels_[depth];
        const Word place = static_cast<Word>(Word(1) << depth);
        const Word outside_all = static_cast<Word>(full_mask(n_) & ~chosen_mask);
        lv.order.clear();
        for (int j = n_; j >= 1; --j) {  // later coordinates first: ascending unit values
            const Word jb = coord_bit(n_, j);
            if (!(chosen_mask & jb)) {
                lv.vals[j].clear();
                if (coloring_[j - 1] != pos_color_[depth]) continue;
                lv.order.push_back(j);
            }
        }
        // the active range is kept sorted by pval, so each list arrives sorted
        for (std::size_t a = 0; a < active_end; ++a) {
            const Word out = static_cast<Word>(cw_[a] & outside_all);
            if ((out & (out - 1)) == 0) {  // single outside coordinate
                const int j = n_ - std::countr_zero(static_cast<unsigned>(out));
                lv.vals[j].push_back(static_cast<Word>(pval_[a] | place));
            }
        }
        // Smallest prospective tuple first: elementwise, and on a tie the longer
        // value list wins (its next element is below 2^{depth+1}).  Stable
        // insertion sort: at most n entries, no allocation.
        const auto before = [&](int a, int b) {
            const std::vector<Word>& va = lv.vals[a];
            const std::vector<Word>& vb = lv.vals[b];
            const std::size_t k = std::min(va.size(), vb.size());
            for (std::size_t i = 0; i < k; ++i)
                if (va[i] != vb[i]) return va[i] < vb[i];
            return va.size() > vb.size();
        };
        for (std::size_t i = 1; i < lv.order.size(); ++i) {
            const int x = lv.order[i];
            std::size_t p = i;
            while (p > 0 && before(x, lv.order[p - 1])) {
                lv.order[p] = lv.order[p - 1];
                --p;
            }
            lv.order[p] = x;
        }

        for (int coord : lv.order) {
            const std::vector<Word>& vals = lv.vals[coord];
            // relation of the extended segment to the current incumbent
            Cmp child = c;
            if (c == Cmp::eq) {
                bool prune = false;
                for (std::size_t i = 0; i < vals.size(); ++i) {
                    const Word b = best_[known_len + i];
                    if (vals[i] != b) {
                        if (vals[i] < b)
                            child = Cmp::lt;
                        else
                            prune = true;
                        break;
                    }
                }
                if (prune) continue;
                const std::size_t new_len = known_len + vals.size();
                if (child == Cmp::eq && new_len < m_ && best_[new_len] < (Word(1) << (depth + 1)))
                    continue;  // incumbent holds a further element below 2^{depth+1}
            }

            const Word jb = coord_bit(n_, coord);
            coord_of_depth_[depth] = static_cast<std::uint8_t>(coord);
            // Snapshot the active range, then rebuild it as a stable three-way
            // split: survivors without the coordinate (pval unchanged), then
            // survivors with it (pval gains the place bit: still sorted, the
            // new bit dominates), then the retired words parked at the back.
            const Word outside = static_cast<Word>(outside_all & ~jb);
            lv.save_cw.assign(cw_.begin(), cw_.begin() + active_end);
            lv.save_pval.assign(pval_.begin(), pval_.begin() + active_end);
            std::size_t p = 0;
            for (std::size_t a = 0; a < active_end; ++a) {
                const Word w = lv.save_cw[a];
                if ((w & outside) && !(w & jb)) {
                    cw_[p] = w;
                    pval_[p] = lv.save_pval[a];
                    ++p;
                }
            }
            for (std::size_t a = 0; a < active_end; ++a) {
                const Word w = lv.save_cw[a];
                if ((w & outside) && (w & jb)) {
                    cw_[p] = w;
                    pval_[p] = static_cast<Word>(lv.save_pval[a] | place);
                    ++p;
                }
            }
            const std::size_t new_end = p;
            for (std::size_t a = 0; a < active_end; ++a) {
                const Word w = lv.save_cw[a];
                if (!(w & outside)) {
                    cw_[p] = w;
                    pval_[p] = lv.save_pval[a];
                    ++p;
                }
            }
            std::copy(vals.begin(), vals.end(), known_.begin() + known_len);

            const std::uint64_t epoch_before = update_epoch_;
            dfs(depth + 1, static_cast<Word>(chosen_mask | jb), known_len + vals.size(), new_end,
                child);
            if (c == Cmp::lt && update_epoch_ != epoch_before)
                c = Cmp::eq;  // the new incumbent extends our own segment

            std::copy(lv.save_cw.begin(), lv.save_cw.end(), cw_.begin());
            std::copy(lv.save_pval.begin(), lv.save_pval.end(), pval_.begin());
        }
    }

    // Group element of the current leaf: x -> pi(x ^ root) with
    // pi(coordinate coord_of_depth[k]) = coordinate n - k.
    CubeAutomorphism leaf_element() const {
        CubeAutomorphism a;
        a.n = n_;
        for (int k = 0; k < n_; ++k) a.perm[coord_of_depth_[k] - 1] = static_cast<std::uint8_t>(n_ - k);
        a.translation = a.permute(root_);
        return a;
    }

    void absorb_automorphism() {
        const CubeAutomorphism a = g0_inv_.composed_with(leaf_element());
        for (std::size_t i = 0; i < m_; ++i) {
            const Word u = a.apply(input_[i]);
            const auto it = std::lower_bound(input_.begin(), input_.end(), u);
            internal_check(it != input_.end() && *it == u, "automorphism leaves the set");
            uf_.unite(static_cast<int>(i), static_cast<int>(it - input_.begin()));
            if (uf_.components == 1) return;
        }
    }

    struct Level {
        std::array<std::vector<Word>, kMaxN + 1> vals;  // per candidate coordinate
        std::vector<int> order;
        std::vector<Word> save_cw, save_pval;  // snapshot of the active range
    };

    int n_ = 0;
    Coloring coloring_{};
    bool translations_ = false;
    std::array<std::uint8_t, kMaxN> pos_color_{};
    bool want_orbits_ = false;
    std::size_t m_ = 0;
    std::vector<Word> input_;  // sorted original words
    std::vector<Word> cw_;     // translated words for the current root (permuted in place)
    std::vector<Word> pval_;   // per word: value of its assigned coordinates
    std::vector<Word> known_;  // image elements determined so far (sorted)
    std::vector<Word> best_;
    std::array<Level, kMaxN + 1> levels_;
    bool have_best_ = false;
    std::uint64_t best_count_ = 0;
    std::uint64_t update_epoch_ = 0;
    Word root_ = 0;
    std::array<std::uint8_t, kMaxN> coord_of_depth_{};
    CubeAutomorphism g0_, g0_inv_;
    detail::DisjointSet uf_;
};

// ---------------------------------------------------------------------------
// Convenience wrappers.

inline CanonicalKey canonical_key(const std::vector<Word>& c, int n, GroupKind g) {
    Canonicalizer canon;
    CanonResult r = canon.run(c, n, g, false);
    return CanonicalKey{g, n, std::move(r.image)};
}

inline std::uint64_t aut_group_order(const std::vector<Word>& c, int n, GroupKind g) {
    Canonicalizer canon;
    return canon.run(c, n, g, false).aut_order;
}

// The subgroup {x : C + x = C}.
inline std::vector<Word> translational_periods(const CubeSet& c, int n) {
    std::vector<Word> out;
    const Word total = full_mask(n);
    for (std::uint32_t t = 0; t <= total; ++t)
        if (c.translated(static_cast<Word>(t)) == c) out.push_back(static_cast<Word>(t));
    return out;
}

// Number of Aut(C)-orbits on C (full cube group).
inline int orbit_count(const std::vector<Word>& c, int n) {
    Canonicalizer canon;
    return canon.run(c, n, GroupKind::full_cube, true).orbit_count;
}

// 2^n n! / |Aut(C)|.
inline std::uint64_t class_size(const std::vector<Word>& c, int n) {
    const std::uint64_t aut = aut_group_order(c, n, GroupKind::full_cube);
    const std::uint64_t g = cube_group_order(n);
    internal_check(g % aut == 0, "stabilizer order must divide the group order");
    return g / aut;
}

}  // namespace eqpart
