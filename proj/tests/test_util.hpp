// Shared helpers for the test suites: exhaustive group enumeration used as
// the independent oracle for equivalence and canonical-form checks.

#pragma once

#include <random>

#include "eqpart/canon.hpp"

namespace eqpart::testutil {

inline std::vector<std::array<std::uint8_t, kMaxN>> all_perms(int n, bool fix_first) {
    std::vector<int> base(n);
    std::iota(base.begin(), base.end(), 1);
    std::vector<std::array<std::uint8_t, kMaxN>> out;
    do {
        if (fix_first && base[0] != 1) continue;
        std::array<std::uint8_t, kMaxN> p{};
        for (int i = 0; i < n; ++i) p[i] = static_cast<std::uint8_t>(base[i]);
        out.push_back(p);
    } while (std::next_permutation(base.begin(), base.end()));
    return out;
}

inline std::vector<CubeAutomorphism> group_elements(int n, GroupKind g) {
    std::vector<CubeAutomorphism> out;
    const bool fix_first = g == GroupKind::perm_fix_first;
    const auto perms = all_perms(n, fix_first);
    const Word tmax = g == GroupKind::full_cube ? full_mask(n) : 0;
    for (const auto& p : perms) {
        for (std::uint32_t t = 0; t <= tmax; ++t) {
            CubeAutomorphism a;
            a.n = n;
            a.perm = p;
            a.translation = static_cast<Word>(t);
            out.push_back(a);
        }
    }
    return out;
}

// Exhaustive equivalence test; independent of the canonicalizer.
inline bool equivalent_brute(const std::vector<Word>& c, const std::vector<Word>& d, int n,
                             GroupKind g) {
    if (c.size() != d.size()) return false;
    std::vector<Word> ds = d;
    std::sort(ds.begin(), ds.end());
    for (const auto& a : group_elements(n, g))
        if (apply_automorphism(a, c) == ds) return true;
    return false;
}

inline std::vector<Word> random_word_set(std::mt19937& rng, int n, int size) {
    size = std::min(size, 1 << n);
    std::uniform_int_distribution<int> dist(0, (1 << n) - 1);
    CubeSet s(n);
    while (static_cast<int>(s.size()) < size) s.insert(static_cast<Word>(dist(rng)));
    return s.words();
}

inline CubeAutomorphism random_element(std::mt19937& rng, int n, GroupKind g) {
    CubeAutomorphism a = CubeAutomorphism::identity(n);
    const int start = g == GroupKind::perm_fix_first ? 1 : 0;
    for (int i = n - 1; i > start; --i) {
        std::uniform_int_distribution<int> d(start, i);
        std::swap(a.perm[i], a.perm[d(rng)]);
    }
    if (g == GroupKind::full_cube)
        a.translation = static_cast<Word>(std::uniform_int_distribution<int>(0, (1 << n) - 1)(rng));
    return a;
}

}  // namespace eqpart::testutil
