// Property computation for classified partitions: cycle structure of the
// induced 2-regular graph, Fourier coefficients on the single nonvanishing
// weight level, subcube count distributions, and aggregated reports.

#pragma once

#include <map>
#include <set>

#include "canon.hpp"
#include "partition.hpp"

namespace eqpart {

// Multiset of cycle lengths of the graph induced on C (requires every vertex
// of C to have exactly 2 neighbors in C, as with quotient row [2, n-2]).
struct CycleFormula {
    std::map<int, int> count_by_length;

    std::size_t total_mass() const {
        std::size_t m = 0;
        for (auto [len, cnt] : count_by_length) m += std::size_t(len) * cnt;
        return m;
    }
    bool operator==(const CycleFormula&) const = default;

    std::string to_string() const {
        std::string s;
        for (auto [len, cnt] : count_by_length) {
            if (!s.empty()) s += " ";
            s += std::to_string(len) + "^" + std::to_string(cnt);
        }
        return s.empty() ? "-" : s;
    }
};

// Extended cycle statistics mentioned alongside the cycle formula: the number
// of distinct directions used by each cycle and the number of cycles that are
// not translates of one another.
struct CycleStats {
    CycleFormula formula;
    std::vector<int> direction_counts;   // per cycle, sorted
    int translation_classes = 0;
};

inline CycleStats cycle_stats(const CubeSet& c, int n) {
    CycleStats out;
    std::set<std::vector<Word>> translate_keys;
    CubeSet visited(n);
    for (Word start : c.words()) {
        if (visited.contains(start)) continue;
        // walk the 2-regular graph from the smallest unvisited member,
        // stepping first to its smaller neighbor
        std::vector<Word> cyc{start};
        visited.insert(start);
        std::vector<Word> nb;
        for_each_neighbor(start, n, [&](Word u) {
            if (c.contains(u)) nb.push_back(u);
        });
        require(nb.size() == 2, "induced graph is not 2-regular");
        Word prev = start;
        Word cur = std::min(nb[0], nb[1]);
        while (cur != start) {
            visited.insert(cur);
            cyc.push_back(cur);
            Word next = prev;
            int deg = 0;
            for_each_neighbor(cur, n, [&](Word u) {
                if (c.contains(u)) {
                    ++deg;
                    if (u != prev) next = u;
                }
            });
            require(deg == 2, "induced graph is not 2-regular");
            prev = cur;
            cur = next;
        }
        ++out.formula.count_by_length[static_cast<int>(cyc.size())];

        CubeSet dirs(n);
        for (std::size_t i = 0; i < cyc.size(); ++i)
            dirs.insert(static_cast<Word>(cyc[i] ^ cyc[(i + 1) % cyc.size()]));
        out.direction_counts.push_back(static_cast<int>(dirs.size()));

        // canonical translate of the cycle's vertex set
        std::vector<Word> best;
        for (Word anchor : cyc) {
            std::vector<Word> img;
            img.reserve(cyc.size());
            for (Word w : cyc) img.push_back(static_cast<Word>(w ^ anchor));
            std::sort(img.begin(), img.end());
            if (best.empty() || img < best) best = std::move(img);
        }
        translate_keys.insert(std::move(best));
    }
    std::sort(out.direction_counts.begin(), out.direction_counts.end());
    out.translation_classes = static_cast<int>(translate_keys.size());
    return out;
}

inline CycleFormula cycle_formula(const CubeSet& c, int n) {
    return cycle_stats(c, n).formula;
}

// ---------------------------------------------------------------------------
// Fourier transform of f = b on the first cell, -c on the second.
// For an equitable partition the coefficients vanish off the weight-(b+c)/2
// level; on it, f^(y) = 2^{(b+c)/2-n} * sum over x disjoint from y of f(x).
// Coefficients are stored exactly as numerator / 2^{n-(b+c)/2}.

struct FourierSpectrum {
    int n = 0;
    int level = 0;                       // (b+c)/2
    std::int64_t denominator = 1;        // 2^{n-level}
    std::map<Word, std::int64_t> numerators;  // per weight-level word, may be 0

    bool integral() const {
        for (auto [y, num] : numerators)
            if (num % denominator != 0) return false;
        return true;
    }
    // integer coefficient values (requires integral())
    std::map<Word, std::int64_t> values() const {
        std::map<Word, std::int64_t> out;
        for (auto [y, num] : numerators) {
            internal_check(num % denominator == 0, "non-integral Fourier coefficient");
            out[y] = num / denominator;
        }
        return out;
    }
    std::int64_t sum_of_squares_num() const {  // sum of coefficient^2 * den^2
        std::int64_t s = 0;
        for (auto [y, num] : numerators) s += num * num;
        return s;
    }
    std::map<std::int64_t, int> value_histogram() const {
        std::map<std::int64_t, int> h;
        for (auto [y, v] : values()) ++h[v];
        return h;
    }
    int nonzero_count() const {
        int c = 0;
        for (auto [y, num] : numerators)
            if (num != 0) ++c;
        return c;
    }
};

inline FourierSpectrum fourier(const Partition& p, const QuotientMatrix& s) {
    require(s.row_sums_equal(p.n), "quotient row sums must equal n");
    require((s.s_pm + s.s_mp) % 2 == 0, "b + c must be even");
    FourierSpectrum spec;
    spec.n = p.n;
    spec.level = (s.s_pm + s.s_mp) / 2;
    require(spec.level <= p.n, "weight level exceeds n");
    spec.denominator = std::int64_t(1) << (p.n - spec.level);

    // counts of the first cell inside the subcube {x : x disjoint from y}
    const Word total = full_mask(p.n);
    for (std::uint32_t yv = 0; yv <= total; ++yv) {
        const Word y = static_cast<Word>(yv);
        if (weight(y) != spec.level) continue;
        const Word free = static_cast<Word>(total & ~y);
        std::int64_t a = 0;
        Word sub = free;
        while (true) {
            if (p.cell_plus.contains(sub)) ++a;
            if (sub == 0) break;
            sub = static_cast<Word>((sub - 1) & free);
        }
        const std::int64_t cube = std::int64_t(1) << (p.n - spec.level);
        spec.numerators[y] = (std::int64_t(s.s_pm) + s.s_mp) * a - std::int64_t(s.s_mp) * cube;
    }
    return spec;
}

// Full transform of f over all of {0,1}^n, for cross-validation at small n.
// Returns numerators over the same denominator 2^{n-level}... here scaled by
// 2^{n} / 2^{n-level} = 2^{level}: value(y) = sum_x f(x) (-1)^{x.y} / 2^n.
inline std::vector<std::int64_t> fourier_full_numerators(const Partition& p,
                                                         const QuotientMatrix& s) {
    const int n = p.n;
    const std::size_t size = std::size_t(1) << n;
    std::vector<std::int64_t> v(size);
    for (std::size_t x = 0; x < size; ++x)
        v[x] = p.in_plus(static_cast<Word>(x)) ? s.s_pm : -s.s_mp;
    // in-place Walsh-Hadamard transform
    for (std::size_t len = 1; len < size; len <<= 1)
        for (std::size_t i = 0; i < size; i += len << 1)
            for (std::size_t j = i; j < i + len; ++j) {
                const std::int64_t u = v[j], w = v[j + len];
                v[j] = u + w;
                v[j + len] = u - w;
            }
    return v;  // f^(y) = v[y] / 2^n
}

// Histogram of |subcube ∩ C| over all k-dimensional subcubes.
inline std::map<std::size_t, std::size_t> subcube_distribution(const CubeSet& c, int n, int k) {
    std::map<std::size_t, std::size_t> hist;
    for_each_subcube_count(c, n, n - k, [&](std::uint32_t got) { ++hist[got]; });
    return hist;
}

// ---------------------------------------------------------------------------
// Aggregated per-partition report.

struct PropertyReport {
    int class_id = 0;
    std::size_t cardinality = 0;
    int strength = 0;
    bool strength_plus_flag = false;
    bool square = false;
    bool heavy = false;
    CycleFormula cycles;
    std::uint64_t aut_order = 0;
    std::size_t period_count = 0;
    bool odd_weight_period = false;
    int orbit_count = 0;
    std::map<std::int64_t, int> fourier_histogram;
    int fourier_nonzero = 0;
    std::map<std::size_t, std::size_t> subcube4;
    std::vector<int> cycle_direction_counts;
    int cycle_translation_classes = 0;
};

inline PropertyReport full_report(const Partition& p, const QuotientMatrix& s, int class_id = 0) {
    require(verify_equitable(p, s), "input partition is not equitable");
    PropertyReport r;
    r.class_id = class_id;
    r.cardinality = p.cell_plus.size();
    r.strength = strength(p.cell_plus, p.n);
    r.strength_plus_flag = r.strength < p.n && strength_plus(p.cell_plus, p.n, r.strength);
    r.square = contains_square(p.cell_plus, p.n);
    r.heavy = is_heavy(p.cell_plus, p.n);
    if (s.s_pp == 2) {
        const CycleStats cs = cycle_stats(p.cell_plus, p.n);
        r.cycles = cs.formula;
        r.cycle_direction_counts = cs.direction_counts;
        r.cycle_translation_classes = cs.translation_classes;
    }
    Canonicalizer canon;
    const CanonResult cr = canon.run(p.cell_plus.words(), p.n, GroupKind::full_cube, true);
    r.aut_order = cr.aut_order;
    r.orbit_count = cr.orbit_count;
    const auto periods = translational_periods(p.cell_plus, p.n);
    r.period_count = periods.size();
    for (Word t : periods)
        if (weight(t) % 2 == 1) r.odd_weight_period = true;
    const FourierSpectrum spec = fourier(p, s);
    r.fourier_histogram = spec.value_histogram();
    r.fourier_nonzero = spec.nonzero_count();
    r.subcube4 = subcube_distribution(p.cell_plus, p.n, 4);
    return r;
}

}  // namespace eqpart
