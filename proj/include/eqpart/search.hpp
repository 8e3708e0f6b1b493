// The classification engine: local-partition extension via exact multiple
// cover, per-level isomorph rejection under the appropriate permutation
// group, representative selection between equivalent subclasses, completion
// of (r,r)-local partitions through the downset quotas, and orbit-stabilizer
// double counting as a consistency gate at every level.

#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>

#include "analysis.hpp"
#include "canon.hpp"
#include "cover.hpp"
#include "regular_graphs.hpp"

namespace eqpart {

enum class GrowSide { r0, r1 };

inline LocalPartition make_local(int n, int r0, int r1, const std::vector<Word>& plus) {
    LocalPartition l;
    l.n = n;
    l.r0 = r0;
    l.r1 = r1;
    l.p_plus = CubeSet::from_words(n, plus);
    return l;
}

// ---------------------------------------------------------------------------
// Extension instance (the exact-multiple-cover reconstruction step).
//
// Growing r0 from an (r0-1, r1)-local partition: rows are the candidate words
// of weight r0 starting with 0 whose inclusion cannot break condition (V);
// columns are the words of weight r0-1 starting with 0, with target
// alpha_v = S_{i+} - beta_v where beta_v counts v's neighbors already in the
// first cell.  Growing r1 is symmetric on the words starting with 1.

inline CoverInstance build_extension_instance(const LocalPartition& l, GrowSide grow,
                                              const QuotientMatrix& s) {
    const int n = l.n;
    const bool side1 = grow == GrowSide::r1;
    const int new_weight = (side1 ? l.r1 : l.r0) + 1;

    std::vector<Word> columns;
    const Word total = full_mask(n);
    for (std::uint32_t wv = 0; wv <= total; ++wv) {
        const Word w = static_cast<Word>(wv);
        if (starts_with_one(w, n) == side1 && weight(w) == new_weight - 1) columns.push_back(w);
    }

    CoverInstance inst;
    inst.num_cols = static_cast<int>(columns.size());
    inst.targets.resize(columns.size());
    std::vector<int> col_of(std::size_t(1) << n, -1);
    for (std::size_t i = 0; i < columns.size(); ++i) {
        col_of[columns[i]] = static_cast<int>(i);
        int beta = 0;
        for_each_neighbor(columns[i], n, [&](Word u) {
            if (l.in_plus(u)) ++beta;
        });
        const int want = l.in_plus(columns[i]) ? s.s_pp : s.s_mp;
        const int alpha = want - beta;
        if (alpha < 0) {
            inst.infeasible = true;
            return inst;
        }
        inst.targets[i] = static_cast<std::uint32_t>(alpha);
    }

    // candidate words of the new layer, filtered by condition (V) for the
    // word itself and for each of its first-cell neighbors
    for (std::uint32_t wv = 0; wv <= total; ++wv) {
        const Word x = static_cast<Word>(wv);
        if (starts_with_one(x, n) != side1 || weight(x) != new_weight) continue;
        int beta_x = 0;
        bool ok = true;
        for_each_neighbor(x, n, [&](Word u) {
            if (!l.in_plus(u)) return;
            ++beta_x;
            int cnt = 0;
            for_each_neighbor(u, n, [&](Word v) {
                if (l.in_plus(v)) ++cnt;
            });
            if (cnt + 1 > s.s_pp) ok = false;
        });
        if (!ok || beta_x > s.s_pp) continue;
        std::vector<std::uint16_t> cols;
        for_each_neighbor(x, n, [&](Word u) {
            if (col_of[u] >= 0) cols.push_back(static_cast<std::uint16_t>(col_of[u]));
        });
        inst.add_row(std::move(cols), x);
    }
    return inst;
}

// ---------------------------------------------------------------------------
// Families.

enum class Family { none, square, heavy, square_free };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::none: return "none";
        case Family::square: return "square";
        case Family::heavy: return "heavy";
        case Family::square_free: return "square-free";
    }
    return "?";
}

struct FamilySpec {
    Family family = Family::none;
    std::vector<Word> seed;  // words required in the first cell (labelled)
    Coloring coloring = fix_first_coloring();

    // filter for local partitions (refutation semantics: reject when the
    // membership requirement is already violated)
    bool accept_local(const CubeSet& plus, int n, int r0, int r1) const {
        for (Word w : seed)
            if (in_local_domain(w, n, r0, r1) && !plus.contains(w)) return false;
        switch (family) {
            case Family::none:
            case Family::heavy:
                return true;
            case Family::square:
                return r0 < 2 || has_square_through_zero(plus, n);
            case Family::square_free:
                return !contains_square(plus, n) && !is_heavy(plus, n);
        }
        return true;
    }

    bool accept_final(const CubeSet& plus, int n) const {
        switch (family) {
            case Family::none:
                return true;
            case Family::square:
                return contains_square(plus, n);
            case Family::heavy:
                return is_heavy(plus, n);
            case Family::square_free:
                return !contains_square(plus, n);
        }
        return true;
    }
};

inline FamilySpec family_spec(Family f, int n, const QuotientMatrix& s) {
    FamilySpec spec;
    spec.family = f;
    switch (f) {
        case Family::none:
        case Family::square:
            if (f == Family::square)
                require(s.s_pp == 2, "the square family needs quotient row [2, n-2]");
            break;
        case Family::heavy: {
            require(n == 12 && s == kTargetQuotient, "the heavy seed is specific to [[2,10],[6,6]]");
            // {e1+e2, e2, 0, e3, e3+e1, e1+e4, e1+e5, e1+e6}
            spec.seed = {0,
                         unit(n, 2),
                         unit(n, 3),
                         static_cast<Word>(unit(n, 1) | unit(n, 2)),
                         static_cast<Word>(unit(n, 1) | unit(n, 3)),
                         static_cast<Word>(unit(n, 1) | unit(n, 4)),
                         static_cast<Word>(unit(n, 1) | unit(n, 5)),
                         static_cast<Word>(unit(n, 1) | unit(n, 6))};
            // stabilizer: {1}, {2,3}, {4,5,6}, rest
            spec.coloring = {};
            spec.coloring[0] = 1;
            spec.coloring[1] = spec.coloring[2] = 2;
            spec.coloring[3] = spec.coloring[4] = spec.coloring[5] = 3;
            break;
        }
        case Family::square_free: {
            require(n == 12 && s == kTargetQuotient,
                    "the square-free seed is specific to [[2,10],[6,6]]");
            // {e1+e2, e2, 0, e3, e3+e4}
            spec.seed = {0, unit(n, 2), unit(n, 3), static_cast<Word>(unit(n, 1) | unit(n, 2)),
                         static_cast<Word>(unit(n, 3) | unit(n, 4))};
            // stabilizer: coordinates 1..4 pinned, rest free
            spec.coloring = {};
            spec.coloring[0] = 1;
            spec.coloring[1] = 2;
            spec.coloring[2] = 3;
            spec.coloring[3] = 4;
            break;
        }
    }
    return spec;
}

// ---------------------------------------------------------------------------
// Level data.

struct LocalClass {
    std::vector<Word> rep;        // canonical first cell under the class group
    std::uint64_t aut = 0;        // stabilizer order in the class group
    bool leading = true;
};

struct LevelReport {
    int r0 = 0, r1 = 0;
    std::uint64_t raw = 0;        // labelled continuations across extended parents
    std::uint64_t classes = 0;
    std::uint64_t leading = 0;
    double seconds = 0;
};

struct SearchConfig {
    int n = 0;
    QuotientMatrix s;
    Family family = Family::none;
    int threads = 1;
    std::string checkpoint_dir;
    std::optional<std::pair<int, int>> stop_after;
    bool select_at_r2 = true;
    bool leading_only = false;  // extend only leading classes past a selection level
    std::function<void(const std::string&)> log;
};

struct ClassificationResult {
    std::vector<LevelReport> levels;
    std::vector<LocalClass> last_level;          // classes at the last computed local level
    std::vector<std::vector<Word>> final_cells;  // canonical (lexicographically least) first cells
    std::uint64_t final_raw = 0;
};

// ---------------------------------------------------------------------------
// One extension step with isomorph rejection and per-parent validation.

struct ExtensionOutcome {
    std::vector<LocalClass> classes;
    std::uint64_t raw = 0;
};

namespace detail {

template <typename Task>
inline void run_parallel(int threads, std::size_t count, Task&& task) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int use = std::min<std::size_t>(threads, count);
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int t = 0; t < use; ++t)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    task(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace detail

inline ExtensionOutcome extend_level(const std::vector<LocalClass>& parents, int pr0, int pr1,
                                     GrowSide grow, const QuotientMatrix& s, const FamilySpec& fam,
                                     int n, int threads, bool leading_only = false) {
    const int cr0 = pr0 + (grow == GrowSide::r0 ? 1 : 0);
    const int cr1 = pr1 + (grow == GrowSide::r1 ? 1 : 0);

    struct PerParent {
        std::vector<LocalClass> kids;
        std::uint64_t raw = 0;
    };
    std::vector<PerParent> results(parents.size());

    detail::run_parallel(threads, parents.size(), [&](std::size_t pi) {
        const LocalClass& parent = parents[pi];
        if (leading_only && !parent.leading) return;
        const LocalPartition pl = make_local(n, pr0, pr1, parent.rep);
        const CoverInstance inst = build_extension_instance(pl, grow, s);
        Canonicalizer canon;
        std::map<std::vector<Word>, std::pair<std::uint64_t, std::uint64_t>> kids;  // image -> (aut, mult)
        std::uint64_t raw = 0;
        CoverSolver solver(inst);
        solver.for_each_solution([&](const CoverSolution& sol) {
            std::vector<Word> plus = parent.rep;
            for (std::uint16_t r : sol) plus.push_back(static_cast<Word>(inst.row_labels[r]));
            LocalPartition child = make_local(n, cr0, cr1, plus);
            if (!validate_local(child, s)) return;
            if (!fam.accept_local(child.p_plus, n, cr0, cr1)) return;
            ++raw;
            CanonResult cr = canon.run_colored(std::move(plus), n, fam.coloring, false);
            auto [it, fresh] = kids.try_emplace(std::move(cr.image),
                                                std::make_pair(cr.aut_order, std::uint64_t(0)));
            internal_check(it->second.first == cr.aut_order, "inconsistent stabilizer order");
            ++it->second.second;
        });
        PerParent& out = results[pi];
        out.raw = raw;
        for (auto& [image, info] : kids) {
            const auto [aut, mult] = info;
            // orbit-stabilizer double count: the parent's stabilizer acts on the
            // continuations; each child class is one orbit
            internal_check(parent.aut % aut == 0 && mult == parent.aut / aut,
                           "orbit-stabilizer validation failed at an extension step");
            out.kids.push_back(LocalClass{image, aut, parent.leading});
        }
    });

    ExtensionOutcome out;
    std::map<std::vector<Word>, std::size_t> seen;
    for (std::size_t pi = 0; pi < parents.size(); ++pi) {
        out.raw += results[pi].raw;
        for (LocalClass& kid : results[pi].kids) {
            auto [it, fresh] = seen.try_emplace(kid.rep, out.classes.size());
            internal_check(fresh, "equivalent children from inequivalent parents");
            out.classes.push_back(std::move(kid));
        }
    }
    std::sort(out.classes.begin(), out.classes.end(),
              [](const LocalClass& a, const LocalClass& b) { return a.rep < b.rep; });
    return out;
}

// ---------------------------------------------------------------------------
// Completion of an (r,r)-local partition through the downset quotas.
// Membership of every word of weight w > r is forced: the downset of x must
// hold exactly (c/(b+c)) 2^w first-cell words, so x joins the cell exactly
// when the strict downset is one short.  Valid for r >= n/3 (the quota
// argument needs strength n - w <= 2n/3 - 1 for all layers w > r).

inline std::vector<Partition> complete_partition(const LocalPartition& l, const QuotientMatrix& s) {
    const int n = l.n;
    require(l.r0 == l.r1, "completion starts from an (r,r)-local partition");
    require(3 * l.r0 >= n, "completion requires local radius at least n/3");
    CubeSet plus(n);
    for (Word w : l.p_plus.words()) plus.insert(w);
    const Word total = full_mask(n);
    for (int w = l.r0 + 1; w <= n; ++w) {
        const std::uint64_t quota = downset_quota(s, w);
        for (std::uint32_t xv = 0; xv <= total; ++xv) {
            const Word x = static_cast<Word>(xv);
            if (weight(x) != w) continue;
            std::uint64_t have = 0;
            Word sub = static_cast<Word>((x - 1) & x);
            while (true) {
                if (plus.contains(sub)) ++have;
                if (sub == 0) break;
                sub = static_cast<Word>((sub - 1) & x);
            }
            if (have + 1 == quota)
                plus.insert(x);
            else if (have != quota)
                return {};
        }
    }
    Partition p{n, std::move(plus)};
    if (!verify_equitable(p, s)) return {};
    return {std::move(p)};
}

// quota integrality for every layer the completion will touch
inline bool completion_supported(int n, int r, const QuotientMatrix& s) {
    if (3 * r < n) return false;
    for (int w = r + 1; w <= n; ++w) {
        const std::uint64_t num = (std::uint64_t(1) << w) * static_cast<std::uint64_t>(s.s_mp);
        if (num % static_cast<std::uint64_t>(s.s_pm + s.s_mp) != 0) return false;
    }
    return true;
}

struct FinalOutcome {
    std::vector<std::vector<Word>> cells;  // canonical first cells, sorted
    std::vector<std::uint64_t> aut;        // full-group stabilizer orders
    std::uint64_t raw = 0;
};

inline FinalOutcome complete_level(const std::vector<LocalClass>& parents, int r,
                                   const QuotientMatrix& s, const FamilySpec& fam, int n,
                                   int threads, bool leading_only = false) {
    struct PerParent {
        std::vector<Word> cell;
        std::uint64_t aut_full = 0;
        bool produced = false;
    };
    std::vector<PerParent> results(parents.size());
    detail::run_parallel(threads, parents.size(), [&](std::size_t pi) {
        const LocalClass& parent = parents[pi];
        if (leading_only && !parent.leading) return;
        const LocalPartition pl = make_local(n, r, r, parent.rep);
        const std::vector<Partition> completed = complete_partition(pl, s);
        if (completed.empty()) return;
        if (!fam.accept_final(completed.front().cell_plus, n)) return;
        Canonicalizer canon;
        CanonResult cr = canon.run(completed.front().cell_plus.words(), n, GroupKind::full_cube);
        results[pi] = PerParent{std::move(cr.image), cr.aut_order, true};
    });

    // merge, tracking the per-class count of labelled completing parents for
    // the final double count
    FinalOutcome out;
    std::map<std::vector<Word>, std::size_t> index;
    std::vector<std::uint64_t> anchored;
    const std::uint64_t perm_order = factorial(n - 1);
    const std::uint64_t group = coloring_order(fam.coloring, n);
    for (std::size_t pi = 0; pi < parents.size(); ++pi) {
        if (!results[pi].produced) continue;
        ++out.raw;
        auto [it, fresh] = index.try_emplace(results[pi].cell, out.cells.size());
        if (fresh) {
            out.cells.push_back(std::move(results[pi].cell));
            out.aut.push_back(results[pi].aut_full);
            anchored.push_back(0);
        }
        internal_check(group % parents[pi].aut == 0, "stabilizer must divide the group order");
        anchored[it->second] += group / parents[pi].aut;
    }

    // Anchored double count (unseeded families): the labelled local partitions
    // completing into a class equal its anchored labelled copies, counted by
    // first-cell vertices admitting the anchoring.
    if (fam.seed.empty()) {
        for (std::size_t ci = 0; ci < out.cells.size(); ++ci) {
            const CubeSet cell = CubeSet::from_words(n, out.cells[ci]);
            std::uint64_t anchors = 0;
            for (Word x : out.cells[ci]) {
                bool counts = true;
                if (fam.family == Family::square) {
                    // x must lie on a square of the cell
                    counts = false;
                    for (int i = 1; i <= n && !counts; ++i) {
                        if (!cell.contains(static_cast<Word>(x ^ coord_bit(n, i)))) continue;
                        for (int j = i + 1; j <= n && !counts; ++j)
                            if (cell.contains(static_cast<Word>(x ^ coord_bit(n, j))) &&
                                cell.contains(static_cast<Word>(x ^ coord_bit(n, i) ^ coord_bit(n, j))))
                                counts = true;
                    }
                }
                if (counts) ++anchors;
            }
            // sum over parents of (n-1)!/aut_parent times |Aut(C)| must equal
            // (#anchoring vertices) * s_pm * (n-1)!
            const std::uint64_t lhs = anchored[ci] * out.aut[ci];
            const std::uint64_t rhs = anchors * static_cast<std::uint64_t>(s.s_pm) * perm_order;
            internal_check(lhs == rhs, "orbit-stabilizer validation failed at the completion step");
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bootstraps.

// All (1,1)-local partitions: the first cell consists of the zero word plus a
// choice of S_{++} unit words other than e_1 (forced to contain the seed's
// weight-<=1 words).
inline ExtensionOutcome bootstrap_11(int n, const QuotientMatrix& s, const FamilySpec& fam) {
    std::vector<Word> forced, optional;
    for (Word w : fam.seed)
        if (weight(w) <= 1 && in_local_domain(w, n, 1, 1)) forced.push_back(w);
    for (int i = 2; i <= n; ++i) {
        const Word e = unit(n, i);
        if (std::find(forced.begin(), forced.end(), e) == forced.end()) optional.push_back(e);
    }
    int want = s.s_pp;
    for (Word w : forced)
        if (weight(w) == 1) --want;
    require(want >= 0, "seed oversubscribes the zero word's first-cell neighbors");

    ExtensionOutcome out;
    Canonicalizer canon;
    std::map<std::vector<Word>, std::pair<std::uint64_t, std::uint64_t>> classes;
    std::vector<int> pick(want);
    const std::function<void(std::size_t, int)> choose = [&](std::size_t start, int got) {
        if (got == want) {
            std::vector<Word> plus{0};
            for (Word w : forced)
                if (weight(w) == 1) plus.push_back(w);
            for (int i = 0; i < want; ++i) plus.push_back(optional[pick[i]]);
            LocalPartition l = make_local(n, 1, 1, plus);
            if (!validate_local(l, s)) return;
            if (!fam.accept_local(l.p_plus, n, 1, 1)) return;
            ++out.raw;
            CanonResult cr = canon.run_colored(std::move(plus), n, fam.coloring, false);
            auto [it, fresh] =
                classes.try_emplace(std::move(cr.image), std::make_pair(cr.aut_order, std::uint64_t(0)));
            internal_check(it->second.first == cr.aut_order, "inconsistent stabilizer order");
            ++it->second.second;
            return;
        }
        for (std::size_t i = start; i < optional.size(); ++i) {
            pick[got] = static_cast<int>(i);
            choose(i + 1, got + 1);
        }
    };
    choose(0, 0);

    const std::uint64_t group = coloring_order(fam.coloring, n);
    std::uint64_t labelled = 0;
    for (auto& [image, info] : classes) {
        const auto [aut, mult] = info;
        internal_check(group % aut == 0 && mult == group / aut,
                       "orbit-stabilizer validation failed at the bootstrap");
        labelled += mult;
        out.classes.push_back(LocalClass{image, aut, true});
    }
    internal_check(labelled == out.raw, "bootstrap double count mismatch");
    return out;
}

// Square-family bootstrap: (2,2)-local partitions containing a square through
// the zero word correspond to (S_{-+}-1)-regular graphs on the remaining
// n - 2 coordinates with a marked vertex for coordinate 1.
struct SquareRootsResult {
    ExtensionOutcome level22;                  // the (2,2)-classes, fix-first group
    std::size_t graph_classes = 0;             // unmarked classes (r-equivalence)
    std::uint64_t labelled_graphs = 0;         // orbit-stabilizer sum over classes
    std::vector<std::size_t> leading_index;    // one (2,2)-class per graph class
};

inline SquareRootsResult enumerate_square_roots(int n, const QuotientMatrix& s, int threads = 1) {
    require(s.s_pp == 2, "the square bootstrap needs quotient row [2, n-2]");
    const int degree = s.s_mp - 1;
    const int order = n - 2;
    const auto graphs = regular_graph_classes(order, degree);

    SquareRootsResult out;
    out.graph_classes = graphs.size();
    for (const auto& g : graphs) out.labelled_graphs += factorial(order) / g.aut_order;

    // Build the marked local partitions: graph vertices occupy coordinates
    // 1..n-2 (the marked vertex at coordinate 1), the square occupies the two
    // last coordinates.
    struct Marked {
        std::vector<Word> image;
        std::uint64_t aut;
        std::size_t graph;
    };
    std::vector<std::vector<Marked>> persets(graphs.size());
    detail::run_parallel(threads, graphs.size(), [&](std::size_t gi) {
        const SmallGraph& g = graphs[gi].representative;
        Canonicalizer canon;
        std::map<std::vector<Word>, std::uint64_t> seen;
        for (int mark = 0; mark < order; ++mark) {
            // coordinate of graph vertex v: 1 for the mark, else 2.. in order
            std::array<int, 16> coord{};
            coord[mark] = 1;
            int next = 2;
            for (int v = 0; v < order; ++v)
                if (v != mark) coord[v] = next++;
            std::vector<Word> plus{0, unit(n, n - 1), unit(n, n),
                                   static_cast<Word>(unit(n, n - 1) | unit(n, n))};
            for (int a = 0; a < order; ++a)
                for (int b = a + 1; b < order; ++b)
                    if (g.edge(a, b))
                        plus.push_back(static_cast<Word>(unit(n, coord[a]) | unit(n, coord[b])));
            CanonResult cr = canon.run_colored(std::move(plus), n, fix_first_coloring(), false);
            seen.try_emplace(std::move(cr.image), cr.aut_order);
        }
        for (auto& [image, aut] : seen) persets[gi].push_back(Marked{image, aut, gi});
    });

    {
        std::map<std::vector<Word>, std::size_t> index;
        for (auto& vec : persets)
            for (Marked& m : vec) {
                auto [it, fresh] = index.try_emplace(m.image, out.level22.classes.size());
                internal_check(fresh, "marked classes collide across graph classes");
                out.level22.classes.push_back(LocalClass{std::move(m.image), m.aut, false});
            }
    }
    std::sort(out.level22.classes.begin(), out.level22.classes.end(),
              [](const LocalClass& a, const LocalClass& b) { return a.rep < b.rep; });

    // labelled (2,2)-local count: squares may sit on any coordinate pair other
    // than coordinate 1, graphs label the remaining coordinates
    out.level22.raw = binomial(n - 1, 2) * out.labelled_graphs;
    std::uint64_t check = 0;
    const std::uint64_t group = factorial(n - 1);
    for (const LocalClass& c : out.level22.classes) {
        internal_check(group % c.aut == 0, "stabilizer must divide the group order");
        check += group / c.aut;
    }
    internal_check(check == out.level22.raw,
                   "orbit-stabilizer validation failed at the square bootstrap");

    // group by unmarked equivalence; the key-least subclass of each group is
    // the provisional leading representative
    {
        Canonicalizer canon;
        std::map<std::vector<Word>, std::size_t> groups;
        for (std::size_t ci = 0; ci < out.level22.classes.size(); ++ci) {
            CanonResult cr =
                canon.run_colored(out.level22.classes[ci].rep, n, trivial_coloring(), false);
            auto [it, fresh] = groups.try_emplace(std::move(cr.image), ci);
            if (fresh) {
                out.level22.classes[ci].leading = true;
                out.leading_index.push_back(ci);
            }
        }
        internal_check(groups.size() == graphs.size(),
                       "unmarked grouping disagrees with the graph classification");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Representative selection at an (r,r) level: group the (r,r)-classes by
// r-equivalence (all coordinate permutations); within each group keep as
// leading the subclass with the fewest inequivalent (r,r+1)-continuations,
// breaking ties by (r+1,r+1) and then (r+1,r+2) counts, finally by least
// canonical representative.

inline void select_representatives(std::vector<LocalClass>& classes, int r,
                                   const QuotientMatrix& s, const FamilySpec& fam, int n,
                                   int threads) {
    Canonicalizer canon;
    std::map<std::vector<Word>, std::vector<std::size_t>> groups;
    for (std::size_t ci = 0; ci < classes.size(); ++ci) {
        CanonResult cr = canon.run_colored(classes[ci].rep, n, trivial_coloring(), false);
        groups[std::move(cr.image)].push_back(ci);
    }
    for (auto& [ignored, members] : groups) {
        for (std::size_t ci : members) classes[ci].leading = false;
        if (members.size() == 1) {
            classes[members[0]].leading = true;
            continue;
        }
        // continuation-count scores, computed lazily level by level
        struct Score {
            std::vector<std::uint64_t> counts;
        };
        std::vector<Score> scores(members.size());
        auto count_level = [&](std::size_t mi, int depth) -> std::uint64_t {
            const LocalClass& base = classes[members[mi]];
            std::vector<LocalClass> cur{base};
            int cr0 = r, cr1 = r;
            for (int d = 0; d <= depth; ++d) {
                const GrowSide grow = cr0 == cr1 ? GrowSide::r1 : GrowSide::r0;
                ExtensionOutcome ext =
                    extend_level(cur, cr0, cr1, grow, s, fam, n, threads);
                cur = std::move(ext.classes);
                (grow == GrowSide::r1 ? cr1 : cr0) += 1;
            }
            return cur.size();
        };
        std::vector<std::size_t> alive(members.size());
        std::iota(alive.begin(), alive.end(), std::size_t(0));
        for (int depth = 0; depth < 3 && alive.size() > 1; ++depth) {
            std::uint64_t best = UINT64_MAX;
            for (std::size_t mi : alive) {
                scores[mi].counts.push_back(count_level(mi, depth));
                best = std::min(best, scores[mi].counts.back());
            }
            std::vector<std::size_t> keep;
            for (std::size_t mi : alive)
                if (scores[mi].counts.back() == best) keep.push_back(mi);
            alive = std::move(keep);
        }
        // residual ties: least canonical representative (members are in rep order)
        classes[members[alive.front()]].leading = true;
    }
}

// ---------------------------------------------------------------------------
// Checkpoint files.

inline void write_level_file(const std::string& path, int n, const QuotientMatrix& s, Family fam,
                             int r0, int r1, const std::vector<LocalClass>& classes) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp);
        require(os.good(), "cannot write checkpoint file");
        os << "n " << n << "\n";
        os << "quotient " << s.s_pp << " " << s.s_pm << " " << s.s_mp << " " << s.s_mm << "\n";
        os << "family " << family_name(fam) << "\n";
        os << "level " << r0 << " " << r1 << "\n";
        os << "classes " << classes.size() << "\n";
        for (std::size_t i = 0; i < classes.size(); ++i) {
            const LocalClass& c = classes[i];
            os << "class " << i + 1 << " aut " << c.aut << " leading " << (c.leading ? 1 : 0)
               << " words " << c.rep.size() << "\n";
            for (Word w : c.rep) os << word_to_string(w, n) << "\n";
        }
        os << "end\n";
    }
    std::filesystem::rename(tmp, path);
}

inline std::optional<std::vector<LocalClass>> read_level_file(const std::string& path, int n,
                                                              const QuotientMatrix& s, Family fam,
                                                              int r0, int r1) {
    std::ifstream in(path);
    if (!in.good()) return std::nullopt;
    std::string tok;
    int fn, fr0, fr1;
    QuotientMatrix fs;
    std::string fname;
    std::size_t count;
    if (!(in >> tok >> fn) || tok != "n") return std::nullopt;
    if (!(in >> tok >> fs.s_pp >> fs.s_pm >> fs.s_mp >> fs.s_mm) || tok != "quotient")
        return std::nullopt;
    if (!(in >> tok >> fname) || tok != "family") return std::nullopt;
    if (!(in >> tok >> fr0 >> fr1) || tok != "level") return std::nullopt;
    if (!(in >> tok >> count) || tok != "classes") return std::nullopt;
    if (fn != n || !(fs == s) || fname != family_name(fam) || fr0 != r0 || fr1 != r1)
        return std::nullopt;
    std::vector<LocalClass> classes(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t idx, words;
        std::uint64_t aut;
        int leading;
        if (!(in >> tok >> idx) || tok != "class") return std::nullopt;
        if (!(in >> tok >> aut) || tok != "aut") return std::nullopt;
        if (!(in >> tok >> leading) || tok != "leading") return std::nullopt;
        if (!(in >> tok >> words) || tok != "words") return std::nullopt;
        classes[i].aut = aut;
        classes[i].leading = leading != 0;
        classes[i].rep.resize(words);
        for (std::size_t wi = 0; wi < words; ++wi) {
            std::string w;
            if (!(in >> w)) return std::nullopt;
            classes[i].rep[wi] = parse_word(w);
        }
    }
    if (!(in >> tok) || tok != "end") return std::nullopt;
    return classes;
}

// ---------------------------------------------------------------------------
// The pipeline.

inline std::vector<std::pair<int, int>> pipeline_schedule(int n, Family fam) {
    const int cap = std::min(4, n);
    std::vector<std::pair<int, int>> levels;
    if (fam == Family::heavy) {
        levels = {{1, 2}, {1, 3}, {2, 3}, {3, 3}, {3, 4}, {4, 4}};
    } else if (fam == Family::square) {
        levels = {{2, 2}, {2, 3}, {3, 3}, {3, 4}, {4, 4}};
    } else {
        levels = {{1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 3}, {3, 4}, {4, 4}};
    }
    std::vector<std::pair<int, int>> cut;
    for (auto [a, b] : levels)
        if (a <= cap && b <= cap) cut.push_back({a, b});
    return cut;
}

inline ClassificationResult run_pipeline(const SearchConfig& cfg) {
    const int n = cfg.n;
    require(n >= 3 && n <= kMaxN, "pipeline supports 3 <= n <= 16");
    require(cfg.s.row_sums_equal(n), "quotient row sums must equal n");
    expected_ones(cfg.s, n);  // rejects infeasible quotients
    const FamilySpec fam = family_spec(cfg.family, n, cfg.s);
    const auto schedule = pipeline_schedule(n, cfg.family);
    const int cap = schedule.back().first;
    require(completion_supported(n, cap, cfg.s), "downset completion unsupported for this quotient");

    const auto log = [&](const std::string& msg) {
        if (cfg.log) cfg.log(msg);
    };
    const auto level_path = [&](int r0, int r1) {
        return cfg.checkpoint_dir + "/level_" + std::to_string(r0) + "_" + std::to_string(r1) +
               ".parts";
    };
    std::ofstream counts;
    if (!cfg.checkpoint_dir.empty()) {
        std::filesystem::create_directories(cfg.checkpoint_dir);
        counts.open(cfg.checkpoint_dir + "/counts.txt", std::ios::app);
    }

    ClassificationResult result;
    std::vector<LocalClass> current;
    int cur0 = 0, cur1 = 0;
    bool have_level = false;

    // resume from the deepest usable checkpoint
    if (!cfg.checkpoint_dir.empty()) {
        for (auto it = schedule.rbegin(); it != schedule.rend(); ++it) {
            auto loaded = read_level_file(level_path(it->first, it->second), n, cfg.s, cfg.family,
                                          it->first, it->second);
            if (loaded) {
                current = std::move(*loaded);
                cur0 = it->first;
                cur1 = it->second;
                have_level = true;
                log("resumed level (" + std::to_string(cur0) + "," + std::to_string(cur1) +
                    ") with " + std::to_string(current.size()) + " classes");
                break;
            }
        }
    }

    const auto count_leading = [](const std::vector<LocalClass>& cs) {
        std::uint64_t l = 0;
        for (const LocalClass& c : cs)
            if (c.leading) ++l;
        return l;
    };

    for (std::size_t li = 0; li < schedule.size(); ++li) {
        const auto [r0, r1] = schedule[li];
        if (have_level && (r0 < cur0 || (r0 == cur0 && r1 <= cur1))) continue;

        const auto t0 = std::chrono::steady_clock::now();
        ExtensionOutcome ext;
        if (!have_level) {
            // bootstrap level
            if (cfg.family == Family::square) {
                SquareRootsResult roots = enumerate_square_roots(n, cfg.s, cfg.threads);
                ext = std::move(roots.level22);
            } else if (cfg.family == Family::heavy) {
                std::vector<Word> seed = fam.seed;
                LocalPartition b = make_local(n, 1, 2, seed);
                require(validate_local(b, cfg.s), "heavy seed is not a valid (1,2)-local partition");
                Canonicalizer canon;
                CanonResult cr = canon.run_colored(seed, n, fam.coloring, false);
                ext.classes.push_back(LocalClass{cr.image, cr.aut_order, true});
                ext.raw = 1;
            } else {
                ext = bootstrap_11(n, cfg.s, fam);
            }
            have_level = true;
        } else {
            const GrowSide grow = r0 > cur0 ? GrowSide::r0 : GrowSide::r1;
            ext = extend_level(current, cur0, cur1, grow, cfg.s, fam, n, cfg.threads,
                               cfg.leading_only);
        }
        current = std::move(ext.classes);
        cur0 = r0;
        cur1 = r1;

        if (r0 == r1 && r0 == 2 && cfg.select_at_r2 && r0 < cap &&
            !(cfg.stop_after && cfg.stop_after->first == r0 && cfg.stop_after->second == r1))
            select_representatives(current, r0, cfg.s, fam, n, cfg.threads);

        const auto t1 = std::chrono::steady_clock::now();
        LevelReport rep;
        rep.r0 = r0;
        rep.r1 = r1;
        rep.raw = ext.raw;
        rep.classes = current.size();
        rep.leading = count_leading(current);
        rep.seconds = std::chrono::duration<double>(t1 - t0).count();
        result.levels.push_back(rep);
        log("level (" + std::to_string(r0) + "," + std::to_string(r1) + "): raw=" +
            std::to_string(rep.raw) + " classes=" + std::to_string(rep.classes) + " leading=" +
            std::to_string(rep.leading) + " validation=ok");
        if (!cfg.checkpoint_dir.empty()) {
            write_level_file(level_path(r0, r1), n, cfg.s, cfg.family, r0, r1, current);
            counts << "level " << r0 << " " << r1 << " raw " << rep.raw << " classes "
                   << rep.classes << " leading " << rep.leading << "\n"
                   << std::flush;
        }
        if (cfg.stop_after && cfg.stop_after->first == r0 && cfg.stop_after->second == r1) {
            result.last_level = std::move(current);
            return result;
        }
    }

    FinalOutcome fin = complete_level(current, cap, cfg.s, fam, n, cfg.threads, cfg.leading_only);
    result.last_level = std::move(current);
    result.final_cells = std::move(fin.cells);
    result.final_raw = fin.raw;
    log("final: raw=" + std::to_string(fin.raw) + " classes=" +
        std::to_string(result.final_cells.size()) + " validation=ok");
    if (!cfg.checkpoint_dir.empty())
        counts << "final raw " << fin.raw << " classes " << result.final_cells.size() << "\n"
               << std::flush;
    return result;
}

}  // namespace eqpart
