// Generation of k-regular graphs on small vertex sets up to isomorphism,
// with automorphism group orders.  Used for the degree-constrained incidence
// structures that seed the square pipeline.

#pragma once

#include <functional>
#include <unordered_map>

#include "bitword.hpp"

namespace eqpart {

// Graph on v vertices as adjacency bitmasks (bit u of adj[v] = edge uv).
struct SmallGraph {
    int order = 0;
    std::array<std::uint16_t, 16> adj{};

    bool edge(int a, int b) const { return (adj[a] >> b) & 1u; }
    void add_edge(int a, int b) {
        adj[a] = static_cast<std::uint16_t>(adj[a] | (1u << b));
        adj[b] = static_cast<std::uint16_t>(adj[b] | (1u << a));
    }
    int degree(int v) const { return std::popcount(static_cast<unsigned>(adj[v])); }
    bool operator==(const SmallGraph&) const = default;
};

// Canonical form of a small graph: the lexicographically least sequence of
// adjacency rows (each new vertex's adjacencies to the already placed ones),
// minimized over all vertex orderings by branch and bound.  The number of
// orderings realizing the minimum is the automorphism group order.
class SmallGraphCanon {
public:
    struct Result {
        std::vector<std::uint16_t> rows;  // row k: adjacency bits to vertices 0..k-1
        std::uint64_t aut_order = 0;
        std::array<std::uint8_t, 16> labeling{};  // canonical position -> input vertex
    };

    Result run(const SmallGraph& g) {
        g_ = &g;
        v_ = g.order;
        best_rows_.assign(v_, std::uint16_t(0xffff));
        have_best_ = false;
        count_ = 0;
        placed_.fill(0);
        dfs(0, 0, Cmp::eq);
        Result r;
        r.rows = best_rows_;
        r.aut_order = count_;
        r.labeling = best_labeling_;
        return r;
    }

private:
    enum class Cmp { lt, eq };

    void dfs(int depth, std::uint16_t used, Cmp c) {
        if (depth == v_) {
            if (c == Cmp::lt || !have_best_) {
                for (int i = 0; i < v_; ++i) best_rows_[i] = rows_[i];
                best_labeling_ = placed_;
                have_best_ = true;
                count_ = 1;
                ++epoch_;
            } else {
                ++count_;
            }
            return;
        }
        // candidate rows: adjacency to the placed prefix
        std::array<std::uint16_t, 16> row{};
        for (int v = 0; v < v_; ++v) {
            if ((used >> v) & 1u) continue;
            std::uint16_t bits = 0;
            for (int i = 0; i < depth; ++i)
                bits = static_cast<std::uint16_t>(bits | (g_->edge(v, placed_[i]) ? 1u << (depth - 1 - i) : 0u));
            row[v] = bits;
        }
        std::array<std::uint8_t, 16> cand{};
        int nc = 0;
        for (int v = 0; v < v_; ++v)
            if (!((used >> v) & 1u)) cand[nc++] = static_cast<std::uint8_t>(v);
        std::stable_sort(cand.begin(), cand.begin() + nc,
                         [&](std::uint8_t a, std::uint8_t b) { return row[a] < row[b]; });

        for (int i = 0; i < nc; ++i) {
            const int v = cand[i];
            Cmp child = c;
            if (c == Cmp::eq) {
                if (row[v] > best_rows_[depth]) break;  // candidates ascend: the rest lose too
                if (row[v] < best_rows_[depth]) child = Cmp::lt;
            }
            placed_[depth] = static_cast<std::uint8_t>(v);
            rows_[depth] = row[v];
            const std::uint64_t e = epoch_;
            dfs(depth + 1, static_cast<std::uint16_t>(used | (1u << v)), child);
            if (c == Cmp::lt && epoch_ != e) c = Cmp::eq;
        }
    }

    const SmallGraph* g_ = nullptr;
    int v_ = 0;
    std::array<std::uint8_t, 16> placed_{};
    std::array<std::uint8_t, 16> best_labeling_{};
    std::array<std::uint16_t, 16> rows_{};
    std::vector<std::uint16_t> best_rows_;
    bool have_best_ = false;
    std::uint64_t count_ = 0;
    std::uint64_t epoch_ = 0;
};

struct RegularGraphClass {
    SmallGraph representative;      // relabeled to canonical order
    std::uint64_t aut_order = 0;
    std::uint64_t labelled_seen = 0;
};

// All k-regular graphs on `order` labelled vertices with the neighborhood of
// vertex 0 fixed to {1..k} (every isomorphism class has such a labeling),
// grouped into isomorphism classes.
inline std::vector<RegularGraphClass> regular_graph_classes(int order, int k) {
    require(order <= 16 && k < order, "graph parameters out of range");
    require((order * k) % 2 == 0, "degree sum must be even");

    std::vector<RegularGraphClass> classes;
    std::unordered_map<std::string, std::size_t> index;
    SmallGraphCanon canon;

    SmallGraph g;
    g.order = order;
    for (int u = 1; u <= k; ++u) g.add_edge(0, u);

    // assign, for v = 1, 2, ..., the edges from v to higher-numbered vertices
    auto emit = [&](const SmallGraph& done) {
        const SmallGraphCanon::Result r = canon.run(done);
        std::string key(reinterpret_cast<const char*>(r.rows.data()), r.rows.size() * 2);
        auto it = index.find(key);
        if (it == index.end()) {
            SmallGraph rep;
            rep.order = order;
            for (int a = 0; a < order; ++a)
                for (int b = a + 1; b < order; ++b)
                    if (done.edge(r.labeling[a], r.labeling[b])) rep.add_edge(a, b);
            index.emplace(std::move(key), classes.size());
            classes.push_back(RegularGraphClass{rep, r.aut_order, 1});
        } else {
            ++classes[it->second].labelled_seen;
        }
    };

    // DFS over vertices 1..order-1
    const std::function<void(int)> go = [&](int v) {
        if (v == order) {
            emit(g);
            return;
        }
        const int deficit = k - g.degree(v);
        if (deficit < 0) return;
        // candidates: vertices above v still below degree k
        std::vector<int> cand;
        for (int u = v + 1; u < order; ++u)
            if (g.degree(u) < k) cand.push_back(u);
        if (static_cast<int>(cand.size()) < deficit) return;
        // choose `deficit` of them
        std::vector<int> pick(deficit);
        const std::function<void(int, int)> choose = [&](int start, int got) {
            if (got == deficit) {
                for (int i = 0; i < deficit; ++i) g.add_edge(v, pick[i]);
                bool ok = true;
                // feasibility: remaining deficits must be coverable
                long long rem = 0;
                for (int u = v + 1; u < order; ++u) {
                    const int d = k - g.degree(u);
                    if (d < 0) ok = false;
                    rem += d;
                }
                if (ok && rem % 2 == 0) go(v + 1);
                for (int i = 0; i < deficit; ++i) {
                    g.adj[v] = static_cast<std::uint16_t>(g.adj[v] & ~(1u << pick[i]));
                    g.adj[pick[i]] = static_cast<std::uint16_t>(g.adj[pick[i]] & ~(1u << v));
                }
                return;
            }
            for (int i = start; i < static_cast<int>(cand.size()); ++i) {
                if (static_cast<int>(cand.size()) - i < deficit - got) break;
                pick[got] = cand[i];
                choose(i + 1, got + 1);
            }
        };
        choose(0, 0);
    };
    go(1);
    return classes;
}

}  // namespace eqpart
