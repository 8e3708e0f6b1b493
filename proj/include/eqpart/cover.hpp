// Exact multiple cover: all row subsets of a 0/1 matrix whose column sums
// equal a target multiplicity vector.  Depth-first branch and prune in the
// dancing-links style generalized to multiplicities: pick the column with the
// least supply slack, branch on including/excluding its first live row,
// remove rows touching saturated columns.  Deterministic order throughout.

#pragma once

#include <functional>
#include <istream>
#include <ostream>

#include "bitword.hpp"

namespace eqpart {

struct CoverInstance {
    int num_cols = 0;
    std::vector<std::uint32_t> targets;             // per column
    std::vector<std::vector<std::uint16_t>> rows;   // sorted column indices per row
    std::vector<std::uint32_t> row_labels;          // opaque identifiers
    bool infeasible = false;                        // forced empty (e.g. negative target)

    void add_row(std::vector<std::uint16_t> cols, std::uint32_t label = 0) {
        std::sort(cols.begin(), cols.end());
        rows.push_back(std::move(cols));
        row_labels.push_back(label);
    }
};

using CoverSolution = std::vector<std::uint16_t>;  // chosen row indices, ascending

class CoverSolver {
public:
    explicit CoverSolver(const CoverInstance& inst) : inst_(inst) {}

    // Invokes fn for every solution, each exactly once, deterministic order.
    void for_each_solution(const std::function<void(const CoverSolution&)>& fn) {
        if (inst_.infeasible) return;
        const int m = inst_.num_cols;
        const std::size_t k = inst_.rows.size();
        demand_.assign(m, 0);
        for (int c = 0; c < m; ++c) demand_[c] = inst_.targets[c];
        supply_.assign(m, 0);
        col_rows_.assign(m, {});
        alive_.assign(k, true);
        zero_rows_.clear();
        chosen_.clear();
        trail_.clear();
        for (std::size_t r = 0; r < k; ++r) {
            if (inst_.rows[r].empty()) {
                zero_rows_.push_back(static_cast<std::uint16_t>(r));
                alive_[r] = false;
                continue;
            }
            for (std::uint16_t c : inst_.rows[r]) {
                require(c < m, "row column index out of range");
                ++supply_[c];
                col_rows_[c].push_back(static_cast<std::uint16_t>(r));
            }
        }
        fn_ = &fn;
        for (int c = 0; c < m; ++c)
            if (demand_[c] == 0) purge_column(static_cast<std::uint16_t>(c));
        dfs();
        fn_ = nullptr;
    }

    static std::vector<CoverSolution> solve(const CoverInstance& inst) {
        std::vector<CoverSolution> out;
        CoverSolver s(inst);
        s.for_each_solution([&](const CoverSolution& sol) { out.push_back(sol); });
        return out;
    }

    static std::uint64_t count_solutions(const CoverInstance& inst) {
        std::uint64_t n = 0;
        CoverSolver s(inst);
        s.for_each_solution([&](const CoverSolution&) { ++n; });
        return n;
    }

private:
    void emit() {
        CoverSolution sol = chosen_;
        std::sort(sol.begin(), sol.end());
        if (zero_rows_.empty()) {
            (*fn_)(sol);
            return;
        }
        // rows with empty support join solutions freely; enumerate subsets
        const std::size_t z = zero_rows_.size();
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << z); ++mask) {
            CoverSolution full = sol;
            for (std::size_t i = 0; i < z; ++i)
                if ((mask >> i) & 1) full.push_back(zero_rows_[i]);
            std::sort(full.begin(), full.end());
            (*fn_)(full);
        }
    }

    void remove_row(std::uint16_t r) {
        alive_[r] = false;
        for (std::uint16_t c : inst_.rows[r]) --supply_[c];
        trail_.push_back(r);
    }

    void undo_to(std::size_t mark) {
        while (trail_.size() > mark) {
            const std::uint16_t r = trail_.back();
            trail_.pop_back();
            alive_[r] = true;
            for (std::uint16_t c : inst_.rows[r]) ++supply_[c];
        }
    }

    // Removes every live row covering column c.  Returns false on overflow
    // (cannot happen: callers only saturate columns whose demand reached 0).
    void purge_column(std::uint16_t c) {
        for (std::uint16_t r : col_rows_[c])
            if (alive_[r]) remove_row(r);
    }

    // On success the row is in chosen_ and saturated columns are purged;
    // returns false without touching state if some column would overflow.
    bool include_row(std::uint16_t r, std::size_t& mark) {
        for (std::uint16_t c : inst_.rows[r])
            if (demand_[c] == 0) return false;
        mark = trail_.size();
        remove_row(r);
        for (std::uint16_t c : inst_.rows[r]) --demand_[c];
        for (std::uint16_t c : inst_.rows[r])
            if (demand_[c] == 0) purge_column(c);
        chosen_.push_back(r);
        return true;
    }

    void dfs() {
        // column with positive demand and minimal slack
        int best_col = -1;
        std::int64_t best_slack = 0;
        for (int c = 0; c < inst_.num_cols; ++c) {
            if (demand_[c] == 0) continue;
            const std::int64_t slack =
                static_cast<std::int64_t>(supply_[c]) - static_cast<std::int64_t>(demand_[c]);
            if (slack < 0) return;  // cannot be satisfied
            if (best_col < 0 || slack < best_slack) {
                best_col = c;
                best_slack = slack;
            }
        }
        if (best_col < 0) {
            emit();
            return;
        }
        std::uint16_t row = 0;
        bool found = false;
        for (std::uint16_t r : col_rows_[best_col])
            if (alive_[r]) {
                row = r;
                found = true;
                break;
            }
        internal_check(found, "column with demand has no live rows after slack check");

        // branch A: include the row
        std::size_t mark = 0;
        if (include_row(row, mark)) {
            dfs();
            chosen_.pop_back();
            for (std::uint16_t c : inst_.rows[row]) ++demand_[c];
            undo_to(mark);
        }

        // branch B: exclude the row
        const std::size_t mark2 = trail_.size();
        remove_row(row);
        dfs();
        undo_to(mark2);
    }

    const CoverInstance& inst_;
    std::vector<std::uint32_t> demand_;
    std::vector<std::uint32_t> supply_;
    std::vector<std::vector<std::uint16_t>> col_rows_;
    std::vector<bool> alive_;
    std::vector<std::uint16_t> zero_rows_;
    CoverSolution chosen_;
    std::vector<std::uint16_t> trail_;
    const std::function<void(const CoverSolution&)>* fn_ = nullptr;
};

// Text instance format: "m k" on the first line, the m targets on the second,
// then k rows as 0/1 strings of length m.
inline CoverInstance read_cover_instance(std::istream& in) {
    CoverInstance inst;
    std::size_t k = 0;
    require(bool(in >> inst.num_cols >> k), "malformed cover header");
    inst.targets.resize(inst.num_cols);
    for (int c = 0; c < inst.num_cols; ++c)
        require(bool(in >> inst.targets[c]), "malformed cover targets");
    for (std::size_t r = 0; r < k; ++r) {
        std::string s;
        require(bool(in >> s), "missing cover row");
        require(static_cast<int>(s.size()) == inst.num_cols, "cover row has wrong length");
        std::vector<std::uint16_t> cols;
        for (int c = 0; c < inst.num_cols; ++c) {
            require(s[c] == '0' || s[c] == '1', "cover row must be 0/1");
            if (s[c] == '1') cols.push_back(static_cast<std::uint16_t>(c));
        }
        inst.add_row(std::move(cols), static_cast<std::uint32_t>(r));
    }
    return inst;
}

inline void write_cover_instance(std::ostream& os, const CoverInstance& inst) {
    os << inst.num_cols << " " << inst.rows.size() << "\n";
    for (int c = 0; c < inst.num_cols; ++c) os << inst.targets[c] << (c + 1 < inst.num_cols ? ' ' : '\n');
    for (const auto& row : inst.rows) {
        std::string s(inst.num_cols, '0');
        for (std::uint16_t c : row) s[c] = '1';
        os << s << "\n";
    }
}

}  // namespace eqpart
