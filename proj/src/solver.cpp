#include "icc3/solver.hpp"

#include <algorithm>
#include <string>

namespace icc3 {

namespace {

std::string join_ids(const std::vector<int>& ids) {
    std::string s;
    for (int id : ids) {
        if (!s.empty()) s += " ";
        s += std::to_string(id);
    }
    return s;
}

// Shared DFS core. Positions are assigned left to right; an assignment is
// pruned as soon as any covering interval's count for that color would exceed
// its requirement. For consistent intervals this check is complete: deficits
// sum to exactly the remaining length, so a leaf reached without overflow
// satisfies every interval.
class Engine {
public:
    explicit Engine(const Instance& inst) : n_(inst.n) {
        validate_structure(inst);
        auto bad = check_consistency(inst);
        if (!bad.empty())
            throw InputError("inconsistent intervals: " + join_ids(bad));
        m_ = static_cast<int>(inst.intervals.size());
        req_.resize(m_);
        used_.assign(m_, {0, 0, 0});
        for (int i = 0; i < m_; ++i) req_[i] = inst.intervals[i].req;

        std::vector<int> counts(n_ + 1, 0);
        for (const Interval& iv : inst.intervals)
            for (int p = iv.lo; p <= iv.hi; ++p) counts[p]++;
        cover_off_.assign(n_ + 2, 0);
        for (int p = 1; p <= n_; ++p) cover_off_[p + 1] = cover_off_[p] + counts[p];
        cover_.resize(cover_off_[n_ + 1]);
        std::vector<int> fill(n_ + 1, 0);
        for (int i = 0; i < m_; ++i)
            for (int p = inst.intervals[i].lo; p <= inst.intervals[i].hi; ++p)
                cover_[cover_off_[p] + fill[p]++] = i;
    }

    // fn(coloring) -> keep going?  Returns false when the budget ran out.
    template <typename Fn>
    bool run(uint64_t budget, SolveStats& stats, Fn&& fn) {
        Coloring col(n_, Color::Red);
        if (n_ == 0) {
            fn(static_cast<const Coloring&>(col));
            return true;
        }
        std::vector<uint8_t> mask(n_, 0);  // allowed-color bits, set on first entry
        std::vector<int8_t> cur(n_, 0);    // color currently placed, 0 = none
        int pos = 0;
        bool fresh = true;
        for (;;) {
            if (fresh) {
                uint8_t m = 0;
                int cnt = 0;
                for (int c = 1; c <= 3; ++c)
                    if (fits(pos, c)) {
                        m |= static_cast<uint8_t>(1u << c);
                        ++cnt;
                    }
                mask[pos] = m;
                if (cnt >= 2) {
                    stats.nodes++;
                    if (stats.nodes > budget) return false;
                } else if (cnt == 1) {
                    stats.propagations++;
                }
            }
            int c = cur[pos] + 1;
            while (c <= 3 && !(mask[pos] & (1u << c))) ++c;
            if (c > 3) {
                cur[pos] = 0;
                if (pos == 0) return true;
                --pos;
                unplace(pos, cur[pos]);
                fresh = false;
                continue;
            }
            place(pos, c);
            cur[pos] = static_cast<int8_t>(c);
            col[pos] = static_cast<Color>(c);
            if (pos + 1 == n_) {
                if (!fn(static_cast<const Coloring&>(col))) return true;
                unplace(pos, c);
                cur[pos] = static_cast<int8_t>(c);  // resume scan after c
                fresh = false;
                // stay at the same position, try next color
                continue;
            }
            ++pos;
            fresh = true;
        }
    }

private:
    bool fits(int pos, int c) const {
        for (int k = cover_off_[pos + 1]; k < cover_off_[pos + 2]; ++k) {
            int iv = cover_[k];
            if (used_[iv][c - 1] >= req_[iv][c - 1]) return false;
        }
        return true;
    }
    void place(int pos, int c) {
        for (int k = cover_off_[pos + 1]; k < cover_off_[pos + 2]; ++k)
            used_[cover_[k]][c - 1]++;
    }
    void unplace(int pos, int c) {
        for (int k = cover_off_[pos + 1]; k < cover_off_[pos + 2]; ++k)
            used_[cover_[k]][c - 1]--;
    }

    int n_ = 0;
    int m_ = 0;
    std::vector<ReqTriple> req_;
    std::vector<ReqTriple> used_;
    std::vector<int> cover_off_;  // 1-based positions; [p+1, p+2)
    std::vector<int> cover_;
};

}  // namespace

SolveOutcome solve_backtracking(const Instance& inst, uint64_t budget) {
    SolveOutcome out;
    Coloring witness;
    bool found = false;
    Engine eng(inst);
    bool completed = eng.run(budget, out.stats, [&](const Coloring& col) {
        witness = col;
        found = true;
        return false;
    });
    out.stats.budget_used = out.stats.nodes;
    if (found) {
        if (!verify(inst, witness).violated.empty())
            throw InternalError("solver produced a non-verifying witness");
        out.status = SolveStatus::Feasible;
        out.witness = std::move(witness);
    } else if (completed) {
        out.status = SolveStatus::Infeasible;
    } else {
        out.status = SolveStatus::Unknown;
    }
    return out;
}

std::vector<Coloring> enumerate_colorings(const Instance& inst, size_t limit) {
    std::vector<Coloring> out;
    Engine eng(inst);
    SolveStats stats;
    eng.run(kNoBudget, stats, [&](const Coloring& col) {
        out.push_back(col);
        return out.size() <= limit;
    });
    if (out.size() > limit)
        throw CapacityError("more than " + std::to_string(limit) + " feasible colorings");
    return out;
}

uint64_t for_each_feasible(const Instance& inst, const std::function<bool(const Coloring&)>& fn) {
    Engine eng(inst);
    SolveStats stats;
    uint64_t count = 0;
    eng.run(kNoBudget, stats, [&](const Coloring& col) {
        ++count;
        return fn(col);
    });
    return count;
}

std::pair<Coloring, int> max_satisfy_brute(const Instance& inst) {
    if (inst.n > 15) throw CapacityError("max_satisfy_brute capacity is n <= 15");
    validate_structure(inst);
    int n = inst.n;
    int m = static_cast<int>(inst.intervals.size());
    std::vector<ReqTriple> used(m, {0, 0, 0});
    Coloring col(n, Color::Red), best(n, Color::Red);
    int best_count = -1;

    // full 3^n scan with incremental per-interval counts
    std::vector<std::vector<int>> cover(n + 1);
    for (int i = 0; i < m; ++i)
        for (int p = inst.intervals[i].lo; p <= inst.intervals[i].hi; ++p) cover[p].push_back(i);

    auto leaf = [&]() {
        int sat = 0;
        for (int i = 0; i < m; ++i)
            if (used[i] == inst.intervals[i].req) ++sat;
        if (sat > best_count) {
            best_count = sat;
            best = col;
        }
    };
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos > n) {
            leaf();
            return;
        }
        for (int c = 1; c <= 3; ++c) {
            col[pos - 1] = static_cast<Color>(c);
            for (int iv : cover[pos]) used[iv][c - 1]++;
            self(self, pos + 1);
            for (int iv : cover[pos]) used[iv][c - 1]--;
        }
    };
    rec(rec, 1);
    return {best, best_count};
}

}  // namespace icc3
