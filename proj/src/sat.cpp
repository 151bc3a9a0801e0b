#include "icc3/sat.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace icc3 {

namespace {

struct SpanKey {
    int lo, hi;
    bool operator<(const SpanKey& o) const { return lo != o.lo ? lo < o.lo : hi < o.hi; }
};

// Exact color-count constraints over known contiguous spans, closed under
// adjacent union and shared-endpoint difference. Every derived triple is
// implied by the original interval constraints, so emitting them preserves
// the model set while giving unit propagation shorter derivations.
class SpanClosure {
public:
    static constexpr size_t kMaxSpans = 60000;

    void seed(const Instance& inst, bool* contradiction) {
        for (const Interval& iv : inst.intervals) add({iv.lo, iv.hi}, iv.req, contradiction);
        size_t head = 0;
        while (head < work_.size() && spans_.size() < kMaxSpans) {
            SpanKey s = work_[head++];
            ReqTriple rs = spans_[s];
            // unions with neighbours
            for (auto it = by_lo_.lower_bound(s.hi + 1);
                 it != by_lo_.end() && it->first == s.hi + 1; ++it)
                for (const SpanKey& t : it->second)
                    add({s.lo, t.hi}, sum(rs, spans_[t]), contradiction);
            for (auto it = by_hi_.lower_bound(s.lo - 1);
                 it != by_hi_.end() && it->first == s.lo - 1; ++it)
                for (const SpanKey& t : it->second)
                    add({t.lo, s.hi}, sum(spans_[t], rs), contradiction);
            // differences with spans sharing an endpoint
            auto lo_bucket = by_lo_.find(s.lo);
            if (lo_bucket != by_lo_.end())
                for (const SpanKey& t : lo_bucket->second) {
                    if (t.hi < s.hi) add({t.hi + 1, s.hi}, diff(rs, spans_[t], contradiction),
                                         contradiction);
                    if (t.hi > s.hi) add({s.hi + 1, t.hi}, diff(spans_[t], rs, contradiction),
                                         contradiction);
                }
            auto hi_bucket = by_hi_.find(s.hi);
            if (hi_bucket != by_hi_.end())
                for (const SpanKey& t : hi_bucket->second) {
                    if (t.lo > s.lo) add({s.lo, t.lo - 1}, diff(rs, spans_[t], contradiction),
                                         contradiction);
                    if (t.lo < s.lo) add({t.lo, s.lo - 1}, diff(spans_[t], rs, contradiction),
                                         contradiction);
                }
        }
    }

    const std::map<SpanKey, ReqTriple>& spans() const { return spans_; }

    const ReqTriple* lookup(int lo, int hi) const {
        auto it = spans_.find({lo, hi});
        return it == spans_.end() ? nullptr : &it->second;
    }

private:
    static ReqTriple sum(const ReqTriple& a, const ReqTriple& b) {
        return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
    }
    static ReqTriple diff(const ReqTriple& a, const ReqTriple& b, bool* contradiction) {
        ReqTriple d{a[0] - b[0], a[1] - b[1], a[2] - b[2]};
        for (int c = 0; c < 3; ++c)
            if (d[c] < 0) {
                *contradiction = true;
                d[c] = 0;
            }
        return d;
    }

    void add(SpanKey s, ReqTriple r, bool* contradiction) {
        if (s.lo > s.hi) return;
        auto it = spans_.find(s);
        if (it != spans_.end()) {
            if (it->second != r) *contradiction = true;
            return;
        }
        if (spans_.size() >= kMaxSpans) return;
        spans_.emplace(s, r);
        by_lo_[s.lo].push_back(s);
        by_hi_[s.hi].push_back(s);
        work_.push_back(s);
    }

    std::map<SpanKey, ReqTriple> spans_;
    std::map<int, std::vector<SpanKey>> by_lo_;
    std::map<int, std::vector<SpanKey>> by_hi_;
    std::vector<SpanKey> work_;
};

class Builder {
public:
    explicit Builder(int n) : enc_() {
        enc_.n = n;
        enc_.cnf.var_count = 3 * n;
    }

    int var(int pos, int c) const { return (pos - 1) * 3 + c; }

    int fresh() {
        enc_.aux_count++;
        return ++enc_.cnf.var_count;
    }

    void clause(std::vector<int> lits) { enc_.cnf.clauses.push_back(std::move(lits)); }

    void contradiction() { clause({}); }

    void one_hot(int n) {
        for (int p = 1; p <= n; ++p) {
            clause({var(p, 1), var(p, 2), var(p, 3)});
            clause({-var(p, 1), -var(p, 2)});
            clause({-var(p, 1), -var(p, 3)});
            clause({-var(p, 2), -var(p, 3)});
        }
    }

    // sequential counter; at_most/at_least selectable so the same chain
    // serves exactly-k (both) and the counting cuts (at_least only)
    void count_constraint(const std::vector<int>& lits, int k, bool at_least, bool at_most) {
        int m = static_cast<int>(lits.size());
        if (k < 0) {
            contradiction();
            return;
        }
        if (k > m) {
            if (at_least) contradiction();
            return;
        }
        if (k == 0) {
            if (at_most)
                for (int l : lits) clause({-l});
            return;  // at_least 0 trivial
        }
        if (k == m) {
            if (at_least)
                for (int l : lits) clause({l});
            return;  // at_most m trivial
        }
        if (k == 1 && at_least && !at_most) {
            clause(lits);
            return;
        }
        int cols = std::min(m, at_most ? k + 1 : k);
        // r[i][j] = among lits[0..i], at least j+1 are true  (0-based grid)
        std::vector<std::vector<int>> r(m);
        for (int i = 0; i < m; ++i) {
            int jmax = std::min(i + 1, cols);
            r[i].resize(jmax);
            for (int j = 0; j < jmax; ++j) r[i][j] = fresh();
        }
        // r[0][0] <-> lits[0]
        clause({-lits[0], r[0][0]});
        clause({lits[0], -r[0][0]});
        for (int i = 1; i < m; ++i) {
            int jmax = static_cast<int>(r[i].size());
            int prev = static_cast<int>(r[i - 1].size());
            for (int j = 0; j < jmax; ++j) {
                // forward: carry and increment
                if (j < prev) clause({-r[i - 1][j], r[i][j]});
                if (j == 0) {
                    clause({-lits[i], r[i][0]});
                    clause({-r[i][0], lits[i], r[i - 1][0]});
                } else if (j - 1 < prev) {
                    clause({-r[i - 1][j - 1], -lits[i], r[i][j]});
                    // reverse
                    std::vector<int> c1{-r[i][j]};
                    if (j < prev) c1.push_back(r[i - 1][j]);
                    c1.push_back(r[i - 1][j - 1]);
                    clause(c1);
                    std::vector<int> c2{-r[i][j]};
                    if (j < prev) c2.push_back(r[i - 1][j]);
                    c2.push_back(lits[i]);
                    clause(c2);
                }
            }
        }
        if (at_least) clause({r[m - 1][k - 1]});
        if (at_most && static_cast<int>(r[m - 1].size()) >= k + 1) clause({-r[m - 1][k]});
    }

    // exact triple over a node set; enforce the two lowest-count colors
    void exact_triple(const std::vector<int>& positions, const ReqTriple& req) {
        int total = req[0] + req[1] + req[2];
        if (total != static_cast<int>(positions.size())) {
            contradiction();
            return;
        }
        std::array<int, 3> order{0, 1, 2};
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return req[a] != req[b] ? req[a] < req[b] : a < b;
        });
        for (int idx = 0; idx < 2; ++idx) {
            int c = order[idx];
            std::vector<int> lits;
            lits.reserve(positions.size());
            for (int p : positions) lits.push_back(var(p, c + 1));
            count_constraint(lits, req[c], true, true);
        }
    }

    void at_least_color(const std::vector<int>& positions, int color_idx, int k) {
        std::vector<int> lits;
        lits.reserve(positions.size());
        for (int p : positions) lits.push_back(var(p, color_idx + 1));
        count_constraint(lits, k, true, false);
    }

    CnfEncoding take() { return std::move(enc_); }

private:
    CnfEncoding enc_;
};

std::vector<int> span_positions(int lo, int hi) {
    std::vector<int> v;
    v.reserve(hi - lo + 1);
    for (int p = lo; p <= hi; ++p) v.push_back(p);
    return v;
}

}  // namespace

CnfEncoding encode_to_cnf(const Instance& inst) {
    validate_structure(inst);
    {
        auto bad = check_consistency(inst);
        if (!bad.empty()) throw InputError("inconsistent instance cannot be encoded");
    }
    Builder b(inst.n);
    b.one_hot(inst.n);

    bool contradiction = false;
    SpanClosure closure;
    closure.seed(inst, &contradiction);

    std::set<std::pair<std::vector<int>, ReqTriple>> emitted;
    auto emit_exact = [&](const std::vector<int>& positions, const ReqTriple& req) {
        if (positions.empty()) return;
        if (!emitted.insert({positions, req}).second) return;
        b.exact_triple(positions, req);
    };

    for (const Interval& iv : inst.intervals) emit_exact(span_positions(iv.lo, iv.hi), iv.req);

    // short derived spans: strong local units and pairs
    for (const auto& [s, r] : closure.spans())
        if (s.hi - s.lo <= 1) emit_exact(span_positions(s.lo, s.hi), r);

    // two-piece differences A \ B for B strictly inside A, pieces totalling <= 4
    for (const auto& [a, ra] : closure.spans()) {
        for (int llen = 1; llen <= 3; ++llen) {
            for (int rlen = 1; rlen + llen <= 4; ++rlen) {
                int blo = a.lo + llen, bhi = a.hi - rlen;
                if (blo > bhi) continue;
                const ReqTriple* rb = closure.lookup(blo, bhi);
                if (!rb) continue;
                ReqTriple d{ra[0] - (*rb)[0], ra[1] - (*rb)[1], ra[2] - (*rb)[2]};
                if (d[0] < 0 || d[1] < 0 || d[2] < 0) {
                    contradiction = true;
                    continue;
                }
                std::vector<int> pos;
                for (int p = a.lo; p < blo; ++p) pos.push_back(p);
                for (int p = bhi + 1; p <= a.hi; ++p) pos.push_back(p);
                emit_exact(pos, d);
            }
        }
    }

    // counting cuts: for disjoint intervals A, B and any interval C,
    // count_c((A u B) \ C) >= r_c(A) + r_c(B) - r_c(C)
    {
        const auto& ivs = inst.intervals;
        int m = static_cast<int>(ivs.size());
        std::map<int, std::vector<int>> by_lo, by_hi;
        for (int i = 0; i < m; ++i) {
            by_lo[ivs[i].lo].push_back(i);
            by_hi[ivs[i].hi].push_back(i);
        }
        std::set<std::tuple<std::vector<int>, int, int>> cut_seen;
        for (int ci = 0; ci < m; ++ci) {
            const Interval& C = ivs[ci];
            for (int dlo = 0; dlo <= 6; ++dlo) {
                auto ita = by_lo.find(C.lo - dlo);
                if (ita == by_lo.end()) continue;
                for (int ai : ita->second) {
                    const Interval& A = ivs[ai];
                    if (A.hi > C.hi || A.hi < C.lo - 1) continue;
                    for (int dhi = 0; dhi <= 6; ++dhi) {
                        auto itb = by_hi.find(C.hi + dhi);
                        if (itb == by_hi.end()) continue;
                        for (int bi : itb->second) {
                            const Interval& B = ivs[bi];
                            if (B.lo <= A.hi || B.lo < C.lo || B.lo > C.hi + 1) continue;
                            std::vector<int> t;
                            for (int p = A.lo; p <= std::min(A.hi, C.lo - 1); ++p) t.push_back(p);
                            for (int p = std::max(B.lo, C.hi + 1); p <= B.hi; ++p) t.push_back(p);
                            if (t.size() > 6) continue;
                            for (int c = 0; c < 3; ++c) {
                                int bound = A.req[c] + B.req[c] - C.req[c];
                                if (bound < 1) continue;
                                if (t.empty()) {
                                    contradiction = true;
                                    continue;
                                }
                                if (!cut_seen.insert({t, c, bound}).second) continue;
                                b.at_least_color(t, c, bound);
                            }
                        }
                    }
                }
            }
        }
    }

    if (contradiction) b.contradiction();
    return b.take();
}

// ---------------------------------------------------------------------------
// DPLL

namespace {

struct DpllState {
    int nvars;
    std::vector<int> lit_flat;       // all clause literals
    std::vector<uint32_t> cl_off;    // clause -> range in lit_flat
    std::vector<uint16_t> n_true, n_false;
    std::vector<uint32_t> occ_flat;  // literal index -> clauses
    std::vector<uint32_t> occ_off;
    std::vector<int8_t> val;         // 0 unknown, 1 true, -1 false
    std::vector<int> trail;          // assigned literals in order
    struct Decision {
        uint32_t trail_pos;
        int var;
        bool flipped;
    };
    std::vector<Decision> decisions;
    size_t prop_head = 0;
    uint64_t stats_nodes = 0;
    uint64_t stats_props = 0;

    static uint32_t lit_idx(int lit) {
        return 2u * static_cast<uint32_t>(std::abs(lit) - 1) + (lit < 0 ? 1u : 0u);
    }

    bool assign(int lit) {  // returns false on immediate conflict with current value
        int v = std::abs(lit);
        int8_t want = lit > 0 ? 1 : -1;
        if (val[v - 1] != 0) return val[v - 1] == want;
        val[v - 1] = want;
        trail.push_back(lit);
        return true;
    }
};

}  // namespace

SatResult solve_dpll(const GeneralCnf& cnf, uint64_t budget) {
    SatResult res;
    int nvars = cnf.var_count;
    size_t ncl = cnf.clauses.size();

    DpllState st;
    st.nvars = nvars;
    st.cl_off.resize(ncl + 1, 0);
    size_t total = 0;
    for (size_t i = 0; i < ncl; ++i) total += cnf.clauses[i].size();
    st.lit_flat.reserve(total);
    for (size_t i = 0; i < ncl; ++i) {
        st.cl_off[i] = static_cast<uint32_t>(st.lit_flat.size());
        for (int l : cnf.clauses[i]) {
            if (l == 0 || std::abs(l) > nvars) throw InputError("bad literal in CNF");
            st.lit_flat.push_back(l);
        }
    }
    st.cl_off[ncl] = static_cast<uint32_t>(st.lit_flat.size());
    st.n_true.assign(ncl, 0);
    st.n_false.assign(ncl, 0);
    st.val.assign(nvars, 0);

    // occurrence lists
    std::vector<uint32_t> counts(2 * static_cast<size_t>(nvars) + 1, 0);
    for (int l : st.lit_flat) counts[DpllState::lit_idx(l)]++;
    st.occ_off.resize(2 * static_cast<size_t>(nvars) + 1, 0);
    for (size_t i = 0; i < 2 * static_cast<size_t>(nvars); ++i)
        st.occ_off[i + 1] = st.occ_off[i] + counts[i];
    st.occ_flat.resize(st.lit_flat.size());
    std::vector<uint32_t> fill(2 * static_cast<size_t>(nvars), 0);
    for (size_t i = 0; i < ncl; ++i)
        for (uint32_t k = st.cl_off[i]; k < st.cl_off[i + 1]; ++k) {
            uint32_t li = DpllState::lit_idx(st.lit_flat[k]);
            st.occ_flat[st.occ_off[li] + fill[li]++] = static_cast<uint32_t>(i);
        }

    // empty clause => UNSAT immediately
    for (size_t i = 0; i < ncl; ++i)
        if (st.cl_off[i] == st.cl_off[i + 1]) {
            res.status = SatStatus::Unsat;
            return res;
        }

    auto clause_len = [&](uint32_t ci) { return st.cl_off[ci + 1] - st.cl_off[ci]; };

    // Propagate everything on the trail from prop_head; returns false on
    // conflict. Counter updates for one trail literal always run to
    // completion so that undo_to can reverse exactly the processed prefix.
    auto propagate = [&]() -> bool {
        while (st.prop_head < st.trail.size()) {
            int lit = st.trail[st.prop_head++];
            uint32_t pos_idx = DpllState::lit_idx(lit);
            uint32_t neg_idx = DpllState::lit_idx(-lit);
            for (uint32_t k = st.occ_off[pos_idx]; k < st.occ_off[pos_idx + 1]; ++k)
                st.n_true[st.occ_flat[k]]++;
            bool conflict = false;
            for (uint32_t k = st.occ_off[neg_idx]; k < st.occ_off[neg_idx + 1]; ++k) {
                uint32_t ci = st.occ_flat[k];
                st.n_false[ci]++;
                if (conflict || st.n_true[ci] > 0) continue;
                uint32_t len = clause_len(ci);
                if (st.n_false[ci] == len) {
                    conflict = true;
                    continue;
                }
                if (st.n_false[ci] + 1u == len) {
                    for (uint32_t j = st.cl_off[ci]; j < st.cl_off[ci + 1]; ++j) {
                        int l2 = st.lit_flat[j];
                        if (st.val[std::abs(l2) - 1] == 0) {
                            if (!st.assign(l2)) conflict = true;
                            st.stats_props++;
                            break;
                        }
                    }
                }
            }
            if (conflict) return false;
        }
        return true;
    };

    // undo trail down to size `keep`; counters are reversed only for the
    // prefix that propagate() actually processed
    auto undo_to = [&](uint32_t keep) {
        while (st.trail.size() > keep) {
            size_t idx = st.trail.size() - 1;
            int lit = st.trail.back();
            st.trail.pop_back();
            st.val[std::abs(lit) - 1] = 0;
            if (idx >= st.prop_head) continue;
            uint32_t pos_idx = DpllState::lit_idx(lit);
            uint32_t neg_idx = DpllState::lit_idx(-lit);
            for (uint32_t k = st.occ_off[pos_idx]; k < st.occ_off[pos_idx + 1]; ++k)
                st.n_true[st.occ_flat[k]]--;
            for (uint32_t k = st.occ_off[neg_idx]; k < st.occ_off[neg_idx + 1]; ++k)
                st.n_false[st.occ_flat[k]]--;
        }
        st.prop_head = std::min(st.prop_head, st.trail.size());
    };

    // seed with unit clauses
    for (size_t i = 0; i < ncl; ++i)
        if (clause_len(static_cast<uint32_t>(i)) == 1) {
            if (!st.assign(st.lit_flat[st.cl_off[i]])) {
                res.status = SatStatus::Unsat;
                return res;
            }
        }

    int next_var = 1;
    auto backtrack = [&]() -> bool {  // false when no decision left to flip
        while (!st.decisions.empty()) {
            auto& d = st.decisions.back();
            undo_to(d.trail_pos);
            if (!d.flipped) {
                d.flipped = true;
                st.assign(d.var);  // false tried first; flip to true
                next_var = d.var + 1;
                return true;
            }
            next_var = d.var;
            st.decisions.pop_back();
        }
        return false;
    };

    for (;;) {
        if (!propagate()) {
            if (!backtrack()) {
                res.status = SatStatus::Unsat;
                res.stats.nodes = st.stats_nodes;
                res.stats.propagations = st.stats_props;
                return res;
            }
            continue;
        }
        while (next_var <= nvars && st.val[next_var - 1] != 0) ++next_var;
        if (next_var > nvars) {
            // everything assigned and no conflict
            res.status = SatStatus::Sat;
            res.model.resize(nvars);
            for (int v = 1; v <= nvars; ++v) res.model[v - 1] = st.val[v - 1] == 1 ? 1 : 0;
            res.stats.nodes = st.stats_nodes;
            res.stats.propagations = st.stats_props;
            return res;
        }
        st.stats_nodes++;
        if (st.stats_nodes > budget) {
            res.status = SatStatus::Unknown;
            res.stats.nodes = st.stats_nodes;
            res.stats.propagations = st.stats_props;
            res.stats.budget_used = st.stats_nodes;
            return res;
        }
        st.decisions.push_back({static_cast<uint32_t>(st.trail.size()), next_var, false});
        st.assign(-next_var);  // false first
    }
}

Coloring decode_model(const CnfEncoding& enc, const std::vector<uint8_t>& model) {
    if (static_cast<int>(model.size()) < 3 * enc.n)
        throw InternalError("model too short for encoding");
    Coloring col(enc.n, Color::Red);
    for (int p = 1; p <= enc.n; ++p) {
        int found = 0, which = 0;
        for (int c = 1; c <= 3; ++c)
            if (model[enc.var_of(p, static_cast<Color>(c)) - 1]) {
                ++found;
                which = c;
            }
        if (found != 1) throw InternalError("one-hot violation in model at position " +
                                            std::to_string(p));
        col[p - 1] = static_cast<Color>(which);
    }
    return col;
}

}  // namespace icc3
