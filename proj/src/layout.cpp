#include "icc3/layout.hpp"

#include <algorithm>
#include <string>

#include "icc3/solver.hpp"

namespace icc3 {

int GadgetLayout::t_of_slot(int slot) const {
    switch (slot) {
        case 1: return slot1_off - 1 + lit_t;
        case 2: return core_off - 1 + core_t;
        case 3: return slot3_off - 1 + mir_t;
    }
    throw InputError("slot out of range");
}
int GadgetLayout::f_of_slot(int slot) const {
    switch (slot) {
        case 1: return slot1_off - 1 + lit_f;
        case 2: return core_off - 1 + core_f;
        case 3: return slot3_off - 1 + mir_f;
    }
    throw InputError("slot out of range");
}
int GadgetLayout::a_of_slot(int slot) const {
    switch (slot) {
        case 1: return slot1_off - 1 + lit_a;
        case 2: return core_off - 1 + core_al;
        case 3: return slot3_off - 1 + mir_a;
    }
    throw InputError("slot out of range");
}

std::vector<Interval> instantiate_clause_intervals(const GadgetLayout& L, bool neg1, bool neg2,
                                                   bool neg3, int origin) {
    std::vector<Interval> out;
    out.reserve(L.per_clause_intervals());
    auto push = [&](int lo, int hi, ReqTriple req) {
        Interval iv;
        iv.lo = origin + lo;
        iv.hi = origin + hi;
        iv.req = req;
        out.push_back(iv);
    };
    // slot 1: base template, swap when the literal is negated
    for (const TemplateInterval& ti : L.lit)
        push(L.slot1_off - 1 + ti.lo, L.slot1_off - 1 + ti.hi, neg1 ? swap_bw(ti.req) : ti.req);
    // slot 2 middle block: canonical polarity is negated, swap when positive
    for (const TemplateInterval& ti : L.core)
        push(L.core_off - 1 + ti.lo, L.core_off - 1 + ti.hi, neg2 ? ti.req : swap_bw(ti.req));
    // slot 3: mirrored template, canonical negated, swap when positive
    for (const TemplateInterval& ti : L.mir)
        push(L.slot3_off - 1 + ti.lo, L.slot3_off - 1 + ti.hi, neg3 ? ti.req : swap_bw(ti.req));
    // clause-linking intervals are polarity-independent
    for (const TemplateInterval& ti : L.clause_intervals) push(ti.lo, ti.hi, ti.req);
    return out;
}

namespace {

using Block8 = std::array<Color, 8>;

Instance block_instance(const std::array<TemplateInterval, 6>& tis) {
    Instance inst;
    inst.n = 8;
    for (int i = 0; i < 6; ++i) {
        Interval iv;
        iv.id = i + 1;
        iv.lo = tis[i].lo;
        iv.hi = tis[i].hi;
        iv.req = tis[i].req;
        inst.intervals.push_back(iv);
    }
    return inst;
}

bool tileable(int lo, int hi, const std::array<TemplateInterval, 6>& tis) {
    if (lo > hi) return true;
    for (const TemplateInterval& ti : tis)
        if (ti.lo == lo && ti.hi <= hi && tileable(ti.hi + 1, hi, tis)) return true;
    return false;
}

Block8 mirror_block(const Block8& b) {
    Block8 out;
    for (int i = 0; i < 8; ++i) out[i] = b[7 - i];
    return out;
}

bool build_core(GadgetLayout& L, std::string& fail) {
    // middle block: mirrored template at 1..8, t2 = 9, base template at 10..17, f2 = 18
    for (int i = 0; i < 6; ++i) L.core[i] = L.mir[i];
    for (int i = 0; i < 6; ++i)
        L.core[6 + i] = TemplateInterval{L.lit[i].lo + 9, L.lit[i].hi + 9, L.lit[i].req};
    L.core_t = 9;
    L.core_f = 18;
    L.core_al = L.mir_a;
    L.core_ar = 9 + L.lit_a;
    L.core[12] = TemplateInterval{L.core_t - 1, L.core_t + 1, {0, 2, 1}};
    L.core[13] = TemplateInterval{1, 18, {4, 7, 7}};

    L.core_outcomes.clear();
    for (const auto& oL : L.mir_outcomes)
        for (const auto& oR : L.lit_outcomes)
            for (int tb = 0; tb < 2; ++tb) {
                Color t2 = tb == 0 ? Color::Black : Color::White;
                Color f2 = tb == 0 ? Color::White : Color::Black;
                GadgetLayout::CoreOutcome co;
                for (int i = 0; i < 8; ++i) co.col[i] = oL[i];
                co.col[8] = t2;
                for (int i = 0; i < 8; ++i) co.col[9 + i] = oR[i];
                co.col[17] = f2;
                // the two cross constraints
                ReqTriple c13{0, 0, 0}, c14{0, 0, 0};
                for (int p = L.core[12].lo; p <= L.core[12].hi; ++p)
                    c13[code(co.col[p - 1]) - 1]++;
                for (int p = 1; p <= 18; ++p) c14[code(co.col[p - 1]) - 1]++;
                if (c13 != L.core[12].req || c14 != L.core[13].req) continue;
                co.al_red = co.col[L.core_al - 1] == Color::Red;
                co.ar_red = co.col[L.core_ar - 1] == Color::Red;
                co.t2 = t2;
                L.core_outcomes.push_back(co);
            }
    std::sort(L.core_outcomes.begin(), L.core_outcomes.end(),
              [](const auto& x, const auto& y) { return x.col < y.col; });

    if (L.core_outcomes.empty()) {
        fail = "middle block has no feasible outcome";
        return false;
    }
    for (const auto& co : L.core_outcomes) {
        Color t2 = co.col[L.core_t - 1], f2 = co.col[L.core_f - 1];
        bool onehot = (t2 == Color::Black && f2 == Color::White) ||
                      (t2 == Color::White && f2 == Color::Black);
        if (!onehot) {
            fail = "property 5 (one of t2/f2 black)";
            return false;
        }
        if (co.al_red && co.ar_red && f2 != Color::Black) {
            fail = "property 6 (both activity nodes red forces f2 black)";
            return false;
        }
    }
    auto find_pattern = [&](bool al, bool ar, Color t2) {
        for (size_t i = 0; i < L.core_outcomes.size(); ++i) {
            const auto& co = L.core_outcomes[i];
            if (co.al_red == al && co.ar_red == ar && co.t2 == t2)
                return static_cast<int>(i);
        }
        return -1;
    };
    L.core_pattern_true = find_pattern(true, true, Color::White);
    L.core_pattern_both_false = find_pattern(true, false, Color::Black);
    L.core_pattern_other = find_pattern(false, true, Color::Black);
    if (L.core_pattern_true < 0 || L.core_pattern_both_false < 0 || L.core_pattern_other < 0) {
        fail = "missing middle-block encoding pattern";
        return false;
    }
    return true;
}

// Feasibility of one (slot1, middle, slot3) outcome combination: pin every
// gadget node and ask the solver to complete the fillers. The two filler
// stretches are constrained by disjoint interval sets, so they are checked
// independently; this keeps infeasibility proofs cheap.
bool combo_extendable(const std::vector<Interval>& clause_ivs, const GadgetLayout& L,
                      const Block8& o1, const std::array<Color, 18>& oc, const Block8& o3) {
    auto side_feasible = [&](int skip_lo, int skip_hi, int free_lo, int free_hi) {
        Instance inst;
        inst.n = L.clause_len;
        for (size_t k = 0; k < clause_ivs.size(); ++k) {
            if (static_cast<int>(k) >= skip_lo && static_cast<int>(k) <= skip_hi) continue;
            inst.intervals.push_back(clause_ivs[k]);
        }
        auto pin = [&](int pos, Color c) {
            Interval iv;
            iv.lo = iv.hi = pos;
            iv.req = {0, 0, 0};
            iv.req[code(c) - 1] = 1;
            inst.intervals.push_back(iv);
        };
        for (int i = 0; i < 8; ++i) pin(L.slot1_off + i, o1[i]);
        for (int i = 0; i < 18; ++i) pin(L.core_off + i, oc[i]);
        for (int i = 0; i < 8; ++i) pin(L.slot3_off + i, o3[i]);
        for (int p = L.v_off; p < L.core_off; ++p)
            if (p < free_lo || p > free_hi) pin(p, Color::Red);
        for (int p = L.w_off; p < L.slot3_off; ++p)
            if (p < free_lo || p > free_hi) pin(p, Color::Red);
        for (size_t i = 0; i < inst.intervals.size(); ++i)
            inst.intervals[i].id = static_cast<int>(i) + 1;
        return solve_backtracking(inst).status == SolveStatus::Feasible;
    };
    // clause intervals sit at indices 26..31: first three guard the leading
    // fillers, last three the trailing ones
    return side_feasible(29, 31, L.v_off, L.core_off - 1) &&
           side_feasible(26, 28, L.w_off, L.slot3_off - 1);
}

bool validate_clause(GadgetLayout& L, std::string& fail) {
    // all polarity combinations; swapping B/W per slot must keep property 7
    // and every encoding pattern completable
    for (int mask = 0; mask < 8; ++mask) {
        bool neg1 = mask & 1, neg2 = mask & 2, neg3 = mask & 4;
        auto ivs = instantiate_clause_intervals(L, neg1, neg2, neg3, 0);
        for (auto& iv : ivs) iv.id = 0;  // ids assigned inside combo_extendable

        auto slot1_out = [&](int idx) {
            Block8 b = L.lit_outcomes[idx];
            if (neg1)
                for (auto& c : b) c = swap_bw(c);
            return b;
        };
        auto slot3_out = [&](int idx) {
            Block8 b = L.mir_outcomes[idx];
            if (!neg3)
                for (auto& c : b) c = swap_bw(c);
            return b;
        };
        auto core_out = [&](int idx) {
            std::array<Color, 18> a = L.core_outcomes[idx].col;
            if (!neg2)
                for (auto& c : a) c = swap_bw(c);
            return a;
        };

        std::vector<std::array<int, 3>> extendable;
        for (int i1 = 0; i1 < 3; ++i1)
            for (size_t i2 = 0; i2 < L.core_outcomes.size(); ++i2)
                for (int i3 = 0; i3 < 3; ++i3)
                    if (combo_extendable(ivs, L, slot1_out(i1), core_out(static_cast<int>(i2)),
                                         slot3_out(i3)))
                        extendable.push_back({i1, static_cast<int>(i2), i3});
        if (extendable.empty()) {
            fail = "no extendable clause combination";
            return false;
        }
        for (const auto& e : extendable) {
            bool a1R = L.lit_outcomes[e[0]][L.lit_a - 1] == Color::Red;
            bool a3R = L.mir_outcomes[e[2]][L.mir_a - 1] == Color::Red;
            const auto& co = L.core_outcomes[e[1]];
            if (!a1R && !a3R && !(co.al_red && co.ar_red)) {
                fail = "property 7 (some activity node red)";
                return false;
            }
        }
        // the seven satisfying literal-value combinations must be encodable
        auto has = [&](int i1, int i2, int i3) {
            return std::find(extendable.begin(), extendable.end(),
                             std::array<int, 3>{i1, i2, i3}) != extendable.end();
        };
        for (int l1 = 0; l1 < 2; ++l1)
            for (int l2 = 0; l2 < 2; ++l2)
                for (int l3 = 0; l3 < 2; ++l3) {
                    if (!l1 && !l2 && !l3) continue;
                    int i1 = l1 ? L.active_outcome : L.inactive_outcome;
                    int i3 = l3 ? L.active_outcome : L.inactive_outcome;
                    int i2 = l2 ? L.core_pattern_true
                                : (l1 ? L.core_pattern_other : L.core_pattern_both_false);
                    if (!has(i1, i2, i3)) {
                        fail = "encoding pattern not completable";
                        return false;
                    }
                }
    }
    return true;
}

GadgetLayout build_layout() {
    std::string fail = "unknown";
    // outer search over literal templates; downstream assembly checks reject
    // candidates whose geometry cannot host the clause intervals
    const std::array<ReqTriple, 5> reqs{{{1, 1, 1}, {1, 1, 1}, {1, 0, 1}, {1, 1, 2}, {0, 1, 0}}};
    const std::array<int, 5> lens{3, 3, 2, 4, 1};
    for (int lo1 = 1; lo1 + lens[0] - 1 <= 8; ++lo1)
        for (int lo2 = lo1; lo2 + lens[1] - 1 <= 8; ++lo2)
            for (int lo3 = 1; lo3 + lens[2] - 1 <= 8; ++lo3)
                for (int lo4 = 1; lo4 + lens[3] - 1 <= 8; ++lo4)
                    for (int lo5 = 1; lo5 + lens[4] - 1 <= 8; ++lo5) {
                        std::array<TemplateInterval, 6> tis;
                        const std::array<int, 5> los{lo1, lo2, lo3, lo4, lo5};
                        for (int i = 0; i < 5; ++i)
                            tis[i] = TemplateInterval{los[i], los[i] + lens[i] - 1, reqs[i]};
                        tis[5] = TemplateInterval{1, 8, {2, 3, 3}};

                        std::vector<Coloring> outs;
                        try {
                            outs = enumerate_colorings(block_instance(tis), 3);
                        } catch (const CapacityError&) {
                            continue;
                        }
                        if (outs.size() != 3) continue;
                        std::array<Block8, 3> o{};
                        for (int i = 0; i < 3; ++i)
                            for (int p = 0; p < 8; ++p) o[i][p] = outs[i][p];
                        bool edge_red = false;
                        for (const Block8& b : o)
                            if (b[0] == Color::Red || b[7] == Color::Red) edge_red = true;
                        if (edge_red) continue;

                        for (int t = 1; t <= 8; ++t)
                            for (int f = 1; f <= 8; ++f) {
                                if (t == f) continue;
                                bool tf_ok = true;
                                for (const Block8& b : o) {
                                    Color ct = b[t - 1], cf = b[f - 1];
                                    if (!((ct == Color::Black && cf == Color::White) ||
                                          (ct == Color::White && cf == Color::Black)))
                                        tf_ok = false;
                                }
                                if (!tf_ok) continue;
                                for (int a : {7, 8}) {
                                    if (a == t || a == f) continue;
                                    bool active_seen = false, inactive_seen = false, good = true;
                                    bool p1w_seen = false;
                                    int active_idx = -1, inactive_idx = -1;
                                    for (int i = 0; i < 3; ++i) {
                                        const Block8& b = o[i];
                                        bool aR = b[a - 1] == Color::Red;
                                        if (aR && b[t - 1] != Color::Black) good = false;
                                        if (aR && b[0] != Color::Black) good = false;
                                        if (aR && b[t - 1] == Color::Black && !active_seen) {
                                            active_seen = true;
                                            active_idx = i;
                                        }
                                        if (b[t - 1] == Color::White && !inactive_seen) {
                                            inactive_seen = true;
                                            inactive_idx = i;
                                        }
                                        if (!aR && b[0] == Color::White) p1w_seen = true;
                                    }
                                    if (!(good && active_seen && inactive_seen && p1w_seen)) {
                                        if (fail == "unknown") fail = "special-node conditions";
                                        continue;
                                    }
                                    if (!tileable(1, t - 1, tis) || !tileable(f + 1, 8, tis)) {
                                        fail = "prefix/suffix tiling";
                                        continue;
                                    }

                                    GadgetLayout L;
                                    L.lit = tis;
                                    L.lit_t = t;
                                    L.lit_f = f;
                                    L.lit_a = a;
                                    L.lit_outcomes = o;
                                    L.active_outcome = active_idx;
                                    L.inactive_outcome = inactive_idx;
                                    // mirrored template; t/f roles swap under mirroring
                                    for (int i = 0; i < 6; ++i)
                                        L.mir[i] = TemplateInterval{9 - L.lit[i].hi,
                                                                    9 - L.lit[i].lo, L.lit[i].req};
                                    L.mir_t = 9 - L.lit_f;
                                    L.mir_f = 9 - L.lit_t;
                                    L.mir_a = 9 - L.lit_a;
                                    for (int i = 0; i < 3; ++i)
                                        L.mir_outcomes[i] = mirror_block(L.lit_outcomes[i]);

                                    if (!build_core(L, fail)) continue;

                                    // clause geometry
                                    L.clause_len = 8 + 13 + 18 + 15 + 8;
                                    L.slot1_off = 1;
                                    L.v_off = 9;
                                    L.core_off = 22;
                                    L.w_off = 40;
                                    L.slot3_off = 55;
                                    int a1 = L.slot1_off - 1 + L.lit_a;
                                    int a2l = L.core_off - 1 + L.core_al;
                                    int a2r = L.core_off - 1 + L.core_ar;
                                    int a3 = L.slot3_off - 1 + L.mir_a;
                                    int v1 = L.v_off, v3 = L.v_off + 2, v11 = L.v_off + 10,
                                        v13 = L.v_off + 12;
                                    int w1 = L.w_off, w13 = L.w_off + 12, w15 = L.w_off + 14;
                                    // quoted membership: first clause interval covers the
                                    // first three fillers and the slot-1 activity node, etc.
                                    if (v3 - a1 + 1 != 5 || a2l - v11 + 1 != 5 ||
                                        a3 - w13 + 1 != 5) {
                                        fail = "clause interval geometry";
                                        continue;
                                    }
                                    L.clause_intervals[0] = TemplateInterval{a1, v3, {1, 2, 2}};
                                    L.clause_intervals[1] = TemplateInterval{v11, a2l, {1, 2, 2}};
                                    L.clause_intervals[2] = TemplateInterval{v1, v13, {1, 6, 6}};
                                    L.clause_intervals[4] = TemplateInterval{w13, a3, {1, 2, 2}};
                                    L.clause_intervals[5] = TemplateInterval{w1, w15, {1, 7, 7}};

                                    bool done = false;
                                    for (int lo4c = w1 - 6; lo4c <= a2r; ++lo4c) {
                                        int hi4c = lo4c + 6;
                                        if (lo4c > a2r || hi4c < w1) continue;
                                        if (hi4c > L.clause_len) continue;
                                        L.clause_intervals[3] =
                                            TemplateInterval{lo4c, hi4c, {1, 3, 3}};
                                        if (validate_clause(L, fail)) {
                                            done = true;
                                            break;
                                        }
                                    }
                                    if (done) return L;
                                }
                            }
                    }
    throw InternalError("gadget layout search failed (" + fail + ")");
}

}  // namespace

const GadgetLayout& infer_gadget_layouts() {
    static const GadgetLayout layout = build_layout();
    return layout;
}

}  // namespace icc3
