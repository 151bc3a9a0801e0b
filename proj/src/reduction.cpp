#include "icc3/reduction.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "icc3/io.hpp"
#include "icc3/solver.hpp"

namespace icc3 {

std::string method_name(ExpanderMethod m) {
    switch (m) {
        case ExpanderMethod::RandomRegular: return "RANDOM_REGULAR";
        case ExpanderMethod::Clique: return "CLIQUE";
        case ExpanderMethod::PathFallback: return "PATH_FALLBACK";
    }
    throw InternalError("bad expander method");
}

ExpanderMethod method_from_name(const std::string& s) {
    if (s == "RANDOM_REGULAR") return ExpanderMethod::RandomRegular;
    if (s == "CLIQUE") return ExpanderMethod::Clique;
    if (s == "PATH_FALLBACK") return ExpanderMethod::PathFallback;
    throw ParseError("unknown expander method '" + s + "'");
}

const LiteralSlot& ReductionMap::slot_at(int clause, int slot) const {
    size_t idx = static_cast<size_t>(clause - 1) * 3 + (slot - 1);
    if (clause < 1 || slot < 1 || slot > 3 || idx >= slots.size())
        throw InputError("slot reference out of range");
    return slots[idx];
}

std::array<long long, 3> partition_sum(const std::vector<Interval>& intervals, int lo, int hi) {
    if (lo > hi) return {0, 0, 0};
    std::map<int, std::vector<int>> by_lo;
    for (size_t i = 0; i < intervals.size(); ++i) {
        const Interval& iv = intervals[i];
        if (iv.lo >= lo && iv.hi <= hi) by_lo[iv.lo].push_back(static_cast<int>(i));
    }
    constexpr int kMaxTilings = 4096;
    constexpr long long kMaxSteps = 2000000;
    bool have = false;
    bool capped = false;
    std::array<long long, 3> sum{0, 0, 0};
    std::array<long long, 3> cur{0, 0, 0};
    int found = 0;
    long long steps = 0;
    auto rec = [&](auto&& self, int at) -> bool {  // returns false on hard stop
        if (++steps > kMaxSteps || found >= kMaxTilings) {
            capped = true;
            return false;
        }
        if (at > hi) {
            if (!have) {
                sum = cur;
                have = true;
            } else if (sum != cur) {
                throw InternalError("partition tilings disagree on [" + std::to_string(lo) + "," +
                                    std::to_string(hi) + "]");
            }
            ++found;
            return true;
        }
        auto it = by_lo.find(at);
        if (it == by_lo.end()) return true;
        for (int idx : it->second) {
            const Interval& iv = intervals[idx];
            for (int c = 0; c < 3; ++c) cur[c] += iv.req[c];
            bool cont = self(self, iv.hi + 1);
            for (int c = 0; c < 3; ++c) cur[c] -= iv.req[c];
            if (!cont) return false;
        }
        return true;
    };
    rec(rec, lo);
    (void)capped;
    if (!have)
        throw InternalError("no interval tiling of [" + std::to_string(lo) + "," +
                            std::to_string(hi) + "]");
    return sum;
}

std::pair<std::vector<Interval>, std::array<LiteralSlot, 3>> build_clause_block(
    const Clause& cl, int clause_index, const GadgetLayout& L, int origin) {
    auto ivs = instantiate_clause_intervals(L, cl.lits[0].negated, cl.lits[1].negated,
                                            cl.lits[2].negated, origin);
    std::array<LiteralSlot, 3> slots;
    const std::array<std::pair<int, int>, 3> spans{{{L.slot1_off, L.slot1_off + 7},
                                                    {L.v_off, L.w_off + 14},
                                                    {L.slot3_off, L.slot3_off + 7}}};
    for (int h = 1; h <= 3; ++h) {
        LiteralSlot& s = slots[h - 1];
        s.clause = clause_index;
        s.slot = h;
        s.var = cl.lits[h - 1].var;
        s.negated = cl.lits[h - 1].negated;
        s.lo = origin + spans[h - 1].first;
        s.hi = origin + spans[h - 1].second;
        s.t_pos = origin + L.t_of_slot(h);
        s.f_pos = origin + L.f_of_slot(h);
        s.a_pos = origin + L.a_of_slot(h);
        s.a2_pos = h == 2 ? origin + L.a2r_of_clause() : 0;
    }
    return {std::move(ivs), slots};
}

std::vector<VariableIntervalRecord> build_variable_intervals(
    Instance& inst, const std::vector<LiteralSlot>& slots) {
    std::map<int, std::vector<const LiteralSlot*>> by_var;
    for (const LiteralSlot& s : slots) by_var[s.var].push_back(&s);
    std::vector<VariableIntervalRecord> records;
    for (auto& [var, occ] : by_var) {
        std::sort(occ.begin(), occ.end(), [](const LiteralSlot* a, const LiteralSlot* b) {
            return a->t_pos < b->t_pos;
        });
        for (size_t i = 0; i < occ.size(); ++i)
            for (size_t j = i + 1; j < occ.size(); ++j) {
                const LiteralSlot* e = occ[i];
                const LiteralSlot* l = occ[j];
                auto z = partition_sum(inst.intervals, e->f_pos + 1, l->t_pos - 1);
                Interval outer;
                outer.id = static_cast<int>(inst.intervals.size()) + 1;
                outer.lo = e->f_pos;
                outer.hi = l->t_pos;
                outer.req = {static_cast<int>(z[0]), static_cast<int>(z[1]) + 1,
                             static_cast<int>(z[2]) + 1};
                inst.intervals.push_back(outer);
                VariableIntervalRecord rec;
                rec.var = var;
                rec.from_clause = e->clause;
                rec.from_slot = e->slot;
                rec.to_clause = l->clause;
                rec.to_slot = l->slot;
                rec.outer_id = outer.id;
                rec.inner_id = 0;
                rec.z = z;
                records.push_back(rec);
            }
    }
    return records;
}

namespace {

void check_formula(const CnfFormula& f) {
    for (const Clause& cl : f.clauses) {
        for (const Literal& l : cl.lits)
            if (l.var < 1 || l.var > f.var_count) throw InputError("literal variable out of range");
        if (cl.lits[0].var == cl.lits[1].var || cl.lits[0].var == cl.lits[2].var ||
            cl.lits[1].var == cl.lits[2].var)
            throw InputError("clause with duplicate variable");
    }
}

std::pair<Instance, ReductionMap> reduce_blocks(const CnfFormula& f) {
    check_formula(f);
    const GadgetLayout& L = infer_gadget_layouts();
    Instance inst;
    inst.n = L.clause_len * static_cast<int>(f.clauses.size());
    ReductionMap map;
    map.source = f;
    map.layout_name = L.name;
    map.layout_version = L.version;
    map.clause_nodes = L.clause_len;
    map.per_clause_intervals = L.per_clause_intervals();
    map.c_const = L.per_clause_intervals();
    for (size_t ci = 0; ci < f.clauses.size(); ++ci) {
        int origin = L.clause_len * static_cast<int>(ci);
        auto [ivs, slots] = build_clause_block(f.clauses[ci], static_cast<int>(ci) + 1, L, origin);
        for (Interval& iv : ivs) {
            iv.id = static_cast<int>(inst.intervals.size()) + 1;
            inst.intervals.push_back(iv);
        }
        for (const LiteralSlot& s : slots) map.slots.push_back(s);
        map.clause_spans.push_back({origin + 1, origin + L.clause_len});
    }
    return {std::move(inst), std::move(map)};
}

}  // namespace

std::pair<Instance, ReductionMap> reduce(const CnfFormula& f) {
    auto [inst, map] = reduce_blocks(f);
    map.links = build_variable_intervals(inst, map.slots);
    auto bad = check_consistency(inst);
    if (!bad.empty()) throw InternalError("reduced instance has inconsistent intervals");
    return {std::move(inst), std::move(map)};
}

Coloring encode_coloring(const ReductionMap& map, const Assignment& a) {
    const GadgetLayout& L = infer_gadget_layouts();
    if (map.layout_name != L.name || map.layout_version != L.version)
        throw InputError("map was built with a different layout");
    if (!eval_unsat(map.source, a).empty())
        throw InputError("assignment does not satisfy the source formula");

    const CnfFormula& f = map.source;
    Coloring col(static_cast<size_t>(L.clause_len) * f.clauses.size(), Color::Red);

    for (size_t ci = 0; ci < f.clauses.size(); ++ci) {
        const Clause& cl = f.clauses[ci];
        int origin = L.clause_len * static_cast<int>(ci);
        bool l1 = a.eval(cl.lits[0]);
        bool l2 = a.eval(cl.lits[1]);
        bool l3 = a.eval(cl.lits[2]);

        std::array<Color, 8> b1 = L.lit_outcomes[l1 ? L.active_outcome : L.inactive_outcome];
        if (cl.lits[0].negated)
            for (auto& c : b1) c = swap_bw(c);
        std::array<Color, 8> b3 = L.mir_outcomes[l3 ? L.active_outcome : L.inactive_outcome];
        if (!cl.lits[2].negated)
            for (auto& c : b3) c = swap_bw(c);
        int pat = l2 ? L.core_pattern_true
                     : (l1 ? L.core_pattern_other : L.core_pattern_both_false);
        std::array<Color, 18> bc = L.core_outcomes[pat].col;
        if (!cl.lits[1].negated)
            for (auto& c : bc) c = swap_bw(c);

        // pin the gadget nodes, let the solver complete the fillers
        Instance mini;
        mini.n = L.clause_len;
        mini.intervals = instantiate_clause_intervals(L, cl.lits[0].negated, cl.lits[1].negated,
                                                      cl.lits[2].negated, 0);
        auto pin = [&](int pos, Color c) {
            Interval iv;
            iv.lo = iv.hi = pos;
            iv.req = {0, 0, 0};
            iv.req[code(c) - 1] = 1;
            mini.intervals.push_back(iv);
        };
        for (int i = 0; i < 8; ++i) pin(L.slot1_off + i, b1[i]);
        for (int i = 0; i < 18; ++i) pin(L.core_off + i, bc[i]);
        for (int i = 0; i < 8; ++i) pin(L.slot3_off + i, b3[i]);
        for (size_t i = 0; i < mini.intervals.size(); ++i)
            mini.intervals[i].id = static_cast<int>(i) + 1;
        SolveOutcome out = solve_backtracking(mini);
        if (out.status != SolveStatus::Feasible)
            throw InternalError("filler completion failed for clause " + std::to_string(ci + 1));
        for (int p = 0; p < L.clause_len; ++p) col[origin + p] = (*out.witness)[p];
    }

    // variable links hold by construction; check the endpoint pairing anyway
    for (const VariableIntervalRecord& rec : map.links) {
        Color cf = col[map.slot_at(rec.from_clause, rec.from_slot).f_pos - 1];
        Color ct = col[map.slot_at(rec.to_clause, rec.to_slot).t_pos - 1];
        bool bw = (cf == Color::Black && ct == Color::White) ||
                  (cf == Color::White && ct == Color::Black);
        if (!bw) throw InternalError("variable link endpoints not black/white paired");
    }
    return col;
}

Assignment extract_assignment(const ReductionMap& map, const Coloring& col) {
    Assignment a;
    a.values.assign(map.source.var_count, false);
    std::vector<bool> seen(map.source.var_count, false);
    for (const LiteralSlot& s : map.slots) {
        Color ct = col.at(s.t_pos - 1);
        bool val;
        if (ct == Color::Black) val = true;
        else if (ct == Color::White) val = false;
        else
            throw InputError("t node of clause " + std::to_string(s.clause) + " slot " +
                             std::to_string(s.slot) + " is RED");
        if (seen[s.var - 1] && a.values[s.var - 1] != val)
            throw InputError("occurrences of variable " + std::to_string(s.var) +
                             " display different t colors");
        seen[s.var - 1] = true;
        a.values[s.var - 1] = val;
    }
    return a;
}

// --------------------------------------------------------------------------
// map text format

std::string emit_map(const ReductionMap& map) {
    std::ostringstream os;
    os << "m layout " << map.layout_name << " " << map.layout_version << "\n";
    os << "m cnf " << map.source.var_count << " " << map.source.clauses.size() << "\n";
    for (size_t c = 0; c < map.clause_spans.size(); ++c)
        os << "m clause " << c + 1 << " span " << map.clause_spans[c].first << " "
           << map.clause_spans[c].second << "\n";
    for (const LiteralSlot& s : map.slots) {
        os << "m lit " << s.clause << " " << s.slot << " var " << s.var << " neg "
           << (s.negated ? 1 : 0) << " t " << s.t_pos << " f " << s.f_pos << " a " << s.a_pos;
        if (s.slot == 2) os << " " << s.a2_pos;
        os << "\n";
    }
    for (const VariableIntervalRecord& r : map.links)
        os << "m link " << r.outer_id << " " << r.inner_id << " var " << r.var << " from "
           << r.from_clause << " " << r.from_slot << " to " << r.to_clause << " " << r.to_slot
           << " z " << r.z[0] << " " << r.z[1] << " " << r.z[2] << "\n";
    os << "m const c " << map.c_const << "\n";
    for (const ExpanderRecord& e : map.expanders)
        os << "m expander var " << e.var << " n " << e.n << " d " << e.d << " h " << e.h.str()
           << " method " << method_name(e.method) << "\n";
    return os.str();
}

ReductionMap parse_map(const std::string& text) {
    ReductionMap map;
    std::istringstream is(text);
    std::string line;
    int ln = 0;
    bool have_layout = false, have_cnf = false;
    std::map<std::pair<int, int>, LiteralSlot> slot_map;
    while (std::getline(is, line)) {
        ++ln;
        std::istringstream ls(line);
        std::string m, kind;
        if (!(ls >> m)) continue;
        if (m == "c") continue;
        if (m != "m") throw ParseError("map lines must start with 'm'", ln);
        if (!(ls >> kind)) throw ParseError("truncated map line", ln);
        auto want = [&](const std::string& tok) {
            std::string t;
            if (!(ls >> t) || t != tok) throw ParseError("expected '" + tok + "'", ln);
        };
        auto get_int = [&]() {
            long long v;
            if (!(ls >> v)) throw ParseError("expected integer", ln);
            return static_cast<int>(v);
        };
        if (kind == "layout") {
            if (!(ls >> map.layout_name)) throw ParseError("missing layout name", ln);
            map.layout_version = get_int();
            have_layout = true;
        } else if (kind == "cnf") {
            map.source.var_count = get_int();
            int q = get_int();
            map.source.clauses.resize(q);
            have_cnf = true;
        } else if (kind == "clause") {
            int ci = get_int();
            want("span");
            int lo = get_int(), hi = get_int();
            if (ci != static_cast<int>(map.clause_spans.size()) + 1)
                throw ParseError("clause lines out of order", ln);
            map.clause_spans.push_back({lo, hi});
        } else if (kind == "lit") {
            LiteralSlot s;
            s.clause = get_int();
            s.slot = get_int();
            want("var");
            s.var = get_int();
            want("neg");
            s.negated = get_int() != 0;
            want("t");
            s.t_pos = get_int();
            want("f");
            s.f_pos = get_int();
            want("a");
            s.a_pos = get_int();
            if (s.slot == 2) s.a2_pos = get_int();
            slot_map[{s.clause, s.slot}] = s;
        } else if (kind == "link") {
            VariableIntervalRecord r;
            r.outer_id = get_int();
            r.inner_id = get_int();
            want("var");
            r.var = get_int();
            want("from");
            r.from_clause = get_int();
            r.from_slot = get_int();
            want("to");
            r.to_clause = get_int();
            r.to_slot = get_int();
            want("z");
            for (int c = 0; c < 3; ++c) r.z[c] = get_int();
            map.links.push_back(r);
        } else if (kind == "const") {
            want("c");
            map.c_const = get_int();
        } else if (kind == "expander") {
            ExpanderRecord e;
            want("var");
            e.var = get_int();
            want("n");
            e.n = get_int();
            want("d");
            e.d = get_int();
            want("h");
            std::string h;
            if (!(ls >> h)) throw ParseError("missing expansion value", ln);
            e.h = Rational::parse(h);
            want("method");
            std::string name;
            if (!(ls >> name)) throw ParseError("missing method name", ln);
            e.method = method_from_name(name);
            map.expanders.push_back(e);
        } else if (kind == "gapparams") {
            // parsed by the gap module; tolerated here
            continue;
        } else {
            throw ParseError("unknown map line kind '" + kind + "'", ln);
        }
    }
    if (!have_layout || !have_cnf) throw ParseError("map missing layout or cnf header");
    const GadgetLayout& L = infer_gadget_layouts();
    if (map.layout_name != L.name || map.layout_version != L.version)
        throw ParseError("map layout " + map.layout_name + " v" +
                         std::to_string(map.layout_version) + " is not supported");
    map.clause_nodes = L.clause_len;
    map.per_clause_intervals = L.per_clause_intervals();
    if (map.c_const == 0) map.c_const = L.per_clause_intervals();

    // rebuild slots in canonical order and the source clauses from lit lines
    map.slots.clear();
    for (size_t ci = 0; ci < map.source.clauses.size(); ++ci) {
        Clause cl;
        for (int h = 1; h <= 3; ++h) {
            auto it = slot_map.find({static_cast<int>(ci) + 1, h});
            if (it == slot_map.end())
                throw ParseError("missing lit line for clause " + std::to_string(ci + 1) +
                                 " slot " + std::to_string(h));
            LiteralSlot s = it->second;
            int origin = static_cast<int>(ci) * L.clause_len;
            s.lo = origin + (h == 1 ? L.slot1_off : h == 2 ? L.v_off : L.slot3_off);
            s.hi = origin + (h == 1 ? L.slot1_off + 7 : h == 2 ? L.w_off + 14 : L.slot3_off + 7);
            cl.lits[h - 1] = Literal{s.var, s.negated};
            map.slots.push_back(s);
        }
        map.source.clauses[ci] = cl;
    }
    map.gap_mode = !map.expanders.empty();
    for (const auto& r : map.links)
        if (r.inner_id != 0) map.gap_mode = true;
    return map;
}

}  // namespace icc3
