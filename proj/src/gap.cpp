#include "icc3/gap.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "icc3/expander.hpp"
#include "icc3/rng.hpp"

namespace icc3 {

Rational compute_epsilon(int d0, const Rational& h0, long long c, const Rational& eps0) {
    if (d0 <= 0 || c <= 0 || !(Rational(0) < h0) || !(Rational(0) < eps0))
        throw InputError("compute_epsilon needs positive d0, h0, c, eps0");
    Rational denom = (Rational(3 * d0) + h0) * Rational(c);
    return h0 * eps0 / denom;
}

namespace {

std::pair<Instance, ReductionMap> reduce_without_links(const CnfFormula& f) {
    // clause blocks only; links are added expander-fashion below
    auto [inst, map] = reduce(f);
    // reduce() adds clique links; rebuild without them
    Instance blocks;
    blocks.n = inst.n;
    int keep = map.per_clause_intervals * static_cast<int>(f.clauses.size());
    blocks.intervals.assign(inst.intervals.begin(), inst.intervals.begin() + keep);
    map.links.clear();
    return {std::move(blocks), std::move(map)};
}

}  // namespace

GapResult gap_reduce(const CnfFormula& f, int d, const Rational& target_h, uint64_t seed,
                     const Rational& eps0) {
    if (d < 2 || d % 2 != 0) throw InputError("gap reduction needs even link degree >= 2");
    auto [inst, map] = reduce_without_links(f);
    map.gap_mode = true;

    std::map<int, std::vector<const LiteralSlot*>> by_var;
    for (const LiteralSlot& s : map.slots) by_var[s.var].push_back(&s);

    Rng seeds(seed);
    bool any_graph = false;
    Rational h0;
    for (auto& [var, occ] : by_var) {
        std::sort(occ.begin(), occ.end(), [](const LiteralSlot* a, const LiteralSlot* b) {
            return a->t_pos < b->t_pos;
        });
        uint64_t var_seed = seeds.next();
        int o = static_cast<int>(occ.size());
        auto [graph, cert] = build_expander(o, d, target_h, var_seed);

        ExpanderRecord rec;
        rec.var = var;
        rec.n = o;
        rec.d = cert.d;
        rec.h = cert.h_bound;
        rec.method = cert.method;
        map.expanders.push_back(rec);

        if (o >= 2) {
            if (!any_graph || cert.h_bound < h0) h0 = cert.h_bound;
            any_graph = true;
        }

        auto edges = graph.edges;
        std::sort(edges.begin(), edges.end());
        for (auto [u, v] : edges) {
            const LiteralSlot* e = occ[std::min(u, v) - 1];
            const LiteralSlot* l = occ[std::max(u, v) - 1];
            auto z = partition_sum(inst.intervals, e->f_pos + 1, l->t_pos - 1);
            Interval outer;
            outer.id = static_cast<int>(inst.intervals.size()) + 1;
            outer.lo = e->f_pos;
            outer.hi = l->t_pos;
            outer.req = {static_cast<int>(z[0]), static_cast<int>(z[1]) + 1,
                         static_cast<int>(z[2]) + 1};
            inst.intervals.push_back(outer);

            VariableIntervalRecord link;
            link.var = var;
            link.from_clause = e->clause;
            link.from_slot = e->slot;
            link.to_clause = l->clause;
            link.to_slot = l->slot;
            link.outer_id = outer.id;
            link.z = z;
            if (e->f_pos + 1 <= l->t_pos - 1) {
                Interval inner;
                inner.id = static_cast<int>(inst.intervals.size()) + 1;
                inner.lo = e->f_pos + 1;
                inner.hi = l->t_pos - 1;
                inner.req = {static_cast<int>(z[0]), static_cast<int>(z[1]),
                             static_cast<int>(z[2])};
                inst.intervals.push_back(inner);
                link.inner_id = inner.id;
            }
            map.links.push_back(link);
        }
    }
    if (!any_graph) h0 = target_h;

    auto bad = check_consistency(inst);
    if (!bad.empty()) throw InternalError("gap instance has inconsistent intervals");

    GapParams params;
    params.d0 = d;
    params.h0 = h0;
    params.c = map.c_const;
    params.eps0 = eps0;
    params.eps = compute_epsilon(d, h0, map.c_const, eps0);
    params.threshold =
        (Rational(1) - params.eps) * Rational(static_cast<long long>(inst.intervals.size()));
    return {std::move(inst), std::move(map), params};
}

namespace {

struct ClauseView {
    std::vector<bool> broken;
    // display per slot: 0 none, +1 true, -1 false
    std::vector<std::array<int, 3>> display;
};

// brokenness and displays; `violated` are instance interval ids
ClauseView analyze_clauses(const ReductionMap& map, const Coloring& col,
                           const std::set<int>& violated) {
    int q = static_cast<int>(map.source.clauses.size());
    ClauseView view;
    view.broken.assign(q, false);
    view.display.assign(q, {0, 0, 0});
    for (int ci = 0; ci < q; ++ci) {
        int first = ci * map.per_clause_intervals + 1;
        int last = (ci + 1) * map.per_clause_intervals;
        auto it = violated.lower_bound(first);
        if (it != violated.end() && *it <= last) view.broken[ci] = true;
    }
    for (const LiteralSlot& s : map.slots) {
        if (view.broken[s.clause - 1]) continue;
        Color ct = col.at(s.t_pos - 1);
        Color cf = col.at(s.f_pos - 1);
        bool tb = ct == Color::Black, fb = cf == Color::Black;
        if (tb == fb) {
            // no displayed value: treat the clause as broken
            view.broken[s.clause - 1] = true;
        } else {
            view.display[s.clause - 1][s.slot - 1] = tb ? 1 : -1;
        }
    }
    // clear displays of clauses reclassified as broken
    for (const LiteralSlot& s : map.slots)
        if (view.broken[s.clause - 1]) view.display[s.clause - 1][s.slot - 1] = 0;
    return view;
}

Assignment majority_from(const ReductionMap& map, const ClauseView& view) {
    Assignment a;
    a.values.assign(map.source.var_count, false);
    std::map<int, std::pair<int, int>> tally;  // var -> (true votes, false votes)
    for (const LiteralSlot& s : map.slots) {
        int d = view.display[s.clause - 1][s.slot - 1];
        if (d == 0) continue;
        // display of the literal's t node speaks for the variable directly
        auto& t = tally[s.var];
        if (d > 0) t.first++;
        else t.second++;
    }
    for (auto& [var, votes] : tally) a.values[var - 1] = votes.first > votes.second;
    return a;
}

std::set<int> clause_block_violations(const ReductionMap& map, const Coloring& col) {
    // rebuild the clause-attributed intervals (deterministic from the source)
    const GadgetLayout& L = infer_gadget_layouts();
    std::set<int> violated;
    for (size_t ci = 0; ci < map.source.clauses.size(); ++ci) {
        const Clause& cl = map.source.clauses[ci];
        int origin = static_cast<int>(ci) * L.clause_len;
        auto ivs = instantiate_clause_intervals(L, cl.lits[0].negated, cl.lits[1].negated,
                                                cl.lits[2].negated, origin);
        for (size_t k = 0; k < ivs.size(); ++k) {
            ReqTriple actual{0, 0, 0};
            for (int p = ivs[k].lo; p <= ivs[k].hi; ++p) actual[code(col.at(p - 1)) - 1]++;
            if (actual != ivs[k].req)
                violated.insert(static_cast<int>(ci) * map.per_clause_intervals +
                                static_cast<int>(k) + 1);
        }
    }
    return violated;
}

}  // namespace

Assignment majority_extract(const ReductionMap& map, const Coloring& col) {
    auto violated = clause_block_violations(map, col);
    ClauseView view = analyze_clauses(map, col, violated);
    return majority_from(map, view);
}

AuditReport soundness_audit(const ReductionMap& map, const Instance& inst, const Coloring& col,
                            const GapParams& params) {
    if (static_cast<int>(col.size()) != inst.n)
        throw InputError("coloring length does not match instance");
    if (params.c != map.c_const) throw InputError("params do not match the map");

    VerifyReport rep = verify(inst, col);
    std::set<int> violated(rep.violated.begin(), rep.violated.end());

    AuditReport out;
    out.violated = static_cast<long long>(violated.size());

    ClauseView view = analyze_clauses(map, col, violated);
    for (bool b : view.broken)
        if (b) out.broken_clauses++;

    for (const VariableIntervalRecord& link : map.links) {
        bool broken = view.broken[link.from_clause - 1] || view.broken[link.to_clause - 1] ||
                      violated.count(link.outer_id) ||
                      (link.inner_id != 0 && violated.count(link.inner_id));
        if (broken) out.broken_links++;
    }

    Assignment phi = majority_from(map, view);
    out.unsat_phi = static_cast<long long>(eval_unsat(map.source, phi).size());

    // bad: not broken, an active literal evaluates false under phi
    for (size_t ci = 0; ci < map.source.clauses.size(); ++ci) {
        if (view.broken[ci]) continue;
        const Clause& cl = map.source.clauses[ci];
        bool bad = false;
        for (int h = 1; h <= 3; ++h) {
            const LiteralSlot& s = map.slot_at(static_cast<int>(ci) + 1, h);
            bool active = col.at(s.a_pos - 1) == Color::Red;
            if (h == 2) active = active && col.at(s.a2_pos - 1) == Color::Red;
            if (active && !phi.eval(cl.lits[h - 1])) bad = true;
        }
        if (bad) out.bad_clauses++;
    }

    out.bound = (Rational(1) + Rational(3 * params.d0) / params.h0) * Rational(out.violated);
    out.holds = Rational(out.unsat_phi) <= out.bound;
    return out;
}

std::string emit_audit(const AuditReport& r) {
    std::ostringstream os;
    os << "g V " << r.violated << " broken_clauses " << r.broken_clauses << " broken_links "
       << r.broken_links << " bad " << r.bad_clauses << " bound " << r.bound.str() << " unsat_phi "
       << r.unsat_phi << " holds " << (r.holds ? 1 : 0) << "\n";
    return os.str();
}

}  // namespace icc3
