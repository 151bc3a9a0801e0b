#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "icc3/reduction.hpp"
#include "icc3/sat.hpp"
#include "icc3/solver.hpp"

using namespace icc3;

namespace {

CnfFormula formula(int p, std::vector<std::array<int, 3>> cls) {
    CnfFormula f;
    f.var_count = p;
    for (auto& c : cls) {
        Clause cl;
        for (int i = 0; i < 3; ++i) cl.lits[i] = Literal{std::abs(c[i]), c[i] < 0};
        f.clauses.push_back(cl);
    }
    return f;
}

Assignment assignment(std::vector<bool> v) {
    Assignment a;
    a.values = std::move(v);
    return a;
}

}  // namespace

TEST_CASE("inferred layout matches the documented gadget shape") {
    const GadgetLayout& L = infer_gadget_layouts();
    CHECK(L.clause_len == 62);
    CHECK(L.per_clause_intervals() == 32);
    // literal gadget: 8 nodes, whole-block interval (2,3,3), three outcomes
    CHECK(L.lit[5].lo == 1);
    CHECK(L.lit[5].hi == 8);
    CHECK(L.lit[5].req == ReqTriple{2, 3, 3});
    // requirement triples as published, in order
    CHECK(L.lit[0].req == ReqTriple{1, 1, 1});
    CHECK(L.lit[1].req == ReqTriple{1, 1, 1});
    CHECK(L.lit[2].req == ReqTriple{1, 0, 1});
    CHECK(L.lit[3].req == ReqTriple{1, 1, 2});
    CHECK(L.lit[4].req == ReqTriple{0, 1, 0});
    // middle block: 14 intervals; the 13th pins t2, the 14th covers all 18
    CHECK(L.core[12].req == ReqTriple{0, 2, 1});
    CHECK(L.core[12].lo + 1 == L.core_t);
    CHECK(L.core[12].hi - 1 == L.core_t);
    CHECK(L.core[13].lo == 1);
    CHECK(L.core[13].hi == 18);
    CHECK(L.core[13].req == ReqTriple{4, 7, 7});
    // clause-linking requirements
    const ReqTriple expect[6] = {{1, 2, 2}, {1, 2, 2}, {1, 6, 6}, {1, 3, 3}, {1, 2, 2}, {1, 7, 7}};
    for (int i = 0; i < 6; ++i) CHECK(L.clause_intervals[i].req == expect[i]);

    // properties 1 and 2 on the template outcomes
    for (const auto& o : L.lit_outcomes) {
        int blacks = (o[L.lit_t - 1] == Color::Black) + (o[L.lit_f - 1] == Color::Black);
        int whites = (o[L.lit_t - 1] == Color::White) + (o[L.lit_f - 1] == Color::White);
        CHECK(blacks == 1);
        CHECK(whites == 1);
        if (o[L.lit_a - 1] == Color::Red) CHECK(o[L.lit_t - 1] == Color::Black);
    }
}

TEST_CASE("partition sums") {
    std::vector<Interval> ivs = {{1, 1, 8, {2, 3, 3}}};
    CHECK(partition_sum(ivs, 1, 8) == std::array<long long, 3>{2, 3, 3});

    std::vector<Interval> two = {{1, 1, 2, {1, 0, 1}}, {2, 3, 4, {0, 1, 1}},
                                 {3, 3, 3, {0, 1, 0}}, {4, 4, 4, {0, 0, 1}}};
    CHECK(partition_sum(two, 1, 4) == std::array<long long, 3>{1, 1, 2});

    CHECK(partition_sum(two, 2, 1) == std::array<long long, 3>{0, 0, 0});
    CHECK_THROWS_AS(partition_sum(two, 2, 4), InternalError);  // nothing starts at 2

    // two tilings that disagree are a layout bug and must be reported
    std::vector<Interval> clash = {{1, 1, 2, {1, 1, 0}}, {2, 1, 1, {1, 0, 0}},
                                   {3, 2, 2, {0, 0, 1}}};
    CHECK_THROWS_AS(partition_sum(clash, 1, 2), InternalError);
}

TEST_CASE("clause block construction") {
    const GadgetLayout& L = infer_gadget_layouts();
    CnfFormula f = formula(3, {{1, 2, 3}});
    auto [ivs, slots] = build_clause_block(f.clauses[0], 1, L, 0);
    CHECK(ivs.size() == 32);
    for (const Interval& iv : ivs) CHECK(iv.req_sum() == iv.length());

    CnfFormula g = formula(3, {{-1, 2, 3}});
    auto [givs, gslots] = build_clause_block(g.clauses[0], 1, L, 0);
    // negating the first literal swaps exactly the BLACK/WHITE components of
    // its six gadget intervals
    for (int i = 0; i < 6; ++i) {
        CHECK(givs[i].req == swap_bw(ivs[i].req));
        CHECK(givs[i].lo == ivs[i].lo);
        CHECK(givs[i].hi == ivs[i].hi);
    }
    for (size_t i = 6; i < ivs.size(); ++i) CHECK(givs[i].req == ivs[i].req);

    // a single block is feasible
    Instance inst;
    inst.n = L.clause_len;
    inst.intervals = ivs;
    for (size_t i = 0; i < inst.intervals.size(); ++i)
        inst.intervals[i].id = static_cast<int>(i) + 1;
    CHECK(solve_backtracking(inst).status == SolveStatus::Feasible);
}

TEST_CASE("variable interval records") {
    // one occurrence per variable: no links
    auto [i1, m1] = reduce(formula(3, {{1, 2, 3}}));
    CHECK(m1.links.empty());
    CHECK(i1.n == 62);
    CHECK(i1.intervals.size() == 32);

    // x1 occurs three times: all pairs are linked
    auto [i3, m3] = reduce(formula(7, {{1, 2, 3}, {1, 4, 5}, {1, 6, 7}}));
    int x1_links = 0;
    for (const auto& r : m3.links)
        if (r.var == 1) ++x1_links;
    CHECK(x1_links == 3);

    // frozen regression counts for a 2-clause formula with one shared variable
    auto [i2, m2] = reduce(formula(5, {{1, 2, 3}, {-1, 4, 5}}));
    CHECK(i2.n == 124);
    CHECK(m2.links.size() == 1);
    CHECK(i2.intervals.size() == 65);  // 2*32 + 1
    CHECK(check_consistency(i2).empty());
    CHECK(m2.links[0].inner_id == 0);  // plain mode has no inner interval

    // the outer requirement is the internal sum plus one BLACK and one WHITE
    const auto& r = m2.links[0];
    const Interval& outer = i2.intervals[r.outer_id - 1];
    CHECK(outer.req == ReqTriple{static_cast<int>(r.z[0]), static_cast<int>(r.z[1]) + 1,
                                 static_cast<int>(r.z[2]) + 1});
}

TEST_CASE("map text round trip") {
    auto [inst, map] = reduce(formula(5, {{1, -2, 3}, {-1, 4, 5}}));
    std::string text = emit_map(map);
    ReductionMap back = parse_map(text);
    CHECK(emit_map(back) == text);
    CHECK(back.source.var_count == 5);
    CHECK(back.slots.size() == 6);
    CHECK(back.slot_at(1, 2).a2_pos == map.slot_at(1, 2).a2_pos);
    CHECK(back.links.size() == map.links.size());
    CHECK_FALSE(back.gap_mode);
}

TEST_CASE("map parse rejects malformed input") {
    CHECK_THROWS_AS(parse_map(""), ParseError);                      // no headers
    CHECK_THROWS_AS(parse_map("m layout searched 1\n"), ParseError);  // missing cnf
    CHECK_THROWS_AS(parse_map("m layout other 9\nm cnf 3 0\n"), ParseError);  // layout
    CHECK_THROWS_AS(parse_map("m layout searched 1\nm cnf 3 1\n"),
                    ParseError);  // missing lit lines
    CHECK_THROWS_AS(parse_map("x nonsense\n"), ParseError);

    auto [inst, map] = reduce(formula(3, {{1, 2, 3}}));
    std::string text = emit_map(map);
    CHECK_THROWS_AS(parse_map(text + "m frob 1\n"), ParseError);
}

TEST_CASE("encoding an all-true assignment activates the first literal") {
    auto f = formula(3, {{1, 2, 3}});
    auto [inst, map] = reduce(f);
    Coloring col = encode_coloring(map, assignment({true, true, true}));
    CHECK(verify(inst, col).violated.empty());
    CHECK(col[map.slot_at(1, 1).a_pos - 1] == Color::Red);
}

TEST_CASE("encode and extract round trip") {
    auto [f, plant] = planted_random_3sat(6, 9, 31);
    auto [inst, map] = reduce(f);
    Coloring col = encode_coloring(map, plant);
    CHECK(verify(inst, col).violated.empty());
    Assignment back = extract_assignment(map, col);
    CHECK(eval_unsat(f, back).empty());
    // identical on occurring variables
    std::set<int> occurring;
    for (const auto& s : map.slots) occurring.insert(s.var);
    for (int v : occurring) CHECK(back.values[v - 1] == plant.values[v - 1]);

    // encoding an unsatisfying assignment is refused
    CnfFormula g = formula(3, {{1, 2, 3}});
    auto [gi, gm] = reduce(g);
    CHECK_THROWS_AS(encode_coloring(gm, assignment({false, false, false})), InputError);
}

TEST_CASE("strict extraction detects disagreeing occurrences") {
    auto f = formula(5, {{1, 2, 3}, {1, 4, 5}});
    auto [inst, map] = reduce(f);
    Coloring col = encode_coloring(map, assignment({true, false, false, true, false}));
    // force the two t nodes of x1 apart
    const LiteralSlot& s2 = map.slot_at(2, 1);
    Color& t2 = col[s2.t_pos - 1];
    t2 = t2 == Color::Black ? Color::White : Color::Black;
    CHECK_THROWS_AS(extract_assignment(map, col), InputError);
}

TEST_CASE("equisatisfiability spot checks") {
    // single-clause formulas over all eight sign patterns
    for (int m = 0; m < 8; ++m) {
        auto f = formula(3, {{(m & 1) ? 1 : -1, (m & 2) ? 2 : -2, (m & 4) ? 3 : -3}});
        auto [inst, map] = reduce(f);
        auto enc = encode_to_cnf(inst);
        CHECK(solve_dpll(enc.cnf).status == SatStatus::Sat);
    }
}

TEST_CASE("same-variable t nodes agree in every feasible coloring") {
    // minimal shared-variable instance: two literal blocks joined by one
    // variable interval, exhaustively enumerable
    const GadgetLayout& L = infer_gadget_layouts();
    Instance inst;
    inst.n = 16;
    for (int rep = 0; rep < 2; ++rep)
        for (int i = 0; i < 6; ++i)
            inst.intervals.push_back({0, L.lit[i].lo + 8 * rep, L.lit[i].hi + 8 * rep,
                                      L.lit[i].req});
    int f1 = L.lit_f, t2 = 8 + L.lit_t;
    auto z = partition_sum(inst.intervals, f1 + 1, t2 - 1);
    inst.intervals.push_back({0, f1, t2,
                              {static_cast<int>(z[0]), static_cast<int>(z[1]) + 1,
                               static_cast<int>(z[2]) + 1}});
    for (size_t i = 0; i < inst.intervals.size(); ++i)
        inst.intervals[i].id = static_cast<int>(i) + 1;

    int count = 0;
    for_each_feasible(inst, [&](const Coloring& col) {
        ++count;
        CHECK(col[L.lit_t - 1] == col[8 + L.lit_t - 1]);
        return true;
    });
    CHECK(count > 0);
}
