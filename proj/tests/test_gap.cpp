#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "icc3/expander.hpp"
#include "icc3/gap.hpp"
#include "icc3/rng.hpp"
#include "icc3/solver.hpp"

using namespace icc3;

namespace {

Multigraph clique(int n) {
    Multigraph g;
    g.n = n;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v) g.edges.push_back({u, v});
    return g;
}

Multigraph cycle(int n) {
    Multigraph g;
    g.n = n;
    for (int i = 1; i <= n; ++i) g.edges.push_back({i, i % n + 1});
    return g;
}

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

}  // namespace

TEST_CASE("exact edge expansion") {
    CHECK(edge_expansion_exact(clique(4)) == Rational(2));
    CHECK(edge_expansion_exact(cycle(6)) == Rational(2, 3));
    Multigraph k2;
    k2.n = 2;
    k2.edges = {{1, 2}};
    CHECK(edge_expansion_exact(k2) == Rational(1));

    Multigraph big;
    big.n = 21;
    CHECK_THROWS_AS(edge_expansion_exact(big), CapacityError);
}

TEST_CASE("spectral lower bound") {
    CHECK(expansion_lower_bound_spectral(clique(4)) == doctest::Approx(2.0).epsilon(1e-7));
    CHECK(expansion_lower_bound_spectral(cycle(6)) == doctest::Approx(0.5).epsilon(1e-7));
    Multigraph k2;
    k2.n = 2;
    k2.edges = {{1, 2}};
    CHECK(expansion_lower_bound_spectral(k2) == doctest::Approx(1.0).epsilon(1e-9));

    Multigraph irregular;
    irregular.n = 3;
    irregular.edges = {{1, 2}};
    CHECK_THROWS_AS(expansion_lower_bound_spectral(irregular), InputError);

    // Cheeger direction: exact expansion dominates the spectral bound
    for (int n = 4; n <= 10; ++n) {
        auto g = cycle(n);
        CHECK(edge_expansion_exact(g).value() >= expansion_lower_bound_spectral(g) - 1e-9);
    }
}

TEST_CASE("expander construction and fallbacks") {
    {
        auto [g, cert] = build_expander(1, 4, Rational(1), 0);
        CHECK(g.edges.empty());
        CHECK(cert.method == ExpanderMethod::PathFallback);
    }
    {
        auto [g, cert] = build_expander(2, 4, Rational(1), 0);
        CHECK(g.edges.size() == 1);
        CHECK(cert.method == ExpanderMethod::PathFallback);
        CHECK(cert.h_bound == Rational(1));
    }
    {
        auto [g, cert] = build_expander(3, 4, Rational(1), 0);
        CHECK(cert.method == ExpanderMethod::Clique);
        CHECK(cert.h_bound == Rational(2));
        CHECK(*cert.h_exact == Rational(2));
    }
    {
        auto [g, cert] = build_expander(12, 4, Rational(1), 5);
        CHECK(cert.method == ExpanderMethod::RandomRegular);
        CHECK(cert.h_bound >= Rational(1));
        auto deg = g.degrees();
        for (int d : deg) CHECK(d == 4);
        // deterministic in seed
        auto [g2, cert2] = build_expander(12, 4, Rational(1), 5);
        CHECK(g.edges == g2.edges);
    }
    CHECK_THROWS_AS(build_expander(10, 3, Rational(1), 1), InputError);    // odd degree
    CHECK_THROWS_AS(build_expander(12, 4, Rational(100), 1), InputError);  // unreachable target
}

TEST_CASE("epsilon formula") {
    CHECK(compute_epsilon(3, Rational(3), 1, Rational(1)) == Rational(1, 4));
    CHECK(compute_epsilon(4, Rational(1), 60, Rational(1, 8)) == Rational(1, 6240));
    CHECK_THROWS_AS(compute_epsilon(4, Rational(0), 60, Rational(1, 8)), InputError);

    // monotone in each argument
    Rational base = compute_epsilon(4, Rational(1), 32, Rational(1, 8));
    CHECK(compute_epsilon(4, Rational(2), 32, Rational(1, 8)) > base);
    CHECK(compute_epsilon(4, Rational(1), 32, Rational(1, 4)) > base);
    CHECK(compute_epsilon(6, Rational(1), 32, Rational(1, 8)) < base);
    CHECK(compute_epsilon(4, Rational(1), 64, Rational(1, 8)) < base);
}

TEST_CASE("gap reduction links and completeness") {
    auto [f, plant] = planted_random_3sat(5, 6, 21);
    auto gr = gap_reduce(f, 4, Rational(1), 17, Rational(1, 8));
    CHECK(check_consistency(gr.inst).empty());
    CHECK(gr.params.d0 == 4);
    CHECK(gr.params.c == 32);
    CHECK(gr.params.eps == compute_epsilon(4, gr.params.h0, 32, Rational(1, 8)));

    // link linearity
    CHECK(gr.map.links.size() <= (4 / 2 + 1) * gr.map.slots.size());

    // completeness: the planted witness encodes feasibly, inner intervals included
    Coloring w = encode_coloring(gr.map, plant);
    CHECK(verify(gr.inst, w).violated.empty());
    for (const auto& link : gr.map.links) {
        if (link.inner_id == 0) continue;
        const Interval& inner = gr.inst.intervals[link.inner_id - 1];
        auto counts = count_colors(w, inner.lo, inner.hi);
        CHECK(counts == inner.req);
    }

    // a variable with two occurrences gets exactly one link
    auto g2 = gap_reduce(formula(5, {{1, 2, 3}, {1, 4, 5}}), 4, Rational(1), 3, Rational(1, 8));
    int x1_links = 0;
    for (const auto& r : g2.map.links)
        if (r.var == 1) ++x1_links;
    CHECK(x1_links == 1);
    for (const auto& e : g2.map.expanders)
        if (e.var == 1) CHECK(e.method == ExpanderMethod::PathFallback);
}

TEST_CASE("parallel expander edges become distinct duplicate links") {
    // find a seed whose random 4-regular multigraph on 6 vertices has a
    // parallel edge, then check the link records stay separate
    uint64_t seed = 0;
    bool found = false;
    for (uint64_t s = 0; s < 200 && !found; ++s) {
        auto [g, cert] = build_expander(6, 4, Rational(0), s);
        for (size_t i = 1; i < g.edges.size(); ++i)
            if (g.edges[i] == g.edges[i - 1]) {
                found = true;
                seed = s;
                break;
            }
    }
    REQUIRE(found);
    // x1 occurs in six clauses
    std::vector<std::array<int, 3>> cls;
    for (int i = 0; i < 6; ++i) cls.push_back({1, 2 + 2 * i, 3 + 2 * i});
    auto f = formula(13, cls);

    // gap_reduce derives per-variable seeds from the master seed; search for
    // a master seed that reproduces a parallel edge for x1
    bool dup = false;
    for (uint64_t master = 0; master < 200 && !dup; ++master) {
        auto gr = gap_reduce(f, 4, Rational(0), master, Rational(1, 8));
        std::map<std::tuple<int, int, int, int, int>, int> seen;
        for (const auto& r : gr.map.links) {
            if (r.var != 1) continue;
            auto key = std::make_tuple(r.var, r.from_clause, r.from_slot, r.to_clause, r.to_slot);
            seen[key]++;
        }
        for (auto& [k, count] : seen)
            if (count >= 2) {
                dup = true;
                // duplicates carry distinct interval ids
                std::set<int> ids;
                for (const auto& r : gr.map.links)
                    if (r.var == 1) ids.insert(r.outer_id);
                CHECK(ids.size() >= 2);
            }
    }
    CHECK(dup);
}

TEST_CASE("majority extraction") {
    auto [f, plant] = planted_random_3sat(4, 5, 8);
    auto gr = gap_reduce(f, 4, Rational(1), 2, Rational(1, 8));
    Coloring w = encode_coloring(gr.map, plant);

    // on a feasible coloring the majority equals the strict extraction
    Assignment strict = extract_assignment(gr.map, w);
    Assignment maj = majority_extract(gr.map, w);
    CHECK(strict.values == maj.values);

    // all-RED breaks every clause; ties and silence default to false
    Coloring red(gr.inst.n, Color::Red);
    Assignment none = majority_extract(gr.map, red);
    for (bool v : none.values) CHECK_FALSE(v);

    // corrupting one clause block removes its occurrences from the vote
    Coloring damaged = w;
    for (int p = gr.map.clause_spans[0].first; p <= gr.map.clause_spans[0].second; ++p)
        damaged[p - 1] = Color::Red;
    Assignment dmaj = majority_extract(gr.map, damaged);
    (void)dmaj;  // no exception; remaining occurrences still vote

    // a broken clause's flipped display is excluded from the majority
    auto f2 = formula(5, {{1, 2, 3}, {1, 4, 5}});
    auto g2 = gap_reduce(f2, 4, Rational(1), 6, Rational(1, 8));
    Assignment a2;
    a2.values = {true, false, false, false, false};
    Coloring w2 = encode_coloring(g2.map, a2);
    const LiteralSlot& s = g2.map.slot_at(1, 1);
    Coloring bad = w2;
    bad[s.t_pos - 1] = Color::White;  // breaks clause 1 and flips its display
    Assignment m2 = majority_extract(g2.map, bad);
    CHECK(m2.values[0] == true);  // clause 2's vote decides
}

TEST_CASE("soundness audit accounting") {
    auto [f, plant] = planted_random_3sat(5, 6, 4);
    auto gr = gap_reduce(f, 4, Rational(1), 11, Rational(1, 8));
    Coloring w = encode_coloring(gr.map, plant);

    auto clean = soundness_audit(gr.map, gr.inst, w, gr.params);
    CHECK(clean.violated == 0);
    CHECK(clean.bound == Rational(0));
    CHECK(clean.unsat_phi == 0);
    CHECK(clean.holds);
    CHECK(emit_audit(clean) ==
          "g V 0 broken_clauses 0 broken_links 0 bad 0 bound 0 unsat_phi 0 holds 1\n");

    // every single-position flip keeps the inequality
    Rng rng(5);
    for (int t = 0; t < 40; ++t) {
        Coloring flip = w;
        size_t pos = rng.below(flip.size());
        int delta = 1 + static_cast<int>(rng.below(2));
        flip[pos] = static_cast<Color>(1 + (code(flip[pos]) - 1 + delta) % 3);
        auto rep = soundness_audit(gr.map, gr.inst, flip, gr.params);
        CHECK(rep.violated >= 1);
        CHECK(rep.holds);
        CHECK(rep.broken_clauses <= rep.violated);
    }

    // random colorings
    for (int t = 0; t < 100; ++t) {
        Coloring col(gr.inst.n);
        for (auto& c : col) c = static_cast<Color>(1 + rng.below(3));
        CHECK(soundness_audit(gr.map, gr.inst, col, gr.params).holds);
    }

    GapParams wrong = gr.params;
    wrong.c += 1;
    CHECK_THROWS_AS(soundness_audit(gr.map, gr.inst, w, wrong), InputError);
}
