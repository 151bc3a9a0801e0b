#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "icc3/cnf.hpp"

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

CnfFormula all_sign_patterns() {
    std::vector<std::array<int, 3>> cls;
    for (int m = 0; m < 8; ++m)
        cls.push_back({(m & 1) ? 1 : -1, (m & 2) ? 2 : -2, (m & 4) ? 3 : -3});
    return formula(3, cls);
}

}  // namespace

TEST_CASE("dimacs subset") {
    CnfFormula f = parse_dimacs("p cnf 3 1\n1 -2 3 0\n");
    CHECK(f.var_count == 3);
    CHECK(f.clauses.size() == 1);
    CHECK(f.clauses[0].lits[1].var == 2);
    CHECK(f.clauses[0].lits[1].negated);
    CHECK(emit_dimacs(f) == "p cnf 3 1\n1 -2 3 0\n");
    CHECK(emit_dimacs(parse_dimacs(emit_dimacs(f))) == emit_dimacs(f));

    CHECK_THROWS_AS(parse_dimacs("p cnf 3 1\n1 1 2 0\n"), ParseError);   // duplicate variable
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 -2 3 0\n"), ParseError);  // var > p
    CHECK_THROWS_AS(parse_dimacs("p cnf 3 1\n1 2 0\n"), ParseError);     // arity
    CHECK_THROWS_AS(parse_dimacs("p cnf 3 2\n1 2 3 0\n"), ParseError);   // count mismatch
}

TEST_CASE("assignment line format") {
    Assignment a = parse_assignment("a 1 -2 3 0\n", 3);
    CHECK(a.values == std::vector<bool>{true, false, true});
    CHECK(emit_assignment(a) == "a 1 -2 3 0\n");
    CHECK_THROWS_AS(parse_assignment("a 1 -2 0\n", 3), ParseError);  // missing var 3
    CHECK_THROWS_AS(parse_assignment("a 1 -2 3\n", 3), ParseError);  // unterminated
}

TEST_CASE("eval lists exactly the all-false clauses") {
    auto f = formula(3, {{1, 2, 3}});
    Assignment all_true{{true, true, true}};
    Assignment all_false{{false, false, false}};
    CHECK(eval_unsat(f, all_true).empty());
    CHECK(eval_unsat(f, all_false) == std::vector<int>{1});

    auto g = formula(3, {{1, -2, 3}});
    Assignment a{{false, true, false}};
    CHECK(eval_unsat(g, a) == std::vector<int>{1});
}

TEST_CASE("planted generator output is satisfied by its plant") {
    {
        auto [f, plant] = planted_random_3sat(3, 1, 5);
        CHECK(eval_unsat(f, plant).empty());
    }
    {
        auto [f, plant] = planted_random_3sat(10, 40, 1);
        CHECK(f.clauses.size() == 40);
        CHECK(eval_unsat(f, plant).empty());
        for (const Clause& cl : f.clauses) {
            CHECK(cl.lits[0].var != cl.lits[1].var);
            CHECK(cl.lits[0].var != cl.lits[2].var);
            CHECK(cl.lits[1].var != cl.lits[2].var);
        }
    }
    {
        auto [f1, p1] = planted_random_3sat(6, 12, 77);
        auto [f2, p2] = planted_random_3sat(6, 12, 77);
        CHECK(emit_dimacs(f1) == emit_dimacs(f2));
        CHECK(p1.values == p2.values);
    }
    CHECK_THROWS_AS(planted_random_3sat(2, 1, 0), InputError);
}

TEST_CASE("brute-force SAT oracle") {
    auto sat = brute_force_sat(formula(3, {{1, 2, 3}}));
    REQUIRE(sat.has_value());
    // lexicographically first with false < true
    CHECK(sat->values == std::vector<bool>{false, false, true});

    CHECK_FALSE(brute_force_sat(all_sign_patterns()).has_value());

    CnfFormula empty;
    empty.var_count = 3;
    auto e = brute_force_sat(empty);
    REQUIRE(e.has_value());
    CHECK(e->values == std::vector<bool>{false, false, false});

    CnfFormula big;
    big.var_count = 25;
    CHECK_THROWS_AS(brute_force_sat(big), CapacityError);
}

TEST_CASE("max-sat brute oracle") {
    {
        auto [f, plant] = planted_random_3sat(5, 8, 3);
        auto [a, count] = max_sat_brute(f);
        CHECK(count == 8);
        CHECK(eval_unsat(f, a).empty());
    }
    {
        auto [a, count] = max_sat_brute(all_sign_patterns());
        CHECK(count == 7);
    }
    {
        CnfFormula empty;
        empty.var_count = 4;
        auto [a, count] = max_sat_brute(empty);
        CHECK(count == 0);
    }
}

TEST_CASE("sat iff max count equals clause count") {
    for (uint64_t seed = 0; seed < 12; ++seed) {
        auto [f, plant] = planted_random_3sat(4 + seed % 5, 3 + seed % 7, seed * 31 + 7);
        bool sat = brute_force_sat(f).has_value();
        auto [a, count] = max_sat_brute(f);
        CHECK(sat == (count == static_cast<int>(f.clauses.size())));
    }
    auto f = all_sign_patterns();
    CHECK_FALSE(brute_force_sat(f).has_value());
    CHECK(max_sat_brute(f).second < static_cast<int>(f.clauses.size()));
}
