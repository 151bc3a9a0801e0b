#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "icc3/core.hpp"

namespace icc3 {

struct Literal {
    int var = 0;  // 1-based
    bool negated = false;
};

struct Clause {
    std::array<Literal, 3> lits;
};

struct CnfFormula {
    int var_count = 0;  // p
    std::vector<Clause> clauses;
};

struct Assignment {
    std::vector<bool> values;  // index var-1

    bool value(int var) const { return values[var - 1]; }
    bool eval(const Literal& l) const { return values[l.var - 1] != l.negated; }
};

// DIMACS CNF restricted to exactly-3-literal clauses over distinct variables.
CnfFormula parse_dimacs(const std::string& text);
std::string emit_dimacs(const CnfFormula& f);

// "a <±var> ... 0" single line
Assignment parse_assignment(const std::string& text, int var_count);
std::string emit_assignment(const Assignment& a);

// 1-based indices of clauses with all three literals false
std::vector<int> eval_unsat(const CnfFormula& f, const Assignment& a);

// Clauses drawn with three distinct variables and resampled until the planted
// assignment satisfies them; deterministic in seed.
std::pair<CnfFormula, Assignment> planted_random_3sat(int p, int q, uint64_t seed);

// Exhaustive over 2^p (p <= 24), lexicographically first model, false < true.
std::optional<Assignment> brute_force_sat(const CnfFormula& f);

// Exact maximum satisfied-clause count over 2^p, lexicographic tie-break.
std::pair<Assignment, int> max_sat_brute(const CnfFormula& f);

}  // namespace icc3
