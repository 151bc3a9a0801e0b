#pragma once

#include <cstdint>
#include <vector>

#include "icc3/core.hpp"
#include "icc3/solver.hpp"

namespace icc3 {

// General-arity CNF used by the internal DPLL engine (signed DIMACS literals).
struct GeneralCnf {
    int var_count = 0;
    std::vector<std::vector<int>> clauses;
};

// One-hot position/color encoding plus exactly-r sequential counter chains per
// interval (two of the three colors; the third is implied by consistency).
// Redundant implied constraints derived by interval algebra (difference pairs,
// small union/difference sets, disjoint-pair counting cuts) are added for
// propagation strength; they do not change the model set.
struct CnfEncoding {
    GeneralCnf cnf;
    int n = 0;          // positions
    int aux_count = 0;  // counter variables
    int var_of(int pos, Color c) const { return (pos - 1) * 3 + static_cast<int>(c); }
};

enum class SatStatus { Sat, Unsat, Unknown };

struct SatResult {
    SatStatus status = SatStatus::Unknown;
    std::vector<uint8_t> model;  // index var-1, 0/1; valid when Sat
    SolveStats stats;
};

CnfEncoding encode_to_cnf(const Instance& inst);

// Iterative DPLL: mandatory unit propagation, branching on the lowest-index
// unassigned variable, false first. Budget counts decisions.
SatResult solve_dpll(const GeneralCnf& cnf, uint64_t budget = kNoBudget);

// Requires the model to satisfy the one-hot constraints; InternalError otherwise.
Coloring decode_model(const CnfEncoding& enc, const std::vector<uint8_t>& model);

}  // namespace icc3
