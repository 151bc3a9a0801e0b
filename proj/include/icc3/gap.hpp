#pragma once

#include <cstdint>
#include <vector>

#include "icc3/cnf.hpp"
#include "icc3/core.hpp"
#include "icc3/rational.hpp"
#include "icc3/reduction.hpp"

namespace icc3 {

struct GapParams {
    int d0 = 0;
    Rational h0;         // minimum certified expansion over used graphs
    long long c = 0;     // per-clause interval constant from the map
    Rational eps0;       // source gap
    Rational eps;        // derived target gap
    Rational threshold;  // satisfied-constraint threshold t = (1-eps)*m
};

struct AuditReport {
    long long violated = 0;  // V
    long long broken_clauses = 0;
    long long broken_links = 0;
    long long bad_clauses = 0;
    Rational bound;  // (1 + 3*d0/h0) * V
    long long unsat_phi = 0;
    bool holds = false;
};

struct GapResult {
    Instance inst;
    ReductionMap map;
    GapParams params;
};

Rational compute_epsilon(int d0, const Rational& h0, long long c, const Rational& eps0);

// Clause blocks as in reduce(); per variable one expander over its
// occurrences; per edge a variable link = outer interval plus the
// one-shorter inner interval over exactly the internal nodes.
GapResult gap_reduce(const CnfFormula& f, int d, const Rational& target_h, uint64_t seed,
                     const Rational& eps0);

// Majority witness over displays in non-broken clauses; ties and undisplayed
// variables go to false.
Assignment majority_extract(const ReductionMap& map, const Coloring& col);

AuditReport soundness_audit(const ReductionMap& map, const Instance& inst, const Coloring& col,
                            const GapParams& params);

std::string emit_audit(const AuditReport& r);

}  // namespace icc3
