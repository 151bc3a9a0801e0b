#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "icc3/cnf.hpp"
#include "icc3/core.hpp"
#include "icc3/layout.hpp"
#include "icc3/rational.hpp"

namespace icc3 {

struct LiteralSlot {
    int clause = 0;  // 1-based
    int slot = 0;    // 1..3
    int var = 0;
    bool negated = false;
    int lo = 0, hi = 0;          // absolute span of the literal's node block
    int t_pos = 0, f_pos = 0;    // absolute special nodes
    int a_pos = 0;               // slot 2: left activity node
    int a2_pos = 0;              // slot 2 only: right activity node, else 0
};

struct VariableIntervalRecord {
    int var = 0;
    int from_clause = 0, from_slot = 0;  // earlier occurrence (f side)
    int to_clause = 0, to_slot = 0;      // later occurrence (t side)
    int outer_id = 0;
    int inner_id = 0;  // 0 when the link has no internal nodes (gap mode only otherwise)
    std::array<long long, 3> z{0, 0, 0};
};

enum class ExpanderMethod { RandomRegular, Clique, PathFallback };

std::string method_name(ExpanderMethod m);
ExpanderMethod method_from_name(const std::string& s);

struct ExpanderRecord {
    int var = 0;
    int n = 0;
    int d = 0;
    Rational h;
    ExpanderMethod method = ExpanderMethod::PathFallback;
};

struct ReductionMap {
    CnfFormula source;
    std::string layout_name;
    int layout_version = 0;
    int clause_nodes = 0;
    int per_clause_intervals = 0;
    int c_const = 0;  // max intervals attributable to one clause
    std::vector<std::pair<int, int>> clause_spans;  // absolute [lo,hi] per clause
    std::vector<LiteralSlot> slots;                 // ordered by (clause, slot)
    std::vector<VariableIntervalRecord> links;
    bool gap_mode = false;
    std::vector<ExpanderRecord> expanders;  // gap mode only

    const LiteralSlot& slot_at(int clause, int slot) const;
};

// Componentwise requirement sum of a subset of existing intervals that exactly
// tiles [lo,hi]. All tilings found must agree; disagreement or absence of a
// tiling is an InternalError (layout bug).
std::array<long long, 3> partition_sum(const std::vector<Interval>& intervals, int lo, int hi);

// One clause block instantiated at absolute node offset `origin` (0-based).
// Returns the intervals (ids not yet assigned) and the three literal slots.
std::pair<std::vector<Interval>, std::array<LiteralSlot, 3>> build_clause_block(
    const Clause& cl, int clause_index, const GadgetLayout& layout, int origin);

// All-pairs variable intervals (plain mode). Appends to `inst` and returns records.
std::vector<VariableIntervalRecord> build_variable_intervals(Instance& inst,
                                                             const std::vector<LiteralSlot>& slots);

std::pair<Instance, ReductionMap> reduce(const CnfFormula& f);

// Completeness direction: a feasible coloring from a satisfying assignment.
Coloring encode_coloring(const ReductionMap& map, const Assignment& a);

// Soundness direction, strict mode: reads each variable off its occurrences'
// t nodes, asserting agreement. Intended for verified-feasible colorings.
Assignment extract_assignment(const ReductionMap& map, const Coloring& col);

std::string emit_map(const ReductionMap& map);
ReductionMap parse_map(const std::string& text);

}  // namespace icc3
