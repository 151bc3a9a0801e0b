#pragma once

#include <array>
#include <string>
#include <vector>

#include "icc3/core.hpp"

namespace icc3 {

// Block-relative interval span with its canonical-polarity requirement.
struct TemplateInterval {
    int lo = 0;
    int hi = 0;
    ReqTriple req{0, 0, 0};
};

inline ReqTriple swap_bw(const ReqTriple& r) { return {r[0], r[2], r[1]}; }
inline Color swap_bw(Color c) {
    if (c == Color::Black) return Color::White;
    if (c == Color::White) return Color::Black;
    return c;
}

// Literal-gadget and clause-assembly geometry, inferred once by constrained
// search and validated by enumeration before use.
//
// A clause occupies `clause_len` consecutive nodes:
//   [first literal block 8][13 fillers][18-node middle block][15 fillers][third literal block 8]
// The middle block is a mirrored copy of the literal template, the t2 node,
// a plain copy, then the f2 node.
struct GadgetLayout {
    std::string name = "searched";
    int version = 1;

    // base literal template (canonical = positive first-slot literal), 8 nodes
    std::array<TemplateInterval, 6> lit;
    int lit_t = 0, lit_f = 0, lit_a = 0;                  // block offsets, 1-based
    std::array<std::array<Color, 8>, 3> lit_outcomes{};   // lex order
    int active_outcome = -1;    // a = RED, t = BLACK
    int inactive_outcome = -1;  // t = WHITE

    // mirrored template (canonical = negated third-slot literal); t/f roles swap
    std::array<TemplateInterval, 6> mir;
    int mir_t = 0, mir_f = 0, mir_a = 0;
    std::array<std::array<Color, 8>, 3> mir_outcomes{};

    // middle-slot core, 18 nodes, canonical = negated literal;
    // 14 intervals: 6 mirrored + 6 plain + 3-node t2 interval + whole-core interval
    std::array<TemplateInterval, 14> core;
    int core_t = 0, core_f = 0, core_al = 0, core_ar = 0;  // offsets within the 18
    struct CoreOutcome {
        std::array<Color, 18> col;
        bool al_red = false, ar_red = false;
        Color t2 = Color::Black;
    };
    std::vector<CoreOutcome> core_outcomes;
    // encoding pattern indices into core_outcomes (canonical polarity):
    // literal true / literal and first literal both false / otherwise
    int core_pattern_true = -1;
    int core_pattern_both_false = -1;
    int core_pattern_other = -1;

    // clause assembly offsets (1-based within the clause span)
    int clause_len = 0;
    int slot1_off = 0, v_off = 0, core_off = 0, w_off = 0, slot3_off = 0;
    std::array<TemplateInterval, 6> clause_intervals;  // clause-relative spans

    int per_clause_intervals() const { return 6 + 14 + 6 + 6; }

    // absolute special-node offsets within a clause
    int t_of_slot(int slot) const;
    int f_of_slot(int slot) const;
    int a_of_slot(int slot) const;    // slot 2: left activity node
    int a2r_of_clause() const { return core_off - 1 + core_ar; }
};

// Deterministic layout inference: scans a fixed candidate order and returns
// the first layout that passes every property check (exact outcome counts,
// special-node behaviour, tilings, middle-block and clause-level validation
// over all polarities). Result is cached for the process lifetime.
// Throws InternalError naming the violated property if no candidate passes.
const GadgetLayout& infer_gadget_layouts();

// The 32 intervals of one clause block at absolute origin (0-based), ids unset.
// negX = literal in slot X is negated.
std::vector<Interval> instantiate_clause_intervals(const GadgetLayout& L, bool neg1, bool neg2,
                                                   bool neg3, int origin);

}  // namespace icc3
