#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "icc3/errors.hpp"

namespace icc3 {

// Color codes are fixed: 1 = RED, 2 = BLACK, 3 = WHITE.
enum class Color : uint8_t { Red = 1, Black = 2, White = 3 };

inline int code(Color c) { return static_cast<int>(c); }
inline Color color_from_code(int v) {
    if (v < 1 || v > 3) throw InputError("color code outside alphabet: " + std::to_string(v));
    return static_cast<Color>(v);
}

using Coloring = std::vector<Color>;
using ReqTriple = std::array<int, 3>;  // (RED, BLACK, WHITE) counts

struct Interval {
    int id = 0;
    int lo = 0;  // 1-based, inclusive
    int hi = 0;  // 1-based, inclusive
    ReqTriple req{0, 0, 0};

    int length() const { return hi - lo + 1; }
    int req_sum() const { return req[0] + req[1] + req[2]; }
    bool consistent() const { return req_sum() == length(); }
};

struct Instance {
    int n = 0;
    int k = 3;
    std::vector<Interval> intervals;
};

struct VerifyReport {
    std::vector<int> violated;                // interval ids, ascending
    int satisfied_count = 0;
    std::vector<ReqTriple> deltas;            // actual - required, per violated interval
};

// ids of intervals whose requirement does not sum to the interval length
std::vector<int> check_consistency(const Instance& inst);

// exact per-interval recount; throws InputError on length mismatch
VerifyReport verify(const Instance& inst, const Coloring& col);

ReqTriple count_colors(const Coloring& col, int lo, int hi);

// throws InputError when the instance is structurally broken (spans outside
// [1,n], non-contiguous ids, negative counts)
void validate_structure(const Instance& inst);

// Synthetic feasible instance in the style of fragment mass-uptake data: a
// hidden coloring is drawn, fragments are random intervals, and each
// requirement is the hidden coloring's true count.
std::pair<Instance, Coloring> random_hdx_instance(int chain_length, int fragment_count,
                                                  int min_len, int max_len, uint64_t seed);

}  // namespace icc3
