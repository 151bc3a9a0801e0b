#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "icc3/core.hpp"
#include "icc3/io.hpp"

namespace icc3 {

struct SolveStats {
    uint64_t nodes = 0;         // decision points expanded
    uint64_t propagations = 0;  // forced single-color assignments
    uint64_t budget_used = 0;
};

struct SolveOutcome {
    SolveStatus status = SolveStatus::Unknown;
    std::optional<Coloring> witness;
    SolveStats stats;
};

inline constexpr uint64_t kNoBudget = ~0ull;

// Left-to-right count-propagating backtracking. FEASIBLE witnesses are
// verified before being returned; INFEASIBLE only after exhaustive search;
// UNKNOWN only on budget exhaustion (budget counts decision nodes).
SolveOutcome solve_backtracking(const Instance& inst, uint64_t budget = kNoBudget);

// All feasible colorings in lexicographic order (codes R=1 < B=2 < W=3).
// Throws CapacityError if more than `limit` exist.
std::vector<Coloring> enumerate_colorings(const Instance& inst, size_t limit);

// Callback enumeration; return false to stop early. Returns number visited.
uint64_t for_each_feasible(const Instance& inst, const std::function<bool(const Coloring&)>& fn);

// Exact maximum number of simultaneously satisfied intervals over all 3^n
// colorings (n <= 15), lexicographic tie-break.
std::pair<Coloring, int> max_satisfy_brute(const Instance& inst);

}  // namespace icc3
