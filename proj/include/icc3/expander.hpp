#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "icc3/rational.hpp"
#include "icc3/reduction.hpp"

namespace icc3 {

// Undirected multigraph; parallel edges allowed, self-loops forbidden.
struct Multigraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // 1-based endpoints

    std::vector<int> degrees() const;
    bool connected() const;
};

struct ExpanderCert {
    int d = 0;
    double lambda2 = 0.0;
    double h_spectral = 0.0;
    std::optional<Rational> h_exact;  // n <= 16 only
    Rational h_bound;                 // certified lower bound used downstream
    ExpanderMethod method = ExpanderMethod::PathFallback;
};

// Exact edge expansion min over nonempty S, |S| <= n/2 (n <= 20).
Rational edge_expansion_exact(const Multigraph& g);

// (d - lambda2)/2 via deterministic power iteration with deflation.
// Requires a connected d-regular graph.
double expansion_lower_bound_spectral(const Multigraph& g);

// n <= 2: path fallback (empty graph / single edge); n <= d+1: clique;
// otherwise seeded random d-regular multigraph from d/2 fixed-point-free
// permutations, retried until the certificate meets target_h.
std::pair<Multigraph, ExpanderCert> build_expander(int n, int d, const Rational& target_h,
                                                   uint64_t seed, int retries = 64);

}  // namespace icc3
