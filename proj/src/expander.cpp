#include "icc3/expander.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "icc3/rng.hpp"

namespace icc3 {

std::vector<int> Multigraph::degrees() const {
    std::vector<int> deg(n, 0);
    for (auto [u, v] : edges) {
        deg[u - 1]++;
        deg[v - 1]++;
    }
    return deg;
}

bool Multigraph::connected() const {
    if (n <= 1) return true;
    std::vector<std::vector<int>> adj(n);
    for (auto [u, v] : edges) {
        adj[u - 1].push_back(v - 1);
        adj[v - 1].push_back(u - 1);
    }
    std::vector<bool> vis(n, false);
    std::vector<int> stack{0};
    vis[0] = true;
    int seen = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : adj[x])
            if (!vis[y]) {
                vis[y] = true;
                ++seen;
                stack.push_back(y);
            }
    }
    return seen == n;
}

Rational edge_expansion_exact(const Multigraph& g) {
    if (g.n < 2) throw InputError("edge expansion needs at least 2 vertices");
    if (g.n > 20) throw CapacityError("exact edge expansion capacity is n <= 20");
    for (auto [u, v] : g.edges)
        if (u < 1 || u > g.n || v < 1 || v > g.n || u == v)
            throw InputError("bad edge in multigraph");
    int half = g.n / 2;
    Rational best;
    bool have = false;
    for (uint32_t mask = 1; mask < (1u << g.n); ++mask) {
        int size = __builtin_popcount(mask);
        if (size > half) continue;
        long long cut = 0;
        for (auto [u, v] : g.edges) {
            bool iu = (mask >> (u - 1)) & 1, iv = (mask >> (v - 1)) & 1;
            if (iu != iv) ++cut;
        }
        Rational h(cut, size);
        if (!have || h < best) {
            best = h;
            have = true;
        }
    }
    return best;
}

double expansion_lower_bound_spectral(const Multigraph& g) {
    if (g.n < 2) throw InputError("spectral bound needs at least 2 vertices");
    auto deg = g.degrees();
    int d = deg[0];
    for (int x : deg)
        if (x != d) throw InputError("graph is not regular");
    if (!g.connected()) throw InputError("graph is not connected");

    // Full symmetric eigensolve by cyclic Jacobi rotations. A one-sided power
    // iteration cannot certify the second eigenvalue from above (a start
    // vector nearly orthogonal to its eigenspace stalls on a smaller one and
    // would overstate the expansion bound), so the whole spectrum is taken.
    int n = g.n;
    std::vector<double> a(static_cast<size_t>(n) * n, 0.0);
    for (auto [u, v] : g.edges) {
        a[static_cast<size_t>(u - 1) * n + (v - 1)] += 1.0;
        a[static_cast<size_t>(v - 1) * n + (u - 1)] += 1.0;
    }
    auto at = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };

    constexpr double kTol = 1e-12;
    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
        if (off < kTol * kTol) break;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                double apq = at(p, q);
                if (std::abs(apq) < 1e-300) continue;
                double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i) eig[i] = at(i, i);
    std::sort(eig.begin(), eig.end(), std::greater<double>());
    double lambda2 = eig[1];
    return (d - lambda2) / 2.0;
}

namespace {

Rational rationalize_floor(double x) {
    if (x <= 0) return Rational(0);
    const long long grid = 1 << 20;
    double scaled = std::floor(x * static_cast<double>(grid));
    return Rational(static_cast<long long>(scaled), grid);
}

ExpanderCert certify(const Multigraph& g, ExpanderMethod method) {
    ExpanderCert cert;
    cert.method = method;
    auto deg = g.degrees();
    cert.d = deg.empty() ? 0 : deg[0];
    if (g.n >= 2) {
        cert.h_spectral = expansion_lower_bound_spectral(g);  // also checks regular+connected
        cert.lambda2 = cert.d - 2.0 * cert.h_spectral;
    }
    if (g.n <= 16 && g.n >= 2) {
        cert.h_exact = edge_expansion_exact(g);
        cert.h_bound = *cert.h_exact;
    } else if (g.n >= 2) {
        cert.h_bound = rationalize_floor(cert.h_spectral - 1e-9);
    } else {
        cert.h_bound = Rational(0);
    }
    return cert;
}

Multigraph clique(int n) {
    Multigraph g;
    g.n = n;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v) g.edges.push_back({u, v});
    return g;
}

}  // namespace

std::pair<Multigraph, ExpanderCert> build_expander(int n, int d, const Rational& target_h,
                                                   uint64_t seed, int retries) {
    if (n < 1) throw InputError("expander needs n >= 1");
    if (n == 1) {
        Multigraph g;
        g.n = 1;
        ExpanderCert cert;
        cert.method = ExpanderMethod::PathFallback;
        cert.h_bound = Rational(0);
        return {g, cert};
    }
    if (n == 2) {
        Multigraph g;
        g.n = 2;
        g.edges.push_back({1, 2});
        return {g, certify(g, ExpanderMethod::PathFallback)};
    }
    if (n <= d + 1) {
        Multigraph g = clique(n);
        return {g, certify(g, ExpanderMethod::Clique)};
    }
    if (d < 2 || d % 2 != 0)
        throw InputError("random regular construction needs even d >= 2");

    Rng rng(seed);
    ExpanderCert best_cert;
    Multigraph best_graph;
    bool have_best = false;
    for (int attempt = 0; attempt < retries; ++attempt) {
        Multigraph g;
        g.n = n;
        for (int round = 0; round < d / 2; ++round) {
            // fixed-point-free permutation; each cycle edge i -> pi(i)
            std::vector<int> perm(n);
            for (;;) {
                for (int i = 0; i < n; ++i) perm[i] = i;
                for (int i = n - 1; i > 0; --i)
                    std::swap(perm[i], perm[rng.below(static_cast<uint64_t>(i + 1))]);
                bool fixed = false;
                for (int i = 0; i < n; ++i)
                    if (perm[i] == i) fixed = true;
                if (!fixed) break;
            }
            for (int i = 0; i < n; ++i) {
                int u = i + 1, v = perm[i] + 1;
                g.edges.push_back({std::min(u, v), std::max(u, v)});
            }
        }
        std::sort(g.edges.begin(), g.edges.end());
        if (!g.connected()) continue;
        ExpanderCert cert = certify(g, ExpanderMethod::RandomRegular);
        if (!have_best || best_cert.h_bound < cert.h_bound) {
            best_cert = cert;
            best_graph = g;
            have_best = true;
        }
        if (!(cert.h_bound < target_h)) return {g, cert};
    }
    std::string best = have_best ? best_cert.h_bound.str() : "none";
    throw InputError("expander construction exhausted retries (best expansion " + best + ")");
}

}  // namespace icc3
