#pragma once

#include <cstdint>
#include <random>

namespace icc3 {

// Seeded generator with rejection sampling so that streams are identical on
// every platform (std::uniform_int_distribution is not portable).
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next() { return eng_(); }

    // uniform in [0, n)
    uint64_t below(uint64_t n) {
        if (n == 0) return 0;
        uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        for (;;) {
            uint64_t r = eng_();
            if (r < limit) return r % n;
        }
    }

    // uniform in [lo, hi] inclusive
    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

    bool coin() { return (eng_() & 1) != 0; }

private:
    std::mt19937_64 eng_;
};

}  // namespace icc3
