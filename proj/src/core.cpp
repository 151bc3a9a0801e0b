#include "icc3/core.hpp"

#include <algorithm>

#include "icc3/rng.hpp"

namespace icc3 {

void validate_structure(const Instance& inst) {
    if (inst.n < 0) throw InputError("negative position count");
    if (inst.k != 3) throw InputError("color count must be 3");
    for (size_t i = 0; i < inst.intervals.size(); ++i) {
        const Interval& iv = inst.intervals[i];
        if (iv.id != static_cast<int>(i) + 1)
            throw InputError("interval ids not contiguous at id " + std::to_string(iv.id));
        if (iv.lo < 1 || iv.hi > inst.n || iv.lo > iv.hi)
            throw InputError("interval " + std::to_string(iv.id) + " span outside [1," +
                             std::to_string(inst.n) + "]");
        for (int c = 0; c < 3; ++c)
            if (iv.req[c] < 0)
                throw InputError("interval " + std::to_string(iv.id) + " has negative count");
    }
}

std::vector<int> check_consistency(const Instance& inst) {
    std::vector<int> bad;
    for (const Interval& iv : inst.intervals)
        if (!iv.consistent()) bad.push_back(iv.id);
    std::sort(bad.begin(), bad.end());
    return bad;
}

ReqTriple count_colors(const Coloring& col, int lo, int hi) {
    if (lo < 1 || hi > static_cast<int>(col.size()) || lo > hi)
        throw InputError("count range [" + std::to_string(lo) + "," + std::to_string(hi) +
                         "] out of bounds");
    ReqTriple c{0, 0, 0};
    for (int p = lo; p <= hi; ++p) c[code(col[p - 1]) - 1]++;
    return c;
}

VerifyReport verify(const Instance& inst, const Coloring& col) {
    if (static_cast<int>(col.size()) != inst.n)
        throw InputError("coloring length " + std::to_string(col.size()) +
                         " does not match instance n=" + std::to_string(inst.n));
    VerifyReport rep;
    for (const Interval& iv : inst.intervals) {
        ReqTriple actual = count_colors(col, iv.lo, iv.hi);
        if (actual != iv.req) {
            rep.violated.push_back(iv.id);
            rep.deltas.push_back({actual[0] - iv.req[0], actual[1] - iv.req[1],
                                  actual[2] - iv.req[2]});
        }
    }
    rep.satisfied_count = static_cast<int>(inst.intervals.size()) -
                          static_cast<int>(rep.violated.size());
    return rep;
}

std::pair<Instance, Coloring> random_hdx_instance(int chain_length, int fragment_count,
                                                  int min_len, int max_len, uint64_t seed) {
    if (chain_length < 1) throw InputError("chain_length must be >= 1");
    if (fragment_count < 1) throw InputError("fragment_count must be >= 1");
    if (!(1 <= min_len && min_len <= max_len && max_len <= chain_length))
        throw InputError("need 1 <= min_len <= max_len <= chain_length");

    Rng rng(seed);
    Coloring hidden(chain_length);
    for (int i = 0; i < chain_length; ++i)
        hidden[i] = static_cast<Color>(1 + rng.below(3));

    Instance inst;
    inst.n = chain_length;
    for (int i = 0; i < fragment_count; ++i) {
        int len = static_cast<int>(rng.range(min_len, max_len));
        int lo = static_cast<int>(rng.range(1, chain_length - len + 1));
        Interval iv;
        iv.id = i + 1;
        iv.lo = lo;
        iv.hi = lo + len - 1;
        iv.req = count_colors(hidden, iv.lo, iv.hi);
        inst.intervals.push_back(iv);
    }
    return {std::move(inst), std::move(hidden)};
}

}  // namespace icc3
