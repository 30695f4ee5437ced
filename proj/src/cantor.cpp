#include "dalg/cantor.hpp"

#include "dalg/errors.hpp"

namespace dalg {

namespace {

// C(n, k) for the small k used here (k <= l), with overflow guard.
uint64_t binom(uint64_t n, uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > static_cast<unsigned __int128>(UINT64_MAX))
            throw UsageError("theta rank out of 64-bit range");
    }
    return static_cast<uint64_t>(r);
}

// Number of l-tuples with total degree exactly d.
uint64_t stratum_size(uint64_t d, int l) { return binom(d + static_cast<uint64_t>(l) - 1, static_cast<uint64_t>(l) - 1); }

// Number of l-tuples with total degree < d.
uint64_t strata_below(uint64_t d, int l) {
    if (d == 0) return 0;
    return binom(d - 1 + static_cast<uint64_t>(l), static_cast<uint64_t>(l));
}

}  // namespace

uint64_t sigma_rank(ThetaRank rank, std::span<const uint32_t> t) {
    const int l = rank.l;
    if (l < 1) throw UsageError("theta rank needs at least one variable");
    if (static_cast<int>(t.size()) != l) throw UsageError("tuple length does not match rank dimension");
    if (l == 1) return t[0];

    uint64_t deg = 0;
    for (uint32_t v : t) deg += v;
    uint64_t r = strata_below(deg, l);

    // Within the stratum: count tuples of the same degree that are smaller,
    // i.e. have a smaller component at the rightmost differing position.
    uint64_t rem = deg;
    for (int i = l - 1; i >= 1; --i) {
        for (uint32_t v = 0; v < t[static_cast<size_t>(i)]; ++v)
            r += stratum_size(rem - v, i);
        rem -= t[static_cast<size_t>(i)];
    }
    return r;
}

std::vector<uint32_t> sigma_unrank(ThetaRank rank, uint64_t k) {
    const int l = rank.l;
    if (l < 1) throw UsageError("theta rank needs at least one variable");
    if (l == 1) return {static_cast<uint32_t>(k)};

    uint64_t deg = 0;
    while (strata_below(deg + 1, l) <= k) ++deg;
    uint64_t r = k - strata_below(deg, l);

    std::vector<uint32_t> t(static_cast<size_t>(l), 0);
    uint64_t rem = deg;
    for (int i = l - 1; i >= 1; --i) {
        uint32_t v = 0;
        while (true) {
            uint64_t cnt = stratum_size(rem - v, i);
            if (r < cnt) break;
            r -= cnt;
            ++v;
        }
        t[static_cast<size_t>(i)] = v;
        rem -= v;
    }
    t[0] = static_cast<uint32_t>(rem);
    return t;
}

}  // namespace dalg
