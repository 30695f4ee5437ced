#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace dalg {

// The graded co-lexicographic ranking of N^l tuples: position 0 is the
// origin, tuples ordered by total degree and, within a degree, by the
// rightmost differing component. For l = 2 this is the Cantor pairing
// (n1+n2)(n1+n2+1)/2 + n2; for general l rank/unrank work by binomial
// stratum counting.
struct ThetaRank {
    int l;
};

uint64_t sigma_rank(ThetaRank rank, std::span<const uint32_t> t);
std::vector<uint32_t> sigma_unrank(ThetaRank rank, uint64_t k);

}  // namespace dalg
