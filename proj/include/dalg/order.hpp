#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "dalg/monomial.hpp"

namespace dalg {

// Monomial order over a fixed variable table. Internally a sequence of
// blocks compared left to right; each block is Lex or DegRevLex over its own
// variable ranking. Lex/DegRevLex are single-block instances, the two-block
// form is the Bayer-Stillman elimination order.
class MonomialOrder {
  public:
    enum class Kind : uint8_t { Lex, DegRevLex };

    struct Block {
        Kind kind;
        std::vector<int32_t> vars_desc;  // most significant variable first
    };

    // vars_desc must list every table variable exactly once (across blocks).
    static MonomialOrder lex(std::vector<int32_t> vars_desc);
    static MonomialOrder degrevlex(std::vector<int32_t> vars_desc);
    static MonomialOrder blocks(std::vector<Block> bs);

    int32_t nvars() const { return nvars_; }
    int nblocks() const { return static_cast<int>(kinds_.size()); }

    // -1 if a < b, 0 if equal, +1 if a > b.
    int compare(const Monomial& a, const Monomial& b) const;
    bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

    // True if every variable of `m` lies in block `b`.
    bool supported_in_block(const Monomial& m, int b) const;
    int block_of(int32_t var) const { return block_of_[static_cast<size_t>(var)]; }

  private:
    int32_t nvars_ = 0;
    std::vector<int8_t> block_of_;   // per variable
    std::vector<int32_t> rank_;      // per variable, 0 = most significant in its block
    std::vector<Kind> kinds_;        // per block
};

using OrderPtr = std::shared_ptr<const MonomialOrder>;

// Compare under `o`, falling back to the structural order when null.
inline int mono_compare(const MonomialOrder* o, const Monomial& a, const Monomial& b) {
    return o ? o->compare(a, b) : Monomial::structural_compare(a, b);
}

}  // namespace dalg
