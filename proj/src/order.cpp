#include "dalg/order.hpp"

#include <algorithm>

#include "dalg/errors.hpp"

namespace dalg {

MonomialOrder MonomialOrder::lex(std::vector<int32_t> vars_desc) {
    return blocks({Block{Kind::Lex, std::move(vars_desc)}});
}

MonomialOrder MonomialOrder::degrevlex(std::vector<int32_t> vars_desc) {
    return blocks({Block{Kind::DegRevLex, std::move(vars_desc)}});
}

MonomialOrder MonomialOrder::blocks(std::vector<Block> bs) {
    MonomialOrder o;
    int32_t n = 0;
    for (const Block& b : bs) n += static_cast<int32_t>(b.vars_desc.size());
    o.nvars_ = n;
    o.block_of_.assign(static_cast<size_t>(n), -1);
    o.rank_.assign(static_cast<size_t>(n), -1);
    for (size_t bi = 0; bi < bs.size(); ++bi) {
        o.kinds_.push_back(bs[bi].kind);
        for (size_t r = 0; r < bs[bi].vars_desc.size(); ++r) {
            int32_t v = bs[bi].vars_desc[r];
            if (v < 0 || v >= n) throw UsageError("monomial order variable out of range");
            if (o.block_of_[static_cast<size_t>(v)] != -1)
                throw UsageError("monomial order lists a variable twice");
            o.block_of_[static_cast<size_t>(v)] = static_cast<int8_t>(bi);
            o.rank_[static_cast<size_t>(v)] = static_cast<int32_t>(r);
        }
    }
    for (int32_t v = 0; v < n; ++v)
        if (o.block_of_[static_cast<size_t>(v)] == -1)
            throw UsageError("monomial order does not cover the variable table");
    return o;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
    constexpr int kMaxBlocks = 8;
    const int nb = nblocks();
    if (nb > kMaxBlocks) throw InternalError("too many order blocks");

    int64_t deg_a[kMaxBlocks] = {0}, deg_b[kMaxBlocks] = {0};
    int32_t lex_rank[kMaxBlocks];
    int lex_sign[kMaxBlocks] = {0};
    int32_t rev_rank[kMaxBlocks];
    int rev_sign[kMaxBlocks] = {0};
    for (int i = 0; i < nb; ++i) {
        lex_rank[i] = INT32_MAX;
        rev_rank[i] = -1;
    }

    auto ea = a.entries();
    auto eb = b.entries();
    size_t i = 0, j = 0;
    while (i < ea.size() || j < eb.size()) {
        int32_t var;
        int32_t xa = 0, xb = 0;
        if (j == eb.size() || (i < ea.size() && ea[i].var < eb[j].var)) {
            var = ea[i].var;
            xa = ea[i].exp;
            ++i;
        } else if (i == ea.size() || eb[j].var < ea[i].var) {
            var = eb[j].var;
            xb = eb[j].exp;
            ++j;
        } else {
            var = ea[i].var;
            xa = ea[i].exp;
            xb = eb[j].exp;
            ++i, ++j;
        }
        const size_t uv = static_cast<size_t>(var);
        if (uv >= block_of_.size()) throw InternalError("monomial variable outside order table");
        const int blk = block_of_[uv];
        deg_a[blk] += xa;
        deg_b[blk] += xb;
        if (xa == xb) continue;
        const int32_t r = rank_[uv];
        if (r < lex_rank[blk]) {
            lex_rank[blk] = r;
            lex_sign[blk] = xa > xb ? 1 : -1;
        }
        if (r > rev_rank[blk]) {
            rev_rank[blk] = r;
            rev_sign[blk] = xa < xb ? 1 : -1;  // smaller exponent at the least significant spot wins
        }
    }

    for (int b = 0; b < nb; ++b) {
        if (kinds_[static_cast<size_t>(b)] == Kind::Lex) {
            if (lex_sign[b] != 0) return lex_sign[b];
        } else {
            if (deg_a[b] != deg_b[b]) return deg_a[b] < deg_b[b] ? -1 : 1;
            if (rev_sign[b] != 0) return rev_sign[b];
        }
    }
    return 0;
}

bool MonomialOrder::supported_in_block(const Monomial& m, int b) const {
    for (const VarExp& ve : m.entries())
        if (block_of_[static_cast<size_t>(ve.var)] != b) return false;
    return true;
}

}  // namespace dalg
