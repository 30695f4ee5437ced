#include "dalg/engine_common.hpp"

#include <algorithm>

#include "dalg/errors.hpp"

namespace dalg {

int64_t deriv_degree(const Poly& p) {
    const auto& table = p.table();
    int64_t best = 0;
    for (const Term& t : p.terms()) {
        int64_t d = 0;
        for (const VarExp& ve : t.mono.entries())
            if (table->key(ve.var).cls == VarClass::Deriv) d += ve.exp;
        best = std::max(best, d);
    }
    return best;
}

namespace {

// Graded-lex on multi-indices: total order first, then the leftmost
// differing component decides.
int gradedlex_compare(std::span<const uint32_t> a, std::span<const uint32_t> b) {
    uint64_t da = 0, db = 0;
    for (uint32_t v : a) da += v;
    for (uint32_t v : b) db += v;
    if (da != db) return da < db ? -1 : 1;
    for (size_t i = 0; i < a.size() && i < b.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

// Deterministic structural comparison used as the final tie-break.
bool structural_less(const Poly& a, const Poly& b) {
    auto ta = a.with_order(nullptr);
    auto tb = b.with_order(nullptr);
    auto sa = ta.terms();
    auto sb = tb.terms();
    for (size_t i = 0; i < sa.size() && i < sb.size(); ++i) {
        int c = Monomial::structural_compare(sa[i].mono, sb[i].mono);
        if (c != 0) return c < 0;
        if (sa[i].coeff != sb[i].coeff) return sa[i].coeff < sb[i].coeff;
    }
    return sa.size() < sb.size();
}

}  // namespace

std::vector<uint32_t> selection_key(const Poly& p, int l) {
    std::vector<uint32_t> best(static_cast<size_t>(l), 0);
    const auto& table = p.table();
    for (const Term& t : p.terms()) {
        for (const VarExp& ve : t.mono.entries()) {
            const VarKey& k = table->key(ve.var);
            if (k.cls != VarClass::Deriv) continue;
            if (gradedlex_compare(k.index, best) > 0) best = k.index;
        }
    }
    return best;
}

Poly select_min(std::span<const Poly> G, int l) {
    if (G.empty()) throw UsageError("select_min over an empty generator list");
    const Poly* best = &G[0];
    std::vector<uint32_t> best_key = selection_key(G[0], l);
    int64_t best_deg = deriv_degree(G[0]);
    for (size_t i = 1; i < G.size(); ++i) {
        std::vector<uint32_t> key = selection_key(G[i], l);
        int kc = gradedlex_compare(key, best_key);
        if (kc > 0) continue;
        if (kc == 0) {
            int64_t deg = deriv_degree(G[i]);
            if (deg > best_deg) continue;
            if (deg == best_deg) {
                if (G[i].nterms() > best->nterms()) continue;
                if (G[i].nterms() == best->nterms() && !structural_less(G[i], *best)) continue;
            }
            best_deg = deg;
        } else {
            best_deg = deriv_degree(G[i]);
        }
        best = &G[i];
        best_key = std::move(key);
    }
    return *best;
}

AdeResult canonicalize_result(const Poly& selected, int src_indet, const std::string& target_name,
                              const std::shared_ptr<DiffContext>& session_ctx) {
    AdeResult res;
    res.ctx = std::make_shared<DiffContext>();
    res.ctx->indep = session_ctx->indep;
    res.ctx->params = session_ctx->params;
    res.ctx->indets.push_back(
        {target_name, std::vector<uint8_t>(static_cast<size_t>(session_ctx->l()), 1)});
    res.table = std::make_shared<VarTable>();

    const auto& src = selected.table();
    std::vector<Term> terms;
    for (const Term& t : selected.terms()) {
        std::vector<VarExp> entries;
        for (const VarExp& ve : t.mono.entries()) {
            VarKey k = src->key(ve.var);
            if (k.cls == VarClass::Deriv) {
                if (k.indet != src_indet)
                    throw InternalError("result polynomial contains a non-target descriptor");
                k.indet = 0;
            }
            entries.push_back({res.table->intern(k), ve.exp});
        }
        std::sort(entries.begin(), entries.end(),
                  [](const VarExp& a, const VarExp& b) { return a.var < b.var; });
        terms.push_back({t.coeff, Monomial(std::move(entries))});
    }
    Poly moved = Poly::from_terms(res.table, std::move(terms));

    std::vector<int32_t> all(static_cast<size_t>(res.table->size()));
    for (int32_t v = 0; v < res.table->size(); ++v) all[static_cast<size_t>(v)] = v;
    auto canon =
        std::make_shared<MonomialOrder>(MonomialOrder::lex(default_ranking(*res.table, all)));
    res.polynomial = poly_normalize(moved.with_order(canon), canon.get());

    // Componentwise derivative order of the result.
    std::vector<uint32_t> ord(static_cast<size_t>(session_ctx->l()), 0);
    for (const Term& t : res.polynomial.terms())
        for (const VarExp& ve : t.mono.entries()) {
            const VarKey& k = res.table->key(ve.var);
            if (k.cls != VarClass::Deriv) continue;
            for (size_t i = 0; i < ord.size(); ++i) ord[i] = std::max(ord[i], k.index[i]);
        }
    res.order = std::move(ord);
    res.degree = deriv_degree(res.polynomial);
    return res;
}

bool ade_equivalent(const AdeResult& a, const Poly& expected,
                    const std::shared_ptr<VarTable>& expected_table) {
    // Merge both polynomials into one fresh table keyed by VarKey identity.
    auto merged = std::make_shared<VarTable>();
    auto move_poly = [&](const Poly& p, const std::shared_ptr<VarTable>& from) {
        std::vector<Term> ts;
        for (const Term& t : p.terms()) {
            std::vector<VarExp> entries;
            for (const VarExp& ve : t.mono.entries())
                entries.push_back({merged->intern(from->key(ve.var)), ve.exp});
            std::sort(entries.begin(), entries.end(),
                      [](const VarExp& x, const VarExp& y) { return x.var < y.var; });
            ts.push_back({t.coeff, Monomial(std::move(entries))});
        }
        return Poly::from_terms(merged, std::move(ts));
    };
    Poly lhs = move_poly(a.polynomial, a.table);
    Poly rhs = move_poly(expected, expected_table);
    if (lhs.is_zero() || rhs.is_zero()) return lhs.is_zero() && rhs.is_zero();
    return poly_normalize(lhs, nullptr).equal(poly_normalize(rhs, nullptr));
}

}  // namespace dalg
