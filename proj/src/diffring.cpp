#include "dalg/diffring.hpp"

#include <algorithm>

#include "dalg/errors.hpp"

namespace dalg {

std::optional<int> DiffContext::find_indep(const std::string& n) const {
    for (size_t i = 0; i < indep.size(); ++i)
        if (indep[i] == n) return static_cast<int>(i);
    return std::nullopt;
}

std::optional<int> DiffContext::find_param(const std::string& n) const {
    for (size_t i = 0; i < params.size(); ++i)
        if (params[i] == n) return static_cast<int>(i);
    return std::nullopt;
}

std::optional<int> DiffContext::find_indet(const std::string& n) const {
    for (size_t i = 0; i < indets.size(); ++i)
        if (indets[i].name == n) return static_cast<int>(i);
    return std::nullopt;
}

int32_t DiffRing::var_indep(int i) {
    if (i < 0 || i >= ctx_->l()) throw UsageError("independent variable index out of range");
    return table_->intern(VarKey::independent(ctx_->indep[static_cast<size_t>(i)]));
}

int32_t DiffRing::var_param(int i) {
    if (i < 0 || i >= static_cast<int>(ctx_->params.size()))
        throw UsageError("parameter index out of range");
    return table_->intern(VarKey::parameter(ctx_->params[static_cast<size_t>(i)]));
}

int32_t DiffRing::var_deriv(int indet, std::vector<uint32_t> index) {
    if (indet < 0 || indet >= static_cast<int>(ctx_->indets.size()))
        throw UsageError("indeterminate index out of range");
    if (static_cast<int>(index.size()) != ctx_->l())
        throw UsageError("derivative multi-index length mismatch");
    const DiffIndeterminate& y = ctx_->indets[static_cast<size_t>(indet)];
    for (int a = 0; a < ctx_->l(); ++a)
        if (index[static_cast<size_t>(a)] > 0 && !y.depends_on(a))
            throw UsageError("derivative along a variable outside the dependency set of " + y.name);
    return table_->intern(VarKey::deriv(indet, std::move(index)));
}

int32_t DiffRing::var_deriv0(int indet) {
    return var_deriv(indet, std::vector<uint32_t>(static_cast<size_t>(ctx_->l()), 0));
}

namespace {

void check_same_ring(const DiffPoly& a, const DiffPoly& b) {
    if (a.ring != b.ring) throw UsageError("differential polynomials from different sessions");
}

}  // namespace

DiffPoly dp_add(const DiffPoly& a, const DiffPoly& b) {
    check_same_ring(a, b);
    return {a.ring, a.poly + b.poly};
}
DiffPoly dp_sub(const DiffPoly& a, const DiffPoly& b) {
    check_same_ring(a, b);
    return {a.ring, a.poly - b.poly};
}
DiffPoly dp_mul(const DiffPoly& a, const DiffPoly& b) {
    check_same_ring(a, b);
    return {a.ring, a.poly * b.poly};
}
DiffPoly dp_neg(const DiffPoly& a) { return {a.ring, -a.poly}; }

DiffPoly partial_derive(const DiffPoly& p, int axis) {
    const auto& ring = p.ring;
    const auto& ctx = *ring->ctx();
    if (axis < 0 || axis >= ctx.l()) throw UsageError("derivation axis out of range");
    const auto& table = ring->table();

    Poly acc = Poly::zero(table);
    for (const Term& t : p.poly.terms()) {
        // Leibniz across the factors of the monomial.
        for (const VarExp& ve : t.mono.entries()) {
            const VarKey& k = table->key(ve.var);
            if (k.cls == VarClass::Parameter) continue;
            if (k.cls == VarClass::Independent) {
                if (k.name != ctx.indep[static_cast<size_t>(axis)]) continue;
                Monomial rest = *t.mono.lower(ve.var);
                acc = acc + Poly::from_terms(table, {{t.coeff * Rational(ve.exp), std::move(rest)}});
                continue;
            }
            if (k.cls == VarClass::Deriv) {
                if (!ctx.indets[static_cast<size_t>(k.indet)].depends_on(axis)) continue;
                // Copy out of `k` before interning: intern may grow the table.
                const int32_t indet = k.indet;
                std::vector<uint32_t> idx = k.index;
                idx[static_cast<size_t>(axis)] += 1;
                int32_t shifted = ring->var_deriv(indet, std::move(idx));
                Monomial rest = *t.mono.lower(ve.var);
                acc = acc + Poly::from_terms(
                                table, {{t.coeff * Rational(ve.exp), rest * Monomial::var(shifted)}});
                continue;
            }
            throw UsageError("cannot derive an auxiliary variable");
        }
    }
    return {ring, std::move(acc)};
}

DiffPoly theta_derive(const DiffPoly& p, uint64_t k) {
    const int l = p.ring->ctx()->l();
    std::vector<uint32_t> idx = sigma_unrank({l}, k);
    DiffPoly out = p;
    for (int axis = 0; axis < l; ++axis)
        for (uint32_t i = 0; i < idx[static_cast<size_t>(axis)]; ++i)
            out = partial_derive(out, axis);
    return out;
}

DiffPoly total_derive(const DiffPoly& p) {
    if (p.ring->ctx()->l() != 1)
        throw UsageError("total derivative requires a single independent variable");
    return partial_derive(p, 0);
}

std::vector<uint32_t> diff_order(const DiffPoly& p) {
    const int l = p.ring->ctx()->l();
    std::vector<uint32_t> best(static_cast<size_t>(l), 0);
    bool found = false;
    const auto& table = p.ring->table();
    for (const Term& t : p.poly.terms()) {
        for (const VarExp& ve : t.mono.entries()) {
            const VarKey& k = table->key(ve.var);
            if (k.cls != VarClass::Deriv) continue;
            found = true;
            for (int a = 0; a < l; ++a)
                best[static_cast<size_t>(a)] =
                    std::max(best[static_cast<size_t>(a)], k.index[static_cast<size_t>(a)]);
        }
    }
    if (!found) throw UsageError("diff_order of a polynomial without derivative descriptors");
    return best;
}

std::optional<std::vector<uint32_t>> max_descriptor(const DiffPoly& p, int indet) {
    const auto& table = p.ring->table();
    std::optional<std::vector<uint32_t>> best;
    for (const Term& t : p.poly.terms()) {
        for (const VarExp& ve : t.mono.entries()) {
            const VarKey& k = table->key(ve.var);
            if (k.cls != VarClass::Deriv || k.indet != indet) continue;
            if (!best || theta_compare(k.index, *best) > 0) best = k.index;
        }
    }
    return best;
}

Poly flatten(const DiffPoly& p, const std::shared_ptr<VarTable>& target) {
    const auto& src = p.ring->table();
    std::vector<Term> out;
    out.reserve(p.poly.nterms());
    for (const Term& t : p.poly.terms()) {
        std::vector<VarExp> entries;
        entries.reserve(t.mono.nvars());
        for (const VarExp& ve : t.mono.entries()) {
            auto idx = target->find(src->key(ve.var));
            if (!idx) throw InternalError("flatten: descriptor not registered in target table");
            entries.push_back({*idx, ve.exp});
        }
        std::sort(entries.begin(), entries.end(),
                  [](const VarExp& a, const VarExp& b) { return a.var < b.var; });
        out.push_back({t.coeff, Monomial(std::move(entries))});
    }
    return Poly::from_terms(target, std::move(out));
}

}  // namespace dalg
