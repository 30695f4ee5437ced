#include "dalg/engine_multi.hpp"

#include <algorithm>
#include <chrono>
#include <map>

#include "dalg/errors.hpp"

namespace dalg {

namespace {

// Memoized composite partial derivatives of one base polynomial; partials
// commute, so any descent path gives the same result.
class DerivCache {
  public:
    explicit DerivCache(DiffPoly base) : l_(base.ring->ctx()->l()) {
        memo_.emplace(std::vector<uint32_t>(static_cast<size_t>(l_), 0), std::move(base));
    }

    const DiffPoly& get(const std::vector<uint32_t>& t) {
        auto it = memo_.find(t);
        if (it != memo_.end()) return it->second;
        int axis = 0;
        while (t[static_cast<size_t>(axis)] == 0) ++axis;
        std::vector<uint32_t> prev = t;
        prev[static_cast<size_t>(axis)] -= 1;
        DiffPoly d = partial_derive(get(prev), axis);
        return memo_.emplace(t, std::move(d)).first->second;
    }

  private:
    int l_;
    std::map<std::vector<uint32_t>, DiffPoly> memo_;
};

bool leq_componentwise(std::span<const uint32_t> a, std::span<const uint32_t> b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

std::string echo_options(const MultiOptions& o, const std::vector<uint32_t>& bounds, int n) {
    std::string s = "engine=multi inputs=" + std::to_string(n) + " ordering=";
    s += o.ordering == ElimStrategy::Lex ? "lex" : "lexdeg";
    s += " bound=";
    for (size_t i = 0; i < bounds.size(); ++i) s += (i ? "," : "") + std::to_string(bounds[i]);
    if (o.maxord) s += " (maxord override)";
    return s;
}

// ---- linear fast path -----------------------------------------------------
//
// When every generator is linear in the derivative variables (coefficients in
// the independent variables and parameters), every linear element of the
// ideal is a module combination of the generators, and the elimination
// restricted to linear forms is plain fraction-free Gaussian elimination
// over the coefficient ring. Rows that lose all eliminated columns span the
// z-only linear forms; an empty result certifies the trivial elimination
// ideal (the projection of a linear variety is a linear variety).

// True if every term has total degree <= 1 in Deriv variables.
bool all_linear(const std::vector<Poly>& gens, const VarTable& table) {
    for (const Poly& g : gens) {
        for (const Term& t : g.terms()) {
            int64_t d = 0;
            for (const VarExp& ve : t.mono.entries())
                if (table.key(ve.var).cls == VarClass::Deriv) d += ve.exp;
            if (d > 1) return false;
        }
    }
    return true;
}

class LinearEliminator {
  public:
    LinearEliminator(const std::vector<Poly>& gens, const std::vector<bool>& keep,
                     std::shared_ptr<VarTable> table)
        : table_(std::move(table)), keep_(keep) {
        for (const Poly& g : gens) rows_.push_back(split(g));
    }

    // Surviving rows free of eliminated columns, as normalized polynomials.
    std::vector<Poly> run() {
        std::vector<int32_t> elim_cols;
        for (int32_t v = 0; v < table_->size(); ++v)
            if (table_->key(v).cls == VarClass::Deriv && !keep_[static_cast<size_t>(v)])
                elim_cols.push_back(v);

        for (int32_t col : elim_cols) {
            int pivot = -1;
            for (size_t i = 0; i < rows_.size(); ++i) {
                if (!rows_[i].alive || !rows_[i].entries.count(col)) continue;
                if (pivot == -1 || better_pivot(rows_[i], rows_[static_cast<size_t>(pivot)]))
                    pivot = static_cast<int>(i);
            }
            if (pivot == -1) continue;
            Row& p = rows_[static_cast<size_t>(pivot)];
            const Poly pc = p.entries.at(col);
            for (size_t i = 0; i < rows_.size(); ++i) {
                if (static_cast<int>(i) == pivot || !rows_[i].alive) continue;
                auto it = rows_[i].entries.find(col);
                if (it == rows_[i].entries.end()) continue;
                cross(rows_[i], it->second, p, pc);
            }
            p.alive = false;  // consumed as a pivot
        }

        std::vector<Poly> out;
        for (Row& r : rows_) {
            if (!r.alive || r.entries.empty()) continue;
            // Primitive over the coefficient ring.
            Poly content = Poly::zero(table_);
            for (auto& [col, coef] : r.entries) {
                content = content.is_zero() ? poly_normalize(coef, nullptr) : poly_gcd(content, coef);
                if (content.is_constant()) break;
            }
            std::vector<Term> ts;
            for (auto& [col, coef] : r.entries) {
                Poly c = content.is_constant() ? coef : *poly_exact_divide(coef, content);
                for (const Term& t : c.terms()) {
                    Monomial m = t.mono;
                    if (col >= 0) m = m * Monomial::var(col);
                    ts.push_back({t.coeff, std::move(m)});
                }
            }
            Poly poly = Poly::from_terms(table_, std::move(ts));
            if (poly.is_zero()) continue;
            poly = poly_normalize(poly, nullptr);
            bool dup = false;
            for (const Poly& g : out)
                if (g.equal(poly)) dup = true;
            if (!dup) out.push_back(std::move(poly));
        }
        return out;
    }

  private:
    struct Row {
        std::map<int32_t, Poly> entries;  // column -> coefficient; -1 = affine part
        Poly divisor;                     // last pivot applied (Bareiss divisor)
        bool alive = true;
    };

    Row split(const Poly& g) {
        Row r;
        r.divisor = Poly::constant(table_, Rational(1));
        for (const Term& t : g.terms()) {
            int32_t col = -1;
            std::vector<VarExp> coeff_entries;
            for (const VarExp& ve : t.mono.entries()) {
                if (table_->key(ve.var).cls == VarClass::Deriv) {
                    col = ve.var;
                } else {
                    coeff_entries.push_back(ve);
                }
            }
            Poly piece = Poly::from_terms(table_, {{t.coeff, Monomial(std::move(coeff_entries))}});
            auto [it, fresh] = r.entries.try_emplace(col, piece);
            if (!fresh) it->second = it->second + piece;
        }
        for (auto it = r.entries.begin(); it != r.entries.end();)
            it = it->second.is_zero() ? r.entries.erase(it) : std::next(it);
        return r;
    }

    static bool better_pivot(const Row& a, const Row& b) {
        if (a.entries.size() != b.entries.size()) return a.entries.size() < b.entries.size();
        return max_degree(a) < max_degree(b);
    }

    static int64_t max_degree(const Row& r) {
        int64_t d = 0;
        for (auto& [c, p] : r.entries) d = std::max(d, p.total_degree());
        return d;
    }

    // row := (pc * row - rc * pivot) / divisor when the division is exact.
    void cross(Row& row, const Poly& rc, const Row& pivot, const Poly& pc) {
        std::map<int32_t, Poly> next;
        auto add = [&](int32_t col, Poly v) {
            if (v.is_zero()) return;
            auto [it, fresh] = next.try_emplace(col, v);
            if (!fresh) {
                it->second = it->second + v;
                if (it->second.is_zero()) next.erase(it);
            }
        };
        for (auto& [col, v] : row.entries) add(col, v * pc);
        for (auto& [col, v] : pivot.entries) add(col, -(v * rc));

        // Opportunistic Bareiss division by this row's previous divisor.
        if (!row.divisor.is_constant()) {
            std::map<int32_t, Poly> reduced;
            bool all = true;
            for (auto& [col, v] : next) {
                auto q = poly_exact_divide(v, row.divisor);
                if (!q) {
                    all = false;
                    break;
                }
                reduced.emplace(col, std::move(*q));
            }
            if (all) next = std::move(reduced);
        }

        // Strip the full polynomial content so rows stay primitive.
        if (!next.empty()) {
            Poly content = Poly::zero(table_);
            for (auto& [col, v] : next) {
                content = content.is_zero() ? poly_normalize(v, nullptr) : poly_gcd(content, v);
                if (content.is_constant()) break;
            }
            if (!content.is_constant()) {
                for (auto& [col, v] : next) v = *poly_exact_divide(v, content);
            }
            Rational rc(0);
            for (auto& [col, v] : next) {
                Rational c = rational_content(v);
                rc = rc.is_zero() ? c
                                  : Rational(mpq_class(zgcd(rc.num() * c.den(), c.num() * rc.den()),
                                                       rc.den() * c.den()));
            }
            if (!rc.is_zero() && !rc.is_one()) {
                for (auto& [col, v] : next) v = v.mul_scalar(rc.reciprocal());
            }
        }
        row.entries = std::move(next);
        row.divisor = pc;
    }

    std::shared_ptr<VarTable> table_;
    const std::vector<bool>& keep_;
    std::vector<Row> rows_;
};

}  // namespace

std::vector<DiffPoly> seed_output_derivatives(const DiffPoly& r_numerator,
                                              const std::vector<uint32_t>& bounds, uint64_t nu) {
    const int l = r_numerator.ring->ctx()->l();
    if (static_cast<int>(bounds.size()) != l) throw UsageError("bounds length mismatch");
    DerivCache cache(r_numerator);
    std::vector<DiffPoly> out;
    for (uint64_t k = 0; k <= nu; ++k) {
        std::vector<uint32_t> t = sigma_unrank({l}, k);
        if (!leq_componentwise(t, bounds)) continue;
        const DiffPoly& d = cache.get(t);
        if (!d.poly.is_zero()) out.push_back(d);
    }
    return out;
}

std::vector<DiffPoly> seed_input_derivatives(const DiffPoly& p, uint64_t d) {
    const int l = p.ring->ctx()->l();
    DerivCache cache(p);
    std::vector<DiffPoly> out = {p};
    for (uint64_t k = 1; k <= d; ++k) {
        const DiffPoly& dp = cache.get(sigma_unrank({l}, k));
        if (!dp.poly.is_zero()) out.push_back(dp);
    }
    return out;
}

MultiOutcome arithmetic_multi(const std::vector<MultiInput>& inputs, const RatExpr& r,
                              const std::string& target_name, const MultiOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    if (inputs.empty()) throw UsageError("arithmetic_multi needs at least one input ADE");
    const auto session = inputs.front().p.ring;
    const auto ctx = session->ctx();
    const int l = ctx->l();
    for (const MultiInput& in : inputs)
        if (in.p.ring != session) throw UsageError("inputs from different sessions");
    if (r.den.poly.is_zero()) throw DegenerateExpression("target denominator is syntactically zero");

    GBParams params;
    params.budget = opts.budget;
    params.posthoc_verify = opts.verify;

    // The target indeterminate depends on every independent variable.
    int z_indet;
    if (auto existing = ctx->find_indet(target_name)) {
        z_indet = *existing;
    } else {
        ctx->indets.push_back({target_name, std::vector<uint8_t>(static_cast<size_t>(l), 1)});
        z_indet = static_cast<int>(ctx->indets.size()) - 1;
    }

    // Input orders and the default componentwise bound.
    std::vector<std::vector<uint32_t>> orders;
    for (const MultiInput& in : inputs) orders.push_back(diff_order(in.p));
    std::vector<uint32_t> bounds(static_cast<size_t>(l), 0);
    if (opts.maxord) {
        if (static_cast<int>(opts.maxord->size()) != l)
            throw UsageError("maxord length must match the independent-variable count");
        bounds = *opts.maxord;
    } else {
        for (const auto& o : orders)
            for (int i = 0; i < l; ++i) bounds[static_cast<size_t>(i)] += o[static_cast<size_t>(i)];
    }
    const uint64_t nu = sigma_rank({l}, bounds);

    // R: numerator of z - r.
    DiffPoly zpoly{session, session->var(session->var_deriv0(z_indet))};
    DiffPoly R = dp_sub(dp_mul(r.den, zpoly), r.num);
    std::vector<DiffPoly> seeds = seed_output_derivatives(R, bounds, nu);

    // Saturation factors: r's denominator and any cleared input denominators.
    std::vector<DiffPoly> factors;
    auto push_factor = [&](const DiffPoly& f) {
        if (f.poly.is_zero() || f.poly.is_constant()) return;
        DiffPoly n{f.ring, poly_normalize(f.poly, nullptr)};
        for (const DiffPoly& g : factors)
            if (g.poly.equal(n.poly)) return;
        factors.push_back(std::move(n));
    };
    push_factor(r.den);
    for (const MultiInput& in : inputs) push_factor(in.cleared_denominator);

    // The theta-minimal input order and the starting derivative budget.
    std::vector<uint32_t> m = orders[0];
    for (const auto& o : orders)
        if (theta_compare(o, m) < 0) m = o;
    std::vector<uint32_t> gap(static_cast<size_t>(l), 0);
    for (int i = 0; i < l; ++i)
        gap[static_cast<size_t>(i)] =
            bounds[static_cast<size_t>(i)] > m[static_cast<size_t>(i)]
                ? bounds[static_cast<size_t>(i)] - m[static_cast<size_t>(i)]
                : 0;
    uint64_t d = sigma_rank({l}, gap);

    std::vector<DerivCache> caches;
    caches.reserve(inputs.size());
    for (const MultiInput& in : inputs) caches.emplace_back(in.p);

    MultiOutcome outcome;
    outcome.bounds = bounds;
    outcome.options_echo = echo_options(opts, bounds, static_cast<int>(inputs.size()));

    for (; d <= nu; ++d) {
        std::vector<DiffPoly> E = seeds;
        for (size_t i = 0; i < inputs.size(); ++i) {
            E.push_back(inputs[i].p);
            for (uint64_t k = 1; k <= d; ++k) {
                const DiffPoly& dp = caches[i].get(sigma_unrank({l}, k));
                if (!dp.poly.is_zero()) E.push_back(dp);
            }
        }

        // Fresh flattening per attempt: the variable set grows with d.
        auto gbtable = std::make_shared<VarTable>();
        auto register_all = [&](const DiffPoly& f) {
            const auto& st = f.ring->table();
            for (const Term& t : f.poly.terms())
                for (const VarExp& ve : t.mono.entries()) gbtable->intern(st->key(ve.var));
        };
        for (const DiffPoly& f : E) register_all(f);
        for (const DiffPoly& f : factors) register_all(f);

        std::vector<Poly> gens;
        for (const DiffPoly& f : E) gens.push_back(poly_normalize(flatten(f, gbtable), nullptr));
        for (const DiffPoly& f : factors) gens = saturate(gens, flatten(f, gbtable), nullptr, params);

        std::vector<bool> keep(static_cast<size_t>(gbtable->size()), false);
        for (int32_t v = 0; v < gbtable->size(); ++v) {
            const VarKey& k = gbtable->key(v);
            keep[static_cast<size_t>(v)] =
                k.cls == VarClass::Independent || k.cls == VarClass::Parameter ||
                (k.cls == VarClass::Deriv && k.indet == z_indet && leq_componentwise(k.index, bounds));
        }
        const bool linear = all_linear(gens, *gbtable);
        std::vector<Poly> elim = linear ? LinearEliminator(gens, keep, gbtable).run()
                                        : eliminate(gens, keep, opts.ordering, {}, params);
        if (elim.empty()) continue;
        for (const Poly& g : elim)
            if (g.is_constant())
                throw NoAdeFound("inconsistent input system: elimination ideal is the unit ideal");

        Poly best = select_min(elim, l);
        if (opts.verify && !linear) {
            std::vector<int32_t> all(static_cast<size_t>(gbtable->size()));
            for (int32_t v = 0; v < gbtable->size(); ++v) all[static_cast<size_t>(v)] = v;
            auto ord = std::make_shared<MonomialOrder>(
                MonomialOrder::degrevlex(default_ranking(*gbtable, all)));
            Ideal I{gens, ord, std::nullopt};
            if (!ideal_member(best, I, params))
                throw InternalError("selected PDE is not a member of the saturated ideal");
        }

        AdeResult res = canonicalize_result(best, z_indet, target_name, ctx);
        res.options_echo = outcome.options_echo;
        res.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                             .count();
        outcome.found = true;
        outcome.result = std::move(res);
        return outcome;
    }
    return outcome;
}

}  // namespace dalg
