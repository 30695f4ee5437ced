#include "dalg/groebner.hpp"

#include <algorithm>
#include <chrono>

#include "dalg/errors.hpp"

namespace dalg {

namespace {

using Clock = std::chrono::steady_clock;

std::string plural(uint64_t n, const char* w) { return std::to_string(n) + " " + w + (n == 1 ? "" : "s"); }

struct Pair {
    int i, j;  // indices into the poly arena, i < j
    Monomial lcm;
};

class Buchberger {
  public:
    Buchberger(std::span<const Poly> F, OrderPtr order, const GBParams& params, GroebnerStats* stats)
        : order_(std::move(order)), params_(params), out_stats_(stats) {
        start_ = Clock::now();
        for (const Poly& f : F) {
            if (f.is_zero()) continue;
            if (!table_) table_ = f.table();
            if (table_ != f.table()) throw UsageError("groebner_basis over mixed variable tables");
            add_generator(poly_normalize(f.with_order(order_), order_.get()));
        }
    }

    std::vector<Poly> run() {
        while (!pairs_.empty()) {
            check_budget();
            Pair p = pop_pair();
            stats_.pairs_processed++;
            Poly s = spoly(arena_[static_cast<size_t>(p.i)], arena_[static_cast<size_t>(p.j)]);
            Poly h = reduce_normalized(s);
            if (h.is_zero()) {
                stats_.reductions_to_zero++;
                continue;
            }
            if (h.is_constant()) {
                // Unit ideal: nothing else matters.
                arena_.clear();
                alive_.clear();
                pairs_.clear();
                add_generator(Poly::constant(table_, Rational(1), order_));
                break;
            }
            add_generator(std::move(h));
        }
        autoreduce();
        finish_stats();
        return finalize();
    }

  private:
    void check_budget() {
        if (params_.budget.max_pairs != 0 && stats_.pairs_processed >= params_.budget.max_pairs)
            throw BudgetExceeded("groebner: S-pair budget exceeded", snapshot());
        if (params_.budget.time_limit_s > 0) {
            double el = std::chrono::duration<double>(Clock::now() - start_).count();
            if (el > params_.budget.time_limit_s)
                throw BudgetExceeded("groebner: time limit exceeded", snapshot());
        }
    }

    GroebnerStats snapshot() {
        GroebnerStats s = stats_;
        s.basis_size = alive_count();
        s.elapsed_s = std::chrono::duration<double>(Clock::now() - start_).count();
        return s;
    }

    uint64_t alive_count() const {
        uint64_t n = 0;
        for (bool a : alive_) n += a ? 1 : 0;
        return n;
    }

    Pair pop_pair() {
        // Normal selection strategy: smallest lcm under the order.
        auto best = pairs_.begin();
        for (auto it = std::next(pairs_.begin()); it != pairs_.end(); ++it) {
            int c = order_->compare(it->lcm, best->lcm);
            if (c < 0 || (c == 0 && std::tie(it->j, it->i) < std::tie(best->j, best->i))) best = it;
        }
        Pair p = *best;
        pairs_.erase(best);
        return p;
    }

    Poly spoly(const Poly& f, const Poly& g) const {
        const Term& lf = f.lead();
        const Term& lg = g.lead();
        Monomial l = Monomial::lcm(lf.mono, lg.mono);
        Poly a = f.mul_term(lg.coeff, Monomial::quotient(l, lf.mono));
        Poly b = g.mul_term(lf.coeff, Monomial::quotient(l, lg.mono));
        return a - b;
    }

    Poly reduce_normalized(const Poly& f) {
        if (f.is_zero()) return f;
        reducers_.clear();
        for (size_t k = 0; k < arena_.size(); ++k)
            if (alive_[k]) reducers_.push_back(&arena_[k]);
        // Prefer reducers with small leading monomials: keeps tails short.
        std::sort(reducers_.begin(), reducers_.end(), [&](const Poly* a, const Poly* b) {
            int c = order_->compare(a->lead().mono, b->lead().mono);
            if (c != 0) return c < 0;
            return a->nterms() < b->nterms();
        });
        auto nf = detail::normal_form(f, reducers_, order_, params_.budget.max_coeff_bits);
        if (nf.coeff_overflow)
            throw BudgetExceeded("groebner: coefficient bit-size budget exceeded", snapshot());
        if (nf.remainder.is_zero()) return nf.remainder;
        return poly_normalize(nf.remainder, order_.get());
    }

    // Gebauer-Moeller update: prune new pairs by the product and chain
    // criteria, prune old pairs whose lcm strictly contains the new lead.
    void add_generator(Poly h) {
        const int t = static_cast<int>(arena_.size());
        const Monomial& lt = h.lead().mono;

        struct Cand {
            int g;
            Monomial lcm;
            bool coprime;
            bool kept = false;
        };
        std::vector<Cand> cand;
        for (size_t g = 0; g < arena_.size(); ++g) {
            if (!alive_[g]) continue;
            const Monomial& lg = arena_[g].lead().mono;
            cand.push_back({static_cast<int>(g), Monomial::lcm(lg, lt), Monomial::coprime(lg, lt)});
        }
        for (size_t k = 0; k < cand.size(); ++k) {
            if (cand[k].coprime) {
                cand[k].kept = true;  // survives to knock out others, dropped at the end
                continue;
            }
            bool dominated = false;
            for (size_t k2 = k + 1; k2 < cand.size() && !dominated; ++k2)
                if (cand[k2].lcm.divides(cand[k].lcm)) dominated = true;
            for (size_t k2 = 0; k2 < k && !dominated; ++k2)
                if (cand[k2].kept && cand[k2].lcm.divides(cand[k].lcm)) dominated = true;
            cand[k].kept = !dominated;
            if (dominated) stats_.pairs_pruned++;
        }

        // Chain criterion against existing pairs.
        for (auto it = pairs_.begin(); it != pairs_.end();) {
            const Monomial& li = arena_[static_cast<size_t>(it->i)].lead().mono;
            const Monomial& lj = arena_[static_cast<size_t>(it->j)].lead().mono;
            if (lt.divides(it->lcm) && !(Monomial::lcm(li, lt) == it->lcm) &&
                !(Monomial::lcm(lj, lt) == it->lcm)) {
                it = pairs_.erase(it);
                stats_.pairs_pruned++;
            } else {
                ++it;
            }
        }

        for (const Cand& c : cand) {
            if (c.kept && !c.coprime) {
                pairs_.push_back({c.g, t, c.lcm});
                stats_.pairs_generated++;
            } else if (c.coprime) {
                stats_.pairs_pruned++;
            }
        }

        for (size_t g = 0; g < arena_.size(); ++g)
            if (alive_[g] && lt.divides(arena_[g].lead().mono)) alive_[g] = false;

        arena_.push_back(std::move(h));
        alive_.push_back(true);
    }

    void autoreduce() {
        std::vector<Poly> basis;
        for (size_t k = 0; k < arena_.size(); ++k)
            if (alive_[k]) basis.push_back(arena_[k]);
        // Minimalize: drop elements whose lead is divisible by another lead.
        std::vector<bool> keep(basis.size(), true);
        for (size_t i = 0; i < basis.size(); ++i) {
            for (size_t j = 0; j < basis.size() && keep[i]; ++j) {
                if (i == j || !keep[j]) continue;
                const Monomial& li = basis[i].lead().mono;
                const Monomial& lj = basis[j].lead().mono;
                if (lj.divides(li) && !(li == lj && j > i)) keep[i] = false;
            }
        }
        std::vector<Poly> minimal;
        for (size_t i = 0; i < basis.size(); ++i)
            if (keep[i]) minimal.push_back(std::move(basis[i]));

        // Tail-reduce until stable.
        bool changed = true;
        int guard = 0;
        while (changed && ++guard < 64) {
            changed = false;
            for (size_t i = 0; i < minimal.size(); ++i) {
                std::vector<const Poly*> others;
                for (size_t j = 0; j < minimal.size(); ++j)
                    if (j != i) others.push_back(&minimal[j]);
                if (others.empty()) continue;
                auto nf = detail::normal_form(minimal[i], others, order_, params_.budget.max_coeff_bits);
                if (nf.coeff_overflow)
                    throw BudgetExceeded("groebner: coefficient budget during autoreduction", snapshot());
                if (nf.remainder.is_zero()) {
                    minimal.erase(minimal.begin() + static_cast<ptrdiff_t>(i));
                    --i;
                    changed = true;
                    continue;
                }
                Poly r = poly_normalize(nf.remainder, order_.get());
                if (!r.equal(minimal[i])) {
                    minimal[i] = std::move(r);
                    changed = true;
                }
            }
        }
        if (guard >= 64) throw InternalError("autoreduction failed to stabilize");
        arena_ = std::move(minimal);
        alive_.assign(arena_.size(), true);
    }

    std::vector<Poly> finalize() {
        std::sort(arena_.begin(), arena_.end(), [&](const Poly& a, const Poly& b) {
            return order_->compare(a.lead().mono, b.lead().mono) < 0;
        });
        return std::move(arena_);
    }

    void finish_stats() {
        stats_.basis_size = arena_.size();
        stats_.elapsed_s = std::chrono::duration<double>(Clock::now() - start_).count();
        if (out_stats_) *out_stats_ = stats_;
    }

    std::shared_ptr<VarTable> table_;
    OrderPtr order_;
    GBParams params_;
    GroebnerStats stats_;
    GroebnerStats* out_stats_;
    Clock::time_point start_;
    std::vector<Poly> arena_;
    std::vector<bool> alive_;
    std::vector<Pair> pairs_;
    std::vector<const Poly*> reducers_;
};

}  // namespace

std::string GroebnerStats::summary() const {
    return plural(pairs_processed, "pair") + " processed, " + plural(pairs_pruned, "pair") +
           " pruned, basis " + std::to_string(basis_size) + ", " + std::to_string(elapsed_s) + "s";
}

std::vector<Poly> groebner_basis(std::span<const Poly> F, OrderPtr order, const GBParams& params,
                                 GroebnerStats* stats) {
    if (!order) throw UsageError("groebner_basis requires a monomial order");
    bool all_zero = true;
    for (const Poly& f : F)
        if (!f.is_zero()) all_zero = false;
    if (F.empty() || all_zero) return {};
    Buchberger engine(F, order, params, stats);
    std::vector<Poly> basis = engine.run();
    if (params.posthoc_verify && !verify_groebner(F, basis, order))
        throw InternalError("groebner basis failed post-hoc S-polynomial verification");
    return basis;
}

bool verify_groebner(std::span<const Poly> F, std::span<const Poly> G, const OrderPtr& order) {
    if (G.empty()) return F.empty() || std::all_of(F.begin(), F.end(), [](const Poly& f) { return f.is_zero(); });
    std::vector<Poly> sorted;
    sorted.reserve(G.size());
    for (const Poly& g : G) sorted.push_back(g.with_order(order));
    std::vector<const Poly*> red;
    for (const Poly& g : sorted) red.push_back(&g);

    const int n = static_cast<int>(sorted.size());
    std::vector<std::pair<int, int>> idx;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) idx.push_back({i, j});

    std::vector<char> zero(idx.size(), 1);
#pragma omp parallel for schedule(dynamic)
    for (size_t k = 0; k < idx.size(); ++k) {
        auto [i, j] = idx[k];
        const Term& li = sorted[static_cast<size_t>(i)].lead();
        const Term& lj = sorted[static_cast<size_t>(j)].lead();
        Monomial l = Monomial::lcm(li.mono, lj.mono);
        Poly s = sorted[static_cast<size_t>(i)].mul_term(lj.coeff, Monomial::quotient(l, li.mono)) -
                 sorted[static_cast<size_t>(j)].mul_term(li.coeff, Monomial::quotient(l, lj.mono));
        auto nf = detail::normal_form(s, red, order, 0);
        zero[k] = nf.remainder.is_zero() ? 1 : 0;
    }
    for (char z : zero)
        if (!z) return false;
    for (const Poly& f : F) {
        auto nf = detail::normal_form(f.with_order(order), red, order, 0);
        if (!nf.remainder.is_zero()) return false;
    }
    return true;
}

std::vector<int32_t> default_ranking(const VarTable& table, const std::vector<int32_t>& vars) {
    std::vector<int32_t> r = vars;
    std::sort(r.begin(), r.end(), [&](int32_t a, int32_t b) {
        const VarKey& ka = table.key(a);
        const VarKey& kb = table.key(b);
        if (ka.cls != kb.cls) return static_cast<int>(ka.cls) < static_cast<int>(kb.cls);
        if (ka.cls == VarClass::Deriv) {
            int c = theta_compare(ka.index, kb.index);
            if (c != 0) return c > 0;  // higher theta order more significant
            if (ka.indet != kb.indet) return ka.indet < kb.indet;
        }
        return a < b;  // insertion order
    });
    return r;
}

std::vector<Poly> saturate(std::span<const Poly> F, const Poly& H, const OrderPtr& order,
                           const GBParams& params) {
    if (H.is_zero()) throw UsageError("saturation by the zero polynomial");
    if (F.empty()) return {};
    const std::shared_ptr<VarTable>& src = F.front().table();
    if (H.is_constant()) {
        // Unit saturation is the identity on the ideal.
        OrderPtr base = order;
        if (!base) {
            std::vector<int32_t> all(static_cast<size_t>(src->size()));
            for (int32_t i = 0; i < src->size(); ++i) all[static_cast<size_t>(i)] = i;
            base = std::make_shared<MonomialOrder>(MonomialOrder::degrevlex(default_ranking(*src, all)));
        }
        return groebner_basis(F, base, params);
    }

    // Extended table: same indices plus one auxiliary variable on top.
    auto ext = std::make_shared<VarTable>(*src);
    int32_t t = ext->intern(VarKey::auxiliary("~t" + std::to_string(ext->size())));

    std::vector<int32_t> rest(static_cast<size_t>(t));
    for (int32_t i = 0; i < t; ++i) rest[static_cast<size_t>(i)] = i;
    auto ranked = default_ranking(*ext, rest);
    auto ext_order = std::make_shared<MonomialOrder>(MonomialOrder::blocks(
        {{MonomialOrder::Kind::Lex, {t}}, {MonomialOrder::Kind::DegRevLex, ranked}}));

    auto lift = [&](const Poly& p) {
        std::vector<Term> ts(p.terms().begin(), p.terms().end());
        return Poly::from_terms(ext, std::move(ts), ext_order);
    };
    std::vector<Poly> gens;
    for (const Poly& f : F)
        if (!f.is_zero()) gens.push_back(lift(f));
    Poly rel = Poly::constant(ext, Rational(1), ext_order) -
               lift(H).mul_term(Rational(1), Monomial::var(t));
    gens.push_back(rel);

    std::vector<Poly> basis = groebner_basis(gens, ext_order, params);

    std::vector<Poly> out;
    for (const Poly& g : basis) {
        if (g.contains_var(t)) continue;
        std::vector<Term> ts(g.terms().begin(), g.terms().end());
        out.push_back(poly_normalize(Poly::from_terms(F.front().table(), std::move(ts)), nullptr));
    }
    return out;
}

std::vector<Poly> eliminate(std::span<const Poly> F, const std::vector<bool>& keep,
                            ElimStrategy strategy, const ElimHints& hints, const GBParams& params) {
    if (F.empty()) return {};
    const std::shared_ptr<VarTable>& table = F.front().table();
    if (static_cast<int32_t>(keep.size()) != table->size())
        throw UsageError("eliminate: keep mask does not cover the table");

    std::vector<int32_t> elim_vars, keep_vars;
    for (int32_t v = 0; v < table->size(); ++v)
        (keep[static_cast<size_t>(v)] ? keep_vars : elim_vars).push_back(v);

    std::vector<int32_t> elim_desc =
        hints.elim_desc.empty() ? default_ranking(*table, elim_vars) : hints.elim_desc;
    std::vector<int32_t> keep_desc =
        hints.keep_desc.empty() ? default_ranking(*table, keep_vars) : hints.keep_desc;

    OrderPtr order;
    if (strategy == ElimStrategy::Lex) {
        std::vector<int32_t> all = elim_desc;
        all.insert(all.end(), keep_desc.begin(), keep_desc.end());
        order = std::make_shared<MonomialOrder>(MonomialOrder::lex(std::move(all)));
    } else {
        order = std::make_shared<MonomialOrder>(MonomialOrder::blocks(
            {{MonomialOrder::Kind::DegRevLex, elim_desc}, {MonomialOrder::Kind::DegRevLex, keep_desc}}));
    }

    std::vector<Poly> basis = groebner_basis(F, order, params);
    std::vector<Poly> out;
    for (const Poly& g : basis) {
        bool supported = true;
        for (const Term& t : g.terms()) {
            for (const VarExp& ve : t.mono.entries()) {
                if (!keep[static_cast<size_t>(ve.var)]) {
                    supported = false;
                    break;
                }
            }
            if (!supported) break;
        }
        if (supported) out.push_back(poly_normalize(g.with_order(nullptr), nullptr));
    }
    return out;
}

const std::vector<Poly>& Ideal::basis(const GBParams& params) {
    if (!gb_cache) gb_cache = groebner_basis(generators, order, params);
    return *gb_cache;
}

bool ideal_member(const Poly& f, Ideal& I, const GBParams& params) {
    if (f.is_zero()) return true;
    const std::vector<Poly>& gb = I.basis(params);
    if (gb.empty()) return false;
    auto [rem, flag] = poly_reduce(f, gb, I.order);
    return rem.is_zero();
}

}  // namespace dalg
