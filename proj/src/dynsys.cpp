#include "dalg/dynsys.hpp"

#include <algorithm>

#include "dalg/errors.hpp"

namespace dalg {

namespace {

// The unique indeterminate occurring in p, or an error.
int single_indet(const DiffPoly& p) {
    const auto& table = p.ring->table();
    int found = -1;
    for (const Term& t : p.poly.terms()) {
        for (const VarExp& ve : t.mono.entries()) {
            const VarKey& k = table->key(ve.var);
            if (k.cls != VarClass::Deriv) continue;
            if (found == -1) found = k.indet;
            else if (found != k.indet)
                throw UnsupportedInput("input ADE involves more than one indeterminate");
        }
    }
    if (found == -1) throw UnsupportedInput("input ADE involves no indeterminate");
    return found;
}

}  // namespace

LhoDecomposition decompose_lho(const DiffPoly& p) {
    if (p.ring->ctx()->l() != 1)
        throw UsageError("decompose_lho expects a univariate differential polynomial");
    int y = single_indet(p);
    std::vector<uint32_t> ord = diff_order(p);
    if (ord[0] == 0) throw UnsupportedInput("order-0 input ADE (purely algebraic constraint)");

    const auto& ring = p.ring;
    int32_t top = ring->var_deriv(y, {ord[0]});

    int m = 0;
    for (const Term& t : p.poly.terms()) m = std::max(m, static_cast<int>(t.mono.exp_of(top)));

    std::vector<Term> init_terms;
    for (const Term& t : p.poly.terms()) {
        if (static_cast<int>(t.mono.exp_of(top)) != m) continue;
        Monomial rest = Monomial::quotient(t.mono, Monomial::var(top, m));
        init_terms.push_back({t.coeff, std::move(rest)});
    }
    DiffPoly initial{ring, Poly::from_terms(ring->table(), std::move(init_terms))};
    DiffPoly top_part = dp_mul(initial, DiffPoly{ring, Poly::from_terms(ring->table(),
                                                                        {{Rational(1), Monomial::var(top, m)}})});
    DiffPoly rest = dp_sub(p, top_part);
    return {m, std::move(initial), std::move(rest)};
}

InputAde analyze_input(const DiffPoly& p, const DiffPoly& cleared_den) {
    InputAde in;
    in.p = p;
    in.indet = single_indet(p);
    in.order = static_cast<int>(diff_order(p)[0]);
    LhoDecomposition d = decompose_lho(p);
    in.top_degree = d.m;
    in.lho = d.m == 1;
    in.initial = std::move(d.initial);
    in.rest = std::move(d.rest);
    in.cleared_denominator = cleared_den;
    return in;
}

InputAde analyze_input(const DiffPoly& p) {
    return analyze_input(p, DiffPoly{p.ring, p.ring->constant(Rational(1))});
}

namespace {

// Variable remapping session ring -> w ring. Derivatives y_i^(j) map to the
// state w holding y_i^(j); j = n_i maps to the first derivative of the top
// state when `allow_top` is set.
struct Remapper {
    const std::shared_ptr<DiffRing>& src;
    const std::shared_ptr<DiffRing>& dst;
    const std::vector<int>& indet_to_ade;       // session indet -> input index, -1 if none
    const std::vector<int>& ade_first_state;    // input -> first state index (0-based)
    std::span<const InputAde> ades;

    Poly map(const Poly& p, bool allow_top) const {
        std::vector<Term> out;
        const auto& table = src->table();
        for (const Term& t : p.terms()) {
            std::vector<VarExp> entries;
            for (const VarExp& ve : t.mono.entries()) {
                const VarKey& k = table->key(ve.var);
                int32_t nv;
                switch (k.cls) {
                    case VarClass::Independent:
                        nv = dst->var_indep(0);
                        break;
                    case VarClass::Parameter: {
                        auto pi = dst->ctx()->find_param(k.name);
                        if (!pi) throw InternalError("parameter missing in state ring");
                        nv = dst->var_param(*pi);
                        break;
                    }
                    case VarClass::Deriv: {
                        int ade = indet_to_ade[static_cast<size_t>(k.indet)];
                        if (ade < 0) throw UnsupportedInput("expression uses an indeterminate with no input ADE");
                        int j = static_cast<int>(k.index[0]);
                        int n = ades[static_cast<size_t>(ade)].order;
                        if (j < n) {
                            nv = dst->var_deriv(ade_first_state[static_cast<size_t>(ade)] + j, {0});
                        } else if (j == n && allow_top) {
                            nv = dst->var_deriv(ade_first_state[static_cast<size_t>(ade)] + n - 1, {1});
                        } else {
                            throw UnsupportedInput(
                                "derivative of order " + std::to_string(j) +
                                " exceeds the state bound of its input ADE");
                        }
                        break;
                    }
                    default:
                        throw InternalError("auxiliary variable in a differential polynomial");
                }
                entries.push_back({nv, ve.exp});
            }
            std::sort(entries.begin(), entries.end(),
                      [](const VarExp& a, const VarExp& b) { return a.var < b.var; });
            // Two distinct source variables cannot collide: the map is injective.
            out.push_back({t.coeff, Monomial(std::move(entries))});
        }
        return Poly::from_terms(dst->table(), std::move(out));
    }
};

DiffPoly normalize_dp(const DiffPoly& f) {
    if (f.poly.is_zero()) return f;
    return {f.ring, poly_normalize(f.poly, nullptr)};
}

}  // namespace

DynSystem build_state_system(std::span<const InputAde> ades, const RatExpr& r,
                             const std::string& target_name, const GBParams& params) {
    if (ades.empty()) throw UsageError("no input ADEs");
    const auto& session = ades.front().p.ring;
    if (session->ctx()->l() != 1)
        throw UsageError("state systems require a single independent variable");
    for (const InputAde& in : ades)
        if (in.p.ring != session) throw UsageError("input ADEs from different sessions");
    if (r.num.ring != session || r.den.ring != session)
        throw UsageError("target expression from a different session");
    if (r.den.poly.is_zero()) throw DegenerateExpression("target denominator is syntactically zero");

    DynSystem sys;
    sys.M = 0;
    for (const InputAde& in : ades) sys.M += in.order;

    // Distinct indeterminates per input.
    std::vector<int> indet_to_ade(session->ctx()->indets.size(), -1);
    for (size_t i = 0; i < ades.size(); ++i) {
        int y = ades[i].indet;
        if (indet_to_ade[static_cast<size_t>(y)] != -1)
            throw UnsupportedInput("two input ADEs constrain the same indeterminate");
        indet_to_ade[static_cast<size_t>(y)] = static_cast<int>(i);
    }

    // State ring: w_1..w_M then the target indeterminate, all functions of x.
    auto wctx = std::make_shared<DiffContext>();
    wctx->indep = session->ctx()->indep;
    wctx->params = session->ctx()->params;
    std::vector<int> first_state(ades.size(), 0);
    int state = 0;
    for (size_t i = 0; i < ades.size(); ++i) {
        first_state[i] = state;
        for (int j = 0; j < ades[i].order; ++j) {
            wctx->indets.push_back({"w" + std::to_string(state + 1), {1}});
            sys.states.push_back({static_cast<int>(i), ades[i].indet, j,
                                  j == ades[i].order - 1});
            ++state;
        }
    }
    wctx->indets.push_back({target_name, {1}});
    sys.z_indet = sys.M;
    sys.wring = std::make_shared<DiffRing>(wctx);

    Remapper rm{session, sys.wring, indet_to_ade, first_state, ades};
    auto lift = [&](const Poly& p, bool allow_top) { return DiffPoly{sys.wring, rm.map(p, allow_top)}; };

    // Exact per-state equations and the per-input data.
    std::vector<DiffPoly> initials;
    for (size_t i = 0; i < ades.size(); ++i) initials.push_back(lift(ades[i].initial.poly, false));
    DiffPoly den_r = lift(r.den.poly, false);
    DiffPoly num_r = lift(r.num.poly, false);

    sys.mu.assign(static_cast<size_t>(sys.M), 1);
    for (int j = 0; j < sys.M; ++j) {
        const auto& st = sys.states[static_cast<size_t>(j)];
        if (!st.top) {
            Poly chain = sys.wring->var(sys.wring->var_deriv(j, {1})) -
                         sys.wring->var(sys.wring->var_deriv(j + 1, {0}));
            sys.eqs.push_back({sys.wring, std::move(chain)});
        } else {
            const InputAde& in = ades[static_cast<size_t>(st.ade)];
            sys.eqs.push_back(lift(in.p.poly, true));
            sys.mu[static_cast<size_t>(j)] = in.top_degree;
        }
    }
    sys.output = dp_sub(dp_mul(den_r, DiffPoly{sys.wring, sys.wring->var(sys.wring->var_deriv(sys.z_indet, {0}))}),
                        num_r);

    // Common denominator: lcm of the initials and r's denominator, by exact
    // division probes (the pieces are squarefree by construction).
    auto lcm_probe = [&](DiffPoly acc, const DiffPoly& d) {
        if (d.poly.is_constant()) return acc;
        DiffPoly dn = normalize_dp(d);
        if (poly_exact_divide(acc.poly, dn.poly)) return acc;
        if (auto q = poly_exact_divide(dn.poly, acc.poly)) return dn;
        return DiffPoly{sys.wring, acc.poly * dn.poly};
    };
    DiffPoly Q{sys.wring, sys.wring->constant(Rational(1))};
    for (const DiffPoly& c : initials) Q = lcm_probe(Q, c);
    Q = lcm_probe(Q, den_r);
    sys.Q = Q;

    // Abstract numerators over the common denominator.
    for (int j = 0; j < sys.M; ++j) {
        const auto& st = sys.states[static_cast<size_t>(j)];
        if (!st.top) {
            sys.a.push_back({sys.wring, sys.wring->var(sys.wring->var_deriv(j + 1, {0})) * Q.poly});
            sys.e.push_back({sys.wring, Poly::zero(sys.wring->table())});
            continue;
        }
        const InputAde& in = ades[static_cast<size_t>(st.ade)];
        Poly scale = *poly_exact_divide(Q.poly, initials[static_cast<size_t>(st.ade)].poly);
        Poly rest_w = rm.map(in.rest.poly, true);
        // Split -rest into the part free of w_top' and the carrier.
        int32_t topvar = sys.wring->var_deriv(j, {1});
        std::vector<Term> afree, acar;
        for (const Term& t : rest_w.terms()) {
            if (t.mono.exp_of(topvar) > 0) acar.push_back(t);
            else afree.push_back(t);
        }
        Poly free_part = Poly::from_terms(sys.wring->table(), std::move(afree));
        Poly car_part = Poly::from_terms(sys.wring->table(), std::move(acar));
        sys.a.push_back({sys.wring, -(free_part * scale)});
        sys.e.push_back({sys.wring, -(car_part * scale)});
    }
    sys.b = DiffPoly{sys.wring, num_r.poly * *poly_exact_divide(Q.poly, den_r.poly)};

    // Saturation factors: Q, separants of the top relations, and any
    // denominators the parser cleared from the inputs.
    std::vector<DiffPoly> factors;
    auto push_factor = [&](const DiffPoly& f) {
        if (f.poly.is_zero() || f.poly.is_constant()) return;
        DiffPoly n = normalize_dp(f);
        for (const DiffPoly& g : factors)
            if (g.poly.equal(n.poly)) return;
        factors.push_back(std::move(n));
    };
    push_factor(Q);
    for (int j = 0; j < sys.M; ++j) {
        const auto& st = sys.states[static_cast<size_t>(j)];
        if (!st.top) continue;
        int mu = sys.mu[static_cast<size_t>(j)];
        int32_t topvar = sys.wring->var_deriv(j, {1});
        Poly sep = Q.poly.mul_scalar(Rational(mu));
        if (mu > 1) sep = sep * Poly::from_terms(sys.wring->table(), {{Rational(1), Monomial::var(topvar, mu - 1)}});
        sep = sep - poly_dvar(sys.e[static_cast<size_t>(j)].poly, topvar);
        push_factor({sys.wring, std::move(sep)});
    }
    for (const InputAde& in : ades) push_factor(lift(in.cleared_denominator.poly, true));
    sys.sat_factors = factors;
    DiffPoly H{sys.wring, sys.wring->constant(Rational(1))};
    for (const DiffPoly& f : factors) H = lcm_probe(H, f);
    sys.H = H;

    // Degenerate target: denominator vanishing on every solution of the
    // state equations, detected by ideal membership.
    if (!den_r.poly.is_constant()) {
        std::vector<Poly> gens;
        for (const DiffPoly& eq : sys.eqs) gens.push_back(eq.poly);
        std::vector<int32_t> all(static_cast<size_t>(sys.wring->table()->size()));
        for (int32_t v = 0; v < sys.wring->table()->size(); ++v) all[static_cast<size_t>(v)] = v;
        auto ord = std::make_shared<MonomialOrder>(
            MonomialOrder::degrevlex(default_ranking(*sys.wring->table(), all)));
        Ideal I{gens, ord, std::nullopt};
        if (ideal_member(den_r.poly, I, params))
            throw DegenerateExpression("target denominator vanishes on all solutions of the inputs");
    }

    return sys;
}

std::vector<DiffPoly> system_polynomials(const DynSystem& sys) {
    std::vector<DiffPoly> out = sys.eqs;
    out.push_back(sys.output);
    return out;
}

}  // namespace dalg
