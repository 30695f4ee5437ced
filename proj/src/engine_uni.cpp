#include "dalg/engine_uni.hpp"

#include <chrono>

#include "dalg/errors.hpp"

namespace dalg {

namespace {

std::string echo_options(const UniOptions& o, int n_inputs) {
    std::string s = "engine=uni inputs=" + std::to_string(n_inputs) + " lho=";
    switch (o.lho_mode) {
        case LhoMode::Auto: s += "auto"; break;
        case LhoMode::ForceLho: s += "true"; break;
        case LhoMode::ForceNonLho: s += "false"; break;
    }
    s += " ordering=";
    s += o.ordering == ElimStrategy::Lex ? "lex" : "lexdeg";
    if (o.separants_zeros) s += " separants-zeros";
    if (o.diff_first) s += " diff-first";
    return s;
}

}  // namespace

AdeResult arithmetic_uni(std::vector<InputAde> ades, const RatExpr& r,
                         const std::string& target_name, const UniOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    if (ades.empty()) throw UsageError("arithmetic_uni needs at least one input ADE");
    const auto session = ades.front().p.ring;
    if (session->ctx()->l() != 1)
        throw UsageError("the univariate engine requires exactly one independent variable");

    if (opts.diff_first) {
        for (InputAde& in : ades) {
            if (in.lho) continue;
            in = analyze_input(total_derive(in.p), in.cleared_denominator);
        }
    }

    int M = 0;
    bool all_lho = true;
    for (const InputAde& in : ades) {
        M += in.order;
        all_lho = all_lho && in.lho;
    }

    GBParams params;
    params.budget = opts.budget;
    params.posthoc_verify = opts.verify;

    DynSystem sys = build_state_system(ades, r, target_name, params);

    // E: the system polynomials, their first M-1 total derivatives, and the
    // Mth derivative of the output relation.
    std::vector<DiffPoly> E = system_polynomials(sys);
    std::vector<DiffPoly> frontier = E;
    for (int d = 1; d < M; ++d) {
        for (DiffPoly& f : frontier) {
            f = total_derive(f);
            E.push_back(f);
        }
    }
    E.push_back(total_derive(frontier.back()));  // output sits last in E

    // Saturation factor list per the l.h.o. switch.
    bool q_only = opts.separants_zeros || opts.lho_mode == LhoMode::ForceLho ||
                  (opts.lho_mode == LhoMode::Auto && all_lho);
    std::vector<DiffPoly> factors;
    if (q_only) {
        if (!sys.Q.poly.is_constant()) factors.push_back(sys.Q);
        for (const InputAde& in : ades)
            if (!in.cleared_denominator.poly.is_constant())
                factors.push_back(in.cleared_denominator);
    } else {
        factors = sys.sat_factors;
    }

    // Flatten into a fresh table: w derivatives, z derivatives, x, parameters.
    auto gbtable = std::make_shared<VarTable>();
    for (int j = 0; j < sys.M; ++j)
        for (int d = 0; d <= M; ++d) gbtable->intern(VarKey::deriv(j, {static_cast<uint32_t>(d)}));
    for (int d = 0; d <= M; ++d)
        gbtable->intern(VarKey::deriv(sys.z_indet, {static_cast<uint32_t>(d)}));
    gbtable->intern(VarKey::independent(session->ctx()->indep[0]));
    for (const std::string& p : session->ctx()->params) gbtable->intern(VarKey::parameter(p));

    std::vector<Poly> gens;
    for (const DiffPoly& f : E)
        if (!f.poly.is_zero()) gens.push_back(poly_normalize(flatten(f, gbtable), nullptr));

    for (const DiffPoly& f : factors) {
        if (f.poly.is_constant()) continue;
        Poly hf = flatten(f, gbtable);
        gens = saturate(gens, hf, nullptr, params);
    }

    std::vector<bool> keep(static_cast<size_t>(gbtable->size()), false);
    for (int32_t v = 0; v < gbtable->size(); ++v) {
        const VarKey& k = gbtable->key(v);
        keep[static_cast<size_t>(v)] =
            k.cls == VarClass::Independent || k.cls == VarClass::Parameter ||
            (k.cls == VarClass::Deriv && k.indet == sys.z_indet);
    }
    std::vector<Poly> elim = eliminate(gens, keep, opts.ordering, {}, params);

    if (elim.empty())
        throw NoAdeFound("trivial elimination ideal: no ADE within the order bound " +
                         std::to_string(M));
    for (const Poly& g : elim)
        if (g.is_constant())
            throw NoAdeFound("inconsistent input system: elimination ideal is the unit ideal");

    Poly best = select_min(elim, 1);

    if (opts.verify) {
        // The selected polynomial must lie in the saturated ideal.
        std::vector<int32_t> all(static_cast<size_t>(gbtable->size()));
        for (int32_t v = 0; v < gbtable->size(); ++v) all[static_cast<size_t>(v)] = v;
        auto ord = std::make_shared<MonomialOrder>(
            MonomialOrder::degrevlex(default_ranking(*gbtable, all)));
        Ideal I{gens, ord, std::nullopt};
        if (!ideal_member(best, I, params))
            throw InternalError("selected ADE is not a member of the saturated ideal");
    }

    AdeResult res = canonicalize_result(best, sys.z_indet, target_name, session->ctx());
    res.unverified_saturation = opts.separants_zeros;
    res.options_echo = echo_options(opts, static_cast<int>(ades.size()));
    res.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return res;
}

AdeResult unary_uni(const InputAde& ade, const RatExpr& r, const std::string& target_name,
                    const UniOptions& opts) {
    return arithmetic_uni({ade}, r, target_name, opts);
}

}  // namespace dalg
