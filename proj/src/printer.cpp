#include "dalg/printer.hpp"

#include <algorithm>

#include "dalg/errors.hpp"

namespace dalg {

namespace {

std::string var_ascii(const VarKey& k, const DiffContext& ctx) {
    switch (k.cls) {
        case VarClass::Independent:
        case VarClass::Parameter:
        case VarClass::Auxiliary:
            return k.name;
        case VarClass::Deriv: {
            const std::string& name = ctx.indets[static_cast<size_t>(k.indet)].name;
            if (k.total_order() == 0) return name;
            std::string s = "D[";
            bool first = true;
            for (size_t a = 0; a < k.index.size(); ++a) {
                for (uint32_t i = 0; i < k.index[a]; ++i) {
                    if (!first) s += ",";
                    s += ctx.indep[a];
                    first = false;
                }
            }
            s += "](" + name + ")";
            return s;
        }
    }
    return "?";
}

std::string var_latex(const VarKey& k, const DiffContext& ctx) {
    switch (k.cls) {
        case VarClass::Independent:
        case VarClass::Parameter:
        case VarClass::Auxiliary:
            return k.name;
        case VarClass::Deriv: {
            const std::string& name = ctx.indets[static_cast<size_t>(k.indet)].name;
            uint64_t total = k.total_order();
            if (total == 0) return name;
            std::string s = "\\frac{";
            s += (ctx.l() == 1) ? "d" : "\\partial";
            if (total > 1) s += "^{" + std::to_string(total) + "}";
            s += "}{";
            for (size_t a = 0; a < k.index.size(); ++a) {
                if (k.index[a] == 0) continue;
                s += (ctx.l() == 1) ? "d " : "\\partial ";
                s += ctx.indep[a];
                if (k.index[a] > 1) s += "^{" + std::to_string(k.index[a]) + "}";
            }
            s += "} " + name;
            return s;
        }
    }
    return "?";
}

std::string coeff_str(const Rational& c) {
    Rational a = c.abs();
    return a.str();
}

}  // namespace

std::string print_poly(const Poly& p, const DiffContext& ctx, PrintStyle style) {
    if (p.is_zero()) return "0";
    const auto& table = p.table();

    // Canonical term order: descending under the default ranking lex order.
    std::vector<int32_t> all(static_cast<size_t>(table->size()));
    for (int32_t v = 0; v < table->size(); ++v) all[static_cast<size_t>(v)] = v;
    auto canon = std::make_shared<MonomialOrder>(MonomialOrder::lex(default_ranking(*table, all)));
    Poly sorted = p.with_order(canon);

    // Significance rank per variable for factor ordering inside a monomial.
    std::vector<int32_t> rank(static_cast<size_t>(table->size()), 0);
    {
        auto ranking = default_ranking(*table, all);
        for (size_t pos = 0; pos < ranking.size(); ++pos)
            rank[static_cast<size_t>(ranking[pos])] = static_cast<int32_t>(pos);
    }

    std::string out;
    bool first = true;
    for (const Term& t : sorted.terms()) {
        bool negative = t.coeff.sign() < 0;
        if (first) {
            if (negative) out += "-";
            first = false;
        } else {
            out += negative ? " - " : " + ";
        }
        std::vector<VarExp> factors(t.mono.entries().begin(), t.mono.entries().end());
        std::sort(factors.begin(), factors.end(), [&](const VarExp& a, const VarExp& b) {
            return rank[static_cast<size_t>(a.var)] > rank[static_cast<size_t>(b.var)];
        });
        Rational a = t.coeff.abs();
        std::string mono;
        for (size_t i = 0; i < factors.size(); ++i) {
            if (i) mono += style == PrintStyle::Ascii ? "*" : " ";
            std::string v = style == PrintStyle::Ascii ? var_ascii(table->key(factors[i].var), ctx)
                                                       : var_latex(table->key(factors[i].var), ctx);
            if (style == PrintStyle::Latex && table->key(factors[i].var).cls == VarClass::Deriv &&
                table->key(factors[i].var).total_order() > 0 && factors[i].exp > 1)
                v = "\\left(" + v + "\\right)";
            mono += v;
            if (factors[i].exp > 1)
                mono += (style == PrintStyle::Ascii ? "^" + std::to_string(factors[i].exp)
                                                    : "^{" + std::to_string(factors[i].exp) + "}");
        }
        if (mono.empty()) {
            out += coeff_str(a);
        } else if (a.is_one()) {
            out += mono;
        } else {
            out += coeff_str(a) + (style == PrintStyle::Ascii ? "*" : " \\, ") + mono;
        }
    }
    return out;
}

std::string print_ade(const AdeResult& res, PrintStyle style) {
    return print_poly(res.polynomial, *res.ctx, style) + " = 0";
}

}  // namespace dalg
