#include "dalg/jsonio.hpp"

#include <json.hpp>

#include "dalg/printer.hpp"

namespace dalg {

namespace {

using nlohmann::json;

json order_json(const std::vector<uint32_t>& order) {
    if (order.size() == 1) return order[0];
    json a = json::array();
    for (uint32_t v : order) a.push_back(v);
    return a;
}

}  // namespace

std::string emit_json(const AdeResult& res) {
    json j;
    j["status"] = "ok";
    j["order"] = order_json(res.order);
    j["degree"] = res.degree;
    j["poly"] = print_poly(res.polynomial, *res.ctx, PrintStyle::Ascii);
    json terms = json::array();
    for (const Term& t : res.polynomial.terms()) {
        json term;
        term["coeff"] = t.coeff.str();
        json mono = json::array();
        for (const VarExp& ve : t.mono.entries()) {
            const VarKey& k = res.table->key(ve.var);
            std::string name;
            if (k.cls == VarClass::Deriv) {
                name = res.ctx->indets[static_cast<size_t>(k.indet)].name;
                if (k.total_order() > 0) {
                    name = "D[";
                    bool first = true;
                    for (size_t a = 0; a < k.index.size(); ++a)
                        for (uint32_t i = 0; i < k.index[a]; ++i) {
                            if (!first) name += ",";
                            name += res.ctx->indep[a];
                            first = false;
                        }
                    name += "](" + res.ctx->indets[static_cast<size_t>(k.indet)].name + ")";
                }
            } else {
                name = k.name;
            }
            mono.push_back(json::array({name, ve.exp}));
        }
        term["monomial"] = mono;
        terms.push_back(term);
    }
    j["terms"] = terms;
    j["options"] = res.options_echo;
    if (res.unverified_saturation) j["warning"] = "separants-zeros: elimination ideal not guaranteed non-trivial";
    j["elapsed_ms"] = res.elapsed_ms;
    return j.dump(2) + "\n";
}

std::string emit_json_not_found(const MultiOutcome& out, double elapsed_ms) {
    json j;
    j["status"] = "not_found";
    j["bound"] = json::array();
    for (uint32_t v : out.bounds) j["bound"].push_back(v);
    j["options"] = out.options_echo;
    j["elapsed_ms"] = elapsed_ms;
    return j.dump(2) + "\n";
}

std::string emit_json_error(const std::string& message) {
    json j;
    j["status"] = "error";
    j["message"] = message;
    return j.dump(2) + "\n";
}

}  // namespace dalg
