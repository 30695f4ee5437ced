#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dalg/budget.hpp"
#include "dalg/poly.hpp"

namespace dalg {

struct GBParams {
    Budget budget;
    // Re-check every S-polynomial of the finished basis by an independent
    // reduction pass (parallelized); throws InternalError on failure.
    bool posthoc_verify = false;
};

// Reduced Groebner basis of <F>: autoreduced, each element normalized with
// positive leading coefficient. Deterministic output ordering (ascending
// leading monomial).
std::vector<Poly> groebner_basis(std::span<const Poly> F, OrderPtr order,
                                 const GBParams& params = {}, GroebnerStats* stats = nullptr);

// Independent check that G is a Groebner basis containing <F>: every
// S-polynomial of G and every f in F reduces to zero modulo G.
bool verify_groebner(std::span<const Poly> F, std::span<const Poly> G, const OrderPtr& order);

// Generators of <F> : H^inf in the original variables, computed with one
// auxiliary variable t ranked above everything and the relation 1 - t*H.
std::vector<Poly> saturate(std::span<const Poly> F, const Poly& H, const OrderPtr& order,
                           const GBParams& params = {});

enum class ElimStrategy { Lex, LexDeg };

// Optional explicit significance rankings (most significant first) for the
// eliminated and kept blocks; defaults are derived from variable classes
// with derivative descriptors ranked by theta order.
struct ElimHints {
    std::vector<int32_t> elim_desc;
    std::vector<int32_t> keep_desc;
};

// Generators of <F> intersected with the subring on `keep`.
std::vector<Poly> eliminate(std::span<const Poly> F, const std::vector<bool>& keep,
                            ElimStrategy strategy, const ElimHints& hints = {},
                            const GBParams& params = {});

// Default significance ranking of a variable subset (most significant first):
// class skeleton Auxiliary > Deriv > Independent > Parameter, derivative
// descriptors by descending theta order.
std::vector<int32_t> default_ranking(const VarTable& table, const std::vector<int32_t>& vars);

struct Ideal {
    std::vector<Poly> generators;
    OrderPtr order;
    std::optional<std::vector<Poly>> gb_cache;

    const std::vector<Poly>& basis(const GBParams& params = {});
};

bool ideal_member(const Poly& f, Ideal& I, const GBParams& params = {});

}  // namespace dalg
