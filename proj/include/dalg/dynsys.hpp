#pragma once

#include <span>
#include <string>
#include <vector>

#include "dalg/diffring.hpp"
#include "dalg/groebner.hpp"

namespace dalg {

// Rational expression as a pair of differential polynomials over one session.
struct RatExpr {
    DiffPoly num;
    DiffPoly den;
};

// One input ADE, decomposed with respect to its highest derivative:
// p = initial * (y^(n))^m + rest with deg_{y^(n)}(rest) < m.
struct InputAde {
    DiffPoly p;
    int indet = -1;
    int order = 0;       // n
    int top_degree = 1;  // m
    bool lho = true;     // m == 1
    DiffPoly initial;    // c_m, free of y^(n)
    DiffPoly rest;
    DiffPoly cleared_denominator;  // denominator the parser multiplied away (1 if none)
};

struct LhoDecomposition {
    int m;
    DiffPoly initial;
    DiffPoly rest;
};

// Decomposition of a univariate differential polynomial w.r.t. its highest
// derivative. Errors on order-0 input.
LhoDecomposition decompose_lho(const DiffPoly& p);

// Full input analysis (single indeterminate, order, decomposition).
InputAde analyze_input(const DiffPoly& p, const DiffPoly& cleared_den);
InputAde analyze_input(const DiffPoly& p);

// The radical-rational state space (M_f*) of a list of input ADEs and a
// rational output expression.
struct DynSystem {
    std::shared_ptr<DiffRing> wring;  // indets w_1..w_M and the output z; l = 1
    int M = 0;
    int z_indet = -1;

    struct StateMap {
        int ade;        // input index
        int src_indet;  // session indeterminate
        int deriv;      // w_j represents y^(deriv)
        bool top;       // last state of its block
    };
    std::vector<StateMap> states;
    std::vector<int> mu;  // per state; 1 on chain states

    // Abstract common-denominator form: Q w_i'^mu_i = a_i + e_i(w_i'), Q z = b.
    DiffPoly Q;
    std::vector<DiffPoly> a;
    std::vector<DiffPoly> e;
    DiffPoly b;
    DiffPoly H;                          // product of the saturation factors
    std::vector<DiffPoly> sat_factors;   // normalized nonconstant factors of H

    // Exact per-equation polynomials (denominators cleared per equation).
    std::vector<DiffPoly> eqs;  // one per state, in state order
    DiffPoly output;            // den_r * z - num_r
};

// State-space assembly: states, chain relations, solved top relations,
// common denominator Q, output numerator and the separant product H.
DynSystem build_state_system(std::span<const InputAde> ades, const RatExpr& r,
                             const std::string& target_name, const GBParams& params = {});

// The generator set E: state equations followed by the output relation.
std::vector<DiffPoly> system_polynomials(const DynSystem& sys);

}  // namespace dalg
