#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "dalg/dynsys.hpp"
#include "dalg/groebner.hpp"

namespace dalg {

// A computed ADE. The polynomial lives over a table of derivative
// descriptors of the single result indeterminate (id 0 in `ctx`) plus
// independent variables and parameters, normalized under the canonical lex
// order (derivatives by descending theta order, then x, then parameters).
struct AdeResult {
    Poly polynomial;
    std::shared_ptr<VarTable> table;
    std::shared_ptr<DiffContext> ctx;  // indets = {target}, plus indep/params
    std::vector<uint32_t> order;       // componentwise derivative order
    int64_t degree = 0;                // total degree over derivative variables
    double elapsed_ms = 0.0;
    std::string options_echo;
    bool unverified_saturation = false;
};

// Total degree counting only derivative-descriptor variables.
int64_t deriv_degree(const Poly& p);

// Largest descriptor multi-index of `p` under the graded-lex comparison used
// for result selection (total order first, leftmost component breaking ties).
std::vector<uint32_t> selection_key(const Poly& p, int l);

// Among elements of minimal order, one of minimal derivative degree; ties
// broken by fewest terms, then by a canonical structural comparison.
Poly select_min(std::span<const Poly> G, int l);

// Rebuilds `selected` (over an engine table whose derivative descriptors all
// belong to `src_indet`) over a fresh result table and context, normalized
// under the canonical order.
AdeResult canonicalize_result(const Poly& selected, int src_indet, const std::string& target_name,
                              const std::shared_ptr<DiffContext>& session_ctx);

// Exact comparison of two results/expected polynomials up to a nonzero
// rational factor: equality of the normalized forms over a merged table.
bool ade_equivalent(const AdeResult& a, const Poly& expected,
                    const std::shared_ptr<VarTable>& expected_table);

}  // namespace dalg
