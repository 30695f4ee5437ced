#pragma once

#include <optional>

#include "dalg/engine_common.hpp"

namespace dalg {

struct MultiOptions {
    std::optional<std::vector<uint32_t>> maxord;  // componentwise order bound override
    ElimStrategy ordering = ElimStrategy::Lex;
    Budget budget;
    bool verify = false;
};

// One input algebraic PDE (or ODE with a restricted dependency set).
struct MultiInput {
    DiffPoly p;
    DiffPoly cleared_denominator;  // 1 when the input was polynomial
};

struct MultiOutcome {
    bool found = false;
    std::optional<AdeResult> result;
    std::vector<uint32_t> bounds;  // the componentwise bound that was searched
    std::string options_echo;
};

// Step 5 of the search: theta-derivatives of the output relation numerator,
// filtered componentwise by `bounds`.
std::vector<DiffPoly> seed_output_derivatives(const DiffPoly& r_numerator,
                                              const std::vector<uint32_t>& bounds, uint64_t nu);

// Step 8: an input polynomial together with its first d theta-derivatives
// (zero derivatives from dependency annihilation are dropped).
std::vector<DiffPoly> seed_input_derivatives(const DiffPoly& p, uint64_t d);

// The multivariate search: derivative seeding, escalating input-derivative
// budget, elimination, least-order selection. `NotFound` is a value.
MultiOutcome arithmetic_multi(const std::vector<MultiInput>& inputs, const RatExpr& r,
                              const std::string& target_name, const MultiOptions& opts = {});

}  // namespace dalg
