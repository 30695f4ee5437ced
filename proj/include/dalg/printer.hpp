#pragma once

#include <string>

#include "dalg/engine_common.hpp"

namespace dalg {

enum class PrintStyle { Ascii, Latex };

// Deterministic rendering: terms in descending canonical order, monomial
// factors from least to most significant, derivatives as D[x,...](z) in
// ascii and partial-derivative notation in latex.
std::string print_poly(const Poly& p, const DiffContext& ctx, PrintStyle style);

// The associated equation "... = 0".
std::string print_ade(const AdeResult& res, PrintStyle style);

}  // namespace dalg
