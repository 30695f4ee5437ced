#pragma once

#include "dalg/engine_common.hpp"

namespace dalg {

enum class LhoMode { Auto, ForceLho, ForceNonLho };

struct UniOptions {
    LhoMode lho_mode = LhoMode::Auto;
    ElimStrategy ordering = ElimStrategy::Lex;
    bool separants_zeros = false;  // saturate by Q only, skip the separants
    bool diff_first = false;       // replace non-l.h.o. inputs by their derivatives
    Budget budget;
    bool verify = false;  // post-hoc S-polynomial checks and membership test
};

// Univariate pipeline: state system, M-1 total derivatives (plus the Mth
// of the output relation), saturation, elimination, selection.
AdeResult arithmetic_uni(std::vector<InputAde> ades, const RatExpr& r,
                         const std::string& target_name, const UniOptions& opts = {});

// Single-input specialization.
AdeResult unary_uni(const InputAde& ade, const RatExpr& r, const std::string& target_name,
                    const UniOptions& opts = {});

}  // namespace dalg
