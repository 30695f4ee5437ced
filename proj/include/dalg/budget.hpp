#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dalg {

// Resource caps for Groebner-basis computations. Defaults are generous; on
// breach the engine fails loudly with statistics instead of returning a
// possibly wrong partial answer.
struct Budget {
    uint64_t max_pairs = 1'000'000;      // S-pairs processed per basis computation
    uint64_t max_coeff_bits = 1u << 22;  // bit size of any coefficient during reduction
    double time_limit_s = 0.0;           // 0 = unlimited
};

struct GroebnerStats {
    uint64_t pairs_generated = 0;
    uint64_t pairs_processed = 0;
    uint64_t pairs_pruned = 0;
    uint64_t reductions_to_zero = 0;
    uint64_t basis_size = 0;
    double elapsed_s = 0.0;

    std::string summary() const;
};

struct BudgetExceeded : std::runtime_error {
    GroebnerStats stats;
    BudgetExceeded(const std::string& what, GroebnerStats s)
        : std::runtime_error(what + " [" + s.summary() + "]"), stats(std::move(s)) {}
};

}  // namespace dalg
