#pragma once

#include "dalg/poly.hpp"

namespace dalg {

// Multiplication kernels. The serial version is the reference; the parallel
// one partitions the left operand across OpenMP threads and merges the
// per-thread accumulators. Results are bit-identical (exact arithmetic).
Poly poly_mul_serial(const Poly& a, const Poly& b);
Poly poly_mul_parallel(const Poly& a, const Poly& b);

// Dispatches on problem size: small products stay serial.
Poly poly_mul(const Poly& a, const Poly& b);

// Term-product count at which poly_mul switches to the parallel kernel.
inline constexpr size_t kParallelMulThreshold = 4096;

}  // namespace dalg
