#include "dalg/kernels.hpp"

#include <algorithm>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dalg/errors.hpp"

namespace dalg {

namespace {

using Accum = std::unordered_map<Monomial, Rational, MonomialHash>;

void accumulate_block(const std::span<const Term> ta, size_t lo, size_t hi,
                      const std::span<const Term> tb, Accum& acc) {
    for (size_t i = lo; i < hi; ++i) {
        for (const Term& t : tb) {
            Monomial m = ta[i].mono * t.mono;
            auto [it, fresh] = acc.try_emplace(std::move(m), Rational(0));
            it->second.add_mul(ta[i].coeff, t.coeff);
        }
    }
}

Poly collect(const Poly& a, const Poly& b, Accum acc) {
    OrderPtr order = a.order() ? a.order() : b.order();
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [m, c] : acc) {
        if (!c.is_zero()) out.push_back({std::move(c), m});
    }
    std::sort(out.begin(), out.end(), [&](const Term& x, const Term& y) {
        return mono_compare(order.get(), x.mono, y.mono) > 0;
    });
    return Poly::from_sorted_terms(a.table(), std::move(out), order);
}

}  // namespace

Poly poly_mul_serial(const Poly& a, const Poly& b) {
    if (a.table() != b.table()) throw UsageError("polynomial product across variable tables");
    OrderPtr order = a.order() ? a.order() : b.order();
    if (a.is_zero() || b.is_zero()) return Poly::zero(a.table(), order);
    if (a.nterms() == 1) return b.mul_term(a.terms()[0].coeff, a.terms()[0].mono).with_order(order);
    if (b.nterms() == 1) return a.mul_term(b.terms()[0].coeff, b.terms()[0].mono).with_order(order);

    Accum acc;
    acc.reserve(a.nterms() * b.nterms() / 2 + 4);
    accumulate_block(a.terms(), 0, a.nterms(), b.terms(), acc);
    return collect(a, b, std::move(acc));
}

Poly poly_mul_parallel(const Poly& a, const Poly& b) {
#ifndef _OPENMP
    return poly_mul_serial(a, b);
#else
    if (a.table() != b.table()) throw UsageError("polynomial product across variable tables");
    OrderPtr order = a.order() ? a.order() : b.order();
    if (a.is_zero() || b.is_zero()) return Poly::zero(a.table(), order);

    const int nthreads = std::max(1, omp_get_max_threads());
    std::vector<Accum> partial(static_cast<size_t>(nthreads));
    const size_t n = a.nterms();

#pragma omp parallel num_threads(nthreads)
    {
        const int tid = omp_get_thread_num();
        Accum& acc = partial[static_cast<size_t>(tid)];
        const size_t chunk = (n + static_cast<size_t>(nthreads) - 1) / static_cast<size_t>(nthreads);
        const size_t lo = std::min(n, chunk * static_cast<size_t>(tid));
        const size_t hi = std::min(n, lo + chunk);
        accumulate_block(a.terms(), lo, hi, b.terms(), acc);
    }

    Accum acc = std::move(partial[0]);
    for (size_t t = 1; t < partial.size(); ++t) {
        for (auto& [m, c] : partial[t]) {
            auto [it, fresh] = acc.try_emplace(m, Rational(0));
            it->second += c;
        }
    }
    return collect(a, b, std::move(acc));
#endif
}

Poly poly_mul(const Poly& a, const Poly& b) {
    // The per-thread accumulators must be merged sequentially, which eats
    // the gain on very low core counts; stay serial there.
#ifdef _OPENMP
    size_t work = a.nterms() * b.nterms();
    if (work >= kParallelMulThreshold && omp_get_max_threads() >= 4)
        return poly_mul_parallel(a, b);
#endif
    return poly_mul_serial(a, b);
}

}  // namespace dalg
