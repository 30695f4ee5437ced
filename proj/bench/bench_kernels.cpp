// Microbenchmarks for the parallel kernels against their serial references.
// Build the dalg_bench target and run:  ./build/dalg_bench

#include <benchmark/benchmark.h>

#include <random>

#include "dalg/kernels.hpp"
#include "dalg/series.hpp"

using namespace dalg;

namespace {

std::shared_ptr<VarTable> table_n(int n) {
    auto t = std::make_shared<VarTable>();
    for (int i = 0; i < n; ++i) t->intern(VarKey::independent("v" + std::to_string(i)));
    return t;
}

Poly random_poly(const std::shared_ptr<VarTable>& t, std::mt19937_64& rng, int nvars, int terms,
                 int maxdeg) {
    std::uniform_int_distribution<int> ed(0, maxdeg);
    std::uniform_int_distribution<long> cd(-99, 99);
    std::vector<Term> ts;
    for (int i = 0; i < terms; ++i) {
        std::vector<VarExp> e;
        for (int v = 0; v < nvars; ++v) {
            int x = ed(rng);
            if (x > 0) e.push_back({v, x});
        }
        long c = cd(rng);
        if (c == 0) c = 1;
        ts.push_back({Rational(c), Monomial(std::move(e))});
    }
    return Poly::from_terms(t, std::move(ts));
}

TruncSeries random_series(std::mt19937_64& rng, int nvars, int trunc) {
    TruncSeries s(nvars, trunc);
    std::uniform_int_distribution<long> cd(-9, 9);
    std::vector<uint32_t> idx(static_cast<size_t>(nvars), 0);
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == nvars - 1) {
            idx[static_cast<size_t>(pos)] = static_cast<uint32_t>(left);
            long c = cd(rng);
            if (c != 0) s.set_coeff(idx, Rational(c));
            return;
        }
        for (int v = 0; v <= left; ++v) {
            idx[static_cast<size_t>(pos)] = static_cast<uint32_t>(v);
            self(self, pos + 1, left - v);
        }
    };
    for (int d = 0; d <= trunc; ++d) rec(rec, 0, d);
    return s;
}

void BM_PolyMulSerial(benchmark::State& state) {
    auto t = table_n(6);
    std::mt19937_64 rng(7);
    Poly f = random_poly(t, rng, 6, static_cast<int>(state.range(0)), 4);
    Poly g = random_poly(t, rng, 6, static_cast<int>(state.range(0)), 4);
    for (auto _ : state) benchmark::DoNotOptimize(poly_mul_serial(f, g));
}

void BM_PolyMulParallel(benchmark::State& state) {
    auto t = table_n(6);
    std::mt19937_64 rng(7);
    Poly f = random_poly(t, rng, 6, static_cast<int>(state.range(0)), 4);
    Poly g = random_poly(t, rng, 6, static_cast<int>(state.range(0)), 4);
    for (auto _ : state) benchmark::DoNotOptimize(poly_mul_parallel(f, g));
}

void BM_SeriesMulSerial(benchmark::State& state) {
    std::mt19937_64 rng(11);
    TruncSeries a = random_series(rng, 2, static_cast<int>(state.range(0)));
    TruncSeries b = random_series(rng, 2, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(series_mul_serial(a, b));
}

void BM_SeriesMulParallel(benchmark::State& state) {
    std::mt19937_64 rng(11);
    TruncSeries a = random_series(rng, 2, static_cast<int>(state.range(0)));
    TruncSeries b = random_series(rng, 2, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(series_mul_parallel(a, b));
}

}  // namespace

BENCHMARK(BM_PolyMulSerial)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(BM_PolyMulParallel)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(BM_SeriesMulSerial)->Arg(16)->Arg(32)->Arg(48);
BENCHMARK(BM_SeriesMulParallel)->Arg(16)->Arg(32)->Arg(48);

BENCHMARK_MAIN();
