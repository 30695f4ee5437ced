#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dalg/diffring.hpp"
#include "dalg/errors.hpp"
#include "dalg/series.hpp"

using namespace dalg;

namespace {

// Dense convolution oracle over full coefficient boxes.
TruncSeries dense_mul_oracle(const TruncSeries& a, const TruncSeries& b) {
    TruncSeries r(a.nvars(), std::min(a.trunc(), b.trunc()));
    std::vector<std::vector<uint32_t>> box;
    std::vector<uint32_t> cur(static_cast<size_t>(a.nvars()), 0);
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == a.nvars() - 1) {
            cur[static_cast<size_t>(pos)] = static_cast<uint32_t>(left);
            box.push_back(cur);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cur[static_cast<size_t>(pos)] = static_cast<uint32_t>(v);
            self(self, pos + 1, left - v);
        }
    };
    for (int d = 0; d <= r.trunc(); ++d) rec(rec, 0, d);
    for (const auto& ia : box) {
        for (const auto& ib : box) {
            std::vector<uint32_t> idx(ia);
            uint64_t tot = 0;
            for (size_t k = 0; k < idx.size(); ++k) {
                idx[k] += ib[k];
                tot += idx[k];
            }
            if (tot > static_cast<uint64_t>(r.trunc())) continue;
            Rational prev = r.coeff(idx);
            prev.add_mul(a.coeff(ia), b.coeff(ib));
            r.set_coeff(idx, std::move(prev));
        }
    }
    return r;
}

Rational factorial_inv(int n) {
    Rational f(1);
    for (int i = 2; i <= n; ++i) f *= Rational(i);
    return f.reciprocal();
}

TruncSeries random_series(std::mt19937_64& rng, int nvars, int trunc) {
    TruncSeries s(nvars, trunc);
    std::uniform_int_distribution<long> cd(-5, 5);
    std::vector<uint32_t> idx(static_cast<size_t>(nvars), 0);
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == nvars - 1) {
            idx[static_cast<size_t>(pos)] = static_cast<uint32_t>(left);
            long c = cd(rng);
            if (c != 0) s.set_coeff(idx, Rational(c, 1 + (std::abs(c) % 3)));
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

}  // namespace

TEST_CASE("series product of exponentials doubles the rate") {
    LinForm x{Rational(0), {Rational(1)}};
    TruncSeries e = series_builtin(BuiltinKind::Exp, x, 1, 6);
    TruncSeries sq = e * e;
    for (int n = 0; n <= 6; ++n) {
        Rational expect = factorial_inv(n);
        long long p2 = 1;
        for (int i = 0; i < n; ++i) p2 *= 2;
        expect *= Rational(static_cast<long>(p2));
        CHECK(sq.coeff({static_cast<uint32_t>(n)}) == expect);
    }
}

TEST_CASE("reciprocal of 1 + x is the alternating geometric series") {
    TruncSeries one_plus_x =
        TruncSeries::constant(1, 4, Rational(1)) + TruncSeries::variable(1, 4, 0);
    TruncSeries r = one_plus_x.reciprocal();
    CHECK(r.coeff({0}) == Rational(1));
    CHECK(r.coeff({1}) == Rational(-1));
    CHECK(r.coeff({2}) == Rational(1));
    CHECK(r.coeff({3}) == Rational(-1));
    CHECK(r.coeff({4}) == Rational(1));
    CHECK_THROWS_AS(TruncSeries::variable(1, 4, 0).reciprocal(), UsageError);
}

TEST_CASE("derivative of exp shifts the series") {
    LinForm x{Rational(0), {Rational(1)}};
    TruncSeries e = series_builtin(BuiltinKind::Exp, x, 1, 8);
    TruncSeries d = e.partial_derive(0);
    CHECK(d.trusted() == 7);
    for (int n = 0; n <= 7; ++n) CHECK(d.coeff({static_cast<uint32_t>(n)}) == e.coeff({static_cast<uint32_t>(n)}));
}

TEST_CASE("cos(x) to degree 8 matches the standard expansion") {
    LinForm x{Rational(0), {Rational(1)}};
    TruncSeries c = series_builtin(BuiltinKind::Cos, x, 1, 8);
    CHECK(c.coeff({0}) == Rational(1));
    CHECK(c.coeff({1}) == Rational(0));
    CHECK(c.coeff({2}) == Rational(-1, 2));
    CHECK(c.coeff({4}) == Rational(1, 24));
    CHECK(c.coeff({6}) == Rational(-1, 720));
    CHECK(c.coeff({8}) == Rational(1, 40320));
}

TEST_CASE("exp(x1 + x2) has multinomial coefficients") {
    LinForm f{Rational(0), {Rational(1), Rational(1)}};
    TruncSeries e = series_builtin(BuiltinKind::Exp, f, 2, 3);
    for (uint32_t i = 0; i <= 3; ++i) {
        for (uint32_t j = 0; i + j <= 3; ++j) {
            Rational expect = factorial_inv(static_cast<int>(i)) * factorial_inv(static_cast<int>(j));
            CHECK(e.coeff({i, j}) == expect);
        }
    }
}

TEST_CASE("poly builtin returns the linear form itself") {
    LinForm f{Rational(3), {Rational(1), Rational(-2)}};
    TruncSeries p = series_builtin(BuiltinKind::Poly, f, 2, 5);
    CHECK(p.coeff({0, 0}) == Rational(3));
    CHECK(p.coeff({1, 0}) == Rational(1));
    CHECK(p.coeff({0, 1}) == Rational(-2));
    CHECK_THROWS_AS(series_builtin(BuiltinKind::Exp, f, 2, 5), UsageError);
}

TEST_CASE("series multiplication matches the dense oracle") {
    std::mt19937_64 rng(606);
    for (int iter = 0; iter < 20; ++iter) {
        int nv = 1 + (iter % 2);
        TruncSeries a = random_series(rng, nv, 8);
        TruncSeries b = random_series(rng, nv, 8);
        TruncSeries fast = series_mul_serial(a, b);
        TruncSeries par = series_mul_parallel(a, b);
        TruncSeries slow = dense_mul_oracle(a, b);
        for (auto& [idx, c] : slow.coeffs()) {
            CHECK(fast.coeff(idx) == c);
            CHECK(par.coeff(idx) == c);
        }
        for (auto& [idx, c] : fast.coeffs()) CHECK(slow.coeff(idx) == c);
    }
}

TEST_CASE("certification is additive in the polynomial") {
    // certify(p, f) and certify(q, f) imply certify(p + q, f)
    auto ctx = std::make_shared<DiffContext>();
    ctx->indep = {"x"};
    ctx->indets.push_back({"z", {1}});
    DiffRing ring(ctx);

    auto table = std::make_shared<VarTable>();
    int32_t z = table->intern(VarKey::deriv(0, {0}));
    int32_t zp = table->intern(VarKey::deriv(0, {1}));

    // exp satisfies z' - z = 0 and (z')^2 - z^2 = 0
    Poly p = Poly::variable(table, zp) - Poly::variable(table, z);
    Poly q = Poly::variable(table, zp) * Poly::variable(table, zp) -
             Poly::variable(table, z) * Poly::variable(table, z);
    LinForm x{Rational(0), {Rational(1)}};
    std::vector<TruncSeries> assign = {series_builtin(BuiltinKind::Exp, x, 1, 12)};
    CHECK(certify(p, *ctx, assign, {}, 12));
    CHECK(certify(q, *ctx, assign, {}, 12));
    CHECK(certify(p + q, *ctx, assign, {}, 12));
    // and a wrong equation fails
    Poly bad = Poly::variable(table, zp) + Poly::variable(table, z);
    CHECK_FALSE(certify(bad, *ctx, assign, {}, 12));
}

TEST_CASE("certify rejects too small truncation") {
    auto ctx = std::make_shared<DiffContext>();
    ctx->indep = {"x"};
    ctx->indets.push_back({"z", {1}});
    auto table = std::make_shared<VarTable>();
    int32_t z = table->intern(VarKey::deriv(0, {0}));
    int32_t zp = table->intern(VarKey::deriv(0, {1}));
    Poly p = Poly::variable(table, zp) - Poly::variable(table, z);
    LinForm x{Rational(0), {Rational(1)}};
    std::vector<TruncSeries> assign = {series_builtin(BuiltinKind::Exp, x, 1, 2)};
    CHECK_THROWS_AS(certify(p, *ctx, assign, {}, 2), UsageError);
}
