#include "dalg/series.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dalg/diffring.hpp"
#include "dalg/errors.hpp"

namespace dalg {

namespace {

uint64_t total(const std::vector<uint32_t>& idx) {
    uint64_t s = 0;
    for (uint32_t v : idx) s += v;
    return s;
}

// Number of exponent tuples in `nvars` variables with total degree <= d.
uint64_t box_count(int nvars, int d) {
    // C(d + nvars, nvars), small arguments only
    uint64_t r = 1;
    for (int i = 1; i <= nvars; ++i) r = r * (static_cast<uint64_t>(d) + static_cast<uint64_t>(i)) / static_cast<uint64_t>(i);
    return r;
}

}  // namespace

TruncSeries::TruncSeries(int nvars, int trunc) : nvars_(nvars), trunc_(trunc), trusted_(trunc) {
    if (nvars < 1) throw UsageError("series needs at least one variable");
    if (trunc < 0) throw UsageError("negative truncation degree");
}

Rational TruncSeries::coeff(const std::vector<uint32_t>& idx) const {
    auto it = c_.find(idx);
    return it == c_.end() ? Rational(0) : it->second;
}

void TruncSeries::set_coeff(const std::vector<uint32_t>& idx, Rational c) {
    if (static_cast<int>(idx.size()) != nvars_) throw UsageError("series index length mismatch");
    if (total(idx) > static_cast<uint64_t>(trunc_)) throw UsageError("series index beyond truncation");
    if (c.is_zero()) c_.erase(idx);
    else c_[idx] = std::move(c);
}

TruncSeries TruncSeries::constant(int nvars, int trunc, const Rational& c) {
    TruncSeries s(nvars, trunc);
    if (!c.is_zero()) s.c_[std::vector<uint32_t>(static_cast<size_t>(nvars), 0)] = c;
    return s;
}

TruncSeries TruncSeries::variable(int nvars, int trunc, int axis) {
    if (axis < 0 || axis >= nvars) throw UsageError("series variable axis out of range");
    TruncSeries s(nvars, trunc);
    if (trunc >= 1) {
        std::vector<uint32_t> idx(static_cast<size_t>(nvars), 0);
        idx[static_cast<size_t>(axis)] = 1;
        s.c_[idx] = Rational(1);
    }
    return s;
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    if (a.nvars_ != b.nvars_) throw UsageError("series variable count mismatch");
    TruncSeries r(a.nvars_, std::min(a.trunc_, b.trunc_));
    r.trusted_ = std::min(a.trusted_, b.trusted_);
    r.c_ = a.c_;
    for (auto& [idx, c] : b.c_) {
        if (total(idx) > static_cast<uint64_t>(r.trunc_)) continue;
        auto [it, fresh] = r.c_.try_emplace(idx, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) r.c_.erase(it);
        }
    }
    std::erase_if(r.c_, [&](const auto& kv) { return total(kv.first) > static_cast<uint64_t>(r.trunc_); });
    return r;
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return a + b.scaled(Rational(-1)); }

TruncSeries TruncSeries::scaled(const Rational& c) const {
    TruncSeries r(nvars_, trunc_);
    r.trusted_ = trusted_;
    if (!c.is_zero())
        for (auto& [idx, v] : c_) r.c_[idx] = v * c;
    return r;
}

TruncSeries series_mul_serial(const TruncSeries& a, const TruncSeries& b) {
    if (a.nvars() != b.nvars()) throw UsageError("series variable count mismatch");
    TruncSeries r(a.nvars(), std::min(a.trunc(), b.trunc()));
    const int trusted = std::min(a.trusted(), b.trusted());
    for (auto& [ia, ca] : a.coeffs()) {
        const uint64_t da = total(ia);
        for (auto& [ib, cb] : b.coeffs()) {
            if (da + total(ib) > static_cast<uint64_t>(r.trunc())) continue;
            std::vector<uint32_t> idx(ia);
            for (size_t k = 0; k < idx.size(); ++k) idx[k] += ib[k];
            Rational prev = r.coeff(idx);
            prev.add_mul(ca, cb);
            r.set_coeff(idx, std::move(prev));
        }
    }
    // trusted is the min of the operands: coefficients beyond either operand's
    // guarantee would need unknown higher-order terms.
    return r.with_trusted(trusted);
}

TruncSeries TruncSeries::with_trusted(int t) const {
    TruncSeries r = *this;
    r.trusted_ = std::min(r.trusted_, t);
    return r;
}

TruncSeries series_mul_parallel(const TruncSeries& a, const TruncSeries& b) {
#ifndef _OPENMP
    return series_mul_serial(a, b);
#else
    if (a.nvars() != b.nvars()) throw UsageError("series variable count mismatch");
    std::vector<std::pair<std::vector<uint32_t>, Rational>> av(a.coeffs().begin(), a.coeffs().end());
    const int nthreads = std::max(1, omp_get_max_threads());
    std::vector<std::map<std::vector<uint32_t>, Rational>> parts(static_cast<size_t>(nthreads));
    const int tr = std::min(a.trunc(), b.trunc());

#pragma omp parallel num_threads(nthreads)
    {
        const int tid = omp_get_thread_num();
        auto& acc = parts[static_cast<size_t>(tid)];
        const size_t chunk = (av.size() + static_cast<size_t>(nthreads) - 1) / static_cast<size_t>(nthreads);
        const size_t lo = std::min(av.size(), chunk * static_cast<size_t>(tid));
        const size_t hi = std::min(av.size(), lo + chunk);
        for (size_t k = lo; k < hi; ++k) {
            const uint64_t da = total(av[k].first);
            for (auto& [ib, cb] : b.coeffs()) {
                if (da + total(ib) > static_cast<uint64_t>(tr)) continue;
                std::vector<uint32_t> idx(av[k].first);
                for (size_t q = 0; q < idx.size(); ++q) idx[q] += ib[q];
                auto [it, fresh] = acc.try_emplace(idx, Rational(0));
                it->second.add_mul(av[k].second, cb);
            }
        }
    }

    TruncSeries r(a.nvars(), tr);
    for (auto& part : parts) {
        for (auto& [idx, c] : part) {
            Rational prev = r.coeff(idx);
            prev += c;
            r.set_coeff(idx, std::move(prev));
        }
    }
    return r.with_trusted(std::min(a.trusted(), b.trusted()));
#endif
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    if (a.coeffs().size() * b.coeffs().size() >= 4096) return series_mul_parallel(a, b);
    return series_mul_serial(a, b);
}

TruncSeries TruncSeries::reciprocal() const {
    std::vector<uint32_t> origin(static_cast<size_t>(nvars_), 0);
    Rational c0 = coeff(origin);
    if (c0.is_zero()) throw UsageError("series reciprocal needs a nonzero constant term");
    // 1/a = (1/c0) * sum_k (-u)^k with u = a/c0 - 1 (valuation >= 1).
    Rational inv = c0.reciprocal();
    TruncSeries u = scaled(inv);
    u.set_coeff(origin, Rational(0));
    TruncSeries acc = TruncSeries::constant(nvars_, trunc_, Rational(1));
    TruncSeries pow = TruncSeries::constant(nvars_, trunc_, Rational(1));
    for (int k = 1; k <= trunc_; ++k) {
        pow = pow * u;
        acc = acc + pow.scaled(Rational(k % 2 == 0 ? 1 : -1));
    }
    return acc.scaled(inv).with_trusted(trusted_);
}

TruncSeries TruncSeries::partial_derive(int axis) const {
    if (axis < 0 || axis >= nvars_) throw UsageError("series derivation axis out of range");
    TruncSeries r(nvars_, trunc_);
    r.trusted_ = trusted_ - 1;
    for (auto& [idx, c] : c_) {
        uint32_t e = idx[static_cast<size_t>(axis)];
        if (e == 0) continue;
        std::vector<uint32_t> lower(idx);
        lower[static_cast<size_t>(axis)] -= 1;
        r.c_[lower] = c * Rational(static_cast<long>(e));
    }
    return r;
}

TruncSeries TruncSeries::pow(uint32_t e) const {
    TruncSeries acc = TruncSeries::constant(nvars_, trunc_, Rational(1));
    acc.trusted_ = trusted_;
    for (uint32_t i = 0; i < e; ++i) acc = acc * (*this);
    return acc;
}

bool TruncSeries::is_zero_to_trusted() const {
    if (trusted_ < 0) throw UsageError("series trusted degree exhausted");
    for (auto& [idx, c] : c_)
        if (total(idx) <= static_cast<uint64_t>(trusted_) && !c.is_zero()) return false;
    return true;
}

TruncSeries series_builtin(BuiltinKind kind, const LinForm& arg, int nvars, int trunc) {
    if (static_cast<int>(arg.coeff.size()) != nvars)
        throw UsageError("linear form coefficient count mismatch");
    TruncSeries lin(nvars, trunc);
    std::vector<uint32_t> origin(static_cast<size_t>(nvars), 0);
    if (!arg.constant.is_zero()) lin.set_coeff(origin, arg.constant);
    for (int i = 0; i < nvars; ++i) {
        if (arg.coeff[static_cast<size_t>(i)].is_zero() || trunc < 1) continue;
        std::vector<uint32_t> idx(origin);
        idx[static_cast<size_t>(i)] = 1;
        lin.set_coeff(idx, arg.coeff[static_cast<size_t>(i)]);
    }
    if (kind == BuiltinKind::Poly) return lin;
    return series_compose(kind, lin);
}

TruncSeries series_compose(BuiltinKind kind, const TruncSeries& inner) {
    if (kind == BuiltinKind::Poly) return inner;
    std::vector<uint32_t> origin(static_cast<size_t>(inner.nvars()), 0);
    if (!inner.coeff(origin).is_zero())
        throw UsageError("exp/sin/cos expansions need a zero constant term");

    const int nvars = inner.nvars();
    const int trunc = inner.trunc();
    TruncSeries acc = TruncSeries::constant(nvars, trunc, Rational(0));
    TruncSeries pw = TruncSeries::constant(nvars, trunc, Rational(1));
    Rational fact(1);
    for (int k = 0; k <= trunc; ++k) {
        if (k > 0) {
            pw = pw * inner;
            fact *= Rational(k);
        }
        Rational c(0);
        switch (kind) {
            case BuiltinKind::Exp: c = fact.reciprocal(); break;
            case BuiltinKind::Sin:
                if (k % 2 == 1) c = (k % 4 == 1) ? fact.reciprocal() : -fact.reciprocal();
                break;
            case BuiltinKind::Cos:
                if (k % 2 == 0) c = (k % 4 == 0) ? fact.reciprocal() : -fact.reciprocal();
                break;
            case BuiltinKind::Poly: break;
        }
        if (!c.is_zero()) acc = acc + pw.scaled(c);
    }
    return acc.with_trusted(inner.trusted());
}

bool certify(const Poly& poly, const DiffContext& ctx, const std::vector<TruncSeries>& indet_series,
             const std::map<std::string, Rational>& param_values, int trunc) {
    if (poly.is_zero()) return true;
    const int l = ctx.l();
    const auto& table = poly.table();

    int64_t max_order = 0;
    int64_t max_deg = 0;
    for (const Term& t : poly.terms()) {
        int64_t deg = 0;
        for (const VarExp& ve : t.mono.entries()) {
            const VarKey& k = table->key(ve.var);
            if (k.cls != VarClass::Deriv) continue;
            deg += ve.exp;
            max_order = std::max<int64_t>(max_order, static_cast<int64_t>(k.total_order()));
        }
        max_deg = std::max(max_deg, deg);
    }
    if (trunc <= max_order + max_deg)
        throw UsageError("certification truncation must exceed order plus degree");

    // At least five residual coefficients must actually be inspected.
    int worst_trusted = trunc - static_cast<int>(max_order);
    if (box_count(l, worst_trusted) < 5)
        throw UsageError("certification truncation checks fewer than five coefficients");

    std::map<int32_t, TruncSeries> values;
    auto value_of = [&](int32_t v) -> const TruncSeries& {
        auto it = values.find(v);
        if (it != values.end()) return it->second;
        const VarKey& k = table->key(v);
        TruncSeries s(l, trunc);
        switch (k.cls) {
            case VarClass::Independent: {
                auto axis = ctx.find_indep(k.name);
                if (!axis) throw UsageError("independent variable " + k.name + " unknown to the context");
                s = TruncSeries::variable(l, trunc, *axis);
                break;
            }
            case VarClass::Parameter: {
                auto pv = param_values.find(k.name);
                if (pv == param_values.end())
                    throw UsageError("no specialization given for parameter " + k.name);
                s = TruncSeries::constant(l, trunc, pv->second);
                break;
            }
            case VarClass::Deriv: {
                if (k.indet < 0 || k.indet >= static_cast<int32_t>(indet_series.size()))
                    throw UsageError("no series assigned to the result indeterminate");
                s = indet_series[static_cast<size_t>(k.indet)];
                for (int a = 0; a < l; ++a)
                    for (uint32_t i = 0; i < k.index[static_cast<size_t>(a)]; ++i)
                        s = s.partial_derive(a);
                break;
            }
            case VarClass::Auxiliary:
                throw UsageError("auxiliary variable in a certified polynomial");
        }
        return values.emplace(v, std::move(s)).first->second;
    };

    TruncSeries residual = TruncSeries::constant(l, trunc, Rational(0));
    for (const Term& t : poly.terms()) {
        TruncSeries term = TruncSeries::constant(l, trunc, t.coeff);
        for (const VarExp& ve : t.mono.entries()) term = term * value_of(ve.var).pow(static_cast<uint32_t>(ve.exp));
        residual = residual + term;
    }
    return residual.is_zero_to_trusted();
}

}  // namespace dalg
