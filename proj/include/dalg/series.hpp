#pragma once

#include <map>
#include <memory>
#include <vector>

#include "dalg/poly.hpp"
#include "dalg/rational.hpp"

namespace dalg {

struct DiffContext;

// Truncated multivariate Taylor series with exact rational coefficients.
// `trunc` is the stored total-degree cap; `trusted` tracks how far the
// coefficients are guaranteed after derivatives lowered the usable degree.
class TruncSeries {
  public:
    TruncSeries(int nvars, int trunc);

    int nvars() const { return nvars_; }
    int trunc() const { return trunc_; }
    int trusted() const { return trusted_; }

    Rational coeff(const std::vector<uint32_t>& idx) const;
    void set_coeff(const std::vector<uint32_t>& idx, Rational c);
    const std::map<std::vector<uint32_t>, Rational>& coeffs() const { return c_; }

    static TruncSeries constant(int nvars, int trunc, const Rational& c);
    static TruncSeries variable(int nvars, int trunc, int axis);

    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
    TruncSeries scaled(const Rational& c) const;

    // Requires a nonzero constant term.
    TruncSeries reciprocal() const;
    TruncSeries partial_derive(int axis) const;
    TruncSeries pow(uint32_t e) const;
    // Same coefficients with the guarantee mark lowered to `t`.
    TruncSeries with_trusted(int t) const;

    bool is_zero_to_trusted() const;

  private:
    int nvars_;
    int trunc_;
    int trusted_;
    std::map<std::vector<uint32_t>, Rational> c_;
};

// Serial and OpenMP product kernels (the series product is the dense inner
// loop of the certification oracle); operator* dispatches on size.
TruncSeries series_mul_serial(const TruncSeries& a, const TruncSeries& b);
TruncSeries series_mul_parallel(const TruncSeries& a, const TruncSeries& b);

// Rational linear form c0 + sum ci * xi used to seed the builtin expansions.
struct LinForm {
    Rational constant;
    std::vector<Rational> coeff;  // one per variable
};

enum class BuiltinKind { Exp, Sin, Cos, Poly };

// Truncated Taylor expansion at the origin of exp/sin/cos applied to a
// linear form with zero constant term, or the linear form itself (Poly).
TruncSeries series_builtin(BuiltinKind kind, const LinForm& arg, int nvars, int trunc);

// exp/sin/cos of an arbitrary series with zero constant term.
TruncSeries series_compose(BuiltinKind kind, const TruncSeries& inner);

// Substitutes truncated series for the result's differential indeterminate
// (all needed partials are derived on the fly), rational values for
// parameters, and the coordinate series for independent variables; returns
// true iff the residual vanishes identically up to the trusted degree.
// `poly` must live over a table of Deriv/Independent/Parameter variables.
bool certify(const Poly& poly, const DiffContext& ctx,
             const std::vector<TruncSeries>& indet_series,
             const std::map<std::string, Rational>& param_values, int trunc);

}  // namespace dalg
