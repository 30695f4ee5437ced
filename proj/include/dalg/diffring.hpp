#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dalg/cantor.hpp"
#include "dalg/poly.hpp"

namespace dalg {

// A differential indeterminate with its dependency set (the independent
// variables it actually depends on; derivations along others annihilate it).
struct DiffIndeterminate {
    std::string name;
    std::vector<uint8_t> depends;  // one flag per independent variable

    bool depends_on(int axis) const {
        return axis >= 0 && axis < static_cast<int>(depends.size()) && depends[static_cast<size_t>(axis)];
    }
};

// Ambient context of a differential session: independent variables,
// parameters and indeterminates. Parameters and indeterminates may be added
// while parsing; everything is identified by index afterwards.
struct DiffContext {
    std::vector<std::string> indep;
    std::vector<std::string> params;
    std::vector<DiffIndeterminate> indets;

    int l() const { return static_cast<int>(indep.size()); }
    std::optional<int> find_indep(const std::string& n) const;
    std::optional<int> find_param(const std::string& n) const;
    std::optional<int> find_indet(const std::string& n) const;
};

// Session ring: shared variable table over a DiffContext. Derivations
// register new derivative descriptors here; indices are stable.
class DiffRing {
  public:
    explicit DiffRing(std::shared_ptr<DiffContext> ctx)
        : ctx_(std::move(ctx)), table_(std::make_shared<VarTable>()) {}

    const std::shared_ptr<DiffContext>& ctx() const { return ctx_; }
    const std::shared_ptr<VarTable>& table() const { return table_; }

    int32_t var_indep(int i);
    int32_t var_param(int i);
    int32_t var_deriv(int indet, std::vector<uint32_t> index);
    int32_t var_deriv0(int indet);  // zero multi-index

    Poly zero() const { return Poly::zero(table_); }
    Poly constant(Rational c) const { return Poly::constant(table_, c); }
    Poly var(int32_t v) const { return Poly::variable(table_, v); }

  private:
    std::shared_ptr<DiffContext> ctx_;
    std::shared_ptr<VarTable> table_;
};

// Differential polynomial: a Poly over a session ring whose variables are
// Independent, Parameter or Deriv (never Auxiliary).
struct DiffPoly {
    std::shared_ptr<DiffRing> ring;
    Poly poly;

    bool is_zero() const { return poly.is_zero(); }
};

DiffPoly dp_add(const DiffPoly& a, const DiffPoly& b);
DiffPoly dp_sub(const DiffPoly& a, const DiffPoly& b);
DiffPoly dp_mul(const DiffPoly& a, const DiffPoly& b);
DiffPoly dp_neg(const DiffPoly& a);

// Single partial derivation along one independent variable: Leibniz over
// terms, descriptor indices shifted by a unit, independent variables
// differentiated explicitly, parameters annihilated.
DiffPoly partial_derive(const DiffPoly& p, int axis);

// Composite derivation theta^k = the partial derivative with multi-index
// sigma_unrank(k); implemented as iterated single partials.
DiffPoly theta_derive(const DiffPoly& p, uint64_t k);

// Ordinary total derivative d/dx; requires a single independent variable.
DiffPoly total_derive(const DiffPoly& p);

// Componentwise maximum of all descriptor indices. Errors when p involves no
// derivative descriptor at all.
std::vector<uint32_t> diff_order(const DiffPoly& p);

// Highest derivative of one indeterminate occurring in p (by theta ranking),
// or nullopt when the indeterminate does not occur.
std::optional<std::vector<uint32_t>> max_descriptor(const DiffPoly& p, int indet);

// The same polynomial with descriptors as plain variables of `target`.
// Every variable of p must already be registered there.
Poly flatten(const DiffPoly& p, const std::shared_ptr<VarTable>& target);

}  // namespace dalg
