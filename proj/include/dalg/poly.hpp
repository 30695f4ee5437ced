#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "dalg/monomial.hpp"
#include "dalg/order.hpp"
#include "dalg/rational.hpp"
#include "dalg/vartable.hpp"

namespace dalg {

struct Term {
    Rational coeff;
    Monomial mono;
    bool operator==(const Term&) const = default;
};

// Sparse multivariate polynomial over Rational. Terms are kept sorted in
// descending monomial order: the attached order when present, the structural
// lex order otherwise. No zero coefficients, monomials pairwise distinct.
class Poly {
  public:
    Poly() = default;
    static Poly zero(std::shared_ptr<VarTable> table, OrderPtr order = nullptr);
    static Poly constant(std::shared_ptr<VarTable> table, Rational c, OrderPtr order = nullptr);
    static Poly variable(std::shared_ptr<VarTable> table, int32_t v, OrderPtr order = nullptr);
    // Merges duplicates, drops zeros, sorts.
    static Poly from_terms(std::shared_ptr<VarTable> table, std::vector<Term> ts,
                           OrderPtr order = nullptr);
    // Terms must already satisfy the invariants for `order`.
    static Poly from_sorted_terms(std::shared_ptr<VarTable> table, std::vector<Term> ts,
                                  OrderPtr order);

    const std::shared_ptr<VarTable>& table() const { return table_; }
    const OrderPtr& order() const { return order_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    size_t nterms() const { return terms_.size(); }
    std::span<const Term> terms() const { return terms_; }
    const Term& lead() const;
    int64_t total_degree() const;
    bool contains_var(int32_t v) const;
    size_t max_coeff_bits() const;

    Poly with_order(OrderPtr o) const;

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly mul_scalar(const Rational& c) const;
    Poly mul_term(const Rational& c, const Monomial& m) const;

    // Structural equality over the same variable table.
    bool equal(const Poly& o) const;

  private:
    std::shared_ptr<VarTable> table_;
    OrderPtr order_;
    std::vector<Term> terms_;
};

enum class Cmp { LT, EQ, GT };

// Total comparison of monomials under an order.
Cmp monomial_compare(const MonomialOrder& order, const Monomial& m1, const Monomial& m2);

// gcd of numerators over lcm of denominators, sign positive. Zero for 0.
Rational rational_content(const Poly& f);

// Scale f so coefficients are integers with content 1 and the leading
// coefficient w.r.t. `order` (structural when null) is positive.
Poly poly_normalize(const Poly& f, const MonomialOrder* order = nullptr);

// Exact quotient f / g, or nullopt when g does not divide f.
std::optional<Poly> poly_exact_divide(const Poly& f, const Poly& g);

// Greatest common divisor by the primitive polynomial remainder sequence,
// returned normalized (integer coefficients, content 1, positive lead).
Poly poly_gcd(const Poly& a, const Poly& b);

// Formal partial derivative with respect to one table variable.
Poly poly_dvar(const Poly& f, int32_t var);

struct ReduceOutcome {
    Poly remainder;
    bool reduced = false;  // true if at least one reduction step fired
};

// Full normal form of f modulo G: no monomial of the remainder is divisible
// by a leading monomial of G, and f - remainder lies in <G>.
ReduceOutcome poly_reduce(const Poly& f, std::span<const Poly> G, const OrderPtr& order);

namespace detail {

// Reduction core shared with the Groebner engine. Reducers must be nonzero
// and sorted under `order`. When `max_coeff_bits` is nonzero the working
// polynomial is monitored and Overflow() is reported via the return flag.
struct NormalFormResult {
    Poly remainder;
    bool reduced = false;
    bool coeff_overflow = false;
};
NormalFormResult normal_form(const Poly& f, std::span<const Poly* const> reducers,
                             const OrderPtr& order, uint64_t max_coeff_bits);

}  // namespace detail

}  // namespace dalg
