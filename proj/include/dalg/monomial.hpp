#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace dalg {

struct VarExp {
    int32_t var;
    int32_t exp;
    bool operator==(const VarExp&) const = default;
};

// Sparse power product. Entries carry strictly increasing variable indices
// and positive exponents; the empty list is the constant monomial.
class Monomial {
  public:
    Monomial() = default;
    explicit Monomial(std::vector<VarExp> entries);
    static Monomial one() { return Monomial(); }
    static Monomial var(int32_t v, int32_t exp = 1);

    bool is_one() const { return e_.empty(); }
    int64_t degree() const { return deg_; }
    int32_t exp_of(int32_t v) const;
    std::span<const VarExp> entries() const { return e_; }
    size_t nvars() const { return e_.size(); }

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    bool divides(const Monomial& m) const;                       // this | m
    static Monomial quotient(const Monomial& m, const Monomial& d);  // m / d, d | m assumed
    static Monomial lcm(const Monomial& a, const Monomial& b);
    static Monomial gcd(const Monomial& a, const Monomial& b);
    static bool coprime(const Monomial& a, const Monomial& b);

    // Formal partial derivative bookkeeping: exponent of `v` lowered by one.
    // Returns nullopt if `v` does not occur.
    std::optional<Monomial> lower(int32_t v) const;

    bool operator==(const Monomial& o) const { return e_ == o.e_; }
    size_t hash() const;

    // Plain lexicographic comparison with variable 0 most significant; used as
    // the storage order when no monomial order is attached. Returns -1/0/+1.
    static int structural_compare(const Monomial& a, const Monomial& b);

  private:
    std::vector<VarExp> e_;
    int64_t deg_ = 0;
};

struct MonomialHash {
    size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace dalg
