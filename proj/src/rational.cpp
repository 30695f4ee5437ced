#include "dalg/rational.hpp"

#include <ostream>

#include "dalg/errors.hpp"

namespace dalg {

Rational::Rational(long num, long den) : q_(num, den) {
    if (den == 0) throw UsageError("rational with zero denominator");
    q_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw UsageError("empty rational literal");
    try {
        mpq_class q(text, 10);
        if (q.get_den() == 0) throw UsageError("rational with zero denominator: " + text);
        q.canonicalize();
        return Rational(std::move(q));
    } catch (const std::invalid_argument&) {
        throw UsageError("malformed rational literal: " + text);
    }
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw UsageError("division by zero rational");
    q_ /= o.q_;
    return *this;
}

Rational Rational::reciprocal() const {
    if (is_zero()) throw UsageError("reciprocal of zero");
    return Rational(mpq_class(1) / q_);
}

void Rational::add_mul(const Rational& a, const Rational& b) {
    mpq_class t = a.q_ * b.q_;
    q_ += t;
}

void Rational::sub_mul(const Rational& a, const Rational& b) {
    mpq_class t = a.q_ * b.q_;
    q_ -= t;
}

size_t Rational::bit_size() const {
    size_t n = mpz_sizeinbase(q_.get_num().get_mpz_t(), 2);
    size_t d = mpz_sizeinbase(q_.get_den().get_mpz_t(), 2);
    return n > d ? n : d;
}

std::string Rational::str() const { return q_.get_str(); }

size_t Rational::hash() const {
    auto mix = [](size_t h, size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); };
    const mpz_class n = q_.get_num();
    const mpz_class d = q_.get_den();
    size_t h = static_cast<size_t>(mpz_sgn(n.get_mpz_t()) + 1);
    h = mix(h, static_cast<size_t>(mpz_get_ui(n.get_mpz_t())));
    h = mix(h, static_cast<size_t>(mpz_get_ui(d.get_mpz_t())));
    return h;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.q_; }

mpz_class zgcd(const mpz_class& a, const mpz_class& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

mpz_class zlcm(const mpz_class& a, const mpz_class& b) {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

}  // namespace dalg
