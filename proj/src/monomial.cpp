#include "dalg/monomial.hpp"

#include <algorithm>

#include "dalg/errors.hpp"

namespace dalg {

Monomial::Monomial(std::vector<VarExp> entries) : e_(std::move(entries)) {
    for (size_t i = 0; i < e_.size(); ++i) {
        if (e_[i].exp <= 0) throw InternalError("monomial entry with non-positive exponent");
        if (i > 0 && e_[i - 1].var >= e_[i].var) throw InternalError("monomial entries out of order");
        deg_ += e_[i].exp;
    }
}

Monomial Monomial::var(int32_t v, int32_t exp) {
    if (exp == 0) return Monomial();
    return Monomial({{v, exp}});
}

int32_t Monomial::exp_of(int32_t v) const {
    auto it = std::lower_bound(e_.begin(), e_.end(), v,
                               [](const VarExp& a, int32_t x) { return a.var < x; });
    return (it != e_.end() && it->var == v) ? it->exp : 0;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.e_.reserve(a.e_.size() + b.e_.size());
    size_t i = 0, j = 0;
    while (i < a.e_.size() || j < b.e_.size()) {
        if (j == b.e_.size() || (i < a.e_.size() && a.e_[i].var < b.e_[j].var)) {
            r.e_.push_back(a.e_[i++]);
        } else if (i == a.e_.size() || b.e_[j].var < a.e_[i].var) {
            r.e_.push_back(b.e_[j++]);
        } else {
            r.e_.push_back({a.e_[i].var, a.e_[i].exp + b.e_[j].exp});
            ++i, ++j;
        }
    }
    r.deg_ = a.deg_ + b.deg_;
    return r;
}

bool Monomial::divides(const Monomial& m) const {
    if (deg_ > m.deg_) return false;
    size_t j = 0;
    for (const VarExp& d : e_) {
        while (j < m.e_.size() && m.e_[j].var < d.var) ++j;
        if (j == m.e_.size() || m.e_[j].var != d.var || m.e_[j].exp < d.exp) return false;
    }
    return true;
}

Monomial Monomial::quotient(const Monomial& m, const Monomial& d) {
    Monomial r;
    r.e_.reserve(m.e_.size());
    size_t j = 0;
    for (const VarExp& me : m.e_) {
        int32_t sub = 0;
        while (j < d.e_.size() && d.e_[j].var < me.var) ++j;
        if (j < d.e_.size() && d.e_[j].var == me.var) sub = d.e_[j].exp;
        int32_t rem = me.exp - sub;
        if (rem < 0) throw InternalError("monomial quotient of non-divisor");
        if (rem > 0) r.e_.push_back({me.var, rem});
    }
    r.deg_ = m.deg_ - d.deg_;
    return r;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.e_.reserve(a.e_.size() + b.e_.size());
    size_t i = 0, j = 0;
    while (i < a.e_.size() || j < b.e_.size()) {
        if (j == b.e_.size() || (i < a.e_.size() && a.e_[i].var < b.e_[j].var)) {
            r.e_.push_back(a.e_[i++]);
        } else if (i == a.e_.size() || b.e_[j].var < a.e_[i].var) {
            r.e_.push_back(b.e_[j++]);
        } else {
            r.e_.push_back({a.e_[i].var, std::max(a.e_[i].exp, b.e_[j].exp)});
            ++i, ++j;
        }
    }
    for (const VarExp& ve : r.e_) r.deg_ += ve.exp;
    return r;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    size_t i = 0, j = 0;
    while (i < a.e_.size() && j < b.e_.size()) {
        if (a.e_[i].var < b.e_[j].var) {
            ++i;
        } else if (b.e_[j].var < a.e_[i].var) {
            ++j;
        } else {
            r.e_.push_back({a.e_[i].var, std::min(a.e_[i].exp, b.e_[j].exp)});
            ++i, ++j;
        }
    }
    for (const VarExp& ve : r.e_) r.deg_ += ve.exp;
    return r;
}

bool Monomial::coprime(const Monomial& a, const Monomial& b) {
    size_t i = 0, j = 0;
    while (i < a.e_.size() && j < b.e_.size()) {
        if (a.e_[i].var < b.e_[j].var) ++i;
        else if (b.e_[j].var < a.e_[i].var) ++j;
        else return false;
    }
    return true;
}

std::optional<Monomial> Monomial::lower(int32_t v) const {
    auto it = std::lower_bound(e_.begin(), e_.end(), v,
                               [](const VarExp& a, int32_t x) { return a.var < x; });
    if (it == e_.end() || it->var != v) return std::nullopt;
    Monomial r;
    r.e_ = e_;
    size_t pos = static_cast<size_t>(it - e_.begin());
    if (r.e_[pos].exp == 1) r.e_.erase(r.e_.begin() + static_cast<ptrdiff_t>(pos));
    else r.e_[pos].exp -= 1;
    r.deg_ = deg_ - 1;
    return r;
}

size_t Monomial::hash() const {
    auto mix = [](size_t h, size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); };
    size_t h = e_.size();
    for (const VarExp& ve : e_) {
        h = mix(h, static_cast<size_t>(static_cast<uint32_t>(ve.var)));
        h = mix(h, static_cast<size_t>(static_cast<uint32_t>(ve.exp)));
    }
    return h;
}

int Monomial::structural_compare(const Monomial& a, const Monomial& b) {
    size_t i = 0, j = 0;
    while (i < a.e_.size() && j < b.e_.size()) {
        if (a.e_[i].var != b.e_[j].var) {
            // The side owning the lower-index variable has positive exponent
            // there while the other has zero: it is lex-larger.
            return a.e_[i].var < b.e_[j].var ? 1 : -1;
        }
        if (a.e_[i].exp != b.e_[j].exp) return a.e_[i].exp > b.e_[j].exp ? 1 : -1;
        ++i, ++j;
    }
    if (i < a.e_.size()) return 1;
    if (j < b.e_.size()) return -1;
    return 0;
}

}  // namespace dalg
