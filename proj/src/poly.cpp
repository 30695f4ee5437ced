#include "dalg/poly.hpp"

#include <algorithm>

#include "dalg/errors.hpp"
#include "dalg/kernels.hpp"

namespace dalg {

namespace {

int effective_compare(const OrderPtr& o, const Monomial& a, const Monomial& b) {
    return mono_compare(o.get(), a, b);
}

bool same_order(const OrderPtr& a, const OrderPtr& b) { return a.get() == b.get(); }

}  // namespace

Poly Poly::zero(std::shared_ptr<VarTable> table, OrderPtr order) {
    Poly p;
    p.table_ = std::move(table);
    p.order_ = std::move(order);
    return p;
}

Poly Poly::constant(std::shared_ptr<VarTable> table, Rational c, OrderPtr order) {
    Poly p = zero(std::move(table), std::move(order));
    if (!c.is_zero()) p.terms_.push_back({std::move(c), Monomial::one()});
    return p;
}

Poly Poly::variable(std::shared_ptr<VarTable> table, int32_t v, OrderPtr order) {
    if (v < 0 || v >= table->size()) throw UsageError("variable index outside table");
    Poly p = zero(std::move(table), std::move(order));
    p.terms_.push_back({Rational(1), Monomial::var(v)});
    return p;
}

Poly Poly::from_terms(std::shared_ptr<VarTable> table, std::vector<Term> ts, OrderPtr order) {
    Poly p = zero(std::move(table), std::move(order));
    std::sort(ts.begin(), ts.end(), [&](const Term& a, const Term& b) {
        return effective_compare(p.order_, a.mono, b.mono) > 0;
    });
    for (Term& t : ts) {
        if (t.coeff.is_zero()) continue;
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
            p.terms_.back().coeff += t.coeff;
            if (p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
        } else {
            p.terms_.push_back(std::move(t));
        }
    }
    return p;
}

Poly Poly::from_sorted_terms(std::shared_ptr<VarTable> table, std::vector<Term> ts, OrderPtr order) {
    Poly p = zero(std::move(table), std::move(order));
    p.terms_ = std::move(ts);
    return p;
}

const Term& Poly::lead() const {
    if (terms_.empty()) throw UsageError("leading term of the zero polynomial");
    return terms_.front();
}

int64_t Poly::total_degree() const {
    int64_t d = 0;
    for (const Term& t : terms_) d = std::max(d, t.mono.degree());
    return d;
}

bool Poly::contains_var(int32_t v) const {
    for (const Term& t : terms_)
        if (t.mono.exp_of(v) > 0) return true;
    return false;
}

size_t Poly::max_coeff_bits() const {
    size_t m = 0;
    for (const Term& t : terms_) m = std::max(m, t.coeff.bit_size());
    return m;
}

Poly Poly::with_order(OrderPtr o) const {
    if (same_order(order_, o)) return *this;
    Poly p = *this;
    p.order_ = std::move(o);
    std::sort(p.terms_.begin(), p.terms_.end(), [&](const Term& a, const Term& b) {
        return effective_compare(p.order_, a.mono, b.mono) > 0;
    });
    return p;
}

Poly Poly::operator-() const {
    Poly p = *this;
    for (Term& t : p.terms_) t.coeff = -t.coeff;
    return p;
}

namespace {

Poly merge_add(const Poly& a, const Poly& b, bool subtract) {
    if (a.table() != b.table()) throw UsageError("polynomial arithmetic across variable tables");
    OrderPtr order = a.order() ? a.order() : b.order();
    const Poly& bb_src = b;
    Poly resorted;
    std::span<const Term> ta = a.terms();
    std::span<const Term> tb = bb_src.terms();
    Poly a_res;
    if (a.order().get() != order.get()) {
        a_res = a.with_order(order);
        ta = a_res.terms();
    }
    if (b.order().get() != order.get()) {
        resorted = b.with_order(order);
        tb = resorted.terms();
    }

    std::vector<Term> out;
    out.reserve(ta.size() + tb.size());
    size_t i = 0, j = 0;
    while (i < ta.size() || j < tb.size()) {
        int c;
        if (i == ta.size()) c = -1;
        else if (j == tb.size()) c = 1;
        else c = mono_compare(order.get(), ta[i].mono, tb[j].mono);
        if (c > 0) {
            out.push_back(ta[i++]);
        } else if (c < 0) {
            Term t = tb[j++];
            if (subtract) t.coeff = -t.coeff;
            out.push_back(std::move(t));
        } else {
            Rational sum = subtract ? ta[i].coeff - tb[j].coeff : ta[i].coeff + tb[j].coeff;
            if (!sum.is_zero()) out.push_back({std::move(sum), ta[i].mono});
            ++i, ++j;
        }
    }
    return Poly::from_sorted_terms(a.table(), std::move(out), order);
}

}  // namespace

Poly operator+(const Poly& a, const Poly& b) { return merge_add(a, b, false); }
Poly operator-(const Poly& a, const Poly& b) { return merge_add(a, b, true); }
Poly operator*(const Poly& a, const Poly& b) { return poly_mul(a, b); }

Poly Poly::mul_scalar(const Rational& c) const {
    if (c.is_zero()) return zero(table_, order_);
    Poly p = *this;
    for (Term& t : p.terms_) t.coeff *= c;
    return p;
}

Poly Poly::mul_term(const Rational& c, const Monomial& m) const {
    if (c.is_zero()) return zero(table_, order_);
    Poly p = *this;
    for (Term& t : p.terms_) {
        t.coeff *= c;
        t.mono = t.mono * m;
    }
    return p;
}

bool Poly::equal(const Poly& o) const {
    if (table_ != o.table_) throw UsageError("comparing polynomials over different tables");
    if (terms_.size() != o.terms_.size()) return false;
    if (same_order(order_, o.order_)) return terms_ == o.terms_;
    Poly lhs = with_order(nullptr);
    Poly rhs = o.with_order(nullptr);
    return lhs.terms_ == rhs.terms_;
}

Cmp monomial_compare(const MonomialOrder& order, const Monomial& m1, const Monomial& m2) {
    int c = order.compare(m1, m2);
    return c < 0 ? Cmp::LT : (c > 0 ? Cmp::GT : Cmp::EQ);
}

Rational rational_content(const Poly& f) {
    if (f.is_zero()) return Rational(0);
    mpz_class num_gcd = 0;
    mpz_class den_lcm = 1;
    for (const Term& t : f.terms()) {
        num_gcd = zgcd(num_gcd, t.coeff.num());
        den_lcm = zlcm(den_lcm, t.coeff.den());
    }
    return Rational(mpq_class(num_gcd) / mpq_class(den_lcm));
}

Poly poly_normalize(const Poly& f, const MonomialOrder* order) {
    if (f.is_zero()) throw UsageError("poly_normalize of the zero polynomial");
    Rational content = rational_content(f);
    const Term* lead = &f.terms().front();
    for (const Term& t : f.terms())
        if (mono_compare(order, t.mono, lead->mono) > 0) lead = &t;
    Rational scale = content.reciprocal();
    if (lead->coeff.sign() < 0) scale = -scale;
    Poly out = f.mul_scalar(scale);
    if (order == nullptr) return out.with_order(nullptr);
    return out;
}

std::optional<Poly> poly_exact_divide(const Poly& f, const Poly& g) {
    if (g.is_zero()) throw UsageError("exact division by zero polynomial");
    if (f.table() != g.table()) throw UsageError("exact division across variable tables");
    Poly rem = f.with_order(nullptr);
    Poly gg = g.with_order(nullptr);
    std::vector<Term> q;
    while (!rem.is_zero()) {
        const Term& lf = rem.lead();
        const Term& lg = gg.lead();
        if (!lg.mono.divides(lf.mono)) return std::nullopt;
        Rational c = lf.coeff / lg.coeff;
        Monomial m = Monomial::quotient(lf.mono, lg.mono);
        rem = rem - gg.mul_term(c, m);
        q.push_back({std::move(c), std::move(m)});
    }
    return Poly::from_terms(f.table(), std::move(q));
}

namespace {

int64_t deg_in(const Poly& p, int32_t v) {
    int64_t d = 0;
    for (const Term& t : p.terms()) d = std::max<int64_t>(d, t.mono.exp_of(v));
    return d;
}

// Coefficient of v^k, as a polynomial free of v.
Poly coeff_of(const Poly& p, int32_t v, int64_t k) {
    std::vector<Term> ts;
    for (const Term& t : p.terms()) {
        if (t.mono.exp_of(v) != k) continue;
        Monomial m = k == 0 ? t.mono : Monomial::quotient(t.mono, Monomial::var(v, static_cast<int32_t>(k)));
        ts.push_back({t.coeff, std::move(m)});
    }
    return Poly::from_terms(p.table(), std::move(ts));
}

// Pseudo-remainder of f by g with respect to v (deg_v(g) >= 1).
Poly prem(Poly f, const Poly& g, int32_t v) {
    const int64_t dg = deg_in(g, v);
    Poly lcg = coeff_of(g, v, dg);
    while (!f.is_zero()) {
        int64_t df = deg_in(f, v);
        if (df < dg) break;
        Poly lcf = coeff_of(f, v, df);
        Poly shift = df == dg ? lcf
                              : lcf * Poly::from_terms(f.table(), {{Rational(1), Monomial::var(v, static_cast<int32_t>(df - dg))}});
        f = f * lcg - g * shift;
    }
    return f;
}

// Content of p as a univariate polynomial in v (gcd of the coefficients).
Poly content_in(const Poly& p, int32_t v) {
    Poly c = Poly::zero(p.table());
    for (int64_t k = 0; k <= deg_in(p, v); ++k) {
        Poly ck = coeff_of(p, v, k);
        if (ck.is_zero()) continue;
        c = c.is_zero() ? ck : poly_gcd(c, ck);
        if (c.is_constant()) break;
    }
    return c;
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) throw UsageError("gcd of two zero polynomials");
    if (a.is_zero()) return poly_normalize(b, nullptr);
    if (b.is_zero()) return poly_normalize(a, nullptr);
    if (a.table() != b.table()) throw UsageError("gcd across variable tables");

    // Pick a main variable present in both; if none, the gcd is constant.
    int32_t v = -1;
    for (const Term& t : a.terms()) {
        for (const VarExp& ve : t.mono.entries()) {
            if (deg_in(b, ve.var) > 0) {
                v = ve.var;
                break;
            }
        }
        if (v >= 0) break;
    }
    if (v < 0) return Poly::constant(a.table(), Rational(1));

    Poly ca = content_in(a, v);
    Poly cb = content_in(b, v);
    Poly c = poly_gcd(ca, cb);
    Poly pa = poly_normalize(*poly_exact_divide(a, ca), nullptr);
    Poly pb = poly_normalize(*poly_exact_divide(b, cb), nullptr);
    if (deg_in(pa, v) < deg_in(pb, v)) std::swap(pa, pb);

    // Primitive PRS.
    while (true) {
        if (deg_in(pb, v) == 0) {
            // Nonzero remainder free of v: the primitive parts are coprime.
            return poly_normalize(c, nullptr);
        }
        Poly r = prem(pa, pb, v);
        if (r.is_zero()) {
            Poly g = poly_normalize(*poly_exact_divide(pb, content_in(pb, v)), nullptr);
            return poly_normalize(g * c, nullptr);
        }
        pa = std::move(pb);
        Poly rc = content_in(r, v);
        pb = poly_normalize(*poly_exact_divide(r, rc), nullptr);
    }
}

Poly poly_dvar(const Poly& f, int32_t var) {
    std::vector<Term> out;
    for (const Term& t : f.terms()) {
        int32_t e = t.mono.exp_of(var);
        if (e == 0) continue;
        auto lowered = t.mono.lower(var);
        out.push_back({t.coeff * Rational(e), std::move(*lowered)});
    }
    return Poly::from_terms(f.table(), std::move(out), f.order());
}

namespace detail {

namespace {

// Geobucket accumulator: buckets of geometrically growing capacity keep the
// per-step cost of tail subtraction proportional to the subtracted length
// rather than the full working polynomial.
class Geobucket {
  public:
    explicit Geobucket(const MonomialOrder* order) : order_(order) {}

    void add(std::vector<Term> t) {
        if (t.empty()) return;
        size_t i = 0;
        while (cap(i) < t.size()) ++i;
        if (i >= b_.size()) b_.resize(i + 1);
        b_[i] = merge(std::move(b_[i]), Bucket{std::move(t), 0});
        while (b_[i].size() > cap(i)) {
            if (i + 1 >= b_.size()) b_.resize(i + 2);
            b_[i + 1] = merge(std::move(b_[i + 1]), std::move(b_[i]));
            b_[i] = Bucket{};
            ++i;
        }
    }

    // Pops the largest monomial, combining equal leads across buckets;
    // cancellations are skipped.
    std::optional<Term> pop_lead() {
        while (true) {
            int best = -1;
            for (size_t i = 0; i < b_.size(); ++i) {
                if (b_[i].empty()) continue;
                if (best < 0 ||
                    mono_compare(order_, b_[i].front().mono, b_[static_cast<size_t>(best)].front().mono) > 0)
                    best = static_cast<int>(i);
            }
            if (best < 0) return std::nullopt;
            Term lead = b_[static_cast<size_t>(best)].pop();
            for (auto& bucket : b_) {
                while (!bucket.empty() && bucket.front().mono == lead.mono)
                    lead.coeff += bucket.pop().coeff;
            }
            if (!lead.coeff.is_zero()) return lead;
        }
    }

  private:
    struct Bucket {
        std::vector<Term> t;
        size_t head = 0;

        size_t size() const { return t.size() - head; }
        bool empty() const { return head == t.size(); }
        const Term& front() const { return t[head]; }
        Term pop() { return std::move(t[head++]); }
    };

    static size_t cap(size_t i) { return static_cast<size_t>(4) << (2 * i); }

    Bucket merge(Bucket a, Bucket b) {
        if (a.empty()) return b;
        if (b.empty()) return a;
        std::vector<Term> out;
        out.reserve(a.size() + b.size());
        while (!a.empty() || !b.empty()) {
            int c;
            if (a.empty()) c = -1;
            else if (b.empty()) c = 1;
            else c = mono_compare(order_, a.front().mono, b.front().mono);
            if (c > 0) out.push_back(a.pop());
            else if (c < 0) out.push_back(b.pop());
            else {
                Term ta = a.pop();
                Term tb = b.pop();
                Rational sum = ta.coeff + tb.coeff;
                if (!sum.is_zero()) out.push_back({std::move(sum), std::move(ta.mono)});
            }
        }
        return Bucket{std::move(out), 0};
    }

    const MonomialOrder* order_;
    std::vector<Bucket> b_;
};

}  // namespace

NormalFormResult normal_form(const Poly& f, std::span<const Poly* const> reducers,
                             const OrderPtr& order, uint64_t max_coeff_bits) {
    NormalFormResult res;
    Geobucket w(order.get());
    {
        Poly sorted = f.with_order(order);
        w.add(std::vector<Term>(sorted.terms().begin(), sorted.terms().end()));
    }
    std::vector<Term> emitted;

    while (auto lt = w.pop_lead()) {
        const Poly* red = nullptr;
        for (const Poly* g : reducers) {
            if (g->lead().mono.divides(lt->mono)) {
                red = g;
                break;
            }
        }
        if (red == nullptr) {
            emitted.push_back(std::move(*lt));
            continue;
        }
        res.reduced = true;
        Rational c = lt->coeff / red->lead().coeff;
        if (max_coeff_bits != 0 && c.bit_size() > max_coeff_bits) {
            res.coeff_overflow = true;
            return res;
        }
        // Subtract c * m * tail(red); the leading term was already popped.
        Monomial m = Monomial::quotient(lt->mono, red->lead().mono);
        auto tail = red->terms().subspan(1);
        std::vector<Term> sub;
        sub.reserve(tail.size());
        for (const Term& t : tail) sub.push_back({-(t.coeff * c), t.mono * m});
        w.add(std::move(sub));
    }

    res.remainder = Poly::from_sorted_terms(f.table(), std::move(emitted), order);
    return res;
}

}  // namespace detail

ReduceOutcome poly_reduce(const Poly& f, std::span<const Poly> G, const OrderPtr& order) {
    if (G.empty()) throw UsageError("poly_reduce with empty reducer set");
    std::vector<Poly> sorted;
    std::vector<const Poly*> ptrs;
    sorted.reserve(G.size());
    for (const Poly& g : G) {
        if (g.is_zero()) throw UsageError("poly_reduce with zero reducer");
        if (g.table() != f.table()) throw UsageError("poly_reduce across variable tables");
        sorted.push_back(g.with_order(order));
    }
    for (const Poly& g : sorted) ptrs.push_back(&g);
    detail::NormalFormResult nf = detail::normal_form(f, ptrs, order, 0);
    return {std::move(nf.remainder), nf.reduced};
}

}  // namespace dalg
