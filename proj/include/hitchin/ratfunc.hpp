#pragma once

// The rational function field F_q(t), the coefficient field for spectral
// polynomials in u. Canonical form: reduced fraction, monic denominator.
//
// Two facts this module relies on (q prime):
//   - c' = 0  <=>  c in F_q(t^p)  <=>  c is a p-th power in F_q(t);
//   - a reduced fraction lies in F_q(t^p) iff numerator and denominator do.

#include <stdexcept>

#include "hitchin/fq.hpp"
#include "hitchin/poly.hpp"

namespace hitchin {

using PolyFq = Poly<Fq>;

class RatFunc {
  public:
    explicit RatFunc(const Fq& constant)
        : num_(constant), den_(Fq::one_like(constant)) {}
    RatFunc(PolyFq num, PolyFq den) {
        if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
        reduce(std::move(num), std::move(den));
    }
    explicit RatFunc(PolyFq num) {
        if (num.is_zero()) throw std::logic_error("context-free zero: use RatFunc(num, den) or zero_like");
        den_ = PolyFq(Fq::one_like(num.sample()));
        num_ = std::move(num);
    }

    const PolyFq& num() const { return num_; }
    const PolyFq& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_one(); }
    uint32_t modulus() const { return den_.lead().modulus(); }

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    RatFunc operator+(const RatFunc& o) const {
        return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    RatFunc operator-() const { return make(-num_, den_); }
    RatFunc operator-(const RatFunc& o) const { return *this + (-o); }
    RatFunc operator*(const RatFunc& o) const { return RatFunc(num_ * o.num_, den_ * o.den_); }
    RatFunc operator/(const RatFunc& o) const {
        if (o.is_zero()) throw std::domain_error("division by zero rational function");
        return RatFunc(num_ * o.den_, den_ * o.num_);
    }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

    // d/dt by the quotient rule.
    RatFunc t_derivative() const {
        PolyFq n = num_.derivative() * den_ - num_ * den_.derivative();
        return RatFunc(n, den_ * den_);
    }

    // p-th root, defined exactly on the kernel of d/dt. For prime q the
    // coefficient Frobenius is the identity, so the root just divides the
    // exponents of t by p (on both parts of the reduced fraction).
    bool has_pth_root() const {
        if (is_zero()) return true;
        return poly_in_tp(num_) && poly_in_tp(den_);
    }
    RatFunc pth_root() const {
        if (is_zero()) return *this;
        if (!has_pth_root()) throw std::logic_error("p-th root requested of a non p-th power");
        return make(poly_root(num_), poly_root(den_));
    }

    static RatFunc zero(uint32_t q) { return make(PolyFq(), PolyFq(Fq::one(q))); }
    static RatFunc one(uint32_t q) { return make(PolyFq(Fq::one(q)), PolyFq(Fq::one(q))); }
    static RatFunc zero_like(const RatFunc& s) { return zero(s.modulus()); }
    static RatFunc one_like(const RatFunc& s) { return one(s.modulus()); }

  private:
    static RatFunc make(PolyFq n, PolyFq d) {
        RatFunc r(Fq::one(d.lead().modulus()));
        r.num_ = std::move(n);
        r.den_ = std::move(d);
        return r;
    }
    void reduce(PolyFq n, PolyFq d) {
        if (n.is_zero()) {
            num_ = PolyFq();
            den_ = PolyFq(Fq::one_like(d.sample()));
            return;
        }
        PolyFq g = PolyFq::gcd(n, d);
        if (g.degree() > 0) {
            n = PolyFq::exact_div(n, g);
            d = PolyFq::exact_div(d, g);
        }
        Fq inv = Fq::one_like(d.lead()) / d.lead();
        num_ = n * inv;
        den_ = d * inv;
    }
    bool poly_in_tp(const PolyFq& f) const {
        uint32_t p = modulus();
        for (size_t i = 0; i < f.coeffs().size(); ++i)
            if (!f.coeffs()[i].is_zero() && i % p != 0) return false;
        return true;
    }
    PolyFq poly_root(const PolyFq& f) const {
        uint32_t p = modulus();
        std::vector<Fq> out;
        for (size_t i = 0; i < f.coeffs().size(); i += p) out.push_back(f.coeffs()[i]);
        return PolyFq(std::move(out));
    }

    PolyFq num_;
    PolyFq den_;
};

// Coefficient-field interface consumed by the squarefree decomposition: the
// characteristic, a derivation whose kernel is exactly the p-th powers, and
// the p-th root on that kernel. For F_q the derivation is zero (perfect
// field, everything is a p-th power); for F_q(t) it is d/dt.
template <class F>
struct FieldOps;

template <>
struct FieldOps<Fq> {
    static uint32_t characteristic(const Fq& s) { return s.modulus(); }
    static Fq derivation(const Fq& s) { return Fq::zero_like(s); }
    static Fq pth_root(const Fq& c) { return c; }  // x^q = x on F_q, q prime
};

template <>
struct FieldOps<RatFunc> {
    static uint32_t characteristic(const RatFunc& s) { return s.modulus(); }
    static RatFunc derivation(const RatFunc& c) { return c.t_derivative(); }
    static RatFunc pth_root(const RatFunc& c) { return c.pth_root(); }
};

inline Poly<RatFunc> lift_to_ratfunc(const PolyFq& f, uint32_t q) {
    std::vector<RatFunc> c;
    c.reserve(f.coeffs().size());
    for (const auto& x : f.coeffs()) c.push_back(x.is_zero() ? RatFunc::zero(q) : RatFunc(PolyFq(x)));
    return Poly<RatFunc>(std::move(c));
}

}  // namespace hitchin
