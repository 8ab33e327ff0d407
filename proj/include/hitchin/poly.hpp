#pragma once

// Dense univariate polynomials over a field F (F = F_q or F_q(t) here).
// Coefficient vectors never carry trailing zeros; the zero polynomial is the
// empty vector and has degree -1 (the sentinel). Operations are pure.

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hitchin {

template <class F>
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }
    explicit Poly(const F& constant) {
        if (!constant.is_zero()) c_.push_back(constant);
    }

    static Poly zero() { return Poly(); }
    // x^k with the context (modulus etc.) of `sample`
    static Poly monomial(const F& sample, int k, const F& coeff) {
        Poly p;
        if (coeff.is_zero()) return p;
        p.c_.assign(static_cast<size_t>(k) + 1, F::zero_like(sample));
        p.c_.back() = coeff;
        return p;
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_one() const { return c_.size() == 1 && c_[0] == F::one_like(c_[0]); }

    const F& lead() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }
    // coefficient of x^i; needs a context sample when i is out of range
    F coeff_or_zero(int i, const F& sample) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return F::zero_like(sample);
        return c_[static_cast<size_t>(i)];
    }
    const std::vector<F>& coeffs() const { return c_; }

    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator+(const Poly& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        const F& s = sample();
        std::vector<F> r;
        size_t n = std::max(c_.size(), o.c_.size());
        r.reserve(n);
        for (size_t i = 0; i < n; ++i) {
            F a = i < c_.size() ? c_[i] : F::zero_like(s);
            F b = i < o.c_.size() ? o.c_[i] : F::zero_like(s);
            r.push_back(a + b);
        }
        return Poly(std::move(r));
    }
    Poly operator-() const {
        std::vector<F> r = c_;
        for (auto& x : r) x = -x;
        return Poly(std::move(r));
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }

    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly();
        const F& s = sample();
        std::vector<F> r(c_.size() + o.c_.size() - 1, F::zero_like(s));
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        }
        return Poly(std::move(r));
    }
    Poly operator*(const F& k) const {
        if (k.is_zero()) return Poly();
        std::vector<F> r = c_;
        for (auto& x : r) x = x * k;
        return Poly(std::move(r));
    }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    // Division with remainder; divisor must be nonzero.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw std::domain_error("polynomial division by zero");
        if (a.degree() < b.degree()) return {Poly(), a};
        const F& s = b.lead();
        F inv_lead = F::one_like(s) / b.lead();
        std::vector<F> rem = a.c_;
        std::vector<F> quot(static_cast<size_t>(a.degree() - b.degree()) + 1, F::zero_like(s));
        for (int i = a.degree(); i >= b.degree(); --i) {
            F c = rem[static_cast<size_t>(i)];
            if (c.is_zero()) continue;
            F qc = c * inv_lead;
            quot[static_cast<size_t>(i - b.degree())] = qc;
            for (int j = 0; j <= b.degree(); ++j)
                rem[static_cast<size_t>(i - b.degree() + j)] -= qc * b.c_[static_cast<size_t>(j)];
        }
        return {Poly(std::move(quot)), Poly(std::move(rem))};
    }
    Poly operator/(const Poly& b) const {
        auto [q, r] = divmod(*this, b);
        return q;
    }
    Poly operator%(const Poly& b) const {
        auto [q, r] = divmod(*this, b);
        return r;
    }
    // Exact division; throws if the remainder is nonzero.
    static Poly exact_div(const Poly& a, const Poly& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) throw std::logic_error("polynomial division expected to be exact");
        return q;
    }
    bool divides(const Poly& a) const { return (a % *this).is_zero(); }

    Poly monic() const {
        if (is_zero()) return *this;
        return *this * (F::one_like(lead()) / lead());
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        const F& s = sample();
        std::vector<F> r;
        r.reserve(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) {
            F k = F::zero_like(s);
            F one = F::one_like(s);
            for (size_t j = 0; j < i; ++j) k += one;  // i as a field element (handles char p)
            r.push_back(c_[i] * k);
        }
        return Poly(std::move(r));
    }

    F eval(const F& x) const {
        F acc = F::zero_like(x);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    // Monic gcd; gcd(0,0) = 0 by convention.
    static Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    Poly pow(unsigned e) const {
        if (is_zero()) {
            if (e == 0) throw std::domain_error("0^0 for context-free zero polynomial");
            return Poly();
        }
        Poly r(F::one_like(sample()));
        Poly b = *this;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    // Multiply by x^k
    Poly shifted(int k) const {
        if (is_zero() || k == 0) return *this;
        std::vector<F> r(static_cast<size_t>(k), F::zero_like(sample()));
        r.insert(r.end(), c_.begin(), c_.end());
        return Poly(std::move(r));
    }

    const F& sample() const {
        assert(!c_.empty());
        return c_.back();
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<F> c_;
};

}  // namespace hitchin
