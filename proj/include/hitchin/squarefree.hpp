#pragma once

// Squarefree decomposition f = unit * prod factor_m^m over a field of
// characteristic p, with the factors monic, squarefree and pairwise coprime.
//
// The separable part is handled by the classical gcd ladder on (f, f').
// The residual after the ladder lies in K[u^p]; writing it as H(u^p), the
// decomposition of H is split against the kernel of the coefficient
// derivation: a squarefree B in K[v] factors as B = E * W where E collects
// the irreducible factors with all coefficients in ker(d) = K^p (so E(u^p)
// is the p-th power of its coefficient-wise root) and W the rest (so W(u^p)
// stays squarefree). E is computed as gcd(B, dB/dt) applied coefficient-wise.
// Over the perfect field F_q the derivation is zero and E = B always, which
// recovers the plain p-th-root-and-recurse rule.

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hitchin/poly.hpp"
#include "hitchin/ratfunc.hpp"

namespace hitchin {

template <class F>
struct SquarefreeDecomposition {
    F unit;
    std::vector<std::pair<Poly<F>, int>> factors;  // (monic factor, multiplicity), multiplicity ascending

    Poly<F> reassemble() const {
        Poly<F> r(unit);
        for (const auto& [fac, m] : factors) r *= fac.pow(static_cast<unsigned>(m));
        return r;
    }
    Poly<F> squarefree_part() const {
        Poly<F> r(F::one_like(unit));
        for (const auto& [fac, m] : factors) r *= fac;
        return r;
    }
};

namespace detail {

template <class F>
void slot_multiply(std::map<int, Poly<F>>& slots, int mult, const Poly<F>& fac) {
    auto it = slots.find(mult);
    if (it == slots.end())
        slots.emplace(mult, fac);
    else
        it->second *= fac;
}

// H with H(u^p) = T
template <class F>
Poly<F> contract_p(const Poly<F>& t, uint32_t p) {
    std::vector<F> out;
    for (size_t i = 0; i < t.coeffs().size(); ++i) {
        if (i % p == 0)
            out.push_back(t.coeffs()[i]);
        else if (!t.coeffs()[i].is_zero())
            throw std::logic_error("inseparable residual not in K[u^p]");
    }
    return Poly<F>(std::move(out));
}

template <class F>
Poly<F> expand_p(const Poly<F>& h, uint32_t p) {
    if (h.is_zero()) return h;
    const F z = F::zero_like(h.sample());
    std::vector<F> out;
    out.reserve(h.coeffs().size() * p);
    for (size_t i = 0; i < h.coeffs().size(); ++i) {
        out.push_back(h.coeffs()[i]);
        if (i + 1 < h.coeffs().size())
            for (uint32_t k = 1; k < p; ++k) out.push_back(z);
    }
    return Poly<F>(std::move(out));
}

template <class F>
Poly<F> coefficient_derivation(const Poly<F>& b) {
    std::vector<F> out;
    out.reserve(b.coeffs().size());
    for (const auto& c : b.coeffs()) out.push_back(FieldOps<F>::derivation(c));
    return Poly<F>(std::move(out));
}

template <class F>
Poly<F> coefficient_pth_root(const Poly<F>& e) {
    std::vector<F> out;
    out.reserve(e.coeffs().size());
    for (const auto& c : e.coeffs()) out.push_back(FieldOps<F>::pth_root(c));
    return Poly<F>(std::move(out));
}

template <class F>
void decompose_monic(const Poly<F>& f, int scale, std::map<int, Poly<F>>& slots);

// T monic in K[u^p], nonconstant. Emits its slot factors.
template <class F>
void inseparable_part(const Poly<F>& t, int scale, std::map<int, Poly<F>>& slots) {
    uint32_t p = FieldOps<F>::characteristic(t.sample());
    if (p < 2) throw std::logic_error("vanishing derivative of a nonconstant polynomial in characteristic 0");
    Poly<F> h = contract_p(t, p);
    std::map<int, Poly<F>> sub;
    decompose_monic(h, 1, sub);
    for (const auto& [j, b] : sub) {
        Poly<F> bt = coefficient_derivation(b);
        Poly<F> e = Poly<F>::gcd(b, bt);  // gcd(b, 0) = b: the perfect-field case
        Poly<F> w = Poly<F>::exact_div(b, e);
        if (w.degree() > 0) slot_multiply(slots, j * scale, expand_p(w, p));
        if (e.degree() > 0) slot_multiply(slots, j * static_cast<int>(p) * scale, coefficient_pth_root(e));
    }
}

template <class F>
void decompose_monic(const Poly<F>& f, int scale, std::map<int, Poly<F>>& slots) {
    if (f.degree() <= 0) return;
    Poly<F> fp = f.derivative();
    if (fp.is_zero()) {
        inseparable_part(f, scale, slots);
        return;
    }
    Poly<F> c = Poly<F>::gcd(f, fp);
    Poly<F> w = Poly<F>::exact_div(f, c);
    int i = 1;
    while (w.degree() > 0) {
        Poly<F> y = Poly<F>::gcd(w, c);
        Poly<F> z = Poly<F>::exact_div(w, y);
        if (z.degree() > 0) slot_multiply(slots, i * scale, z);
        w = std::move(y);
        c = Poly<F>::exact_div(c, w);
        ++i;
    }
    if (c.degree() > 0) inseparable_part(c, scale, slots);
}

}  // namespace detail

template <class F>
SquarefreeDecomposition<F> squarefree_decomposition(const Poly<F>& f) {
    if (f.is_zero()) throw std::invalid_argument("zero polynomial");
    SquarefreeDecomposition<F> out{f.lead(), {}};
    std::map<int, Poly<F>> slots;
    detail::decompose_monic(f.monic(), 1, slots);
    for (auto& [m, fac] : slots) out.factors.emplace_back(std::move(fac), m);
    return out;
}

}  // namespace hitchin
