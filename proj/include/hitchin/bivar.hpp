#pragma once

// Bivariate characteristic polynomials P(u) = u^n + c_1(t) u^{n-1} + ... and
// the Sylvester resultant Res_u(P, dP/du) used as the discriminant. The
// resultant is the raw Sylvester determinant with the P rows first, actual
// degrees, computed fraction-free (Bareiss) over F_q[t]; only vanishing,
// squarefreeness and degree are consumed downstream, the sign is just fixed.

#include <stdexcept>
#include <vector>

#include "hitchin/fq.hpp"
#include "hitchin/poly.hpp"
#include "hitchin/ratfunc.hpp"

namespace hitchin {

struct BivarPoly {
    // ucoeffs[i] = coefficient of u^i; ucoeffs.back() must be the constant 1
    std::vector<PolyFq> ucoeffs;
    uint32_t q = 0;

    BivarPoly(std::vector<PolyFq> coeffs, uint32_t modulus) : ucoeffs(std::move(coeffs)), q(modulus) {
        if (ucoeffs.empty()) throw std::invalid_argument("bivariate polynomial needs at least the leading term");
        if (!ucoeffs.back().is_one()) throw std::invalid_argument("bivariate polynomial must be monic in u");
    }

    int udegree() const { return static_cast<int>(ucoeffs.size()) - 1; }

    std::vector<PolyFq> u_derivative() const {
        std::vector<PolyFq> d;
        for (size_t i = 1; i < ucoeffs.size(); ++i) {
            Fq k = Fq::zero(q);
            for (size_t j = 0; j < i; ++j) k += Fq::one(q);
            d.push_back(ucoeffs[i] * k);
        }
        while (!d.empty() && d.back().is_zero()) d.pop_back();
        return d;
    }

    Poly<RatFunc> as_ratfunc_poly() const {
        std::vector<RatFunc> c;
        c.reserve(ucoeffs.size());
        for (const auto& p : ucoeffs)
            c.push_back(p.is_zero() ? RatFunc::zero(q) : RatFunc(p));
        return Poly<RatFunc>(std::move(c));
    }
};

namespace detail {

// Fraction-free determinant of a square matrix over F_q[t].
inline PolyFq det_bareiss(std::vector<std::vector<PolyFq>> m, uint32_t q) {
    const size_t n = m.size();
    const PolyFq zero;
    PolyFq prev(Fq::one(q));
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            size_t r = k + 1;
            while (r < n && m[r][k].is_zero()) ++r;
            if (r == n) return zero;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j)
                m[i][j] = PolyFq::exact_div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
            m[i][k] = zero;
        }
        prev = m[k][k];
    }
    PolyFq det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

}  // namespace detail

inline PolyFq resultant_discriminant(const BivarPoly& p) {
    const int n = p.udegree();
    if (n == 0) throw std::invalid_argument("constant in u");
    std::vector<PolyFq> dp = p.u_derivative();
    if (dp.empty()) return PolyFq();  // dP/du = 0: Sylvester rows vanish
    const int k = static_cast<int>(dp.size()) - 1;
    const int size = n + k;
    const PolyFq zero;
    std::vector<std::vector<PolyFq>> m(static_cast<size_t>(size), std::vector<PolyFq>(static_cast<size_t>(size), zero));
    // k rows of P (descending coefficients), then n rows of dP/du
    for (int r = 0; r < k; ++r)
        for (int j = 0; j <= n; ++j) m[r][r + j] = p.ucoeffs[static_cast<size_t>(n - j)];
    for (int r = 0; r < n; ++r)
        for (int j = 0; j <= k; ++j) m[k + r][r + j] = dp[static_cast<size_t>(k - j)];
    return detail::det_bareiss(std::move(m), p.q);
}

}  // namespace hitchin
