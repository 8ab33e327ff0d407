#pragma once

// Ambient parameters (g, d, n, e) and the closed-form dimension identities of
// the Hitchin fibration for GL(n) twisted by a degree-d divisor:
//
//   dim base  = n(1-g) + n(n+1)d/2              (d > 2g-2)
//   dim fiber = n(g-1) + n(n-1)d/2 + 1
//   total     = n^2 d + 1,   fiber - base = n(2g-2-d) + 1
//
// In the canonical case d = 2g-2 the base picks up h^1(O(D)) = 1 and both
// dimensions collapse to n^2(g-1) + 1.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hitchin {

enum class DegreeMode { Large, Canonical };

struct GeometrySetup {
    int64_t g = 0;
    int64_t d = 0;
    int64_t n = 1;
    int64_t e = 0;
    DegreeMode mode = DegreeMode::Large;

    GeometrySetup(int64_t g_, int64_t d_, int64_t n_, int64_t e_ = 0, DegreeMode m = DegreeMode::Large)
        : g(g_), d(d_), n(n_), e(e_), mode(m) {
        if (g < 0) throw std::invalid_argument("genus must be >= 0");
        if (n < 1) throw std::invalid_argument("rank must be >= 1");
        if (mode == DegreeMode::Canonical) {
            if (d != 2 * g - 2) throw std::invalid_argument("canonical mode requires d = 2g-2");
            if (g < 1) throw std::invalid_argument("no effective canonical divisor at g = 0");
        } else {
            if (d < 2 * g - 2) throw std::invalid_argument("unsupported degree regime");
            if (d == 2 * g - 2)
                throw std::invalid_argument("d = 2g-2 requires canonical mode");
        }
    }

    bool coprime_warning() const { return std::gcd(n, e) != 1; }

    GeometrySetup with_rank(int64_t rank) const { return GeometrySetup(g, d, rank, e, mode); }
};

inline int64_t dim_base(const GeometrySetup& s) {
    if (s.mode == DegreeMode::Canonical) return s.n * s.n * (s.g - 1) + 1;
    return s.n * (1 - s.g) + s.n * (s.n + 1) / 2 * s.d;
}

inline int64_t dim_fiber(const GeometrySetup& s) {
    int64_t v = s.n * (s.g - 1) + s.n * (s.n - 1) * s.d / 2 + 1;
    if (s.mode == DegreeMode::Canonical && v != s.n * s.n * (s.g - 1) + 1)
        throw std::logic_error("canonical fiber dimension identity failed");
    return v;
}

inline int64_t dim_total(const GeometrySetup& s) {
    int64_t v = dim_base(s) + dim_fiber(s);
    if (s.mode == DegreeMode::Large && v != s.n * s.n * s.d + 1)
        throw std::logic_error("total dimension identity n^2 d + 1 failed");
    return v;
}

inline int64_t euler_char_spectral(const GeometrySetup& s) {
    return s.n * (1 - s.g) - s.n * (s.n - 1) * s.d / 2;
}

inline int64_t relative_gap(const GeometrySetup& s) {
    if (s.mode == DegreeMode::Canonical) {
        if (dim_base(s) != dim_fiber(s)) throw std::logic_error("canonical mode requires equal dimensions");
        return 0;
    }
    int64_t v = dim_fiber(s) - dim_base(s);
    if (v != s.n * (2 * s.g - 2 - s.d) + 1)
        throw std::logic_error("relative gap identity n(2g-2-d)+1 failed");
    return v;
}

// (sum over i < n of chi(O(-iD)), chi(O_{X_a})): the pushforward bookkeeping
inline std::pair<int64_t, int64_t> pushforward_check(const GeometrySetup& s) {
    int64_t sum = 0;
    for (int64_t i = 0; i < s.n; ++i) sum += 1 - s.g - i * s.d;
    int64_t chi = euler_char_spectral(s);
    if (sum != chi) throw std::logic_error("pushforward Euler characteristic mismatch");
    return {sum, chi};
}

}  // namespace hitchin
