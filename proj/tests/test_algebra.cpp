#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hitchin/bivar.hpp"
#include "hitchin/fq.hpp"
#include "hitchin/poly.hpp"
#include "hitchin/ratfunc.hpp"
#include "hitchin/rng.hpp"
#include "hitchin/squarefree.hpp"

using namespace hitchin;

namespace {

PolyFq make_poly(std::initializer_list<int64_t> coeffs_low_first, uint32_t q) {
    std::vector<Fq> c;
    for (int64_t v : coeffs_low_first) c.emplace_back(v, q);
    return PolyFq(std::move(c));
}

PolyFq random_poly(const CounterRng& rng, uint64_t counter_base, int max_deg, uint32_t q) {
    int deg = static_cast<int>(rng.below(counter_base, static_cast<uint32_t>(max_deg + 2)));  // may be zero poly
    std::vector<Fq> c;
    for (int i = 0; i < deg; ++i) c.emplace_back(rng.below(counter_base + 100 + static_cast<uint64_t>(i), q), q);
    return PolyFq(std::move(c));
}

// exhaustive monic common-divisor search, the independent gcd oracle
PolyFq brute_force_gcd(const PolyFq& f, const PolyFq& g, uint32_t q) {
    if (f.is_zero()) return g.is_zero() ? PolyFq() : g.monic();
    if (g.is_zero()) return f.monic();
    int bound = std::min(f.degree(), g.degree());
    PolyFq best = make_poly({1}, q);
    for (int deg = 1; deg <= bound; ++deg) {
        std::vector<uint32_t> digits(static_cast<size_t>(deg), 0);
        for (;;) {
            std::vector<Fq> c;
            for (uint32_t v : digits) c.emplace_back(v, q);
            c.emplace_back(1, q);
            PolyFq cand(std::move(c));
            if (cand.divides(f) && cand.divides(g)) best = cand;
            size_t i = 0;
            for (; i < digits.size(); ++i) {
                if (++digits[i] < q) break;
                digits[i] = 0;
            }
            if (i == digits.size()) break;
        }
    }
    return best;
}

Poly<RatFunc> upoly(std::vector<PolyFq> coeffs_low_first, uint32_t q) {
    std::vector<RatFunc> c;
    for (auto& p : coeffs_low_first) c.push_back(p.is_zero() ? RatFunc::zero(q) : RatFunc(p));
    return Poly<RatFunc>(std::move(c));
}

}  // namespace

TEST_CASE("field axioms hold by exhaustion for small q") {
    for (uint32_t q : {2u, 3u, 5u, 7u, 101u}) {
        for (uint32_t a = 1; a < q; ++a) {
            Fq x(a, q);
            CHECK(x * x.inverse() == Fq::one(q));
        }
        CHECK_THROWS_AS(Fq(1, q).operator/(Fq(0, q)), std::domain_error);
    }
    CHECK_THROWS_AS(require_prime_modulus(4), std::invalid_argument);
    CHECK_THROWS_AS(require_prime_modulus(1), std::invalid_argument);
    CHECK_NOTHROW(require_prime_modulus(32749));
}

TEST_CASE("poly_gcd worked examples") {
    const uint32_t q = 5;
    PolyFq f = make_poly({-1, 0, 1}, q);  // t^2 - 1
    PolyFq g = make_poly({-1, 1}, q);     // t - 1
    CHECK(PolyFq::gcd(f, g) == g.monic());

    // gcd(f, 0) is the monic normalization of f
    PolyFq h = make_poly({2, 4}, q);
    CHECK(PolyFq::gcd(h, PolyFq()) == h.monic());
    CHECK(PolyFq::gcd(PolyFq(), PolyFq()).is_zero());

    // gcd(t^2+1, t^2+t) over F_2 equals t+1 (oracle: exhaustive divisor search)
    PolyFq a = make_poly({1, 0, 1}, 2);
    PolyFq b = make_poly({0, 1, 1}, 2);
    PolyFq expected = brute_force_gcd(a, b, 2);
    CHECK(PolyFq::gcd(a, b) == expected);
    CHECK(expected == make_poly({1, 1}, 2));
}

TEST_CASE("poly_gcd seeded property corpus") {
    CounterRng rng(2024, 1);
    uint64_t counter = 0;
    int checked_exhaustive = 0;
    for (uint32_t q : {2u, 3u, 5u}) {
        for (int i = 0; i < 200; ++i) {
            PolyFq f = random_poly(rng, counter += 1000, 6, q);
            PolyFq g = random_poly(rng, counter += 1000, 6, q);
            PolyFq d = PolyFq::gcd(f, g);
            if (f.is_zero() && g.is_zero()) {
                CHECK(d.is_zero());
                continue;
            }
            if (!f.is_zero()) CHECK(d.divides(f));
            if (!g.is_zero()) CHECK(d.divides(g));
            if (!f.is_zero() && !g.is_zero() && f.degree() <= 3 && g.degree() <= 3) {
                CHECK(d == brute_force_gcd(f, g, q));
                ++checked_exhaustive;
            }
        }
    }
    CHECK(checked_exhaustive > 50);
}

TEST_CASE("squarefree decomposition worked examples") {
    const uint32_t q = 5;
    // u^n -> (u, n), here over F_q(t) with n = 4
    {
        auto u4 = upoly({PolyFq(), PolyFq(), PolyFq(), PolyFq(), make_poly({1}, q)}, q);
        auto dec = squarefree_decomposition(u4);
        REQUIRE(dec.factors.size() == 1);
        CHECK(dec.factors[0].second == 4);
        CHECK(dec.factors[0].first == upoly({PolyFq(), make_poly({1}, q)}, q));
    }
    // (u-1)^2 (u+1) over F_5(t)
    {
        auto um1 = upoly({make_poly({-1}, q), make_poly({1}, q)}, q);
        auto up1 = upoly({make_poly({1}, q), make_poly({1}, q)}, q);
        auto f = um1 * um1 * up1;
        auto dec = squarefree_decomposition(f);
        REQUIRE(dec.factors.size() == 2);
        CHECK(dec.factors[0].first == up1);
        CHECK(dec.factors[0].second == 1);
        CHECK(dec.factors[1].first == um1);
        CHECK(dec.factors[1].second == 2);
    }
    // u^2 - t^2 over F_3(t): gcd(f, f') = 1, reported squarefree in one slot
    {
        auto f = upoly({make_poly({0, 0, -1}, 3), PolyFq(), make_poly({1}, 3)}, 3);
        auto dec = squarefree_decomposition(f);
        REQUIRE(dec.factors.size() == 1);
        CHECK(dec.factors[0].second == 1);
        CHECK(dec.factors[0].first == f);
    }
    CHECK_THROWS_AS(squarefree_decomposition(Poly<RatFunc>()), std::invalid_argument);
}

TEST_CASE("squarefree decomposition handles inseparable factors over F_q(t)") {
    // u^2 + t over F_2(t): derivative vanishes but the polynomial is
    // irreducible (t has no square root), so the multiplicity must stay 1.
    auto f = upoly({make_poly({0, 1}, 2), PolyFq(), make_poly({1}, 2)}, 2);
    auto dec = squarefree_decomposition(f);
    REQUIRE(dec.factors.size() == 1);
    CHECK(dec.factors[0].second == 1);
    CHECK(dec.factors[0].first == f);

    // (u^2 + t)(u + t)^2 = u^4 + (t^2+t) u^2 + t^3 over F_2(t): the mixed case
    auto g = upoly({make_poly({0, 0, 0, 1}, 2), PolyFq(), make_poly({0, 1, 1}, 2), PolyFq(), make_poly({1}, 2)}, 2);
    auto dec2 = squarefree_decomposition(g);
    REQUIRE(dec2.factors.size() == 2);
    CHECK(dec2.factors[0].second == 1);
    CHECK(dec2.factors[0].first == f);  // u^2 + t
    CHECK(dec2.factors[1].second == 2);
    CHECK(dec2.factors[1].first == upoly({make_poly({0, 1}, 2), make_poly({1}, 2)}, 2));  // u + t
    CHECK(dec2.reassemble() == g);
}

TEST_CASE("squarefree reassembly on a seeded corpus including p-th powers") {
    CounterRng rng(7, 2);
    uint64_t counter = 0;
    int done = 0;
    for (uint32_t q : {2u, 3u, 5u}) {
        for (int i = 0; i < 70; ++i) {
            // random monic u-polynomial over F_q(t) with small polynomial coefficients
            int deg = 1 + static_cast<int>(rng.below(counter += 997, 4));
            std::vector<PolyFq> coeffs;
            for (int k = 0; k < deg; ++k) coeffs.push_back(random_poly(rng, counter += 997, 2, q));
            coeffs.push_back(make_poly({1}, q));
            auto f = upoly(coeffs, q);
            if (i % 3 == 0) f = f.pow(q);  // p-th power cases
            auto dec = squarefree_decomposition(f);
            CHECK(dec.reassemble() == f);
            // factors pairwise coprime, each nonconstant and monic
            for (size_t a = 0; a < dec.factors.size(); ++a) {
                CHECK(dec.factors[a].first.degree() >= 1);
                CHECK(dec.factors[a].first.lead() == RatFunc::one(q));
                for (size_t b = a + 1; b < dec.factors.size(); ++b) {
                    auto g = Poly<RatFunc>::gcd(dec.factors[a].first, dec.factors[b].first);
                    CHECK(g.degree() == 0);
                }
            }
            ++done;
        }
    }
    CHECK(done == 210);
}

TEST_CASE("squarefree factors of low degree are genuinely squarefree") {
    // independent squarefree oracle for u-degree <= 2 factors over F_q(t):
    // deg 1 always; deg 2 monic u^2+bu+c is a square iff it equals (u+r)^2
    // for some r, checked by completing the square / char-2 case analysis.
    CounterRng rng(99, 3);
    uint64_t counter = 0;
    for (uint32_t q : {2u, 3u, 5u}) {
        for (int i = 0; i < 40; ++i) {
            int deg = 1 + static_cast<int>(rng.below(counter += 991, 4));
            std::vector<PolyFq> coeffs;
            for (int k = 0; k < deg; ++k) coeffs.push_back(random_poly(rng, counter += 991, 2, q));
            coeffs.push_back(make_poly({1}, q));
            auto f = upoly(coeffs, q);
            auto dec = squarefree_decomposition(f);
            for (const auto& [fac, mult] : dec.factors) {
                if (fac.degree() != 2) continue;
                const RatFunc b = fac.coeffs()[1];
                const RatFunc c = fac.coeffs()[0];
                if (q != 2) {
                    // (u + b/2)^2 = u^2 + bu + c  iff  b^2 = 4c
                    bool is_square = (b * b - RatFunc(make_poly({4}, q)) * c).is_zero();
                    CHECK_FALSE(is_square);
                } else {
                    // char 2: (u+r)^2 = u^2 + r^2, a square iff b = 0 and c is a square
                    bool is_square = b.is_zero() && c.has_pth_root();
                    CHECK_FALSE(is_square);
                }
            }
        }
    }
}

TEST_CASE("resultant discriminant worked examples") {
    const uint32_t q = 5;
    // u^2 + a1 u + a2: raw Sylvester determinant with P rows first equals
    // 4 a2 - a1^2 (oracle: 3x3 cofactor expansion done in this test)
    {
        PolyFq a1 = make_poly({1, 2}, q);
        PolyFq a2 = make_poly({3, 0, 4}, q);
        BivarPoly p({a2, a1, make_poly({1}, q)}, q);
        PolyFq four = make_poly({4}, q);
        PolyFq expected = four * a2 - a1 * a1;
        // independent cofactor expansion of [[1,a1,a2],[2,a1,0],[0,2,a1]]
        PolyFq one = make_poly({1}, q), two = make_poly({2}, q);
        PolyFq oracle = one * (a1 * a1 - PolyFq()) - a1 * (two * a1 - PolyFq()) + a2 * (two * two - PolyFq());
        CHECK(oracle == expected);
        CHECK(resultant_discriminant(p) == expected);
    }
    // u^2 - t over F_5: -4t = t after reduction mod 5
    {
        BivarPoly p({make_poly({0, -1}, q), PolyFq(), make_poly({1}, q)}, q);
        CHECK(resultant_discriminant(p) == make_poly({0, 1}, q));
    }
    // (u - t)^2 has vanishing discriminant
    {
        BivarPoly p({make_poly({0, 0, 1}, q), make_poly({0, -2}, q), make_poly({1}, q)}, q);
        CHECK(resultant_discriminant(p).is_zero());
    }
    CHECK_THROWS_AS(resultant_discriminant(BivarPoly({make_poly({1}, q)}, q)), std::invalid_argument);
}

TEST_CASE("discriminant vanishes exactly when gcd(P, dP/du) is nonconstant") {
    CounterRng rng(512, 4);
    uint64_t counter = 0;
    int samples = 0;
    for (uint32_t q : {2u, 3u, 5u}) {
        for (int i = 0; i < 70; ++i) {
            int n = 1 + static_cast<int>(rng.below(counter += 887, 4));
            std::vector<PolyFq> coeffs;
            for (int k = 0; k < n; ++k) coeffs.push_back(random_poly(rng, counter += 887, 2, q));
            coeffs.push_back(make_poly({1}, q));
            BivarPoly p(coeffs, q);
            PolyFq disc = resultant_discriminant(p);
            auto f = p.as_ratfunc_poly();
            auto g = Poly<RatFunc>::gcd(f, f.derivative());
            CHECK((disc.is_zero()) == (g.degree() > 0));
            ++samples;
        }
    }
    CHECK(samples == 210);
}
