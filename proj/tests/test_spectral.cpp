#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hitchin/spectral.hpp"
#include "hitchin/squarefree.hpp"

using namespace hitchin;

namespace {

PolyFq make_poly(std::initializer_list<int64_t> coeffs_low_first, uint32_t q) {
    std::vector<Fq> c;
    for (int64_t v : coeffs_low_first) c.emplace_back(v, q);
    return PolyFq(std::move(c));
}

// frozen on the first run of the (q=101, d=2, n=2, count=1000, seed=42) corpus
constexpr uint64_t kFrozenNonSquarefree = 14;

}  // namespace

TEST_CASE("build_char_poly") {
    // a = 0 gives u^n
    {
        CharPoint a({PolyFq(), PolyFq(), PolyFq()}, 5, 1);
        BivarPoly p = build_char_poly(a);
        CHECK(p.udegree() == 3);
        for (int i = 0; i < 3; ++i) CHECK(p.ucoeffs[static_cast<size_t>(i)].is_zero());
        CHECK(a.is_zero());
    }
    // n = 2, a = (0, -t): u^2 - t
    {
        CharPoint a({PolyFq(), make_poly({0, -1}, 5)}, 5, 1);
        BivarPoly p = build_char_poly(a);
        CHECK(p.ucoeffs[0] == make_poly({0, -1}, 5));
        CHECK(p.ucoeffs[1].is_zero());
        CHECK(p.ucoeffs[2].is_one());
    }
    // degree bound violations are rejected
    CHECK_THROWS_AS(CharPoint({make_poly({0, 0, 1}, 5)}, 5, 1), std::invalid_argument);
}

TEST_CASE("multiplicity profile worked examples") {
    // a = 0, n = 3: profile {(1, 3)} on the factor u, nilpotent
    {
        CharPoint a({PolyFq(), PolyFq(), PolyFq()}, 5, 1);
        auto cls = multiplicity_profile(a);
        REQUIRE(cls.profile.size() == 1);
        CHECK(cls.profile[0] == std::pair<int64_t, int64_t>(1, 3));
        CHECK(cls.nilpotent);
        CHECK_FALSE(cls.reduced);
    }
    // u^2 - t over F_5: irreducible, reduced
    {
        CharPoint a({PolyFq(), make_poly({0, -1}, 5)}, 5, 1);
        auto cls = multiplicity_profile(a);
        REQUIRE(cls.profile.size() == 1);
        CHECK(cls.profile[0] == std::pair<int64_t, int64_t>(2, 1));
        CHECK(cls.reduced);
        CHECK(cls.irreducible_fq);
        CHECK_FALSE(cls.nilpotent);
    }
    // u^2 + t^2 = (u - 2t)(u + 2t) over F_5: two rational lines
    {
        CharPoint a({PolyFq(), make_poly({0, 0, 1}, 5)}, 5, 1);
        auto cls = multiplicity_profile(a);
        REQUIRE(cls.profile.size() == 2);
        CHECK(cls.profile[0] == std::pair<int64_t, int64_t>(1, 1));
        CHECK(cls.profile[1] == std::pair<int64_t, int64_t>(1, 1));
        CHECK(cls.reduced);
        CHECK(cls.refined);
        CHECK_FALSE(cls.irreducible_fq);
    }
}

TEST_CASE("discriminant status worked examples") {
    // u^2 - t, d = 1: disc = t, squarefree, degree 1 < n(n-1)d = 2: chart
    // smooth but infinity unverified
    {
        CharPoint a({PolyFq(), make_poly({0, -1}, 5)}, 5, 1);
        auto rep = discriminant_status(a);
        CHECK(rep.status == DiscStatus::NonzeroSquarefree);
        CHECK(rep.disc == make_poly({0, 1}, 5));
        CHECK(rep.smooth_chart);
        CHECK_FALSE(rep.infinity_verified);
        CHECK_FALSE(rep.smooth_candidate);
    }
    // a = 0: disc = 0
    {
        CharPoint a({PolyFq(), PolyFq()}, 5, 1);
        CHECK(discriminant_status(a).status == DiscStatus::Zero);
    }
    // u^2 + t^2: disc = -4t^2, nonzero but not squarefree
    {
        CharPoint a({PolyFq(), make_poly({0, 0, 1}, 5)}, 5, 1);
        auto rep = discriminant_status(a);
        CHECK(rep.status == DiscStatus::NonzeroNonSquarefree);
        CHECK_FALSE(rep.smooth_chart);
        CHECK(rep.infinity_verified);  // degree 2 = n(n-1)d
    }
    // generic bound attained: u^2 + t gives disc -4t, degree 1 = n(n-1)d at d...
    // use d = 1, a_2 = t + t^2 is out of bounds; instead check a full-degree case
    {
        CharPoint a({PolyFq(), make_poly({1, 1, 1}, 5)}, 5, 1);  // u^2 + (1 + t + t^2)
        auto rep = discriminant_status(a);
        CHECK(rep.infinity_verified);
    }
}

TEST_CASE("pushforward worked pairs live in geometry tests; sampling here") {
    auto table = sample_strata(5, 1, 2, 0, 42);
    CHECK(table.frequencies.empty());  // count = 0 -> empty table

    auto forced = sample_strata(5, 1, 2, 25, 42, true);
    CHECK(forced.nilpotent == 25);  // diagnostic mode: 100% nilpotent
    REQUIRE(forced.frequencies.size() == 1);
    CHECK(forced.frequencies.begin()->second == 25);

    // determinism under the same seed, difference across seeds
    auto t1 = sample_strata(5, 1, 2, 50, 7);
    auto t2 = sample_strata(5, 1, 2, 50, 7);
    CHECK(t1.frequencies == t2.frequencies);
}

TEST_CASE("seeded 500-sample properties: reassembly, weighted degree, disc iff gcd") {
    int samples = 0;
    for (uint32_t q : {2u, 3u, 5u}) {
        for (int64_t n = 1; n <= 4; ++n) {
            for (uint64_t i = 0; i < 42; ++i) {
                CharPoint a = sample_char_point(q, 1, n, 1000 + q, i);
                BivarPoly p = build_char_poly(a);
                auto f = p.as_ratfunc_poly();
                auto dec = squarefree_decomposition(f);
                CHECK(dec.reassemble() == f);

                auto cls = multiplicity_profile(a, 1u << 16);
                int64_t weighted = 0;
                for (auto [deg, mult] : cls.profile) weighted += deg * mult;
                CHECK(weighted == n);

                auto g = Poly<RatFunc>::gcd(f, f.derivative());
                CHECK((cls.disc.status == DiscStatus::Zero) == (g.degree() > 0));
                ++samples;
            }
        }
    }
    CHECK(samples == 504);
}

TEST_CASE("regression: classification frequencies at q=101") {
    // Schwartz-Zippel-style: the non-squarefree-discriminant locus is thin.
    // The exact seeded fraction is frozen as a regression value.
    auto table = sample_strata(101, 2, 2, 1000, 42);
    CHECK(table.count == 1000);
    CHECK(table.non_squarefree_disc <= 50);  // <= 5%
    // regression pin (recorded from the first run of this corpus)
    CHECK(table.non_squarefree_disc == kFrozenNonSquarefree);
}
