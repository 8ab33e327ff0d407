#pragma once

// Characteristic polynomials and spectral data over X = P^1 in one affine
// chart: a point of the Hitchin base is a tuple a = (a_1..a_n) of polynomials
// with deg a_i <= i*d (sections of O(i*d)), giving
//     P_a(u) = u^n + a_1 u^{n-1} + ... + a_n.
// Classification is at the F_q level: squarefree decomposition over F_q(t),
// refined into irreducible factors by bounded trial division when the search
// space fits the budget (factors of a section-shaped monic polynomial are
// again section-shaped, so candidates of u-degree k have deg_t <= j*d in the
// u^{k-j} coefficient).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hitchin/bivar.hpp"
#include "hitchin/fq.hpp"
#include "hitchin/poly.hpp"
#include "hitchin/rng.hpp"

namespace hitchin {

struct CharPoint {
    std::vector<PolyFq> a;  // a[i-1] = a_i, deg <= i*d
    uint32_t q = 0;
    int64_t d = 0;

    CharPoint(std::vector<PolyFq> coeffs, uint32_t modulus, int64_t twist_degree);
    int64_t rank() const { return static_cast<int64_t>(a.size()); }
    bool is_zero() const;
};

BivarPoly build_char_poly(const CharPoint& a);

enum class DiscStatus { Zero, NonzeroSquarefree, NonzeroNonSquarefree };

struct DiscriminantReport {
    PolyFq disc;
    DiscStatus status = DiscStatus::Zero;
    bool smooth_chart = false;       // disc nonzero and squarefree on the chart
    bool infinity_verified = false;  // deg disc attains n(n-1)d, so t = infinity is unramified
    bool smooth_candidate = false;   // both of the above
};

DiscriminantReport discriminant_status(const CharPoint& a);

struct SpectralClassification {
    // (u-degree, multiplicity) pairs, descending; refined = true when the
    // entries are irreducible over F_q(t), false when they are only the
    // squarefree-decomposition slots (refinement budget exhausted).
    std::vector<std::pair<int64_t, int64_t>> profile;
    bool refined = false;
    bool reduced = false;
    bool nilpotent = false;
    bool irreducible_fq = false;  // single profile entry (n, 1) after refinement
    DiscriminantReport disc;

    std::string profile_key() const;
};

// refine_budget caps the number of trial-division candidates per slot factor;
// 0 disables refinement.
SpectralClassification multiplicity_profile(const CharPoint& a, uint64_t refine_budget = 1u << 20);

struct SampleTable {
    uint64_t count = 0;
    std::map<std::string, uint64_t> frequencies;  // classification key -> hits
    uint64_t non_squarefree_disc = 0;
    uint64_t nilpotent = 0;
};

CharPoint sample_char_point(uint32_t q, int64_t d, int64_t n, uint64_t seed, uint64_t index,
                            bool force_zero = false);

SampleTable sample_strata(uint32_t q, int64_t d, int64_t n, uint64_t count, uint64_t seed,
                          bool force_zero = false, uint64_t refine_budget = 0);

}  // namespace hitchin
