#pragma once

// Integer ledger for the two inequalities that drive the support theorem:
//
//   technique:  d_f - d_A + d_a  >=  n_a^+  >=  d_a^ab(J)
//   Severi:     d_A(n_i) - d_{a_i} >= delta_i, i.e.
//               d^ab_i >= d_f(n_i) - d_A(n_i) + d_{a_i}   per component.
//
// d^ab_i = d_f(n_i) - delta_i (the abelian part of J_{n_i,a_i}; delta is the
// caller-supplied normalization length). A socle point is excluded when the
// supplied d^ab or the summed Severi lower bounds overshoot the technique
// upper bound.

#include <cstdint>
#include <vector>

#include "hitchin/geometry.hpp"
#include "hitchin/lambda.hpp"

namespace hitchin {

struct SevereLedgerComponent {
    int64_t n = 1;       // component rank n_i
    int64_t dim_a = 0;   // stratum-parameter dimension d_{a_i}
    int64_t delta = 0;   // delta-invariant of the component's spectral curve
};

struct SevereLedgerEntry {
    std::vector<SevereLedgerComponent> components;
};

struct SevereLedgerReport {
    int64_t d_a = 0;            // sum d_{a_i}
    int64_t d_ab = 0;           // sum (d_f(n_i) - delta_i)
    int64_t upper_bound = 0;    // d_f - d_A + d_a
    int64_t severi_lower = 0;   // sum of per-component lower bounds
    std::vector<int64_t> component_d_ab;
    std::vector<int64_t> component_lower;
    Verdict verdict = Verdict::NotExcluded;
};

SevereLedgerReport severi_ledger(const SevereLedgerEntry& entry, const GeometrySetup& setup);

}  // namespace hitchin
