#pragma once

// Strata of the global nilpotent cone, labelled by the flag invariants
// (nbar, ebar) of the iterated-image filtration of a nilpotent twisted
// endomorphism. Everything here is closed-form integer arithmetic:
//
//   f_i       = e_i + n_i (s-i) d                         (chain degrees)
//   Delta     = two displayed forms, asserted equal
//   dim(C)    = two displayed forms (f-based and e-based), asserted equal
//   dim(N)    = (sum n_i^2)(g-1) + (sum_{i<j} n_i n_j) d  = dim(C) + Delta
//   deficit   = d_f - 1 - dim(N) = (d'/2) sum n_i(n_i-1),  d' = d - (2g-2)
//
// The two forms of Delta and dim(C) are deliberately coded as separate sums
// with no shared helper, so agreement is a real transcription cross-check.

#include <cstdint>
#include <string>
#include <vector>

namespace hitchin {

struct NilpotentStratumLabel {
    std::vector<int64_t> nbar;  // ranks n_1..n_s in filtration order (paper order)
    std::vector<int64_t> ebar;  // degrees e_1..e_s

    NilpotentStratumLabel(std::vector<int64_t> n, std::vector<int64_t> e);

    int64_t steps() const { return static_cast<int64_t>(nbar.size()); }  // s
    int64_t rank() const;
    int64_t degree() const;
    bool rank_admissible() const;              // n_s >= ... >= n_1
    bool degree_admissible(int64_t d) const;   // e_{i+1} - d <= e_i whenever n_{i+1} = n_i
    std::string serialize() const;
};

struct ChainDegrees {
    std::vector<int64_t> f;
};

ChainDegrees chain_degrees(const NilpotentStratumLabel& label, int64_t d);

int64_t delta_exponent(const NilpotentStratumLabel& label, int64_t g, int64_t d);

int64_t chain_stack_dim(const NilpotentStratumLabel& label, int64_t g, int64_t d);

int64_t stratum_dim(const NilpotentStratumLabel& label, int64_t g, int64_t d);

int64_t deficit(const NilpotentStratumLabel& label, int64_t g, int64_t d);

struct PropositionRow {
    NilpotentStratumLabel label;
    ChainDegrees f;
    int64_t delta = 0;
    int64_t chain_dim = 0;
    int64_t dim = 0;
    int64_t deficit = 0;
    bool rank_admissible = false;
    bool degree_admissible = false;
};

struct PropositionReport {
    std::vector<PropositionRow> rows;
    int64_t fiber_dim = 0;     // d_f
    int64_t max_dim = 0;       // over rank-admissible strata
    bool bound_holds = false;  // max_dim <= d_f - 1
    bool attained_only_by_ones = false;
};

// Enumerates rank-admissible nbar (all nondecreasing compositions of n) and
// every ebar with |e_i| <= bound and sum e_i = e.
PropositionReport proposition_report(int64_t g, int64_t d, int64_t n, int64_t e, int64_t bound,
                                     bool canonical = false);

std::vector<std::vector<int64_t>> rank_admissible_compositions(int64_t n);
std::vector<std::vector<int64_t>> all_compositions(int64_t n);

}  // namespace hitchin
