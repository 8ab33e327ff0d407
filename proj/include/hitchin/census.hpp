#pragma once

// Brute-force groupoid counts of nilpotent Hitchin pairs on P^1 over F_q.
// A bundle is a splitting type (twists a_1 >= ... >= a_n); a pair adds theta
// with entry (i,j) a polynomial of degree <= a_i - a_j + d. The census
// enumerates theta per splitting, extracts the flag invariants of the
// iterated-image filtration (both unsaturated and saturated degree
// conventions), and accumulates exact rationals #matching / |Aut(E)|;
// by orbit counting this is the stacky cardinality of the stratum.
//
// Truncation is by twist spread <= B. For n = 2 the support of every
// (1,1)-stratum is pinned structurally (the only splittings beyond spread d
// that can carry a fixed flag label are strictly triangular, at one known
// spread), so tails are exact; the theta = 0 stratum has an exact geometric
// tail. For higher rank the tail is the heuristic majorant
// (term(B) + term(B-1))/(q-1), zeroed when two consecutive spreads vanish
// after nonzero terms.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hitchin/fq.hpp"
#include "hitchin/nilstrata.hpp"
#include "hitchin/poly.hpp"
#include "hitchin/ratfunc.hpp"
#include "hitchin/rational.hpp"

namespace hitchin {

inline int64_t hom_dim(int64_t a, int64_t b) { return std::max<int64_t>(0, b - a + 1); }

struct SplittingType {
    std::vector<int64_t> twists;  // descending

    int64_t rank() const { return static_cast<int64_t>(twists.size()); }
    int64_t degree() const {
        int64_t e = 0;
        for (auto a : twists) e += a;
        return e;
    }
    int64_t spread() const { return twists.empty() ? 0 : twists.front() - twists.back(); }
    std::string serialize() const;
};

std::vector<SplittingType> enumerate_splittings(int64_t n, int64_t e, int64_t max_spread);

BigInt aut_bundle_size(const SplittingType& splitting, uint32_t q);

// A map of split bundles  (+)O(src_j) -> (+)O(dst_i); entries[i][j] has
// degree <= dst_i - src_j (zero when that is negative).
struct BundleMap {
    std::vector<int64_t> src;
    std::vector<int64_t> dst;
    std::vector<std::vector<PolyFq>> entries;
    uint32_t q = 0;

    bool is_zero() const;
    BundleMap twist(int64_t m) const;  // same matrix, both sides twisted by m
};

BundleMap compose(const BundleMap& outer, const BundleMap& inner);

struct KernelData {
    SplittingType splitting;  // kernel twists, descending
    int64_t degree = 0;
    int64_t rank = 0;
    int64_t image_degree = 0;  // deg source - deg kernel (sheaf image)
    int64_t image_rank = 0;
};

KernelData kernel_splitting(const BundleMap& map);

// Generic fiber rank over F_q(t).
int64_t generic_rank(const BundleMap& map);

struct HitchinPairP1 {
    SplittingType splitting;
    int64_t d = 0;
    std::vector<std::vector<PolyFq>> theta;
    uint32_t q = 0;

    BundleMap as_map() const;  // E -> E(d)
};

struct FlagInvariants {
    int64_t s = 1;
    std::vector<int64_t> nbar;
    std::vector<int64_t> ebar_unsat;
    std::vector<int64_t> ebar_sat;
    std::vector<KernelData> power_kernels;  // kernels of theta^k, k = 1..s-1
};

FlagInvariants extract_invariants(const HitchinPairP1& pair);

enum class DegreeConvention { Saturated, Unsaturated };

struct LabelKey {
    std::vector<int64_t> nbar;
    std::vector<int64_t> ebar;
    auto operator<=>(const LabelKey&) const = default;
    std::string serialize() const;
};

struct StackyCount {
    BigRational value = BigRational(0);
    int64_t window = 0;
    BigRational tail = BigRational(0);
    bool tail_exact = false;
    uint32_t q = 0;
};

struct CensusParams {
    uint32_t q = 2;
    int64_t d = 1;
    int64_t n = 2;
    int64_t e = 0;
    int64_t window = 10;
    int workers = 1;
};

// One full sweep: every nilpotent pair up to the window, binned per label
// under both conventions. Deterministic for any worker count.
struct CensusTable {
    CensusParams params;
    std::map<LabelKey, BigRational> sat;
    std::map<LabelKey, BigRational> unsat;
    // per-spread per-label integer counts / aut sizes feed the tail logic
    std::map<LabelKey, std::vector<std::pair<int64_t, BigRational>>> sat_terms;    // (spread, term)
    std::map<LabelKey, std::vector<std::pair<int64_t, BigRational>>> unsat_terms;
    BigRational total = BigRational(0);  // all nilpotent pairs, any label
    uint64_t degree_admissible_sat = 0;  // tallies over enumerated pairs
    uint64_t degree_admissible_unsat = 0;
    uint64_t pairs_seen = 0;
};

CensusTable census_sweep(const CensusParams& params);

StackyCount count_stratum(const CensusParams& params, const LabelKey& label, DegreeConvention convention);
StackyCount count_stratum(const CensusTable& table, const LabelKey& label, DegreeConvention convention);

// Chain stacks: tuples F^s -> ... -> F^1 of split bundles with rank n_i and
// degree f_i, all maps generically surjective.
StackyCount count_chain_stack(uint32_t q, const std::vector<int64_t>& nbar, const std::vector<int64_t>& fbar,
                              int64_t window, int workers = 1);

struct IdentityReport {
    LabelKey label;
    int64_t delta = 0;
    std::vector<int64_t> fbar;
    StackyCount chain;
    StackyCount census_sat;
    StackyCount census_unsat;
    BigRational rhs = BigRational(0);  // q^Delta * chain
    bool sat_matches = false;
    bool unsat_matches = false;
    bool pass = false;  // at least one convention matches within tails
};

IdentityReport verify_count_identity(const CensusParams& params, const LabelKey& label);
IdentityReport verify_count_identity(const CensusTable& table, const LabelKey& label);

struct CalibrationReport {
    StackyCount census;        // theta = 0 stratum via the census path
    BigRational oracle_partial = BigRational(0);  // independent series, same truncation
    BigRational oracle_total = BigRational(0);    // closed form of the full series
    BigRational oracle_tail = BigRational(0);
    bool match = false;  // census == oracle_partial exactly and closed form within tails
};

CalibrationReport bun_calibration(uint32_t q, int64_t n, int64_t e, int64_t window);

// Smallest window whose certified calibration tail is <= bound (n <= 2).
int64_t calibration_window_for_tail(uint32_t q, int64_t n, int64_t e, const BigRational& bound);

struct LeadingExponentReport {
    int64_t exponent = 0;
    bool anomaly = false;
    std::string note;
};

// Symbolic route for nbar = (1,1) (exponent of q^Delta * closed-form chain);
// numeric route fits log_q growth across the supplied (q -> value) table.
LeadingExponentReport leading_exponent_symbolic(const NilpotentStratumLabel& label, int64_t d);
LeadingExponentReport leading_exponent_numeric(const std::map<uint32_t, BigRational>& counts);

}  // namespace hitchin
