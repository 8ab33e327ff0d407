#pragma once

// The stratification of the Hitchin base by multiplicity type: labels
// lambda = multiset of pairs (n_i, m_i) with sum n_i m_i = n, the component
// data (degree n_i, multiplicity m_i) of the spectral curve. Pairs are kept
// in canonical order (descending lexicographic) so serialization is unique.
//
// The support-exclusion inequality from the main theorem's proof reads
//     1 - s >= (n - sum n_i)(d - 2g + 2)
// in the large regime; in the canonical case d = 2g-2 the left side
// degenerates to 0 and the test holds for every label.

#include <cstdint>
#include <string>
#include <vector>

#include "hitchin/geometry.hpp"

namespace hitchin {

struct StratumLabel {
    // pairs (n_i, m_i), descending lexicographic
    std::vector<std::pair<int64_t, int64_t>> pairs;

    int64_t component_count() const { return static_cast<int64_t>(pairs.size()); }  // s
    int64_t rank() const {
        int64_t n = 0;
        for (auto [ni, mi] : pairs) n += ni * mi;
        return n;
    }
    int64_t reduced_rank() const {  // n' = sum n_i, each component once
        int64_t n = 0;
        for (auto [ni, mi] : pairs) n += ni;
        return n;
    }
    bool is_elliptic() const { return pairs.size() == 1 && pairs[0].second == 1; }
    bool is_nilpotent() const { return pairs.size() == 1 && pairs[0].first == 1; }

    std::string serialize() const {
        std::string out = "{";
        for (size_t i = 0; i < pairs.size(); ++i) {
            if (i) out += ",";
            out += "(" + std::to_string(pairs[i].first) + "," + std::to_string(pairs[i].second) + ")";
        }
        return out + "}";
    }
};

std::vector<StratumLabel> enumerate_lambda(int64_t n);

int64_t stratum_base_dim(const StratumLabel& label, const GeometrySetup& setup);

enum class Verdict { Excluded, NotExcluded };

struct ExclusionRow {
    StratumLabel label;
    int64_t lhs = 0;
    int64_t rhs = 0;
    Verdict verdict = Verdict::NotExcluded;
};

ExclusionRow support_exclusion_test(const StratumLabel& label, const GeometrySetup& setup);

struct ExclusionSweep {
    std::vector<ExclusionRow> rows;
    int64_t not_excluded = 0;
};

// Sweeps enumerate_lambda(n); in large mode asserts the elliptic label is the
// unique survivor, in canonical mode that every label survives.
ExclusionSweep exclusion_sweep(const GeometrySetup& setup);

}  // namespace hitchin
