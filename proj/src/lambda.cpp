#include "hitchin/lambda.hpp"

#include <algorithm>
#include <stdexcept>

namespace hitchin {

namespace {

// Multisets of pairs (a, b) with sum a*b = n. Pair types are ordered
// descending lexicographically; we pick them non-increasingly so each
// multiset appears exactly once, already canonically sorted.
void extend(int64_t remaining, std::pair<int64_t, int64_t> max_pair,
            std::vector<std::pair<int64_t, int64_t>>& acc, std::vector<StratumLabel>& out) {
    if (remaining == 0) {
        out.push_back(StratumLabel{acc});
        return;
    }
    for (int64_t a = std::min(max_pair.first, remaining); a >= 1; --a) {
        int64_t bmax = remaining / a;
        if (a == max_pair.first) bmax = std::min(bmax, max_pair.second);
        for (int64_t b = bmax; b >= 1; --b) {
            acc.emplace_back(a, b);
            extend(remaining - a * b, {a, b}, acc, out);
            acc.pop_back();
        }
    }
}

}  // namespace

std::vector<StratumLabel> enumerate_lambda(int64_t n) {
    if (n < 1 || n > 12) throw std::invalid_argument("enumerate_lambda supports 1 <= n <= 12");
    std::vector<StratumLabel> out;
    std::vector<std::pair<int64_t, int64_t>> acc;
    extend(n, {n, n}, acc, out);
    return out;
}

int64_t stratum_base_dim(const StratumLabel& label, const GeometrySetup& setup) {
    int64_t total = 0;
    for (auto [ni, mi] : label.pairs) total += dim_base(setup.with_rank(ni));
    return total;
}

ExclusionRow support_exclusion_test(const StratumLabel& label, const GeometrySetup& setup) {
    ExclusionRow row;
    row.label = label;
    int64_t s = label.component_count();
    row.lhs = setup.mode == DegreeMode::Canonical ? 0 : 1 - s;
    row.rhs = (setup.n - label.reduced_rank()) * (setup.d - 2 * setup.g + 2);
    row.verdict = row.lhs >= row.rhs ? Verdict::NotExcluded : Verdict::Excluded;
    return row;
}

ExclusionSweep exclusion_sweep(const GeometrySetup& setup) {
    ExclusionSweep sweep;
    for (const auto& label : enumerate_lambda(setup.n)) {
        if (label.rank() != setup.n) throw std::logic_error("label rank mismatch");
        sweep.rows.push_back(support_exclusion_test(label, setup));
        if (sweep.rows.back().verdict == Verdict::NotExcluded) ++sweep.not_excluded;
    }
    if (setup.mode == DegreeMode::Large) {
        if (sweep.not_excluded != 1) throw std::logic_error("expected exactly one surviving label");
        for (const auto& row : sweep.rows)
            if (row.verdict == Verdict::NotExcluded && !row.label.is_elliptic())
                throw std::logic_error("survivor is not the elliptic label");
    } else {
        if (sweep.not_excluded != static_cast<int64_t>(sweep.rows.size()))
            throw std::logic_error("canonical mode must keep every label");
    }
    return sweep;
}

}  // namespace hitchin
