#include "hitchin/severi.hpp"

#include <stdexcept>

namespace hitchin {

SevereLedgerReport severi_ledger(const SevereLedgerEntry& entry, const GeometrySetup& setup) {
    if (entry.components.empty()) throw std::invalid_argument("ledger entry needs at least one component");
    SevereLedgerReport rep;
    int64_t total_rank = 0;
    for (const auto& c : entry.components) {
        if (c.delta < 0) throw std::invalid_argument("delta must be >= 0");
        GeometrySetup comp = setup.with_rank(c.n);
        int64_t df_i = dim_fiber(comp);
        if (c.delta > df_i) throw std::invalid_argument("delta exceeds fiber dimension");
        int64_t dab_i = df_i - c.delta;
        int64_t lower_i = df_i - dim_base(comp) + c.dim_a;
        rep.d_a += c.dim_a;
        rep.d_ab += dab_i;
        rep.severi_lower += lower_i;
        rep.component_d_ab.push_back(dab_i);
        rep.component_lower.push_back(lower_i);
        total_rank += c.n;
    }
    if (total_rank > setup.n) throw std::invalid_argument("component ranks exceed ambient rank");
    rep.upper_bound = dim_fiber(setup) - dim_base(setup) + rep.d_a;
    bool excluded = rep.d_ab > rep.upper_bound || rep.severi_lower > rep.upper_bound;
    rep.verdict = excluded ? Verdict::Excluded : Verdict::NotExcluded;
    return rep;
}

}  // namespace hitchin
