#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hitchin/census.hpp"

namespace hitchin {

namespace {

// number of generically surjective maps (+)O(src_j) -> (+)O(dst_i)
BigInt count_gen_surjective(uint32_t q, const SplittingType& src, const SplittingType& dst) {
    int64_t total_dim = 0;
    std::vector<std::vector<int64_t>> dims(static_cast<size_t>(dst.rank()),
                                           std::vector<int64_t>(static_cast<size_t>(src.rank()), 0));
    for (size_t i = 0; i < dst.twists.size(); ++i)
        for (size_t j = 0; j < src.twists.size(); ++j) {
            dims[i][j] = hom_dim(src.twists[j], dst.twists[i]);
            total_dim += dims[i][j];
        }
    if (dst.rank() == 1) {
        // surjective at the generic point iff the map is nonzero
        if (total_dim == 0) return 0;
        return big_pow(BigInt(q), static_cast<unsigned>(total_dim)) - 1;
    }
    if (static_cast<double>(total_dim) * std::log2(static_cast<double>(q)) > 30.0)
        throw std::invalid_argument("budget exceeded: chain map space beyond 2^30");
    // enumerate the matrix space
    std::vector<std::pair<size_t, size_t>> slots;
    for (size_t i = 0; i < dims.size(); ++i)
        for (size_t j = 0; j < dims[i].size(); ++j)
            for (int64_t k = 0; k < dims[i][j]; ++k) slots.emplace_back(i, j);
    // odometer over coefficients; rebuild entries per state
    std::vector<uint32_t> digits(slots.size(), 0);
    BigInt count = 0;
    bool done = slots.empty();
    for (;;) {
        BundleMap map;
        map.src = src.twists;
        map.dst = dst.twists;
        map.q = q;
        map.entries.assign(dims.size(), std::vector<PolyFq>(dims[0].size(), PolyFq()));
        size_t pos = 0;
        for (size_t i = 0; i < dims.size(); ++i)
            for (size_t j = 0; j < dims[i].size(); ++j) {
                std::vector<Fq> c;
                for (int64_t k = 0; k < dims[i][j]; ++k) c.emplace_back(digits[pos++], q);
                map.entries[i][j] = PolyFq(std::move(c));
            }
        if (generic_rank(map) == dst.rank()) ++count;
        if (done) break;
        size_t i = 0;
        for (; i < digits.size(); ++i) {
            if (++digits[i] < q) break;
            digits[i] = 0;
        }
        if (i == digits.size()) break;
    }
    return count;
}

}  // namespace

StackyCount count_chain_stack(uint32_t q, const std::vector<int64_t>& nbar, const std::vector<int64_t>& fbar,
                              int64_t window, int workers) {
    (void)workers;  // combination spaces at desk scale are tiny; kept for symmetry
    require_prime_modulus(q);
    if (nbar.empty() || nbar.size() != fbar.size()) throw std::invalid_argument("chain shape mismatch");
    const size_t s = nbar.size();
    StackyCount out;
    out.q = q;
    out.window = window;

    std::vector<std::vector<SplittingType>> splittings;
    bool all_lines = true;
    for (size_t i = 0; i < s; ++i) {
        splittings.push_back(enumerate_splittings(nbar[i], fbar[i], window));
        all_lines = all_lines && nbar[i] == 1;
    }

    // cartesian product over the per-step splitting lists
    std::vector<size_t> idx(s, 0);
    bool done = false;
    BigRational last_terms[2] = {BigRational(0), BigRational(0)};  // spread window-1, window
    while (!done) {
        BigInt aut = 1;
        int64_t max_spread = 0;
        for (size_t i = 0; i < s; ++i) {
            aut *= aut_bundle_size(splittings[i][idx[i]], q);
            max_spread = std::max(max_spread, splittings[i][idx[i]].spread());
        }
        BigInt maps = 1;
        for (size_t i = 0; i + 1 < s; ++i) {
            // chain arrow F^{i+1} -> F^i
            maps *= count_gen_surjective(q, splittings[i + 1][idx[i + 1]], splittings[i][idx[i]]);
            if (maps == 0) break;
        }
        if (maps != 0) {
            BigRational term(maps, aut);
            out.value += term;
            if (max_spread >= window - 1) last_terms[max_spread - (window - 1)] += term;
        }
        for (size_t i = 0;; ++i) {
            if (i == s) {
                done = true;
                break;
            }
            if (++idx[i] < splittings[i].size()) break;
            idx[i] = 0;
        }
    }

    if (all_lines) {
        out.tail = BigRational(0);
        out.tail_exact = true;  // one splitting per line bundle: exact value
    } else {
        out.tail = (last_terms[0] + last_terms[1]) * BigRational(BigInt(1), BigInt(q) - 1);
        out.tail_exact = false;
    }
    return out;
}

IdentityReport verify_count_identity(const CensusParams& params, const LabelKey& label) {
    return verify_count_identity(census_sweep(params), label);
}

IdentityReport verify_count_identity(const CensusTable& table, const LabelKey& label) {
    const CensusParams& params = table.params;
    IdentityReport rep;
    rep.label = label;
    NilpotentStratumLabel lab(label.nbar, label.ebar);
    if (lab.rank() != params.n || lab.degree() != params.e)
        throw std::invalid_argument("label rank/degree must match the census parameters");
    rep.delta = delta_exponent(lab, 0, params.d);  // X = P^1
    rep.fbar = chain_degrees(lab, params.d).f;
    rep.chain = count_chain_stack(params.q, label.nbar, rep.fbar, params.window, params.workers);
    rep.census_sat = count_stratum(table, label, DegreeConvention::Saturated);
    rep.census_unsat = count_stratum(table, label, DegreeConvention::Unsaturated);
    BigRational qdelta = q_power(params.q, rep.delta);
    rep.rhs = qdelta * rep.chain.value;
    BigRational chain_tail = qdelta * rep.chain.tail;
    auto matches = [&](const StackyCount& c) {
        BigRational diff = c.value - rep.rhs;
        if (diff < 0) diff = -diff;
        return diff <= c.tail + chain_tail;
    };
    rep.sat_matches = matches(rep.census_sat);
    rep.unsat_matches = matches(rep.census_unsat);
    rep.pass = rep.sat_matches || rep.unsat_matches;
    return rep;
}

namespace {

// Series data of the theta = 0 stratum (the Bun_n mass) for n <= 2, derived
// from aut_bundle_size: for n = 2 the splitting (a+m, a) has
// |Aut| = (q-1)^2 q^{m+1} for m >= 1 and |GL_2(F_q)| = (q^2-1)(q^2-q) at
// m = 0, so the mass is 1/|GL_2| + sum over the spread parity class of a
// geometric series; both the partial sums and the closed form are exact.
struct BunSeries {
    BigRational partial;
    BigRational total;
};

BunSeries bun_series(uint32_t q, int64_t n, int64_t e, int64_t window) {
    BunSeries s;
    if (n == 1) {
        s.partial = BigRational(BigInt(1), BigInt(q) - 1);
        s.total = s.partial;
        return s;
    }
    if (n != 2) throw std::invalid_argument("calibration oracle derived for n <= 2");
    const BigInt q1 = BigInt(q) - 1;
    const BigInt q2m1 = BigInt(q) * q - 1;
    for (int64_t m = (e % 2 + 2) % 2; m <= window; m += 2) {
        if (m == 0)
            s.partial += BigRational(BigInt(1), q2m1 * (BigInt(q) * q - q));
        else
            s.partial += BigRational(BigInt(1), q1 * q1 * big_pow(BigInt(q), static_cast<unsigned>(m + 1)));
    }
    if (e % 2 == 0) {
        // 1/|GL_2| + sum_{k>=1} 1/((q-1)^2 q^{2k+1}) = 1/|GL_2| + 1/((q-1)^2 q (q^2-1))
        s.total = BigRational(BigInt(1), q2m1 * (BigInt(q) * q - q)) +
                  BigRational(BigInt(1), q1 * q1 * q * q2m1);
    } else {
        // sum_{k>=0} 1/((q-1)^2 q^{2k+2}) = 1/((q-1)^2 (q^2-1))
        s.total = BigRational(BigInt(1), q1 * q1 * q2m1);
    }
    return s;
}

}  // namespace

CalibrationReport bun_calibration(uint32_t q, int64_t n, int64_t e, int64_t window) {
    if (n < 1 || n > 2) throw std::invalid_argument("calibration oracle derived for n <= 2");
    CalibrationReport rep;
    CensusParams p;
    p.q = q;
    p.d = 1;  // the theta = 0 stratum never sees d
    p.n = n;
    p.e = e;
    p.window = std::max<int64_t>(window, 1);
    CensusTable table = census_sweep(p);
    LabelKey label{{n}, {e}};
    rep.census = count_stratum(table, label, DegreeConvention::Saturated);
    BunSeries series = bun_series(q, n, e, p.window);
    rep.oracle_partial = series.partial;
    rep.oracle_total = series.total;
    rep.oracle_tail = series.total - series.partial;
    if (rep.oracle_tail < 0) throw std::logic_error("oracle tail must be nonnegative");
    BigRational diff = rep.census.value - rep.oracle_total;
    if (diff < 0) diff = -diff;
    rep.match = rep.census.value == rep.oracle_partial && diff <= rep.census.tail &&
                rep.oracle_tail <= rep.census.tail;
    return rep;
}

int64_t calibration_window_for_tail(uint32_t q, int64_t n, int64_t e, const BigRational& bound) {
    for (int64_t window = 1; window <= 64; ++window) {
        BunSeries s = bun_series(q, n, e, window);
        if (s.total - s.partial <= bound) return window;
    }
    throw std::invalid_argument("no window up to 64 certifies the requested tail");
}

LeadingExponentReport leading_exponent_symbolic(const NilpotentStratumLabel& label, int64_t d) {
    LeadingExponentReport rep;
    if (label.steps() == 1) {
        // the 1/|GL_n| term dominates the Bun mass: exponent -n^2 = n^2(g-1) at g = 0
        rep.exponent = -label.rank() * label.rank();
    } else if (label.steps() == 2 && label.nbar[0] == 1 && label.nbar[1] == 1) {
        auto f = chain_degrees(label, d).f;
        if (f[0] < f[1]) {
            rep.anomaly = true;
            rep.note = "empty chain side (f1 < f2)";
            return rep;
        }
        // q^Delta (q^{f1-f2+1}-1)/(q-1)^2 has leading exponent Delta + (f1-f2+1) - 2
        rep.exponent = delta_exponent(label, 0, d) + (f[0] - f[1] + 1) - 2;
    } else {
        throw std::invalid_argument("symbolic route covers s = 1 and nbar = (1,1)");
    }
    if (rep.exponent != stratum_dim(label, 0, d)) {
        rep.anomaly = true;
        rep.note = "leading exponent disagrees with the stratum dimension";
    }
    return rep;
}

LeadingExponentReport leading_exponent_numeric(const std::map<uint32_t, BigRational>& counts) {
    LeadingExponentReport rep;
    if (counts.size() < 2) throw std::invalid_argument("need at least two q values");
    std::vector<std::pair<double, double>> pts;  // (log q, log value)
    for (const auto& [q, v] : counts) {
        if (v <= 0) {
            rep.anomaly = true;
            rep.note = "vanishing count";
            return rep;
        }
        pts.emplace_back(std::log(static_cast<double>(q)),
                         std::log(static_cast<double>(numerator(v))) - std::log(static_cast<double>(denominator(v))));
    }
    // estimate from the largest q pair (subleading terms like (q-1) vs q are
    // worst at small q), then require the remaining pairs to agree loosely
    const size_t m = pts.size();
    double top_slope = (pts[m - 1].second - pts[m - 2].second) / (pts[m - 1].first - pts[m - 2].first);
    long long guess = std::llround(top_slope);
    if (std::abs(top_slope - static_cast<double>(guess)) > 0.35) {
        rep.anomaly = true;
        rep.note = "growth in q is not a clean power";
        return rep;
    }
    for (size_t i = 0; i + 2 < m; ++i) {
        double slope = (pts[i + 1].second - pts[i].second) / (pts[i + 1].first - pts[i].first);
        if (std::abs(slope - static_cast<double>(guess)) > 0.75) {
            rep.anomaly = true;
            rep.note = "growth in q is not a clean power";
            return rep;
        }
    }
    rep.exponent = guess;
    return rep;
}

}  // namespace hitchin
