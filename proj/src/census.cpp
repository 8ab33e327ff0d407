#include "hitchin/census.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "hitchin/ratfunc.hpp"

namespace hitchin {

std::string SplittingType::serialize() const {
    std::string out = "(";
    for (size_t i = 0; i < twists.size(); ++i) out += (i ? "," : "") + std::to_string(twists[i]);
    return out + ")";
}

std::string LabelKey::serialize() const {
    std::string out = "n=(";
    for (size_t i = 0; i < nbar.size(); ++i) out += (i ? "," : "") + std::to_string(nbar[i]);
    out += ") e=(";
    for (size_t i = 0; i < ebar.size(); ++i) out += (i ? "," : "") + std::to_string(ebar[i]);
    return out + ")";
}

namespace {

void descend(int64_t slots, int64_t sum, int64_t hi, int64_t lo, std::vector<int64_t>& acc,
             std::vector<SplittingType>& out) {
    if (slots == 0) {
        if (sum == 0) out.push_back(SplittingType{acc});
        return;
    }
    for (int64_t a = std::min(hi, sum - (slots - 1) * lo); a >= lo && a * slots >= sum - 0; --a) {
        if (sum - a > (slots - 1) * a) break;  // remaining twists are <= a
        acc.push_back(a);
        descend(slots - 1, sum - a, a, lo, acc, out);
        acc.pop_back();
    }
}

}  // namespace

std::vector<SplittingType> enumerate_splittings(int64_t n, int64_t e, int64_t max_spread) {
    if (n < 1) throw std::invalid_argument("rank must be >= 1");
    if (max_spread < 0) throw std::invalid_argument("window must be >= 0");
    std::vector<SplittingType> out;
    // a_1 ranges over [ceil(e/n), ceil(e/n) + max_spread]; a_n >= a_1 - max_spread
    int64_t a1_min = e >= 0 ? (e + n - 1) / n : e / n;  // ceil(e/n)
    for (int64_t a1 = a1_min; a1 <= a1_min + max_spread; ++a1) {
        std::vector<int64_t> acc{a1};
        descend(n - 1, e - a1, a1, a1 - max_spread, acc, out);
    }
    std::sort(out.begin(), out.end(), [](const SplittingType& x, const SplittingType& y) {
        if (x.spread() != y.spread()) return x.spread() < y.spread();
        return x.twists > y.twists;
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const SplittingType& x, const SplittingType& y) { return x.twists == y.twists; }),
              out.end());
    // drop anything that slipped past the spread cut (a_n < a_1 - max_spread)
    out.erase(std::remove_if(out.begin(), out.end(),
                             [&](const SplittingType& s) { return s.spread() > max_spread; }),
              out.end());
    return out;
}

BigInt aut_bundle_size(const SplittingType& splitting, uint32_t q) {
    require_prime_modulus(q);
    const auto& a = splitting.twists;
    for (size_t i = 0; i + 1 < a.size(); ++i)
        if (a[i] < a[i + 1]) throw std::invalid_argument("splitting twists must be descending");
    BigInt aut = 1;
    // diagonal GL blocks on equal twists
    size_t i = 0;
    while (i < a.size()) {
        size_t j = i;
        while (j < a.size() && a[j] == a[i]) ++j;
        unsigned k = static_cast<unsigned>(j - i);
        BigInt qk = big_pow(BigInt(q), k);
        for (unsigned r = 0; r < k; ++r) aut *= qk - big_pow(BigInt(q), r);
        i = j;
    }
    // unipotent part: Hom(O(a_j) -> O(a_i)) over strictly decreasing pairs a_j < a_i
    int64_t homs = 0;
    for (size_t x = 0; x < a.size(); ++x)
        for (size_t y = 0; y < a.size(); ++y)
            if (a[y] < a[x]) homs += hom_dim(a[y], a[x]);
    return aut * big_pow(BigInt(q), static_cast<unsigned>(homs));
}

bool BundleMap::is_zero() const {
    for (const auto& row : entries)
        for (const auto& p : row)
            if (!p.is_zero()) return false;
    return true;
}

BundleMap BundleMap::twist(int64_t m) const {
    BundleMap t = *this;
    for (auto& v : t.src) v += m;
    for (auto& v : t.dst) v += m;
    return t;
}

BundleMap compose(const BundleMap& outer, const BundleMap& inner) {
    if (outer.src != inner.dst) throw std::logic_error("bundle map composition twist mismatch");
    BundleMap out;
    out.src = inner.src;
    out.dst = outer.dst;
    out.q = outer.q;
    out.entries.assign(outer.dst.size(), std::vector<PolyFq>(inner.src.size(), PolyFq()));
    for (size_t i = 0; i < outer.dst.size(); ++i)
        for (size_t j = 0; j < inner.src.size(); ++j) {
            PolyFq acc;
            for (size_t l = 0; l < outer.src.size(); ++l) acc += outer.entries[i][l] * inner.entries[l][j];
            out.entries[i][j] = std::move(acc);
        }
    return out;
}

BundleMap HitchinPairP1::as_map() const {
    BundleMap m;
    m.src = splitting.twists;
    m.dst = splitting.twists;
    for (auto& v : m.dst) v += d;
    m.entries = theta;
    m.q = q;
    return m;
}

namespace {

// rank of an r x c matrix over F_q
int64_t fq_rank(std::vector<std::vector<uint32_t>> m, uint32_t q) {
    if (m.empty() || m[0].empty()) return 0;
    const size_t rows = m.size(), cols = m[0].size();
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t pivot = rank;
        while (pivot < rows && m[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[rank], m[pivot]);
        uint32_t inv = Fq(m[rank][col], q).inverse().value();
        for (size_t j = col; j < cols; ++j)
            m[rank][j] = static_cast<uint32_t>(static_cast<uint64_t>(m[rank][j]) * inv % q);
        for (size_t i = 0; i < rows; ++i) {
            if (i == rank || m[i][col] == 0) continue;
            uint64_t f = m[i][col];
            for (size_t j = col; j < cols; ++j)
                m[i][j] = static_cast<uint32_t>((m[i][j] + (q - 1) * f % q * m[rank][j]) % q);
        }
        ++rank;
    }
    return static_cast<int64_t>(rank);
}

// dim of the solution space of map(v) = 0 with v_j in H^0(O(src_j + m))
int64_t section_kernel_dim(const BundleMap& map, int64_t m) {
    const uint32_t q = map.q;
    std::vector<int64_t> col_offset;
    int64_t cols = 0;
    for (int64_t s : map.src) {
        col_offset.push_back(cols);
        cols += std::max<int64_t>(0, s + m + 1);
    }
    if (cols == 0) return 0;
    int64_t rows = 0;
    std::vector<int64_t> row_offset;
    for (int64_t t : map.dst) {
        row_offset.push_back(rows);
        rows += std::max<int64_t>(0, t + m + 1);
    }
    if (rows == 0) return cols;
    std::vector<std::vector<uint32_t>> a(static_cast<size_t>(rows), std::vector<uint32_t>(static_cast<size_t>(cols), 0));
    for (size_t i = 0; i < map.dst.size(); ++i) {
        int64_t nrow = std::max<int64_t>(0, map.dst[i] + m + 1);
        if (nrow == 0) continue;
        for (size_t j = 0; j < map.src.size(); ++j) {
            int64_t ncol = std::max<int64_t>(0, map.src[j] + m + 1);
            if (ncol == 0) continue;
            const PolyFq& p = map.entries[i][j];
            if (p.is_zero()) continue;
            // coefficient of t^r in p * v_j-component t^c lands in row r + c
            for (int64_t c = 0; c < ncol; ++c)
                for (int64_t r = 0; r <= p.degree(); ++r) {
                    int64_t row = r + c;
                    if (row >= nrow)
                        throw std::logic_error("entry degree exceeds twist bound");
                    a[static_cast<size_t>(row_offset[i] + row)][static_cast<size_t>(col_offset[j] + c)] =
                        p.coeffs()[static_cast<size_t>(r)].value();
                }
        }
    }
    return cols - fq_rank(std::move(a), q);
}

}  // namespace

int64_t generic_rank(const BundleMap& map) {
    // fraction-free elimination over F_q[t]
    std::vector<std::vector<PolyFq>> m = map.entries;
    if (m.empty() || m[0].empty()) return 0;
    const size_t rows = m.size(), cols = m[0].size();
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t pivot = rank;
        while (pivot < rows && m[pivot][col].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[rank], m[pivot]);
        for (size_t i = rank + 1; i < rows; ++i) {
            if (m[i][col].is_zero()) continue;
            for (size_t j = col + 1; j < cols; ++j)
                m[i][j] = m[i][j] * m[rank][col] - m[rank][j] * m[i][col];
            m[i][col] = PolyFq();
        }
        ++rank;
    }
    return static_cast<int64_t>(rank);
}

KernelData kernel_splitting(const BundleMap& map) {
    KernelData out;
    const int64_t nsrc = static_cast<int64_t>(map.src.size());
    int64_t src_deg = 0;
    for (int64_t s : map.src) src_deg += s;
    const int64_t r = generic_rank(map);
    out.image_rank = r;
    out.rank = nsrc - r;
    if (out.rank == 0) {
        out.degree = 0;
        out.image_degree = src_deg;
        return out;
    }
    const int64_t hi = *std::max_element(map.src.begin(), map.src.end());
    // deg ker >= deg E_src - (sum of the r largest target twists); each kernel
    // twist is <= hi, which yields a proven lower window bound.
    std::vector<int64_t> dst_sorted = map.dst;
    std::sort(dst_sorted.begin(), dst_sorted.end(), std::greater<int64_t>());
    int64_t img_cap = 0;
    for (int64_t i = 0; i < r; ++i) img_cap += dst_sorted[static_cast<size_t>(i)];
    const int64_t lo = src_deg - img_cap - (out.rank - 1) * hi;

    std::vector<int64_t> h;  // h[idx] = dim H^0(ker(m)) at m = -hi-1+idx
    for (int64_t m = -hi - 1; m <= -lo; ++m) h.push_back(section_kernel_dim(map, m));
    if (h.front() != 0) throw std::logic_error("kernel sections below the twist window");
    std::vector<int64_t> delta;  // counting function #{c_l >= -m}
    for (size_t i = 1; i < h.size(); ++i) delta.push_back(h[i] - h[i - 1]);
    if (delta.empty() || delta.back() != out.rank)
        throw std::logic_error("kernel twist counting did not stabilize at the rank");
    // delta[idx] corresponds to m = -hi + idx; mult(c) = delta(-c) - delta(-c-1)
    auto delta_at = [&](int64_t m) -> int64_t {
        if (m < -hi) return 0;
        size_t idx = static_cast<size_t>(m + hi);
        if (idx >= delta.size()) return out.rank;
        return delta[idx];
    };
    for (int64_t c = hi; c >= lo; --c) {
        int64_t mult = delta_at(-c) - delta_at(-c - 1);
        if (mult < 0) throw std::logic_error("kernel twist multiplicity negative");
        for (int64_t k = 0; k < mult; ++k) out.splitting.twists.push_back(c);
    }
    if (static_cast<int64_t>(out.splitting.twists.size()) != out.rank)
        throw std::logic_error("kernel twist multiplicities do not sum to the rank");
    out.degree = 0;
    for (int64_t c : out.splitting.twists) out.degree += c;
    out.image_degree = src_deg - out.degree;
    return out;
}

namespace {

BundleMap transpose_dual(const BundleMap& map) {
    BundleMap t;
    t.q = map.q;
    for (int64_t v : map.dst) t.src.push_back(-v);
    for (int64_t v : map.src) t.dst.push_back(-v);
    t.entries.assign(map.src.size(), std::vector<PolyFq>(map.dst.size(), PolyFq()));
    for (size_t i = 0; i < map.dst.size(); ++i)
        for (size_t j = 0; j < map.src.size(); ++j) t.entries[j][i] = map.entries[i][j];
    return t;
}

// degree of the saturation of Im(map) inside the target bundle
int64_t saturated_image_degree(const BundleMap& map) {
    int64_t dst_deg = 0;
    for (int64_t v : map.dst) dst_deg += v;
    KernelData dual = kernel_splitting(transpose_dual(map));
    // coker^vee = ker(map^T); deg sat(Im) = deg target - deg(coker/torsion)
    return dst_deg + dual.degree;
}

}  // namespace

FlagInvariants extract_invariants(const HitchinPairP1& pair) {
    FlagInvariants inv;
    const int64_t n = pair.splitting.rank();
    const int64_t e = pair.splitting.degree();
    BundleMap theta = pair.as_map();

    std::vector<BundleMap> powers;  // powers[k-1] = theta^k : E -> E(k d)
    powers.push_back(theta);
    while (!powers.back().is_zero() && static_cast<int64_t>(powers.size()) < n + 1)
        powers.push_back(compose(theta.twist(static_cast<int64_t>(powers.size()) * pair.d), powers.back()));
    if (!powers.back().is_zero()) throw std::invalid_argument("not in the nilpotent cone");
    const int64_t s = static_cast<int64_t>(powers.size());
    inv.s = s;

    // flag data at i = 1..s-1 from theta^{s-i}; E_s = E closes both lists
    std::vector<int64_t> rank_flag{0}, deg_unsat{0}, deg_sat{0};
    std::vector<KernelData> kernels;
    for (int64_t k = 1; k <= s - 1; ++k) kernels.push_back(kernel_splitting(powers[static_cast<size_t>(k - 1)]));
    inv.power_kernels = kernels;
    for (int64_t i = 1; i <= s - 1; ++i) {
        const int64_t k = s - i;
        const KernelData& ker = kernels[static_cast<size_t>(k - 1)];
        const int64_t r = ker.image_rank;
        rank_flag.push_back(r);
        deg_unsat.push_back(ker.image_degree + r * (i - s) * pair.d);
        const int64_t sat_im = saturated_image_degree(powers[static_cast<size_t>(k - 1)]);
        deg_sat.push_back(sat_im + r * (i - s) * pair.d);
    }
    rank_flag.push_back(n);
    deg_unsat.push_back(e);
    deg_sat.push_back(e);

    for (int64_t i = 1; i <= s; ++i) {
        inv.nbar.push_back(rank_flag[static_cast<size_t>(i)] - rank_flag[static_cast<size_t>(i - 1)]);
        inv.ebar_unsat.push_back(deg_unsat[static_cast<size_t>(i)] - deg_unsat[static_cast<size_t>(i - 1)]);
        inv.ebar_sat.push_back(deg_sat[static_cast<size_t>(i)] - deg_sat[static_cast<size_t>(i - 1)]);
    }
    for (size_t i = 0; i + 1 < inv.nbar.size(); ++i)
        if (inv.nbar[i] > inv.nbar[i + 1])
            throw std::logic_error("flag ranks must be nondecreasing along the filtration");
    int64_t cum_unsat = 0, cum_sat = 0;
    for (size_t i = 0; i < inv.nbar.size(); ++i) {
        cum_unsat += inv.ebar_unsat[i];
        cum_sat += inv.ebar_sat[i];
        if (cum_sat < cum_unsat) throw std::logic_error("saturation may only increase subsheaf degrees");
        if (inv.nbar[i] < 1) throw std::logic_error("flag ranks must be positive");
    }
    if (cum_unsat != e || cum_sat != e) throw std::logic_error("flag degrees must telescope to deg E");
    return inv;
}

namespace {

struct ItemResult {
    std::map<LabelKey, BigInt> sat;
    std::map<LabelKey, BigInt> unsat;
    BigInt total = 0;
    uint64_t deg_adm_sat = 0;
    uint64_t deg_adm_unsat = 0;
    uint64_t pairs = 0;
};

struct EntrySlot {
    size_t i, j;
    int64_t dim;  // number of coefficients
};

double log2_theta_space(uint32_t q, const std::vector<EntrySlot>& slots) {
    int64_t total = 0;
    for (const auto& s : slots) total += s.dim;
    return static_cast<double>(total) * std::log2(static_cast<double>(q));
}

// odometer over the coefficients of the given slots
class ThetaOdometer {
  public:
    ThetaOdometer(uint32_t q, const std::vector<EntrySlot>& slots) : q_(q), slots_(slots) {
        int64_t total = 0;
        for (const auto& s : slots) total += s.dim;
        digits_.assign(static_cast<size_t>(total), 0);
    }
    bool done() const { return done_; }
    void advance() {
        for (size_t i = 0; i < digits_.size(); ++i) {
            if (++digits_[i] < q_) return;
            digits_[i] = 0;
        }
        done_ = true;
    }
    void write_into(std::vector<std::vector<PolyFq>>& theta) const {
        size_t pos = 0;
        for (const auto& s : slots_) {
            std::vector<Fq> c;
            c.reserve(static_cast<size_t>(s.dim));
            for (int64_t k = 0; k < s.dim; ++k) c.emplace_back(digits_[pos++], q_);
            theta[s.i][s.j] = PolyFq(std::move(c));
        }
    }

  private:
    uint32_t q_;
    std::vector<EntrySlot> slots_;
    std::vector<uint32_t> digits_;
    bool done_ = false;
};

bool char_poly_vanishes(const std::vector<std::vector<PolyFq>>& m, int64_t n) {
    if (n == 1) return m[0][0].is_zero();
    if (n == 2) {
        if (!(m[0][0] + m[1][1]).is_zero()) return false;
        return (m[0][0] * m[1][1] - m[0][1] * m[1][0]).is_zero();
    }
    if (n == 3) {
        PolyFq tr = m[0][0] + m[1][1] + m[2][2];
        if (!tr.is_zero()) return false;
        PolyFq c2 = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0] +
                    m[1][1] * m[2][2] - m[1][2] * m[2][1];
        if (!c2.is_zero()) return false;
        PolyFq det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        return det.is_zero();
    }
    return false;  // caller falls back to power test
}

bool is_nilpotent_matrix(const HitchinPairP1& pair) {
    const int64_t n = pair.splitting.rank();
    if (n <= 3) return char_poly_vanishes(pair.theta, n);
    BundleMap acc = pair.as_map();
    int64_t pow = 1;
    while (pow < n) {
        acc = compose(acc.twist(pow * pair.d), acc);
        pow *= 2;
        if (acc.is_zero()) return true;
    }
    return acc.is_zero();
}

void tally(ItemResult& res, const HitchinPairP1& pair, int64_t d) {
    FlagInvariants inv = extract_invariants(pair);
    LabelKey sat{inv.nbar, inv.ebar_sat};
    LabelKey unsat{inv.nbar, inv.ebar_unsat};
    res.sat[sat] += 1;
    res.unsat[unsat] += 1;
    res.total += 1;
    ++res.pairs;
    if (NilpotentStratumLabel(inv.nbar, inv.ebar_sat).degree_admissible(d)) ++res.deg_adm_sat;
    if (NilpotentStratumLabel(inv.nbar, inv.ebar_unsat).degree_admissible(d)) ++res.deg_adm_unsat;
}

ItemResult process_splitting(const CensusParams& p, const SplittingType& split) {
    ItemResult res;
    const int64_t n = split.rank();
    const auto& a = split.twists;

    // theta = 0 (the s = 1 stratum) is present for every splitting
    LabelKey zero_label{{n}, {split.degree()}};
    res.sat[zero_label] += 1;
    res.unsat[zero_label] += 1;
    res.total += 1;
    ++res.pairs;
    ++res.deg_adm_sat;
    ++res.deg_adm_unsat;

    // rank 1: theta nilpotent iff theta = 0
    if (n == 1) return res;

    // n = 2 with no lower-left entry: nilpotent iff strictly upper triangular.
    // Those pairs all have kernel exactly O(a_1), so they land in one label
    // per convention; count them in closed form.
    if (n == 2 && a[1] - a[0] + p.d + 1 <= 0) {
        const int64_t h12 = a[0] - a[1] + p.d + 1;
        BigInt nonzero = big_pow(BigInt(p.q), static_cast<unsigned>(h12)) - 1;
        LabelKey sat{{1, 1}, {a[0], a[1]}};
        LabelKey unsat{{1, 1}, {a[1] - p.d, a[0] + p.d}};
        res.sat[sat] += nonzero;
        res.unsat[unsat] += nonzero;
        res.total += nonzero;
        // degree admissibility of the two labels, once per pair
        uint64_t cnt = static_cast<uint64_t>(nonzero);
        res.pairs += cnt;
        if (NilpotentStratumLabel({1, 1}, {a[0], a[1]}).degree_admissible(p.d)) res.deg_adm_sat += cnt;
        if (NilpotentStratumLabel({1, 1}, {a[1] - p.d, a[0] + p.d}).degree_admissible(p.d))
            res.deg_adm_unsat += cnt;
        return res;
    }

    // generic enumeration: diagonal slots outermost so the trace test prunes
    std::vector<EntrySlot> diag, off;
    for (int64_t i = 0; i < n; ++i)
        for (int64_t j = 0; j < n; ++j) {
            int64_t dim = std::max<int64_t>(0, a[static_cast<size_t>(i)] - a[static_cast<size_t>(j)] + p.d + 1);
            if (dim == 0) continue;
            (i == j ? diag : off).push_back(EntrySlot{static_cast<size_t>(i), static_cast<size_t>(j), dim});
        }
    std::vector<EntrySlot> all = diag;
    all.insert(all.end(), off.begin(), off.end());
    if (log2_theta_space(p.q, all) > 30.0)
        throw std::invalid_argument("budget exceeded: theta space beyond 2^30 at splitting " + split.serialize());

    HitchinPairP1 pair{split, p.d, {}, p.q};
    pair.theta.assign(static_cast<size_t>(n), std::vector<PolyFq>(static_cast<size_t>(n), PolyFq()));

    for (ThetaOdometer od_d(p.q, diag); !od_d.done(); od_d.advance()) {
        od_d.write_into(pair.theta);
        PolyFq trace;
        for (int64_t i = 0; i < n; ++i) trace += pair.theta[static_cast<size_t>(i)][static_cast<size_t>(i)];
        if (!trace.is_zero()) continue;
        for (ThetaOdometer od_o(p.q, off); !od_o.done(); od_o.advance()) {
            od_o.write_into(pair.theta);
            bool zero = true;
            for (const auto& row : pair.theta)
                for (const auto& e : row) zero = zero && e.is_zero();
            if (zero) continue;  // already tallied
            if (!is_nilpotent_matrix(pair)) continue;
            tally(res, pair, p.d);
        }
    }
    return res;
}

}  // namespace

CensusTable census_sweep(const CensusParams& p) {
    require_prime_modulus(p.q);
    if (p.n < 1 || p.window < 0) throw std::invalid_argument("invalid census parameters");
    if (p.n >= 2 && p.window < p.d)
        throw std::invalid_argument("window must be >= d so every low-spread cell is enumerated");
    CensusTable table;
    table.params = p;
    auto splittings = enumerate_splittings(p.n, p.e, p.window);
    std::vector<ItemResult> results(splittings.size());
    const int workers = std::max(1, p.workers);
    std::atomic<size_t> next{0};
    std::atomic<size_t> progress{0};  // the only synchronized object besides the work queue
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&]() {
        try {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= splittings.size()) return;
                results[i] = process_splitting(p, splittings[i]);
                progress.fetch_add(1);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };
    if (workers == 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(run);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    // deterministic merge in splitting order
    for (size_t i = 0; i < splittings.size(); ++i) {
        const BigInt aut = aut_bundle_size(splittings[i], p.q);
        const int64_t spread = splittings[i].spread();
        auto fold = [&](const std::map<LabelKey, BigInt>& counts, std::map<LabelKey, BigRational>& value,
                        std::map<LabelKey, std::vector<std::pair<int64_t, BigRational>>>& terms) {
            for (const auto& [label, cnt] : counts) {
                BigRational term(cnt, aut);
                value[label] += term;
                auto& list = terms[label];
                if (!list.empty() && list.back().first == spread)
                    list.back().second += term;
                else
                    list.emplace_back(spread, term);
            }
        };
        fold(results[i].sat, table.sat, table.sat_terms);
        fold(results[i].unsat, table.unsat, table.unsat_terms);
        table.total += BigRational(results[i].total, aut);
        table.degree_admissible_sat += results[i].deg_adm_sat;
        table.degree_admissible_unsat += results[i].deg_adm_unsat;
        table.pairs_seen += results[i].pairs;
    }
    return table;
}

namespace {

// Exact tail of the theta = 0 stratum (Bun_n mass) for n <= 2.
std::optional<BigRational> bun_tail_exact(uint32_t q, int64_t n, int64_t e, int64_t window) {
    if (n == 1) return BigRational(0);
    if (n != 2) return std::nullopt;
    // splittings ((e+m)/2, (e-m)/2), spread m >= (e odd ? 1 : 0), m = e mod 2;
    // term(m) = 1/((q-1)^2 q^{m+1}) for m >= 1
    int64_t b0 = window + 1;
    if ((b0 - e) % 2 != 0) ++b0;
    if (b0 < 1) b0 = (e % 2 == 0) ? 2 : 1;
    // sum_{j>=0} term(b0 + 2j) = q^2/(q^2-1) * term(b0)
    BigRational term(BigInt(1), (big_pow(BigInt(q), static_cast<unsigned>(b0 + 1)) *
                                 big_pow(BigInt(q) - 1, 2)));
    return term * BigRational(BigInt(q) * q, BigInt(q) * q - 1);
}

}  // namespace

StackyCount count_stratum(const CensusTable& table, const LabelKey& label, DegreeConvention convention) {
    const CensusParams& p = table.params;
    StackyCount out;
    out.q = p.q;
    out.window = p.window;
    const auto& value_map = convention == DegreeConvention::Saturated ? table.sat : table.unsat;
    const auto& term_map = convention == DegreeConvention::Saturated ? table.sat_terms : table.unsat_terms;
    if (auto it = value_map.find(label); it != value_map.end()) out.value = it->second;

    const int64_t s = static_cast<int64_t>(label.nbar.size());
    const bool theta_zero_label = s == 1;
    if (theta_zero_label) {
        if (auto t = bun_tail_exact(p.q, p.n, p.e, p.window)) {
            out.tail = *t;
            out.tail_exact = true;
            return out;
        }
    }
    if (p.n == 1) {
        out.tail_exact = true;  // unique splitting
        return out;
    }
    if (p.n == 2 && s == 2) {
        // the only contributions beyond spread d are the strictly triangular
        // splittings, pinned to one splitting by the label
        int64_t b_tri = convention == DegreeConvention::Saturated
                            ? label.ebar[0] - label.ebar[1]
                            : label.ebar[1] - label.ebar[0] - 2 * p.d;
        bool tri_valid = b_tri > p.d;
        out.tail = BigRational(0);
        out.tail_exact = true;
        if (tri_valid && b_tri > p.window) {
            // exact missing term
            int64_t a1 = convention == DegreeConvention::Saturated ? label.ebar[0] : label.ebar[1] - p.d;
            int64_t a2 = convention == DegreeConvention::Saturated ? label.ebar[1] : label.ebar[0] + p.d;
            SplittingType split{{a1, a2}};
            BigInt cnt = big_pow(BigInt(p.q), static_cast<unsigned>(b_tri + p.d + 1)) - 1;
            out.tail += BigRational(cnt, aut_bundle_size(split, p.q));
        }
        return out;
    }
    // generic labels: two consecutive zero spreads certify a finite support
    // empirically; otherwise the geometric majorant from the last terms
    auto it = term_map.find(label);
    if (it == term_map.end() || it->second.empty()) {
        out.tail = BigRational(0);
        out.tail_exact = false;
        return out;
    }
    const auto& terms = it->second;
    int64_t last_spread = terms.back().first;
    if (last_spread <= p.window - 2) {
        out.tail = BigRational(0);
        out.tail_exact = false;  // empirical finite support
        return out;
    }
    BigRational last(0);
    for (const auto& [sp, term] : terms)
        if (sp >= p.window - 1) last += term;
    out.tail = last * BigRational(BigInt(1), BigInt(p.q) - 1);
    out.tail_exact = false;
    return out;
}

StackyCount count_stratum(const CensusParams& params, const LabelKey& label, DegreeConvention convention) {
    return count_stratum(census_sweep(params), label, convention);
}

}  // namespace hitchin
