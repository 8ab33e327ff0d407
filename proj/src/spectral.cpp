#include "hitchin/spectral.hpp"

#include <algorithm>
#include <stdexcept>

#include "hitchin/squarefree.hpp"

namespace hitchin {

CharPoint::CharPoint(std::vector<PolyFq> coeffs, uint32_t modulus, int64_t twist_degree)
    : a(std::move(coeffs)), q(modulus), d(twist_degree) {
    require_prime_modulus(q);
    if (a.empty()) throw std::invalid_argument("characteristic point needs rank >= 1");
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i].degree() > static_cast<int>((i + 1) * static_cast<size_t>(d)))
            throw std::invalid_argument("degree bound deg a_i <= i*d violated at i = " + std::to_string(i + 1));
}

bool CharPoint::is_zero() const {
    for (const auto& p : a)
        if (!p.is_zero()) return false;
    return true;
}

BivarPoly build_char_poly(const CharPoint& a) {
    const int64_t n = a.rank();
    std::vector<PolyFq> ucoeffs(static_cast<size_t>(n) + 1, PolyFq());
    ucoeffs[static_cast<size_t>(n)] = PolyFq(Fq::one(a.q));
    for (int64_t i = 1; i <= n; ++i) ucoeffs[static_cast<size_t>(n - i)] = a.a[static_cast<size_t>(i - 1)];
    return BivarPoly(std::move(ucoeffs), a.q);
}

DiscriminantReport discriminant_status(const CharPoint& a) {
    DiscriminantReport rep;
    BivarPoly p = build_char_poly(a);
    rep.disc = resultant_discriminant(p);
    if (rep.disc.is_zero()) {
        rep.status = DiscStatus::Zero;
        return rep;
    }
    bool squarefree = true;
    if (rep.disc.degree() > 0) {
        auto decomp = squarefree_decomposition(rep.disc);
        for (const auto& [fac, m] : decomp.factors)
            if (m > 1) squarefree = false;
    }
    rep.status = squarefree ? DiscStatus::NonzeroSquarefree : DiscStatus::NonzeroNonSquarefree;
    rep.smooth_chart = squarefree;
    rep.infinity_verified = rep.disc.degree() == a.rank() * (a.rank() - 1) * a.d;
    rep.smooth_candidate = rep.smooth_chart && rep.infinity_verified;
    return rep;
}

namespace {

// Monic u-factors of a section-shaped polynomial have polynomial coefficients
// (F_q[t] is integrally closed); pull them out of the rational-function
// representation.
std::vector<PolyFq> polynomial_coeffs(const Poly<RatFunc>& f, uint32_t q) {
    std::vector<PolyFq> out;
    for (const auto& c : f.coeffs()) {
        if (!c.is_polynomial()) throw std::logic_error("factor of a monic integral polynomial must be integral");
        out.push_back(c.is_zero() ? PolyFq() : c.num());
    }
    (void)q;
    return out;
}

// Number of shaped candidates of u-degree k: q^{sum_{j=1..k}(j*d+1)}.
std::optional<uint64_t> candidate_count(uint32_t q, int64_t d, int64_t k, uint64_t budget) {
    long double total = 1.0L;
    for (int64_t j = 1; j <= k; ++j) {
        for (int64_t c = 0; c < j * d + 1; ++c) {
            total *= q;
            if (total > static_cast<long double>(budget)) return std::nullopt;
        }
    }
    return static_cast<uint64_t>(total);
}

// Enumerate monic shaped candidates Q = u^k + b_1 u^{k-1} + ... + b_k with
// deg b_j <= j*d, in a fixed odometer order.
class ShapedCandidates {
  public:
    ShapedCandidates(uint32_t q, int64_t d, int64_t k) : q_(q) {
        for (int64_t j = 1; j <= k; ++j) slots_.push_back(j * d + 1);
        total_slots_ = 0;
        for (auto s : slots_) total_slots_ += s;
        digits_.assign(static_cast<size_t>(total_slots_), 0);
        done_ = false;
    }

    bool done() const { return done_; }

    std::vector<PolyFq> current() const {  // b_1..b_k
        std::vector<PolyFq> out;
        size_t pos = 0;
        for (auto s : slots_) {
            std::vector<Fq> c;
            for (int64_t i = 0; i < s; ++i) c.push_back(Fq(digits_[pos++], q_));
            out.push_back(PolyFq(std::move(c)));
        }
        return out;
    }

    void advance() {
        for (size_t i = 0; i < digits_.size(); ++i) {
            if (++digits_[i] < q_) return;
            digits_[i] = 0;
        }
        done_ = true;
    }

  private:
    uint32_t q_;
    std::vector<int64_t> slots_;
    int64_t total_slots_ = 0;
    std::vector<uint32_t> digits_;
    bool done_ = false;
};

Poly<RatFunc> shaped_to_ratfunc(const std::vector<PolyFq>& b, uint32_t q) {
    const int64_t k = static_cast<int64_t>(b.size());
    std::vector<RatFunc> c(static_cast<size_t>(k) + 1, RatFunc::zero(q));
    c[static_cast<size_t>(k)] = RatFunc::one(q);
    for (int64_t j = 1; j <= k; ++j)
        if (!b[static_cast<size_t>(j - 1)].is_zero()) c[static_cast<size_t>(k - j)] = RatFunc(b[static_cast<size_t>(j - 1)]);
    return Poly<RatFunc>(std::move(c));
}

// Split a squarefree slot factor into irreducibles by trial division with
// shaped candidates of increasing degree. Returns nullopt when over budget.
std::optional<std::vector<int64_t>> refine_slot(const Poly<RatFunc>& slot, uint32_t q, int64_t d,
                                                uint64_t budget) {
    std::vector<int64_t> degrees;
    Poly<RatFunc> rest = slot;
    for (int64_t k = 1; rest.degree() > 1 && k <= rest.degree() / 2; ++k) {
        if (!candidate_count(q, d, k, budget)) return std::nullopt;
        for (ShapedCandidates cand(q, d, k); !cand.done(); cand.advance()) {
            if (rest.degree() < k || rest.degree() / 2 < k) break;
            Poly<RatFunc> c = shaped_to_ratfunc(cand.current(), q);
            auto [quot, rem] = Poly<RatFunc>::divmod(rest, c);
            if (rem.is_zero()) {
                degrees.push_back(k);
                rest = quot;
            }
        }
    }
    if (rest.degree() > 0) degrees.push_back(rest.degree());
    return degrees;
}

}  // namespace

std::string SpectralClassification::profile_key() const {
    std::string key;
    for (const auto& [deg, mult] : profile) key += "(" + std::to_string(deg) + "," + std::to_string(mult) + ")";
    return key;
}

SpectralClassification multiplicity_profile(const CharPoint& a, uint64_t refine_budget) {
    SpectralClassification cls;
    cls.nilpotent = a.is_zero();
    cls.disc = discriminant_status(a);
    BivarPoly p = build_char_poly(a);
    auto decomp = squarefree_decomposition(p.as_ratfunc_poly());

    int64_t squarefree_degree = 0;
    cls.refined = true;
    for (const auto& [fac, mult] : decomp.factors) {
        squarefree_degree += fac.degree();
        std::optional<std::vector<int64_t>> split;
        if (refine_budget > 0) split = refine_slot(fac, a.q, a.d, refine_budget);
        if (split) {
            for (int64_t deg : *split) cls.profile.emplace_back(deg, mult);
        } else {
            cls.refined = false;
            cls.profile.emplace_back(fac.degree(), mult);
        }
        (void)polynomial_coeffs(fac, a.q);  // integrality sanity check
    }
    if (refine_budget == 0) cls.refined = false;
    std::sort(cls.profile.begin(), cls.profile.end(), [](const auto& x, const auto& y) {
        return x.first != y.first ? x.first > y.first : x.second > y.second;
    });

    int64_t weighted = 0;
    for (const auto& [deg, mult] : cls.profile) weighted += deg * mult;
    if (weighted != a.rank()) throw std::logic_error("profile degree-multiplicity sum must equal n");
    cls.reduced = squarefree_degree == a.rank();
    cls.irreducible_fq = cls.refined && cls.profile.size() == 1 && cls.profile[0].first == a.rank() &&
                         cls.profile[0].second == 1;
    return cls;
}

CharPoint sample_char_point(uint32_t q, int64_t d, int64_t n, uint64_t seed, uint64_t index, bool force_zero) {
    std::vector<PolyFq> a;
    CounterRng rng(seed, 0x73706563ULL);  // stream tag for spectral sampling
    for (int64_t i = 1; i <= n; ++i) {
        std::vector<Fq> coeffs;
        for (int64_t c = 0; c <= i * d; ++c) {
            uint64_t counter = (index << 12) ^ (static_cast<uint64_t>(i) << 6) ^ static_cast<uint64_t>(c);
            uint32_t v = force_zero ? 0 : rng.below(counter, q);
            coeffs.push_back(Fq(v, q));
        }
        a.push_back(PolyFq(std::move(coeffs)));
    }
    return CharPoint(std::move(a), q, d);
}

SampleTable sample_strata(uint32_t q, int64_t d, int64_t n, uint64_t count, uint64_t seed, bool force_zero,
                          uint64_t refine_budget) {
    SampleTable table;
    table.count = count;
    for (uint64_t i = 0; i < count; ++i) {
        CharPoint a = sample_char_point(q, d, n, seed, i, force_zero);
        SpectralClassification cls = multiplicity_profile(a, refine_budget);
        std::string key = cls.profile_key();
        key += cls.disc.status == DiscStatus::Zero ? "|disc=zero"
               : cls.disc.status == DiscStatus::NonzeroSquarefree ? "|disc=squarefree"
                                                                  : "|disc=non-squarefree";
        if (cls.nilpotent) key += "|nilpotent";
        ++table.frequencies[key];
        if (cls.disc.status != DiscStatus::NonzeroSquarefree) ++table.non_squarefree_disc;
        if (cls.nilpotent) ++table.nilpotent;
    }
    return table;
}

}  // namespace hitchin
