#include "hitchin/nilstrata.hpp"

#include <functional>
#include <stdexcept>

#include "hitchin/geometry.hpp"

namespace hitchin {

NilpotentStratumLabel::NilpotentStratumLabel(std::vector<int64_t> n, std::vector<int64_t> e)
    : nbar(std::move(n)), ebar(std::move(e)) {
    if (nbar.empty() || nbar.size() != ebar.size())
        throw std::invalid_argument("nbar and ebar must be nonempty and of equal length");
    for (int64_t ni : nbar)
        if (ni < 1) throw std::invalid_argument("ranks n_i must be positive");
}

int64_t NilpotentStratumLabel::rank() const {
    int64_t n = 0;
    for (int64_t ni : nbar) n += ni;
    return n;
}

int64_t NilpotentStratumLabel::degree() const {
    int64_t e = 0;
    for (int64_t ei : ebar) e += ei;
    return e;
}

bool NilpotentStratumLabel::rank_admissible() const {
    for (size_t i = 0; i + 1 < nbar.size(); ++i)
        if (nbar[i] > nbar[i + 1]) return false;
    return true;
}

bool NilpotentStratumLabel::degree_admissible(int64_t d) const {
    for (size_t i = 0; i + 1 < nbar.size(); ++i)
        if (nbar[i] == nbar[i + 1] && ebar[i + 1] - d > ebar[i]) return false;
    return true;
}

std::string NilpotentStratumLabel::serialize() const {
    std::string out = "n=(";
    for (size_t i = 0; i < nbar.size(); ++i) out += (i ? "," : "") + std::to_string(nbar[i]);
    out += ") e=(";
    for (size_t i = 0; i < ebar.size(); ++i) out += (i ? "," : "") + std::to_string(ebar[i]);
    return out + ")";
}

ChainDegrees chain_degrees(const NilpotentStratumLabel& label, int64_t d) {
    const int64_t s = label.steps();
    ChainDegrees out;
    for (int64_t i = 1; i <= s; ++i)
        out.f.push_back(label.ebar[i - 1] + label.nbar[i - 1] * (s - i) * d);
    return out;
}

int64_t delta_exponent(const NilpotentStratumLabel& label, int64_t g, int64_t d) {
    const auto& n = label.nbar;
    const auto& e = label.ebar;
    const int64_t s = label.steps();

    // First displayed form: -sum_{i<j}(n_j e_i - n_i e_j)
    //                       +sum_{i<j-1}(n_j e_i - n_i e_j + n_i n_j d)
    //                       +sum_{i=1}^{s-1} n_i n_{i+1} (g-1)
    int64_t form1 = 0;
    for (int64_t i = 1; i <= s; ++i)
        for (int64_t j = i + 1; j <= s; ++j) form1 -= n[j - 1] * e[i - 1] - n[i - 1] * e[j - 1];
    for (int64_t i = 1; i <= s; ++i)
        for (int64_t j = i + 2; j <= s; ++j)
            form1 += n[j - 1] * e[i - 1] - n[i - 1] * e[j - 1] + n[i - 1] * n[j - 1] * d;
    for (int64_t i = 1; i <= s - 1; ++i) form1 += n[i - 1] * n[i] * (g - 1);

    // Second displayed form: -sum_{i=0}^{s-1}(n_{i+1} e_i - n_i e_{i+1}) with
    // n_0 = e_0 = 0, plus the same d and (g-1) tails.
    int64_t form2 = 0;
    for (int64_t i = 0; i <= s - 1; ++i) {
        int64_t ni = i == 0 ? 0 : n[i - 1];
        int64_t ei = i == 0 ? 0 : e[i - 1];
        form2 -= n[i] * ei - ni * e[i];
    }
    for (int64_t i = 1; i <= s; ++i)
        for (int64_t j = i + 2; j <= s; ++j) form2 += n[i - 1] * n[j - 1] * d;
    for (int64_t i = 1; i <= s - 1; ++i) form2 += n[i - 1] * n[i] * (g - 1);

    if (form1 != form2) throw std::logic_error("delta form mismatch");
    return form1;
}

int64_t chain_stack_dim(const NilpotentStratumLabel& label, int64_t g, int64_t d) {
    const auto& n = label.nbar;
    const auto& e = label.ebar;
    const int64_t s = label.steps();
    const auto f = chain_degrees(label, d).f;

    // f-based form: sum_{i=0}^{s-1} n_{i+1}(n_{i+1}-n_i)(g-1) + sum (n_{i+1} f_i - n_i f_{i+1}),
    // conventions n_0 = f_0 = 0.
    int64_t form_f = 0;
    for (int64_t i = 0; i <= s - 1; ++i) {
        int64_t ni = i == 0 ? 0 : n[i - 1];
        int64_t fi = i == 0 ? 0 : f[i - 1];
        form_f += n[i] * (n[i] - ni) * (g - 1);
        form_f += n[i] * fi - ni * f[i];
    }

    // e-based form: same (g-1) part, + sum (n_{i+1} e_i - n_i e_{i+1}) + sum_{i=1}^{s-1} n_i n_{i+1} d,
    // convention e_0 = 0.
    int64_t form_e = 0;
    for (int64_t i = 0; i <= s - 1; ++i) {
        int64_t ni = i == 0 ? 0 : n[i - 1];
        int64_t ei = i == 0 ? 0 : e[i - 1];
        form_e += n[i] * (n[i] - ni) * (g - 1);
        form_e += n[i] * ei - ni * e[i];
    }
    for (int64_t i = 1; i <= s - 1; ++i) form_e += n[i - 1] * n[i] * d;

    if (form_f != form_e) throw std::logic_error("chain form mismatch");
    return form_f;
}

int64_t stratum_dim(const NilpotentStratumLabel& label, int64_t g, int64_t d) {
    const auto& n = label.nbar;
    const int64_t s = label.steps();
    int64_t sq = 0, cross = 0;
    for (int64_t i = 0; i < s; ++i) sq += n[i] * n[i];
    for (int64_t i = 0; i < s; ++i)
        for (int64_t j = i + 1; j < s; ++j) cross += n[i] * n[j];
    int64_t closed = sq * (g - 1) + cross * d;
    if (closed != chain_stack_dim(label, g, d) + delta_exponent(label, g, d))
        throw std::logic_error("stratum dimension assembly mismatch");
    return closed;
}

int64_t deficit(const NilpotentStratumLabel& label, int64_t g, int64_t d) {
    const int64_t n = label.rank();
    const int64_t df = n * (g - 1) + n * (n - 1) / 2 * d + 1;
    const int64_t value = df - 1 - stratum_dim(label, g, d);
    const int64_t dprime = d - (2 * g - 2);
    int64_t pairs = 0;
    for (int64_t ni : label.nbar) pairs += ni * (ni - 1);
    if ((dprime * pairs) % 2 != 0) throw std::logic_error("deficit parity violated");
    if (value != dprime * pairs / 2) throw std::logic_error("deficit closed form mismatch");
    if (dprime > 0) {
        bool all_ones = pairs == 0;
        if (value < 0) throw std::logic_error("deficit must be nonnegative for d' > 0");
        if ((value == 0) != all_ones) throw std::logic_error("deficit zero locus must be the all-ones label");
    }
    return value;
}

std::vector<std::vector<int64_t>> all_compositions(int64_t n) {
    std::vector<std::vector<int64_t>> out;
    std::vector<int64_t> acc;
    // first part outermost; recursion by remaining sum
    struct Rec {
        std::vector<std::vector<int64_t>>& out;
        std::vector<int64_t>& acc;
        void run(int64_t rem) {
            if (rem == 0) {
                out.push_back(acc);
                return;
            }
            for (int64_t k = 1; k <= rem; ++k) {
                acc.push_back(k);
                run(rem - k);
                acc.pop_back();
            }
        }
    } rec{out, acc};
    rec.run(n);
    return out;
}

std::vector<std::vector<int64_t>> rank_admissible_compositions(int64_t n) {
    std::vector<std::vector<int64_t>> out;
    for (auto& c : all_compositions(n)) {
        bool ok = true;
        for (size_t i = 0; i + 1 < c.size(); ++i)
            if (c[i] > c[i + 1]) ok = false;
        if (ok) out.push_back(std::move(c));
    }
    return out;
}

namespace {

void enumerate_ebar(int64_t s, int64_t e, int64_t bound, std::vector<int64_t>& acc,
                    const std::function<void(const std::vector<int64_t>&)>& emit) {
    if (s == 1) {
        if (e >= -bound && e <= bound) {
            acc.push_back(e);
            emit(acc);
            acc.pop_back();
        }
        return;
    }
    for (int64_t v = -bound; v <= bound; ++v) {
        acc.push_back(v);
        enumerate_ebar(s - 1, e - v, bound, acc, emit);
        acc.pop_back();
    }
}

}  // namespace

PropositionReport proposition_report(int64_t g, int64_t d, int64_t n, int64_t e, int64_t bound, bool canonical) {
    if (n < 1) throw std::invalid_argument("rank must be positive");
    GeometrySetup setup(g, d, n, e, canonical ? DegreeMode::Canonical : DegreeMode::Large);
    PropositionReport rep;
    rep.fiber_dim = dim_fiber(setup);
    bool first = true;
    for (const auto& nbar : rank_admissible_compositions(n)) {
        std::vector<int64_t> acc;
        enumerate_ebar(static_cast<int64_t>(nbar.size()), e, bound, acc, [&](const std::vector<int64_t>& ebar) {
            NilpotentStratumLabel label(nbar, ebar);
            PropositionRow row{label,
                               chain_degrees(label, d),
                               delta_exponent(label, g, d),
                               chain_stack_dim(label, g, d),
                               stratum_dim(label, g, d),
                               deficit(label, g, d),
                               label.rank_admissible(),
                               label.degree_admissible(d)};
            if (first || row.dim > rep.max_dim) rep.max_dim = row.dim;
            first = false;
            rep.rows.push_back(std::move(row));
        });
    }
    if (rep.rows.empty()) throw std::invalid_argument("degree window admits no ebar; raise the bound");
    rep.bound_holds = rep.max_dim <= rep.fiber_dim - 1;
    rep.attained_only_by_ones = true;
    for (const auto& row : rep.rows) {
        bool ones = true;
        for (int64_t ni : row.label.nbar) ones = ones && ni == 1;
        if (row.dim == rep.fiber_dim - 1 && !ones) rep.attained_only_by_ones = false;
        if (ones && row.dim != rep.fiber_dim - 1 && !canonical) rep.attained_only_by_ones = false;
    }
    if (!rep.bound_holds) throw std::logic_error("nilpotent cone dimension bound d_f - 1 violated");
    if (setup.mode == DegreeMode::Large && d > 2 * g - 2 && !rep.attained_only_by_ones)
        throw std::logic_error("d_f - 1 must be attained exactly by the all-ones strata");
    return rep;
}

}  // namespace hitchin
