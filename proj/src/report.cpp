#include "hitchin/report.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace hitchin {

std::string poly_coeff_string(const PolyFq& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (size_t i = 0; i < p.coeffs().size(); ++i) {
        if (i) out += ",";
        out += std::to_string(p.coeffs()[i].value());
    }
    return out;
}

Json exclusion_row_json(const ExclusionRow& row) {
    Json lambda = Json::array();
    for (auto [ni, mi] : row.label.pairs) lambda.push_back(Json::array({ni, mi}));
    return Json{{"lambda", lambda},
                {"lhs", row.lhs},
                {"rhs", row.rhs},
                {"verdict", row.verdict == Verdict::Excluded ? "Excluded" : "NotExcluded"}};
}

Json exclusion_sweep_json(const GeometrySetup& setup, const ExclusionSweep& sweep) {
    Json rows = Json::array();
    for (const auto& row : sweep.rows) rows.push_back(exclusion_row_json(row));
    return Json{{"g", setup.g},
                {"d", setup.d},
                {"n", setup.n},
                {"mode", setup.mode == DegreeMode::Canonical ? "canonical" : "large"},
                {"not_excluded", sweep.not_excluded},
                {"rows", rows}};
}

Json dims_json(const GeometrySetup& setup) {
    return Json{{"d_base", dim_base(setup)},
                {"d_fiber", dim_fiber(setup)},
                {"d_total", dim_total(setup)},
                {"gap", relative_gap(setup)}};
}

Json lambda_list_json(const std::vector<StratumLabel>& labels, const GeometrySetup* setup) {
    Json rows = Json::array();
    for (const auto& label : labels) {
        Json lambda = Json::array();
        for (auto [ni, mi] : label.pairs) lambda.push_back(Json::array({ni, mi}));
        Json row{{"lambda", lambda}, {"s", label.component_count()}};
        if (setup) row["stratum_base_dim"] = stratum_base_dim(label, *setup);
        rows.push_back(row);
    }
    return Json{{"count", labels.size()}, {"rows", rows}};
}

Json severi_json(const SevereLedgerEntry& entry, const SevereLedgerReport& report) {
    Json comps = Json::array();
    for (size_t i = 0; i < entry.components.size(); ++i) {
        comps.push_back(Json{{"n", entry.components[i].n},
                             {"d_a", entry.components[i].dim_a},
                             {"delta", entry.components[i].delta},
                             {"d_ab", report.component_d_ab[i]},
                             {"severi_lower", report.component_lower[i]}});
    }
    return Json{{"components", comps},
                {"d_a", report.d_a},
                {"d_ab", report.d_ab},
                {"upper_bound", report.upper_bound},
                {"severi_lower", report.severi_lower},
                {"verdict", report.verdict == Verdict::Excluded ? "Excluded" : "NotExcluded"}};
}

Json proposition_row_json(const PropositionRow& row) {
    return Json{{"nbar", row.label.nbar},
                {"ebar", row.label.ebar},
                {"f", row.f.f},
                {"delta", row.delta},
                {"chain_dim", row.chain_dim},
                {"dim", row.dim},
                {"deficit", row.deficit},
                {"rank_adm", row.rank_admissible},
                {"deg_adm", row.degree_admissible}};
}

Json proposition_json(const PropositionReport& report) {
    Json rows = Json::array();
    for (const auto& row : report.rows) rows.push_back(proposition_row_json(row));
    return Json{{"fiber_dim", report.fiber_dim},
                {"max_dim", report.max_dim},
                {"bound_holds", report.bound_holds},
                {"attained_only_by_ones", report.attained_only_by_ones},
                {"rows", rows}};
}

Json classification_json(const SpectralClassification& cls) {
    Json profile = Json::array();
    for (auto [deg, mult] : cls.profile) profile.push_back(Json::array({deg, mult}));
    std::string status = cls.disc.status == DiscStatus::Zero                ? "zero"
                         : cls.disc.status == DiscStatus::NonzeroSquarefree ? "nonzero-squarefree"
                                                                            : "nonzero-non-squarefree";
    return Json{{"profile", profile},
                {"disc", poly_coeff_string(cls.disc.disc)},
                {"status", status},
                {"flags",
                 Json{{"refined", cls.refined},
                      {"reduced", cls.reduced},
                      {"nilpotent", cls.nilpotent},
                      {"irreducible_fq", cls.irreducible_fq},
                      {"smooth_chart", cls.disc.smooth_chart},
                      {"infinity_verified", cls.disc.infinity_verified},
                      {"smooth_candidate", cls.disc.smooth_candidate}}}};
}

Json sample_table_json(const SampleTable& table) {
    Json freqs = Json::object();
    for (const auto& [key, hits] : table.frequencies) freqs[key] = hits;
    return Json{{"count", table.count},
                {"non_squarefree_disc", table.non_squarefree_disc},
                {"nilpotent", table.nilpotent},
                {"frequencies", freqs}};
}

Json label_json(const LabelKey& label) {
    return Json{{"nbar", label.nbar}, {"ebar", label.ebar}};
}

namespace {
std::string signed_exponent(int64_t k) { return (k >= 0 ? "+" : "") + std::to_string(k); }
}  // namespace

Json stacky_count_json(const CensusParams& params, const LabelKey& label, DegreeConvention convention,
                       const StackyCount& count) {
    return Json{{"q", params.q},
                {"d", params.d},
                {"n", params.n},
                {"e", params.e},
                {"label", label_json(label)},
                {"convention", convention == DegreeConvention::Saturated ? "sat" : "unsat"},
                {"value", to_fraction_string(count.value)},
                {"window", count.window},
                {"tail", to_fraction_string(count.tail)},
                {"tail_exact", count.tail_exact}};
}

Json identity_json(const CensusParams& params, const IdentityReport& report) {
    Json base{{"q", params.q}, {"d", params.d}, {"n", params.n}, {"e", params.e},
              {"label", label_json(report.label)}};
    base["fbar"] = report.fbar;
    base["sat"] = Json{{"value", to_fraction_string(report.census_sat.value)},
                       {"tail", to_fraction_string(report.census_sat.tail)},
                       {"matches", report.sat_matches}};
    base["unsat"] = Json{{"value", to_fraction_string(report.census_unsat.value)},
                         {"tail", to_fraction_string(report.census_unsat.tail)},
                         {"matches", report.unsat_matches}};
    base["window"] = params.window;
    base["identity"] = Json{{"chain", to_fraction_string(report.chain.value)},
                            {"q_delta", signed_exponent(report.delta)},
                            {"rhs", to_fraction_string(report.rhs)},
                            {"verdict", report.pass ? "PASS" : "FAIL"}};
    return base;
}

Json calibration_json(uint32_t q, int64_t n, int64_t e, int64_t window, const CalibrationReport& report) {
    return Json{{"q", q},
                {"n", n},
                {"e", e},
                {"window", window},
                {"census", to_fraction_string(report.census.value)},
                {"census_tail", to_fraction_string(report.census.tail)},
                {"oracle_partial", to_fraction_string(report.oracle_partial)},
                {"oracle_total", to_fraction_string(report.oracle_total)},
                {"oracle_tail", to_fraction_string(report.oracle_tail)},
                {"verdict", report.match ? "PASS" : "FAIL"}};
}

namespace {

void flatten(const Json& value, const std::string& prefix, std::map<std::string, std::string>& out) {
    if (value.is_object()) {
        for (auto it = value.begin(); it != value.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (value.is_string()) {
        out[prefix] = value.get<std::string>();
    } else {
        out[prefix] = value.dump();
    }
}

}  // namespace

std::string render_json_lines(const std::vector<Json>& rows) {
    std::string out;
    for (const auto& row : rows) out += row.dump() + "\n";
    return out;
}

std::string render_csv(const std::vector<Json>& rows) {
    std::vector<std::map<std::string, std::string>> flat(rows.size());
    std::map<std::string, bool> keys;
    for (size_t i = 0; i < rows.size(); ++i) {
        flatten(rows[i], "", flat[i]);
        for (const auto& [k, v] : flat[i]) keys[k] = true;
    }
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, unused] : keys) {
        os << (first ? "" : ",") << k;
        first = false;
    }
    os << "\n";
    for (const auto& row : flat) {
        first = true;
        for (const auto& [k, unused] : keys) {
            os << (first ? "" : ",");
            auto it = row.find(k);
            if (it != row.end()) {
                std::string v = it->second;
                bool quote = v.find_first_of(",\"") != std::string::npos;
                if (quote) {
                    std::string esc;
                    for (char c : v) esc += c == '"' ? std::string("\"\"") : std::string(1, c);
                    v = "\"" + esc + "\"";
                }
                os << v;
            }
            first = false;
        }
        os << "\n";
    }
    return os.str();
}

std::string render_table(const std::vector<Json>& rows) {
    std::vector<std::map<std::string, std::string>> flat(rows.size());
    std::map<std::string, size_t> width;
    for (size_t i = 0; i < rows.size(); ++i) {
        flatten(rows[i], "", flat[i]);
        for (const auto& [k, v] : flat[i]) width[k] = std::max({width[k], k.size(), v.size()});
    }
    std::ostringstream os;
    for (const auto& [k, w] : width) os << k << std::string(w - k.size() + 2, ' ');
    os << "\n";
    for (const auto& row : flat) {
        for (const auto& [k, w] : width) {
            auto it = row.find(k);
            std::string v = it == row.end() ? "" : it->second;
            os << v << std::string(w - v.size() + 2, ' ');
        }
        os << "\n";
    }
    return os.str();
}

std::string render(const std::vector<Json>& rows, const std::string& format) {
    if (format == "json") return render_json_lines(rows);
    if (format == "csv") return render_csv(rows);
    if (format == "table") return render_table(rows);
    throw std::invalid_argument("unknown format: " + format);
}

}  // namespace hitchin
