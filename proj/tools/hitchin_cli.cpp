// Command-line front end. Subcommands map one-to-one onto the library's
// sweep/report operations; every report is machine readable (json, csv or
// table), numbers are exact, and identical inputs produce byte-identical
// output regardless of the worker count.
//
// Exit codes: 0 success, 1 validation error, 2 internal assertion or oracle
// failure. Errors go to stderr as single-line JSON.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "hitchin/census.hpp"
#include "hitchin/report.hpp"
#include "hitchin/spectral.hpp"

namespace {

using namespace hitchin;

std::vector<int64_t> parse_int_list(const std::string& csv) {
    std::vector<int64_t> out;
    std::string cur;
    for (char c : csv) {
        if (c == ',') {
            out.push_back(std::stoll(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(std::stoll(cur));
    return out;
}

PolyFq parse_poly(const std::string& csv, uint32_t q) {
    std::vector<Fq> c;
    for (int64_t v : parse_int_list(csv)) c.emplace_back(v, q);
    return PolyFq(std::move(c));
}

int default_workers() {
    if (const char* env = std::getenv("HITCHIN_WORKERS")) {
        int v = std::atoi(env);
        if (v < 1) throw std::invalid_argument("HITCHIN_WORKERS must be a positive integer");
        return v;
    }
    return 1;
}

struct Options {
    int64_t g = 0, d = 1, n = 1, e = 0, bound = 6, window = 10, count = 0;
    uint32_t q = 2;
    uint64_t seed = 0;
    bool canonical = false;
    bool chain = false;
    bool calibration = false;
    bool force_zero = false;
    std::string format = "json";
    std::string label, deg, fdeg, coeffs, components, convention = "sat";
    int workers = 1;
};

GeometrySetup make_setup(const Options& o) {
    return GeometrySetup(o.g, o.d, o.n, o.e, o.canonical ? DegreeMode::Canonical : DegreeMode::Large);
}

void emit(const std::vector<Json>& rows, const Options& o) { std::cout << render(rows, o.format); }

int run_dims(const Options& o, bool e_given) {
    GeometrySetup s = make_setup(o);
    if (e_given && s.coprime_warning())
        std::cerr << R"({"warning":"gcd(n,e) != 1; stable-moduli statements assume coprimality"})" << "\n";
    emit({dims_json(s)}, o);
    return 0;
}

int run_strata(const Options& o, bool with_setup) {
    std::optional<GeometrySetup> setup;
    if (with_setup) setup = make_setup(o);
    emit({lambda_list_json(enumerate_lambda(o.n), setup ? &*setup : nullptr)}, o);
    return 0;
}

int run_support(const Options& o) {
    GeometrySetup s = make_setup(o);
    emit({exclusion_sweep_json(s, exclusion_sweep(s))}, o);
    return 0;
}

int run_ledger(const Options& o) {
    GeometrySetup s = make_setup(o);
    Json spec = Json::parse(o.components);
    SevereLedgerEntry entry;
    for (const auto& row : spec) {
        SevereLedgerComponent c;
        c.n = row.at(0).get<int64_t>();
        c.dim_a = row.at(1).get<int64_t>();
        c.delta = row.at(2).get<int64_t>();
        entry.components.push_back(c);
    }
    emit({severi_json(entry, severi_ledger(entry, s))}, o);
    return 0;
}

int run_nilpotent(const Options& o) {
    emit({proposition_json(proposition_report(o.g, o.d, o.n, o.e, o.bound, o.canonical))}, o);
    return 0;
}

int run_spectral(const Options& o) {
    if (o.count > 0 || o.force_zero) {
        auto table = sample_strata(o.q, o.d, o.n, static_cast<uint64_t>(o.count), o.seed, o.force_zero);
        emit({sample_table_json(table)}, o);
        return 0;
    }
    std::vector<PolyFq> a;
    std::string cur;
    for (char c : o.coeffs + ";") {
        if (c == ';') {
            if (!cur.empty()) a.push_back(parse_poly(cur, o.q));
            cur.clear();
        } else {
            cur += c;
        }
    }
    CharPoint point(a, o.q, o.d);
    emit({classification_json(multiplicity_profile(point))}, o);
    return 0;
}

CensusParams census_params(const Options& o) {
    CensusParams p;
    p.q = o.q;
    p.d = o.d;
    p.n = o.n;
    p.e = o.e;
    p.window = o.window;
    p.workers = o.workers;
    return p;
}

int run_count(const Options& o) {
    if (o.chain) {
        auto nbar = parse_int_list(o.label);
        auto fbar = parse_int_list(o.fdeg);
        auto count = count_chain_stack(o.q, nbar, fbar, o.window, o.workers);
        CensusParams p = census_params(o);
        emit({stacky_count_json(p, LabelKey{nbar, fbar}, DegreeConvention::Saturated, count)}, o);
        return 0;
    }
    CensusParams p = census_params(o);
    LabelKey label{parse_int_list(o.label), parse_int_list(o.deg)};
    DegreeConvention conv = o.convention == "unsat" ? DegreeConvention::Unsaturated : DegreeConvention::Saturated;
    if (o.convention != "sat" && o.convention != "unsat")
        throw std::invalid_argument("convention must be sat or unsat");
    emit({stacky_count_json(p, label, conv, count_stratum(p, label, conv))}, o);
    return 0;
}

int run_verify(const Options& o) {
    if (o.calibration) {
        auto rep = bun_calibration(o.q, o.n, o.e, o.window);
        emit({calibration_json(o.q, o.n, o.e, o.window, rep)}, o);
        if (!rep.match) throw std::logic_error("calibration mismatch beyond certified tail bounds");
        return 0;
    }
    CensusParams p = census_params(o);
    LabelKey label{parse_int_list(o.label), parse_int_list(o.deg)};
    emit({identity_json(p, verify_count_identity(p, label))}, o);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact dimension ledgers and stacky point counts for twisted Hitchin pairs"};
    app.require_subcommand(1);
    Options o;
    try {
        o.workers = default_workers();
    } catch (const std::exception& ex) {
        std::cerr << Json{{"error", ex.what()}}.dump() << "\n";
        return 1;
    }

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv", "table"}));
        cmd->add_option("--workers", o.workers)->check(CLI::PositiveNumber);
    };

    auto* dims = app.add_subcommand("dims", "dimension formulas at one setup");
    dims->add_option("--g", o.g)->required();
    dims->add_option("--d", o.d)->required();
    dims->add_option("--n", o.n)->required();
    auto* dims_e = dims->add_option("--e", o.e);
    dims->add_flag("--canonical", o.canonical);
    add_common(dims);
    dims->callback([&]() { run_dims(o, dims_e->count() > 0); });

    auto* strata = app.add_subcommand("strata", "enumerate the base stratification labels");
    strata->add_option("--n", o.n)->required();
    auto* strata_g = strata->add_option("--g", o.g);
    auto* strata_d = strata->add_option("--d", o.d);
    strata->add_flag("--canonical", o.canonical);
    add_common(strata);
    strata->callback([&]() { run_strata(o, strata_g->count() > 0 && strata_d->count() > 0); });

    auto* support = app.add_subcommand("support", "support-exclusion sweep over all labels");
    support->add_option("--g", o.g)->required();
    support->add_option("--d", o.d)->required();
    support->add_option("--n", o.n)->required();
    support->add_flag("--canonical", o.canonical);
    add_common(support);
    support->callback([&]() { run_support(o); });

    auto* ledger = app.add_subcommand("ledger", "Severi / technique inequality ledger");
    ledger->add_option("--g", o.g)->required();
    ledger->add_option("--d", o.d)->required();
    ledger->add_option("--n", o.n)->required();
    ledger->add_option("--components", o.components, "JSON list of [n_i, d_a_i, delta_i]")->required();
    ledger->add_flag("--canonical", o.canonical);
    add_common(ledger);
    ledger->callback([&]() { run_ledger(o); });

    auto* nil = app.add_subcommand("nilpotent", "nilpotent-cone stratum dimension report");
    nil->add_option("--g", o.g)->required();
    nil->add_option("--d", o.d)->required();
    nil->add_option("--n", o.n)->required();
    nil->add_option("--e", o.e);
    nil->add_option("--bound", o.bound);
    nil->add_flag("--canonical", o.canonical);
    add_common(nil);
    nil->callback([&]() { run_nilpotent(o); });

    auto* spectral = app.add_subcommand("spectral", "classify a characteristic point or sample many");
    spectral->add_option("--q", o.q)->required();
    spectral->add_option("--d", o.d)->required();
    spectral->add_option("--n", o.n)->required();
    spectral->add_option("--coeffs", o.coeffs, "a_1;...;a_n, each a comma list of F_q coefficients, lowest first");
    spectral->add_option("--count", o.count);
    spectral->add_option("--seed", o.seed);
    spectral->add_flag("--zero", o.force_zero, "diagnostic mode: force a = 0");
    add_common(spectral);
    spectral->callback([&]() { run_spectral(o); });

    auto* count = app.add_subcommand("count", "stacky count of one nilpotent stratum or chain stack");
    count->add_option("--q", o.q)->required();
    count->add_option("--d", o.d);
    count->add_option("--n", o.n)->required();
    count->add_option("--e", o.e);
    count->add_option("--label", o.label, "nbar as comma list")->required();
    count->add_option("--deg", o.deg, "ebar as comma list");
    count->add_option("--f", o.fdeg, "chain degrees fbar as comma list (with --chain)");
    count->add_option("--convention", o.convention)->check(CLI::IsMember({"sat", "unsat"}));
    count->add_option("--window", o.window);
    count->add_flag("--chain", o.chain, "count the chain stack instead of the nilpotent stratum");
    add_common(count);
    count->callback([&]() { run_count(o); });

    auto* verify = app.add_subcommand("verify", "counting identity or Bun calibration");
    verify->add_option("--q", o.q)->required();
    verify->add_option("--d", o.d);
    verify->add_option("--n", o.n)->required();
    verify->add_option("--e", o.e);
    verify->add_option("--label", o.label);
    verify->add_option("--deg", o.deg);
    verify->add_option("--convention", o.convention)->check(CLI::IsMember({"sat", "unsat"}));
    verify->add_option("--window", o.window);
    verify->add_flag("--calibration", o.calibration, "compare the theta = 0 stratum with the series oracle");
    add_common(verify);
    verify->callback([&]() { run_verify(o); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << Json{{"error", e.what()}}.dump() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << Json{{"error", e.what()}}.dump() << "\n";
        return 1;
    } catch (const std::logic_error& e) {
        std::cerr << Json{{"error", e.what()}, {"kind", "assertion"}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << Json{{"error", e.what()}}.dump() << "\n";
        return 2;
    }
    return 0;
}
