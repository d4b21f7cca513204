// bbcodes: analyze BB codes, print logical bases and fold-transversal gates,
// run the candidate search, and check the published examples.
//
// Exit status: 0 ok, 1 verification failure or refused computation, 2 usage or input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bbcodes/acceptance.hpp"
#include "bbcodes/gates.hpp"
#include "bbcodes/homology.hpp"
#include "bbcodes/search.hpp"
#include "bbcodes/specfile.hpp"
#include "json.hpp"

using namespace bbcodes;
using json = nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;
constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

// Thrown for refusals (non-principal codes, oversized groups); maps to exit 1.
struct Refusal : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
    if (const char* env = std::getenv("BBCODES_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw CLI::ValidationError("BBCODES_SEED", std::string("not an unsigned integer: ") + env);
        }
    }
    return 1;
}

json spec_json(const BBCodeSpec& spec) {
    return {{"l", spec.params.ell}, {"m", spec.params.m}, {"c", spec.c.to_string()}, {"d", spec.d.to_string()}};
}

json matrix_json(const BitMatrix& m) { return m.row_strings(); }

bool is_symmetric(const BBCodeSpec& spec) {
    return spec.params.ell == spec.params.m &&
           min_shift(RingAutomorphism::swap_xy().apply(spec.c)) == min_shift(spec.d);
}

// ---- analyze ----

struct AnalyzeOptions {
    std::string file;
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
    std::size_t certify_budget = 2'000'000;
    unsigned jobs = 0;
};

int cmd_analyze(const AnalyzeOptions& o) {
    BBCodeSpec spec = read_spec_file(o.file);
    CssCode code = build_bb(spec);
    json out;
    out["schema_version"] = kSchemaVersion;
    out["spec"] = spec_json(spec);
    out["n"] = code.n();
    out["k"] = logical_count(code);

    json dist;
    if (out["k"] == 0) {
        dist = {{"d_upper", nullptr}, {"certified", false}, {"trials", 0}, {"seed", o.seed}};
    } else {
        DistanceReport isd = distance_isd(code, {.trials = o.trials, .seed = o.seed, .threads = o.jobs});
        bool certified = false;
        if (isd.upper_bound) {
            try {
                DistanceReport exact = distance_exhaustive(code, *isd.upper_bound, o.certify_budget);
                certified = exact.certified_exact && exact.upper_bound == isd.upper_bound;
            } catch (const DistanceBudgetExceeded&) {
            }
        }
        dist = {{"d_upper", isd.upper_bound ? json(*isd.upper_bound) : json(nullptr)},
                {"certified", certified},
                {"trials", o.trials},
                {"seed", o.seed}};
    }
    out["distance"] = dist;

    PurityReport pr = purity_check(spec);
    out["pure"] = pr.pure;
    out["direct_sum"] = pr.direct_sum;
    PrincipalityReport pp = principality_check(spec);
    switch (pp.status) {
        case PrincipalityReport::Status::Principal:
            out["principal"] = true;
            break;
        case PrincipalityReport::Status::NotPrincipal:
            out["principal"] = false;
            break;
        case PrincipalityReport::Status::Unknown:
            out["principal"] = nullptr;
            break;
    }
    out["symmetric"] = is_symmetric(spec);
    out["sequence_dims"] = {{"ann_cd_mod_M", pr.dim_ann_cd_mod_m},
                            {"ann_c_mod_ann_c_d", pr.dim_ann_c_mod},
                            {"ann_d_mod_c_ann_d", pr.dim_ann_d_mod},
                            {"H", pr.dim_h},
                            {"c_cap_d_mod_cd", pr.dim_intersection_mod_product}};
    if (auto s = detect_semiperiodic(spec.c)) {
        out["semiperiodic_c"] = {{"axis", s->axis == Axis::X ? "x" : "y"},
                                 {"k", s->k},
                                 {"kprime", s->kprime},
                                 {"chi", s->chi.to_string(s->axis == Axis::X ? 'y' : 'x')},
                                 {"g", s->g.to_string(s->axis == Axis::X ? 'y' : 'x')},
                                 {"P", s->p.to_string()}};
    }
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

// ---- logicals ----

PureLogicalBasis basis_or_refuse(const BBCodeSpec& spec) {
    try {
        return pure_logical_basis(spec);
    } catch (const std::exception& err) {
        throw Refusal(std::string("no pure logical basis: ") + err.what());
    }
}

json support_json(const LogicalClass& cls) {
    json pts = json::array();
    const RingParams& p = cls.f.params();
    for (const auto& [part, side] : {std::pair{&cls.f, "h"}, std::pair{&cls.g, "v"}}) {
        for (std::size_t i : part->coeffs().support()) {
            pts.push_back(json::array({p.x_exp(i), p.y_exp(i), side}));
        }
    }
    return pts;
}

// Lattice picture: '+' vertices, "---" a horizontal qubit, '|' a vertical one.
// Row i lists x-exponent i; columns are y-exponents.
std::string lattice_art(const LogicalClass& cls) {
    const RingParams& p = cls.f.params();
    std::ostringstream os;
    for (int i = 0; i < p.ell; ++i) {
        for (int j = 0; j < p.m; ++j) {
            os << '+' << (cls.f.get(i, j) ? "---" : "   ");
        }
        os << "+\n";
        for (int j = 0; j < p.m; ++j) {
            os << (cls.g.get(i, j) ? '|' : ' ') << "   ";
        }
        os << "\n";
    }
    return os.str();
}

int cmd_logicals(const std::string& file, bool art) {
    BBCodeSpec spec = read_spec_file(file);
    PureLogicalBasis basis = basis_or_refuse(spec);
    json out;
    out["schema_version"] = kSchemaVersion;
    out["spec"] = spec_json(spec);
    out["k"] = basis.z_basis.size();
    out["P"] = basis.p.to_string();
    out["Q"] = basis.q.to_string();
    json classes = json::array();
    auto add = [&](const std::vector<LogicalClass>& list, const char* type) {
        for (std::size_t i = 0; i < list.size(); ++i) {
            classes.push_back({{"class_id", classes.size()},
                               {"type", type},
                               {"side", list[i].g.is_zero() ? "h" : "v"},
                               {"f", list[i].f.to_string()},
                               {"g", list[i].g.to_string()},
                               {"support", support_json(list[i])}});
        }
    };
    add(basis.z_basis, "Z");
    add(basis.x_basis, "X");
    out["classes"] = classes;
    out["pairing"] = matrix_json(basis.pairing);
    std::cout << out.dump(2) << "\n";
    if (art) {
        for (const auto& c : classes) {
            const std::size_t id = c["class_id"];
            const LogicalClass& cls =
                id < basis.z_basis.size() ? basis.z_basis[id] : basis.x_basis[id - basis.z_basis.size()];
            std::cout << "\nclass " << id << " (" << c["type"].get<std::string>() << ", "
                      << c["side"].get<std::string>() << ")\n"
                      << lattice_art(cls);
        }
    }
    return kExitOk;
}

// ---- gates ----

struct GatesOptions {
    std::string file;
    std::string gap_path;
    std::string csv_path;
    std::size_t max_order = 10'000'000;
    unsigned jobs = 0;
};

const char* kind_name(FoldGate::Kind k) {
    switch (k) {
        case FoldGate::Kind::Swap:
            return "swap";
        case FoldGate::Kind::Hadamard:
            return "hadamard";
        case FoldGate::Kind::Cz:
            return "cz";
        case FoldGate::Kind::Composite:
            return "composite";
    }
    return "?";
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out || !(out << text)) {
        throw std::runtime_error("cannot write " + path);
    }
}

int cmd_gates(const GatesOptions& o) {
    BBCodeSpec spec = read_spec_file(o.file);
    CssCode code = build_bb(spec);
    LogicalBasis basis = as_logical_basis(basis_or_refuse(spec));
    std::vector<FoldGate> gates = fold_gates(spec, basis);

    json out;
    out["schema_version"] = kSchemaVersion;
    out["spec"] = spec_json(spec);
    out["k"] = basis.z_basis.size();
    if (!is_symmetric(spec)) {
        out["notice"] = "c(y,x) is not a shift of d(x,y): Swap_omega and CZ_tau0omega omitted";
        std::cerr << "notice: " << out["notice"].get<std::string>() << "\n";
    }
    json list = json::array();
    std::vector<BitMatrix> gens;
    std::vector<std::string> names;
    bool all_preserved = true;
    for (const auto& g : gates) {
        PreservationReport r = check_stabilizer_preservation(code, apply_to_tableau(g));
        all_preserved = all_preserved && r.preserved;
        json s_gates = json::array();
        for (auto [q, dagger] : g.s_gates) {
            s_gates.push_back({{"qubit", q}, {"dagger", dagger}});
        }
        list.push_back({{"name", g.name},
                        {"kind", kind_name(g.kind)},
                        {"permutation", g.perm},
                        {"hadamards", g.hadamards},
                        {"s_gates", s_gates},
                        {"cz_pairs", g.cz_pairs},
                        {"transversal", g.is_transversal()},
                        {"stabilizers_preserved", r.preserved},
                        {"logical", matrix_json(*g.logical)}});
        gens.push_back(*g.logical);
        names.push_back(g.name);
    }
    out["gates"] = list;
    try {
        GateGroup group = enumerate_group(gens, o.max_order, o.jobs);
        out["group_order"] = group.order();
        if (!o.csv_path.empty()) {
            write_file(o.csv_path, cayley_csv(group));
        }
    } catch (const GroupTooLarge& err) {
        out["group_order"] = nullptr;
        out["group_order_at_least"] = err.partial();
        std::cerr << "warning: " << err.what() << "\n";
    }
    if (!o.gap_path.empty()) {
        write_file(o.gap_path, gap_generators(gens, names));
    }
    std::cout << out.dump(2) << "\n";
    return all_preserved ? kExitOk : kExitFail;
}

// ---- search ----

struct SearchOptions {
    std::string l = "7";
    std::string m = "7";
    SearchConfig config;
};

// "7" or "5-8".
std::pair<int, int> parse_range(const std::string& text, const std::string& flag) {
    try {
        std::size_t dash = text.find('-');
        std::size_t used = 0;
        if (dash == std::string::npos) {
            int v = std::stoi(text, &used);
            if (used == text.size()) {
                return {v, v};
            }
        } else {
            std::size_t used2 = 0;
            int a = std::stoi(text.substr(0, dash), &used);
            int b = std::stoi(text.substr(dash + 1), &used2);
            if (used == dash && used2 == text.size() - dash - 1) {
                return {a, b};
            }
        }
    } catch (const std::exception&) {
    }
    throw CLI::ValidationError(flag, "expected N or A-B, got '" + text + "'");
}

int cmd_search(SearchOptions o) {
    std::tie(o.config.ell_min, o.config.ell_max) = parse_range(o.l, "--l");
    std::tie(o.config.m_min, o.config.m_max) = parse_range(o.m, "--m");
    try {
        o.config.validate();
    } catch (const std::invalid_argument& err) {
        throw CLI::ValidationError("search", err.what());
    }
    SearchSummary s = run_search(o.config);
    std::size_t kept = 0;
    for (const auto& r : s.records) {
        kept += r.rejected_at.empty();
        if (o.config.output_path.empty() && r.rejected_at.empty()) {
            std::cout << r.to_json_line() << "\n";
        }
    }
    json summary = {{"schema_version", kSchemaVersion},
                    {"candidates", s.candidates},
                    {"skipped", s.skipped},
                    {"evaluated", s.records.size()},
                    {"kept", kept},
                    {"seed", o.config.seed}};
    if (!o.config.output_path.empty()) {
        summary["out"] = o.config.output_path;
    }
    (o.config.output_path.empty() ? std::cerr : std::cout) << summary.dump() << "\n";
    return kExitOk;
}

// ---- verify-paper ----

int cmd_verify(const std::vector<int>& only, bool as_json) {
    for (int id : only) {
        if (id < 1 || id > kCriteriaCount) {
            throw CLI::ValidationError("--only", "criteria are numbered 1 to " + std::to_string(kCriteriaCount));
        }
    }
    int failed = 0;
    json rows = json::array();
    run_acceptance(published_expectations(), only, [&](const CriterionResult& r) {
        failed += !r.pass;
        if (as_json) {
            rows.push_back({{"id", r.id},
                            {"title", r.title},
                            {"pass", r.pass},
                            {"seconds", r.seconds},
                            {"failures", r.failures},
                            {"notes", r.diagnostics}});
        } else {
            std::cout << format_result(r) << std::flush;
        }
    });
    if (as_json) {
        std::cout << json{{"schema_version", kSchemaVersion}, {"criteria", rows}, {"failed", failed}}.dump(2) << "\n";
    } else {
        std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
    }
    return failed == 0 ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bivariate bicycle codes: analysis, logical bases, fold-transversal gates, search"};
    app.require_subcommand(1);
    unsigned jobs = 0;
    app.add_option("--jobs,-j", jobs, "worker threads (0: all cores)");

    std::uint64_t seed = 0;
    bool seed_given = false;
    auto seed_opt = [&](CLI::App* sub) {
        sub->add_option_function<std::uint64_t>(
            "--seed", [&](std::uint64_t v) { seed = v, seed_given = true; }, "master seed (default $BBCODES_SEED or 1)");
    };

    AnalyzeOptions ao;
    CLI::App* analyze = app.add_subcommand("analyze", "parameters, distance bound and structure flags as JSON");
    analyze->add_option("file", ao.file, "code spec file")->required();
    analyze->add_option("--trials", ao.trials, "ISD trials")->check(CLI::PositiveNumber);
    analyze->add_option("--certify-budget", ao.certify_budget, "exhaustive distance budget (0 disables)");
    seed_opt(analyze);

    std::string logicals_file;
    bool art = false;
    CLI::App* logicals = app.add_subcommand("logicals", "pure logical basis of a principal code");
    logicals->add_option("file", logicals_file, "code spec file")->required();
    logicals->add_flag("--art", art, "append a lattice picture of each class");

    GatesOptions go;
    CLI::App* gates = app.add_subcommand("gates", "fold-transversal gates, logical matrices, group order");
    gates->add_option("file", go.file, "code spec file")->required();
    gates->add_option("--gap", go.gap_path, "write GAP generators to this file");
    gates->add_option("--csv", go.csv_path, "write the Cayley graph edges to this file");
    gates->add_option("--max-order", go.max_order, "refuse groups larger than this");

    SearchOptions so;
    CLI::App* search = app.add_subcommand("search", "enumerate and filter candidate codes");
    search->add_option("--l", so.l, "l or range A-B");
    search->add_option("--m", so.m, "m or range A-B");
    search->add_option("--wc", so.config.weight_c, "weight of c");
    search->add_option("--wd", so.config.weight_d, "weight of d");
    search->add_option("--min-k", so.config.min_k, "minimum k");
    search->add_option("--min-d", so.config.min_d, "minimum ISD distance bound");
    search->add_flag("--symmetric", so.config.require_symmetric, "only d = c(y,x)");
    search->add_flag("--pure", so.config.require_pure, "reject impure codes");
    search->add_option("--trials", so.config.isd_trials, "ISD trials per candidate")->check(CLI::PositiveNumber);
    search->add_option("--out", so.config.output_path, "append JSON lines here and resume from it");
    seed_opt(search);

    std::vector<int> only;
    bool verify_json = false;
    CLI::App* verify = app.add_subcommand("verify-paper", "check the published examples");
    verify->add_option("--only", only, "criterion numbers to run")->delimiter(',');
    verify->add_flag("--json", verify_json, "JSON instead of text");

    try {
        app.parse(argc, argv);
        if (!seed_given) {
            seed = default_seed();
        }
        if (analyze->parsed()) {
            ao.seed = seed;
            ao.jobs = jobs;
            return cmd_analyze(ao);
        }
        if (logicals->parsed()) {
            return cmd_logicals(logicals_file, art);
        }
        if (gates->parsed()) {
            go.jobs = jobs;
            return cmd_gates(go);
        }
        if (search->parsed()) {
            so.config.seed = seed;
            so.config.threads = jobs;
            return cmd_search(so);
        }
        if (verify->parsed()) {
            return cmd_verify(only, verify_json);
        }
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const SpecFileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Refusal& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return kExitFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}
