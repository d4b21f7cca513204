#include "bbcodes/search.hpp"

#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "bbcodes/homology.hpp"
#include "json.hpp"

namespace bbcodes {

namespace {

using Key = std::vector<std::size_t>;  // sorted support indices

Key support_key(const RingElem& a) {
    Key out;
    for (std::size_t i : a.coeffs().support()) {
        out.push_back(i);
    }
    return out;
}

std::vector<RingAutomorphism> equivalence_maps(const RingParams& p) {
    std::vector<RingAutomorphism> maps = {RingAutomorphism::shift(0, 0), RingAutomorphism::antipode()};
    if (p.ell == p.m) {
        maps.push_back(RingAutomorphism::swap_xy());
        maps.push_back(RingAutomorphism::compose(RingAutomorphism::swap_xy(), RingAutomorphism::antipode()));
    }
    return maps;
}

std::string class_key(const BBCodeSpec& spec) {
    auto [c, d] = canonical_form(spec.c, spec.d);
    return std::to_string(spec.params.ell) + "x" + std::to_string(spec.params.m) + ":" + c.to_string() + "|" +
           d.to_string();
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string utc_timestamp() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Calls visit for each weight-w subset of {0..n-1} that contains 0, in lexicographic order.
template <typename F>
void for_each_support_with_origin(std::size_t n, int w, F&& visit) {
    if (w < 1 || static_cast<std::size_t>(w) > n) {
        return;
    }
    std::vector<std::size_t> idx(static_cast<std::size_t>(w));
    idx[0] = 0;
    for (std::size_t i = 1; i < idx.size(); ++i) {
        idx[i] = i;
    }
    const std::size_t k = idx.size();
    while (true) {
        visit(idx);
        // rightmost position (never position 0) that can still grow
        std::size_t pos = k;
        while (pos > 1 && idx[pos - 1] == n - k + pos - 1) {
            --pos;
        }
        if (pos == 1) {
            return;
        }
        ++idx[pos - 1];
        for (std::size_t i = pos; i < k; ++i) {
            idx[i] = idx[i - 1] + 1;
        }
    }
}

RingElem from_indices(const RingParams& p, const std::vector<std::size_t>& idx) {
    BitVec v(p.size());
    for (std::size_t i : idx) {
        v.set(i);
    }
    return RingElem(p, v);
}

}  // namespace

void SearchConfig::validate() const {
    if (weight_c < 2 || weight_d < 2) {
        throw std::invalid_argument("support weights must be at least 2");
    }
    if (ell_min < 1 || m_min < 1 || ell_min > ell_max || m_min > m_max) {
        throw std::invalid_argument("grid ranges must be nonempty and positive");
    }
}

RingElem min_shift(const RingElem& a) {
    const RingParams& p = a.params();
    RingElem best = a;
    Key best_key = support_key(a);
    for (std::size_t s : a.coeffs().support()) {
        RingElem moved = a.shifted(-p.x_exp(s), -p.y_exp(s));
        Key key = support_key(moved);
        if (key < best_key) {
            best_key = std::move(key);
            best = std::move(moved);
        }
    }
    return best;
}

std::pair<RingElem, RingElem> canonical_form(const RingElem& c, const RingElem& d) {
    std::optional<std::pair<RingElem, RingElem>> best;
    std::pair<Key, Key> best_key;
    for (const auto& phi : equivalence_maps(c.params())) {
        RingElem cc = min_shift(phi.apply(c));
        RingElem dd = min_shift(phi.apply(d));
        std::pair<Key, Key> key{support_key(cc), support_key(dd)};
        if (!best || key < best_key) {
            best_key = std::move(key);
            best.emplace(std::move(cc), std::move(dd));
        }
    }
    return *best;
}

std::vector<BBCodeSpec> enumerate_candidates(const SearchConfig& config) {
    config.validate();
    std::vector<BBCodeSpec> out;
    for (int ell = config.ell_min; ell <= config.ell_max; ++ell) {
        for (int m = config.m_min; m <= config.m_max; ++m) {
            RingParams p(ell, m);
            if (config.require_symmetric) {
                if (ell != m || config.weight_c != config.weight_d) {
                    continue;
                }
                std::set<std::pair<Key, Key>> seen;
                const RingAutomorphism omega = RingAutomorphism::swap_xy();
                for_each_support_with_origin(p.size(), config.weight_c, [&](const std::vector<std::size_t>& idx) {
                    RingElem c = from_indices(p, idx);
                    RingElem d = omega.apply(c);
                    auto [cc, dd] = canonical_form(c, d);
                    if (seen.insert({support_key(cc), support_key(dd)}).second) {
                        out.emplace_back(c, d);
                    }
                });
                continue;
            }
            std::vector<RingElem> cs;
            for_each_support_with_origin(p.size(), config.weight_c,
                                         [&](const std::vector<std::size_t>& idx) { cs.push_back(from_indices(p, idx)); });
            std::vector<RingElem> ds;
            for_each_support_with_origin(p.size(), config.weight_d,
                                         [&](const std::vector<std::size_t>& idx) { ds.push_back(from_indices(p, idx)); });
            // Canonical forms contain the monomial 1 in both entries, so every class
            // has exactly one member here that equals its own canonical form.
            for (const auto& c : cs) {
                for (const auto& d : ds) {
                    auto [cc, dd] = canonical_form(c, d);
                    if (cc == c && dd == d) {
                        out.emplace_back(c, d);
                    }
                }
            }
        }
    }
    return out;
}

// ---- records ----

std::string SearchRecord::to_json_line() const {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["l"] = ell;
    j["m"] = m;
    j["c"] = c;
    j["d"] = d;
    j["canonical"] = {{"c", canonical_c}, {"d", canonical_d}};
    j["n"] = n;
    j["k"] = k;
    j["d_upper"] = d_upper ? nlohmann::ordered_json(*d_upper) : nlohmann::ordered_json(nullptr);
    j["d_certified"] = d_certified;
    j["pure"] = pure ? nlohmann::ordered_json(*pure) : nlohmann::ordered_json(nullptr);
    j["principal"] = principal ? nlohmann::ordered_json(*principal) : nlohmann::ordered_json(nullptr);
    j["symmetric"] = symmetric;
    j["rejected_at"] = rejected_at.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(rejected_at);
    j["isd_trials"] = isd_trials;
    j["seed"] = seed;
    j["timestamp"] = timestamp;
    return j.dump();
}

SearchRecord SearchRecord::from_json_line(const std::string& line) {
    auto j = nlohmann::json::parse(line);
    SearchRecord r;
    r.ell = j.at("l").get<int>();
    r.m = j.at("m").get<int>();
    r.c = j.at("c").get<std::string>();
    r.d = j.at("d").get<std::string>();
    r.canonical_c = j.at("canonical").at("c").get<std::string>();
    r.canonical_d = j.at("canonical").at("d").get<std::string>();
    r.n = j.at("n").get<std::size_t>();
    r.k = j.at("k").get<std::size_t>();
    if (!j.at("d_upper").is_null()) {
        r.d_upper = j.at("d_upper").get<std::size_t>();
    }
    r.d_certified = j.at("d_certified").get<bool>();
    if (!j.at("pure").is_null()) {
        r.pure = j.at("pure").get<bool>();
    }
    if (!j.at("principal").is_null()) {
        r.principal = j.at("principal").get<bool>();
    }
    r.symmetric = j.at("symmetric").get<bool>();
    if (!j.at("rejected_at").is_null()) {
        r.rejected_at = j.at("rejected_at").get<std::string>();
    }
    r.isd_trials = j.at("isd_trials").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.timestamp = j.at("timestamp").get<std::string>();
    return r;
}

bool SearchRecord::same_result(const SearchRecord& o) const {
    return ell == o.ell && m == o.m && c == o.c && d == o.d && canonical_c == o.canonical_c &&
           canonical_d == o.canonical_d && n == o.n && k == o.k && d_upper == o.d_upper &&
           d_certified == o.d_certified && pure == o.pure && principal == o.principal && symmetric == o.symmetric &&
           rejected_at == o.rejected_at && isd_trials == o.isd_trials && seed == o.seed;
}

SearchRecord evaluate(const BBCodeSpec& spec, const SearchConfig& config) {
    SearchRecord rec;
    rec.ell = spec.params.ell;
    rec.m = spec.params.m;
    rec.c = spec.c.to_string();
    rec.d = spec.d.to_string();
    auto [cc, dd] = canonical_form(spec.c, spec.d);
    rec.canonical_c = cc.to_string();
    rec.canonical_d = dd.to_string();
    rec.seed = config.seed;
    rec.timestamp = utc_timestamp();

    CssCode code = build_bb(spec);
    rec.n = code.n();
    rec.k = logical_count(code);
    if (rec.k == 0 || rec.k < config.min_k) {
        rec.rejected_at = "k";
        return rec;
    }

    rec.symmetric = spec.params.ell == spec.params.m &&
                    support_key(min_shift(RingAutomorphism::swap_xy().apply(spec.c))) ==
                        support_key(min_shift(spec.d));
    if (config.require_symmetric && !rec.symmetric) {
        rec.rejected_at = "symmetry";
        return rec;
    }

    PurityReport purity = purity_check(spec);
    rec.pure = purity.pure;
    if (purity.pure) {
        PrincipalityReport pr = principality_check(spec);
        if (pr.status != PrincipalityReport::Status::Unknown) {
            rec.principal = pr.status == PrincipalityReport::Status::Principal;
        }
    } else {
        rec.principal = false;
    }
    if (config.require_pure && !purity.pure) {
        rec.rejected_at = "purity";
        return rec;
    }

    IsdOptions opts;
    opts.trials = config.isd_trials;
    opts.seed = config.seed;
    opts.threads = config.threads;
    rec.isd_trials = config.isd_trials;
    DistanceReport isd = distance_isd(code, opts);
    rec.d_upper = isd.upper_bound;
    if (rec.d_upper) {
        try {
            DistanceReport exact = distance_exhaustive(code, *rec.d_upper, 2'000'000);
            rec.d_certified = exact.certified_exact && exact.upper_bound == rec.d_upper;
        } catch (const DistanceBudgetExceeded&) {
            rec.d_certified = false;
        }
    }
    if (config.min_d > 0 && (!rec.d_upper || *rec.d_upper < config.min_d)) {
        rec.rejected_at = "distance";
    }
    return rec;
}

std::uint64_t candidate_seed(std::uint64_t master, const BBCodeSpec& spec) {
    return splitmix64(master ^ fnv1a(class_key(spec)));
}

SearchSummary run_search(const SearchConfig& config) {
    std::vector<BBCodeSpec> candidates = enumerate_candidates(config);
    SearchSummary summary;
    summary.candidates = candidates.size();

    std::unordered_set<std::string> done;
    if (!config.output_path.empty()) {
        std::ifstream in(config.output_path);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) {
                continue;
            }
            SearchRecord r = SearchRecord::from_json_line(line);
            done.insert(std::to_string(r.ell) + "x" + std::to_string(r.m) + ":" + r.canonical_c + "|" +
                        r.canonical_d);
        }
    }
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (done.contains(class_key(candidates[i]))) {
            ++summary.skipped;
        } else {
            todo.push_back(i);
        }
    }

    std::ofstream out;
    if (!config.output_path.empty()) {
        out.open(config.output_path, std::ios::app);
        if (!out) {
            throw std::runtime_error("cannot open " + config.output_path + " for appending");
        }
    }
    unsigned workers = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(workers, todo.size())));
    std::vector<std::optional<SearchRecord>> results(todo.size());
    std::atomic<std::size_t> next{0};
    std::mutex sink;
    auto work = [&] {
        for (std::size_t t = next++; t < todo.size(); t = next++) {
            const BBCodeSpec& spec = candidates[todo[t]];
            SearchConfig local = config;
            local.seed = candidate_seed(config.seed, spec);
            local.threads = 1;
            SearchRecord rec = evaluate(spec, local);
            std::lock_guard<std::mutex> lock(sink);
            if (out) {
                out << rec.to_json_line() << '\n';
                out.flush();
            }
            results[t] = std::move(rec);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned id = 1; id < workers; ++id) {
        pool.emplace_back(work);
    }
    work();
    for (auto& t : pool) {
        t.join();
    }
    for (auto& r : results) {
        summary.records.push_back(std::move(*r));
    }
    return summary;
}

}  // namespace bbcodes
