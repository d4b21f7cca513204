#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "bbcodes/catalog.hpp"
#include "bbcodes/search.hpp"

using namespace bbcodes;

namespace {

// Test-side orbit computation on bitmask pairs. Index i*m+j holds x^i y^j.
using Mask = std::uint64_t;

Mask remap(Mask a, int ell, int m, int map, int si, int sj) {
    Mask out = 0;
    for (int i = 0; i < ell; ++i) {
        for (int j = 0; j < m; ++j) {
            if (!((a >> (i * m + j)) & 1u)) {
                continue;
            }
            int u = i, v = j;
            if (map & 1) {  // antipode
                u = -u;
                v = -v;
            }
            if (map & 2) {  // x <-> y, square grids only
                std::swap(u, v);
            }
            u = ((u + si) % ell + ell) % ell;
            v = ((v + sj) % m + m) % m;
            out |= Mask{1} << (u * m + v);
        }
    }
    return out;
}

std::pair<Mask, Mask> orbit_min(Mask c, Mask d, int ell, int m) {
    std::pair<Mask, Mask> best{~Mask{0}, ~Mask{0}};
    const int maps = ell == m ? 4 : 2;
    for (int map = 0; map < maps; ++map) {
        for (int a = 0; a < ell * m; ++a) {
            for (int b = 0; b < ell * m; ++b) {
                std::pair<Mask, Mask> img{remap(c, ell, m, map, a / m, a % m), remap(d, ell, m, map, b / m, b % m)};
                best = std::min(best, img);
            }
        }
    }
    return best;
}

Mask to_mask(const RingElem& a) {
    Mask out = 0;
    for (std::size_t i : a.coeffs().support()) {
        out |= Mask{1} << i;
    }
    return out;
}

std::size_t brute_class_count(int ell, int m, int wc, int wd) {
    std::set<std::pair<Mask, Mask>> classes;
    const int n = ell * m;
    for (Mask c = 0; c < (Mask{1} << n); ++c) {
        if (std::popcount(c) != wc) {
            continue;
        }
        for (Mask d = 0; d < (Mask{1} << n); ++d) {
            if (std::popcount(d) == wd) {
                classes.insert(orbit_min(c, d, ell, m));
            }
        }
    }
    return classes.size();
}

SearchConfig grid(int ell, int m, int w) {
    SearchConfig cfg;
    cfg.ell_min = cfg.ell_max = ell;
    cfg.m_min = cfg.m_max = m;
    cfg.weight_c = cfg.weight_d = w;
    cfg.isd_trials = 200;
    cfg.threads = 1;
    return cfg;
}

}  // namespace

TEST(SearchConfig, RejectsBadRanges) {
    SearchConfig cfg;
    cfg.weight_c = 1;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = SearchConfig{};
    cfg.ell_min = 8;
    cfg.ell_max = 7;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    EXPECT_THROW(enumerate_candidates(cfg), std::invalid_argument);
    EXPECT_NO_THROW(SearchConfig{}.validate());
}

TEST(CanonicalForm, InvariantOnOrbit) {
    auto spec = catalog_entry("[[98,6,12]]").spec();
    auto base = canonical_form(spec.c, spec.d);
    const int ell = 7, m = 7;
    for (int map = 0; map < 4; ++map) {
        for (int s : {0, 3, 11, 40}) {
            Mask c = remap(to_mask(spec.c), ell, m, map, s / m, s % m);
            Mask d = remap(to_mask(spec.d), ell, m, map, (s + 5) / m % ell, (s + 5) % m);
            BitVec cv(49), dv(49);
            for (int i = 0; i < 49; ++i) {
                if ((c >> i) & 1u) cv.set(i);
                if ((d >> i) & 1u) dv.set(i);
            }
            auto got = canonical_form(RingElem(spec.params, cv), RingElem(spec.params, dv));
            EXPECT_EQ(got.first, base.first);
            EXPECT_EQ(got.second, base.second);
        }
    }
    EXPECT_TRUE(base.first.get(0, 0));
    EXPECT_TRUE(base.second.get(0, 0));
}

TEST(MinShift, ContainsOneAndIsShiftInvariant) {
    RingParams p(4, 5);
    RingElem a = parse_ring_elem(p, "x*y^2 + x^3 + y^4");
    RingElem base = min_shift(a);
    EXPECT_TRUE(base.get(0, 0));
    for (long i = 0; i < 4; ++i) {
        for (long j = 0; j < 5; ++j) {
            EXPECT_EQ(min_shift(a.shifted(i, j)), base);
        }
    }
}

class EnumerationVsBruteForce : public ::testing::TestWithParam<std::tuple<int, int, int>> {};

TEST_P(EnumerationVsBruteForce, OneSpecPerClass) {
    auto [ell, m, w] = GetParam();
    auto specs = enumerate_candidates(grid(ell, m, w));
    EXPECT_EQ(specs.size(), brute_class_count(ell, m, w, w));
    std::set<std::pair<Mask, Mask>> seen;
    for (const auto& s : specs) {
        EXPECT_TRUE(seen.insert(orbit_min(to_mask(s.c), to_mask(s.d), ell, m)).second)
            << s.c.to_string() << " | " << s.d.to_string();
    }
}

INSTANTIATE_TEST_SUITE_P(SmallGrids, EnumerationVsBruteForce,
                         ::testing::Values(std::tuple{2, 2, 2}, std::tuple{2, 3, 2}, std::tuple{3, 3, 2},
                                           std::tuple{2, 3, 3}, std::tuple{3, 3, 3}));

TEST(Enumeration, SymmetricModeMatchesOrbitsOfSymmetricPairs) {
    for (int size : {3, 4}) {
        SearchConfig cfg = grid(size, size, 3);
        cfg.require_symmetric = true;
        auto specs = enumerate_candidates(cfg);
        std::set<std::pair<Mask, Mask>> expected;
        for (Mask c = 0; c < (Mask{1} << (size * size)); ++c) {
            if (std::popcount(c) == 3) {
                expected.insert(orbit_min(c, remap(c, size, size, 2, 0, 0), size, size));
            }
        }
        std::set<std::pair<Mask, Mask>> got;
        for (const auto& s : specs) {
            EXPECT_EQ(s.d, RingAutomorphism::swap_xy().apply(s.c));
            got.insert(orbit_min(to_mask(s.c), to_mask(s.d), size, size));
        }
        EXPECT_EQ(got.size(), specs.size());
        EXPECT_EQ(got, expected);
    }
}

TEST(Enumeration, SymmetricSevenBySevenContainsThe98Code) {
    SearchConfig cfg = grid(7, 7, 3);
    cfg.require_symmetric = true;
    auto target_spec = catalog_entry("[[98,6,12]]").spec();
    auto target = canonical_form(target_spec.c, target_spec.d);
    int hits = 0;
    for (const auto& s : enumerate_candidates(cfg)) {
        if (canonical_form(s.c, s.d) == target) {
            ++hits;
        }
    }
    EXPECT_EQ(hits, 1);
}

TEST(Evaluate, CascadeOn98) {
    SearchConfig cfg = grid(7, 7, 3);
    cfg.require_symmetric = true;
    cfg.require_pure = true;
    cfg.min_d = 10;
    cfg.isd_trials = 1000;
    SearchRecord r = evaluate(catalog_entry("[[98,6,12]]").spec(), cfg);
    EXPECT_EQ(r.n, 98u);
    EXPECT_EQ(r.k, 6u);
    EXPECT_TRUE(r.symmetric);
    EXPECT_EQ(r.pure, std::optional<bool>(true));
    EXPECT_EQ(r.principal, std::optional<bool>(true));
    ASSERT_TRUE(r.d_upper.has_value());
    EXPECT_GE(*r.d_upper, 12u);
    EXPECT_TRUE(r.rejected_at.empty()) << r.rejected_at;
}

TEST(Evaluate, RejectionStages) {
    SearchConfig cfg = grid(3, 3, 3);
    SearchRecord unit = evaluate(BBCodeSpec::parse(3, 3, "1", "1 + y"), cfg);
    EXPECT_EQ(unit.k, 0u);
    EXPECT_EQ(unit.rejected_at, "k");

    cfg.require_symmetric = true;
    SearchRecord asym = evaluate(BBCodeSpec::parse(3, 3, "1 + x", "1 + x"), cfg);
    EXPECT_GT(asym.k, 0u);
    EXPECT_FALSE(asym.symmetric);
    EXPECT_EQ(asym.rejected_at, "symmetry");

    SearchConfig pure_cfg = grid(6, 12, 3);
    pure_cfg.require_pure = true;
    SearchRecord impure = evaluate(catalog_entry("[[144,12,12]]").spec(), pure_cfg);
    EXPECT_EQ(impure.k, 12u);
    EXPECT_EQ(impure.pure, std::optional<bool>(false));
    EXPECT_EQ(impure.rejected_at, "purity");
    EXPECT_FALSE(impure.d_upper.has_value());

    SearchConfig dist_cfg = grid(3, 3, 2);
    dist_cfg.min_d = 4;
    SearchRecord toric = evaluate(BBCodeSpec::parse(3, 3, "1 + x", "1 + y"), dist_cfg);
    EXPECT_EQ(toric.d_upper, std::optional<std::size_t>(3));
    EXPECT_TRUE(toric.d_certified);
    EXPECT_EQ(toric.rejected_at, "distance");
}

TEST(SearchRecord, JsonRoundTrip) {
    SearchRecord r = evaluate(BBCodeSpec::parse(3, 3, "1 + x", "1 + y"), grid(3, 3, 2));
    std::string line = r.to_json_line();
    EXPECT_EQ(line.find('\n'), std::string::npos);
    EXPECT_NE(line.find("\"schema_version\":1"), std::string::npos);
    SearchRecord back = SearchRecord::from_json_line(line);
    EXPECT_TRUE(back.same_result(r));
    EXPECT_EQ(back.timestamp, r.timestamp);
    EXPECT_EQ(back.to_json_line(), line);
}

TEST(SearchRecord, SameResultIgnoresOnlyTimestamp) {
    SearchRecord r = evaluate(BBCodeSpec::parse(3, 3, "1 + x", "1 + y"), grid(3, 3, 2));
    SearchRecord t = r;
    t.timestamp = "1970-01-01T00:00:00Z";
    EXPECT_TRUE(r.same_result(t));
    t.k += 1;
    EXPECT_FALSE(r.same_result(t));
}

TEST(CandidateSeed, DependsOnClassNotRepresentative) {
    auto a = BBCodeSpec::parse(3, 3, "1 + x", "1 + y");
    auto b = BBCodeSpec::parse(3, 3, "x + x^2", "y^2 + 1");
    EXPECT_EQ(candidate_seed(7, a), candidate_seed(7, b));
    EXPECT_NE(candidate_seed(7, a), candidate_seed(8, a));
    EXPECT_NE(candidate_seed(7, a), candidate_seed(7, BBCodeSpec::parse(3, 3, "1 + x", "1 + x*y")));
}

TEST(RunSearch, ReproducibleAcrossThreadCounts) {
    SearchConfig cfg = grid(3, 3, 3);
    cfg.seed = 42;
    cfg.threads = 1;
    SearchSummary one = run_search(cfg);
    cfg.threads = 4;
    SearchSummary four = run_search(cfg);
    ASSERT_EQ(one.records.size(), four.records.size());
    ASSERT_EQ(one.records.size(), one.candidates);
    for (std::size_t i = 0; i < one.records.size(); ++i) {
        EXPECT_TRUE(one.records[i].same_result(four.records[i])) << i;
    }
}

TEST(RunSearch, ResumeSkipsRecordedClasses) {
    auto path = std::filesystem::temp_directory_path() / "bbcodes_search_resume_test.jsonl";
    std::filesystem::remove(path);
    SearchConfig cfg = grid(3, 3, 2);
    cfg.output_path = path.string();
    SearchSummary first = run_search(cfg);
    ASSERT_GT(first.candidates, 1u);
    EXPECT_EQ(first.skipped, 0u);

    // Keep only the first line, then resume.
    std::string head;
    {
        std::ifstream in(path);
        std::getline(in, head);
    }
    {
        std::ofstream out(path, std::ios::trunc);
        out << head << '\n';
    }
    SearchSummary second = run_search(cfg);
    EXPECT_EQ(second.skipped, 1u);
    EXPECT_EQ(second.records.size(), first.candidates - 1);

    std::map<std::string, SearchRecord> by_class;
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        SearchRecord r = SearchRecord::from_json_line(line);
        EXPECT_TRUE(by_class.emplace(r.canonical_c + "|" + r.canonical_d, r).second) << "duplicate " << line;
    }
    EXPECT_EQ(by_class.size(), first.candidates);
    for (const auto& r : first.records) {
        auto it = by_class.find(r.canonical_c + "|" + r.canonical_d);
        ASSERT_NE(it, by_class.end());
        EXPECT_TRUE(it->second.same_result(r));
    }

    SearchSummary third = run_search(cfg);
    EXPECT_EQ(third.skipped, first.candidates);
    EXPECT_TRUE(third.records.empty());
    std::filesystem::remove(path);
}
