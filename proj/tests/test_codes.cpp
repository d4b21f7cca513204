#include <gtest/gtest.h>

#include "bbcodes/codes.hpp"
#include "oracles.hpp"

using namespace bbcodes;

namespace {

BBCodeSpec toric(int size) { return BBCodeSpec::parse(size, size, "1 + x", "1 + y"); }

struct TableRow {
    int ell, m;
    const char* c;
    const char* d;
    std::size_t n, k;
};

const std::vector<TableRow> kRows = {
    {3, 15, "1 + y + y^5", "y^3 + x + x^2", 90, 8},    {6, 12, "x^3 + y + y^2", "y^3 + x + x^2", 144, 12},
    {6, 9, "1 + y + y^2", "y^3 + x^2 + x^4", 108, 16}, {8, 8, "x^2 + y + y^3 + y^4", "y^2 + x + x^3 + x^4", 128, 14},
    {9, 9, "1 + x + y", "x^3 + y + y^2", 162, 4},      {9, 9, "1 + x + y^6", "y^3 + x^2 + x^3", 162, 12},
    {9, 9, "1 + y + y^2", "y^3 + x^3 + x^6", 162, 24}, {9, 15, "x^3 + y + y^2", "y^3 + x + x^2", 270, 8},
    {7, 7, "x + y^3 + y^4", "y + x^3 + x^4", 98, 6},   {9, 9, "x^3 + y + y^2", "y^3 + x + x^2", 162, 8},
};

}  // namespace

TEST(BuildBB, ToricCodeParameters) {
    CssCode code = build_bb(toric(3));
    EXPECT_EQ(code.n(), 18u);
    EXPECT_EQ(logical_count(code), 2u);
    EXPECT_EQ(code.qubit_labels.size(), 18u);
    EXPECT_EQ(code.qubit_labels[9].side, Side::Vertical);
}

TEST(BuildBB, RejectsZeroPolynomials) {
    RingParams p(3, 3);
    EXPECT_THROW(BBCodeSpec(RingElem::zero(p), RingElem::zero(p)), std::invalid_argument);
    EXPECT_THROW(BBCodeSpec(RingElem::one(p), RingElem::one(RingParams(3, 4))), std::invalid_argument);
}

TEST(BuildBB, TableParametersAndCommutation) {
    for (const auto& row : kRows) {
        CssCode code = build_bb(BBCodeSpec::parse(row.ell, row.m, row.c, row.d));
        EXPECT_EQ(code.n(), row.n) << row.c;
        EXPECT_EQ(logical_count(code), row.k) << row.c << " / " << row.d;
        EXPECT_TRUE((code.hx * code.hz.transpose()).is_zero());
    }
}

TEST(BuildBB, RankMatchesNaiveElimination) {
    CssCode code = build_bb(BBCodeSpec::parse(7, 7, "x + y^3 + y^4", "y + x^3 + x^4"));
    EXPECT_EQ(rank(code.hx), oracle::rank(oracle::to_dense(code.hx)));
    EXPECT_EQ(rank(code.hz), oracle::rank(oracle::to_dense(code.hz)));
}

TEST(GroupAlgebraChecks, AgreeWithMatrixRows) {
    for (const auto& row : kRows) {
        BBCodeSpec spec = BBCodeSpec::parse(row.ell, row.m, row.c, row.d);
        CssCode code = build_bb(spec);
        auto checks = group_algebra_checks(spec);
        ASSERT_EQ(checks.size(), code.hx.rows());
        for (std::size_t h = 0; h < checks.size(); ++h) {
            EXPECT_EQ(code.hx.row(h).support(), checks[h].x_support);
            EXPECT_EQ(code.hz.row(h).support(), checks[h].z_support);
        }
    }
}

TEST(GroupAlgebraChecks, ToricVertexAndWeights) {
    BBCodeSpec spec = toric(3);
    const RingParams& p = spec.params;
    auto checks = group_algebra_checks(spec);
    // Element y x^2: X-check on h-edges at (2,1), (1,1) and v-edges at (2,1), (2,0).
    const auto& x = checks[p.index(2, 1)].x_support;
    std::vector<std::size_t> expected{p.index(1, 1), p.index(2, 1), 9 + p.index(2, 0), 9 + p.index(2, 1)};
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(x, expected);

    BBCodeSpec s98 = BBCodeSpec::parse(7, 7, "x + y^3 + y^4", "y + x^3 + x^4");
    for (const auto& ch : group_algebra_checks(s98)) {
        EXPECT_EQ(ch.x_support.size(), 6u);
        EXPECT_EQ(ch.z_support.size(), 6u);
    }
}

TEST(LogicalCount, InvariantUnderDualSpec) {
    RingAutomorphism iota = RingAutomorphism::antipode();
    for (const auto& row : kRows) {
        BBCodeSpec spec = BBCodeSpec::parse(row.ell, row.m, row.c, row.d);
        BBCodeSpec dual(iota.apply(spec.d), iota.apply(spec.c));
        EXPECT_EQ(logical_count(build_bb(dual)), row.k);
    }
}

TEST(LogicalBasis, PairsToIdentityAndCommutesWithChecks) {
    CssCode code = build_bb(BBCodeSpec::parse(7, 7, "x + y^3 + y^4", "y + x^3 + x^4"));
    LogicalBasis lb = css_logical_basis(code);
    ASSERT_EQ(lb.z_basis.size(), 6u);
    ASSERT_EQ(lb.x_basis.size(), 6u);
    for (std::size_t i = 0; i < 6; ++i) {
        EXPECT_TRUE(code.hx.apply(lb.z_basis[i]).none());
        EXPECT_TRUE(code.hz.apply(lb.x_basis[i]).none());
        for (std::size_t j = 0; j < 6; ++j) {
            EXPECT_EQ(lb.z_basis[i].dot(lb.x_basis[j]), i == j);
        }
    }
}

TEST(DistanceExhaustive, ToricCodes) {
    DistanceReport r3 = distance_exhaustive(build_bb(toric(3)), 4);
    ASSERT_TRUE(r3.upper_bound.has_value());
    EXPECT_EQ(*r3.upper_bound, 3u);
    EXPECT_TRUE(r3.certified_exact);
    ASSERT_TRUE(r3.witness.has_value());
    EXPECT_EQ(r3.witness->popcount(), 3u);

    DistanceReport r2 = distance_exhaustive(build_bb(toric(2)), 3);
    ASSERT_TRUE(r2.upper_bound.has_value());
    EXPECT_EQ(*r2.upper_bound, 2u);
}

TEST(DistanceExhaustive, WitnessIsALogical) {
    CssCode code = build_bb(toric(4));
    DistanceReport r = distance_exhaustive(code, 4);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(*r.upper_bound, 4u);
    const BitMatrix& checks = r.witness_type == PauliType::Z ? code.hx : code.hz;
    const BitMatrix& stabs = r.witness_type == PauliType::Z ? code.hz : code.hx;
    EXPECT_TRUE(checks.apply(*r.witness).none());
    EXPECT_FALSE(Subspace::span(stabs).contains(*r.witness));
}

TEST(DistanceExhaustive, ZeroWeightAndBudget) {
    CssCode code = build_bb(toric(3));
    DistanceReport r = distance_exhaustive(code, 0);
    EXPECT_FALSE(r.upper_bound.has_value());
    EXPECT_TRUE(r.certified_exact);
    EXPECT_THROW(distance_exhaustive(build_bb(BBCodeSpec::parse(7, 7, "x + y^3 + y^4", "y + x^3 + x^4")), 12),
                 DistanceBudgetExceeded);
}

TEST(DistanceIsd, BoundsExactDistanceOnToric) {
    for (int size : {3, 4, 5}) {
        CssCode code = build_bb(toric(size));
        DistanceReport exact = distance_exhaustive(code, static_cast<std::size_t>(size));
        DistanceReport isd = distance_isd(code, {.trials = 100, .seed = 4});
        ASSERT_TRUE(isd.upper_bound.has_value());
        EXPECT_GE(*isd.upper_bound, *exact.upper_bound);
        EXPECT_EQ(*isd.upper_bound, *exact.upper_bound);
        EXPECT_FALSE(isd.certified_exact);
        const BitMatrix& checks = isd.witness_type == PauliType::Z ? code.hx : code.hz;
        EXPECT_TRUE(checks.apply(*isd.witness).none());
    }
}

TEST(DistanceIsd, DeterministicAcrossThreadCounts) {
    CssCode code = build_bb(BBCodeSpec::parse(6, 9, "1 + y + y^2", "y^3 + x^2 + x^4"));
    DistanceReport a = distance_isd(code, {.trials = 300, .seed = 77, .threads = 1});
    DistanceReport b = distance_isd(code, {.trials = 300, .seed = 77, .threads = 4});
    EXPECT_EQ(a.upper_bound, b.upper_bound);
    EXPECT_EQ(a.witness, b.witness);
    EXPECT_THROW(distance_isd(code, {.trials = 0}), std::invalid_argument);
}

TEST(NFold, TwoFoldEqualsBuildBB) {
    for (const auto& row : kRows) {
        BBCodeSpec spec = BBCodeSpec::parse(row.ell, row.m, row.c, row.d);
        NFoldResult r = build_nfold(spec.params, {spec.c, spec.d}, 1);
        CssCode bb = build_bb(spec);
        EXPECT_EQ(r.code.hx, bb.hx);
        EXPECT_EQ(r.code.hz, bb.hz);
        EXPECT_FALSE(r.x_meta_checks.has_value());
        EXPECT_FALSE(r.z_meta_checks.has_value());
    }
}

TEST(NFold, ThreeFoldComplexShape) {
    RingParams p(3, 3);
    RingElem c = parse_ring_elem(p, "1 + x");
    RingElem d = parse_ring_elem(p, "1 + y");
    RingElem e = parse_ring_elem(p, "1 + x*y");
    NFoldResult r = build_nfold(p, {c, d, e}, 1);
    const auto& diff = r.complex.differentials;
    ASSERT_EQ(diff.size(), 3u);
    EXPECT_EQ(r.complex.ranks, (std::vector<std::size_t>{1, 3, 3, 1}));
    for (std::size_t i = 0; i + 1 < diff.size(); ++i) {
        EXPECT_TRUE((diff[i] * diff[i + 1]).is_zero());
    }
    const BitMatrix mc = mul_matrix(c), md = mul_matrix(d), me = mul_matrix(e), z(9, 9);
    EXPECT_EQ(diff[0], BitMatrix::hstack(BitMatrix::hstack(md, mc), me));
    std::vector<std::vector<const BitMatrix*>> pattern = {{&me, &z, &mc}, {&z, &me, &md}, {&md, &mc, &z}};
    for (std::size_t bi = 0; bi < 3; ++bi) {
        for (std::size_t bj = 0; bj < 3; ++bj) {
            EXPECT_EQ(diff[1].block(bi * 9, bj * 9, 9, 9), *pattern[bi][bj]) << bi << "," << bj;
        }
    }
    EXPECT_EQ(diff[2], BitMatrix::vstack(BitMatrix::vstack(mc, md), me));
    ASSERT_TRUE(r.z_meta_checks.has_value());
    EXPECT_TRUE((r.code.hz.transpose() * r.z_meta_checks->transpose()).is_zero());

    NFoldResult r2 = build_nfold(p, {c, d, e}, 2);
    ASSERT_TRUE(r2.x_meta_checks.has_value());
    EXPECT_TRUE((*r2.x_meta_checks * r2.code.hx).is_zero());
}

TEST(NFold, FourFoldAndErrors) {
    RingParams p(2, 3);
    std::vector<RingElem> elems = {parse_ring_elem(p, "1 + x"), parse_ring_elem(p, "1 + y"),
                                   parse_ring_elem(p, "x + y^2"), parse_ring_elem(p, "1 + x*y")};
    NFoldResult r = build_nfold(p, elems, 2);
    EXPECT_EQ(r.complex.ranks, (std::vector<std::size_t>{1, 4, 6, 4, 1}));
    for (std::size_t i = 0; i + 1 < r.complex.differentials.size(); ++i) {
        EXPECT_TRUE((r.complex.differentials[i] * r.complex.differentials[i + 1]).is_zero());
    }
    EXPECT_THROW(build_nfold(p, elems, 0), std::out_of_range);
    EXPECT_THROW(build_nfold(p, elems, 4), std::out_of_range);
    EXPECT_THROW(build_nfold(p, {elems[0]}, 1), std::invalid_argument);
}
