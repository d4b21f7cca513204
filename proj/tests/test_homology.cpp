#include <gtest/gtest.h>

#include <random>
#include <set>

#include "bbcodes/catalog.hpp"
#include "bbcodes/homology.hpp"

using namespace bbcodes;

namespace {

RingElem random_nonzero(std::mt19937_64& rng, RingParams p, int max_terms) {
    RingElem e(p);
    while (e.is_zero()) {
        const int terms = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_terms));
        for (int t = 0; t < terms; ++t) {
            e.flip(static_cast<long>(rng() % static_cast<std::uint64_t>(p.ell)),
                   static_cast<long>(rng() % static_cast<std::uint64_t>(p.m)));
        }
    }
    return e;
}

/// M from its two-sided definition.
Ideal two_sided_m(const RingElem& c, const RingElem& d) {
    const RingParams& p = c.params();
    Ideal ann_cd = annihilator(c * d);
    Ideal left = ideal_product(annihilator(c), ideal_generated(d));
    Ideal right = ideal_product(annihilator(d), ideal_generated(c));
    Subspace a = preimage(mul_matrix(d), ann_cd.space(), left.space());
    Subspace b = preimage(mul_matrix(c), ann_cd.space(), right.space());
    return Ideal(p, a.intersection(b));
}

}  // namespace

TEST(HomologySpace, MatchesLogicalCount) {
    BBCodeSpec toric = BBCodeSpec::parse(3, 3, "1 + x", "1 + y");
    EXPECT_EQ(homology_space(toric).k, 2u);
    for (const auto& row : table_codes()) {
        HomologySpace h = homology_space(row.spec());
        EXPECT_EQ(h.k, row.k);
        EXPECT_TRUE(h.cycles.contains(h.boundaries));
    }
}

TEST(Purity, TableFlags) {
    for (const auto& row : table_codes()) {
        PurityReport r = purity_check(row.spec());
        EXPECT_EQ(r.pure, row.pure) << row.name;
        EXPECT_EQ(r.dim_h, row.k);
    }
}

TEST(Purity, SelfPairMatchesBruteForce) {
    // c = d on a 3 x 3 grid: compare (c) cap (c) against (c^2) by listing every multiple.
    RingParams p(3, 3);
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 8; ++trial) {
        RingElem c = random_nonzero(rng, p, 4);
        std::set<std::string> multiples_c;
        std::set<std::string> multiples_cc;
        for (std::uint64_t mask = 0; mask < 512; ++mask) {
            RingElem r(p, BitVec::from_indices(9, [&] {
                           std::vector<std::size_t> idx;
                           for (std::size_t i = 0; i < 9; ++i) {
                               if ((mask >> i) & 1U) {
                                   idx.push_back(i);
                               }
                           }
                           return idx;
                       }()));
            multiples_c.insert((c * r).coeffs().to_string());
            multiples_cc.insert((c * c * r).coeffs().to_string());
        }
        PurityReport rep = purity_check(BBCodeSpec(c, c));
        EXPECT_EQ(rep.pure, multiples_c == multiples_cc) << c.to_string();
    }
}

TEST(Purity, ExactnessAndTorIdentitiesOnRandomSpecs) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        RingParams p(1 + static_cast<int>(rng() % 8), 1 + static_cast<int>(rng() % 8));
        RingElem c = random_nonzero(rng, p, 4);
        RingElem d = random_nonzero(rng, p, 4);
        BBCodeSpec spec(c, d);
        PurityReport r;
        ASSERT_NO_THROW(r = purity_check(spec)) << p.ell << "x" << p.m << " " << c.to_string() << " ; " << d.to_string();
        const long alternating = static_cast<long>(r.dim_ann_cd_mod_m) - static_cast<long>(r.dim_ann_c_mod) -
                                 static_cast<long>(r.dim_ann_d_mod) + static_cast<long>(r.dim_h) -
                                 static_cast<long>(r.dim_intersection_mod_product);
        EXPECT_EQ(alternating, 0);

        // Tor_2 descriptions agree.
        Ideal m = tor2_submodule(c, d);
        EXPECT_EQ(m, two_sided_m(c, d));
        Ideal c_cap_ann_d = ideal_generated(c).intersection(annihilator(d));
        Ideal c_ann_d = ideal_product(ideal_generated(c), annihilator(d));
        Ideal ann_c_cap_d = annihilator(c).intersection(ideal_generated(d));
        Ideal ann_c_d = ideal_product(annihilator(c), ideal_generated(d));
        EXPECT_EQ(r.dim_ann_cd_mod_m, c_cap_ann_d.dim() - c_ann_d.dim());
        EXPECT_EQ(r.dim_ann_cd_mod_m, ann_c_cap_d.dim() - ann_c_d.dim());

        if (p.ell % 2 == 1 && p.m % 2 == 1) {
            EXPECT_TRUE(r.pure);
            EXPECT_TRUE(r.direct_sum);
            auto degrees = quotient_field_degrees(ideal_generated(p, {c, d}));
            std::size_t total = 0;
            for (int deg : degrees) {
                total += static_cast<std::size_t>(deg);
            }
            EXPECT_EQ(2 * total, r.dim_h);
        }
    }
}

TEST(Principality, TableFlags) {
    for (const auto& row : table_codes()) {
        PrincipalityReport r = principality_check(row.spec());
        EXPECT_EQ(r.status == PrincipalityReport::Status::Principal, row.principal) << row.name;
        if (r.p) {
            EXPECT_EQ(ideal_generated(*r.p), annihilator(row.spec().c));
        }
    }
}

TEST(Principality, OddGridsAlwaysPrincipal) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        RingParams p(1 + 2 * static_cast<int>(rng() % 4), 1 + 2 * static_cast<int>(rng() % 4));
        BBCodeSpec spec(random_nonzero(rng, p, 4), random_nonzero(rng, p, 4));
        EXPECT_EQ(principality_check(spec).status, PrincipalityReport::Status::Principal);
    }
}

TEST(Semiperiodic, Code98Data) {
    BBCodeSpec spec = catalog_entry("[[98,6,12]]").spec();
    SemiperiodicData s = semiperiodic_generator(spec.c);
    EXPECT_EQ(s.k, 1);
    EXPECT_EQ(s.kprime, 7);
    EXPECT_EQ(s.zeta, Gf2Poly::from_exponents({3, 4}));
    EXPECT_EQ(s.g, Gf2Poly::from_exponents({0, 1}));
    // zeta^7 = y^21 (1+y)^7 reduces to y + ... + y^6; adding 1 gives the all-ones word.
    EXPECT_EQ(s.chi, Gf2Poly::from_exponents({0, 1, 2, 3, 4, 5, 6}));
    EXPECT_EQ(s.p, paper_p_98());
    EXPECT_EQ(ideal_generated(s.p), annihilator(spec.c));
    ASSERT_TRUE(s.d_chi.has_value());
    EXPECT_EQ(*s.d_chi, 2u);

    // Vertical side via the y-form of d.
    SemiperiodicData sv = semiperiodic_generator(spec.d, Axis::Y);
    EXPECT_EQ(sv.p, RingAutomorphism::swap_xy().apply(s.p));
}

TEST(Semiperiodic, Code162GeneratesSameIdealAsDisplayedProduct) {
    BBCodeSpec spec = catalog_entry("[[162,8,12]]").spec();
    SemiperiodicData s = semiperiodic_generator(spec.c);
    EXPECT_EQ(s.k, 3);
    EXPECT_EQ(s.kprime, 3);
    EXPECT_EQ(ideal_generated(s.p), ideal_generated(paper_p_162()));
}

TEST(Semiperiodic, SandwichAndExactDistanceFormula) {
    struct Case {
        int l, m;
        const char* c;
    };
    int checked = 0;
    for (const auto& cs : {Case{7, 7, "x + y^3 + y^4"}, Case{9, 9, "x^3 + y + y^2"}, Case{6, 5, "x^2 + 1 + y"},
                           Case{4, 7, "x + y + y^3"}, Case{6, 3, "x^3 + 1 + y"}, Case{9, 7, "x^3 + y + y^2 + y^4"}}) {
        RingParams p(cs.l, cs.m);
        RingElem c = parse_ring_elem(p, cs.c);
        SemiperiodicData s = semiperiodic_generator(c);
        Ideal ann = annihilator(c);
        auto exact = min_weight(ann);
        if (!exact || ann.dim() == 0) {
            continue;
        }
        ASSERT_TRUE(s.d_chi.has_value());
        EXPECT_GE(static_cast<std::size_t>(s.kprime * cs.m), *exact) << cs.c;
        EXPECT_GE(*exact, static_cast<std::size_t>(s.kprime) * *s.d_chi) << cs.c;
        auto formula = semiperiodic_distance(s, cs.m);
        ASSERT_TRUE(formula.has_value());
        EXPECT_EQ(*formula, *exact) << cs.c;
        ++checked;
    }
    EXPECT_GE(checked, 4);
}

TEST(Semiperiodic, RejectsOtherShapesAndHandlesDegenerate) {
    RingParams p(6, 4);
    EXPECT_THROW(semiperiodic_generator(parse_ring_elem(p, "x + x^2 + y")), std::invalid_argument);
    EXPECT_THROW(semiperiodic_generator(parse_ring_elem(p, "x*y + 1")), std::invalid_argument);
    EXPECT_THROW(semiperiodic_generator(parse_ring_elem(p, "x^4 + y")), std::invalid_argument);
    EXPECT_THROW(semiperiodic_generator(parse_ring_elem(p, "1 + y")), std::invalid_argument);
    SemiperiodicData unit = semiperiodic_generator(parse_ring_elem(p, "x^2"));
    EXPECT_TRUE(unit.degenerate);
    EXPECT_TRUE(unit.p.is_zero());
    EXPECT_FALSE(detect_semiperiodic(parse_ring_elem(p, "x + x^2 + y + y^2")).has_value());
    EXPECT_TRUE(detect_semiperiodic(parse_ring_elem(p, "y^2 + x + 1")).has_value());
}

TEST(LogicalBasis98, FixturePairsToIdentityAndActionIsT) {
    BBCodeSpec spec = catalog_entry("[[98,6,12]]").spec();
    PureLogicalBasis b = pure_logical_basis(spec, fixture_98());
    EXPECT_EQ(b.pairing, BitMatrix::identity(6));
    BitMatrix t = paper_t_98();
    for (auto [a, bb] : {std::pair{1L, 0L}, std::pair{0L, 1L}}) {
        BitMatrix action = logical_action_of_multiplication(b, a, bb);
        EXPECT_EQ(action.block(0, 0, 3, 3), t);
        EXPECT_EQ(action.block(3, 3, 3, 3), t);
        EXPECT_TRUE(action.block(0, 3, 3, 3).is_zero());
        EXPECT_TRUE(action.block(3, 0, 3, 3).is_zero());
    }
    EXPECT_EQ(quotient_field_degrees(ideal_generated(spec.params, {spec.c, spec.d})), (std::vector<int>{3}));
}

TEST(LogicalBasis162, FixtureIndependentAndDualCandidatesSpan) {
    BBCodeSpec spec = catalog_entry("[[162,8,12]]").spec();
    PureLogicalBasis b = pure_logical_basis(spec, fixture_162());
    EXPECT_EQ(b.z_basis.size(), 8u);
    EXPECT_EQ(quotient_dim_by_elems(spec.params, {spec.c, spec.d}), 4u);
    EXPECT_TRUE(inverse(b.pairing).has_value());
    EXPECT_EQ(quotient_field_degrees(ideal_generated(spec.params, {spec.c, spec.d})), (std::vector<int>{2, 2}));
}

TEST(LogicalBasis, GenericConstructionOnTable) {
    for (const auto& row : table_codes()) {
        if (!row.principal) {
            EXPECT_THROW(pure_logical_basis(row.spec()), std::invalid_argument);
            continue;
        }
        BBCodeSpec spec = row.spec();
        PureLogicalBasis b = pure_logical_basis(spec);
        EXPECT_EQ(b.z_basis.size(), row.k);
        EXPECT_EQ(b.pairing, BitMatrix::identity(row.k)) << row.name;
        CssCode code = build_bb(spec);
        for (const auto& z : b.z_basis) {
            EXPECT_TRUE(code.hx.apply(z.vec()).none());
        }
        for (const auto& x : b.x_basis) {
            EXPECT_TRUE(code.hz.apply(x.vec()).none());
        }
        for (std::size_t i = 0; i < b.horizontal_count; ++i) {
            EXPECT_TRUE(b.z_basis[i].g.is_zero());
        }
    }
}

TEST(LogicalBasis, ToricLoops) {
    BBCodeSpec spec = BBCodeSpec::parse(3, 3, "1 + x", "1 + y");
    PureLogicalBasis b = pure_logical_basis(spec);
    ASSERT_EQ(b.z_basis.size(), 2u);
    EXPECT_EQ(b.horizontal_count, 1u);
    EXPECT_EQ(b.pairing, BitMatrix::identity(2));
    BitMatrix action = logical_action_of_multiplication(b, 1, 0);
    EXPECT_EQ(action * action * action, BitMatrix::identity(2));
}

TEST(LogicalBasis, ActionIgnoresBoundaryShifts) {
    BBCodeSpec spec = catalog_entry("[[98,6,12]]").spec();
    PureLogicalBasis b = pure_logical_basis(spec);
    BitMatrix before = logical_action_of_multiplication(b, 1, 0);
    CssCode code = build_bb(spec);
    std::mt19937_64 rng(3);
    PureLogicalBasis shifted = b;
    for (auto& z : shifted.z_basis) {
        BitVec v = z.vec();
        for (const auto& row : code.hz.row_vectors()) {
            if (rng() & 1U) {
                v ^= row;
            }
        }
        z = LogicalClass::from_vec(spec.params, v);
    }
    EXPECT_EQ(logical_action_of_multiplication(shifted, 1, 0), before);
    EXPECT_EQ(logical_action_of_multiplication(shifted, 0, 1), logical_action_of_multiplication(b, 0, 1));
}
