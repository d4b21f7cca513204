#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "bbcodes/grouprings.hpp"
#include "oracles.hpp"

using namespace bbcodes;

namespace {

RingElem random_elem(std::mt19937_64& rng, RingParams p, double density = 0.3) {
    std::bernoulli_distribution bit(density);
    RingElem e(p);
    for (int i = 0; i < p.ell; ++i) {
        for (int j = 0; j < p.m; ++j) {
            if (bit(rng)) {
                e.flip(i, j);
            }
        }
    }
    return e;
}

std::vector<std::vector<int>> grid(const RingElem& e) {
    const auto& p = e.params();
    std::vector<std::vector<int>> g(p.ell, std::vector<int>(p.m, 0));
    for (int i = 0; i < p.ell; ++i) {
        for (int j = 0; j < p.m; ++j) {
            g[i][j] = e.get(i, j);
        }
    }
    return g;
}

RingElem elem_from_mask(RingParams p, std::uint64_t mask) {
    RingElem e(p);
    for (std::size_t k = 0; k < p.size(); ++k) {
        if ((mask >> k) & 1U) {
            e.flip(p.x_exp(k), p.y_exp(k));
        }
    }
    return e;
}

}  // namespace

TEST(RingElem, ProductMatchesGridConvolution) {
    std::mt19937_64 rng(3);
    for (auto [l, m] : std::vector<std::pair<int, int>>{{1, 1}, {2, 3}, {3, 5}, {7, 7}, {6, 12}, {9, 15}}) {
        RingParams p(l, m);
        for (int trial = 0; trial < 5; ++trial) {
            RingElem a = random_elem(rng, p);
            RingElem b = random_elem(rng, p);
            EXPECT_EQ(grid(a * b), oracle::grid_multiply(grid(a), grid(b)));
            EXPECT_EQ(a * b, b * a);
        }
    }
}

TEST(RingElem, RingAxiomsHoldOnSamples) {
    std::mt19937_64 rng(5);
    RingParams p(4, 6);
    for (int trial = 0; trial < 20; ++trial) {
        RingElem a = random_elem(rng, p);
        RingElem b = random_elem(rng, p);
        RingElem c = random_elem(rng, p);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * RingElem::one(p), a);
        EXPECT_TRUE((a + a).is_zero());
    }
}

TEST(MulMatrix, ActsAsLeftMultiplicationOnColumns) {
    std::mt19937_64 rng(7);
    RingParams p(5, 4);
    for (int trial = 0; trial < 10; ++trial) {
        RingElem a = random_elem(rng, p);
        RingElem b = random_elem(rng, p);
        EXPECT_EQ(mul_matrix(a).apply(b.coeffs()), (a * b).coeffs());
    }
    // Product of matrices is the matrix of the product.
    RingElem a = random_elem(rng, p);
    RingElem b = random_elem(rng, p);
    EXPECT_EQ(mul_matrix(a) * mul_matrix(b), mul_matrix(a * b));
}

TEST(MulMatrix, CyclicShiftOnThreeCells) {
    RingParams p(3, 1);
    // x sends e_0 -> e_1 -> e_2 -> e_0, so column j has its 1 in row j+1.
    BitMatrix expected = BitMatrix::from_strings({"001", "100", "010"});
    EXPECT_EQ(mul_matrix(RingElem::monomial(p, 1, 0)), expected);
    // Transpose of the multiplication matrix is the matrix of the antipode.
    RingElem a = parse_ring_elem(p, "1 + x");
    EXPECT_EQ(mul_matrix(a).transpose(), mul_matrix(RingAutomorphism::antipode().apply(a)));
}

TEST(Parse, AcceptsGrammarVariants) {
    RingParams p(7, 7);
    EXPECT_EQ(parse_ring_elem(p, "x + y^3 + y^4"), RingElem::from_monomials(p, {{1, 0}, {0, 3}, {0, 4}}));
    EXPECT_EQ(parse_ring_elem(p, "x^2y + x^2*y"), RingElem::zero(p));
    EXPECT_EQ(parse_ring_elem(p, "x^-1"), RingElem::monomial(p, 6, 0));
    EXPECT_EQ(parse_ring_elem(p, "x^(-2) * y^ 9"), RingElem::monomial(p, 5, 2));
    EXPECT_EQ(parse_ring_elem(p, "0"), RingElem::zero(p));
    EXPECT_EQ(parse_ring_elem(p, "1+1+x"), RingElem::monomial(p, 1, 0));
}

TEST(Parse, PrintRoundTripsAndIsCanonical) {
    std::mt19937_64 rng(9);
    RingParams p(6, 9);
    for (int trial = 0; trial < 30; ++trial) {
        RingElem a = random_elem(rng, p);
        EXPECT_EQ(parse_ring_elem(p, a.to_string()), a);
    }
    EXPECT_EQ(parse_ring_elem(RingParams(7, 7), "y^4 + x + y^3").to_string(), "y^3 + y^4 + x");
    EXPECT_EQ(parse_ring_elem(RingParams(3, 3), "y*x^2 + 1").to_string(), "1 + x^2*y");
}

TEST(Parse, ReportsColumnOfError) {
    RingParams p(3, 3);
    try {
        parse_ring_elem(p, "x + z");
        FAIL() << "expected a parse error";
    } catch (const PolyParseError& e) {
        EXPECT_EQ(e.column(), 5u);
        EXPECT_EQ(e.token(), "z");
    }
    EXPECT_THROW(parse_ring_elem(p, "x +"), PolyParseError);
    EXPECT_THROW(parse_ring_elem(p, ""), PolyParseError);
    EXPECT_THROW(parse_ring_elem(p, "x^"), PolyParseError);
    EXPECT_THROW(parse_ring_elem(p, "2x"), PolyParseError);
}

TEST(Automorphism, AntipodeAndSwapAreRingMaps) {
    std::mt19937_64 rng(11);
    RingParams p(5, 5);
    for (const auto& phi : {RingAutomorphism::antipode(), RingAutomorphism::swap_xy(),
                            RingAutomorphism::compose(RingAutomorphism::antipode(), RingAutomorphism::swap_xy())}) {
        for (int trial = 0; trial < 5; ++trial) {
            RingElem a = random_elem(rng, p);
            RingElem b = random_elem(rng, p);
            EXPECT_EQ(phi.apply(a * b), phi.apply(a) * phi.apply(b));
            EXPECT_EQ(phi.apply(phi.apply(a)), a);
        }
    }
    EXPECT_THROW(RingAutomorphism::swap_xy().apply(RingElem::one(RingParams(3, 5))), std::invalid_argument);
    RingParams q(4, 6);
    EXPECT_EQ(RingAutomorphism::shift(1, 2).apply(RingElem::one(q)), RingElem::monomial(q, 1, 2));
}

TEST(Ideals, AnnihilatorMatchesBruteForce) {
    std::mt19937_64 rng(13);
    for (auto [l, m] : std::vector<std::pair<int, int>>{{2, 3}, {3, 3}, {2, 4}}) {
        RingParams p(l, m);
        for (int trial = 0; trial < 6; ++trial) {
            RingElem a = random_elem(rng, p, 0.4);
            Ideal ann = annihilator(a);
            std::size_t count = 0;
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p.size()); ++mask) {
                RingElem r = elem_from_mask(p, mask);
                bool kills = (a * r).is_zero();
                EXPECT_EQ(ann.contains(r), kills);
                count += kills;
            }
            EXPECT_EQ(std::uint64_t{1} << ann.dim(), count);
            EXPECT_TRUE(ann.is_closed());
        }
    }
}

TEST(Ideals, GeneratedIdealAndProductMatchBruteForce) {
    std::mt19937_64 rng(17);
    RingParams p(2, 3);
    for (int trial = 0; trial < 10; ++trial) {
        RingElem a = random_elem(rng, p, 0.4);
        RingElem b = random_elem(rng, p, 0.4);
        // (a) is {a r : r in R}.
        std::set<std::uint64_t> principal;
        std::vector<RingElem> multiples;
        for (std::uint64_t mask = 0; mask < 64; ++mask) {
            RingElem prod = a * elem_from_mask(p, mask);
            multiples.push_back(prod);
        }
        Ideal ia = ideal_generated(a);
        for (const auto& prod : multiples) {
            EXPECT_TRUE(ia.contains(prod));
        }
        std::set<std::vector<std::size_t>> distinct;
        for (const auto& prod : multiples) {
            distinct.insert(prod.coeffs().support());
        }
        EXPECT_EQ(std::size_t{1} << ia.dim(), distinct.size());
        // (a)(b) = (ab) for principal ideals.
        EXPECT_EQ(ideal_product(ia, ideal_generated(b)), ideal_generated(a * b));
    }
}

TEST(Ideals, ColonAndQuotientDimension) {
    RingParams p(3, 3);
    RingElem a = parse_ring_elem(p, "1 + x");
    Ideal zero = Ideal::zero(p);
    EXPECT_EQ(colon(zero, a), annihilator(a));
    EXPECT_EQ(quotient_dim(ideal_generated(a)), 3u);
    EXPECT_EQ(quotient_dim_by_elems(p, {a, parse_ring_elem(p, "1 + y")}), 1u);
}

TEST(Principality, SmallIdealNotPrincipal) {
    RingParams p(2, 2);
    Ideal i = ideal_generated(p, {parse_ring_elem(p, "1 + x"), parse_ring_elem(p, "1 + y")});
    EXPECT_FALSE(is_principal_ideal(i));
    auto res = find_principal_generator(i);
    EXPECT_EQ(res.status, PrincipalSearchResult::Status::Absent);
}

TEST(Principality, DecisionMatchesExhaustiveEnumeration) {
    // Every ideal with at most two generators in small rings, against the set of principal ideals.
    for (auto [l, m] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {4, 2}}) {
        RingParams p(l, m);
        const std::uint64_t total = std::uint64_t{1} << p.size();
        std::set<std::vector<std::string>> principal;
        for (std::uint64_t mask = 0; mask < total; ++mask) {
            principal.insert(ideal_generated(elem_from_mask(p, mask)).space().basis().row_strings());
        }
        std::mt19937_64 rng(19);
        for (int trial = 0; trial < 150; ++trial) {
            RingElem a = elem_from_mask(p, rng() % total);
            RingElem b = elem_from_mask(p, rng() % total);
            Ideal i = ideal_generated(p, {a, b});
            bool expected = principal.count(i.space().basis().row_strings()) == 1;
            ASSERT_EQ(is_principal_ideal(i), expected) << a.to_string() << " ; " << b.to_string();
            auto res = find_principal_generator(i);
            if (expected) {
                ASSERT_EQ(res.status, PrincipalSearchResult::Status::Found);
                EXPECT_EQ(ideal_generated(*res.generator), i);
            } else {
                EXPECT_EQ(res.status, PrincipalSearchResult::Status::Absent);
            }
        }
    }
}

TEST(Principality, GeneratorFoundForLargerAnnihilators) {
    RingParams p(6, 12);
    Ideal ann = annihilator(parse_ring_elem(p, "x^3 + y + y^2"));
    auto res = find_principal_generator(ann);
    ASSERT_EQ(res.status, PrincipalSearchResult::Status::Found);
    EXPECT_EQ(ideal_generated(*res.generator), ann);
}

TEST(Semisimple, DecompositionMatchesFrobeniusCount) {
    for (auto [l, m] : std::vector<std::pair<int, int>>{{1, 1}, {3, 3}, {7, 7}, {3, 5}, {9, 9}, {5, 7}, {3, 15}}) {
        RingParams p(l, m);
        auto formula = semisimple_decomposition(p);
        auto counted = quotient_field_degrees(Ideal::zero(p));
        EXPECT_EQ(formula, counted) << l << "x" << m;
        int total = 0;
        for (int d : formula) {
            total += d;
        }
        EXPECT_EQ(static_cast<std::size_t>(total), p.size());
    }
    EXPECT_EQ(semisimple_decomposition(RingParams(7, 1)), (std::vector<int>{1, 3, 3}));
    EXPECT_THROW(semisimple_decomposition(RingParams(6, 3)), std::invalid_argument);
}

TEST(Semisimple, QuotientDegreesDetectNonSemisimple) {
    RingParams p(2, 1);
    EXPECT_THROW(quotient_field_degrees(Ideal::zero(p)), std::invalid_argument);
    RingParams q(7, 7);
    Ideal i = ideal_generated(q, {parse_ring_elem(q, "x + y^3 + y^4"), parse_ring_elem(q, "y + x^3 + x^4")});
    EXPECT_EQ(quotient_field_degrees(i), (std::vector<int>{3}));
}

TEST(Gf2Poly, ArithmeticAndGcd) {
    Gf2Poly a = Gf2Poly::from_exponents({0, 1});      // 1 + t
    Gf2Poly b = Gf2Poly::from_exponents({0, 1, 3});   // 1 + t + t^3
    Gf2Poly c = a * b;
    EXPECT_EQ(c, Gf2Poly::from_exponents({0, 2, 3, 4}));
    auto [q, r] = c.divmod(b);
    EXPECT_EQ(q, a);
    EXPECT_TRUE(r.is_zero());
    EXPECT_EQ(gcd(Gf2Poly::cyclic_modulus(7), Gf2Poly::cyclic_modulus(3)), a);
    EXPECT_EQ(Gf2Poly::from_exponents({9, 2}).reduce_cyclic(7), Gf2Poly());
    EXPECT_EQ(pow_mod_cyclic(Gf2Poly::monomial(1), 7, 7), Gf2Poly::monomial(0));
    EXPECT_EQ(b.to_string('y'), "1 + y + y^3");
}

TEST(NumberTheory, PhiAndOrderOfTwo) {
    EXPECT_EQ(euler_phi(9), 6);
    EXPECT_EQ(euler_phi(15), 8);
    EXPECT_EQ(order_of_two(7), 3);
    EXPECT_EQ(order_of_two(9), 6);
    EXPECT_EQ(order_of_two(1), 1);
}
