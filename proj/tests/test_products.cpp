#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qsid/errors.hpp"
#include "qsid/products.hpp"
#include "qsid/spec_json.hpp"

using namespace qsid;
using oracle::Q;


TEST(ExpandProduct, PartitionNumbers)
{
    ProductSpec spec;
    spec.families = {FactorFamily::all(1, 0, -1, -1)};
    const auto p = expand_product(spec, 6);
    const std::vector<long> expected{1, 1, 2, 3, 5, 7};
    for (int n = 0; n < 6; ++n) {
        EXPECT_EQ(p.coeff(n), expected[n]);
    }
    const auto big = expand_product(spec, 200);
    const auto pn = oracle::partition_numbers(199);
    for (int n = 0; n < 200; ++n) {
        ASSERT_EQ(big.coeff(n), pn[n]);
    }
}

TEST(ExpandProduct, EmptyAndPrefactorOnly)
{
    const auto one = expand_product(ProductSpec{}, 10);
    EXPECT_EQ(one.terms().size(), 1u);
    EXPECT_EQ(one.coeff(0), 1);
    ProductSpec mono;
    mono.prefactor_coeff = -3;
    mono.prefactor_exp = Q(-5, 8);
    const auto m = expand_product(mono, 2);
    EXPECT_EQ(m.coeff(Q(-5, 8)), -3);
    EXPECT_EQ(m.truncation(), Q(2));
}

TEST(ExpandProduct, TableEntryAtTen)
{
    ProductSpec spec;
    spec.families = {FactorFamily::all(1, 0, 1, 1), FactorFamily::all(5, 0, 1, -1)};
    EXPECT_EQ(expand_product(spec, 11).coeff(10), 7);
}

TEST(ExpandProduct, DivergentAndMalformedFamilies)
{
    ProductSpec bad;
    bad.families = {FactorFamily::all(1, -1, -1, 1)};
    EXPECT_THROW(expand_product(bad, 10), DivergentFactorError);
    bad.families = {FactorFamily::all(0, 1, -1, 1)};
    EXPECT_THROW(expand_product(bad, 10), DivergentFactorError);
    bad.families = {FactorFamily{3, {}, 1, 0, -1, 1}};
    EXPECT_THROW(expand_product(bad, 10), ParameterError);
    bad.families = {FactorFamily{3, {4}, 1, 0, -1, 1}};
    EXPECT_THROW(expand_product(bad, 10), ParameterError);
    bad.families = {FactorFamily::all(1, 0, -1, 0)};
    EXPECT_THROW(expand_product(bad, 10), ParameterError);
    // A family whose first kept n is 2 may have a nonpositive exponent at n = 1.
    ProductSpec ok;
    ok.families = {FactorFamily{2, {0}, 1, -1, -1, 1}};
    EXPECT_NO_THROW(expand_product(ok, 10));
}

TEST(ExpandProduct, MatchesRepeatedMultiplicationOracle)
{
    std::mt19937_64 rng(99);
    for (int i = 0; i < 150; ++i) {
        const auto spec = oracle::random_product_spec(rng);
        const Q t(std::uniform_int_distribution<int>(1, 24)(rng));
        const auto got = expand_product(spec, t);
        ASSERT_EQ(oracle::from_series(got, t), oracle::product_oracle(spec, t)) << "case " << i;
    }
}

TEST(ExpandProduct, DistributesOverConcatenation)
{
    ProductSpec a;
    a.families = {FactorFamily::all(2, -1, 1, 2), FactorFamily::excluding(5, {0, 2, 3}, 1, -1, -1)};
    ProductSpec b;
    b.prefactor_coeff = 2;
    b.prefactor_exp = Q(1, 8);
    b.families = {FactorFamily::all(3, 0, -1, 1)};
    ProductSpec both = b;
    both.families.insert(both.families.end(), a.families.begin(), a.families.end());
    const auto lhs = expand_product(both, 60);
    const auto rhs = expand_product(a, 60) * expand_product(b, 60);
    EXPECT_TRUE(equal_up_to(lhs, rhs, 60).passed());
}

TEST(ExpandTheta, GaussFirstTerms)
{
    const auto g = expand_theta(ThetaSpec{2, -1, 0, false}, 7);
    std::vector<Q> exps;
    for (const auto& t : g.terms()) {
        exps.push_back(t.exponent);
        EXPECT_EQ(t.coeff, 1);
    }
    EXPECT_EQ(exps, (std::vector<Q>{0, 1, 3, 6}));
    const auto only_zero = expand_theta(ThetaSpec{1, 0, 0, false}, 1);
    EXPECT_EQ(only_zero.terms().size(), 1u);
    EXPECT_THROW(expand_theta(ThetaSpec{0, 1, 0, false}, 5), ParameterError);
}

TEST(ExpandTheta, MatchesDirectSum)
{
    const std::vector<ThetaSpec> specs{
        {2, -1, 0, false}, {1, 0, 0, true}, {Q(3, 2), Q(1, 2), Q(-1, 8), false},
        {5, 7, 3, true},   {Q(1, 3), -2, 0, false},
    };
    for (const auto& s : specs) {
        const auto got = expand_theta(s, 80);
        ASSERT_EQ(oracle::from_series(got, 80), oracle::theta(s.quad, s.lin, s.constant, s.alternating, 80));
    }
}

TEST(Kappa, Basics)
{
    EXPECT_TRUE(equal_up_to(kappa(2, 1, 300), expand_theta(ThetaSpec{2, -1, 0, false}, 300), 300).passed());
    for (int l = 2; l <= 6; ++l) {
        for (int r = 1; r <= l; ++r) {
            const auto mirrored = expand_theta(ThetaSpec{l, r, 0, false}, 200);
            ASSERT_TRUE(equal_up_to(kappa(l, r, 200), mirrored, 200).passed());
        }
    }
    const auto k31 = kappa(3, 1, 5);
    EXPECT_EQ(k31.coeff(0), 1);
    EXPECT_EQ(k31.coeff(2), 1);
    EXPECT_EQ(k31.coeff(4), 1);
    EXPECT_EQ(k31.coeff(1), 0);
    EXPECT_THROW(kappa(3, 0, 5), ParameterError);
    EXPECT_THROW(kappa(3, 4, 5), ParameterError);
    EXPECT_THROW(kappa(1, 1, 5), ParameterError);
}

TEST(KappaProduct, EqualsThetaSum)
{
    for (const auto& [l, r] : {std::pair{3, 1}, std::pair{5, 3}, std::pair{2, 1}, std::pair{7, 6}}) {
        const auto prod = kappa_product(l, r, 500);
        EXPECT_EQ(prod.coeff(0), 1);
        EXPECT_TRUE(equal_up_to(prod, kappa(l, r, 500), 500).passed()) << l << "," << r;
    }
    EXPECT_THROW(kappa_product(4, 4, 10), ParameterError);
    EXPECT_THROW(kappa_product(4, 0, 10), ParameterError);
}

TEST(KappaShift, ReflectionAcrossL)
{
    for (int l = 2; l <= 8; ++l) {
        for (int u = 1; u < l; ++u) {
            const auto lhs = kappa_direct(l, l + u, 300);
            const auto rhs = shift(kappa(l, l - u, 300 + u), -u);
            ASSERT_TRUE(equal_up_to(lhs, rhs, 300).passed()) << l << "," << u;
        }
    }
}

TEST(KappaLL, ScaledReadingHoldsPrintedDoesNot)
{
    const auto k2 = kappa(2, 2, 20);
    EXPECT_EQ(k2.coeff(0), 2);
    EXPECT_EQ(k2.coeff(4), 2);
    EXPECT_EQ(k2.coeff(12), 2);
    EXPECT_EQ(k2.coeff(2), 0);
    for (int l = 2; l <= 8; ++l) {
        const auto theta = kappa(l, l, 400);
        EXPECT_TRUE(equal_up_to(theta, kappa_l_l(l, 400), 400).passed()) << l;
        EXPECT_TRUE(equal_up_to(theta, kappa_l_l(l, 400, KappaLLReading::Printed), 400).failed()) << l;
    }
    // The printed right side is the l = 1 case.
    EXPECT_TRUE(equal_up_to(kappa_direct(1, 1, 300), kappa_l_l(1, 300, KappaLLReading::Printed), 300)
                    .passed());
}

TEST(DimqBasic, SymmetryAndLowTerms)
{
    for (int l = 1; l <= 8; ++l) {
        for (int s = 0; s <= l; ++s) {
            const auto a = dimq_basic(l, s, 150);
            ASSERT_EQ(a.coeff(0), 1);
            ASSERT_TRUE(equal_up_to(a, dimq_basic(l, l - s, 150), 150).passed());
        }
    }
    // l = 2, s = 0: prod (1-q^{8n})(1-q^{8n-2})(1-q^{8n-6})/(1-q^n), factor by factor.
    std::vector<oracle::Factor> fs;
    for (int n = 1; n <= 40; ++n) {
        fs.push_back({-1, Q(n), -1});
        fs.push_back({-1, Q(8 * n), 1});
        fs.push_back({-1, Q(8 * n - 2), 1});
        fs.push_back({-1, Q(8 * n - 6), 1});
    }
    EXPECT_EQ(oracle::from_series(dimq_basic(2, 0, 40), 40), oracle::product(1, 0, fs, 40));
    EXPECT_THROW(dimq_basic(3, 4, 10), ParameterError);
}

TEST(VacuumCharacter, RogersRamanujanShapeAndSymmetry)
{
    // l = 3, s = 0: 1/prod_{n = +-2 mod 5} (1 - q^{3n})
    ProductSpec rr;
    rr.families = {FactorFamily{5, {2, 3}, 3, 0, -1, -1}};
    EXPECT_TRUE(equal_up_to(vacuum_character(3, 0, 400), expand_product(rr, 400), 400).passed());
    for (int l = 1; l <= 6; ++l) {
        for (int s = 0; s <= l; ++s) {
            const auto v = vacuum_character(l, s, 200);
            ASSERT_EQ(v.coeff(0), 1);
            ASSERT_TRUE(equal_up_to(v, vacuum_character(l, l - s, 200), 200).passed());
        }
    }
}

TEST(NamedSeries, TableCoefficients)
{
    const SeriesParams p{5, std::nullopt, ""};
    EXPECT_EQ(named_series("thm11_lhs", p, 16).coeff(15), 16);
    EXPECT_EQ(named_series("thm11_rhs", p, 16).coeff(15), 16);
    EXPECT_EQ(odd_sum_summand(5, 0, 16).coeff(15), 3);
    EXPECT_EQ(odd_sum_summand(5, 1, 16).coeff(15), 7);
    EXPECT_EQ(odd_sum_summand(5, 2, 16).coeff(15), 6);
}

TEST(NamedSeries, SummandLeadingTerm)
{
    for (int l = 3; l <= 11; l += 2) {
        for (int s = 0; 2 * s <= l - 1; ++s) {
            const auto x = odd_sum_summand(l, s, 50);
            ASSERT_EQ(x.min_exponent(), Q(((l - 2 * s) * (l - 2 * s) - 1) / 8));
            ASSERT_EQ(x.coeff(x.min_exponent()), 1);
        }
    }
}

TEST(NamedSeries, DomainErrorsNameTheConstraint)
{
    try {
        named_series("thm11_lhs", SeriesParams{4, std::nullopt, ""}, 10);
        FAIL();
    } catch (const ParameterError& e) {
        EXPECT_NE(std::string(e.what()).find("odd l"), std::string::npos);
    }
    EXPECT_THROW(named_series("thm13a_lhs", SeriesParams{3, std::nullopt, ""}, 10), ParameterError);
    EXPECT_THROW(named_series("thm11_lhs", SeriesParams{}, 10), ParameterError);
    EXPECT_THROW(named_series("nope", SeriesParams{}, 10), ParameterError);
    EXPECT_THROW(named_series("thm13a_rhs", SeriesParams{2, std::nullopt, "bogus"}, 10), ParameterError);
    EXPECT_EQ(series_names().size(), 14u);
}

TEST(NamedSeries, SchurAndGauss)
{
    EXPECT_TRUE(equal_up_to(named_series("schur_lhs", {}, 500), named_series("schur_rhs", {}, 500), 500)
                    .passed());
    EXPECT_TRUE(
        equal_up_to(named_series("gauss_lhs", {}, 1000), named_series("gauss_rhs", {}, 1000), 1000).passed());
}

TEST(NamedSeries, EvenLevelReadings)
{
    for (int l = 2; l <= 6; l += 2) {
        const SeriesParams scaled{l, std::nullopt, "scaled"};
        const auto lhs = named_series("thm13a_lhs", scaled, 300);
        EXPECT_TRUE(equal_up_to(lhs, named_series("thm13a_rhs", scaled, 300), 300).passed());
        for (const auto* other : {"dropped-l", "unhalved"}) {
            const SeriesParams p{l, std::nullopt, other};
            EXPECT_TRUE(equal_up_to(lhs, named_series("thm13a_rhs", p, 300), 300).failed()) << other;
        }
        EXPECT_TRUE(equal_up_to(named_series("thm13b_lhs", scaled, 300),
                                named_series("thm13b_rhs", scaled, 300), 300)
                        .passed());
    }
}

TEST(NamedSeries, LatticeSumOpensWithSharedMonomial)
{
    for (int l = 2; l <= 8; ++l) {
        const SeriesParams p{l, std::nullopt, ""};
        const auto a = named_series("eq83", p, 30);
        const auto c = named_series("eq86_rhs", p, 30);
        EXPECT_EQ(a.min_exponent(), c.min_exponent()) << l;
        EXPECT_EQ(a.coeff(a.min_exponent()), c.coeff(c.min_exponent())) << l;
    }
}

TEST(NamedSeries, LatticeSumAgainstDirectSum)
{
    // prod_i sum_n q^{(l n^2 - (2i-1) n)/2}, from the sparse oracle, over the same denominators.
    for (int l = 2; l <= 4; ++l) {
        const Q t(25);
        oracle::Sparse lattice{{Q(0), 1}};
        std::vector<oracle::Sparse> parts;
        for (int i = 1; i <= l; ++i) {
            parts.push_back(oracle::theta(Q(l, 2), Q(-(2 * i - 1), 2), 0, false, t + 40));
        }
        for (const auto& p : parts) {
            lattice = oracle::mul(lattice, p, t + 40);
        }
        std::vector<oracle::Factor> fs;
        for (int n = 1; l * n < 80; ++n) {
            fs.push_back({-1, Q(l * n), -(l - 1)});
            fs.push_back({-1, Q(2 * l * n), -1});
        }
        const auto denom = oracle::product(1, 0, fs, t + 40);
        const auto expected = oracle::mul(lattice, denom, t);
        EXPECT_EQ(oracle::from_series(named_series("eq83", SeriesParams{l, std::nullopt, ""}, t), t), expected)
            << l;
    }
}

TEST(SpecJson, ParsesProductAndTheta)
{
    const auto spec = parse_expansion_spec(
        R"({"type":"product","prefactor_coeff":"2","prefactor_exp":[-1,8],
            "families":[{"modulus":5,"residues":[1,4],"exp_scale":[1,2],"exp_offset":0,"sign":-1,"power":-1}]})");
    const auto& p = std::get<ProductSpec>(spec);
    EXPECT_EQ(p.prefactor_coeff, 2);
    EXPECT_EQ(p.prefactor_exp, Q(-1, 8));
    ASSERT_EQ(p.families.size(), 1u);
    EXPECT_EQ(p.families[0].scale, Q(1, 2));
    const auto theta = parse_expansion_spec(R"({"quad":2,"lin":-1})");
    EXPECT_EQ(std::get<ThetaSpec>(theta).quad, Q(2));
    // round trip through to_json
    const auto again = parse_expansion_spec(to_json(p).dump());
    EXPECT_TRUE(equal_up_to(expand(again, 20), expand(spec, 20), 20).passed());
}

TEST(SpecJson, Errors)
{
    try {
        parse_expansion_spec("{\"families\": [");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("byte"), std::string::npos);
    }
    EXPECT_THROW(parse_expansion_spec(R"({"families":[{"exp_scale":[1,0]}]})"), ConfigError);
    EXPECT_THROW(parse_expansion_spec(R"({"families":[{"sign":"x"}]})"), ConfigError);
    EXPECT_THROW(parse_expansion_spec("[]"), ConfigError);
}
