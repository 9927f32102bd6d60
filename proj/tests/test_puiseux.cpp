#include <gtest/gtest.h>

#include "promenade/puiseux.hpp"

using namespace promenade;

namespace {

BivariatePolynomial P(const char* s) { return BivariatePolynomial::parse(s); }
FieldElement Q(long p, long q = 1) { return FieldElement(Rational(p, q)); }
FieldElement Q(const char* p, const char* q) { return FieldElement(Rational(BigInt(p), BigInt(q))); }
FieldElement R(long b, long bq, long d, long a = 0, long aq = 1) { return FieldElement(Rational(a, aq), Rational(b, bq), d); }

const char* sextic = "y^6 - 5*x*y^5 + x^3*y^4 - 7*x^2*y^2 + 6*x^3 + x^4";
// the reference first step only follows from x^2*y^5, not x^2*y^6
const char* f0 = "y^7 - x^2*y^3 + x^2*y^5 + x^3*y^2 + x^4*y + x^4*y^6 + x^5*y^4 + x^7 + x^7*y";
const char* milnor = "-x^10 + x^9 + 6*x^8*y - 3*x^6*y^2 + 2*x^5*y^3 + 3*x^3*y^4 - y^6";

const std::vector<const char*> corpus = {
    sextic, f0, milnor, "y^2 - x^3", "x^2 - y^3", "y - x", "y^2 - x*y", "y^3 - x^2*y - x^5",
};

} // namespace

TEST(Field, Arithmetic) {
    const auto s2 = FieldElement::sqrt_of(2);
    EXPECT_EQ(s2 * s2, Q(2));
    EXPECT_EQ(FieldElement::sqrt_of(Rational(9, 4)), Q(3, 2));
    EXPECT_EQ(FieldElement::sqrt_of(12), R(2, 1, 3));
    EXPECT_EQ(FieldElement::sqrt_of(Rational(1, 2)), R(1, 2, 2));
    const FieldElement a = Q(1) + s2, b = Q(1) - s2;
    EXPECT_EQ(a * b, Q(-1));
    EXPECT_EQ((a / b) * b, a);
    EXPECT_THROW(s2 + FieldElement::sqrt_of(3), UnsupportedFieldExtension);
    EXPECT_EQ(b.sign(), -1);
    EXPECT_EQ(R(-1, 1, 2, 2).sign(), 1);
    EXPECT_FALSE(FieldElement::sqrt_of(-3).is_real());
    EXPECT_EQ(FieldElement::sqrt_of(-3).pow(2), Q(-3));
    EXPECT_EQ(R(-13, 20, 2).to_string(), "-13/20*sqrt(2)");
    EXPECT_EQ(R(1, 2, 5, 1, 2).to_string(), "1/2 + 1/2*sqrt(5)");
    EXPECT_NEAR(a.to_real(), 1 + std::sqrt(2.0), 1e-15);
}

TEST(Field, Roots) {
    const FieldPolynomial p({Q(6), Q(0), Q(-7), Q(0), Q(0), Q(0), Q(1)});
    const auto r = nonzero_roots(p);
    ASSERT_EQ(r.size(), 6u);
    EXPECT_EQ(r[0], Q(1));
    EXPECT_EQ(r[1], Q(-1));
    EXPECT_EQ(r[2], FieldElement::sqrt_of(2));
    EXPECT_EQ(r[3], -FieldElement::sqrt_of(2));
    EXPECT_EQ(r[4], FieldElement::sqrt_of(-3));
    for (const auto& u : r) EXPECT_TRUE(p(u).is_zero());
    // repeated roots, zero roots, quadratic coefficients
    EXPECT_EQ(nonzero_roots(FieldPolynomial({Q(0), Q(0), Q(1), Q(-2), Q(1)})), (std::vector<FieldElement>{Q(1)}));
    const auto s2 = FieldElement::sqrt_of(2);
    EXPECT_EQ(nonzero_roots(FieldPolynomial({s2 * s2, Q(-2) * s2, Q(1)})), (std::vector<FieldElement>{s2}));
    EXPECT_THROW(nonzero_roots(FieldPolynomial({Q(-2), Q(0), Q(0), Q(1)})), UnsupportedFieldExtension);
}

TEST(Bivariate, Parse) {
    const auto f = P(sextic);
    EXPECT_EQ(f.terms().size(), 6u);
    EXPECT_EQ(f.coeff(1, 5), Q(-5));
    EXPECT_EQ(P(f.to_string().c_str()), f);
    EXPECT_EQ(P("3/2*x^2 - 1/2 x y"), P("3/2*x^2 - 1/2*x*y"));
    EXPECT_EQ(P("x*x*y"), P("x^2*y"));
    EXPECT_TRUE(P("x - x").is_zero());
    EXPECT_THROW(P(""), InvalidInput);
    EXPECT_THROW(P("x +"), InvalidInput);
    EXPECT_THROW(P("(x + y)"), InvalidInput);
    EXPECT_THROW(P("x^"), InvalidInput);
    EXPECT_THROW(P("1/0*x"), InvalidInput);
}

TEST(Valuation, Univariate) {
    EXPECT_EQ(valuation({Q(0), Q(0), Q(1), Q(-1)}), 2);
    EXPECT_EQ(valuation({}), std::nullopt);
    EXPECT_EQ(valuation({Q(0), Q(1)}), 1);
}

TEST(Multiplicity, Examples) {
    EXPECT_EQ(multiplicity(P("y^2 - x^3")), 2);
    EXPECT_EQ(multiplicity(P(sextic)), 6);
    EXPECT_THROW(multiplicity(P("x*y")), DivisibleByX);
    EXPECT_THROW(multiplicity(P("1 + y")), NonVanishingAtOrigin);
    EXPECT_THROW(multiplicity(BivariatePolynomial()), ZeroPolynomial);
}

TEST(NewtonPolygon, Examples) {
    const auto p0 = newton_polygon(P(f0));
    ASSERT_EQ(p0.segments.size(), 3u);
    EXPECT_EQ(p0.segments[0].alpha, 2);
    EXPECT_EQ(p0.segments[0].beta, 1);
    EXPECT_EQ(p0.segments[0].gamma, 7);
    const auto line = newton_polygon(P("y - x"));
    ASSERT_EQ(line.segments.size(), 1u);
    EXPECT_EQ(line.segments[0].alpha, 1);
    EXPECT_EQ(line.segments[0].beta, 1);
    EXPECT_EQ(line.segments[0].gamma, 1);
    const auto s = newton_polygon(P(sextic));
    ASSERT_EQ(s.segments.size(), 1u);
    EXPECT_EQ(s.segments[0].alpha, 2);
    EXPECT_EQ(s.segments[0].beta, 1);
    using E = BivariatePolynomial::Exponent;
    EXPECT_EQ(s.segments[0].points, (std::vector<E>{{0, 6}, {2, 2}, {3, 0}}));
    EXPECT_THROW(newton_polygon(BivariatePolynomial()), ZeroPolynomial);
}

TEST(NewtonPolygon, SupportAboveEverySupportingLine) {
    for (auto* s : corpus) {
        const auto poly = newton_polygon(P(s));
        for (std::size_t k = 0; k < poly.segments.size(); ++k) {
            const auto& seg = poly.segments[k];
            for (const auto& e : poly.support) EXPECT_GE(seg.alpha * e.first + seg.beta * e.second, seg.gamma) << s;
            if (k > 0) {
                // slopes beta/alpha strictly increase (segments get flatter)
                const auto& prev = poly.segments[k - 1];
                EXPECT_LT(prev.beta * seg.alpha, seg.beta * prev.alpha) << s;
            }
        }
    }
}

TEST(Dominant, Examples) {
    const auto f = P(f0);
    EXPECT_EQ(dominant_polynomial(f, newton_polygon(f).segments[0]), FieldPolynomial({Q(0), Q(0), Q(0), Q(-1), Q(0), Q(0), Q(0), Q(1)}));
    const auto s = P(sextic);
    EXPECT_EQ(dominant_polynomial(s, newton_polygon(s).segments[0]).to_string(), "u^6 - 7*u^2 + 6");
    const auto l = P("y - x");
    EXPECT_EQ(dominant_polynomial(l, newton_polygon(l).segments[0]).to_string(), "u - 1");
    NewtonSegment fake;
    fake.alpha = 3;
    fake.beta = 1;
    fake.gamma = 9;
    EXPECT_THROW(dominant_polynomial(s, fake), SegmentNotOnPolygon);
}

TEST(Substitute, F0FirstStep) {
    const auto f1 = substitute_step(P(f0), 2, 1, Q(1));
    const auto expected = P(
        "x + 4*y + 2*x^2 + 2*x*y + 18*y^2 + 6*x^2*y + x*y^2 + 34*y^3 + 10*x^2*y^2 + 35*y^4 + 10*x^2*y^3 + 21*y^5"
        " + 5*x^2*y^4 + 7*y^6 + 3*x^7 + x^2*y^5 + y^7 + x^8 + 10*x^7*y + x^8*y + 21*x^7*y^2 + 24*x^7*y^3"
        " + 16*x^7*y^4 + 6*x^7*y^5 + x^7*y^6");
    EXPECT_EQ(f1, expected);
    EXPECT_LE(multiplicity(f1), multiplicity(P(f0)));
    const auto with_y6 = P("y^7 - x^2*y^3 + x^2*y^6 + x^3*y^2 + x^4*y + x^4*y^6 + x^5*y^4 + x^7 + x^7*y");
    EXPECT_EQ(substitute_step(with_y6, 2, 1, Q(1)) - f1, P("x^3") * P("1 + y").pow(6) - P("x^2") * P("1 + y").pow(5));
}

TEST(Substitute, MilnorFactorisation) {
    const auto f1 = substitute_step(P(milnor), 2, 3, Q(1));
    const auto expected = -(P("x - y^3") * P("-8 + x - 12*y - 6*y^2 - y^3"));
    EXPECT_EQ(f1, expected);
}

TEST(Substitute, LineAndNotARoot) {
    EXPECT_EQ(substitute_step(P("y - x"), 1, 1, Q(1)), P("y"));
    EXPECT_THROW(substitute_step(P("y - x"), 1, 1, Q(2)), NotARoot);
}

TEST(Expand, SexticPositiveSideMatchesReferenceSeries) {
    const auto bs = expand_branches(P(sextic), 8, Side::positive);
    ASSERT_EQ(bs.size(), 2u);
    const auto& b = bs[0];
    EXPECT_EQ(b.m, 2);
    EXPECT_EQ(b.sigma, 1);
    EXPECT_EQ(b.order, 8);
    const std::vector<FieldElement> want = {
        Q(0),
        Q(1),
        Q(-5, 8),
        Q(79, 32),
        Q(-14185, 1024),
        Q(3118083, 32768),
        Q(-189696965, 262144),
        Q("24625187405", "4194304"),
        Q("-1670815928565", "33554432"),
    };
    EXPECT_EQ(b.coeffs, want);
}

TEST(Expand, SexticRootTwoBranch) {
    // computed values; the reference t^3 and t^4 coefficients disagree (see the residual check)
    const auto bs = expand_branches(P(sextic), 8, Side::positive);
    ASSERT_EQ(bs.size(), 2u);
    const auto& b = bs[1];
    EXPECT_EQ(b.coeffs[1], FieldElement::sqrt_of(2));
    EXPECT_EQ(b.coeffs[2], Q(2));
    EXPECT_EQ(b.coeffs[3], R(-13, 20, 2));
    EXPECT_EQ(b.coeffs[4], Q(382, 25));
    EXPECT_EQ(b.coeffs[5], R(-267229, 4000, 2));
    EXPECT_EQ(b.coeffs[6], Q(903813, 1250));
    EXPECT_EQ(b.coeffs[7], R(-1661176381, 400000, 2));
    EXPECT_EQ(b.coeffs[8], Q(777992628, 15625));
    EXPECT_GE(*residual_valuation(P(sextic), b), *b.residual_bound);
    // an alternative t^3 coefficient -13 sqrt(2) 2^-2 5^-4 breaks the residual
    auto alternative = b;
    alternative.coeffs[3] = R(-13, 4 * 625, 2);
    EXPECT_LT(*residual_valuation(P(sextic), alternative), *b.residual_bound);
}

TEST(Expand, SexticNegativeSide) {
    const auto bs = expand_branches(P(sextic), 8, Side::negative);
    ASSERT_EQ(bs.size(), 1u);
    const auto& b = bs[0];
    EXPECT_EQ(b.sigma, -1);
    EXPECT_EQ(b.m, 2);
    // reference series uses the -sqrt(3) representative: c_k = (-1)^k * reference_k
    const auto s3 = FieldElement::sqrt_of(3);
    const std::vector<FieldElement> reference = {
        Q(0),
        -s3,
        Q(-9, 8),
        Q(-721, 64 * 5) / s3,
        Q(-36543, 1024 * 25),
        Q(-27986569, 32768L * 125) / (Q(3) * s3),
        Q("-96025589", "163840000"),
        Q("169264391911", "13107200000") / (Q(9) * s3),
        Q("1398151100829", "524288000000"),
    };
    for (int k = 1; k <= 8; ++k) EXPECT_EQ(b.coeffs[k], k % 2 ? -reference[k] : reference[k]) << "t^" << k;
}

TEST(Expand, SexticHasThreeRealBranches) {
    const auto bs = real_branches(P(sextic));
    ASSERT_EQ(bs.size(), 3u);
    EXPECT_EQ(bs[0].coeffs[1], Q(1));
    EXPECT_EQ(bs[1].coeffs[1], FieldElement::sqrt_of(2));
    EXPECT_EQ(bs[2].coeffs[1], FieldElement::sqrt_of(3));
    EXPECT_EQ(bs[2].sigma, -1);
    for (const auto& b : bs) EXPECT_TRUE(b.is_real());
}

TEST(Expand, ExactBranches) {
    const auto cusp = expand_branches(P("y^2 - x^3"), 8, Side::positive);
    ASSERT_EQ(cusp.size(), 1u);
    EXPECT_TRUE(cusp[0].exact);
    EXPECT_EQ(cusp[0].m, 2);
    EXPECT_EQ(cusp[0].coeffs, (std::vector<FieldElement>{Q(0), Q(0), Q(0), Q(1)}));
    EXPECT_EQ(residual_valuation(P("y^2 - x^3"), cusp[0]), std::nullopt);
    const auto m = expand_branches(P(milnor), 8, Side::complex);
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(m[0].m, 6);
    EXPECT_TRUE(m[0].exact);
    const auto pair = expand_branches(P("y^2 - x*y"), 8, Side::positive);
    ASSERT_EQ(pair.size(), 2u);
    EXPECT_EQ(pair[0].y_string(), "0");
    EXPECT_EQ(pair[1].y_string(), "t");
    EXPECT_THROW(expand_branches(P("x*y"), 8, Side::positive), DivisibleByX);
}

TEST(Expand, CubeRootNeedsUnsupportedExtension) {
    EXPECT_THROW(expand_branches(P("y^3 - 2*x"), 4, Side::positive), UnsupportedFieldExtension);
    EXPECT_NO_THROW(expand_branches(P("y^3 - x"), 4, Side::positive));
}

TEST(Expand, ResidualBoundHoldsAndMutationsAreCaught) {
    for (auto* s : corpus)
        for (Side side : {Side::positive, Side::negative, Side::complex}) {
            const auto f = P(s);
            for (const auto& b : expand_branches(f, 8, side)) {
                const auto v = residual_valuation(f, b);
                if (b.exact) {
                    EXPECT_EQ(v, std::nullopt) << s;
                    continue;
                }
                ASSERT_TRUE(v.has_value());
                EXPECT_GE(*v, *b.residual_bound) << s;
                for (int k = 1; k <= b.order; ++k) {
                    auto bad = b;
                    bad.coeffs[k] += Q(1);
                    const auto w = residual_valuation(f, bad);
                    EXPECT_TRUE(w && *w < *b.residual_bound) << s << " t^" << k;
                }
            }
        }
}

TEST(Expand, SexticBoundValue) {
    const auto b = expand_branches(P(sextic), 8, Side::positive)[0];
    // v(F_y) = 5 along this branch, so the bound is 5 + 9
    EXPECT_EQ(*b.residual_bound, 14);
    EXPECT_EQ(*residual_valuation(P(sextic), b), 14);
}

TEST(Expand, CramerMultiplicitiesNonIncreasing) {
    for (auto* s : corpus)
        for (const auto& b : expand_branches(P(s), 8, Side::complex)) {
            for (std::size_t k = 1; k < b.mult_trace.size(); ++k) EXPECT_LE(b.mult_trace[k], b.mult_trace[k - 1]) << s;
            if (!b.exact) {
                ASSERT_FALSE(b.steps.empty());
                EXPECT_EQ(b.steps.back().alpha, 1) << s;
            }
        }
}

TEST(Expand, BranchCountsMatchMultiplicity) {
    for (auto* s : corpus) {
        const auto f = P(s);
        int sum_m = 0, sum_mult = 0;
        for (const auto& b : expand_branches(f, 8, Side::complex)) {
            sum_m += b.m;
            sum_mult += b.multiplicity();
        }
        EXPECT_EQ(sum_m, multiplicity(f)) << s;
        EXPECT_EQ(sum_mult, f.order()) << s;
    }
}

TEST(Characteristic, Examples) {
    EXPECT_EQ(puiseux_characteristic(expand_branches(P("y^2 - x^3"))[0]).to_string(), "(2; 3)");
    EXPECT_EQ(puiseux_characteristic(expand_branches(P(milnor), 8, Side::complex)[0]), (PuiseuxCharacteristic{6, {9, 10}}));
    EXPECT_EQ(puiseux_characteristic(expand_branches(P("y - x - x^2"))[0]), (PuiseuxCharacteristic{1, {}}));
    // vertical tangent: roles swapped
    EXPECT_EQ(puiseux_characteristic(expand_branches(P("x^2 - y^3"), 8, Side::complex)[0]), (PuiseuxCharacteristic{2, {3}}));
    EXPECT_EQ(puiseux_characteristic(expand_branches(P("x^2 - y^5"), 8, Side::positive)[0]), (PuiseuxCharacteristic{2, {5}}));
    PuiseuxBranch truncated;
    truncated.m = 6;
    truncated.coeffs = {Q(0), Q(0), Q(0), Q(0), Q(0), Q(0), Q(0), Q(0), Q(0), Q(1)};
    truncated.order = 9;
    EXPECT_THROW(puiseux_characteristic(truncated), TruncationTooShort);
}

TEST(Characteristic, GcdIsOne) {
    for (auto* s : corpus)
        for (const auto& b : expand_branches(P(s), 8, Side::complex)) {
            const auto c = puiseux_characteristic(b);
            int g = c.m;
            for (int beta : c.betas) g = std::gcd(g, beta);
            EXPECT_EQ(g, 1) << s;
            for (std::size_t k = 1; k < c.betas.size(); ++k) EXPECT_LT(c.betas[k - 1], c.betas[k]);
        }
}

TEST(Intersection, Examples) {
    const auto line = expand_branches(P("y - x"))[0];
    EXPECT_EQ(branch_intersection_multiplicity(line, P("y - x^2")), 1);
    const auto cusp = expand_branches(P("y^2 - x^3"))[0];
    EXPECT_EQ(branch_intersection_multiplicity(cusp, P("y")), 3);
    EXPECT_THROW(branch_intersection_multiplicity(cusp, P("y^2 - x^3")), InfiniteMultiplicity);
    const auto s = expand_branches(P(sextic))[0];
    EXPECT_THROW(branch_intersection_multiplicity(s, P(sextic)), InfiniteMultiplicity);
    EXPECT_EQ(branch_intersection_multiplicity(s, P("y")), 1);
}

TEST(Intersection, PloskiUltrametric) {
    const std::vector<const char*> curves = {
        "y - x^2", "y - x^2 - x^3", "y^2 - x^3", "y^2 - x^5", "y + x", "y - x^2 + x^4", "y^2 - x^3 - x^4", "y^3 - x^4",
    };
    const int n = static_cast<int>(curves.size());
    std::vector<PuiseuxBranch> br;
    std::vector<int> mult;
    for (auto* c : curves) {
        const auto bs = expand_branches(P(c), 12, Side::complex);
        ASSERT_EQ(bs.size(), 1u) << c;
        br.push_back(bs[0]);
        mult.push_back(P(c).order());
    }
    std::vector<std::vector<Rational>> u(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const int mij = branch_intersection_multiplicity(br[i], P(curves[j]));
            EXPECT_EQ(mij, branch_intersection_multiplicity(br[j], P(curves[i]))) << curves[i] << " / " << curves[j];
            u[i][j] = Rational(mij, mult[i] * mult[j]);
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (i == j || j == k || i == k) continue;
                EXPECT_GE(u[i][j], std::min(u[i][k], u[k][j])) << i << j << k;
            }
}

TEST(Field, SturmCount) {
    auto poly = [](std::vector<long> c) {
        std::vector<FieldElement> v(c.begin(), c.end());
        return FieldPolynomial(v);
    };
    EXPECT_EQ(detail::real_root_count(poly({1, 1, 1, 1, 1})), 0);
    EXPECT_EQ(detail::real_root_count(poly({-2, 0, 0, 1})), 1);
    EXPECT_EQ(detail::real_root_count(poly({6, 0, -7, 0, 0, 0, 1})), 4);
    EXPECT_EQ(detail::real_root_count(poly({0, -1, 0, 0, 0, 0, 0, 1})), 3);
    EXPECT_TRUE(nonzero_roots(poly({1, 1, 1, 1, 1}), true).empty());
    EXPECT_THROW(nonzero_roots(poly({1, 1, 1, 1, 1})), UnsupportedFieldExtension);
}
