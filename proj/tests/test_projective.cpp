#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "greenlem/projective.hpp"

using namespace greenlem;

namespace {

cplx random_disk(std::mt19937_64& rng, double radius = 1.0) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return std::polar(radius * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
}

RationalMap random_map(std::mt19937_64& rng, int d) {
    for (;;) {
        Poly num(d + 1), den(d + 1);
        for (auto& c : num) c = random_disk(rng);
        for (auto& c : den) c = random_disk(rng);
        try {
            RationalMap f(num, den);
            if (std::abs(resultant(canonical_lift(f))) > 1e-6) return f;
        } catch (const DegenerateMap&) {
        }
    }
}

}  // namespace

TEST(CanonicalLift, Monomial) {
    const auto F = canonical_lift(RationalMap::polynomial({0.0, 0.0, 1.0}));
    EXPECT_EQ(F.d, 2);
    EXPECT_EQ(F.d0, 0);
    EXPECT_EQ(F.d1, 2);
    EXPECT_EQ(F.aF, cplx(1.0));
    EXPECT_EQ(F.bF, cplx(1.0));
    EXPECT_EQ(F.scale, cplx(1.0));
    const auto v = F({2.0, 3.0});
    EXPECT_EQ(v.z0, cplx(4.0));
    EXPECT_EQ(v.z1, cplx(9.0));
}

TEST(CanonicalLift, CubicOverLinear) {
    // (z^3 + 1) / z  ->  (z0^2 z1, z1^3 + z0^3)
    const auto F = canonical_lift(RationalMap({1.0, 0.0, 0.0, 1.0}, {0.0, 1.0}));
    EXPECT_EQ(F.d, 3);
    EXPECT_EQ(F.d0, 1);
    EXPECT_EQ(F.d1, 3);
    EXPECT_EQ(F.aF, cplx(1.0));
    EXPECT_EQ(F.bF, cplx(1.0));
    const auto v = F({2.0, 3.0});
    EXPECT_EQ(v.z0, cplx(12.0));
    EXPECT_EQ(v.z1, cplx(35.0));
}

TEST(RationalMapValidation, RejectsDegenerateInput) {
    EXPECT_THROW(RationalMap({0.0, 1.0}, {0.0, 1.0}), DegenerateMap);            // z / z
    EXPECT_THROW(RationalMap({0.0, 0.0, 1.0}, {0.0, 1.0}), DegenerateMap);       // z^2 / z
    EXPECT_THROW(RationalMap({1.0, 0.0, 1.0}, {0.0, 0.0}), DegenerateMap);       // zero denominator
    EXPECT_THROW(RationalMap({1.0, 2.0}, {3.0}), DegenerateMap);                 // degree 1
    EXPECT_NO_THROW(RationalMap({1.0, 0.0, 0.0, 1.0}, {0.0, 1.0}));
}

TEST(ScaleLift, IdentityAndCoefficients) {
    const auto F = canonical_lift(RationalMap::polynomial({0.0, 0.0, 1.0}));
    const auto same = scale_lift(F, 1.0);
    EXPECT_EQ(same.f0, F.f0);
    EXPECT_EQ(same.f1, F.f1);
    EXPECT_EQ(same.scale, cplx(1.0));

    const auto twice = scale_lift(F, 2.0);
    const auto v = twice({1.0, 3.0});
    EXPECT_EQ(v.z0, cplx(2.0));
    EXPECT_EQ(v.z1, cplx(18.0));
    EXPECT_EQ(twice.scale, cplx(2.0));
    EXPECT_THROW(scale_lift(F, 0.0), InvalidArgument);
}

TEST(ScaleLift, ResultantScalesByPowerTwoD) {
    const auto F = canonical_lift(RationalMap::polynomial({0.0, 0.0, 1.0}));
    EXPECT_NEAR(std::abs(resultant(scale_lift(F, 3.0))), 81.0, 1e-12);
}

TEST(Wedge, Examples) {
    EXPECT_EQ(wedge({1.0, 2.0}, {0.0, 1.0}), cplx(1.0));
    EXPECT_EQ(wedge({1.0, cplx(0.3, 0.4)}, {1.0, cplx(0.3, 0.4)}), cplx{});
    EXPECT_EQ(wedge({0.0, 1.0}, {1.0, 0.0}), cplx(-1.0));
}

TEST(Resultant, Examples) {
    EXPECT_NEAR(std::abs(resultant(canonical_lift(RationalMap::polynomial({0.0, 0.0, 1.0})))), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(resultant(canonical_lift(RationalMap::polynomial({0.0, 0.0, 2.0})))), 4.0, 1e-15);
    EXPECT_NEAR(std::abs(resultant(canonical_lift(RationalMap({1.0, 0.0, 0.0, 1.0}, {0.0, 1.0})))), 1.0, 1e-15);
}

TEST(Preimages, Examples) {
    const auto sq = RationalMap::polynomial({0.0, 0.0, 1.0});
    auto pre = preimages(sq, 4.0);
    ASSERT_EQ(pre.size(), 2u);
    for (const auto& [z, m] : pre) {
        EXPECT_EQ(m, 1);
        EXPECT_NEAR(std::abs(z.value()), 2.0, 1e-14);
        EXPECT_NEAR(z.value().imag(), 0.0, 1e-14);
    }
    EXPECT_NEAR((pre[0].first.value() + pre[1].first.value()).real(), 0.0, 1e-14);

    pre = preimages(sq, SpherePoint::infinity());
    ASSERT_EQ(pre.size(), 1u);
    EXPECT_TRUE(pre[0].first.is_infinity());
    EXPECT_EQ(pre[0].second, 2);

    pre = preimages(RationalMap({1.0, 0.0, 0.0, 1.0}, {0.0, 1.0}), SpherePoint::infinity());
    ASSERT_EQ(pre.size(), 2u);
    EXPECT_EQ(pre[0].first.value(), cplx{});
    EXPECT_EQ(pre[0].second, 1);
    EXPECT_TRUE(pre[1].first.is_infinity());
    EXPECT_EQ(pre[1].second, 2);
}

TEST(Preimages, AffineTargetEqualToValueAtInfinity) {
    // f = (2z^2 + 1) / (z^2 - 3) has f(inf) = 2, so f^-1(2) contains infinity.
    const RationalMap f({1.0, 0.0, 2.0}, {-3.0, 0.0, 1.0});
    const auto pre = preimages(f, 2.0);
    int at_inf = 0, total = 0;
    for (const auto& [z, m] : pre) {
        total += m;
        if (z.is_infinity()) at_inf += m;
    }
    EXPECT_EQ(total, 2);
    EXPECT_EQ(at_inf, 2);
}

TEST(Preimages, MultiplicitiesSumToDegreeAndMapBack) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const auto f = random_map(rng, 2 + trial % 3);
        for (int k = 0; k < 100; ++k) {
            const cplx w = random_disk(rng, 3.0);
            int total = 0;
            for (const auto& [z, m] : preimages(f, w)) {
                total += m;
                if (!z.is_infinity()) EXPECT_LT(chordal_distance(f(z), SpherePoint::affine(w)), 1e-9);
            }
            EXPECT_EQ(total, f.degree());
        }
    }
}

TEST(Wedge, AntisymmetryIsExact) {
    std::mt19937_64 rng(9);
    for (int k = 0; k < 1000; ++k) {
        const SpherePoint p{random_disk(rng, 5.0), random_disk(rng, 5.0)};
        const SpherePoint q{random_disk(rng, 5.0), random_disk(rng, 5.0)};
        EXPECT_EQ(wedge(p, q), -wedge(q, p));
    }
}

TEST(Resultant, ScalingProperty) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 60; ++trial) {
        const int d = 2 + trial % 3;
        const auto F = canonical_lift(random_map(rng, d));
        const cplx c = random_disk(rng, 2.0) + cplx(0.1, 0.0);
        const double ratio = std::abs(resultant(scale_lift(F, c))) / std::abs(resultant(F));
        EXPECT_NEAR(ratio / std::pow(std::abs(c), 2 * d), 1.0, 1e-9);
    }
}

TEST(LogNormBound, DominatesSphereSamples) {
    std::mt19937_64 rng(17);
    const auto F = canonical_lift(random_map(rng, 3));
    for (int k = 0; k < 2000; ++k) {
        SpherePoint u{random_disk(rng), random_disk(rng)};
        const double n = u.norm();
        u = {u.z0 / n, u.z1 / n};
        EXPECT_LE(std::abs(std::log(F(u).norm())), F.log_norm_bound);
    }
    EXPECT_GE(estimate_log_norm_bound(F, true), F.log_norm_bound * 0.99);
}
