#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "greenlem/green.hpp"

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

// Independent escape-rate oracle on the affine chart: along z_j = f^j(z),
//   G(1, z) = sum_{j<k} d^-(j+1) log|F0(1, z_j)| + d^-k G(1, z_k),
// and G(1, w) -> log|w| + G(0, 1) as w -> infinity.  Valid for escaping z
// when G(0, 1) = 0.
double affine_escape_oracle(const RationalMap& f, cplx z, int k) {
    const double d = f.degree();
    double g = 0.0, w = 1.0;
    for (int j = 0; j < k; ++j) {
        w /= d;
        g += w * std::log(std::abs(evaluate(f.denominator(), z)));
        z = f(z);
    }
    return g + w * std::log(std::abs(z));
}

const auto kSquare = RationalMap::polynomial({0.0, 0.0, 1.0});
const auto kTwoSquare = RationalMap::polynomial({0.0, 0.0, 2.0});
const auto kCubicOverLinear = RationalMap({1.0, 0.0, 0.0, 1.0}, {0.0, 1.0});

}  // namespace

TEST(Green, MonomialClosedForm) {
    const auto F = canonical_lift(kSquare);
    for (cplx z : {cplx(0.0), cplx(0.5, 0.5), cplx(0.0, 1.0), cplx(-0.99, 0.0)}) {
        const auto g = green_affine(F, z);
        EXPECT_NEAR(g.value, 0.0, g.err_bound + 1e-14) << z;
    }
    for (cplx z : {cplx(1.5, 0.0), cplx(-3.0, 4.0), cplx(0.0, 10.0)}) {
        const auto g = green_affine(F, z);
        EXPECT_NEAR(g.value, std::log(std::abs(z)), g.err_bound + 1e-14) << z;
    }
    const auto g4 = green_affine(F, 4.0);
    EXPECT_NEAR(g4.value, std::log(4.0), g4.err_bound + 1e-14);
    EXPECT_LE(g4.err_bound, kDefaultGreenTol);
}

TEST(Green, AtInfinity) {
    EXPECT_NEAR(green_at_infinity(canonical_lift(kSquare)).value, 0.0, 1e-15);
    const auto g = green_at_infinity(canonical_lift(kTwoSquare));
    EXPECT_NEAR(g.value, std::log(2.0), g.err_bound + 1e-15);
    EXPECT_NEAR(green_at_infinity(canonical_lift(kCubicOverLinear)).value, 0.0, 1e-15);
}

TEST(Green, BoundedOrbitHasZeroGreen) {
    const auto g = green_affine(canonical_lift(kSquare), 0.0);
    EXPECT_NEAR(g.value, 0.0, g.err_bound);
}

TEST(Green, RationalMapAgainstAffineOracle) {
    const auto F = canonical_lift(kCubicOverLinear);
    const auto g = green_affine(F, 10.0, 1e-12);
    const double oracle = affine_escape_oracle(kCubicOverLinear, 10.0, 7);
    EXPECT_NEAR(g.value, oracle, 1e-10);
    EXPECT_NEAR(g.value, std::log(10.0), 0.01);
}

TEST(Green, QuadraticPolynomialAgainstAffineOracle) {
    const auto f = RationalMap::polynomial({cplx(-0.7, 0.2), 0.0, 1.0});
    const auto F = canonical_lift(f);
    for (cplx z : {cplx(1.8, 0.3), cplx(-2.5, 1.0), cplx(0.1, 3.0)}) {
        EXPECT_NEAR(green_affine(F, z, 1e-12).value, affine_escape_oracle(f, z, 9), 1e-10) << z;
    }
}

TEST(Green, TolerancesAndErrors) {
    const auto F = canonical_lift(kTwoSquare);
    const auto tight = green(F, {1.0, 0.3}, 1e-300);
    EXPECT_FALSE(tight.converged);
    EXPECT_EQ(tight.steps, kGreenStepCap);
    EXPECT_GT(tight.err_bound, 0.0);
    EXPECT_THROW(green(F, {1.0, 0.3}, 0.0), InvalidArgument);
    EXPECT_THROW(green(F, {0.0, 0.0}), InvalidArgument);
}

TEST(Green, TailBoundIsMonotone) {
    std::mt19937_64 rng(1);
    const auto F = canonical_lift(random_map(rng, 3));
    for (int k = 0; k < 100; ++k) EXPECT_LE(green_tail_bound(F, k + 1), green_tail_bound(F, k));
    for (double tol : {1e-4, 1e-8, 1e-12}) {
        const auto g = green(F, {0.3, 1.2}, tol);
        EXPECT_LE(g.err_bound, tol);
        EXPECT_EQ(g.err_bound, green_tail_bound(F, g.steps));
        if (g.steps > 0) {
            EXPECT_GT(green_tail_bound(F, g.steps - 1), tol);
        }
    }
}

class GreenIdentities : public ::testing::Test {
  protected:
    std::mt19937_64 rng{2024};
    std::vector<RationalMap> maps;

    void SetUp() override {
        maps = {kSquare, kTwoSquare, kCubicOverLinear};
        for (int k = 0; k < 6; ++k) maps.push_back(random_map(rng, 2 + k % 3));
    }
    SpherePoint random_point() { return {random_disk(rng, 3.0), random_disk(rng, 3.0)}; }
};

TEST_F(GreenIdentities, Invariance) {
    for (const auto& f : maps) {
        const auto F = canonical_lift(f);
        for (int k = 0; k < 500 / static_cast<int>(maps.size()) + 1; ++k) {
            const auto p = random_point();
            const auto g = green(F, p);
            const auto gf = green(F, F(p));
            EXPECT_LE(std::abs(gf.value - F.d * g.value), gf.err_bound + F.d * g.err_bound + 1e-9);
        }
    }
}

TEST_F(GreenIdentities, Scaling) {
    for (const auto& f : maps) {
        const auto F = canonical_lift(f);
        for (int k = 0; k < 60; ++k) {
            const auto p = random_point();
            const cplx c = random_disk(rng, 5.0) + cplx(0.01, 0.0);
            const auto g = green(F, p);
            const auto gc = green(F, c * p);
            EXPECT_LE(std::abs(gc.value - g.value - std::log(std::abs(c))), gc.err_bound + g.err_bound + 1e-12);
        }
    }
}

TEST_F(GreenIdentities, LiftChange) {
    for (const auto& f : maps) {
        const auto F = canonical_lift(f);
        for (int k = 0; k < 5; ++k) {
            const cplx c = random_disk(rng, 4.0) + cplx(0.05, 0.0);
            const auto cF = scale_lift(F, c);
            for (int j = 0; j < 12; ++j) {
                const auto p = random_point();
                const auto g = green(F, p);
                const auto gl = green(cF, p);
                EXPECT_LE(std::abs(gl.value - g.value - std::log(std::abs(c)) / (F.d - 1)),
                          gl.err_bound + g.err_bound + 1e-9);
            }
        }
    }
}
