#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "greenlem/polynomial.hpp"

using namespace greenlem;

namespace {

cplx random_disk(std::mt19937_64& rng, double radius = 1.0) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return std::polar(radius * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
}

// Expands roots into a flat multiset.
std::vector<cplx> flatten(const std::vector<Root>& rs) {
    std::vector<cplx> out;
    for (const auto& r : rs)
        for (int k = 0; k < r.multiplicity; ++k) out.push_back(r.value);
    return out;
}

// Greedy matching of two multisets within tol.
bool same_multiset(std::vector<cplx> a, std::vector<cplx> b, double tol) {
    if (a.size() != b.size()) return false;
    for (const auto& x : a) {
        auto it = std::min_element(b.begin(), b.end(), [&](cplx p, cplx q) { return std::abs(p - x) < std::abs(q - x); });
        if (it == b.end() || std::abs(*it - x) > tol) return false;
        b.erase(it);
    }
    return true;
}

}  // namespace

TEST(Roots, SimpleQuadratic) {
    const auto rs = roots(Poly{-4.0, 0.0, 1.0});
    ASSERT_EQ(rs.size(), 2u);
    EXPECT_TRUE(same_multiset(flatten(rs), {2.0, -2.0}, 1e-14));
    for (const auto& r : rs) EXPECT_EQ(r.multiplicity, 1);
}

TEST(Roots, ZeroRootMultiplicity) {
    const auto rs = roots(Poly{0.0, 0.0, 1.0});
    ASSERT_EQ(rs.size(), 1u);
    EXPECT_EQ(rs[0].value, cplx{});
    EXPECT_EQ(rs[0].multiplicity, 2);
}

TEST(Roots, CubeRootsOfMinusOne) {
    const Poly p{1.0, 0.0, 0.0, 1.0};
    const auto rs = roots(p);
    const std::vector<cplx> expected{std::polar(1.0, std::numbers::pi / 3), -1.0, std::polar(1.0, -std::numbers::pi / 3)};
    EXPECT_TRUE(same_multiset(flatten(rs), expected, 1e-14));
    for (const auto& r : rs) EXPECT_LE(std::abs(evaluate(p, r.value)), 1e-12);
}

TEST(Roots, DoubleRootIsMerged) {
    const cplx rts[] = {1.0, 1.0, -2.0};
    const auto rs = roots(from_roots(rts));
    ASSERT_EQ(rs.size(), 2u);
    int total = 0;
    for (const auto& r : rs) {
        total += r.multiplicity;
        if (r.multiplicity == 2) {
            EXPECT_NEAR(std::abs(r.value - 1.0), 0.0, 1e-9);
        }
    }
    EXPECT_EQ(total, 3);
}

TEST(Roots, RejectsConstants) {
    EXPECT_THROW(roots(Poly{3.0}), InvalidArgument);
    EXPECT_THROW(roots(Poly{0.0, 0.0}), InvalidArgument);
}

TEST(Roots, MultiplicitiesSumToDegreeAndResidualsAreSmall) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 12;
        Poly p(n + 1);
        for (auto& c : p) c = random_disk(rng, 3.0);
        const auto rs = roots(p);
        int total = 0;
        for (const auto& r : rs) {
            total += r.multiplicity;
            EXPECT_LE(std::abs(evaluate(p, r.value)), 1e-12 * magnitude_scale(p, std::abs(r.value)));
        }
        EXPECT_EQ(total, n);
    }
}

TEST(Roots, ProductRootsAreUnionOfFactorRoots) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> deg(1, 4);
    for (int trial = 0; trial < 100; ++trial) {
        Poly p(deg(rng) + 1), q(deg(rng) + 1);
        for (auto& c : p) c = random_disk(rng);
        for (auto& c : q) c = random_disk(rng);
        auto union_roots = flatten(roots(p));
        const auto rq = flatten(roots(q));
        union_roots.insert(union_roots.end(), rq.begin(), rq.end());
        const auto pq = flatten(roots(multiply(p, q)));
        double scale = 1.0;
        for (const auto& r : union_roots) scale = std::max(scale, std::abs(r));
        EXPECT_TRUE(same_multiset(pq, union_roots, 1e-7 * scale)) << "trial " << trial;
    }
}

TEST(SylvesterResultant, MatchesRootProductOracle) {
    // R(P, Q) = lead(P)^deg Q * prod_{P(a)=0} Q(a), with P built from known roots.
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 1 + trial % 4, n = 1 + (trial / 4) % 4;
        std::vector<cplx> rts(m);
        for (auto& r : rts) r = random_disk(rng, 1.5);
        const cplx lead = random_disk(rng) + 0.5;
        const Poly p = from_roots(rts, lead);
        Poly q(n + 1);
        for (auto& c : q) c = random_disk(rng);
        cplx oracle = std::pow(lead, n);
        for (const auto& r : rts) oracle *= evaluate(q, r);
        const cplx got = sylvester_resultant(p, q);
        EXPECT_LE(std::abs(got - oracle), 1e-10 * std::max(1.0, std::abs(oracle))) << "trial " << trial;
    }
}

TEST(SylvesterResultant, ConstantArgumentConvention) {
    EXPECT_EQ(sylvester_resultant(Poly{1.0}, Poly{0.0, 0.0, 2.0}), cplx(1.0));
    EXPECT_NEAR(std::abs(sylvester_resultant(Poly{3.0}, Poly{1.0, 0.0, 1.0}) - 9.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(sylvester_resultant(Poly{1.0, 0.0, 1.0}, Poly{2.0}) - 4.0), 0.0, 1e-15);
}

TEST(SylvesterResultant, CommonRootGivesZero) {
    // z(z - 1) and z(z + 2)
    EXPECT_NEAR(std::abs(sylvester_resultant(Poly{0.0, -1.0, 1.0}, Poly{0.0, 2.0, 1.0})), 0.0, 1e-15);
}
