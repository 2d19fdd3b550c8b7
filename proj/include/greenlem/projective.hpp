// Points of the projective line, rational maps and their homogeneous lifts.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "greenlem/error.hpp"
#include "greenlem/polynomial.hpp"

namespace greenlem {

/// A non-zero vector (z0, z1) of C^2, read as the point z1/z0 of P^1.
struct SpherePoint {
    cplx z0{1.0};
    cplx z1{};

    static SpherePoint affine(cplx z) { return {1.0, z}; }
    static SpherePoint infinity() { return {0.0, 1.0}; }

    bool is_infinity() const { return z0 == cplx{}; }
    cplx value() const { return z1 / z0; }
    double norm() const { return std::hypot(std::abs(z0), std::abs(z1)); }

    friend SpherePoint operator*(cplx c, const SpherePoint& p) { return {c * p.z0, c * p.z1}; }
    friend bool operator==(const SpherePoint&, const SpherePoint&) = default;
};

/// z0 w1 - z1 w0.
inline cplx wedge(const SpherePoint& p, const SpherePoint& q) { return p.z0 * q.z1 - p.z1 * q.z0; }

/// Chordal distance |p ^ q| / (|p| |q|), in [0, 1].
inline double chordal_distance(const SpherePoint& p, const SpherePoint& q) {
    return std::abs(wedge(p, q)) / (p.norm() * q.norm());
}

/// (sum_k a_k z0^(d-k) z1^k, sum_k b_k z0^(d-k) z1^k); missing coefficients are zero.
inline SpherePoint evaluate_homogeneous(std::span<const cplx> a, std::span<const cplx> b, int d, const SpherePoint& p) {
    cplx s0{}, s1{};
    cplx pw1{1.0};
    for (int k = 0; k <= d; ++k) {
        cplx m = pw1;
        for (int j = 0; j < d - k; ++j) m *= p.z0;
        if (k < static_cast<int>(a.size())) s0 += a[k] * m;
        if (k < static_cast<int>(b.size())) s1 += b[k] * m;
        pw1 *= p.z1;
    }
    return {s0, s1};
}

/// f(z) = numerator(z) / denominator(z) of degree d = max of the two degrees.
class RationalMap {
  public:
    /// Relative Sylvester-determinant threshold below which the two
    /// coefficient sequences are treated as sharing a root.
    static constexpr double kCoprimeTolerance = 1e-12;

    RationalMap(Poly numerator, Poly denominator)
        : numerator_(trimmed(numerator)), denominator_(trimmed(denominator)) {
        if (denominator_.empty()) throw DegenerateMap("rational map: denominator is identically zero");
        if (numerator_.empty()) throw DegenerateMap("rational map: numerator is identically zero");
        degree_ = std::max(greenlem::degree(numerator_), greenlem::degree(denominator_));
        if (degree_ < 2) throw DegenerateMap("rational map: degree must be at least 2, got " + std::to_string(degree_));
        const double r = std::abs(sylvester_resultant(denominator_, numerator_));
        if (!(r > kCoprimeTolerance * resultant_scale(denominator_, numerator_)))
            throw DegenerateMap("rational map: numerator and denominator share a root");
    }

    static RationalMap polynomial(Poly coeffs) { return RationalMap(std::move(coeffs), Poly{1.0}); }

    const Poly& numerator() const { return numerator_; }
    const Poly& denominator() const { return denominator_; }
    int degree() const { return degree_; }
    bool is_polynomial() const { return greenlem::degree(denominator_) == 0; }

    SpherePoint operator()(const SpherePoint& p) const;
    cplx operator()(cplx z) const { return evaluate(numerator_, z) / evaluate(denominator_, z); }

  private:
    Poly numerator_;
    Poly denominator_;
    int degree_ = 0;
};

/// F = (F0, F1) homogeneous of degree d with F0(1, z) = f0(z), F1(1, z) = f1(z).
struct HomogeneousLift {
    Poly f0;  // length d + 1
    Poly f1;  // length d + 1
    int d = 0;
    int d0 = 0;
    int d1 = 0;
    cplx aF{1.0};
    cplx bF{1.0};
    cplx scale{1.0};
    /// Twice the largest |log|F(u)|| seen on a grid of the unit sphere.
    double log_norm_bound = 0.0;

    SpherePoint operator()(const SpherePoint& p) const { return evaluate_homogeneous(f0, f1, d, p); }
};

inline SpherePoint RationalMap::operator()(const SpherePoint& p) const {
    return evaluate_homogeneous(denominator_, numerator_, degree_, p);
}

/// Grid estimate of sup |log|F(u)|| over the unit sphere of C^2 (mod phase),
/// doubled.  Strict mode refines the grid until the raw estimate moves by less
/// than one percent.
inline double estimate_log_norm_bound(const HomogeneousLift& F, bool strict = false) {
    auto grid_max = [&](int n) {
        double m = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double theta = 0.5 * std::numbers::pi * i / n;
            const double c = std::cos(theta), s = std::sin(theta);
            for (int j = 0; j < n; ++j) {
                const double phi = 2.0 * std::numbers::pi * j / n;
                const SpherePoint u{c, std::polar(s, phi)};
                m = std::max(m, std::abs(std::log(F(u).norm())));
            }
        }
        return m;
    };
    int n = 256;
    double raw = grid_max(n);
    if (strict) {
        for (int round = 0; round < 4; ++round) {
            n *= 2;
            const double next = grid_max(n);
            const bool stable = std::abs(next - raw) <= 0.01 * std::max(raw, 1e-300);
            raw = std::max(raw, next);
            if (stable) break;
        }
    }
    return 2.0 * raw;
}

/// Lift with F0(1, z) = denominator and F1(1, z) = numerator.
inline HomogeneousLift canonical_lift(const RationalMap& map) {
    HomogeneousLift F;
    F.d = map.degree();
    F.f0 = map.denominator();
    F.f1 = map.numerator();
    F.d0 = degree(F.f0);
    F.d1 = degree(F.f1);
    F.aF = F.f0[F.d0];
    F.bF = F.f1[F.d1];
    F.f0.resize(F.d + 1);
    F.f1.resize(F.d + 1);
    F.log_norm_bound = estimate_log_norm_bound(F);
    return F;
}

inline HomogeneousLift scale_lift(const HomogeneousLift& F, cplx c) {
    if (c == cplx{}) throw InvalidArgument("scale_lift: scale factor must be non-zero");
    HomogeneousLift out = F;
    for (auto& v : out.f0) v *= c;
    for (auto& v : out.f1) v *= c;
    out.aF *= c;
    out.bF *= c;
    out.scale *= c;
    out.log_norm_bound = estimate_log_norm_bound(out);
    return out;
}

/// Res F = aF^(d-d1) bF^(d-d0) R(F0(1,z), F1(1,z)).
inline cplx resultant(const HomogeneousLift& F) {
    const cplx r = sylvester_resultant(F.f0, F.f1);
    return std::pow(F.aF, F.d - F.d1) * std::pow(F.bF, F.d - F.d0) * r;
}

/// Points of f^-1(w) with multiplicities summing to d.
inline std::vector<std::pair<SpherePoint, int>> preimages(const RationalMap& map, const SpherePoint& w,
                                                          const RootOptions& opt = {}) {
    const int d = map.degree();
    const Poly& num = map.numerator();
    const Poly& den = map.denominator();
    // Solve w0 * num - w1 * den = 0 on the affine chart.
    Poly q(d + 1);
    for (std::size_t k = 0; k < num.size(); ++k) q[k] += w.z0 * num[k];
    for (std::size_t k = 0; k < den.size(); ++k) q[k] -= w.z1 * den[k];
    // A leading term that cancels to rounding level means a preimage at infinity.
    const double cutoff = 1e-14 * max_abs_coefficient(q);
    int top = degree(q);
    while (top > 0 && std::abs(q[top]) <= cutoff) --top;
    q.resize(top + 1);

    std::vector<std::pair<SpherePoint, int>> out;
    if (top >= 1)
        for (const auto& r : roots(q, opt)) out.emplace_back(SpherePoint::affine(r.value), r.multiplicity);
    if (top < d) out.emplace_back(SpherePoint::infinity(), d - top);
    return out;
}

inline std::vector<std::pair<SpherePoint, int>> preimages(const RationalMap& map, cplx w, const RootOptions& opt = {}) {
    return preimages(map, SpherePoint::affine(w), opt);
}

}  // namespace greenlem
