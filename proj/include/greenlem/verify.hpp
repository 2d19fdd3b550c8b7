// Numerical checks of the potential-theoretic identities satisfied by the
// balanced measure, Green function and homogeneous resultant of a map, plus a
// lemniscate-based polynomial discriminator.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "greenlem/error.hpp"
#include "greenlem/green.hpp"
#include "greenlem/measure.hpp"
#include "greenlem/projective.hpp"
#include "greenlem/random.hpp"

namespace greenlem {

struct InputsDigest {
    std::string map;
    std::uint64_t seed = 0;
    std::size_t sample_size = 0;
    int depth = 0;
    std::size_t probes = 0;
};

struct VerificationReport {
    std::string identity;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    InputsDigest inputs;
    std::size_t skipped = 0;
    std::vector<std::pair<std::string, double>> details;
};

inline VerificationReport make_report(std::string identity, double residual, double tolerance, InputsDigest inputs) {
    VerificationReport r;
    r.identity = std::move(identity);
    r.residual = residual;
    r.tolerance = tolerance;
    r.pass = residual <= tolerance;  // NaN fails
    r.inputs = std::move(inputs);
    return r;
}

/// FNV-1a over the coefficient bytes.
inline std::string map_digest(const RationalMap& map) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto feed = [&](const Poly& p) {
        for (const auto& c : p) {
            const double parts[2] = {c.real(), c.imag()};
            unsigned char bytes[sizeof parts];
            std::memcpy(bytes, parts, sizeof parts);
            for (unsigned char b : bytes) {
                h ^= b;
                h *= 0x100000001b3ull;
            }
        }
        h ^= 0xff;
        h *= 0x100000001b3ull;
    };
    feed(map.numerator());
    feed(map.denominator());
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a:") + buf;
}

struct SamplingPlan {
    SampleMethod method = SampleMethod::Walk;
    int depth = 12;
    std::size_t count = 4096;
    std::size_t burn_in = kDefaultBurnIn;
    std::uint64_t seed = 0;
    std::optional<SpherePoint> base;
};

inline DiscreteMeasure sample(const RationalMap& map, const SamplingPlan& plan) {
    const SpherePoint a = plan.base ? *plan.base : default_base(map);
    if (plan.method == SampleMethod::Tree) return sample_tree(map, a, plan.depth);
    return sample_walk(map, a, plan.count, plan.burn_in, plan.seed);
}

inline InputsDigest digest_for(const RationalMap& map, const SamplingPlan& plan, std::size_t probes) {
    InputsDigest in;
    in.map = map_digest(map);
    in.seed = plan.seed;
    in.probes = probes;
    if (plan.method == SampleMethod::Tree) {
        in.depth = plan.depth;
    } else {
        in.sample_size = plan.count;
    }
    return in;
}

/// n points r e^{2 pi i (k + 1/2) / n}.
inline std::vector<cplx> circle_probes(double radius, std::size_t n) {
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = std::polar(radius, 2.0 * std::numbers::pi * (k + 0.5) / n);
    return out;
}

/// n points uniform in the disk |z| < radius, drawn from stream 1 of `seed`.
inline std::vector<cplx> disk_probes(double radius, std::size_t n, std::uint64_t seed) {
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double r = radius * std::sqrt(counter_uniform(seed, 1, 2 * k));
        const double t = 2.0 * std::numbers::pi * counter_uniform(seed, 1, 2 * k + 1);
        out[k] = std::polar(r, t);
    }
    return out;
}

/// n vectors of C^2 with components uniform in the square [-2, 2]^2, stream 2.
inline std::vector<SpherePoint> vector_probes(std::size_t n, std::uint64_t seed) {
    std::vector<SpherePoint> out(n);
    auto u = [&](std::size_t k) { return 4.0 * counter_uniform(seed, 2, k) - 2.0; };
    for (std::size_t k = 0; k < n; ++k) out[k] = {cplx(u(4 * k), u(4 * k + 1)), cplx(u(4 * k + 2), u(4 * k + 3))};
    return out;
}

/// (1 / (d (d - 1))) log|Res F| - 2 G(0, 1), the closed form of the energy.
inline double energy_formula(const HomogeneousLift& F, double green_tol = 1e-12) {
    return std::log(std::abs(resultant(F))) / (F.d * (F.d - 1.0)) - 2.0 * green_at_infinity(F, green_tol).value;
}

/// Potential of the balanced measure via the Green function: G(1, z) - G(0, 1).
inline double green_potential(const HomogeneousLift& F, cplx z, double green_tol = 1e-12) {
    return green_affine(F, z, green_tol).value - green_at_infinity(F, green_tol).value;
}

inline VerificationReport check_decomp(const RationalMap& map, const std::vector<cplx>& probes,
                                       const SamplingPlan& plan, double tol = 0.05) {
    const auto F = canonical_lift(map);
    const auto mu = sample(map, plan);
    const double g_inf = green_at_infinity(F, 1e-12).value;
    double residual = 0.0;
    std::size_t skipped = 0;
    for (const auto& z : probes) {
        const auto p = potential(mu, z);
        skipped += p.skipped;
        residual = std::max(residual, std::abs(p.value - (green_affine(F, z, 1e-12).value - g_inf)));
    }
    auto r = make_report("decomp", residual, tol, digest_for(map, plan, probes.size()));
    r.skipped = skipped;
    return r;
}

inline VerificationReport check_energy(const RationalMap& map, const SamplingPlan& plan, double tol = 0.05) {
    const auto F = canonical_lift(map);
    const auto e = energy(sample(map, plan));
    const double formula = energy_formula(F);
    auto r = make_report("energy", std::abs(e.value - formula), tol, digest_for(map, plan, 0));
    r.skipped = e.pairs_skipped;
    r.details = {{"sampled", e.value}, {"formula", formula}};
    return r;
}

/// p(f(z)) = d p(z) - log|F0(1, z)| + (d - 1) G(0, 1), both sides with the
/// Green-based potential.  Probes within 1e-6 of a pole are skipped.
inline VerificationReport check_pullback(const RationalMap& map, const std::vector<cplx>& probes, double tol = 1e-8) {
    constexpr double gt = 1e-12;
    const auto F = canonical_lift(map);
    std::vector<cplx> poles;
    for (const auto& [p, m] : preimages(map, SpherePoint::infinity()))
        if (!p.is_infinity()) poles.push_back(p.value());
    const double g_inf = green_at_infinity(F, gt).value;
    const double d = F.d;
    double residual = 0.0;
    std::size_t skipped = 0;
    for (const auto& z : probes) {
        bool near_pole = false;
        for (const auto& p : poles) near_pole |= std::abs(z - p) < 1e-6 * std::max(1.0, std::abs(p));
        const cplx f0 = evaluate(F.f0, z);
        if (near_pole || f0 == cplx{}) {
            ++skipped;
            continue;
        }
        const double lhs = green_affine(F, map(z), gt).value - g_inf;
        const double rhs = d * (green_affine(F, z, gt).value - g_inf) - std::log(std::abs(f0)) + (d - 1.0) * g_inf;
        residual = std::max(residual, std::abs(lhs - rhs));
    }
    InputsDigest in;
    in.map = map_digest(map);
    in.probes = probes.size();
    auto r = make_report("pullback", residual, tol, in);
    r.skipped = skipped;
    return r;
}

struct LemniscateStat {
    /// exp((d - 1)(I + G(0, 1))) with I from the resultant formula.
    double level = 1.0;
    /// max over affine sample atoms of |log|F0(1, z)| - log level|.
    double deviation = 0.0;
    std::size_t n_samples = 0;
};

/// log of the lemniscate level, log|Res F| / d - (d - 1) G(0, 1).
inline double lemniscate_log_level(const HomogeneousLift& F, double green_tol = 1e-12) {
    return (F.d - 1.0) * (energy_formula(F, green_tol) + green_at_infinity(F, green_tol).value);
}

inline LemniscateStat lemniscate_stat(const RationalMap& map, const DiscreteMeasure& julia_sample,
                                      double green_tol = 1e-12) {
    const auto F = canonical_lift(map);
    const double log_level = lemniscate_log_level(F, green_tol);
    LemniscateStat s;
    s.level = std::exp(log_level);
    for (const auto& p : julia_sample.points) {
        if (p.is_infinity()) continue;
        const double v = std::log(std::abs(evaluate(F.f0, p.value())));
        s.deviation = std::max(s.deviation, std::abs(v - log_level));
        ++s.n_samples;
    }
    return s;
}

struct DiscriminatorThresholds {
    double low = 0.02;
    double high = 0.2;
};

enum class Classification { PolynomialConsistent, Inconclusive, NonPolynomial };

inline const char* to_string(Classification c) {
    switch (c) {
        case Classification::PolynomialConsistent: return "polynomial-consistent";
        case Classification::NonPolynomial: return "non-polynomial";
        default: return "inconclusive";
    }
}

struct Discrimination {
    Classification classification = Classification::Inconclusive;
    LemniscateStat stat;
    /// The syntactic criterion: F0(1, z) is constant.
    bool syntactic_polynomial = false;
};

/// Assumes, without checking, that infinity lies in a fixed Fatou component.
inline Discrimination discriminate_polynomial(const RationalMap& map, const DiscriminatorThresholds& thresholds = {},
                                              const SamplingPlan& plan = {}) {
    Discrimination out;
    out.stat = lemniscate_stat(map, sample(map, plan));
    out.syntactic_polynomial = map.is_polynomial();
    if (out.stat.deviation < thresholds.low)
        out.classification = Classification::PolynomialConsistent;
    else if (out.stat.deviation > thresholds.high)
        out.classification = Classification::NonPolynomial;
    return out;
}

/// Passes when the discriminator agrees with the syntactic criterion.
inline VerificationReport check_lemniscate(const RationalMap& map, const DiscriminatorThresholds& thresholds = {},
                                           const SamplingPlan& plan = {}) {
    const auto dis = discriminate_polynomial(map, thresholds, plan);
    const auto expected = dis.syntactic_polynomial ? Classification::PolynomialConsistent : Classification::NonPolynomial;
    auto r = make_report("lemniscate", dis.classification == expected ? 0.0 : 1.0, 0.0, digest_for(map, plan, 0));
    r.details = {{"deviation", dis.stat.deviation},
                 {"level", dis.stat.level},
                 {"syntactic_polynomial", dis.syntactic_polynomial ? 1.0 : 0.0}};
    return r;
}

/// Three closed forms of the capacity e^I of a polynomial's Julia set.
inline VerificationReport check_brolin(const RationalMap& map, double tol = 1e-10) {
    if (!map.is_polynomial()) throw InvalidArgument("check_brolin: map is not a polynomial");
    const auto F = canonical_lift(map);
    const double d = F.d;
    const double ratio = std::abs(F.aF / F.bF);
    const double via_resultant =
        std::exp(-2.0 * green_at_infinity(F, 1e-14).value) * std::pow(std::abs(resultant(F)), 1.0 / (d * (d - 1.0)));
    const double via_leading = std::pow(ratio, 1.0 / (d - 1.0));
    const double via_harmonic = std::pow(std::abs(F.bF / F.aF), -1.0 / (d - 1.0));
    const double hi = std::max({via_resultant, via_leading, via_harmonic});
    const double lo = std::min({via_resultant, via_leading, via_harmonic});
    InputsDigest in;
    in.map = map_digest(map);
    auto r = make_report("brolin", (hi - lo) / hi, tol, in);
    r.details = {{"via_resultant", via_resultant}, {"via_leading", via_leading}, {"via_harmonic", via_harmonic}};
    return r;
}

/// F^-1(0, 1) (axis = 1) or F^-1(1, 0) (axis = 0) in C^2, with multiplicities
/// summing to d^2.
inline std::vector<std::pair<SpherePoint, int>> fiber(const HomogeneousLift& F, int axis) {
    // Points where the other coordinate vanishes, and the remaining one is 1.
    const Poly& vanishing = axis == 1 ? F.f0 : F.f1;
    const Poly& target = axis == 1 ? F.f1 : F.f0;
    const int dv = axis == 1 ? F.d0 : F.d1;
    std::vector<std::pair<SpherePoint, int>> out;
    auto add_roots_of_unity = [&](const SpherePoint& base, cplx value, int mult) {
        // t^d value = 1
        const double mod = std::pow(std::abs(value), -1.0 / F.d);
        const double arg = -std::arg(value) / F.d;
        for (int k = 0; k < F.d; ++k) {
            const cplx t = std::polar(mod, arg + 2.0 * std::numbers::pi * k / F.d);
            out.emplace_back(t * base, mult);
        }
    };
    if (dv >= 1)
        for (const auto& r : roots(trimmed(vanishing)))
            add_roots_of_unity(SpherePoint::affine(r.value), evaluate(target, r.value), r.multiplicity);
    if (dv < F.d) add_roots_of_unity(SpherePoint::infinity(), target[F.d], F.d - dv);
    return out;
}

/// |F(p) ^ (0,1)| = |Res F|^(1/d) prod_{q in F^-1(0,1)} |p ^ q|^(1/d), in logs.
inline VerificationReport check_factorization(const RationalMap& map, const std::vector<SpherePoint>& probes,
                                              double tol = 1e-8) {
    const auto F = canonical_lift(map);
    const auto fib = fiber(F, 1);
    const double log_res = std::log(std::abs(resultant(F)));
    double residual = 0.0;
    std::size_t skipped = 0;
    for (const auto& p : probes) {
        const cplx f0 = F(p).z0;
        if (f0 == cplx{}) {
            ++skipped;
            continue;
        }
        double rhs = log_res;
        for (const auto& [q, m] : fib) rhs += m * std::log(std::abs(wedge(p, q)));
        rhs /= F.d;
        residual = std::max(residual, std::abs(std::log(std::abs(f0)) - rhs));
    }
    InputsDigest in;
    in.map = map_digest(map);
    in.probes = probes.size();
    auto r = make_report("factorization", residual, tol, in);
    r.skipped = skipped;
    return r;
}

/// |Res F| = prod_{p in F^-1(1,0), q in F^-1(0,1)} |p ^ q|^(-1/d^2).
inline double resultant_product(const RationalMap& map) {
    const auto F = canonical_lift(map);
    const auto a = fiber(F, 0);
    const auto b = fiber(F, 1);
    double s = 0.0;
    for (const auto& [p, mp] : a)
        for (const auto& [q, mq] : b) s += mp * mq * std::log(std::abs(wedge(p, q)));
    return std::exp(-s / (static_cast<double>(F.d) * F.d));
}

inline VerificationReport check_resultant_product(const RationalMap& map, double tol = 1e-6) {
    const double sylvester = std::abs(resultant(canonical_lift(map)));
    const double product = resultant_product(map);
    InputsDigest in;
    in.map = map_digest(map);
    auto r = make_report("resultant-product", std::abs(product - sylvester) / sylvester, tol, in);
    r.details = {{"sylvester", sylvester}, {"product", product}};
    return r;
}

/// U_{F, mu} over the probes: residual is max(std, |mean - V_F|).
inline VerificationReport check_v_constant(const RationalMap& map, const std::vector<cplx>& probes,
                                           const SamplingPlan& plan, double tol = 0.05) {
    const auto F = canonical_lift(map);
    const auto mu = sample(map, plan);
    const WeightedPotential U(F, mu);
    std::vector<double> values;
    std::size_t skipped = 0;
    for (const auto& z : probes) {
        const auto u = U(SpherePoint::affine(z));
        skipped += u.skipped;
        values.push_back(u.value);
    }
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= values.size();
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / values.size());
    const double vf = v_constant(F);
    auto r = make_report("v-constant", std::max(sd, std::abs(mean - vf)), tol, digest_for(map, plan, probes.size()));
    r.skipped = skipped;
    r.details = {{"mean", mean}, {"std", sd}, {"v_constant", vf}};
    return r;
}

/// Invariance, scaling and lift-change identities of the Green function at
/// the given points; each residual is max(|defect| - combined err_bound).
inline std::vector<VerificationReport> check_green_identities(const RationalMap& map,
                                                              const std::vector<SpherePoint>& points,
                                                              std::uint64_t seed = 0, double tol = 1e-9) {
    const auto F = canonical_lift(map);
    const double d = F.d;
    const cplx c_lift(1.7, -0.6);
    const auto cF = scale_lift(F, c_lift);
    double inv = -std::numeric_limits<double>::infinity(), scal = inv, lift = inv;
    for (std::size_t k = 0; k < points.size(); ++k) {
        const auto& p = points[k];
        const auto g = green(F, p);
        const auto gf = green(F, F(p));
        inv = std::max(inv, std::abs(gf.value - d * g.value) - (gf.err_bound + d * g.err_bound));

        const cplx c = std::polar(0.1 + 4.0 * counter_uniform(seed, 3, 2 * k), 2.0 * std::numbers::pi * counter_uniform(seed, 3, 2 * k + 1));
        const auto gc = green(F, c * p);
        scal = std::max(scal, std::abs(gc.value - g.value - std::log(std::abs(c))) - (gc.err_bound + g.err_bound));

        const auto gl = green(cF, p);
        lift = std::max(lift, std::abs(gl.value - g.value - std::log(std::abs(c_lift)) / (d - 1.0)) - (gl.err_bound + g.err_bound));
    }
    InputsDigest in;
    in.map = map_digest(map);
    in.seed = seed;
    in.probes = points.size();
    return {make_report("green-invariance", inv, tol, in), make_report("green-scaling", scal, tol, in),
            make_report("green-lift-change", lift, tol, in)};
}

struct VerifyOptions {
    SamplingPlan walk{};
    int tree_depth = 12;
    std::size_t decomp_probes = 100;
    std::size_t pullback_probes = 1000;
    std::size_t factorization_probes = 100;
    std::size_t u_probes = 50;
    std::size_t green_points = 500;
    std::uint64_t seed = 0;
    DiscriminatorThresholds thresholds{};
};

/// Checks understood by run_checks, in a fixed order.
inline const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names{"decomp",        "energy",            "pullback", "lemniscate",
                                                "brolin",        "factorization",     "resultant-product",
                                                "v-constant",    "green-identities"};
    return names;
}

/// Probe radius clear of the sampled Julia set.
inline double probe_radius(const DiscreteMeasure& mu) {
    double r = 0.0;
    for (const auto& p : mu.points)
        if (!p.is_infinity()) r = std::max(r, std::abs(p.value()));
    return std::max(3.0, 1.5 * r);
}

/// Runs the named check ("all" for every applicable one); reports are sorted
/// by identity name.  "brolin" is skipped under "all" for non-polynomials.
inline std::vector<VerificationReport> run_checks(const RationalMap& map, const std::string& which,
                                                  const VerifyOptions& opt = {}) {
    const bool all = which == "all";
    if (!all && std::find(check_names().begin(), check_names().end(), which) == check_names().end())
        throw InvalidArgument("unknown check: " + which);
    auto wants = [&](const char* name) { return all || which == name; };

    SamplingPlan walk = opt.walk;
    walk.seed = opt.seed;
    SamplingPlan tree = walk;
    tree.method = SampleMethod::Tree;
    tree.depth = 0;
    for (std::size_t leaves = 1; tree.depth < opt.tree_depth && leaves * map.degree() <= kDefaultTreeCap; ++tree.depth)
        leaves *= map.degree();

    std::optional<double> radius;
    auto outer_radius = [&] {
        if (!radius) radius = probe_radius(sample(map, walk));
        return *radius;
    };

    std::vector<VerificationReport> out;
    if (wants("decomp")) out.push_back(check_decomp(map, circle_probes(outer_radius(), opt.decomp_probes), tree));
    if (wants("energy")) out.push_back(check_energy(map, walk));
    if (wants("pullback")) out.push_back(check_pullback(map, disk_probes(3.0, opt.pullback_probes, opt.seed)));
    if (wants("lemniscate")) out.push_back(check_lemniscate(map, opt.thresholds, walk));
    if (wants("brolin") && (!all || map.is_polynomial())) out.push_back(check_brolin(map));
    if (wants("factorization"))
        out.push_back(check_factorization(map, vector_probes(opt.factorization_probes, opt.seed)));
    if (wants("resultant-product")) out.push_back(check_resultant_product(map));
    if (wants("v-constant")) out.push_back(check_v_constant(map, circle_probes(outer_radius(), opt.u_probes), walk));
    if (wants("green-identities"))
        for (auto& r : check_green_identities(map, vector_probes(opt.green_points, opt.seed + 1), opt.seed))
            out.push_back(std::move(r));
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.identity < b.identity; });
    return out;
}

}  // namespace greenlem
