// Discrete approximations of the balanced measure by backward iteration,
// logarithmic potentials and energies, and the dynamically weighted kernel.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "greenlem/error.hpp"
#include "greenlem/green.hpp"
#include "greenlem/parallel.hpp"
#include "greenlem/projective.hpp"
#include "greenlem/random.hpp"

namespace greenlem {

inline constexpr double kCoincidenceRadius = 1e-14;
inline constexpr std::size_t kDefaultTreeCap = std::size_t{1} << 20;
inline constexpr std::size_t kDefaultBurnIn = 20;

enum class SampleMethod { Tree, Walk };

inline const char* to_string(SampleMethod m) { return m == SampleMethod::Tree ? "tree" : "walk"; }

struct Provenance {
    SampleMethod method = SampleMethod::Tree;
    int depth = 0;               // tree
    std::size_t length = 0;      // walk
    std::size_t burn_in = 0;     // walk
    SpherePoint base = SpherePoint::affine(0.0);
};

struct DiscreteMeasure {
    std::vector<SpherePoint> points;
    std::vector<double> weights;
    std::uint64_t seed = 0;
    Provenance provenance;

    std::size_t size() const { return points.size(); }
    bool has_infinity() const {
        for (const auto& p : points)
            if (p.is_infinity()) return true;
        return false;
    }
};

/// True when a and its first two backward images form at most two points.
inline bool is_exceptional(const RationalMap& map, const SpherePoint& a) {
    constexpr double same = 1e-9;
    std::vector<SpherePoint> seen{a};
    auto add = [&](const SpherePoint& p) {
        for (const auto& s : seen)
            if (chordal_distance(s, p) < same) return;
        seen.push_back(p);
    };
    std::vector<SpherePoint> frontier{a};
    for (int step = 0; step < 2; ++step) {
        std::vector<SpherePoint> next;
        for (const auto& w : frontier)
            for (const auto& [z, m] : preimages(map, w)) {
                add(z);
                next.push_back(z);
            }
        if (seen.size() > 2) return false;
        frontier = std::move(next);
    }
    return seen.size() <= 2;
}

/// First point of a fixed candidate list that is not exceptional for `map`.
inline SpherePoint default_base(const RationalMap& map) {
    const cplx candidates[] = {{2.0, 0.0}, {-1.5, 0.5}, {0.0, 0.7}, {0.3, -1.1}};
    for (const auto& c : candidates) {
        const auto a = SpherePoint::affine(c);
        if (!is_exceptional(map, a)) return a;
    }
    return SpherePoint::affine(cplx{0.1234, 0.5678});
}

/// Atoms of (f^k)^* delta_a / d^k, one per preimage-tree leaf, weighted by
/// multiplicity.
inline DiscreteMeasure sample_tree(const RationalMap& map, const SpherePoint& a, int depth,
                                   std::size_t cap = kDefaultTreeCap) {
    if (depth < 0) throw InvalidArgument("sample_tree: depth must be non-negative");
    const auto d = static_cast<std::size_t>(map.degree());
    std::size_t leaves = 1;
    for (int k = 0; k < depth; ++k) {
        if (leaves > cap / d) throw CapExceeded("sample_tree: d^k exceeds the configured cap of " + std::to_string(cap));
        leaves *= d;
    }
    if (is_exceptional(map, a)) throw ExceptionalPoint("sample_tree: base point is exceptional");

    DiscreteMeasure mu;
    mu.points = {a};
    mu.weights = {1.0};
    for (int k = 0; k < depth; ++k) {
        std::vector<std::vector<std::pair<SpherePoint, int>>> children(mu.size());
        parallel_for(mu.size(), [&](std::size_t i) { children[i] = preimages(map, mu.points[i]); });
        DiscreteMeasure next;
        next.points.reserve(mu.size() * d);
        next.weights.reserve(mu.size() * d);
        for (std::size_t i = 0; i < mu.size(); ++i)
            for (const auto& [z, m] : children[i]) {
                next.points.push_back(z);
                next.weights.push_back(mu.weights[i] * m / static_cast<double>(d));
            }
        mu.points = std::move(next.points);
        mu.weights = std::move(next.weights);
    }
    mu.provenance = {SampleMethod::Tree, depth, 0, 0, a};
    return mu;
}

/// Random backward orbit of a: each step picks a preimage with probability
/// multiplicity / d using counter-based draws keyed by (seed, step index).
inline DiscreteMeasure sample_walk(const RationalMap& map, const SpherePoint& a, std::size_t length,
                                   std::size_t burn_in = kDefaultBurnIn, std::uint64_t seed = 0) {
    if (length == 0) throw InvalidArgument("sample_walk: length must be positive");
    if (is_exceptional(map, a)) throw ExceptionalPoint("sample_walk: base point is exceptional");
    const double d = map.degree();
    DiscreteMeasure mu;
    mu.points.reserve(length);
    SpherePoint current = a;
    for (std::size_t step = 0; step < burn_in + length; ++step) {
        const auto pre = preimages(map, current);
        const double u = counter_uniform(seed, 0, step) * d;
        double acc = 0.0;
        current = pre.back().first;
        for (const auto& [z, m] : pre) {
            acc += m;
            if (u < acc) {
                current = z;
                break;
            }
        }
        if (step >= burn_in) mu.points.push_back(current);
    }
    mu.weights.assign(length, 1.0 / static_cast<double>(length));
    mu.seed = seed;
    mu.provenance = {SampleMethod::Walk, 0, length, burn_in, a};
    return mu;
}

struct PotentialValue {
    double value = 0.0;
    std::size_t skipped = 0;
};

namespace detail {
inline void require_affine(const DiscreteMeasure& mu, const char* who) {
    if (mu.has_infinity())
        throw InvalidArgument(std::string(who) + ": measure has an atom at infinity; only compactly supported measures on C are allowed");
}
}  // namespace detail

/// sum_i w_i log|z - x_i|, skipping atoms within kCoincidenceRadius of z.
inline PotentialValue potential(const DiscreteMeasure& mu, cplx z) {
    detail::require_affine(mu, "potential");
    PotentialValue out;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const double r = std::abs(z - mu.points[i].value());
        if (r < kCoincidenceRadius) {
            ++out.skipped;
            continue;
        }
        out.value += mu.weights[i] * std::log(r);
    }
    return out;
}

struct EnergyEstimate {
    double value = 0.0;
    /// Ordered pairs (i, j), i != j.
    std::size_t pairs_used = 0;
    std::size_t pairs_skipped = 0;
};

/// Off-diagonal estimate sum_{i!=j} w_i w_j log|x_i - x_j| / sum_{i!=j} w_i w_j
/// over non-coincident pairs; for equal weights this is the U-statistic.
inline EnergyEstimate energy(const DiscreteMeasure& mu) {
    detail::require_affine(mu, "energy");
    const std::size_t n = mu.size();
    if (n < 2) throw InvalidArgument("energy: need at least two atoms");
    std::vector<cplx> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = mu.points[i].value();

    struct Row {
        double sum = 0.0, mass = 0.0;
        std::size_t skipped = 0;
    };
    std::vector<Row> rows(n);
    parallel_for(n, [&](std::size_t i) {
        Row r;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dist = std::abs(x[i] - x[j]);
            if (dist < kCoincidenceRadius) {
                ++r.skipped;
                continue;
            }
            const double w = mu.weights[i] * mu.weights[j];
            r.sum += w * std::log(dist);
            r.mass += w;
        }
        rows[i] = r;
    });
    double sum = 0.0, mass = 0.0;
    std::size_t skipped = 0;
    for (const auto& r : rows) {
        sum += r.sum;
        mass += r.mass;
        skipped += r.skipped;
    }
    EnergyEstimate e;
    e.pairs_skipped = 2 * skipped;
    e.pairs_used = n * (n - 1) - e.pairs_skipped;
    e.value = mass > 0.0 ? sum / mass : -std::numeric_limits<double>::infinity();
    return e;
}

/// log|p ^ q| - G(p) - G(q); negative infinity when z = w on P^1.
inline double phi_kernel(const HomogeneousLift& F, const SpherePoint& z, const SpherePoint& w,
                         double tol = kDefaultGreenTol) {
    const cplx wz = wedge(z, w);
    if (wz == cplx{}) return -std::numeric_limits<double>::infinity();
    return std::log(std::abs(wz)) - green(F, z, tol).value - green(F, w, tol).value;
}

/// U_{F,mu} with the Green function of every atom evaluated once.  Holds
/// references: F and mu must outlive the object.
class WeightedPotential {
  public:
    WeightedPotential(const HomogeneousLift& F, const DiscreteMeasure& mu, double tol = kDefaultGreenTol)
        : F_(F), mu_(mu), tol_(tol), atom_green_(mu.size()) {
        parallel_for(mu.size(), [&](std::size_t i) { atom_green_[i] = green(F_, mu_.points[i], tol_).value; });
    }

    PotentialValue operator()(const SpherePoint& z) const {
        PotentialValue out;
        const double gz = green(F_, z, tol_).value;
        for (std::size_t i = 0; i < mu_.size(); ++i) {
            const cplx wz = wedge(z, mu_.points[i]);
            if (std::abs(wz) < kCoincidenceRadius * z.norm() * mu_.points[i].norm()) {
                ++out.skipped;
                continue;
            }
            out.value += mu_.weights[i] * (std::log(std::abs(wz)) - gz - atom_green_[i]);
        }
        return out;
    }

  private:
    const HomogeneousLift& F_;
    const DiscreteMeasure& mu_;
    double tol_;
    std::vector<double> atom_green_;
};

inline PotentialValue weighted_potential(const HomogeneousLift& F, const DiscreteMeasure& mu, const SpherePoint& z,
                                         double tol = kDefaultGreenTol) {
    return WeightedPotential(F, mu, tol)(z);
}

/// -log|Res F| / (d (d - 1)).
inline double v_constant(const HomogeneousLift& F) {
    const double r = std::abs(resultant(F));
    if (!(r > 0.0)) throw DegenerateMap("v_constant: lift is degenerate (Res F = 0)");
    return -std::log(r) / (F.d * (F.d - 1.0));
}

}  // namespace greenlem
