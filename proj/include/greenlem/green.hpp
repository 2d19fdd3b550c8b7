// Escape-rate evaluation of the dynamical Green function
//
//   G(p) = lim_k d^-k log|F^k(p)|
//
// telescoped along the normalised orbit u_0 = p/|p|, u_{k+1} = F(u_k)/|F(u_k)|:
//
//   G(p) = log|p| + sum_k d^-(k+1) log|F(u_k)|.
//
// Every term is bounded by B = lift.log_norm_bound, so stopping after K terms
// leaves a tail of at most B / (d^K (d - 1)).
#pragma once

#include <cmath>
#include <complex>

#include "greenlem/error.hpp"
#include "greenlem/projective.hpp"

namespace greenlem {

inline constexpr double kDefaultGreenTol = 1e-10;
inline constexpr int kGreenStepCap = 200;

struct GreenValue {
    double value = 0.0;
    /// Truncation bound under the log_norm_bound tail model.
    double err_bound = 0.0;
    int steps = 0;
    /// False when the iteration cap was hit before err_bound <= tol.
    bool converged = true;
};

/// Tail bound after `steps` terms; non-increasing in steps.
inline double green_tail_bound(const HomogeneousLift& F, int steps) {
    return F.log_norm_bound / (std::pow(static_cast<double>(F.d), steps) * (F.d - 1));
}

inline GreenValue green(const HomogeneousLift& F, const SpherePoint& p, double tol = kDefaultGreenTol) {
    if (!(tol > 0.0)) throw InvalidArgument("green: tolerance must be positive");
    const double n0 = p.norm();
    if (!(n0 > 0.0)) throw InvalidArgument("green: the origin of C^2 is not a point of P^1");

    GreenValue g;
    g.value = std::log(n0);
    SpherePoint u{p.z0 / n0, p.z1 / n0};
    double weight = 1.0 / F.d;
    int k = 0;
    double bound = green_tail_bound(F, 0);
    while (bound > tol && k < kGreenStepCap) {
        const SpherePoint v = F(u);
        const double n = v.norm();
        if (!(n > 0.0)) throw DegenerateMap("green: lift vanishes on the unit sphere");
        g.value += weight * std::log(n);
        u = {v.z0 / n, v.z1 / n};
        weight /= F.d;
        ++k;
        bound = green_tail_bound(F, k);
    }
    g.steps = k;
    g.err_bound = bound;
    g.converged = bound <= tol;
    return g;
}

/// G(1, z).
inline GreenValue green_affine(const HomogeneousLift& F, cplx z, double tol = kDefaultGreenTol) {
    return green(F, SpherePoint::affine(z), tol);
}

/// G(0, 1).
inline GreenValue green_at_infinity(const HomogeneousLift& F, double tol = kDefaultGreenTol) {
    return green(F, SpherePoint::infinity(), tol);
}

}  // namespace greenlem
