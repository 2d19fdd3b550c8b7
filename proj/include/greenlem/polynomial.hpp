// Dense complex polynomials in ascending coefficient order, simultaneous
// root refinement, and Sylvester resultants.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "greenlem/error.hpp"

namespace greenlem {

using cplx = std::complex<double>;

/// Coefficients c[0] + c[1] z + ... + c[n] z^n.
using Poly = std::vector<cplx>;

/// Index of the highest non-zero coefficient, or -1 for the zero polynomial.
inline int degree(std::span<const cplx> c) {
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k)
        if (c[k] != cplx{}) return k;
    return -1;
}

inline Poly trimmed(std::span<const cplx> c) {
    const int n = degree(c);
    return Poly(c.begin(), c.begin() + (n + 1));
}

inline cplx evaluate(std::span<const cplx> c, cplx z) {
    cplx acc{};
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
    return acc;
}

/// Sum |c_k| |z|^k, the natural scale against which |P(z)| is small.
inline double magnitude_scale(std::span<const cplx> c, double r) {
    double acc = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * r + std::abs(c[k]);
    return acc;
}

inline double max_abs_coefficient(std::span<const cplx> c) {
    double m = 0.0;
    for (const auto& v : c) m = std::max(m, std::abs(v));
    return m;
}

inline Poly derivative(std::span<const cplx> c) {
    if (c.size() <= 1) return {};
    Poly out(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k) out[k - 1] = c[k] * static_cast<double>(k);
    return out;
}

inline Poly multiply(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

/// Polynomial with the given roots and leading coefficient.
inline Poly from_roots(std::span<const cplx> roots, cplx lead = 1.0) {
    Poly p{lead};
    for (const auto& r : roots) {
        const cplx lin[2] = {-r, 1.0};
        p = multiply(p, lin);
    }
    return p;
}

struct Root {
    cplx value;
    int multiplicity = 1;
};

struct RootOptions {
    /// Accept a root when |P(r)| <= tol * sum |c_k||r|^k.
    double tol = 1e-12;
    int max_iterations = 500;
    /// Roots closer than merge_radius * max(1, |r|) are one multiple root.
    double merge_radius = 1e-7;
    int max_restarts = 4;
};

namespace detail {

inline double backward_error(std::span<const cplx> c, cplx z) {
    const double scale = magnitude_scale(c, std::abs(z));
    if (scale == 0.0) return 0.0;
    return std::abs(evaluate(c, z)) / scale;
}

// Aberth-Ehrlich iteration on a polynomial with non-zero constant and
// leading terms.  Returns the approximations and their worst backward error.
inline double aberth(std::span<const cplx> c, std::vector<cplx>& z, int max_iterations) {
    const int n = static_cast<int>(c.size()) - 1;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (int it = 0; it < max_iterations; ++it) {
        bool all_done = true;
        for (int i = 0; i < n; ++i) {
            // Horner for P and P' together.
            cplx p = c[n], dp{};
            for (int k = n - 1; k >= 0; --k) {
                dp = dp * z[i] + p;
                p = p * z[i] + c[k];
            }
            const double scale = magnitude_scale(c, std::abs(z[i]));
            if (std::abs(p) <= 2.0 * eps * scale) continue;
            all_done = false;
            cplx repulsion{};
            for (int j = 0; j < n; ++j)
                if (j != i && z[i] != z[j]) repulsion += 1.0 / (z[i] - z[j]);
            cplx step;
            if (dp == cplx{}) {
                step = cplx(1e-8 * (1.0 + std::abs(z[i])), 1e-8 * (1.0 + std::abs(z[i])));
            } else {
                const cplx ratio = p / dp;
                const cplx denom = 1.0 - ratio * repulsion;
                step = denom == cplx{} ? ratio : ratio / denom;
            }
            z[i] -= step;
        }
        if (all_done) break;
    }
    double worst = 0.0;
    for (int i = 0; i < n; ++i) worst = std::max(worst, backward_error(c, z[i]));
    return worst;
}

inline std::vector<cplx> initial_circle(std::span<const cplx> c, double radius_factor, double angle_offset) {
    const int n = static_cast<int>(c.size()) - 1;
    const double r = std::pow(std::abs(c[0]) / std::abs(c[n]), 1.0 / n) * radius_factor;
    std::vector<cplx> z(n);
    for (int k = 0; k < n; ++k)
        z[k] = std::polar(r, 2.0 * std::numbers::pi * k / n + angle_offset);
    return z;
}

// A root of multiplicity m is a simple root of P^(m-1); Newton there from the
// cluster centroid.  Falls back to the centroid if Newton wanders off.
inline cplx polish_multiple(std::span<const cplx> c, cplx start, int m, const RootOptions& opt) {
    Poly q(c.begin(), c.end());
    for (int k = 1; k < m; ++k) q = derivative(q);
    const Poly dq = derivative(q);
    const double reach = 10.0 * opt.merge_radius * std::max(1.0, std::abs(start));
    cplx z = start;
    for (int it = 0; it < 20; ++it) {
        const cplx den = evaluate(dq, z);
        if (den == cplx{}) break;
        const cplx step = evaluate(q, z) / den;
        z -= step;
        if (std::abs(z - start) > reach) return start;
        if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(z)) break;
    }
    return z;
}

}  // namespace detail

/// Roots of a non-constant polynomial with multiplicities summing to its
/// degree.  Throws NonConvergence if no restart meets the residual tolerance.
inline std::vector<Root> roots(std::span<const cplx> coeffs, const RootOptions& opt = {}) {
    const int n = degree(coeffs);
    if (n < 1) throw InvalidArgument("roots: polynomial must have degree >= 1");

    // Exact zero roots come off first so that z^k factors are not iterated.
    int zeros = 0;
    while (coeffs[zeros] == cplx{}) ++zeros;
    const Poly reduced(coeffs.begin() + zeros, coeffs.begin() + n + 1);
    const int m = n - zeros;

    std::vector<cplx> approx;
    if (m == 1) {
        approx.push_back(-reduced[0] / reduced[1]);
    } else if (m > 1) {
        double best = std::numeric_limits<double>::infinity();
        std::vector<cplx> best_z;
        for (int attempt = 0; attempt <= opt.max_restarts; ++attempt) {
            auto z = detail::initial_circle(reduced, 1.0 + 0.1 * attempt, 0.4 + 0.7 * attempt);
            const double residual = detail::aberth(reduced, z, opt.max_iterations);
            if (residual < best) {
                best = residual;
                best_z = std::move(z);
            }
            if (best <= opt.tol) break;
        }
        if (!(best <= opt.tol))
            throw NonConvergence("roots: no convergence, best backward error " + std::to_string(best), best);
        approx = std::move(best_z);
    }

    // Single-linkage clustering of near-coincident approximations.
    std::vector<int> parent(approx.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < approx.size(); ++i)
        for (std::size_t j = i + 1; j < approx.size(); ++j) {
            const double radius = opt.merge_radius * std::max({1.0, std::abs(approx[i]), std::abs(approx[j])});
            if (std::abs(approx[i] - approx[j]) < radius) parent[find(static_cast<int>(j))] = find(static_cast<int>(i));
        }

    std::vector<Root> out;
    if (zeros > 0) out.push_back({cplx{}, zeros});
    std::vector<int> slot(approx.size(), -1);
    std::vector<cplx> sums;
    for (std::size_t i = 0; i < approx.size(); ++i) {
        const int r = find(static_cast<int>(i));
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(out.size());
            out.push_back({cplx{}, 0});
            sums.push_back(cplx{});
        }
        const int s = slot[r];
        out[s].multiplicity += 1;
        sums[s - (zeros > 0 ? 1 : 0)] += approx[i];
    }
    for (std::size_t s = (zeros > 0 ? 1 : 0); s < out.size(); ++s) {
        out[s].value = sums[s - (zeros > 0 ? 1 : 0)] / static_cast<double>(out[s].multiplicity);
        if (out[s].multiplicity > 1) out[s].value = detail::polish_multiple(reduced, out[s].value, out[s].multiplicity, opt);
    }
    return out;
}

/// Resultant R(P, Q) as the Sylvester determinant, with R(c, Q) = c^deg Q
/// and R(P, c) = c^deg P for constant arguments.
inline cplx sylvester_resultant(std::span<const cplx> p_coeffs, std::span<const cplx> q_coeffs) {
    const int m = degree(p_coeffs);
    const int n = degree(q_coeffs);
    if (m < 0 || n < 0) return cplx{};
    if (m == 0) return std::pow(p_coeffs[0], n);
    if (n == 0) return std::pow(q_coeffs[0], m);

    const int size = m + n;
    std::vector<cplx> a(static_cast<std::size_t>(size) * size);
    auto at = [&](int r, int c) -> cplx& { return a[static_cast<std::size_t>(r) * size + c]; };
    // Rows hold coefficients in descending powers, shifted one column per row.
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) at(r, r + k) = p_coeffs[m - k];
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) at(n + r, r + k) = q_coeffs[n - k];

    // LU with partial pivoting.
    cplx det = 1.0;
    for (int col = 0; col < size; ++col) {
        int pivot = col;
        for (int r = col + 1; r < size; ++r)
            if (std::abs(at(r, col)) > std::abs(at(pivot, col))) pivot = r;
        if (at(pivot, col) == cplx{}) return cplx{};
        if (pivot != col) {
            for (int c = 0; c < size; ++c) std::swap(at(pivot, c), at(col, c));
            det = -det;
        }
        const cplx diag = at(col, col);
        det *= diag;
        for (int r = col + 1; r < size; ++r) {
            const cplx factor = at(r, col) / diag;
            if (factor == cplx{}) continue;
            for (int c = col; c < size; ++c) at(r, c) -= factor * at(col, c);
        }
    }
    return det;
}

/// Hadamard-type bound ||P||_2^deg Q ||Q||_2^deg P on |R(P, Q)|.
inline double resultant_scale(std::span<const cplx> p_coeffs, std::span<const cplx> q_coeffs) {
    auto norm2 = [](std::span<const cplx> c) {
        double s = 0.0;
        for (const auto& v : c) s += std::norm(v);
        return std::sqrt(s);
    };
    return std::pow(norm2(p_coeffs), std::max(degree(q_coeffs), 0)) *
           std::pow(norm2(q_coeffs), std::max(degree(p_coeffs), 0));
}

}  // namespace greenlem
