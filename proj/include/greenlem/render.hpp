// Raster output: equipotentials of G(1, .), the lemniscate level curve of
// |F0(1, .)|, and histograms of discrete measures.  Images are binary PPM.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "greenlem/error.hpp"
#include "greenlem/green.hpp"
#include "greenlem/measure.hpp"
#include "greenlem/parallel.hpp"
#include "greenlem/projective.hpp"
#include "greenlem/verify.hpp"

namespace greenlem {

/// Affine pixel grid; row 0 is the top edge (y_max).
struct Viewport {
    double x_min = -2.0, x_max = 2.0, y_min = -2.0, y_max = 2.0;
    int width = 512, height = 512;

    void validate() const {
        if (!(x_min < x_max) || !(y_min < y_max)) throw InvalidArgument("viewport: need x_min < x_max and y_min < y_max");
        if (width <= 0 || height <= 0) throw InvalidArgument("viewport: size must be positive");
    }

    /// Center of pixel (col, row).  Offsets are odd integers over the size so
    /// that grids symmetric about an axis map to exactly mirrored values.
    cplx pixel(int col, int row) const {
        const double xc = 0.5 * (x_min + x_max), hx = 0.5 * (x_max - x_min);
        const double yc = 0.5 * (y_min + y_max), hy = 0.5 * (y_max - y_min);
        const double ox = static_cast<double>(2 * col + 1 - width) / width;
        const double oy = static_cast<double>(height - 1 - 2 * row) / height;
        return {xc + hx * ox, yc + hy * oy};
    }

    /// Pixel containing z, or false when z is outside.
    bool locate(cplx z, int& col, int& row) const {
        const double fx = (z.real() - x_min) / (x_max - x_min);
        const double fy = (y_max - z.imag()) / (y_max - y_min);
        if (!(fx >= 0.0 && fx < 1.0 && fy >= 0.0 && fy < 1.0)) return false;
        col = static_cast<int>(fx * width);
        row = static_cast<int>(fy * height);
        return col < width && row < height;
    }
};

struct Image {
    int width = 0, height = 0;
    std::vector<std::uint8_t> rgb;

    Image() = default;
    Image(int w, int h) : width(w), height(h), rgb(static_cast<std::size_t>(w) * h * 3, 0) {}

    void set_gray(int col, int row, std::uint8_t v) {
        const std::size_t i = (static_cast<std::size_t>(row) * width + col) * 3;
        rgb[i] = rgb[i + 1] = rgb[i + 2] = v;
    }
    std::uint8_t gray(int col, int row) const { return rgb[(static_cast<std::size_t>(row) * width + col) * 3]; }
};

/// P6, maxval 255, no comments.
inline void write_ppm(std::ostream& os, const Image& img) {
    os << "P6\n" << img.width << ' ' << img.height << "\n255\n";
    os.write(reinterpret_cast<const char*>(img.rgb.data()), static_cast<std::streamsize>(img.rgb.size()));
}

inline std::string to_ppm(const Image& img) {
    std::string header = "P6\n" + std::to_string(img.width) + ' ' + std::to_string(img.height) + "\n255\n";
    header.append(reinterpret_cast<const char*>(img.rgb.data()), img.rgb.size());
    return header;
}

struct PotentialRender {
    Image image;
    double black_fraction = 0.0;
    double interior_tol = 1e-6;
};

/// Black where G(1, z) <= interior_tol; elsewhere gray from the fractional
/// part of log G / log d, which steps by one per application of f.
inline PotentialRender render_potential(const RationalMap& map, const Viewport& vp, double interior_tol = 1e-6,
                                        double green_tol = 1e-9) {
    vp.validate();
    const auto F = canonical_lift(map);
    const double log_d = std::log(static_cast<double>(F.d));
    PotentialRender out{Image(vp.width, vp.height), 0.0, interior_tol};
    std::vector<std::uint8_t> px(static_cast<std::size_t>(vp.width) * vp.height);
    parallel_for(px.size(), [&](std::size_t i) {
        const int row = static_cast<int>(i / vp.width), col = static_cast<int>(i % vp.width);
        const double g = green_affine(F, vp.pixel(col, row), green_tol).value;
        if (g <= interior_tol) {
            px[i] = 0;
            return;
        }
        double band = std::log(g) / log_d;
        band -= std::floor(band);
        px[i] = static_cast<std::uint8_t>(32 + std::lround(223.0 * band) % 224);
    });
    std::size_t black = 0;
    for (std::size_t i = 0; i < px.size(); ++i) {
        out.image.set_gray(static_cast<int>(i % vp.width), static_cast<int>(i / vp.width), px[i]);
        black += px[i] == 0;
    }
    out.black_fraction = static_cast<double>(black) / px.size();
    return out;
}

struct LemniscateRender {
    Image image;
    double level = 1.0;
    /// F0(1, .) is constant, so the level set is empty or the whole plane.
    bool degenerate = false;
    double marked_fraction = 0.0;
};

/// White where |log|F0(1, z)| - log level| < band_eps.
inline LemniscateRender render_lemniscate(const RationalMap& map, const Viewport& vp, double band_eps) {
    vp.validate();
    const auto F = canonical_lift(map);
    const double log_level = lemniscate_log_level(F);
    LemniscateRender out{Image(vp.width, vp.height), std::exp(log_level), F.d0 == 0, 0.0};
    std::vector<std::uint8_t> px(static_cast<std::size_t>(vp.width) * vp.height);
    parallel_for(px.size(), [&](std::size_t i) {
        const cplx z = vp.pixel(static_cast<int>(i % vp.width), static_cast<int>(i / vp.width));
        const double v = std::log(std::abs(evaluate(F.f0, z)));
        px[i] = std::abs(v - log_level) < band_eps ? 255 : 0;
    });
    std::size_t marked = 0;
    for (std::size_t i = 0; i < px.size(); ++i) {
        out.image.set_gray(static_cast<int>(i % vp.width), static_cast<int>(i / vp.width), px[i]);
        marked += px[i] != 0;
    }
    out.marked_fraction = static_cast<double>(marked) / px.size();
    return out;
}

struct MeasureRender {
    Image image;
    double in_view_mass = 0.0;
    double out_of_view_mass = 0.0;
    std::size_t atoms_out_of_view = 0;
};

/// Weighted histogram, intensity log(1 + 1000 m / m_max) / log(1001).
inline MeasureRender render_measure(const DiscreteMeasure& mu, const Viewport& vp) {
    vp.validate();
    MeasureRender out{Image(vp.width, vp.height), 0.0, 0.0, 0};
    std::vector<double> mass(static_cast<std::size_t>(vp.width) * vp.height, 0.0);
    for (std::size_t i = 0; i < mu.size(); ++i) {
        int col = 0, row = 0;
        if (!mu.points[i].is_infinity() && vp.locate(mu.points[i].value(), col, row)) {
            mass[static_cast<std::size_t>(row) * vp.width + col] += mu.weights[i];
            out.in_view_mass += mu.weights[i];
        } else {
            out.out_of_view_mass += mu.weights[i];
            ++out.atoms_out_of_view;
        }
    }
    double peak = 0.0;
    for (double m : mass) peak = std::max(peak, m);
    if (peak > 0.0)
        for (std::size_t i = 0; i < mass.size(); ++i) {
            if (mass[i] == 0.0) continue;
            const double v = std::log1p(1000.0 * mass[i] / peak) / std::log(1001.0);
            out.image.set_gray(static_cast<int>(i % vp.width), static_cast<int>(i / vp.width),
                               static_cast<std::uint8_t>(std::max(1L, std::lround(255.0 * v))));
        }
    return out;
}

}  // namespace greenlem
