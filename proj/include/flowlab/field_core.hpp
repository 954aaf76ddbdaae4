/// @file field_core.hpp
/// @brief Uniform 2D grids, field containers and second-order difference operators.
///
/// Storage is row-major with the x index fastest: index = j * nx + i.
/// Operators never use one-sided stencils; points whose stencil leaves the
/// grid or touches a masked value are returned masked.
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "flowlab/errors.hpp"

namespace flowlab {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

struct Grid2D {
    int nx = 0;
    int ny = 0;
    double x0 = 0.0;
    double y0 = 0.0;
    double dx = 0.0;
    double dy = 0.0;

    /// Throws DimensionError unless nx, ny >= 3 and dx, dy > 0 (all finite).
    void validate() const;

    /// n x n grid covering [-half_extent, half_extent]^2.
    static Grid2D centered(int n, double half_extent);
    /// Grid with spacing h whose nodes are symmetric about the origin and reach at least half_extent.
    static Grid2D centered_spacing(double h, double half_extent);

    std::size_t size() const noexcept { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
    std::size_t index(int i, int j) const noexcept { return static_cast<std::size_t>(j) * nx + i; }
    double x(int i) const noexcept { return x0 + i * dx; }
    double y(int j) const noexcept { return y0 + j * dy; }
    double x_max() const noexcept { return x(nx - 1); }
    double y_max() const noexcept { return y(ny - 1); }
    double min_spacing() const noexcept { return dx < dy ? dx : dy; }
    /// True if p lies strictly inside the bounding box of the nodes.
    bool strictly_contains(Point2 p) const noexcept;
    /// Nearest grid node to p, clamped to the grid.
    std::array<int, 2> nearest_node(Point2 p) const noexcept;

    bool operator==(const Grid2D&) const = default;
};

/// Validity flags, one byte per point (1 = valid).
using Mask = std::vector<std::uint8_t>;

class ScalarField2D {
public:
    ScalarField2D() = default;
    /// An empty mask means every point is valid.
    ScalarField2D(Grid2D grid, std::vector<double> values, Mask mask = {});

    static ScalarField2D from_function(const Grid2D& grid, const std::function<double(double, double)>& f);
    static ScalarField2D constant(const Grid2D& grid, double c);

    const Grid2D& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    const Mask& mask() const noexcept { return mask_; }

    double operator()(int i, int j) const noexcept { return values_[grid_.index(i, j)]; }
    bool valid(int i, int j) const noexcept { return mask_[grid_.index(i, j)] != 0; }
    bool valid_at(std::size_t k) const noexcept { return mask_[k] != 0; }
    double at(std::size_t k) const noexcept { return values_[k]; }
    std::size_t valid_count() const noexcept;

private:
    Grid2D grid_;
    std::vector<double> values_;
    Mask mask_;
};

class ComplexField2D {
public:
    ComplexField2D() = default;
    ComplexField2D(Grid2D grid, std::vector<double> re, std::vector<double> im);

    static ComplexField2D from_function(const Grid2D& grid,
                                        const std::function<std::complex<double>(double, double)>& f);

    const Grid2D& grid() const noexcept { return grid_; }
    std::span<const double> re() const noexcept { return re_; }
    std::span<const double> im() const noexcept { return im_; }
    std::complex<double> operator()(int i, int j) const noexcept {
        const auto k = grid_.index(i, j);
        return {re_[k], im_[k]};
    }
    std::complex<double> at(std::size_t k) const noexcept { return {re_[k], im_[k]}; }

private:
    Grid2D grid_;
    std::vector<double> re_;
    std::vector<double> im_;
};

class VectorField2D {
public:
    VectorField2D() = default;
    VectorField2D(Grid2D grid, std::vector<double> vx, std::vector<double> vy, Mask mask = {});

    static VectorField2D from_function(const Grid2D& grid,
                                       const std::function<std::array<double, 2>(double, double)>& f);

    const Grid2D& grid() const noexcept { return grid_; }
    std::span<const double> vx() const noexcept { return vx_; }
    std::span<const double> vy() const noexcept { return vy_; }
    const Mask& mask() const noexcept { return mask_; }
    bool valid(int i, int j) const noexcept { return mask_[grid_.index(i, j)] != 0; }
    bool valid_at(std::size_t k) const noexcept { return mask_[k] != 0; }
    std::array<double, 2> operator()(int i, int j) const noexcept {
        const auto k = grid_.index(i, j);
        return {vx_[k], vy_[k]};
    }

private:
    Grid2D grid_;
    std::vector<double> vx_;
    std::vector<double> vy_;
    Mask mask_;
};

/// Closed polyline; the last vertex connects back to the first.
class Loop {
public:
    Loop(std::vector<Point2> vertices, double sampling_density = 4.0);

    /// Regular polygon inscribed in the circle of the given radius, counter-clockwise.
    static Loop circle(Point2 center, double radius, int nvertices = 256, double sampling_density = 4.0);

    const std::vector<Point2>& vertices() const noexcept { return vertices_; }
    double sampling_density() const noexcept { return sampling_density_; }
    double length() const noexcept;

    /// Densified closed sample sequence for the given grid: segment points only,
    /// the closing point (the first vertex) is not repeated.
    /// Throws DomainError if any vertex is not strictly inside the grid.
    std::vector<Point2> densify(const Grid2D& grid) const;

private:
    std::vector<Point2> vertices_;
    double sampling_density_;
};

/// Wrap an angle into (-pi, pi].
double wrap_angle(double a) noexcept;

ScalarField2D laplacian(const ScalarField2D& f);
VectorField2D gradient(const ScalarField2D& f);
/// d(vy)/dx - d(vx)/dy.
ScalarField2D curl2d(const VectorField2D& v);
/// Divergence d(vx)/dx + d(vy)/dy, masked like curl2d.
ScalarField2D divergence(const VectorField2D& v);

/// Closed line integral of v along the loop: bilinear interpolation of v at
/// densified samples, trapezoid accumulation of v . dq.
/// Throws MaskedPathError listing samples that need masked grid values.
double line_integral(const VectorField2D& v, const Loop& loop);

/// Bilinear interpolation helpers. Points outside the grid are clamped to the edge cell.
struct CellCoord {
    int i = 0;
    int j = 0;
    double s = 0.0;  ///< fractional offset in x, [0, 1]
    double t = 0.0;  ///< fractional offset in y, [0, 1]
};
CellCoord locate(const Grid2D& grid, Point2 p) noexcept;
std::complex<double> interpolate(const ComplexField2D& f, Point2 p) noexcept;
double interpolate(const ScalarField2D& f, Point2 p) noexcept;

}  // namespace flowlab
