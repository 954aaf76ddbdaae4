#include "flowlab/field_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace flowlab {

namespace {

void require_finite(std::span<const double> values, const char* what) {
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (!std::isfinite(values[k])) {
            std::ostringstream msg;
            msg << what << ": non-finite entry at flat index " << k;
            throw DomainError(msg.str());
        }
    }
}

void require_length(std::size_t got, std::size_t want, const char* what) {
    if (got != want) {
        std::ostringstream msg;
        msg << what << ": length " << got << " does not match grid size " << want;
        throw DimensionError(msg.str());
    }
}

Mask normalize_mask(Mask mask, std::size_t n, const char* what) {
    if (mask.empty()) return Mask(n, 1);
    require_length(mask.size(), n, what);
    for (auto& m : mask) m = m ? 1 : 0;
    return mask;
}

}  // namespace

void Grid2D::validate() const {
    if (nx < 3 || ny < 3) {
        std::ostringstream msg;
        msg << "grid must be at least 3x3, got " << nx << "x" << ny;
        throw DimensionError(msg.str());
    }
    if (!(dx > 0.0) || !(dy > 0.0) || !std::isfinite(dx) || !std::isfinite(dy) || !std::isfinite(x0) ||
        !std::isfinite(y0)) {
        throw DimensionError("grid spacings must be finite and positive, origin finite");
    }
}

Grid2D Grid2D::centered(int n, double half_extent) {
    if (n < 3) throw DimensionError("centered grid needs n >= 3");
    const double h = 2.0 * half_extent / (n - 1);
    Grid2D g{n, n, -half_extent, -half_extent, h, h};
    g.validate();
    return g;
}

Grid2D Grid2D::centered_spacing(double h, double half_extent) {
    if (!(h > 0.0)) throw DimensionError("spacing must be positive");
    const int half = static_cast<int>(std::ceil(half_extent / h - 1e-9));
    const int n = 2 * half + 1;
    Grid2D g{n, n, -half * h, -half * h, h, h};
    g.validate();
    return g;
}

bool Grid2D::strictly_contains(Point2 p) const noexcept {
    return p.x > x0 && p.x < x_max() && p.y > y0 && p.y < y_max();
}

std::array<int, 2> Grid2D::nearest_node(Point2 p) const noexcept {
    const int i = std::clamp(static_cast<int>(std::lround((p.x - x0) / dx)), 0, nx - 1);
    const int j = std::clamp(static_cast<int>(std::lround((p.y - y0) / dy)), 0, ny - 1);
    return {i, j};
}

// ---------------------------------------------------------------------------

ScalarField2D::ScalarField2D(Grid2D grid, std::vector<double> values, Mask mask)
    : grid_(grid), values_(std::move(values)) {
    grid_.validate();
    require_length(values_.size(), grid_.size(), "scalar field values");
    require_finite(values_, "scalar field");
    mask_ = normalize_mask(std::move(mask), grid_.size(), "scalar field mask");
}

ScalarField2D ScalarField2D::from_function(const Grid2D& grid, const std::function<double(double, double)>& f) {
    grid.validate();
    std::vector<double> v(grid.size());
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) v[grid.index(i, j)] = f(grid.x(i), grid.y(j));
    return ScalarField2D(grid, std::move(v));
}

ScalarField2D ScalarField2D::constant(const Grid2D& grid, double c) {
    grid.validate();
    return ScalarField2D(grid, std::vector<double>(grid.size(), c));
}

std::size_t ScalarField2D::valid_count() const noexcept {
    return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), std::uint8_t{1}));
}

ComplexField2D::ComplexField2D(Grid2D grid, std::vector<double> re, std::vector<double> im)
    : grid_(grid), re_(std::move(re)), im_(std::move(im)) {
    grid_.validate();
    require_length(re_.size(), grid_.size(), "complex field re");
    require_length(im_.size(), grid_.size(), "complex field im");
    require_finite(re_, "complex field re");
    require_finite(im_, "complex field im");
}

ComplexField2D ComplexField2D::from_function(const Grid2D& grid,
                                             const std::function<std::complex<double>(double, double)>& f) {
    grid.validate();
    std::vector<double> re(grid.size()), im(grid.size());
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const auto z = f(grid.x(i), grid.y(j));
            re[grid.index(i, j)] = z.real();
            im[grid.index(i, j)] = z.imag();
        }
    }
    return ComplexField2D(grid, std::move(re), std::move(im));
}

VectorField2D::VectorField2D(Grid2D grid, std::vector<double> vx, std::vector<double> vy, Mask mask)
    : grid_(grid), vx_(std::move(vx)), vy_(std::move(vy)) {
    grid_.validate();
    require_length(vx_.size(), grid_.size(), "vector field vx");
    require_length(vy_.size(), grid_.size(), "vector field vy");
    require_finite(vx_, "vector field vx");
    require_finite(vy_, "vector field vy");
    mask_ = normalize_mask(std::move(mask), grid_.size(), "vector field mask");
}

VectorField2D VectorField2D::from_function(const Grid2D& grid,
                                           const std::function<std::array<double, 2>(double, double)>& f) {
    grid.validate();
    std::vector<double> vx(grid.size()), vy(grid.size());
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const auto v = f(grid.x(i), grid.y(j));
            vx[grid.index(i, j)] = v[0];
            vy[grid.index(i, j)] = v[1];
        }
    }
    return VectorField2D(grid, std::move(vx), std::move(vy));
}

// ---------------------------------------------------------------------------

Loop::Loop(std::vector<Point2> vertices, double sampling_density)
    : vertices_(std::move(vertices)), sampling_density_(sampling_density) {
    if (vertices_.size() < 3) throw DomainError("loop needs at least 3 vertices");
    if (!(sampling_density_ > 0.0) || !std::isfinite(sampling_density_))
        throw DomainError("loop sampling density must be positive");
    for (const auto& p : vertices_)
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw DomainError("loop vertex is not finite");
}

Loop Loop::circle(Point2 center, double radius, int nvertices, double sampling_density) {
    if (!(radius > 0.0)) throw DomainError("circle radius must be positive");
    if (nvertices < 3) throw DomainError("circle needs at least 3 vertices");
    std::vector<Point2> v;
    v.reserve(static_cast<std::size_t>(nvertices));
    for (int k = 0; k < nvertices; ++k) {
        const double a = 2.0 * std::numbers::pi * k / nvertices;
        v.push_back({center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
    }
    return Loop(std::move(v), sampling_density);
}

double Loop::length() const noexcept {
    double len = 0.0;
    for (std::size_t k = 0; k < vertices_.size(); ++k) {
        const auto& a = vertices_[k];
        const auto& b = vertices_[(k + 1) % vertices_.size()];
        len += std::hypot(b.x - a.x, b.y - a.y);
    }
    return len;
}

std::vector<Point2> Loop::densify(const Grid2D& grid) const {
    for (const auto& p : vertices_) {
        if (!grid.strictly_contains(p)) {
            std::ostringstream msg;
            msg << "loop vertex (" << p.x << ", " << p.y << ") is not strictly inside the grid";
            throw DomainError(msg.str());
        }
    }
    const double h = grid.min_spacing();
    std::vector<Point2> out;
    for (std::size_t k = 0; k < vertices_.size(); ++k) {
        const auto& a = vertices_[k];
        const auto& b = vertices_[(k + 1) % vertices_.size()];
        const double len = std::hypot(b.x - a.x, b.y - a.y);
        const int n = std::max(1, static_cast<int>(std::ceil(len / h * sampling_density_)));
        for (int m = 0; m < n; ++m) {
            const double f = static_cast<double>(m) / n;
            out.push_back({a.x + (b.x - a.x) * f, a.y + (b.y - a.y) * f});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

double wrap_angle(double a) noexcept {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::remainder(a, two_pi);  // [-pi, pi]
    if (r <= -std::numbers::pi) r += two_pi;
    return r;
}

ScalarField2D laplacian(const ScalarField2D& f) {
    const auto& g = f.grid();
    g.validate();
    std::vector<double> out(g.size(), 0.0);
    Mask mask(g.size(), 0);
    const double idx2 = 1.0 / (g.dx * g.dx);
    const double idy2 = 1.0 / (g.dy * g.dy);
    for (int j = 1; j < g.ny - 1; ++j) {
        for (int i = 1; i < g.nx - 1; ++i) {
            if (!(f.valid(i, j) && f.valid(i + 1, j) && f.valid(i - 1, j) && f.valid(i, j + 1) &&
                  f.valid(i, j - 1)))
                continue;
            const double c = f(i, j);
            const double lap = (f(i + 1, j) + f(i - 1, j) - 2.0 * c) * idx2 + (f(i, j + 1) + f(i, j - 1) - 2.0 * c) * idy2;
            if (!std::isfinite(lap)) continue;
            out[g.index(i, j)] = lap;
            mask[g.index(i, j)] = 1;
        }
    }
    return ScalarField2D(g, std::move(out), std::move(mask));
}

VectorField2D gradient(const ScalarField2D& f) {
    const auto& g = f.grid();
    g.validate();
    std::vector<double> vx(g.size(), 0.0), vy(g.size(), 0.0);
    Mask mask(g.size(), 0);
    for (int j = 1; j < g.ny - 1; ++j) {
        for (int i = 1; i < g.nx - 1; ++i) {
            if (!(f.valid(i + 1, j) && f.valid(i - 1, j) && f.valid(i, j + 1) && f.valid(i, j - 1))) continue;
            const double gx = (f(i + 1, j) - f(i - 1, j)) / (2.0 * g.dx);
            const double gy = (f(i, j + 1) - f(i, j - 1)) / (2.0 * g.dy);
            if (!std::isfinite(gx) || !std::isfinite(gy)) continue;
            const auto k = g.index(i, j);
            vx[k] = gx;
            vy[k] = gy;
            mask[k] = 1;
        }
    }
    return VectorField2D(g, std::move(vx), std::move(vy), std::move(mask));
}

namespace {

template <typename Combine>
ScalarField2D cross_stencil(const VectorField2D& v, Combine combine) {
    const auto& g = v.grid();
    g.validate();
    std::vector<double> out(g.size(), 0.0);
    Mask mask(g.size(), 0);
    const auto vx = v.vx();
    const auto vy = v.vy();
    for (int j = 1; j < g.ny - 1; ++j) {
        for (int i = 1; i < g.nx - 1; ++i) {
            if (!(v.valid(i + 1, j) && v.valid(i - 1, j) && v.valid(i, j + 1) && v.valid(i, j - 1))) continue;
            const auto e = g.index(i + 1, j), w = g.index(i - 1, j);
            const auto n = g.index(i, j + 1), s = g.index(i, j - 1);
            const double val = combine(vx[e], vx[w], vx[n], vx[s], vy[e], vy[w], vy[n], vy[s], g);
            if (!std::isfinite(val)) continue;
            out[g.index(i, j)] = val;
            mask[g.index(i, j)] = 1;
        }
    }
    return ScalarField2D(g, std::move(out), std::move(mask));
}

}  // namespace

ScalarField2D curl2d(const VectorField2D& v) {
    return cross_stencil(v, [](double, double, double vxn, double vxs, double vye, double vyw, double, double,
                               const Grid2D& g) {
        return (vye - vyw) / (2.0 * g.dx) - (vxn - vxs) / (2.0 * g.dy);
    });
}

ScalarField2D divergence(const VectorField2D& v) {
    return cross_stencil(v, [](double vxe, double vxw, double, double, double, double, double vyn, double vys,
                               const Grid2D& g) {
        return (vxe - vxw) / (2.0 * g.dx) + (vyn - vys) / (2.0 * g.dy);
    });
}

// ---------------------------------------------------------------------------

CellCoord locate(const Grid2D& grid, Point2 p) noexcept {
    const double fx = (p.x - grid.x0) / grid.dx;
    const double fy = (p.y - grid.y0) / grid.dy;
    CellCoord c;
    c.i = std::clamp(static_cast<int>(std::floor(fx)), 0, grid.nx - 2);
    c.j = std::clamp(static_cast<int>(std::floor(fy)), 0, grid.ny - 2);
    c.s = std::clamp(fx - c.i, 0.0, 1.0);
    c.t = std::clamp(fy - c.j, 0.0, 1.0);
    return c;
}

namespace {

template <typename T, typename Get>
T bilinear(const CellCoord& c, Get get) {
    const T f00 = get(c.i, c.j);
    const T f10 = get(c.i + 1, c.j);
    const T f01 = get(c.i, c.j + 1);
    const T f11 = get(c.i + 1, c.j + 1);
    return (1.0 - c.s) * (1.0 - c.t) * f00 + c.s * (1.0 - c.t) * f10 + (1.0 - c.s) * c.t * f01 + c.s * c.t * f11;
}

}  // namespace

std::complex<double> interpolate(const ComplexField2D& f, Point2 p) noexcept {
    return bilinear<std::complex<double>>(locate(f.grid(), p), [&](int i, int j) { return f(i, j); });
}

double interpolate(const ScalarField2D& f, Point2 p) noexcept {
    return bilinear<double>(locate(f.grid(), p), [&](int i, int j) { return f(i, j); });
}

double line_integral(const VectorField2D& v, const Loop& loop) {
    const auto& g = v.grid();
    const auto samples = loop.densify(g);
    const auto vx = v.vx();
    const auto vy = v.vy();

    std::vector<std::array<double, 2>> values(samples.size());
    std::vector<std::array<double, 2>> bad;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const auto c = locate(g, samples[k]);
        const bool ok = v.valid(c.i, c.j) && v.valid(c.i + 1, c.j) && v.valid(c.i, c.j + 1) && v.valid(c.i + 1, c.j + 1);
        if (!ok) {
            bad.push_back({samples[k].x, samples[k].y});
            continue;
        }
        values[k] = {bilinear<double>(c, [&](int i, int j) { return vx[g.index(i, j)]; }),
                     bilinear<double>(c, [&](int i, int j) { return vy[g.index(i, j)]; })};
    }
    if (!bad.empty()) {
        std::ostringstream msg;
        msg << "loop passes through masked cells at " << bad.size() << " sample(s); first at (" << bad.front()[0]
            << ", " << bad.front()[1] << ")";
        throw MaskedPathError(msg.str(), std::move(bad));
    }

    double sum = 0.0;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const std::size_t n = (k + 1) % samples.size();
        const double ddx = samples[n].x - samples[k].x;
        const double ddy = samples[n].y - samples[k].y;
        sum += 0.5 * ((values[k][0] + values[n][0]) * ddx + (values[k][1] + values[n][1]) * ddy);
    }
    return sum;
}

}  // namespace flowlab
