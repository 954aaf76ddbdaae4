#include <cmath>

#include "doctest.h"
#include "flowlab/field_core.hpp"
#include "support.hpp"

using namespace flowlab;
using testsupport::pi;

namespace {

Grid2D unit_grid(int n) { return Grid2D::centered(n, 1.0); }

}  // namespace

TEST_CASE("grid layout is row-major with x fastest") {
    const Grid2D g{4, 3, 0.0, 10.0, 1.0, 2.0};
    CHECK(g.index(0, 0) == 0);
    CHECK(g.index(3, 0) == 3);
    CHECK(g.index(0, 1) == 4);
    CHECK(g.index(2, 2) == 10);
    const auto f = ScalarField2D::from_function(g, [](double x, double y) { return 100 * y + x; });
    CHECK(f.at(g.index(2, 1)) == 1202.0);
    CHECK(f(3, 2) == 1403.0);
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS((Grid2D{2, 5, 0, 0, 1, 1}.validate()), DimensionError);
    CHECK_THROWS_AS((Grid2D{5, 5, 0, 0, 0.0, 1}.validate()), DimensionError);
    CHECK_THROWS_AS(Grid2D::centered(2, 1.0), DimensionError);
    const auto g = Grid2D::centered_spacing(0.005, 2.05);
    CHECK(g.nx == 821);
    CHECK(g.x(410) == 0.0);
    CHECK(g.x_max() >= 2.05 - 1e-12);
}

TEST_CASE("field construction rejects bad data") {
    const auto g = unit_grid(5);
    CHECK_THROWS_AS(ScalarField2D(g, std::vector<double>(24, 0.0)), DimensionError);
    std::vector<double> v(25, 1.0);
    v[7] = std::nan("");
    CHECK_THROWS_AS(ScalarField2D(g, v), DomainError);
    CHECK_THROWS_AS(ComplexField2D(g, std::vector<double>(25, 0.0), std::vector<double>(3, 0.0)), DimensionError);
    CHECK_THROWS_AS(ScalarField2D(g, std::vector<double>(25, 0.0), Mask(4, 1)), DimensionError);
}

TEST_CASE("wrap_angle maps into (-pi, pi]") {
    CHECK(wrap_angle(-pi) == doctest::Approx(pi).epsilon(1e-15));
    CHECK(wrap_angle(pi) == doctest::Approx(pi).epsilon(1e-15));
    CHECK(wrap_angle(3 * pi / 2) == doctest::Approx(-pi / 2));
    CHECK(wrap_angle(0.25) == 0.25);
    CHECK(wrap_angle(-7.0) == doctest::Approx(-7.0 + 2 * pi));
}

TEST_CASE("laplacian") {
    const auto g = unit_grid(129);
    SUBCASE("quadratic is exact and boundary is masked") {
        const auto L = laplacian(ScalarField2D::from_function(g, [](double x, double y) { return x * x + y * y; }));
        for (int j = 0; j < g.ny; ++j) {
            for (int i = 0; i < g.nx; ++i) {
                const bool interior = i > 0 && j > 0 && i < g.nx - 1 && j < g.ny - 1;
                REQUIRE(L.valid(i, j) == interior);
                if (interior) REQUIRE(std::abs(L(i, j) - 4.0) <= 1e-12);
            }
        }
    }
    SUBCASE("constant gives zero") {
        const auto L = laplacian(ScalarField2D::constant(g, 3.7));
        for (std::size_t k = 0; k < g.size(); ++k)
            if (L.valid_at(k)) REQUIRE(L.at(k) == 0.0);
    }
    SUBCASE("r^4 at (1,0) with h = 0.01") {
        // the 5-point truncation error of a quartic is h^2/12 (f_xxxx + f_yyyy) = 4 h^2 exactly
        const Grid2D q{101, 101, 0.5, -0.5, 0.01, 0.01};
        const auto L = laplacian(ScalarField2D::from_function(q, [](double x, double y) {
            const double r2 = x * x + y * y;
            return r2 * r2;
        }));
        CHECK(L(50, 50) == doctest::Approx(16.0004).epsilon(1e-9));
        CHECK(std::abs(L(50, 50) - 16.0) < 1e-3);
    }
    SUBCASE("masked input spreads to its stencil") {
        Mask m(g.size(), 1);
        m[g.index(10, 10)] = 0;
        const ScalarField2D f(g, std::vector<double>(g.size(), 1.0), m);
        const auto L = laplacian(f);
        CHECK_FALSE(L.valid(10, 10));
        CHECK_FALSE(L.valid(11, 10));
        CHECK_FALSE(L.valid(10, 9));
        CHECK(L.valid(11, 11));
    }
}

TEST_CASE("gradient") {
    const auto g = unit_grid(129);
    const auto G = gradient(ScalarField2D::from_function(g, [](double x, double y) { return x * x + y * y; }));
    double err = 0.0;
    for (int j = 1; j < g.ny - 1; ++j)
        for (int i = 1; i < g.nx - 1; ++i) {
            const auto [gx, gy] = G(i, j);
            err = std::max({err, std::abs(gx - 2 * g.x(i)), std::abs(gy - 2 * g.y(j))});
        }
    CHECK(err <= 1e-12);
    CHECK_FALSE(G.valid(0, 5));

    const auto C = gradient(ScalarField2D::constant(g, -2.0));
    CHECK(C(64, 64)[0] == 0.0);
    CHECK(C(64, 64)[1] == 0.0);

    const double h = g.dx;
    const auto S = gradient(ScalarField2D::from_function(g, [](double x, double) { return std::sin(x); }));
    double es = 0.0;
    for (int j = 1; j < g.ny - 1; ++j)
        for (int i = 1; i < g.nx - 1; ++i) {
            es = std::max(es, std::abs(S(i, j)[0] - std::cos(g.x(i))));
            REQUIRE(S(i, j)[1] == 0.0);
        }
    CHECK(es <= h * h / 6.0);
}

TEST_CASE("curl2d") {
    const auto g = unit_grid(65);
    const auto rot = VectorField2D::from_function(g, [](double x, double y) { return std::array<double, 2>{-y, x}; });
    const auto w = curl2d(rot);
    for (int j = 1; j < g.ny - 1; ++j)
        for (int i = 1; i < g.nx - 1; ++i) REQUIRE(std::abs(w(i, j) - 2.0) <= 1e-12);

    const auto f = ScalarField2D::from_function(g, [](double x, double y) { return std::sin(2 * x) * std::exp(y); });
    const auto cg = curl2d(gradient(f));
    double e = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k)
        if (cg.valid_at(k)) e = std::max(e, std::abs(cg.at(k)));
    CHECK(e <= 10 * g.dx * g.dx);

    const auto d = divergence(rot);
    CHECK(std::abs(d(20, 20)) <= 1e-14);
}

TEST_CASE("line_integral") {
    const auto g = Grid2D::centered(201, 2.0);
    SUBCASE("winding field on the unit circle") {
        const auto v = VectorField2D::from_function(g, [](double x, double y) {
            const double r2 = x * x + y * y;
            return r2 > 0 ? std::array<double, 2>{-y / r2, x / r2} : std::array<double, 2>{0.0, 0.0};
        });
        const double I = line_integral(v, Loop::circle({0, 0}, 1.0, 256, 8.0));
        CHECK(std::abs(I - 2 * pi) / (2 * pi) < 1e-3);
    }
    SUBCASE("constant field cancels") {
        const auto v = VectorField2D::from_function(g, [](double, double) { return std::array<double, 2>{0.3, -1.2}; });
        CHECK(std::abs(line_integral(v, Loop({{-1.1, -0.3}, {0.7, -0.9}, {1.3, 0.8}, {-0.2, 1.5}}))) < 1e-13);
    }
    SUBCASE("masked samples are listed") {
        Mask m(g.size(), 1);
        m[g.index(150, 100)] = 0;  // the node at (1, 0)
        const VectorField2D v(g, std::vector<double>(g.size(), 1.0), std::vector<double>(g.size(), 0.0), m);
        try {
            line_integral(v, Loop::circle({0, 0}, 1.0));
            FAIL("expected MaskedPathError");
        } catch (const MaskedPathError& e) {
            CHECK_FALSE(e.samples().empty());
            for (const auto& s : e.samples()) CHECK(std::abs(s[0] - 1.0) < 0.05);
        }
    }
    SUBCASE("loop leaving the grid") {
        const auto v = VectorField2D::from_function(g, [](double, double) { return std::array<double, 2>{1, 0}; });
        CHECK_THROWS_AS(line_integral(v, Loop::circle({1.5, 0}, 1.0)), DomainError);
    }
}

TEST_CASE("loop construction and densify") {
    CHECK_THROWS_AS(Loop({{0, 0}, {1, 0}}), DomainError);
    CHECK_THROWS_AS(Loop::circle({0, 0}, -1.0), DomainError);
    const Loop sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, 2.0);
    CHECK(sq.length() == doctest::Approx(4.0));
    const Grid2D g{21, 21, -0.5, -0.5, 0.1, 0.1};
    const auto pts = sq.densify(g);
    // each unit side gets ceil(1 / 0.1 * 2) = 20 subsegments
    CHECK(pts.size() == 80);
    CHECK(pts.front().x == 0.0);
    CHECK(pts[20].x == 1.0);
}

TEST_CASE("bilinear interpolation") {
    const Grid2D g{5, 5, 0, 0, 1, 1};
    const auto f = ScalarField2D::from_function(g, [](double x, double y) { return 2 * x - 3 * y + x * y; });
    CHECK(interpolate(f, {1.25, 2.5}) == doctest::Approx(2 * 1.25 - 3 * 2.5 + 1.25 * 2.5));
    const auto c = locate(g, {3.5, 0.25});
    CHECK(c.i == 3);
    CHECK(c.j == 0);
    CHECK(c.s == doctest::Approx(0.5));
    CHECK(c.t == doctest::Approx(0.25));
    const auto edge = locate(g, {4.0, 4.0});
    CHECK(edge.i == 3);
    CHECK(edge.s == 1.0);
}
