#include <cmath>
#include <complex>

#include "doctest.h"
#include "flowlab/flow_transform.hpp"
#include "support.hpp"

using namespace flowlab;
using testsupport::pi;
using cd = std::complex<double>;

TEST_CASE("polar_decompose point values") {
    const Grid2D g{3, 3, 0, 0, 1, 1};
    const auto psi = ComplexField2D::from_function(g, [](double x, double y) { return cd(x, y); });
    const auto f = polar_decompose(psi);
    CHECK(f.rho(1, 1) == doctest::Approx(2.0));
    CHECK(f.theta(1, 1) == doctest::Approx(pi / 4));
    CHECK_FALSE(f.theta.valid(0, 0));
    CHECK(f.rho.valid(0, 0));

    const auto c = polar_decompose(ComplexField2D::from_function(g, [](double, double) { return std::polar(2.0, pi / 3); }));
    CHECK(c.rho(2, 1) == doctest::Approx(4.0));
    CHECK(c.theta(2, 1) == doctest::Approx(pi / 3));

    const auto neg = polar_decompose(ComplexField2D::from_function(g, [](double, double) { return cd(-1.0, -0.0); }));
    CHECK(neg.theta(1, 1) == pi);

    CHECK_THROWS_AS(polar_decompose(psi, -1.0), DomainError);
}

TEST_CASE("polar round trip") {
    const auto g = Grid2D::centered(65, 1.0);
    const auto psi = ComplexField2D::from_function(g, [](double x, double y) {
        return cd(x - 0.3, y + 0.1) * std::exp(cd(-x * x, 0.7 * y));
    });
    const auto flow = polar_decompose(psi);
    const auto back = polar_compose(flow.rho, flow.theta);
    double worst = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (!flow.theta.valid_at(k)) continue;
        worst = std::max(worst, std::abs(back.at(k) - psi.at(k)) / std::abs(psi.at(k)));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("polar_compose") {
    const auto g = Grid2D::centered(33, 1.0);
    const auto one = polar_compose(ScalarField2D::constant(g, 1.0), ScalarField2D::constant(g, 0.0));
    CHECK(one(5, 7) == cd(1.0, 0.0));

    const auto rho = ScalarField2D::from_function(g, [](double x, double y) { return x * x + y * y; });
    const auto theta = ScalarField2D::from_function(g, [](double x, double y) { return std::atan2(y, x); });
    const auto z = polar_compose(rho, theta);
    double worst = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) worst = std::max(worst, std::abs(z(i, j) - cd(g.x(i), g.y(j))));
    CHECK(worst <= 1e-15);

    const auto s = polar_compose(ScalarField2D::constant(g, 1.0 / (2 * pi)), ScalarField2D::constant(g, 0.4));
    CHECK(std::norm(s(3, 3)) == doctest::Approx(1.0 / (2 * pi)).epsilon(1e-14));

    std::vector<double> bad(g.size(), 1.0);
    bad[10] = -0.5;
    CHECK_THROWS_AS(polar_compose(ScalarField2D(g, bad), ScalarField2D::constant(g, 0.0)), DomainError);

    Mask m(g.size(), 1);
    m[12] = 0;
    const ScalarField2D masked_theta(g, std::vector<double>(g.size(), 0.0), m);
    CHECK_THROWS_AS(polar_compose(ScalarField2D::constant(g, 1.0), masked_theta), DomainError);
    std::vector<double> zero_at(g.size(), 1.0);
    zero_at[12] = 0.0;
    CHECK(polar_compose(ScalarField2D(g, zero_at), masked_theta).at(12) == cd(0.0, 0.0));
}

TEST_CASE("kinematic fields of a plane wave") {
    const auto g = Grid2D::centered(65, 1.0);
    const auto flow = kinematic_fields(polar_decompose(
        ComplexField2D::from_function(g, [](double x, double) { return std::polar(1.0, x); })));
    for (int j = 1; j < g.ny - 1; ++j) {
        for (int i = 1; i < g.nx - 1; ++i) {
            REQUIRE(flow.v->valid(i, j));
            REQUIRE(std::abs((*flow.v)(i, j)[0] - 1.0) <= 1e-12);
            REQUIRE(std::abs((*flow.v)(i, j)[1]) <= 1e-12);
            REQUIRE(std::abs((*flow.u)(i, j)[0]) <= 1e-12);
            REQUIRE(std::abs((*flow.Q)(i, j)) <= 1e-12);
        }
    }
}

TEST_CASE("kinematic fields of x+iy at r = 2") {
    const auto g = Grid2D::centered(257, 4.0);
    const auto flow = kinematic_fields(polar_decompose(
        ComplexField2D::from_function(g, [](double x, double y) { return cd(x, y); })));
    const auto [i, j] = g.nearest_node({2.0, 0.0});
    REQUIRE(g.x(i) == doctest::Approx(2.0));
    const auto v = (*flow.v)(i, j);
    const auto u = (*flow.u)(i, j);
    const double h2 = g.dx * g.dx;
    CHECK(std::abs(std::hypot(v[0], v[1]) - 0.5) <= h2);
    CHECK(std::abs(std::hypot(u[0], u[1]) - 0.5) <= h2);
    CHECK(std::abs((*flow.Q)(i, j) + 0.125) <= h2);
    CHECK(std::abs(quantum_potential_direct(flow.rho, 0.0)(i, j) + 0.125) <= h2);
    // the node itself is masked in theta and everything derived from it
    const auto [i0, j0] = g.nearest_node({0.0, 0.0});
    CHECK_FALSE(flow.theta.valid(i0, j0));
    CHECK_FALSE(flow.v->valid(i0 + 1, j0));
}

TEST_CASE("real Gaussian has no velocity") {
    const auto g = Grid2D::centered(65, 3.0);
    const auto flow = kinematic_fields(polar_decompose(
        ComplexField2D::from_function(g, [](double x, double y) { return cd(std::exp(-(x * x + y * y) / 2), 0.0); })));
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (!flow.v->valid_at(k)) continue;
        REQUIRE(flow.v->vx()[k] == 0.0);
        REQUIRE(flow.v->vy()[k] == 0.0);
    }
}

TEST_CASE("stationary residuals") {
    SUBCASE("plane wave k = 2, E = 2") {
        const auto g = Grid2D::centered(65, 1.0);
        const auto flow = kinematic_fields(polar_decompose(
            ComplexField2D::from_function(g, [](double x, double) { return std::polar(1.0, 2 * x); })));
        const auto rep = stationary_residuals(flow, ScalarField2D::constant(g, 0.0), 2.0);
        CHECK(rep.continuity.max_abs <= 1e-12);
        CHECK(rep.bohm.max_abs <= 1e-12);
        CHECK(rep.energy == 2.0);
    }
    SUBCASE("x+iy, E = 0, second order on an annulus") {
        double prev_bohm = 0.0;
        for (int n : {129, 257}) {
            const auto g = Grid2D::centered(n, 1.0);
            const auto flow = kinematic_fields(polar_decompose(
                ComplexField2D::from_function(g, [](double x, double y) { return cd(x, y); })));
            const auto rep = stationary_residuals(flow, ScalarField2D::constant(g, 0.0), 0.0);
            double bohm = 0.0, cont = 0.0;
            for (int j = 0; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i) {
                    const double r = std::hypot(g.x(i), g.y(j));
                    if (r < 0.2 || r > 1.0) continue;
                    if (rep.bohm_residual.valid(i, j)) bohm = std::max(bohm, std::abs(rep.bohm_residual(i, j)));
                    if (rep.continuity_residual.valid(i, j))
                        cont = std::max(cont, std::abs(rep.continuity_residual(i, j)));
                }
            const double h2 = g.dx * g.dx;
            CHECK(bohm <= 50 * h2);
            CHECK(cont <= 50 * h2);
            if (prev_bohm > 0) CHECK(prev_bohm / bohm > 3.4);
            prev_bohm = bohm;
        }
    }
    SUBCASE("missing kinematics") {
        const auto g = Grid2D::centered(9, 1.0);
        const auto flow = polar_decompose(ComplexField2D::from_function(g, [](double, double) { return cd(1, 0); }));
        CHECK_THROWS_AS(stationary_residuals(flow, ScalarField2D::constant(g, 0.0), 0.0), DomainError);
    }
}

TEST_CASE("default density floor") {
    const auto g = Grid2D::centered(5, 1.0);
    CHECK(default_eps_rho(ScalarField2D::constant(g, 4.0)) == doctest::Approx(4e-12));
    CHECK(default_eps_rho(ScalarField2D::constant(g, 0.0)) == 0.0);
    const auto s = stats(ScalarField2D(g, std::vector<double>(g.size(), -2.0)));
    CHECK(s.max_abs == 2.0);
    CHECK(s.mean_abs == 2.0);
    CHECK(s.count == 25);
}
