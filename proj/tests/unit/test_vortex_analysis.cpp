#include <cmath>
#include <complex>

#include "doctest.h"
#include "flowlab/alpha_models.hpp"
#include "flowlab/synth.hpp"
#include "flowlab/vortex_analysis.hpp"
#include "support.hpp"

using namespace flowlab;
using cd = std::complex<double>;

namespace {

ComplexField2D field(const Grid2D& g, std::function<cd(cd)> f) {
    return ComplexField2D::from_function(g, [&](double x, double y) { return f(cd(x, y)); });
}

ScalarField2D power_density(const Grid2D& g, double alpha) {
    return ScalarField2D::from_function(g, [alpha](double x, double y) { return std::pow(x * x + y * y, alpha); });
}

NodeReport origin_node(const Grid2D& g, int m = 1) {
    NodeReport n;
    const auto c = locate(g, {0, 0});
    n.cell = {c.i, c.j};
    n.winding = m;
    return n;
}

}  // namespace

TEST_CASE("detect_nodes on simple zeros") {
    const auto g = Grid2D::centered(257, 1.0);
    SUBCASE("x+iy, zero on a grid node") {
        const auto nodes = detect_nodes(field(g, [](cd z) { return z; }));
        REQUIRE(nodes.size() == 1);
        CHECK(nodes[0].winding == 1);
        CHECK(std::abs(nodes[0].position.x) < 1e-12);
        CHECK(std::abs(nodes[0].position.y) < 1e-12);
    }
    SUBCASE("x-iy") {
        const auto nodes = detect_nodes(field(g, [](cd z) { return std::conj(z); }));
        REQUIRE(nodes.size() == 1);
        CHECK(nodes[0].winding == -1);
    }
    SUBCASE("off-node zero is refined") {
        const auto nodes = detect_nodes(field(g, [](cd z) { return (z - cd(0.123, -0.0456)) * std::exp(z); }));
        REQUIRE(nodes.size() == 1);
        CHECK(nodes[0].position_refined);
        CHECK(std::abs(nodes[0].position.x - 0.123) < g.dx * g.dx);
        CHECK(std::abs(nodes[0].position.y + 0.0456) < g.dx * g.dx);
        CHECK(nodes[0].regularity == Regularity::Unclassified);
    }
    SUBCASE("split double zero") {
        const auto nodes = detect_nodes(field(g, [](cd z) { return z * z - 0.01; }));
        REQUIRE(nodes.size() == 2);
        CHECK(nodes[0].winding == 1);
        CHECK(nodes[1].winding == 1);
        CHECK(std::abs(std::abs(nodes[0].position.x) - 0.1) < g.dx * g.dx);
        CHECK(std::abs(nodes[0].position.y) < 1e-12);
        CHECK(std::abs(nodes[0].position.x + nodes[1].position.x) < 1e-12);
        CHECK(total_winding(nodes) == 2);
    }
    SUBCASE("no zeros") {
        CHECK(detect_nodes(field(g, [](cd z) { return std::exp(z); })).empty());
    }
}

TEST_CASE("loop_winding") {
    const auto g = Grid2D::centered(257, 1.0);
    for (int m = -3; m <= 3; ++m) {
        CAPTURE(m);
        const auto psi = field(g, [m](cd z) { return m >= 0 ? std::pow(z, m) : std::pow(std::conj(z), -m); });
        CHECK(loop_winding(psi, Loop::circle({0, 0}, 0.5)) == m);
    }
    const auto split = field(g, [](cd z) { return z * z - 0.01; });
    CHECK(loop_winding(split, Loop::circle({0, 0}, 0.5)) == 2);
    CHECK(loop_winding(split, Loop::circle({0.1, 0}, 0.05)) == 1);
    CHECK(loop_winding(split, Loop::circle({0.5, 0.5}, 0.2)) == 0);

    SUBCASE("zero on the path") {
        CHECK_THROWS_AS(loop_winding(field(g, [](cd z) { return z - 0.5; }), Loop::circle({0, 0}, 0.5, 4)),
                        ZeroOnPathError);
    }
    SUBCASE("under-sampled loop") {
        const auto psi = field(g, [](cd z) { return std::pow(z, 12); });
        const Loop coarse({{0.6, 0}, {0, 0.6}, {-0.6, 0}, {0, -0.6}}, 0.01);
        CHECK_THROWS_AS(loop_winding(psi, coarse), WindingError);
        CHECK(loop_winding(psi, Loop::circle({0, 0}, 0.6)) == 12);
    }
}

TEST_CASE("circulation") {
    const auto g = Grid2D::centered(257, 1.5);
    const auto sq = kinematic_fields(polar_decompose(field(g, [](cd z) { return z * z; })));
    CHECK(circulation(*sq.v, Loop::circle({0, 0}, 1.0)) == doctest::Approx(2.0).epsilon(1e-3));

    AlphaModel m;
    m.alpha = 1.0;
    m.r0 = 1.0;
    const auto rf = regularize_flow(m, g);
    CHECK(std::abs(circulation(rf.v_tilde, Loop::circle({0, 0}, 1.0)) - 0.5) < 1e-2);

    Mask mask(g.size(), 1);
    mask[g.index(128, 128)] = 0;
    const VectorField2D hole(g, std::vector<double>(g.size(), 0.0), std::vector<double>(g.size(), 1.0), mask);
    CHECK_THROWS_AS(circulation(hole, Loop::circle({0, 0}, 0.004)), MaskedPathError);
}

TEST_CASE("classify_regularity on power densities") {
    const auto g = Grid2D::centered(257, 1.0);
    SUBCASE("r^2 is FinitePositive with the stencil value") {
        const auto n = classify_regularity(power_density(g, 1.0), origin_node(g));
        CHECK(n.regularity == Regularity::FinitePositive);
        CHECK(n.alpha_fit == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(n.delta_rho_estimate == doctest::Approx(4.0).epsilon(1e-12));
        CHECK(n.fit_samples >= 12);
    }
    SUBCASE("r is Divergent") {
        const auto n = classify_regularity(power_density(g, 0.5), origin_node(g));
        CHECK(n.regularity == Regularity::Divergent);
        CHECK(n.alpha_fit == doctest::Approx(0.5).epsilon(1e-9));
    }
    SUBCASE("r^4 is Vanishing") {
        const auto n = classify_regularity(power_density(g, 2.0), origin_node(g));
        CHECK(n.regularity == Regularity::Vanishing);
        CHECK(n.alpha_fit == doctest::Approx(2.0).epsilon(1e-9));
    }
    SUBCASE("too few samples") {
        RegularityConfig cfg;
        cfg.fit_rmin = 0.5;
        cfg.fit_rmax = 1.2;
        const auto n = classify_regularity(power_density(g, 1.0), origin_node(g), cfg);
        CHECK(n.regularity == Regularity::Indeterminate);
        CHECK_FALSE(n.diagnostic.empty());
    }
    SUBCASE("poor power-law fit") {
        const auto rho = ScalarField2D::from_function(g, [](double x, double y) {
            const double r2 = x * x + y * y;
            return r2 * (1.0 + 0.9 * std::sin(400.0 * std::sqrt(r2)));
        });
        CHECK(classify_regularity(rho, origin_node(g)).regularity == Regularity::Indeterminate);
    }
    SUBCASE("invalid config") {
        RegularityConfig cfg;
        cfg.delta = 0.0;
        CHECK_THROWS_AS(classify_regularity(power_density(g, 1.0), origin_node(g), cfg), DomainError);
    }
}

TEST_CASE("regularity_summary counts every class") {
    std::vector<NodeReport> nodes(5);
    nodes[0].regularity = Regularity::Divergent;
    nodes[1].regularity = Regularity::Divergent;
    nodes[2].regularity = Regularity::Indeterminate;
    nodes[3].regularity = Regularity::FinitePositive;
    const auto s = regularity_summary(nodes);
    CHECK(s[static_cast<int>(Regularity::Divergent)] == 2);
    CHECK(s[static_cast<int>(Regularity::Indeterminate)] == 1);
    CHECK(s[static_cast<int>(Regularity::FinitePositive)] == 1);
    CHECK(s[static_cast<int>(Regularity::Unclassified)] == 1);
    CHECK(s[static_cast<int>(Regularity::Vanishing)] == 0);
    for (auto r : {Regularity::FinitePositive, Regularity::Vanishing, Regularity::Divergent, Regularity::Indeterminate,
                   Regularity::Unclassified})
        CHECK(regularity_from_string(to_string(r)) == r);
    CHECK_THROWS_AS(regularity_from_string("Finite"), FormatError);
}

TEST_CASE("factor_out") {
    const auto g = Grid2D::centered(129, 1.0);
    SUBCASE("(x+iy)^2 leaves one") {
        const auto psi = field(g, [](cd z) { return z * z; });
        auto nodes = detect_nodes(psi);
        REQUIRE(total_winding(nodes) == 2);
        NodeReport node = origin_node(g, 2);
        const auto res = factor_out(psi, node);
        for (std::size_t k = 0; k < g.size(); ++k) REQUIRE(std::abs(res.field.at(k) - cd(1, 0)) < 1e-12);
        CHECK(res.rho_at_node == doctest::Approx(1.0));
        CHECK(res.positive_at_node);
    }
    SUBCASE("(x+iy) e^x leaves e^x") {
        const auto psi = field(g, [](cd z) { return z * std::exp(z.real()); });
        const auto nodes = detect_nodes(psi);
        REQUIRE(nodes.size() == 1);
        const auto res = factor_out(psi, nodes[0]);
        CHECK(res.rho_at_node == doctest::Approx(1.0).epsilon(1e-3));
        for (int j = 0; j < g.ny; j += 7)
            for (int i = 0; i < g.nx; i += 7) {
                if (std::hypot(g.x(i), g.y(j)) < 2 * g.dx) continue;
                REQUIRE(std::abs(res.field(i, j) - std::exp(g.x(i))) < 1e-12);
            }
        CHECK(loop_winding(res.field, Loop::circle({0, 0}, 0.3)) == 0);
    }
    SUBCASE("off-node conjugate zero") {
        const cd z0(0.2031, -0.1107);
        const auto psi = field(g, [z0](cd z) { return std::conj(z - z0) * (1.0 + 0.2 * z); });
        const auto nodes = detect_nodes(psi);
        REQUIRE(nodes.size() == 1);
        REQUIRE(nodes[0].winding == -1);
        const auto res = factor_out(psi, nodes[0]);
        CHECK(res.positive_at_node);
        CHECK(loop_winding(res.field, Loop::circle({z0.real(), z0.imag()}, 0.2)) == 0);
    }
    SUBCASE("errors") {
        const auto psi = field(g, [](cd z) { return z; });
        CHECK_THROWS_AS(factor_out(psi, origin_node(g, 0)), NoNodeError);
        CHECK_THROWS_AS(factor_out(psi, origin_node(g, 2)), InconsistencyError);
    }
}

TEST_CASE("beta exponents") {
    const auto one = beta_exponents(1.0);
    CHECK(one.admissible == 0.0);
    CHECK(one.singular == -2.0);
    CHECK_FALSE(one.degenerate);
    const auto zero = beta_exponents(0.0);
    CHECK(zero.admissible == 0.0);
    CHECK(zero.singular == 0.0);
    CHECK(zero.degenerate);
    CHECK(beta_exponents(1.5).singular == -3.0);
    CHECK(beta_exponents(-1.5).singular == -3.0);
}
