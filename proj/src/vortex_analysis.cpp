#include "flowlab/vortex_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

namespace flowlab {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double max_loop_step = std::numbers::pi / 2;

/// Bilinear coefficients f(s,t) = c0 + c1 s + c2 t + c3 s t from the cell corners.
struct Bilinear {
    double c0, c1, c2, c3;
    Bilinear(double f00, double f10, double f01, double f11)
        : c0(f00), c1(f10 - f00), c2(f01 - f00), c3(f11 - f10 - f01 + f00) {}
    double operator()(double s, double t) const { return c0 + c1 * s + c2 * t + c3 * s * t; }
};

/// Common zero of the bilinear interpolants of re and im inside the unit cell.
bool bilinear_zero(const Bilinear& a, const Bilinear& b, double& s_out, double& t_out) {
    constexpr double tol = 1e-9;
    // Eliminating s from a(s,t) = 0 leaves a quadratic in t.
    const double qa = b.c2 * a.c3 - b.c3 * a.c2;
    const double qb = b.c0 * a.c3 + b.c2 * a.c1 - b.c1 * a.c2 - b.c3 * a.c0;
    const double qc = b.c0 * a.c1 - b.c1 * a.c0;

    std::vector<double> ts;
    const double scale = std::max({std::abs(qa), std::abs(qb), std::abs(qc)});
    if (scale == 0.0) return false;
    if (std::abs(qa) <= 1e-14 * scale) {
        if (std::abs(qb) <= 1e-14 * scale) return false;
        ts.push_back(-qc / qb);
    } else {
        const double disc = qb * qb - 4.0 * qa * qc;
        if (disc < 0.0) return false;
        const double sq = std::sqrt(disc);
        const double q = -0.5 * (qb + std::copysign(sq, qb));
        ts.push_back(q / qa);
        if (q != 0.0) ts.push_back(qc / q);
    }

    bool found = false;
    double best = 0.0;
    for (double t : ts) {
        if (!(t >= -tol && t <= 1.0 + tol)) continue;
        double s;
        const double da = a.c1 + a.c3 * t;
        const double db = b.c1 + b.c3 * t;
        if (std::abs(da) >= std::abs(db)) {
            if (da == 0.0) continue;
            s = -(a.c0 + a.c2 * t) / da;
        } else {
            s = -(b.c0 + b.c2 * t) / db;
        }
        if (!(s >= -tol && s <= 1.0 + tol)) continue;
        const double d = std::hypot(s - 0.5, t - 0.5);
        if (!found || d < best) {
            found = true;
            best = d;
            s_out = std::clamp(s, 0.0, 1.0);
            t_out = std::clamp(t, 0.0, 1.0);
        }
    }
    return found;
}

}  // namespace

const char* to_string(Regularity r) noexcept {
    switch (r) {
        case Regularity::FinitePositive: return "FinitePositive";
        case Regularity::Vanishing: return "Vanishing";
        case Regularity::Divergent: return "Divergent";
        case Regularity::Indeterminate: return "Indeterminate";
        case Regularity::Unclassified: return "Unclassified";
    }
    return "Unclassified";
}

Regularity regularity_from_string(const std::string& s) {
    for (auto r : {Regularity::FinitePositive, Regularity::Vanishing, Regularity::Divergent,
                   Regularity::Indeterminate, Regularity::Unclassified})
        if (s == to_string(r)) return r;
    throw FormatError("unknown regularity class '" + s + "'");
}

void RegularityConfig::validate() const {
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("regularity delta must lie in (0, 1)");
    if (!(fit_rmin >= 0.0 && fit_rmin < fit_rmax)) throw DomainError("need 0 <= fit_rmin < fit_rmax");
    if (nbins < 2) throw DomainError("need at least 2 radial bins");
    if (!(max_fit_residual > 0.0)) throw DomainError("max_fit_residual must be positive");
}

std::vector<NodeReport> detect_nodes(const ComplexField2D& psi) {
    const auto& g = psi.grid();
    std::vector<double> theta(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) theta[k] = std::arg(psi.at(k));

    // ex(i,j): edge (i,j)->(i+1,j); ey(i,j): edge (i,j)->(i,j+1)
    std::vector<double> ex(g.size(), 0.0), ey(g.size(), 0.0);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const auto k = g.index(i, j);
            if (i + 1 < g.nx) ex[k] = wrap_angle(theta[g.index(i + 1, j)] - theta[k]);
            if (j + 1 < g.ny) ey[k] = wrap_angle(theta[g.index(i, j + 1)] - theta[k]);
        }
    }

    std::vector<NodeReport> nodes;
    for (int j = 0; j + 1 < g.ny; ++j) {
        for (int i = 0; i + 1 < g.nx; ++i) {
            const double sum = ex[g.index(i, j)] + ey[g.index(i + 1, j)] - ex[g.index(i, j + 1)] - ey[g.index(i, j)];
            const int m = static_cast<int>(std::lround(sum / two_pi));
            if (m == 0) continue;

            NodeReport n;
            n.cell = {i, j};
            n.winding = m;
            const auto p00 = psi(i, j), p10 = psi(i + 1, j), p01 = psi(i, j + 1), p11 = psi(i + 1, j + 1);
            const Bilinear re(p00.real(), p10.real(), p01.real(), p11.real());
            const Bilinear im(p00.imag(), p10.imag(), p01.imag(), p11.imag());
            double s = 0.5, t = 0.5;
            n.position_refined = bilinear_zero(re, im, s, t);
            if (!n.position_refined) {
                s = t = 0.5;
                n.diagnostic = "bilinear zero curves do not meet inside the cell; cell centre used";
            }
            n.position = {g.x(i) + s * g.dx, g.y(j) + t * g.dy};
            nodes.push_back(std::move(n));
        }
    }
    return nodes;
}

int total_winding(const std::vector<NodeReport>& nodes) noexcept {
    int m = 0;
    for (const auto& n : nodes) m += n.winding;
    return m;
}

namespace {

struct Accumulation {
    double turns = 0.0;
    double max_step = 0.0;
};

Accumulation accumulate_phase(const ComplexField2D& psi, const Loop& loop) {
    const auto samples = loop.densify(psi.grid());
    std::vector<double> phase(samples.size());
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const auto z = interpolate(psi, samples[k]);
        if (z == std::complex<double>(0.0, 0.0)) {
            std::ostringstream msg;
            msg << "wave function vanishes on the loop at (" << samples[k].x << ", " << samples[k].y << ")";
            throw ZeroOnPathError(msg.str());
        }
        phase[k] = std::arg(z);
    }
    Accumulation acc;
    double sum = 0.0;
    for (std::size_t k = 0; k < phase.size(); ++k) {
        const double step = wrap_angle(phase[(k + 1) % phase.size()] - phase[k]);
        acc.max_step = std::max(acc.max_step, std::abs(step));
        sum += step;
    }
    acc.turns = sum / two_pi;
    return acc;
}

}  // namespace

double loop_turns(const ComplexField2D& psi, const Loop& loop) { return accumulate_phase(psi, loop).turns; }

int loop_winding(const ComplexField2D& psi, const Loop& loop) {
    const auto acc = accumulate_phase(psi, loop);
    const double m = std::round(acc.turns);
    if (std::abs(acc.turns - m) > 0.05) {
        std::ostringstream msg;
        msg << "phase accumulation " << acc.turns << " turns is not close to an integer; refine the loop sampling";
        throw WindingError(msg.str(), acc.turns);
    }
    if (acc.max_step > max_loop_step) {
        std::ostringstream msg;
        msg << "phase step of " << acc.max_step << " rad between loop samples; refine the loop sampling";
        throw WindingError(msg.str(), acc.turns);
    }
    return static_cast<int>(m);
}

double circulation(const VectorField2D& v, const Loop& loop) { return line_integral(v, loop) / two_pi; }

NodeReport classify_regularity(const ScalarField2D& rho, NodeReport node, const RegularityConfig& cfg) {
    cfg.validate();
    const auto& g = rho.grid();
    const double h = g.min_spacing();
    const double rmin = cfg.fit_rmin * h;
    const double rmax = cfg.fit_rmax * h;
    const auto nb = static_cast<std::size_t>(cfg.nbins);

    // Per-bin means of ln r and ln rho: exact slope for a pure power law.
    std::vector<double> sx(nb, 0.0), sy(nb, 0.0);
    std::vector<std::size_t> cnt(nb, 0);
    std::size_t samples = 0;
    const int i0 = std::max(0, static_cast<int>(std::floor((node.position.x - rmax - g.x0) / g.dx)));
    const int i1 = std::min(g.nx - 1, static_cast<int>(std::ceil((node.position.x + rmax - g.x0) / g.dx)));
    const int j0 = std::max(0, static_cast<int>(std::floor((node.position.y - rmax - g.y0) / g.dy)));
    const int j1 = std::min(g.ny - 1, static_cast<int>(std::ceil((node.position.y + rmax - g.y0) / g.dy)));
    for (int j = j0; j <= j1; ++j) {
        for (int i = i0; i <= i1; ++i) {
            const double r = std::hypot(g.x(i) - node.position.x, g.y(j) - node.position.y);
            if (r < rmin || r > rmax || r <= 0.0) continue;
            if (!rho.valid(i, j) || !(rho(i, j) > 0.0)) continue;
            auto b = static_cast<std::size_t>((r - rmin) / (rmax - rmin) * static_cast<double>(nb));
            b = std::min(b, nb - 1);
            sx[b] += std::log(r);
            sy[b] += std::log(rho(i, j));
            ++cnt[b];
            ++samples;
        }
    }
    node.fit_samples = samples;
    node.alpha_fit = 0.0;
    node.fit_residual = 0.0;
    node.delta_rho_estimate = 0.0;

    std::vector<double> xs, ys;
    for (std::size_t b = 0; b < nb; ++b) {
        if (!cnt[b]) continue;
        xs.push_back(sx[b] / static_cast<double>(cnt[b]));
        ys.push_back(sy[b] / static_cast<double>(cnt[b]));
    }
    if (samples < cfg.min_samples || xs.size() < 2) {
        std::ostringstream msg;
        msg << "too few samples in fit annulus: " << samples << " points in " << xs.size() << " bins (need "
            << cfg.min_samples << " points, 2 bins)";
        node.regularity = Regularity::Indeterminate;
        node.diagnostic = msg.str();
        return node;
    }

    const auto n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        mx += xs[k];
        my += ys[k];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sxx += (xs[k] - mx) * (xs[k] - mx);
        sxy += (xs[k] - mx) * (ys[k] - my);
    }
    if (sxx <= 0.0) {
        node.regularity = Regularity::Indeterminate;
        node.diagnostic = "degenerate radial bins";
        return node;
    }
    const double slope = sxy / sxx;
    const double icpt = my - slope * mx;
    double ss = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double e = ys[k] - (icpt + slope * xs[k]);
        ss += e * e;
    }
    node.alpha_fit = 0.5 * slope;
    node.fit_residual = std::sqrt(ss / n);

    if (node.fit_residual > cfg.max_fit_residual) {
        std::ostringstream msg;
        msg << "log-log fit residual " << node.fit_residual << " exceeds " << cfg.max_fit_residual
            << "; density is not a radial power law near the node";
        node.regularity = Regularity::Indeterminate;
        node.diagnostic = msg.str();
        return node;
    }

    if (node.alpha_fit < 1.0 - cfg.delta) {
        node.regularity = Regularity::Divergent;
    } else if (node.alpha_fit > 1.0 + cfg.delta) {
        node.regularity = Regularity::Vanishing;
    } else {
        node.regularity = Regularity::FinitePositive;
        const auto [ni, nj] = g.nearest_node(node.position);
        if (ni >= 1 && nj >= 1 && ni + 1 < g.nx && nj + 1 < g.ny && rho.valid(ni, nj) && rho.valid(ni + 1, nj) &&
            rho.valid(ni - 1, nj) && rho.valid(ni, nj + 1) && rho.valid(ni, nj - 1)) {
            const double c = rho(ni, nj);
            node.delta_rho_estimate = (rho(ni + 1, nj) + rho(ni - 1, nj) - 2.0 * c) / (g.dx * g.dx) +
                                      (rho(ni, nj + 1) + rho(ni, nj - 1) - 2.0 * c) / (g.dy * g.dy);
        } else {
            node.diagnostic = "node too close to the grid edge for a Laplacian estimate";
        }
    }
    return node;
}

std::array<std::size_t, 5> regularity_summary(const std::vector<NodeReport>& nodes) noexcept {
    std::array<std::size_t, 5> c{};
    for (const auto& n : nodes) ++c[static_cast<std::size_t>(n.regularity)];
    return c;
}

FactorOutResult factor_out(const ComplexField2D& psi, const NodeReport& node) {
    if (node.winding == 0) throw NoNodeError("factor_out needs a node with nonzero winding");
    const auto& g = psi.grid();
    const int m = node.winding;
    const int am = std::abs(m);

    std::vector<std::complex<double>> out(g.size());
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            std::complex<double> z(g.x(i) - node.position.x, g.y(j) - node.position.y);
            if (m < 0) z = std::conj(z);
            std::complex<double> f(1.0, 0.0);
            for (int p = 0; p < am; ++p) f *= z;
            out[g.index(i, j)] = psi(i, j) / f;
        }
    }

    const auto c = locate(g, node.position);
    std::array<std::array<int, 2>, 4> corners{{{c.i, c.j}, {c.i + 1, c.j}, {c.i, c.j + 1}, {c.i + 1, c.j + 1}}};
    std::array<std::complex<double>, 4> filled{};
    for (std::size_t q = 0; q < 4; ++q) {
        const auto [ci, cj] = corners[q];
        const int sx = (ci == c.i) ? -1 : 1;
        const int sy = (cj == c.j) ? -1 : 1;
        std::complex<double> acc(0.0, 0.0);
        int used = 0;
        const int xi1 = ci + sx, xi2 = ci + 2 * sx;
        if (xi2 >= 0 && xi2 < g.nx) {
            acc += 2.0 * out[g.index(xi1, cj)] - out[g.index(xi2, cj)];
            ++used;
        }
        const int yj1 = cj + sy, yj2 = cj + 2 * sy;
        if (yj2 >= 0 && yj2 < g.ny) {
            acc += 2.0 * out[g.index(ci, yj1)] - out[g.index(ci, yj2)];
            ++used;
        }
        if (!used) throw DomainError("node too close to the grid corner to fill the node cell");
        filled[q] = acc / static_cast<double>(used);
    }
    for (std::size_t q = 0; q < 4; ++q) out[g.index(corners[q][0], corners[q][1])] = filled[q];

    std::vector<double> re(g.size()), im(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        re[k] = out[k].real();
        im[k] = out[k].imag();
    }
    FactorOutResult result{ComplexField2D(g, std::move(re), std::move(im)), 0.0, false};
    result.rho_at_node = std::norm(interpolate(result.field, node.position));
    result.positive_at_node = result.rho_at_node > 0.0;

    // residual winding on a small circle around the node
    const double h = std::max(g.dx, g.dy);
    const double room = std::min({node.position.x - g.x0, g.x_max() - node.position.x, node.position.y - g.y0,
                                  g.y_max() - node.position.y});
    const double radius = std::min(3.0 * h, 0.9 * room);
    if (radius > 1.5 * h) {
        int residual = 0;
        try {
            residual = loop_winding(result.field, Loop::circle(node.position, radius, 64));
        } catch (const Error& e) {
            throw InconsistencyError(std::string("factored field has no well-defined winding around the node: ") +
                                     e.what());
        }
        if (residual != 0) {
            std::ostringstream msg;
            msg << "factored field still winds " << residual << " time(s) around the node";
            throw InconsistencyError(msg.str());
        }
    }
    return result;
}

BetaRoots beta_exponents(double alpha) noexcept {
    BetaRoots r;
    r.admissible = 0.0;
    r.singular = -2.0 * std::abs(alpha);
    if (r.singular == 0.0) r.singular = 0.0;  // drop the sign of -0
    r.degenerate = (alpha == 0.0);
    return r;
}

}  // namespace flowlab
