#include "flowlab/flow_transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace flowlab {

FieldStats stats(const ScalarField2D& f) {
    FieldStats s;
    double sum = 0.0;
    for (std::size_t k = 0; k < f.grid().size(); ++k) {
        if (!f.valid_at(k)) continue;
        const double a = std::abs(f.at(k));
        s.max_abs = std::max(s.max_abs, a);
        sum += a;
        ++s.count;
    }
    s.mean_abs = s.count ? sum / static_cast<double>(s.count) : 0.0;
    return s;
}

double default_eps_rho(const ScalarField2D& rho) noexcept {
    double m = 0.0;
    for (double r : rho.values()) m = std::max(m, r);
    return 1e-12 * m;
}

FlowFields polar_decompose(const ComplexField2D& psi, double eps_rho) {
    if (!(eps_rho >= 0.0)) throw DomainError("eps_rho must be non-negative");
    const auto& g = psi.grid();
    std::vector<double> rho(g.size()), theta(g.size(), 0.0);
    Mask mask(g.size(), 0);
    const auto re = psi.re();
    const auto im = psi.im();
    for (std::size_t k = 0; k < g.size(); ++k) {
        rho[k] = re[k] * re[k] + im[k] * im[k];
        if (rho[k] > eps_rho) {
            theta[k] = std::atan2(im[k], re[k]);
            if (theta[k] == -std::numbers::pi) theta[k] = std::numbers::pi;
            mask[k] = 1;
        }
    }
    FlowFields out;
    out.rho = ScalarField2D(g, std::move(rho));
    out.theta = ScalarField2D(g, std::move(theta), std::move(mask));
    out.eps_rho = eps_rho;
    return out;
}

FlowFields polar_decompose(const ComplexField2D& psi) {
    const auto& g = psi.grid();
    double m = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) m = std::max(m, std::norm(psi.at(k)));
    return polar_decompose(psi, 1e-12 * m);
}

ComplexField2D polar_compose(const ScalarField2D& rho, const ScalarField2D& theta, double eps_rho) {
    const auto& g = rho.grid();
    if (!(theta.grid() == g)) throw DimensionError("rho and theta live on different grids");
    std::vector<double> re(g.size(), 0.0), im(g.size(), 0.0);
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double r = rho.at(k);
        if (r < 0.0) throw DomainError("negative density in polar_compose");
        if (!theta.valid_at(k)) {
            if (r <= eps_rho) continue;
            throw DomainError("phase undefined at a point with density above the floor");
        }
        const double a = std::sqrt(r);
        re[k] = a * std::cos(theta.at(k));
        im[k] = a * std::sin(theta.at(k));
    }
    return ComplexField2D(g, std::move(re), std::move(im));
}

ComplexField2D polar_compose(const ScalarField2D& rho, const ScalarField2D& theta) {
    return polar_compose(rho, theta, default_eps_rho(rho));
}

VectorField2D osmotic_velocity(const ScalarField2D& rho, double eps_rho) {
    const auto& g = rho.grid();
    std::vector<double> lnr(g.size(), 0.0);
    Mask m(g.size(), 0);
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (rho.valid_at(k) && rho.at(k) > eps_rho) {
            lnr[k] = std::log(rho.at(k));
            m[k] = 1;
        }
    }
    const auto grad = gradient(ScalarField2D(g, std::move(lnr), std::move(m)));
    std::vector<double> ux(grad.vx().begin(), grad.vx().end());
    std::vector<double> uy(grad.vy().begin(), grad.vy().end());
    auto mask = grad.mask();
    for (std::size_t k = 0; k < g.size(); ++k) {
        // centre point is outside the stencil but still needs density
        if (!(rho.at(k) > eps_rho)) mask[k] = 0;
        if (!mask[k]) {
            ux[k] = uy[k] = 0.0;
            continue;
        }
        ux[k] *= 0.5;
        uy[k] *= 0.5;
    }
    return VectorField2D(g, std::move(ux), std::move(uy), std::move(mask));
}

FlowFields kinematic_fields(FlowFields flow) {
    const auto& g = flow.rho.grid();
    const auto& th = flow.theta;
    if (!(th.grid() == g)) throw DimensionError("rho and theta live on different grids");
    const double eps = flow.eps_rho;

    auto ok = [&](int i, int j) { return th.valid(i, j) && flow.rho(i, j) > eps; };

    std::vector<double> vx(g.size(), 0.0), vy(g.size(), 0.0);
    Mask vmask(g.size(), 0);
    for (int j = 1; j < g.ny - 1; ++j) {
        for (int i = 1; i < g.nx - 1; ++i) {
            if (!(ok(i, j) && ok(i + 1, j) && ok(i - 1, j) && ok(i, j + 1) && ok(i, j - 1))) continue;
            const auto k = g.index(i, j);
            vx[k] = wrap_angle(th(i + 1, j) - th(i - 1, j)) / (2.0 * g.dx);
            vy[k] = wrap_angle(th(i, j + 1) - th(i, j - 1)) / (2.0 * g.dy);
            vmask[k] = 1;
        }
    }

    auto u = osmotic_velocity(flow.rho, eps);
    const auto lap = laplacian(flow.rho);

    std::vector<double> q(g.size(), 0.0);
    Mask qmask(g.size(), 0);
    const auto ux = u.vx();
    const auto uy = u.vy();
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (!(u.valid_at(k) && lap.valid_at(k) && th.valid_at(k))) continue;
        const double val = -0.25 * lap.at(k) / flow.rho.at(k) + 0.5 * (ux[k] * ux[k] + uy[k] * uy[k]);
        if (!std::isfinite(val)) continue;
        q[k] = val;
        qmask[k] = 1;
    }

    flow.v = VectorField2D(g, std::move(vx), std::move(vy), std::move(vmask));
    flow.u = std::move(u);
    flow.Q = ScalarField2D(g, std::move(q), std::move(qmask));
    return flow;
}

ScalarField2D quantum_potential_direct(const ScalarField2D& rho, double eps_rho) {
    const auto& g = rho.grid();
    std::vector<double> amp(g.size(), 0.0);
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (rho.at(k) < 0.0) throw DomainError("negative density");
        amp[k] = std::sqrt(rho.at(k));
    }
    const auto lap = laplacian(ScalarField2D(g, amp, rho.mask()));
    std::vector<double> q(g.size(), 0.0);
    Mask m(g.size(), 0);
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (!lap.valid_at(k) || !(rho.at(k) > eps_rho)) continue;
        const double val = -0.5 * lap.at(k) / amp[k];
        if (!std::isfinite(val)) continue;
        q[k] = val;
        m[k] = 1;
    }
    return ScalarField2D(g, std::move(q), std::move(m));
}

StationaryResidualReport stationary_residuals(const FlowFields& flow, const ScalarField2D& V, double energy) {
    if (!flow.v || !flow.u || !flow.Q) throw DomainError("stationary_residuals needs v, u and Q; run kinematic_fields");
    const auto& g = flow.rho.grid();
    if (!(V.grid() == g)) throw DimensionError("potential lives on a different grid");
    const auto& v = *flow.v;
    const auto vx = v.vx();
    const auto vy = v.vy();

    std::vector<double> jx(g.size()), jy(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        jx[k] = flow.rho.at(k) * vx[k];
        jy[k] = flow.rho.at(k) * vy[k];
    }
    auto cont = divergence(VectorField2D(g, std::move(jx), std::move(jy), v.mask()));

    std::vector<double> bohm(g.size(), 0.0);
    Mask bmask(g.size(), 0);
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (!(v.valid_at(k) && flow.Q->valid_at(k) && V.valid_at(k))) continue;
        bohm[k] = energy - 0.5 * (vx[k] * vx[k] + vy[k] * vy[k]) - V.at(k) - flow.Q->at(k);
        bmask[k] = 1;
    }

    StationaryResidualReport r;
    r.continuity_residual = std::move(cont);
    r.bohm_residual = ScalarField2D(g, std::move(bohm), std::move(bmask));
    r.energy = energy;
    r.continuity = stats(r.continuity_residual);
    r.bohm = stats(r.bohm_residual);
    return r;
}

}  // namespace flowlab
