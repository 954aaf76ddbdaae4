#include "flowlab/alpha_models.hpp"

#include <cmath>
#include <numbers>

namespace flowlab {

void AlphaModel::validate() const {
    if (!std::isfinite(alpha)) throw DomainError("alpha must be finite");
    if (!(r0 > 0.0) || !std::isfinite(r0)) throw DomainError("r0 must be positive");
    if (!(rho0 >= 0.0) || !std::isfinite(rho0)) throw DomainError("rho0 must be non-negative");
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be non-negative");
}

double penalty_density(const AlphaModel& model, double rho, double omega) noexcept {
    switch (model.penalty_form) {
        case PenaltyForm::RhoOmegaSquared: return model.lambda * rho * omega * omega;
    }
    return 0.0;
}

FlowFields alpha_fields(const AlphaModel& model, const Grid2D& grid) {
    grid.validate();
    if (!std::isfinite(model.alpha)) throw DomainError("alpha must be finite");
    const double a = model.alpha;
    const double aa = std::abs(a);
    const std::size_t n = grid.size();
    std::vector<double> rho(n), theta(n, 0.0), vx(n, 0.0), vy(n, 0.0), ux(n, 0.0), uy(n, 0.0), q(n, 0.0);
    Mask mask(n, 1);
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const auto k = grid.index(i, j);
            const double x = grid.x(i), y = grid.y(j);
            const double r2 = x * x + y * y;
            if (a == 0.0) {
                rho[k] = 1.0;
                continue;
            }
            if (r2 == 0.0) {
                rho[k] = 0.0;
                mask[k] = 0;
                continue;
            }
            rho[k] = std::pow(r2, aa);
            theta[k] = wrap_angle(a * std::atan2(y, x));
            vx[k] = -a * y / r2;
            vy[k] = a * x / r2;
            ux[k] = aa * x / r2;
            uy[k] = aa * y / r2;
            q[k] = -0.5 * a * a / r2;
        }
    }
    FlowFields f;
    f.rho = ScalarField2D(grid, std::move(rho));
    f.theta = ScalarField2D(grid, std::move(theta), mask);
    f.v = VectorField2D(grid, std::move(vx), std::move(vy), mask);
    f.u = VectorField2D(grid, std::move(ux), std::move(uy), mask);
    f.Q = ScalarField2D(grid, std::move(q), mask);
    f.eps_rho = 0.0;
    return f;
}

BalanceReport balance_residual(const FlowFields& flow, const std::optional<AlphaModel>& model,
                               const Annulus& annulus) {
    if (!flow.v || !flow.u) throw DomainError("balance_residual needs v and u");
    const auto& g = flow.rho.grid();
    const auto lap = laplacian(flow.rho);
    const auto& v = *flow.v;
    const auto& u = *flow.u;

    const bool penalized = model && model->lambda > 0.0;
    std::optional<ScalarField2D> omega;
    if (penalized) omega = curl2d(v);

    std::vector<double> res(g.size(), 0.0);
    Mask mask(g.size(), 0);
    const auto vx = v.vx(), vy = v.vy(), ux = u.vx(), uy = u.vy();
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const auto k = g.index(i, j);
            const double r = std::hypot(g.x(i) - annulus.center.x, g.y(j) - annulus.center.y);
            if (r < annulus.rmin || r > annulus.rmax) continue;
            if (!(v.valid_at(k) && u.valid_at(k) && lap.valid_at(k) && flow.rho.valid_at(k))) continue;
            if (penalized && !omega->valid_at(k)) continue;
            const double rho = flow.rho.at(k);
            double val = 0.5 * rho * (vx[k] * vx[k] + vy[k] * vy[k]) + 0.5 * rho * (ux[k] * ux[k] + uy[k] * uy[k]) -
                         0.25 * lap.at(k);
            if (penalized) val += penalty_density(*model, rho, omega->at(k));
            if (!std::isfinite(val)) continue;
            res[k] = val;
            mask[k] = 1;
        }
    }
    BalanceReport rep;
    rep.residual = ScalarField2D(g, std::move(res), std::move(mask));
    rep.stats = stats(rep.residual);
    rep.annulus = annulus;
    return rep;
}

RegularizedFlow regularize_flow(const AlphaModel& model, const Grid2D& grid) {
    model.validate();
    grid.validate();
    const double a = model.alpha;
    const double r02 = model.r0 * model.r0;
    const std::size_t n = grid.size();
    std::vector<double> vx(n), vy(n), om(n);
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const auto k = grid.index(i, j);
            const double x = grid.x(i), y = grid.y(j);
            const double r2 = x * x + y * y;
            const double d = r02 + r2;
            vx[k] = -a * y / d;
            vy[k] = a * x / d;
            om[k] = 2.0 * a * r02 / (d * d);
        }
    }
    return {VectorField2D(grid, std::move(vx), std::move(vy)), ScalarField2D(grid, std::move(om))};
}

FlowFields regularized_fields(const AlphaModel& model, const Grid2D& grid) {
    model.validate();
    auto reg = regularize_flow(model, grid);
    const double aa = std::abs(model.alpha);
    const std::size_t n = grid.size();
    std::vector<double> rho(n), theta(n, 0.0), ux(n, 0.0), uy(n, 0.0), q(n, 0.0);
    Mask tmask(n, 1), umask(n, 1), qmask(n, 1);
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const auto k = grid.index(i, j);
            const double x = grid.x(i), y = grid.y(j);
            const double r2 = x * x + y * y;
            const double base = (aa == 0.0) ? 1.0 : std::pow(r2, aa);
            rho[k] = base + model.rho0;
            if (r2 == 0.0 && aa != 0.0) tmask[k] = 0;
            else theta[k] = wrap_angle(model.alpha * std::atan2(y, x));
            if (aa == 0.0) continue;
            if (rho[k] <= 0.0 || (r2 == 0.0 && aa <= 0.5)) {
                umask[k] = qmask[k] = 0;
                continue;
            }
            // grad rho = 2|alpha| r^(2|alpha|-2) (x, y)
            const double g = (r2 == 0.0) ? 0.0 : 2.0 * aa * base / r2;
            ux[k] = 0.5 * g * x / rho[k];
            uy[k] = 0.5 * g * y / rho[k];
            // lap rho = 4 alpha^2 r^(2|alpha|-2)
            if (r2 == 0.0 && aa < 1.0) {
                qmask[k] = 0;
                continue;
            }
            const double lap = (r2 == 0.0) ? (aa == 1.0 ? 4.0 : 0.0) : 4.0 * aa * aa * base / r2;
            q[k] = -0.25 * lap / rho[k] + 0.5 * (ux[k] * ux[k] + uy[k] * uy[k]);
        }
    }
    FlowFields f;
    f.rho = ScalarField2D(grid, std::move(rho));
    f.theta = ScalarField2D(grid, std::move(theta), std::move(tmask));
    f.v = std::move(reg.v_tilde);
    f.u = VectorField2D(grid, std::move(ux), std::move(uy), std::move(umask));
    f.Q = ScalarField2D(grid, std::move(q), std::move(qmask));
    f.eps_rho = 0.0;
    return f;
}

ScalarField2D shift_density(const ScalarField2D& rho, double rho0) {
    if (!(rho0 >= 0.0) || !std::isfinite(rho0)) throw DomainError("density shift must be non-negative");
    std::vector<double> out(rho.values().begin(), rho.values().end());
    for (auto& r : out) r += rho0;
    return ScalarField2D(rho.grid(), std::move(out), rho.mask());
}

double penalty_balance_at_core(const AlphaModel& model, double rho_tilde_0) {
    if (model.alpha == 0.0) throw DegenerateModelError("alpha = 0: no vortex, no curl at the core");
    if (model.lambda == 0.0) throw DegenerateModelError("lambda = 0: no penalty term");
    model.validate();
    if (!(rho_tilde_0 > 0.0) || !std::isfinite(rho_tilde_0))
        throw DomainError("regularized core density must be positive");
    const double omega0 = 2.0 * model.alpha / (model.r0 * model.r0);
    return 4.0 * penalty_density(model, rho_tilde_0, omega0);
}

}  // namespace flowlab
