#include "flowlab/circle_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "flowlab/errors.hpp"

namespace flowlab {

namespace {

constexpr double pi = std::numbers::pi;

void check_state(const CircleState& s) {
    if (s.N < 0 || s.coeffs.size() != static_cast<std::size_t>(2 * s.N + 1))
        throw DimensionError("circle state: coefficient count does not match 2N+1");
    if (s.nphi < 1) throw DimensionError("circle state: nphi must be positive");
}

}  // namespace

double CircleState::retained_mass() const noexcept {
    double m = 0.0;
    for (const auto& c : coeffs) m += std::norm(c);
    return m;
}

CircleState fourier_project(double alpha, int N, int nphi) {
    if (!std::isfinite(alpha)) throw DomainError("alpha must be finite");
    if (N < 8) throw DomainError("mode cutoff N must be at least 8");
    if (nphi < 1) throw DomainError("nphi must be positive");
    CircleState s;
    s.alpha = alpha;
    s.N = N;
    s.nphi = nphi;
    s.coeffs.resize(static_cast<std::size_t>(2 * N + 1));
    for (int n = -N; n <= N; ++n) {
        const double d = alpha - n;
        std::complex<double> c;
        if (d == 0.0) {
            c = 1.0;
        } else if (d == std::round(d)) {
            c = 0.0;
        } else {
            c = std::polar(std::sin(pi * d) / (pi * d), pi * d);
        }
        s.coeffs[static_cast<std::size_t>(n + N)] = c;
    }
    return s;
}

std::vector<std::complex<double>> evolve_wavefunction(const CircleState& state, double t) {
    check_state(state);
    const auto np = static_cast<long long>(state.nphi);
    std::vector<std::complex<double>> roots(static_cast<std::size_t>(np));
    for (long long j = 0; j < np; ++j) roots[static_cast<std::size_t>(j)] = std::polar(1.0, 2.0 * pi * j / np);

    std::vector<std::complex<double>> rotated;
    std::vector<long long> modes;
    for (int n = -state.N; n <= state.N; ++n) {
        const auto c = state.c(n);
        if (c == 0.0) continue;
        const double nn = static_cast<double>(n) * n;
        rotated.push_back(c * std::polar(1.0, -nn * t));
        modes.push_back(((n % np) + np) % np);
    }

    std::vector<std::complex<double>> psi(static_cast<std::size_t>(np));
    for (long long k = 0; k < np; ++k) {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t m = 0; m < modes.size(); ++m) acc += rotated[m] * roots[static_cast<std::size_t>((modes[m] * k) % np)];
        psi[static_cast<std::size_t>(k)] = acc;
    }
    return psi;
}

std::vector<double> evolve_density(const CircleState& state, double t) {
    const auto psi = evolve_wavefunction(state, t);
    std::vector<double> rho(psi.size());
    std::transform(psi.begin(), psi.end(), rho.begin(), [](const auto& z) { return std::norm(z); });
    return rho;
}

DriftReport density_drift(const CircleState& state, const std::vector<double>& times) {
    if (std::find(times.begin(), times.end(), 0.0) == times.end())
        throw DomainError("density_drift: times must include t = 0");
    const auto rho0 = evolve_density(state, 0.0);
    double norm0 = 0.0;
    for (double r : rho0) norm0 += r * r;
    norm0 = std::sqrt(norm0);
    if (norm0 == 0.0) throw DomainError("density_drift: initial density vanishes");

    DriftReport rep;
    rep.times = times;
    for (double t : times) {
        double d = 0.0;
        if (t != 0.0) {
            const auto rho = evolve_density(state, t);
            for (std::size_t k = 0; k < rho.size(); ++k) d += (rho[k] - rho0[k]) * (rho[k] - rho0[k]);
            d = std::sqrt(d) / norm0;
        }
        rep.drift.push_back(d);
        rep.max_drift = std::max(rep.max_drift, d);
    }
    return rep;
}

StationaryFlowResidual flow_stationary_check(double alpha, int nphi) {
    if (!std::isfinite(alpha)) throw DomainError("alpha must be finite");
    if (nphi < 3) throw DimensionError("flow_stationary_check needs at least 3 points");
    const double dphi = 2.0 * pi / nphi;
    const double dt = 1e-3;
    const auto n = static_cast<std::size_t>(nphi);
    std::vector<double> rho(n, 1.0 / (2.0 * pi)), v(n, alpha);

    auto phase = [&](double phi, double t) { return alpha * phi - 0.5 * alpha * alpha * t; };

    StationaryFlowResidual res;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t kp = (k + 1) % n, km = (k + n - 1) % n;
        const double flux = (rho[kp] * v[kp] - rho[km] * v[km]) / (2.0 * dphi);

        const double amp = std::sqrt(rho[k]);
        const double lap_amp = (std::sqrt(rho[kp]) + std::sqrt(rho[km]) - 2.0 * amp) / (dphi * dphi);
        const double q = -0.5 * lap_amp / amp;
        const double phi = k * dphi;
        const double minus_dS_dt = -(phase(phi, dt) - phase(phi, -dt)) / (2.0 * dt);
        const double bohm = minus_dS_dt - 0.5 * v[k] * v[k] - q;

        res.continuity = std::max(res.continuity, std::abs(flux));
        res.bohm = std::max(res.bohm, std::abs(bohm));
    }
    return res;
}

}  // namespace flowlab
