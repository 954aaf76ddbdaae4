/// @file circle_lab.hpp
/// @brief Free particle on the circle, H = p^2 with hbar = 1: evolution of the
/// discontinuous state e^{i alpha phi} (0 <= phi < 2 pi) by exact mode phase rotation.
#pragma once

#include <complex>
#include <vector>

namespace flowlab {

struct CircleState {
    double alpha = 0.0;
    int N = 0;                                  ///< modes n in [-N, N]
    std::vector<std::complex<double>> coeffs;   ///< coeffs[n + N] = c_n
    int nphi = 0;                               ///< evaluation points on [0, 2 pi)

    std::complex<double> c(int n) const { return coeffs.at(static_cast<std::size_t>(n + N)); }
    /// sum |c_n|^2 over the retained modes
    double retained_mass() const noexcept;
    /// 1 - retained_mass(): weight of the discarded modes
    double tail_mass() const noexcept { return 1.0 - retained_mass(); }
};

/// c_n = (e^{2 pi i (alpha - n)} - 1) / (2 pi i (alpha - n)), evaluated as
/// e^{i pi d} sin(pi d)/(pi d) with d = alpha - n; exactly 1 for d = 0 and 0 for other integer d.
CircleState fourier_project(double alpha, int N, int nphi = 4096);

/// rho(phi_k, t) = |sum_n c_n e^{i n phi_k} e^{-i n^2 t}|^2 at phi_k = 2 pi k / nphi.
std::vector<double> evolve_density(const CircleState& state, double t);

/// Same sum, returning psi itself.
std::vector<std::complex<double>> evolve_wavefunction(const CircleState& state, double t);

struct DriftReport {
    std::vector<double> times;
    std::vector<double> drift;  ///< ||rho(t) - rho(0)||_2 / ||rho(0)||_2
    double max_drift = 0.0;
};

/// Relative L2 drift of the density; times must contain 0.
DriftReport density_drift(const CircleState& state, const std::vector<double>& times);

struct StationaryFlowResidual {
    double continuity = 0.0;  ///< max |d(rho v)/dphi|
    double bohm = 0.0;        ///< max |-dS/dt - v^2/2 - Q|
};

/// Checks rho = 1/(2 pi), v = alpha, S = alpha phi - alpha^2 t / 2 against the
/// continuity and Bohm equations on an nphi-point periodic grid.
StationaryFlowResidual flow_stationary_check(double alpha, int nphi = 256);

}  // namespace flowlab
