/// @file alpha_models.hpp
/// @brief Rotationally invariant vortex family rho = r^(2|alpha|), S = alpha phi,
/// its energy balance, and the regularized core (velocity cutoff, density shift, curl penalty).
#pragma once

#include <limits>
#include <optional>

#include "flowlab/flow_transform.hpp"

namespace flowlab {

enum class PenaltyForm { RhoOmegaSquared };

struct AlphaModel {
    double alpha = 1.0;
    double r0 = 1.0;      ///< core radius of the velocity cutoff
    double rho0 = 0.0;    ///< constant density shift
    double lambda = 0.0;  ///< penalty coefficient
    PenaltyForm penalty_form = PenaltyForm::RhoOmegaSquared;

    void validate() const;
};

/// Penalty energy density U(rho, omega).
double penalty_density(const AlphaModel& model, double rho, double omega) noexcept;

/// Closed-form rho, theta, v, u, Q of the family (centred at the origin). The
/// origin is masked in theta, v, u and Q when alpha != 0.
FlowFields alpha_fields(const AlphaModel& model, const Grid2D& grid);

/// Region over which balance statistics are collected.
struct Annulus {
    Point2 center;
    double rmin = 0.0;
    double rmax = std::numeric_limits<double>::infinity();
};

struct BalanceReport {
    ScalarField2D residual;
    FieldStats stats;
    Annulus annulus;
};

/// rho|v|^2/2 + rho|u|^2/2 (+ U) - lap(rho)/4, with lap from the 5-point
/// stencil and, when the model carries lambda > 0, U = penalty(rho, curl2d(v)).
BalanceReport balance_residual(const FlowFields& flow, const std::optional<AlphaModel>& model = std::nullopt,
                               const Annulus& annulus = {});

struct RegularizedFlow {
    VectorField2D v_tilde;
    ScalarField2D omega_analytic;
};

/// v -> v r^2/(r0^2 + r^2): tangential, |v~| = |alpha| r/(r0^2 + r^2), zero at the origin.
/// omega_analytic = 2 alpha r0^2/(r^2 + r0^2)^2.
RegularizedFlow regularize_flow(const AlphaModel& model, const Grid2D& grid);

/// Regularized bundle: rho~ = r^(2|alpha|) + rho0, v~ as above, u~ = grad(ln rho~)/2 in closed form.
FlowFields regularized_fields(const AlphaModel& model, const Grid2D& grid);

/// rho + rho0 pointwise. The mask is carried over.
ScalarField2D shift_density(const ScalarField2D& rho, double rho0);

/// Laplacian of the regularized density required at the core, where the
/// velocity terms of the modified balance vanish: 4 U(rho~(0), omega(0)) with omega(0) = 2 alpha / r0^2.
double penalty_balance_at_core(const AlphaModel& model, double rho_tilde_0);

}  // namespace flowlab
