/// @file flow_transform.hpp
/// @brief Wave function <-> flow variables (rho, phase, v, u, Q) and stationary residuals.
///
/// Units: hbar = 1, mass = 1. The Bohm equation is used in its stationary
/// form E = v^2/2 + V + Q.
#pragma once

#include <optional>

#include "flowlab/field_core.hpp"

namespace flowlab {

struct FlowFields {
    ScalarField2D rho;
    /// Wrapped phase in (-pi, pi], masked where rho <= eps_rho.
    ScalarField2D theta;
    std::optional<VectorField2D> v;
    std::optional<VectorField2D> u;
    std::optional<ScalarField2D> Q;
    double eps_rho = 0.0;
};

/// Max/mean absolute value over the valid points of a field.
struct FieldStats {
    double max_abs = 0.0;
    double mean_abs = 0.0;
    std::size_t count = 0;
};
FieldStats stats(const ScalarField2D& f);

struct StationaryResidualReport {
    ScalarField2D continuity_residual;
    ScalarField2D bohm_residual;
    double energy = 0.0;
    FieldStats continuity;
    FieldStats bohm;
};

/// 1e-12 * max(rho); zero for an all-zero density.
double default_eps_rho(const ScalarField2D& rho) noexcept;

FlowFields polar_decompose(const ComplexField2D& psi, double eps_rho);
FlowFields polar_decompose(const ComplexField2D& psi);

/// psi = sqrt(rho) e^{i theta}. Points with masked theta get psi = 0 when
/// rho <= eps_rho; a masked phase above the floor is a DomainError.
ComplexField2D polar_compose(const ScalarField2D& rho, const ScalarField2D& theta, double eps_rho);
ComplexField2D polar_compose(const ScalarField2D& rho, const ScalarField2D& theta);

/// u = grad(ln rho) / 2 from centered differences of ln rho; masked wherever
/// a stencil point has rho <= eps_rho.
VectorField2D osmotic_velocity(const ScalarField2D& rho, double eps_rho);

/// Fills v (from wrapped phase differences), u and Q = -lap(rho)/(4 rho) + |u|^2/2.
/// The phase step between neighbouring nodes must stay below pi/2 for v to be exact.
FlowFields kinematic_fields(FlowFields flow);

/// Q = -lap(sqrt(rho)) / (2 sqrt(rho)), the direct form of the quantum potential.
ScalarField2D quantum_potential_direct(const ScalarField2D& rho, double eps_rho);

/// Continuity residual div(rho v) and Bohm residual E - v^2/2 - V - Q.
StationaryResidualReport stationary_residuals(const FlowFields& flow, const ScalarField2D& V, double energy);

}  // namespace flowlab
