/// @file vortex_analysis.hpp
/// @brief Node detection, winding numbers, circulation and regularity of the density at nodes.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "flowlab/field_core.hpp"

namespace flowlab {

/// Behaviour of lap(rho) at a node, read off the radial exponent rho ~ r^(2 alpha).
enum class Regularity { FinitePositive, Vanishing, Divergent, Indeterminate, Unclassified };

const char* to_string(Regularity r) noexcept;
Regularity regularity_from_string(const std::string& s);

struct NodeReport {
    std::array<int, 2> cell{0, 0};  ///< lower-left node of the plaquette
    Point2 position;
    bool position_refined = false;  ///< false: bilinear zero curves did not meet, cell centre used
    int winding = 0;
    Regularity regularity = Regularity::Unclassified;
    double alpha_fit = 0.0;
    double fit_residual = 0.0;
    double delta_rho_estimate = 0.0;  ///< only meaningful for FinitePositive
    std::size_t fit_samples = 0;
    std::string diagnostic;
};

struct RegularityConfig {
    double delta = 0.1;        ///< half-width of the accepted band around alpha = 1
    double fit_rmin = 2.0;     ///< in units of the grid spacing
    double fit_rmax = 10.0;    ///< in units of the grid spacing
    std::size_t min_samples = 12;
    int nbins = 8;
    double max_fit_residual = 0.1;  ///< rms of the log-log fit above which a node is Indeterminate

    void validate() const;
};

/// Plaquette scan in row-major order. Each grid edge carries one wrapped phase
/// difference, taken in +x / +y direction, so that winding sums over adjacent
/// plaquettes telescope exactly.
std::vector<NodeReport> detect_nodes(const ComplexField2D& psi);

/// Sum of windings of a node list.
int total_winding(const std::vector<NodeReport>& nodes) noexcept;

/// Accumulated phase along the densified loop, in turns (not rounded).
double loop_turns(const ComplexField2D& psi, const Loop& loop);

/// loop_turns rounded to the nearest integer. Throws ZeroOnPathError when psi
/// vanishes at a sample, and WindingError when the accumulation is more than
/// 0.05 away from an integer or a single step between samples exceeds pi/2.
int loop_winding(const ComplexField2D& psi, const Loop& loop);

/// line_integral(v, loop) / 2pi. Not rounded: non-potential flows give non-integer values.
double circulation(const VectorField2D& v, const Loop& loop);

/// Fills regularity, alpha_fit, fit_residual and delta_rho_estimate.
NodeReport classify_regularity(const ScalarField2D& rho, NodeReport node, const RegularityConfig& cfg = {});

/// Counts per regularity class, indexed by static_cast<int>(Regularity).
std::array<std::size_t, 5> regularity_summary(const std::vector<NodeReport>& nodes) noexcept;

struct FactorOutResult {
    ComplexField2D field;
    double rho_at_node = 0.0;
    bool positive_at_node = false;
};

/// psi / (x'+iy')^m for m > 0, psi / (x'-iy')^|m| for m < 0, centred on the
/// node. The four corners of the node cell are filled by linear
/// extrapolation from outside the cell. Throws NoNodeError for m = 0 and
/// InconsistencyError if the result still winds around the node.
FactorOutResult factor_out(const ComplexField2D& psi, const NodeReport& node);

/// Roots of beta (beta + 2|alpha|) = 0. Only the zero root keeps the density bounded and nonzero.
struct BetaRoots {
    double admissible = 0.0;
    double singular = 0.0;
    bool degenerate = false;
};
BetaRoots beta_exponents(double alpha) noexcept;

}  // namespace flowlab
