/// @file cli.hpp
/// @brief Subcommand driver (analyze, alpha-scan, regularize, smolin, synth) and radial profiles.
///
/// Exit codes: 0 success (warnings allowed), 1 usage, 2 input format, 3 numerical failure.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "flowlab/alpha_models.hpp"
#include "flowlab/vortex_analysis.hpp"

namespace flowlab::cli {

inline constexpr const char* tool_version = "0.1.0";

enum ExitCode : int { Ok = 0, Usage = 1, InputFormat = 2, Numerical = 3 };

/// args excludes the program name. Reports go to files or `out` for "-";
/// error JSON goes to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct RadialProfile {
    std::vector<double> r;  ///< bin centres
    std::vector<double> mean;
    std::vector<double> min;
    std::vector<double> max;
    std::vector<std::size_t> count;
};

/// Bins valid points by distance from center over [0, distance to the nearest
/// grid edge]; empty bins are dropped. Throws DomainError if center is not interior.
RadialProfile radial_profile(const ScalarField2D& field, Point2 center, int nbins);
/// CSV with header "r,mean,min,max", one row per non-empty bin.
std::string emit_radial_profile(const ScalarField2D& field, Point2 center, int nbins);

struct AlphaScanRow {
    double alpha = 0.0;
    bool has_node = false;  ///< false for alpha = 0
    NodeReport node;
    double circulation = 0.0;  ///< of the closed-form v on a circle of radius circulation_radius
    double circulation_radius = 0.0;
    FieldStats balance;
};

/// One alpha-scan entry: density r^(2|alpha|) on the grid, node at the origin,
/// regularity fit, circulation, and energy balance statistics over the annulus
/// (closed-form v and u, 5-point Laplacian of rho).
AlphaScanRow alpha_scan_entry(double alpha, const Grid2D& grid, const RegularityConfig& cfg, const Annulus& annulus);

}  // namespace flowlab::cli
