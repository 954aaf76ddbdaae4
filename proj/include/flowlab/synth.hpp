/// @file synth.hpp
/// @brief Deterministic closed-form test wave fields.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flowlab/field_core.hpp"

namespace flowlab {

enum class SynthKind { VortexProduct, AlphaFamily, PlaneWave, Gaussian, SplitDoubleZero };

const char* to_string(SynthKind k) noexcept;
SynthKind synth_kind_from_string(const std::string& s);

struct ZeroSpec {
    Point2 at;
    int multiplicity = 1;  ///< winding m_k; negative values give conjugate factors
};

enum class EnvelopeKind { None, Gaussian, Exponential };

/// Smooth nonvanishing factor multiplied onto VortexProduct fields.
struct Envelope {
    EnvelopeKind kind = EnvelopeKind::None;
    double width = 1.0;       ///< Gaussian: exp(-|q - center|^2 / (2 width^2))
    double ax = 0.0, ay = 0.0;  ///< Exponential: exp(ax x + ay y)
};

struct SynthSpec {
    SynthKind kind = SynthKind::VortexProduct;
    Grid2D grid;
    std::vector<ZeroSpec> zeros;  ///< VortexProduct
    int random_zeros = 0;         ///< extra VortexProduct zeros with m = +-1 placed from the seed
    std::uint64_t seed = 0;
    bool avoid_grid_nodes = false;  ///< move zeros that sit on a grid node by half a cell
    Envelope envelope;
    double alpha = 1.0;              ///< AlphaFamily
    double kx = 0.0, ky = 0.0;       ///< PlaneWave
    double width = 1.0;              ///< Gaussian
    Point2 center;                   ///< Gaussian, AlphaFamily, SplitDoubleZero, envelope
    double epsilon = 0.1;            ///< SplitDoubleZero

    void validate() const;
};

struct SynthResult {
    ComplexField2D field;
    std::vector<ZeroSpec> zeros;  ///< zeros actually used (after random placement and relocation)
    std::vector<std::string> warnings;
};

/// VortexProduct: prod (z - z_k)^m_k (conjugated for m_k < 0) times the envelope.
/// AlphaFamily: r^|alpha| e^{i alpha phi}, phi in (-pi, pi] (branch cut on the negative x axis for non-integer alpha).
/// PlaneWave: e^{i (kx x + ky y)}. Gaussian: exp(-r^2 / (2 width^2)).
/// SplitDoubleZero: (z - c)^2 - epsilon^2.
SynthResult generate(const SynthSpec& spec);

}  // namespace flowlab
