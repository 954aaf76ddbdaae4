/// @file io.hpp
/// @brief JSON encodings of grids, fields, node reports, models, synth specs and loops.
///
/// Field arrays are row-major with x fastest. Masks, when present, are arrays
/// of 0/1 and are omitted for fully valid fields.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "flowlab/alpha_models.hpp"
#include "flowlab/circle_lab.hpp"
#include "flowlab/flow_transform.hpp"
#include "flowlab/synth.hpp"
#include "flowlab/vortex_analysis.hpp"

namespace flowlab::io {

using nlohmann::json;

json to_json(const Grid2D& g);
Grid2D grid_from_json(const json& j);

json to_json(const ScalarField2D& f);
ScalarField2D scalar_field_from_json(const json& j);

json to_json(const ComplexField2D& f);
ComplexField2D complex_field_from_json(const json& j);

json to_json(const VectorField2D& f);
VectorField2D vector_field_from_json(const json& j);

/// {"rho":..., "theta":..., "v":..., "u":..., "Q":..., "eps_rho":...}; absent members are skipped.
json to_json(const FlowFields& f);

json to_json(const NodeReport& n);
NodeReport node_from_json(const json& j);

json to_json(const AlphaModel& m);
AlphaModel model_from_json(const json& j);

json to_json(const SynthSpec& s);
SynthSpec synth_spec_from_json(const json& j);

json to_json(const DriftReport& r);

/// Either a single loop object or an array of them. A loop object is
/// {"vertices": [[x, y], ...], "sampling_density": 4} or
/// {"circle": {"center": [x, y], "radius": r, "vertices": 256}, "sampling_density": 4}.
std::vector<Loop> loops_from_json(const json& j);
json to_json(const Loop& loop);

/// Reads a whole file, or standard input for "-". Throws FormatError if unreadable.
std::string read_text(const std::string& path);
/// Parses JSON; NaN/Infinity tokens are rejected by the parser. Throws FormatError.
json parse_json(std::string_view text, const std::string& origin = "input");

/// 64-bit FNV-1a of the bytes, as 16 lowercase hex digits.
std::string fnv1a64_hex(std::string_view bytes);

}  // namespace flowlab::io
