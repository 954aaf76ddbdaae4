#include "flowlab/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>

namespace flowlab::io {

namespace {

const json& member(const json& j, const char* key) {
    if (!j.is_object()) throw FormatError(std::string("expected a JSON object containing '") + key + "'");
    const auto it = j.find(key);
    if (it == j.end()) throw FormatError(std::string("missing member '") + key + "'");
    return *it;
}

double number(const json& v, const char* what) {
    if (!v.is_number()) throw FormatError(std::string("'") + what + "' must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw FormatError(std::string("'") + what + "' is not finite");
    return d;
}

double number_or(const json& j, const char* key, double fallback) {
    const auto it = j.find(key);
    return it == j.end() ? fallback : number(*it, key);
}

int integer(const json& v, const char* what) {
    if (!v.is_number_integer()) throw FormatError(std::string("'") + what + "' must be an integer");
    return v.get<int>();
}

std::vector<double> number_array(const json& v, const char* what, std::size_t expected) {
    if (!v.is_array()) throw FormatError(std::string("'") + what + "' must be an array");
    if (v.size() != expected) {
        std::ostringstream msg;
        msg << "'" << what << "' has " << v.size() << " entries, grid needs " << expected;
        throw FormatError(msg.str());
    }
    std::vector<double> out;
    out.reserve(expected);
    for (const auto& e : v) out.push_back(number(e, what));
    return out;
}

Mask mask_from(const json& j, std::size_t expected) {
    const auto it = j.find("mask");
    if (it == j.end()) return {};
    if (!it->is_array() || it->size() != expected) throw FormatError("'mask' must be an array matching the grid");
    Mask m;
    m.reserve(expected);
    for (const auto& e : *it) {
        if (e.is_boolean()) m.push_back(e.get<bool>() ? 1 : 0);
        else if (e.is_number_integer()) m.push_back(e.get<int>() ? 1 : 0);
        else throw FormatError("'mask' entries must be 0/1 or booleans");
    }
    return m;
}

json mask_json(const Mask& m) {
    json a = json::array();
    for (auto b : m) a.push_back(b ? 1 : 0);
    return a;
}

bool all_valid(const Mask& m) {
    for (auto b : m)
        if (!b) return false;
    return true;
}

Point2 point(const json& v, const char* what) {
    if (!v.is_array() || v.size() != 2) throw FormatError(std::string("'") + what + "' must be [x, y]");
    return {number(v[0], what), number(v[1], what)};
}

template <typename F>
auto rethrow_as_format(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const FormatError&) {
        throw;
    } catch (const Error& e) {
        throw FormatError(e.what());
    } catch (const json::exception& e) {
        throw FormatError(e.what());
    }
}

}  // namespace

json to_json(const Grid2D& g) {
    return {{"nx", g.nx}, {"ny", g.ny}, {"x0", g.x0}, {"y0", g.y0}, {"dx", g.dx}, {"dy", g.dy}};
}

Grid2D grid_from_json(const json& j) {
    return rethrow_as_format([&] {
        Grid2D g{integer(member(j, "nx"), "nx"), integer(member(j, "ny"), "ny"), number(member(j, "x0"), "x0"),
                 number(member(j, "y0"), "y0"),  number(member(j, "dx"), "dx"),  number(member(j, "dy"), "dy")};
        g.validate();
        return g;
    });
}

json to_json(const ScalarField2D& f) {
    json j{{"grid", to_json(f.grid())}, {"values", std::vector<double>(f.values().begin(), f.values().end())}};
    if (!all_valid(f.mask())) j["mask"] = mask_json(f.mask());
    return j;
}

ScalarField2D scalar_field_from_json(const json& j) {
    return rethrow_as_format([&] {
        const auto g = grid_from_json(member(j, "grid"));
        return ScalarField2D(g, number_array(member(j, "values"), "values", g.size()), mask_from(j, g.size()));
    });
}

json to_json(const ComplexField2D& f) {
    return {{"grid", to_json(f.grid())},
            {"re", std::vector<double>(f.re().begin(), f.re().end())},
            {"im", std::vector<double>(f.im().begin(), f.im().end())}};
}

ComplexField2D complex_field_from_json(const json& j) {
    return rethrow_as_format([&] {
        const auto g = grid_from_json(member(j, "grid"));
        return ComplexField2D(g, number_array(member(j, "re"), "re", g.size()),
                              number_array(member(j, "im"), "im", g.size()));
    });
}

json to_json(const VectorField2D& f) {
    json j{{"grid", to_json(f.grid())},
           {"vx", std::vector<double>(f.vx().begin(), f.vx().end())},
           {"vy", std::vector<double>(f.vy().begin(), f.vy().end())}};
    if (!all_valid(f.mask())) j["mask"] = mask_json(f.mask());
    return j;
}

VectorField2D vector_field_from_json(const json& j) {
    return rethrow_as_format([&] {
        const auto g = grid_from_json(member(j, "grid"));
        return VectorField2D(g, number_array(member(j, "vx"), "vx", g.size()),
                             number_array(member(j, "vy"), "vy", g.size()), mask_from(j, g.size()));
    });
}

json to_json(const FlowFields& f) {
    json j{{"rho", to_json(f.rho)}, {"theta", to_json(f.theta)}, {"eps_rho", f.eps_rho}};
    if (f.v) j["v"] = to_json(*f.v);
    if (f.u) j["u"] = to_json(*f.u);
    if (f.Q) j["Q"] = to_json(*f.Q);
    return j;
}

json to_json(const NodeReport& n) {
    json j{{"cell", {n.cell[0], n.cell[1]}},
           {"position", {n.position.x, n.position.y}},
           {"position_refined", n.position_refined},
           {"m", n.winding},
           {"regularity", to_string(n.regularity)},
           {"alpha_fit", n.alpha_fit},
           {"fit_residual", n.fit_residual},
           {"fit_samples", n.fit_samples},
           {"delta_rho_estimate", n.delta_rho_estimate}};
    if (!n.diagnostic.empty()) j["diagnostic"] = n.diagnostic;
    return j;
}

NodeReport node_from_json(const json& j) {
    return rethrow_as_format([&] {
        NodeReport n;
        n.position = point(member(j, "position"), "position");
        n.winding = integer(member(j, "m"), "m");
        if (const auto it = j.find("cell"); it != j.end()) {
            if (!it->is_array() || it->size() != 2) throw FormatError("'cell' must be [i, j]");
            n.cell = {integer((*it)[0], "cell"), integer((*it)[1], "cell")};
        }
        if (const auto it = j.find("position_refined"); it != j.end()) n.position_refined = it->get<bool>();
        if (const auto it = j.find("regularity"); it != j.end())
            n.regularity = regularity_from_string(it->get<std::string>());
        n.alpha_fit = number_or(j, "alpha_fit", 0.0);
        n.fit_residual = number_or(j, "fit_residual", 0.0);
        n.delta_rho_estimate = number_or(j, "delta_rho_estimate", 0.0);
        if (const auto it = j.find("diagnostic"); it != j.end()) n.diagnostic = it->get<std::string>();
        return n;
    });
}

json to_json(const AlphaModel& m) {
    return {{"alpha", m.alpha}, {"r0", m.r0}, {"rho0", m.rho0}, {"lambda", m.lambda}, {"penalty", "rho_omega_squared"}};
}

AlphaModel model_from_json(const json& j) {
    return rethrow_as_format([&] {
        if (!j.is_object()) throw FormatError("model must be a JSON object");
        AlphaModel m;
        m.alpha = number(member(j, "alpha"), "alpha");
        m.r0 = number_or(j, "r0", 1.0);
        m.rho0 = number_or(j, "rho0", 0.0);
        m.lambda = number_or(j, "lambda", 1.0);
        if (const auto it = j.find("penalty"); it != j.end() && it->get<std::string>() != "rho_omega_squared")
            throw FormatError("unknown penalty form '" + it->get<std::string>() + "'");
        m.validate();
        return m;
    });
}

json to_json(const SynthSpec& s) {
    json zeros = json::array();
    for (const auto& z : s.zeros) zeros.push_back({{"x", z.at.x}, {"y", z.at.y}, {"m", z.multiplicity}});
    json env{{"kind", "none"}};
    if (s.envelope.kind == EnvelopeKind::Gaussian) env = {{"kind", "gaussian"}, {"width", s.envelope.width}};
    if (s.envelope.kind == EnvelopeKind::Exponential)
        env = {{"kind", "exponential"}, {"ax", s.envelope.ax}, {"ay", s.envelope.ay}};
    return {{"kind", to_string(s.kind)},
            {"grid", to_json(s.grid)},
            {"zeros", zeros},
            {"random_zeros", s.random_zeros},
            {"seed", s.seed},
            {"avoid_grid_nodes", s.avoid_grid_nodes},
            {"envelope", env},
            {"alpha", s.alpha},
            {"k", {s.kx, s.ky}},
            {"width", s.width},
            {"center", {s.center.x, s.center.y}},
            {"epsilon", s.epsilon}};
}

SynthSpec synth_spec_from_json(const json& j) {
    return rethrow_as_format([&] {
        SynthSpec s;
        s.kind = synth_kind_from_string(member(j, "kind").get<std::string>());
        s.grid = grid_from_json(member(j, "grid"));
        if (const auto it = j.find("zeros"); it != j.end()) {
            if (!it->is_array()) throw FormatError("'zeros' must be an array");
            for (const auto& z : *it) {
                ZeroSpec zs;
                zs.at = {number(member(z, "x"), "x"), number(member(z, "y"), "y")};
                if (const auto m = z.find("m"); m != z.end()) zs.multiplicity = integer(*m, "m");
                s.zeros.push_back(zs);
            }
        }
        if (const auto it = j.find("random_zeros"); it != j.end()) s.random_zeros = integer(*it, "random_zeros");
        if (const auto it = j.find("seed"); it != j.end()) {
            if (!it->is_number_unsigned() && !it->is_number_integer()) throw FormatError("'seed' must be an integer");
            s.seed = it->get<std::uint64_t>();
        }
        if (const auto it = j.find("avoid_grid_nodes"); it != j.end()) s.avoid_grid_nodes = it->get<bool>();
        if (const auto it = j.find("envelope"); it != j.end()) {
            const auto kind = member(*it, "kind").get<std::string>();
            if (kind == "none") {
                s.envelope.kind = EnvelopeKind::None;
            } else if (kind == "gaussian") {
                s.envelope.kind = EnvelopeKind::Gaussian;
                s.envelope.width = number(member(*it, "width"), "width");
            } else if (kind == "exponential") {
                s.envelope.kind = EnvelopeKind::Exponential;
                s.envelope.ax = number_or(*it, "ax", 0.0);
                s.envelope.ay = number_or(*it, "ay", 0.0);
            } else {
                throw FormatError("unknown envelope kind '" + kind + "'");
            }
        }
        s.alpha = number_or(j, "alpha", s.alpha);
        if (const auto it = j.find("k"); it != j.end()) {
            const auto k = point(*it, "k");
            s.kx = k.x;
            s.ky = k.y;
        }
        s.width = number_or(j, "width", s.width);
        if (const auto it = j.find("center"); it != j.end()) s.center = point(*it, "center");
        s.epsilon = number_or(j, "epsilon", s.epsilon);
        s.validate();
        return s;
    });
}

json to_json(const DriftReport& r) {
    return {{"times", r.times}, {"drift", r.drift}, {"max_drift", r.max_drift}};
}

json to_json(const Loop& loop) {
    json v = json::array();
    for (const auto& p : loop.vertices()) v.push_back({p.x, p.y});
    return {{"vertices", v}, {"sampling_density", loop.sampling_density()}};
}

std::vector<Loop> loops_from_json(const json& j) {
    return rethrow_as_format([&] {
        auto one = [](const json& o) {
            if (!o.is_object()) throw FormatError("loop must be a JSON object");
            const double density = number_or(o, "sampling_density", 4.0);
            if (const auto c = o.find("circle"); c != o.end()) {
                const auto center = point(member(*c, "center"), "center");
                const double radius = number(member(*c, "radius"), "radius");
                int nv = 256;
                if (const auto n = c->find("vertices"); n != c->end()) nv = integer(*n, "vertices");
                return Loop::circle(center, radius, nv, density);
            }
            const auto& verts = member(o, "vertices");
            if (!verts.is_array()) throw FormatError("'vertices' must be an array");
            std::vector<Point2> pts;
            for (const auto& p : verts) pts.push_back(point(p, "vertices"));
            return Loop(std::move(pts), density);
        };
        std::vector<Loop> out;
        if (j.is_array()) {
            for (const auto& o : j) out.push_back(one(o));
        } else {
            out.push_back(one(j));
        }
        return out;
    });
}

std::string read_text(const std::string& path) {
    if (path == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open '" + path + "'");
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

json parse_json(std::string_view text, const std::string& origin) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::exception& e) {
        throw FormatError(origin + ": " + e.what());
    }
}

std::string fnv1a64_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

}  // namespace flowlab::io
