#include "flowlab/synth.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <sstream>

namespace flowlab {

namespace {

using cd = std::complex<double>;

// Uniform [0, 1) from the raw 64-bit output.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

bool on_grid_node(const Grid2D& g, Point2 p) {
    const double fx = (p.x - g.x0) / g.dx;
    const double fy = (p.y - g.y0) / g.dy;
    return std::abs(fx - std::round(fx)) < 1e-9 && std::abs(fy - std::round(fy)) < 1e-9;
}

cd ipow(cd z, int m) {
    cd f(1.0, 0.0);
    for (int p = 0; p < m; ++p) f *= z;
    return f;
}

}  // namespace

const char* to_string(SynthKind k) noexcept {
    switch (k) {
        case SynthKind::VortexProduct: return "vortex_product";
        case SynthKind::AlphaFamily: return "alpha_family";
        case SynthKind::PlaneWave: return "plane_wave";
        case SynthKind::Gaussian: return "gaussian";
        case SynthKind::SplitDoubleZero: return "split_double_zero";
    }
    return "vortex_product";
}

SynthKind synth_kind_from_string(const std::string& s) {
    for (auto k : {SynthKind::VortexProduct, SynthKind::AlphaFamily, SynthKind::PlaneWave, SynthKind::Gaussian,
                   SynthKind::SplitDoubleZero})
        if (s == to_string(k)) return k;
    throw FormatError("unknown synth kind '" + s + "'");
}

void SynthSpec::validate() const {
    grid.validate();
    if (kind == SynthKind::SplitDoubleZero && !(epsilon > 0.0)) throw DomainError("split double zero needs epsilon > 0");
    if (kind == SynthKind::Gaussian && !(width > 0.0)) throw DomainError("gaussian width must be positive");
    if (envelope.kind == EnvelopeKind::Gaussian && !(envelope.width > 0.0))
        throw DomainError("envelope width must be positive");
    if (random_zeros < 0) throw DomainError("random_zeros must be non-negative");
    for (const auto& z : zeros) {
        if (!grid.strictly_contains(z.at)) {
            std::ostringstream msg;
            msg << "zero at (" << z.at.x << ", " << z.at.y << ") is not strictly inside the grid";
            throw DomainError(msg.str());
        }
    }
    if (kind == SynthKind::SplitDoubleZero &&
        (!grid.strictly_contains({center.x + epsilon, center.y}) || !grid.strictly_contains({center.x - epsilon, center.y})))
        throw DomainError("split zeros must lie strictly inside the grid");
}

SynthResult generate(const SynthSpec& spec) {
    spec.validate();
    const auto& g = spec.grid;
    SynthResult out;

    std::vector<ZeroSpec> zeros = spec.zeros;
    if (spec.kind == SynthKind::VortexProduct && spec.random_zeros > 0) {
        std::mt19937_64 rng(spec.seed);
        // keep random zeros two cells away from the edge
        const double lx = g.x0 + 2 * g.dx, wx = (g.nx - 5) * g.dx;
        const double ly = g.y0 + 2 * g.dy, wy = (g.ny - 5) * g.dy;
        for (int k = 0; k < spec.random_zeros; ++k) {
            ZeroSpec z;
            z.at = {lx + wx * uniform01(rng), ly + wy * uniform01(rng)};
            z.multiplicity = (rng() & 1u) ? 1 : -1;
            zeros.push_back(z);
        }
    }
    if (spec.kind == SynthKind::SplitDoubleZero) {
        zeros = {{{spec.center.x + spec.epsilon, spec.center.y}, 1}, {{spec.center.x - spec.epsilon, spec.center.y}, 1}};
    }

    if (spec.avoid_grid_nodes) {
        for (auto& z : zeros) {
            if (!on_grid_node(g, z.at)) continue;
            std::ostringstream msg;
            msg << "zero at (" << z.at.x << ", " << z.at.y << ") sits on a grid node; moved by half a cell";
            out.warnings.push_back(msg.str());
            z.at.x += 0.5 * g.dx;
            z.at.y += 0.5 * g.dy;
        }
    }

    SynthSpec eff = spec;
    // relocated split zeros are evaluated as a product
    if (spec.kind == SynthKind::SplitDoubleZero && !out.warnings.empty()) eff.kind = SynthKind::VortexProduct;

    auto envelope = [&](double x, double y) -> double {
        switch (spec.envelope.kind) {
            case EnvelopeKind::None: return 1.0;
            case EnvelopeKind::Gaussian: {
                const double dx = x - spec.center.x, dy = y - spec.center.y;
                return std::exp(-(dx * dx + dy * dy) / (2.0 * spec.envelope.width * spec.envelope.width));
            }
            case EnvelopeKind::Exponential: return std::exp(spec.envelope.ax * x + spec.envelope.ay * y);
        }
        return 1.0;
    };

    auto value = [&](double x, double y) -> cd {
        switch (eff.kind) {
            case SynthKind::VortexProduct: {
                cd f(envelope(x, y), 0.0);
                for (const auto& z : zeros) {
                    cd d(x - z.at.x, y - z.at.y);
                    f *= z.multiplicity >= 0 ? ipow(d, z.multiplicity) : ipow(std::conj(d), -z.multiplicity);
                }
                return f;
            }
            case SynthKind::AlphaFamily: {
                const double dx = x - spec.center.x, dy = y - spec.center.y;
                const double r2 = dx * dx + dy * dy;
                if (spec.alpha == 0.0) return {1.0, 0.0};
                if (r2 == 0.0) return {0.0, 0.0};
                return std::polar(std::pow(r2, 0.5 * std::abs(spec.alpha)), spec.alpha * std::atan2(dy, dx));
            }
            case SynthKind::PlaneWave: return std::polar(1.0, spec.kx * x + spec.ky * y);
            case SynthKind::Gaussian: {
                const double dx = x - spec.center.x, dy = y - spec.center.y;
                return {std::exp(-(dx * dx + dy * dy) / (2.0 * spec.width * spec.width)), 0.0};
            }
            case SynthKind::SplitDoubleZero: {
                const cd z(x - spec.center.x, y - spec.center.y);
                return z * z - spec.epsilon * spec.epsilon;
            }
        }
        return {0.0, 0.0};
    };

    out.field = ComplexField2D::from_function(g, value);
    out.zeros = std::move(zeros);
    return out;
}

}  // namespace flowlab
