#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "flowlab/alpha_models.hpp"
#include "flowlab/circle_lab.hpp"
#include "flowlab/cli.hpp"
#include "flowlab/io.hpp"
#include "flowlab/synth.hpp"
#include "flowlab/vortex_analysis.hpp"

namespace py = pybind11;
using namespace flowlab;

namespace {

using CArray = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;
using RArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

void check_shape(const py::buffer_info& b, const Grid2D& g) {
    if (b.ndim != 2 || b.shape[0] != g.ny || b.shape[1] != g.nx)
        throw DimensionError("array shape must be (ny, nx) = (" + std::to_string(g.ny) + ", " + std::to_string(g.nx) +
                             ")");
}

ComplexField2D to_complex(const CArray& a, const Grid2D& g) {
    g.validate();
    const auto b = a.request();
    check_shape(b, g);
    const auto* p = static_cast<const std::complex<double>*>(b.ptr);
    std::vector<double> re(g.size()), im(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        re[k] = p[k].real();
        im[k] = p[k].imag();
    }
    return {g, std::move(re), std::move(im)};
}

ScalarField2D to_scalar(const RArray& a, const Grid2D& g) {
    g.validate();
    const auto b = a.request();
    check_shape(b, g);
    const auto* p = static_cast<const double*>(b.ptr);
    return {g, std::vector<double>(p, p + g.size())};
}

// masked points come back as NaN
py::array_t<double> to_numpy(const ScalarField2D& f) {
    const auto& g = f.grid();
    py::array_t<double> out({g.ny, g.nx});
    auto* p = out.mutable_data();
    for (std::size_t k = 0; k < g.size(); ++k)
        p[k] = f.valid_at(k) ? f.at(k) : std::numeric_limits<double>::quiet_NaN();
    return out;
}

py::array_t<double> to_numpy(const VectorField2D& f) {
    const auto& g = f.grid();
    py::array_t<double> out({g.ny, g.nx, 2});
    auto* p = out.mutable_data();
    for (std::size_t k = 0; k < g.size(); ++k) {
        const bool ok = f.valid_at(k);
        p[2 * k] = ok ? f.vx()[k] : std::numeric_limits<double>::quiet_NaN();
        p[2 * k + 1] = ok ? f.vy()[k] : std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

py::array_t<std::complex<double>> to_numpy(const ComplexField2D& f) {
    const auto& g = f.grid();
    py::array_t<std::complex<double>> out({g.ny, g.nx});
    auto* p = out.mutable_data();
    for (std::size_t k = 0; k < g.size(); ++k) p[k] = f.at(k);
    return out;
}

py::dict to_dict(const FlowFields& f) {
    py::dict d;
    d["rho"] = to_numpy(f.rho);
    d["theta"] = to_numpy(f.theta);
    if (f.v) d["v"] = to_numpy(*f.v);
    if (f.u) d["u"] = to_numpy(*f.u);
    if (f.Q) d["Q"] = to_numpy(*f.Q);
    return d;
}

py::dict to_dict(const NodeReport& n) {
    py::dict d;
    d["cell"] = n.cell;
    d["position"] = py::make_tuple(n.position.x, n.position.y);
    d["position_refined"] = n.position_refined;
    d["m"] = n.winding;
    d["regularity"] = to_string(n.regularity);
    d["alpha_fit"] = n.alpha_fit;
    d["fit_residual"] = n.fit_residual;
    d["fit_samples"] = n.fit_samples;
    d["delta_rho_estimate"] = n.delta_rho_estimate;
    d["diagnostic"] = n.diagnostic;
    return d;
}

Loop circle_loop(std::array<double, 2> center, double radius, int nvertices) {
    return Loop::circle({center[0], center[1]}, radius, nvertices);
}

AlphaModel make_model(double alpha, double r0, double rho0, double lambda) {
    AlphaModel m;
    m.alpha = alpha;
    m.r0 = r0;
    m.rho0 = rho0;
    m.lambda = lambda;
    m.validate();
    return m;
}

}  // namespace

PYBIND11_MODULE(_flowlab, mod) {
    mod.doc() = "Flow-variable analysis of planar wave functions";

    py::register_exception<Error>(mod, "FlowlabError", PyExc_RuntimeError);

    py::class_<Grid2D>(mod, "Grid2D")
        .def(py::init([](int nx, int ny, double x0, double y0, double dx, double dy) {
                 Grid2D g{nx, ny, x0, y0, dx, dy};
                 g.validate();
                 return g;
             }),
             py::arg("nx"), py::arg("ny"), py::arg("x0"), py::arg("y0"), py::arg("dx"), py::arg("dy"))
        .def_static("centered", &Grid2D::centered, py::arg("n"), py::arg("half_extent"))
        .def_static("centered_spacing", &Grid2D::centered_spacing, py::arg("h"), py::arg("half_extent"))
        .def_readonly("nx", &Grid2D::nx)
        .def_readonly("ny", &Grid2D::ny)
        .def_readonly("x0", &Grid2D::x0)
        .def_readonly("y0", &Grid2D::y0)
        .def_readonly("dx", &Grid2D::dx)
        .def_readonly("dy", &Grid2D::dy)
        .def("coords", [](const Grid2D& g) {
            py::array_t<double> x(g.nx), y(g.ny);
            for (int i = 0; i < g.nx; ++i) x.mutable_data()[i] = g.x(i);
            for (int j = 0; j < g.ny; ++j) y.mutable_data()[j] = g.y(j);
            return py::make_tuple(x, y);
        })
        .def("__repr__", [](const Grid2D& g) {
            std::ostringstream s;
            s << "Grid2D(nx=" << g.nx << ", ny=" << g.ny << ", x0=" << g.x0 << ", y0=" << g.y0 << ", dx=" << g.dx
              << ", dy=" << g.dy << ")";
            return s.str();
        });

    mod.def("laplacian", [](const RArray& f, const Grid2D& g) { return to_numpy(laplacian(to_scalar(f, g))); },
            py::arg("field"), py::arg("grid"));

    mod.def(
        "polar_decompose",
        [](const CArray& psi, const Grid2D& g, std::optional<double> eps_rho) {
            const auto c = to_complex(psi, g);
            return to_dict(eps_rho ? polar_decompose(c, *eps_rho) : polar_decompose(c));
        },
        py::arg("psi"), py::arg("grid"), py::arg("eps_rho") = py::none());

    mod.def(
        "kinematic_fields",
        [](const CArray& psi, const Grid2D& g, std::optional<double> eps_rho) {
            const auto c = to_complex(psi, g);
            return to_dict(kinematic_fields(eps_rho ? polar_decompose(c, *eps_rho) : polar_decompose(c)));
        },
        py::arg("psi"), py::arg("grid"), py::arg("eps_rho") = py::none());

    mod.def(
        "quantum_potential_direct",
        [](const RArray& rho, const Grid2D& g, double eps_rho) {
            return to_numpy(quantum_potential_direct(to_scalar(rho, g), eps_rho));
        },
        py::arg("rho"), py::arg("grid"), py::arg("eps_rho") = 0.0);

    mod.def(
        "detect_nodes",
        [](const CArray& psi, const Grid2D& g, bool classify, double delta) {
            const auto c = to_complex(psi, g);
            auto nodes = detect_nodes(c);
            if (classify) {
                RegularityConfig cfg;
                cfg.delta = delta;
                const auto flow = polar_decompose(c);
                for (auto& n : nodes) n = classify_regularity(flow.rho, n, cfg);
            }
            py::list out;
            for (const auto& n : nodes) out.append(to_dict(n));
            return out;
        },
        py::arg("psi"), py::arg("grid"), py::arg("classify") = true, py::arg("delta") = 0.1);

    mod.def(
        "loop_winding",
        [](const CArray& psi, const Grid2D& g, std::array<double, 2> center, double radius, int nvertices) {
            return loop_winding(to_complex(psi, g), circle_loop(center, radius, nvertices));
        },
        py::arg("psi"), py::arg("grid"), py::arg("center"), py::arg("radius"), py::arg("nvertices") = 256);

    mod.def(
        "circulation",
        [](const CArray& psi, const Grid2D& g, std::array<double, 2> center, double radius, int nvertices) {
            const auto flow = kinematic_fields(polar_decompose(to_complex(psi, g)));
            return circulation(*flow.v, circle_loop(center, radius, nvertices));
        },
        py::arg("psi"), py::arg("grid"), py::arg("center"), py::arg("radius"), py::arg("nvertices") = 512);

    mod.def(
        "factor_out",
        [](const CArray& psi, const Grid2D& g, std::array<double, 2> position, int m) {
            const auto c = to_complex(psi, g);
            NodeReport n;
            const auto cell = locate(g, {position[0], position[1]});
            n.cell = {cell.i, cell.j};
            n.position = {position[0], position[1]};
            n.winding = m;
            const auto r = factor_out(c, n);
            return py::make_tuple(to_numpy(r.field), r.rho_at_node, r.positive_at_node);
        },
        py::arg("psi"), py::arg("grid"), py::arg("position"), py::arg("m"));

    mod.def(
        "alpha_fields",
        [](double alpha, const Grid2D& g) { return to_dict(alpha_fields(make_model(alpha, 1.0, 0.0, 0.0), g)); },
        py::arg("alpha"), py::arg("grid"));

    mod.def(
        "balance_residual",
        [](const CArray& psi, const Grid2D& g, double rmin, double rmax) {
            const auto rep =
                balance_residual(kinematic_fields(polar_decompose(to_complex(psi, g))), std::nullopt, {{0, 0}, rmin, rmax});
            py::dict d;
            d["residual"] = to_numpy(rep.residual);
            d["max_abs"] = rep.stats.max_abs;
            d["mean_abs"] = rep.stats.mean_abs;
            d["count"] = rep.stats.count;
            return d;
        },
        py::arg("psi"), py::arg("grid"), py::arg("rmin") = 0.0,
        py::arg("rmax") = std::numeric_limits<double>::infinity());

    mod.def(
        "regularize_flow",
        [](double alpha, double r0, const Grid2D& g) {
            const auto rf = regularize_flow(make_model(alpha, r0, 0.0, 0.0), g);
            py::dict d;
            d["v_tilde"] = to_numpy(rf.v_tilde);
            d["omega"] = to_numpy(curl2d(rf.v_tilde));
            d["omega_analytic"] = to_numpy(rf.omega_analytic);
            return d;
        },
        py::arg("alpha"), py::arg("r0"), py::arg("grid"));

    mod.def(
        "penalty_balance_at_core",
        [](double lam, double rho_tilde_0, double alpha, double r0) {
            return penalty_balance_at_core(make_model(alpha, r0, 0.0, lam), rho_tilde_0);
        },
        py::arg("lam"), py::arg("rho_tilde_0"), py::arg("alpha"), py::arg("r0"));

    mod.def(
        "density_drift",
        [](double alpha, const std::vector<double>& times, int N, int nphi) {
            const auto r = density_drift(fourier_project(alpha, N, nphi), times);
            return py::make_tuple(r.drift, r.max_drift);
        },
        py::arg("alpha"), py::arg("times"), py::arg("N") = 512, py::arg("nphi") = 4096);

    mod.def(
        "evolve_density",
        [](double alpha, double t, int N, int nphi) {
            const auto rho = evolve_density(fourier_project(alpha, N, nphi), t);
            return py::array_t<double>(static_cast<py::ssize_t>(rho.size()), rho.data());
        },
        py::arg("alpha"), py::arg("t"), py::arg("N") = 512, py::arg("nphi") = 4096);

    mod.def(
        "synth",
        [](const std::string& spec_json) {
            const auto spec = io::synth_spec_from_json(io::parse_json(spec_json, "spec"));
            const auto r = generate(spec);
            return py::make_tuple(to_numpy(r.field), r.field.grid(), r.warnings);
        },
        py::arg("spec_json"));

    mod.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));

    mod.attr("__version__") = cli::tool_version;
}
