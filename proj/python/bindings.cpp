#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "kolmo/cli.hpp"
#include "kolmo/diagnostics.hpp"
#include "kolmo/errors.hpp"
#include "kolmo/exact.hpp"
#include "kolmo/integrator.hpp"
#include "kolmo/io.hpp"
#include "kolmo/spectral.hpp"
#include "kolmo/version.hpp"

namespace py = pybind11;
using namespace kolmo;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

TorusConfig torus(double alpha, int beta_inv, int nx, int ny) {
    TorusConfig g;
    g.alpha = alpha;
    g.beta_inv = beta_inv;
    g.nx = nx;
    g.ny = ny;
    g.validate();
    return g;
}

Array to_array(const PhysicalField& f) {
    Array out({f.config.nx, f.config.ny});
    std::copy(f.values.begin(), f.values.end(), out.mutable_data());
    return out;
}

PhysicalField from_array(const Array& a, double alpha, int beta_inv) {
    if (a.ndim() != 2) throw py::value_error("expected a 2-d array");
    PhysicalField f(torus(alpha, beta_inv, static_cast<int>(a.shape(0)), static_cast<int>(a.shape(1))));
    std::copy(a.data(), a.data() + a.size(), f.values.begin());
    return f;
}

ExactSpec spec_from(const std::string& text) { return io::exact_spec_from_json(io::json::parse(text)); }

TorusConfig spec_grid(const ExactSpec& spec, int nx, int ny) {
    TorusConfig g = spec.default_grid();
    if (nx > 0) g.nx = nx;
    if (ny > 0) g.ny = ny;
    g.validate();
    return g;
}

} // namespace

PYBIND11_MODULE(_kolmo, m) {
    m.attr("__version__") = std::string(kVersion);

    py::register_exception<Error>(m, "KolmoError", PyExc_ValueError);

    m.def("exact_field", [](const std::string& spec_json, double t, int nx, int ny) {
        const ExactSpec spec = spec_from(spec_json);
        return to_array(to_physical(eval(spec, t, spec_grid(spec, nx, ny))));
    }, py::arg("spec_json"), py::arg("t"), py::arg("nx") = 0, py::arg("ny") = 0);

    m.def("exact_grid", [](const std::string& spec_json, int nx, int ny) {
        const TorusConfig g = spec_grid(spec_from(spec_json), nx, ny);
        return py::dict(py::arg("alpha") = g.alpha, py::arg("beta_inv") = g.beta_inv, py::arg("nx") = g.nx,
                        py::arg("ny") = g.ny);
    }, py::arg("spec_json"), py::arg("nx") = 0, py::arg("ny") = 0);

    m.def("verify_exact", [](const std::string& spec_json, double t_end, double dt, int nx, int ny) {
        const ExactSpec spec = spec_from(spec_json);
        const TorusConfig g = spec_grid(spec, nx, ny);
        StepperConfig s;
        s.dt = dt;
        s.t_end = t_end;
        s.sample_every = 1 << 30;
        double worst = 0.0;
        py::gil_scoped_release release;
        integrate({Variant::NonlinearNS, 1, spec.forcing(), spec.nu}, eval(spec, 0.0, g), s, {},
                  [&](double t, const SpectralField& w) {
                      const SpectralField exact = eval(spec, t, g);
                      worst = std::max(worst, l2_norm(w - exact) / l2_norm(exact));
                  });
        return worst;
    }, py::arg("spec_json"), py::arg("t_end"), py::arg("dt") = 0.01, py::arg("nx") = 0, py::arg("ny") = 0);

    m.def("jacobian", [](const Array& phi, const Array& varphi, double alpha, int beta_inv) {
        const SpectralField p = to_spectral(from_array(phi, alpha, beta_inv));
        const SpectralField q = to_spectral(from_array(varphi, alpha, beta_inv));
        return to_array(to_physical(jacobian(p, q)));
    }, py::arg("phi"), py::arg("varphi"), py::arg("alpha") = 1.0, py::arg("beta_inv") = 1);

    m.def("norms", [](const Array& w, double alpha, int beta_inv) {
        const SpectralField f = project_ne0(to_spectral(from_array(w, alpha, beta_inv)));
        return py::dict(py::arg("l2") = l2_norm(f), py::arg("x_form") = x_form(f),
                        py::arg("grad_x_form") = grad_x_form(f));
    }, py::arg("w"), py::arg("alpha") = 1.0, py::arg("beta_inv") = 1);

    m.def("counterexample", [](double d, double alpha, double tau, double nu, int nx, int ny, double dt) {
        const AlphaSq a2 = AlphaSq::from_alpha(alpha);
        py::gil_scoped_release release;
        const auto r = counterexample_check(d, a2, tau, nu, torus(a2.alpha(), 1, nx, ny), dt);
        return io::to_json(r).dump();
    }, py::arg("d"), py::arg("alpha"), py::arg("tau"), py::arg("nu"), py::arg("nx") = 32, py::arg("ny") = 32,
          py::arg("dt") = 0.01);

    m.def("cli", [](const std::vector<std::string>& args) {
        std::vector<std::string> storage{"kolmo"};
        storage.insert(storage.end(), args.begin(), args.end());
        std::vector<char*> argv;
        for (auto& s : storage) argv.push_back(s.data());
        py::gil_scoped_release release;
        return cli::run(static_cast<int>(argv.size()), argv.data());
    }, py::arg("args"));
}
