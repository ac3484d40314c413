#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "longwalk/blocks.hpp"
#include "longwalk/chain.hpp"
#include "longwalk/error.hpp"
#include "longwalk/ring.hpp"
#include "longwalk/scaling.hpp"
#include "longwalk/series.hpp"
#include "longwalk/transfer.hpp"
#include "longwalk/uniform.hpp"

namespace py = pybind11;
using namespace longwalk;

namespace {

py::dict outcome_dict(const TransferOutcome& o) {
    py::dict d;
    d["time"] = o.time;
    d["g"] = o.g;
    d["fidelity_exact"] = o.fidelity_exact;
    d["infidelity_exact"] = o.infidelity_exact;
    d["infidelity_perturbative"] = o.infidelity_perturbative;
    d["infidelity_bound"] = o.infidelity_bound ? py::object(py::float_(*o.infidelity_bound)) : py::none();
    if (o.conditions)
        d["conditions"] = py::dict(py::arg("gap") = o.conditions->gap, py::arg("weak") = o.conditions->weak);
    else
        d["conditions"] = py::none();
    d["mu"] = o.mu;
    return d;
}

py::dict series_dict(const ScalingSeries& s) {
    py::dict d;
    d["observable"] = s.observable;
    d["axis"] = axis_name(s.axis);
    d["sizes"] = s.sizes();
    d["values"] = s.values();
    d["slope"] = s.fit.slope;
    d["intercept"] = s.fit.intercept;
    d["r_squared"] = s.fit.r_squared;
    std::vector<double> mid, slope;
    for (const auto& e : s.local) mid.push_back(e.midpoint), slope.push_back(e.slope);
    d["local_midpoints"] = mid;
    d["local_exponents"] = slope;
    d["extrapolated"] = s.extrapolated ? py::object(py::float_(*s.extrapolated)) : py::none();
    d["warnings"] = s.warnings;
    return d;
}

ScalingSeries series_from(std::vector<double> sizes, std::vector<double> values) {
    if (sizes.size() != values.size()) throw Error(ErrorKind::InvalidArgument, "sizes and values differ in length");
    ScalingSeries s;
    for (std::size_t i = 0; i < sizes.size(); ++i) s.points.push_back({sizes[i], values[i]});
    return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "longwalk core bindings";
    m.attr("__version__") = "0.1.0";

    static py::exception<Error> base(m, "LongwalkError", PyExc_ValueError);
    static py::exception<Error> guard(m, "PrecisionGuardError", base.ptr());
    static py::exception<Error> domain(m, "DomainError", base.ptr());
    static py::exception<Error> numerical(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const PrecisionGuardError& e) {
            py::object inst = py::reinterpret_borrow<py::object>(guard.ptr())(e.what());
            inst.attr("max_admissible_l") = e.max_admissible_l();
            PyErr_SetObject(guard.ptr(), inst.ptr());
        } catch (const Error& e) {
            switch (e.kind()) {
                case ErrorKind::Domain: domain(e.what()); break;
                case ErrorKind::Numerical: numerical(e.what()); break;
                default: base(e.what());
            }
        }
    });

    // chain
    py::class_<EffectiveChain>(m, "EffectiveChain")
        .def_readonly("dimension", &EffectiveChain::dimension)
        .def_readonly("alpha", &EffectiveChain::alpha)
        .def_readonly("depth", &EffectiveChain::depth)
        .def_readonly("base", &EffectiveChain::base)
        .def_readonly("bonds", &EffectiveChain::bonds)
        .def_property_readonly("distance", &EffectiveChain::distance);

    py::class_<ChannelSpectrum>(m, "ChannelSpectrum")
        .def_readonly("depth", &ChannelSpectrum::depth)
        .def_readonly("energies", &ChannelSpectrum::energies)
        .def_readonly("amplitudes", &ChannelSpectrum::amplitudes)
        .def_readonly("zero_tolerance", &ChannelSpectrum::zero_tolerance)
        .def_property_readonly("zero_index", &ChannelSpectrum::zero_index)
        .def("endpoint", &ChannelSpectrum::endpoint);

    m.def("build_effective_chain", &build_effective_chain, py::arg("d"), py::arg("alpha"), py::arg("l"));
    m.def("max_admissible_depth", &max_admissible_depth, py::arg("d"), py::arg("alpha"));
    m.def("transfer_distance", &transfer_distance, py::arg("l"));
    m.def("chain_spectrum", &chain_spectrum, py::arg("chain"));
    m.def(
        "channel_spectrum", [](std::vector<double> bonds) { return channel_spectrum(bonds); }, py::arg("bonds"));
    m.def(
        "q_factor", [](const ChannelSpectrum& s) { return q_factor(s).q; }, py::arg("spectrum"));
    m.def("min_gap", &min_gap, py::arg("spectrum"));
    m.def("zero_mode_analytic", &zero_mode_analytic, py::arg("chain"));

    // transfer
    py::class_<TunnelingModel>(m, "TunnelingModel")
        .def_readonly("g", &TunnelingModel::g)
        .def_readonly("rabi", &TunnelingModel::rabi)
        .def_readonly("time", &TunnelingModel::time)
        .def_readonly("matrix", &TunnelingModel::matrix)
        .def("weak_coupling_sum", &TunnelingModel::weak_coupling_sum);
    m.def(
        "attach_endpoints", [](const EffectiveChain& c, double g) { return attach_endpoints(c, g); }, py::arg("chain"),
        py::arg("g"));
    m.def("transfer_fidelity", &transfer_fidelity, py::arg("model"), py::arg("t"));
    m.def(
        "exact_transfer", [](const TunnelingModel& model) { return outcome_dict(exact_transfer(model)); },
        py::arg("model"));
    m.def("perturbative_infidelity", &perturbative_infidelity, py::arg("model"));
    m.def("choose_g", &choose_g, py::arg("spectrum"), py::arg("epsilon"));

    // blocks
    m.def(
        "lattice_summary",
        [](int d, double alpha, int l) {
            const auto lat = build_block_lattice(d, alpha, l);
            const auto red = reduce_to_chain(lat);
            py::dict out;
            out["sides"] = lat.sides;
            out["populations"] = lat.populations;
            out["site_count"] = lat.site_count();
            out["distance"] = lat.distance();
            out["raw_bonds"] = red.raw_bonds;
            out["bonds"] = red.chain.bonds;
            out["normalization"] = red.normalization;
            out["closure_residual"] = verify_subspace_closure(lat);
            return out;
        },
        py::arg("d"), py::arg("alpha"), py::arg("l"));
    m.def(
        "lattice_hamiltonian",
        [](int d, double alpha, int l, double g) { return full_hamiltonian(build_block_lattice(d, alpha, l), g); },
        py::arg("d"), py::arg("alpha"), py::arg("l"), py::arg("g") = 0.0);

    // uniform
    m.def(
        "uniform_transfer",
        [](int d, double alpha, long side) {
            const auto p = build_uniform_protocol(d, alpha, side);
            py::dict out;
            out["time"] = p.time;
            out["hop"] = p.hop;
            out["coupling"] = p.coupling;
            out["sites"] = p.sites;
            out["fidelity"] = simulate_uniform(p);
            return out;
        },
        py::arg("d"), py::arg("alpha"), py::arg("L"));

    // ring
    m.def(
        "ring_energies", [](int d, long side, double alpha) { return ring_spectrum(d, side, alpha).energies; },
        py::arg("d"), py::arg("L"), py::arg("alpha"));
    m.def(
        "ring_summary",
        [](int d, long side, double alpha) {
            const auto s = ring_spectral_summary(ring_spectrum(d, side, alpha));
            return py::dict(py::arg("delta0") = s.delta0, py::arg("bandwidth") = s.bandwidth, py::arg("q2") = s.q2);
        },
        py::arg("d"), py::arg("L"), py::arg("alpha"));
    m.def(
        "ring_transfer",
        [](int d, long side, double alpha, double g) { return outcome_dict(ring_exact_transfer(d, side, alpha, g)); },
        py::arg("d"), py::arg("L"), py::arg("alpha"), py::arg("g"));

    // scaling
    m.def(
        "lr_exponent",
        [](int d, double alpha) {
            const auto e = lr_exponent(d, alpha);
            return py::dict(py::arg("regime") = regime_name(e.regime), py::arg("exponent") = e.exponent,
                            py::arg("bound_exponent") = e.bound_exponent, py::arg("logarithmic") = e.logarithmic);
        },
        py::arg("d"), py::arg("alpha"));
    m.def("ring_time_exponent", &ring_time_exponent, py::arg("d"), py::arg("alpha"));
    m.def(
        "q_scaling_sweep",
        [](int d, double alpha, int l_min, int l_max, int step) {
            ScalingSeries s;
            {
                py::gil_scoped_release release;
                s = q_scaling_sweep(d, alpha, l_min, l_max, step);
            }
            return series_dict(s);
        },
        py::arg("d"), py::arg("alpha"), py::arg("l_min"), py::arg("l_max"), py::arg("step") = 2);
    m.def(
        "local_exponents",
        [](std::vector<double> sizes, std::vector<double> values, int window) {
            auto s = local_exponents(series_from(std::move(sizes), std::move(values)), window);
            if (s.local.size() >= 4) s.extrapolated = extrapolate_exponent(s);
            return series_dict(s);
        },
        py::arg("sizes"), py::arg("values"), py::arg("window") = 5);
}
