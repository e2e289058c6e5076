#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tpad/airy_bessel.hpp"
#include "tpad/analytic_kernel.hpp"
#include "tpad/experiments.hpp"
#include "tpad/geometry.hpp"
#include "tpad/oracle.hpp"
#include "tpad/sampler.hpp"
#include "tpad/window.hpp"

namespace py = pybind11;
using namespace tpad;

namespace {

// nlohmann json -> python object through the json module
py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }
nlohmann::json from_py(const py::object& o) {
    return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

py::tuple vtx(const Vertex& v) { return py::make_tuple(v.x1, v.x2); }
Vertex vtx(const std::pair<int, int>& p) { return {p.first, p.second}; }

}  // namespace

PYBIND11_MODULE(tpad, m) {
    m.doc() = "Two-periodic Aztec diamond: exact sampling, inverse Kasteleyn, Airy limits";

    py::class_<LatticeModel, std::shared_ptr<LatticeModel>>(m, "Model")
        .def_readonly("n", &LatticeModel::n)
        .def_readonly("a", &LatticeModel::a)
        .def_readonly("b", &LatticeModel::b)
        .def_readonly("c", &LatticeModel::c)
        .def_property_readonly("white", [](const LatticeModel& s) {
            py::list l;
            for (const auto& v : s.white) l.append(vtx(v));
            return l;
        })
        .def_property_readonly("black", [](const LatticeModel& s) {
            py::list l;
            for (const auto& v : s.black) l.append(vtx(v));
            return l;
        })
        .def_property_readonly("num_edges", [](const LatticeModel& s) { return s.edges.size(); })
        .def("edge", [](const LatticeModel& s, int e) {
            const EdgeRef& r = s.edges.at(e);
            return py::dict(py::arg("white") = r.white, py::arg("black") = r.black, py::arg("weight") = r.weight,
                            py::arg("direction") = static_cast<int>(r.direction), py::arg("a_edge") = r.a_edge);
        })
        .def("kasteleyn", [](const LatticeModel& s) { return kasteleyn_matrix(s); })
        .def("to_json", [](const LatticeModel& s) { return to_py(model_to_json(s)); });

    m.def("model", [](int n, double a, double b) { return std::const_pointer_cast<LatticeModel>(make_model(n, a, b)); },
          py::arg("n"), py::arg("a"), py::arg("b") = 1.0);

    py::class_<KinvMatrix>(m, "Kinv")
        .def_readonly("inverse", &KinvMatrix::inv)
        .def_readonly("residual", &KinvMatrix::residual)
        .def("edge_probability", &edge_probability)
        .def("correlation", &correlation)
        .def("gap_probability", &gap_probability_exact);
    m.def("invert_kasteleyn", [](std::shared_ptr<LatticeModel> mod) { return invert_kasteleyn(mod); });

    m.def(
        "sample",
        [](std::shared_ptr<LatticeModel> mod, std::uint64_t seed) {
            const DimerConfiguration c = sample(mod, seed);
            if (!validate_matching(c)) throw std::runtime_error("sampler produced an invalid matching");
            return c.edges;
        },
        py::arg("model"), py::arg("seed"));
    m.def(
        "heights",
        [](std::shared_ptr<LatticeModel> mod, const std::vector<int>& edges) {
            DimerConfiguration c{mod, edges};
            if (!validate_matching(c)) throw std::invalid_argument("not a perfect matching");
            const HeightField h = compute_heights(c);
            const int s = 2 * h.n + 1;
            Eigen::MatrixXi out(s, s);
            for (int j = 0; j < s; ++j)
                for (int i = 0; i < s; ++i) out(i, j) = h.at(i, j);
            return out;
        },
        "heights on face centres (i, j), entries with i+j odd are 0");

    m.def(
        "kinv_analytic",
        [](std::shared_ptr<LatticeModel> mod, std::pair<int, int> w, std::pair<int, int> b) {
            return kinv_analytic(*mod, vtx(w), vtx(b)).value;
        },
        py::arg("model"), py::arg("white"), py::arg("black"));

    m.def("window", [](int n, double gamma) { return to_py(window_to_json(make_window(n, gamma))); });

    m.def("psi", &psi);
    m.def("extended_airy_kernel", [](double t, double x, double tp, double y) { return extended_kernel(t, x, tp, y); });
    m.def("airy_kernel", &airy_kernel_reference);
    m.def(
        "airy_fdd",
        [](std::vector<double> times, std::vector<double> levels, int nodes) {
            AiryQuery q;
            q.times = std::move(times);
            q.levels = std::move(levels);
            q.nodes = nodes;
            return airy_process_fdd(q).value;
        },
        py::arg("times"), py::arg("levels"), py::arg("nodes") = 40);
    m.def("bessel_kernel", [](int i, int j, double nu) { return bessel_kernel(i, j, nu).value; });
    m.def("bessel_series", &bessel_series);

    m.def("campaigns", &campaign_names);
    m.def(
        "run_campaign",
        [](const std::string& name, py::object config) {
            const CampaignConfig cfg =
                config.is_none() ? default_config(name) : config_from_json(name, from_py(config));
            CampaignResult r;
            {
                py::gil_scoped_release nogil;
                r = run_campaign(cfg);
            }
            py::dict d = to_py(r.to_json());
            d["csv"] = r.table.to_csv();
            return d;
        },
        py::arg("name"), py::arg("config") = py::none());
}
