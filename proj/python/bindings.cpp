#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "grouplab/experiments.hpp"

namespace py = pybind11;
using namespace grouplab;

namespace {

struct PyGroup {
    GroupPtr ptr;
};

struct PySubgroup {
    SubgroupHandle handle;
};

py::object json_to_py(const nlohmann::json& j) {
    py::module_ pyjson = py::module_::import("json");
    return pyjson.attr("loads")(j.dump());
}

py::dict hausdorff_dict(const HausdorffResult& r) {
    py::dict d;
    d["estimate"] = r.estimate;
    d["error_bound"] = r.error_bound;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "compact-subgroup laboratory: Hausdorff geometry of subgroup spaces";

    py::class_<PyGroup>(m, "Group")
        .def_static("from_json", [](const std::string& s) { return PyGroup{group_from_json(s)}; },
                    py::arg("descriptor"))
        .def_static("named", [](const std::string& s) { return PyGroup{corpus_group(s)}; },
                    py::arg("name"), "T1, T2, G_alpha, G_beta, SO3, SU2")
        .def("describe", [](const PyGroup& g) { return g.ptr->describe(); })
        .def("diameter_bound", [](const PyGroup& g) { return g.ptr->diameter_bound(); })
        .def("net_size",
             [](const PyGroup& g, double eps) {
                 size_t n = 0;
                 double mesh = g.ptr->for_each_net_point(eps, [&](const GroupElement&) { ++n; });
                 return py::make_tuple(n, mesh);
             },
             py::arg("eps"), "returns (point count, certified mesh)");

    py::class_<PySubgroup>(m, "Subgroup")
        .def_static("full", [](const PyGroup& g) { return PySubgroup{SubgroupHandle::full(g.ptr)}; })
        .def_static("cyclic_grid",
                    [](const PyGroup& g, int n) {
                        return PySubgroup{SubgroupHandle::cyclic_grid(g.ptr, n)};
                    },
                    py::arg("parent"), py::arg("n"))
        .def("origin", [](const PySubgroup& h) { return h.handle.origin(); })
        .def("exact", [](const PySubgroup& h) { return h.handle.exact(); })
        .def("sample_size", [](const PySubgroup& h, double mesh) {
            auto s = h.handle.sample(mesh);
            return py::make_tuple(s.points.size(), s.mesh);
        });

    m.def("hausdorff",
          [](const PySubgroup& a, const PySubgroup& b, double mesh) {
              return hausdorff_dict(
                  hausdorff_distance(sample_of(a.handle, mesh), sample_of(b.handle, mesh)));
          },
          py::arg("a"), py::arg("b"), py::arg("mesh") = 0.05);

    m.def("approximation_report",
          [](const std::string& group, std::vector<int> ns, double mesh) {
              GroupPtr g = corpus_group(group);
              auto handles = approximation_sequence(g, ns);
              SampleSet full = sample_of(SubgroupHandle::full(g), mesh);
              std::vector<std::pair<long long, SampleSet>> seq;
              for (size_t i = 0; i < handles.size(); ++i)
                  seq.push_back({ns[i], sample_of(handles[i], mesh)});
              auto rows = converging_sequence_report(seq, full);
              py::list out;
              for (const auto& r : rows) {
                  py::dict d;
                  d["n"] = r.label;
                  d["estimate"] = r.estimate;
                  d["error_bound"] = r.error_bound;
                  d["monotone_violation"] = r.monotone_violation;
                  out.append(d);
              }
              return out;
          },
          py::arg("group"), py::arg("ns"), py::arg("mesh") = 0.004);

    m.def("isolation",
          [](const std::string& algebra) {
              auto v = isolation_verdict(corpus_algebra(algebra));
              py::dict d;
              d["isolated"] = v.isolated;
              d["perfect_identity_component"] = v.perfect_identity_component;
              d["derived_dimension"] = v.derived.dim();
              d["codimension"] = v.codimension;
              return d;
          },
          py::arg("algebra"), "so3, su2, u2, r1, r2, r3, so3+r1, su2+su2");

    m.def("ricci_min",
          [](const std::string& algebra) { return ricci_min(corpus_algebra(algebra)).value; });
    m.def("myers_bound",
          [](const std::string& algebra) { return myers_bound(corpus_algebra(algebra)); });

    m.def("exp_coverage",
          [](const std::string& group, const std::string& algebra, double delta, double mesh,
             double oracle_mesh) {
              CoverageOptions opts;
              opts.oracle_mesh = oracle_mesh;
              auto rep = exp_coverage_check(corpus_group(group), corpus_algebra(algebra), delta,
                                            mesh, opts);
              py::dict d;
              d["covered"] = rep.covered;
              d["gap"] = rep.gap;
              d["threshold"] = rep.threshold;
              d["gap_is_lower_bound"] = rep.gap_is_lower_bound;
              d["oracle_points"] = rep.oracle_points;
              d["image_points"] = rep.image_points;
              return d;
          },
          py::arg("group"), py::arg("algebra"), py::arg("delta"), py::arg("mesh") = 0.05,
          py::arg("oracle_mesh") = 0.3);

    m.def("h2_trivial",
          [](const std::string& f_name, std::vector<long long> factors) {
              FiniteGroup f = f_name == "S3" ? symmetric3()
                              : f_name == "Z2xZ2"
                                  ? direct_product(cyclic_group(2), cyclic_group(2))
                                  : cyclic_group(std::stoi(f_name.substr(1)));
              return h2(FiniteModule::trivial(f, factors));
          },
          py::arg("group"), py::arg("factors"),
          "invariant factors of H^2(F; M) for the trivial action");

    m.def("minimality",
          [](const std::string& rep_json) {
              auto rep = integer_rep_from_json(rep_json);
              return json_to_py(
                  nlohmann::json::parse(minimality_report_to_json(minimality_check(rep))));
          },
          py::arg("rep_json"));

    m.def("center_components",
          [](const std::string& group) {
              GroupPtr g = corpus_group(group);
              auto c = center_components(g->semidirect_group());
              return py::make_tuple(c.first, c.second);
          },
          py::arg("group"));

    m.def("turing_gap",
          [](double mesh, int max_cyclic, int max_dihedral, int threads) {
              auto rep = turing_gap(mesh, finite_rotation_group_catalog(max_cyclic, max_dihedral),
                                    threads);
              py::dict d;
              d["min_gap"] = rep.min_gap;
              d["argmin"] = rep.argmin;
              d["error_bound"] = rep.error_bound;
              d["net_mesh"] = rep.net_mesh;
              d["net_points"] = rep.net_points;
              return d;
          },
          py::arg("mesh") = 0.1, py::arg("max_cyclic") = 12, py::arg("max_dihedral") = 6,
          py::arg("threads") = 0);

    m.def("run_experiment",
          [](const std::string& config_json) {
              auto cfg = parse_experiment_config(config_json);
              auto outcome = run_experiment(cfg);
              py::dict d;
              d["exit_code"] = outcome.exit_code;
              d["summary"] = outcome.summary;
              py::dict arts;
              for (const auto& a : outcome.artifacts) arts[py::str(a.filename)] = a.content;
              d["artifacts"] = arts;
              return d;
          },
          py::arg("config_json"));

    m.def("list_experiments", &list_experiments);
    m.attr("__version__") = grouplab_version();
}
