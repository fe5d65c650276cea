#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "partalg/examples.hpp"
#include "partalg/representation.hpp"

namespace py = pybind11;
using namespace partalg;

PYBIND11_MODULE(_partalg, m) {
    m.doc() = "operator-algebra partition toolkit";

    py::class_<Config>(m, "Config")
        .def(py::init<>())
        .def_readwrite("tol", &Config::tol)
        .def_readwrite("gap_tol", &Config::gap_tol)
        .def_readwrite("seed", &Config::seed);

    py::class_<OperatorAlgebra>(m, "OperatorAlgebra")
        .def_readonly("ambient_dim", &OperatorAlgebra::ambient_dim)
        .def_readonly("basis", &OperatorAlgebra::basis)
        .def_readonly("unit", &OperatorAlgebra::unit)
        .def("dim", &OperatorAlgebra::dim);

    py::class_<BlockStructure>(m, "BlockStructure")
        .def_readonly("central_projectors", &BlockStructure::central_projectors)
        .def_readonly("factor_dims", &BlockStructure::factor_dims)
        .def_readonly("multiplicities", &BlockStructure::multiplicities);

    m.def("generate",
          [](int dim, const std::vector<CMat>& gens, const Config& cfg) {
              return generate(dim, gens, cfg);
          },
          py::arg("ambient_dim"), py::arg("generators"),
          py::arg("config") = Config{});
    m.def("full_algebra", &full_algebra, py::arg("ambient_dim"));
    m.def("trivial_algebra", &trivial_algebra, py::arg("ambient_dim"));
    m.def("commutant",
          [](const OperatorAlgebra& a, const Config& cfg) {
              return commutant(a, cfg);
          },
          py::arg("algebra"), py::arg("config") = Config{});
    m.def("centre", &centre, py::arg("algebra"), py::arg("config") = Config{});
    m.def("atomic_projectors", &atomic_projectors, py::arg("algebra"),
          py::arg("config") = Config{});
    m.def("block_structure", &block_structure, py::arg("algebra"),
          py::arg("config") = Config{});
    m.def("lattice_join", &lattice_join, py::arg("a"), py::arg("b"),
          py::arg("config") = Config{});
    m.def("lattice_meet", &lattice_meet, py::arg("a"), py::arg("b"),
          py::arg("config") = Config{});
    m.def("equal_algebras", &equal_algebras, py::arg("a"), py::arg("b"),
          py::arg("config") = Config{});

    py::class_<Partition>(m, "Partition")
        .def_readonly("labels", &Partition::labels)
        .def_readonly("ambient_dim", &Partition::ambient_dim)
        .def("algebra", &Partition::at, py::arg("subset_key"),
             py::return_value_policy::reference_internal)
        .def("site", &Partition::site, py::arg("label"),
             py::return_value_policy::reference_internal)
        .def("subsets", &Partition::subsets);

    py::class_<BipartitionReport>(m, "BipartitionReport")
        .def_readonly("verdict", &BipartitionReport::verdict)
        .def_readonly("containment_ok", &BipartitionReport::containment_ok)
        .def_readonly("block_distance", &BipartitionReport::block_distance)
        .def_readonly("centre_distance", &BipartitionReport::centre_distance);

    py::class_<PairReport>(m, "PairReport")
        .def_readonly("s_key", &PairReport::s_key)
        .def_readonly("t_key", &PairReport::t_key)
        .def_readonly("report", &PairReport::report);

    py::class_<PartitionReport>(m, "PartitionReport")
        .def_readonly("verdict", &PartitionReport::verdict)
        .def_readonly("boundary_empty_ok", &PartitionReport::boundary_empty_ok)
        .def_readonly("boundary_full_ok", &PartitionReport::boundary_full_ok)
        .def_readonly("pairs", &PartitionReport::pairs);

    m.def("subset_key", &subset_key, py::arg("labels"));
    m.def("check_bipartition", &check_bipartition, py::arg("a1"),
          py::arg("a2"), py::arg("omega"), py::arg("config") = Config{});
    m.def("check_partition", &check_partition, py::arg("partition"),
          py::arg("config") = Config{});
    m.def("folt_mutation", &folt_mutation, py::arg("partition"),
          py::arg("config") = Config{});

    m.def("factorisation_partition", &factorisation_partition,
          py::arg("d1") = 2, py::arg("d2") = 2, py::arg("config") = Config{});
    m.def("two_trajectories_partition", &two_trajectories_partition,
          py::arg("d") = 2, py::arg("config") = Config{});
    m.def("tripartite_partition", &tripartite_partition, py::arg("d") = 2,
          py::arg("config") = Config{});
    m.def("fermionic_partition", &fermionic_partition, py::arg("modes"),
          py::arg("config") = Config{});

    py::class_<FermionSystem>(m, "FermionSystem")
        .def_readonly("modes", &FermionSystem::modes)
        .def_readonly("a", &FermionSystem::a)
        .def("dim", &FermionSystem::dim);

    m.def("jw_system", &jw_system, py::arg("modes"));
    m.def("physical_algebra", &physical_algebra, py::arg("system"),
          py::arg("modes"), py::arg("config") = Config{});
    m.def("parity_projector", &parity_projector, py::arg("system"),
          py::arg("modes"));
    m.def("b_operator", &b_operator, py::arg("system"), py::arg("i"),
          py::arg("j"));

    py::class_<Representation>(m, "Representation")
        .def_readonly("sites", &Representation::sites)
        .def_readonly("intertwiner", &Representation::intertwiner)
        .def_readonly("correlation_projector",
                      &Representation::correlation_projector)
        .def("apply", &Representation::apply, py::arg("f"))
        .def("pullback", &Representation::pullback, py::arg("g"));

    py::class_<SubsetAudit>(m, "SubsetAudit")
        .def_readonly("subset_key", &SubsetAudit::subset_key)
        .def_readonly("distance", &SubsetAudit::distance)
        .def_readonly("localised", &SubsetAudit::localised);

    py::class_<RepresentationAudit>(m, "RepresentationAudit")
        .def_readonly("subsets", &RepresentationAudit::subsets)
        .def_readonly("fully_localised", &RepresentationAudit::fully_localised);

    py::class_<DephasingFunction>(m, "DephasingFunction")
        .def_readonly("subset_key", &DephasingFunction::subset_key)
        .def_readonly("phases", &DephasingFunction::phases)
        .def_readonly("residual", &DephasingFunction::residual);

    m.def("construct_representation", &construct_representation,
          py::arg("partition"), py::arg("config") = Config{});
    m.def("audit_representation", &audit_representation, py::arg("partition"),
          py::arg("representation"), py::arg("config") = Config{});
    m.def("extract_dephasings", &extract_dephasings, py::arg("partition"),
          py::arg("representation"), py::arg("config") = Config{});
}
