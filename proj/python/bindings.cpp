#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "esqa/dicke.hpp"
#include "esqa/dynamics.hpp"
#include "esqa/harness.hpp"
#include "esqa/schedule.hpp"
#include "esqa/spectrum.hpp"
#include "esqa/svp.hpp"

namespace py = pybind11;
using namespace esqa;

PYBIND11_MODULE(_core, m) {
  m.doc() = "excited-state-search annealing simulator";

  py::class_<IsingModel>(m, "IsingModel")
      .def(py::init<int>(), py::arg("n_qubits"))
      .def_property_readonly("n_qubits", &IsingModel::n_qubits)
      .def_property("offset", &IsingModel::offset, &IsingModel::set_offset)
      .def("set_coupling", &IsingModel::set_coupling)
      .def("set_field", &IsingModel::set_field)
      .def("coupling", &IsingModel::coupling)
      .def("field", &IsingModel::field)
      .def("to_json", &IsingModel::to_json)
      .def_static("from_json",
                  [](const std::string& s) { return IsingModel::from_json(s); });

  py::class_<DriverSpec>(m, "DriverSpec")
      .def(py::init([](int n, double gamma) {
             return DriverSpec{n, gamma};
           }),
           py::arg("n_qubits"), py::arg("gamma") = 1.0)
      .def_readwrite("n_qubits", &DriverSpec::n_qubits)
      .def_readwrite("gamma", &DriverSpec::gamma);

  py::class_<DenseOperator>(m, "DenseOperator")
      .def_readonly("n_qubits", &DenseOperator::n_qubits)
      .def_readonly("mat", &DenseOperator::mat);

  py::class_<QuantumState>(m, "QuantumState")
      .def_static("basis_state", &QuantumState::basis_state)
      .def_static("pure", &QuantumState::pure)
      .def_static("mixed", &QuantumState::mixed)
      .def_property_readonly("n_qubits", &QuantumState::n_qubits)
      .def_property_readonly("psi", &QuantumState::psi)
      .def_property_readonly("rho", &QuantumState::rho)
      .def("validate", &QuantumState::validate);

  m.def("index_to_bitstring", &index_to_bitstring);
  m.def("bitstring_to_index",
        [](const std::string& s) { return bitstring_to_index(s); });
  m.def("build_driver", &build_driver);
  m.def("diagonal_energies", &diagonal_energies);
  m.def("assemble", &assemble);
  m.def("populations", &populations);
  m.def("sample_counts", &sample_counts);

  py::class_<ScheduleParams>(m, "ScheduleParams")
      .def(py::init([](double t1, double t2, double t3, double h_d,
                       double c_l) {
             return ScheduleParams{t1, t2, t3, h_d, c_l};
           }),
           py::arg("t1"), py::arg("t2"), py::arg("t3"), py::arg("h_d"),
           py::arg("c_l"))
      .def_readwrite("t1", &ScheduleParams::t1)
      .def_readwrite("t2", &ScheduleParams::t2)
      .def_readwrite("t3", &ScheduleParams::t3)
      .def_readwrite("h_d", &ScheduleParams::h_d)
      .def_readwrite("c_l", &ScheduleParams::c_l)
      .def("total", &ScheduleParams::total);

  py::class_<ScheduleWeights>(m, "ScheduleWeights")
      .def_readonly("a", &ScheduleWeights::a)
      .def_readonly("b", &ScheduleWeights::b)
      .def_readonly("g", &ScheduleWeights::g);

  m.def("weights_at", &weights_at);
  m.def("validate_schedule",
        [](const ScheduleParams& p) { return validate(p); });
  m.def("conventional_weights_at",
        [](double t, double annealing_time, double c_s) {
          return conventional_weights_at(t,
                                         ConventionalParams{annealing_time,
                                                            c_s});
        });

  py::class_<LatticeBasis>(m, "LatticeBasis")
      .def(py::init([](const Eigen::MatrixXd& rows) {
             LatticeBasis b;
             for (Eigen::Index r = 0; r < rows.rows(); ++r)
               b.vectors.push_back(rows.row(r).transpose());
             return b;
           }),
           py::arg("rows"), "One basis vector per matrix row.")
      .def_property_readonly("dimension", &LatticeBasis::dimension);

  py::class_<GramMatrix>(m, "GramMatrix")
      .def_readonly("g", &GramMatrix::g);

  py::class_<HammingEncoding>(m, "HammingEncoding")
      .def_readonly("lattice_dim", &HammingEncoding::lattice_dim)
      .def_readonly("k", &HammingEncoding::k)
      .def("total_qubits", &HammingEncoding::total_qubits)
      .def("qubit_index", &HammingEncoding::qubit_index);

  m.def("gram", &gram);
  m.def("encode", &encode);
  m.def("decode", [](std::uint32_t index, const HammingEncoding& enc) {
    return decode(index, enc);
  });
  m.def("decode_bits", [](const std::string& bits,
                          const HammingEncoding& enc) {
    return decode(std::string_view(bits), enc);
  });
  m.def("brute_force_shortest", &brute_force_shortest);
  m.def("resolving_fields", &resolving_fields);
  m.def("check_condition", &check_condition);
  m.def("degeneracy_count", &degeneracy_count);

  py::enum_<EvolutionMode>(m, "EvolutionMode")
      .value("closed", EvolutionMode::closed)
      .value("open", EvolutionMode::open);
  py::enum_<RelaxationScaling>(m, "RelaxationScaling")
      .value("none", RelaxationScaling::none)
      .value("proportional_to_a", RelaxationScaling::proportional_to_a);

  py::class_<PropagationConfig>(m, "PropagationConfig")
      .def(py::init<>())
      .def_readwrite("dt", &PropagationConfig::dt)
      .def_readwrite("mode", &PropagationConfig::mode)
      .def_readwrite("relaxation_rate", &PropagationConfig::relaxation_rate)
      .def_readwrite("dephasing_rate", &PropagationConfig::dephasing_rate)
      .def_readwrite("relaxation_scaling",
                     &PropagationConfig::relaxation_scaling)
      .def_readwrite("max_samples", &PropagationConfig::max_samples);

  py::class_<TrajectoryResult>(m, "TrajectoryResult")
      .def_readonly("sample_times", &TrajectoryResult::sample_times)
      .def_readonly("population_series", &TrajectoryResult::population_series)
      .def_readonly("final_state", &TrajectoryResult::final_state);

  m.def("evolve_closed", &evolve_closed);
  m.def("evolve_open", &evolve_open);
  m.def("success_probability", &success_probability);

  py::class_<EnergyDiagram>(m, "EnergyDiagram")
      .def_readonly("grid", &EnergyDiagram::grid)
      .def_readonly("levels", &EnergyDiagram::levels)
      .def_readonly("curves", &EnergyDiagram::curves);

  m.def("spectrum_at", &spectrum_at);
  m.def("diagram_vs_g", &diagram_vs_g, py::arg("h_l"), py::arg("h_p"),
        py::arg("g_grid"), py::arg("track") = false);
  m.def("diagram_along_schedule", &diagram_along_schedule, py::arg("params"),
        py::arg("h_l"), py::arg("h_p"), py::arg("driver"), py::arg("k_grid"),
        py::arg("track") = false);
  m.def("linspace", &linspace);

  m.def("build_dicke", &build_dicke);
  m.def("build_mixture", &build_mixture);
  m.def("overlap", &overlap);
  m.def("symmetric_restriction", &symmetric_restriction);
  m.def("dicke_success_probability", &dicke_success_probability);

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def_readwrite("schedule", &ExperimentConfig::schedule)
      .def_readwrite("propagation", &ExperimentConfig::propagation)
      .def_readwrite("shots", &ExperimentConfig::shots)
      .def_readwrite("seed", &ExperimentConfig::seed);

  py::class_<RunReport>(m, "RunReport")
      .def_readonly("exact_populations", &RunReport::exact_populations)
      .def_readonly("counts", &RunReport::counts)
      .def_readonly("success_exact", &RunReport::success_exact)
      .def_readonly("success_sampled", &RunReport::success_sampled)
      .def_readonly("initial_level_index", &RunReport::initial_level_index);

  m.def("preset_config", &preset_config);
  m.def("config_from_json",
        [](const std::string& s) { return config_from_json(s); });
  m.def("run", &run);
}
