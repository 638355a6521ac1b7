#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Dense>

// Spin convention used throughout:
//   sigma_z |up> = +|up>,  sigma_z |down> = -|down>
//   basis index = bitstring with qubit 1 as the most significant bit,
//   up encoded as bit 0, down as bit 1.
// Hence index(|up...up>) = 0 and index(|down...down>) = 2^n - 1.

namespace esqa {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr int kMaxQubitsPure = 12;
inline constexpr int kMaxQubitsMixed = 8;

// +1 for up (bit 0), -1 for down (bit 1); qubit is 1-based.
inline int spin_at(std::uint32_t basis_index, int qubit, int n_qubits) {
  return ((basis_index >> (n_qubits - qubit)) & 1u) ? -1 : +1;
}

std::string index_to_bitstring(std::uint32_t index, int n_qubits);

// Accepts "0"/"1" as well as "u"/"d" characters.
std::uint32_t bitstring_to_index(std::string_view bits);

// Diagonal Ising Hamiltonian
//   H = sum_{i<j} J_ij sz_i sz_j + sum_j h_j sz_j + offset.
// Qubit indices are 1-based; coupling keys are normalized to i < j and
// explicit zeros are dropped.
class IsingModel {
 public:
  IsingModel() = default;
  explicit IsingModel(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  double offset() const { return offset_; }
  void set_offset(double v) { offset_ = v; }

  void set_coupling(int i, int j, double value);
  void set_field(int j, double value);
  double coupling(int i, int j) const;
  double field(int j) const;

  const std::map<std::pair<int, int>, double>& couplings() const {
    return couplings_;
  }
  const std::map<int, double>& fields() const { return fields_; }

  double coupling_abs_sum() const;

  std::string to_json() const;
  static IsingModel from_json(std::string_view text);

  bool operator==(const IsingModel&) const = default;

 private:
  void check_index(int j) const;

  int n_qubits_ = 0;
  std::map<std::pair<int, int>, double> couplings_;
  std::map<int, double> fields_;
  double offset_ = 0.0;
};

struct DriverSpec {
  int n_qubits = 0;
  double gamma = 1.0;  // transverse-field amplitude, > 0
};

struct DenseOperator {
  int n_qubits = 0;
  ComplexMatrix mat;

  Eigen::Index dim() const { return mat.rows(); }
};

// Pure state vector or density matrix over the computational basis.
class QuantumState {
 public:
  enum class Kind { pure, mixed };

  static QuantumState pure(int n_qubits, ComplexVector psi);
  static QuantumState mixed(int n_qubits, ComplexMatrix rho);
  static QuantumState basis_state(int n_qubits, std::uint32_t index);

  Kind kind() const { return kind_; }
  int n_qubits() const { return n_qubits_; }
  const ComplexVector& psi() const { return psi_; }
  const ComplexMatrix& rho() const { return rho_; }

  // Throws if the normalization / hermiticity / positivity invariants fail.
  void validate() const;

 private:
  Kind kind_ = Kind::pure;
  int n_qubits_ = 0;
  ComplexVector psi_;
  ComplexMatrix rho_;
};

// -Gamma sum_j sx_j as a dense Hermitian matrix. n_qubits limited to 12.
DenseOperator build_driver(const DriverSpec& spec);

// Entry b = sum J_ij s_i(b) s_j(b) + sum h_j s_j(b) + offset.
RealVector diagonal_energies(const IsingModel& model);

// a*H_D + b*(g*H_L + H_P).
DenseOperator assemble(double a, double b, double g,
                       const DenseOperator& driver, const IsingModel& h_l,
                       const IsingModel& h_p);

RealVector population_vector(const QuantumState& state);
std::map<std::string, double> populations(const QuantumState& state);

// Deterministic multinomial draw: fixed (pops, shots, seed) gives fixed
// counts, independent of platform.
std::map<std::string, long long> sample_counts(
    const std::map<std::string, double>& pops, long long shots,
    std::uint64_t seed);

}  // namespace esqa
