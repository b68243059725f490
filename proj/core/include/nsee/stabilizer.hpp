#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "nsee/bipartition.hpp"
#include "nsee/clifford.hpp"
#include "nsee/pauli.hpp"

namespace nsee {

/// Stabilizer state held as N signed, commuting, independent generators.
class Tableau {
 public:
  Tableau() = default;

  /// |0...0>, generators +Z_q.
  static Tableau zero_state(std::size_t n);
  /// Validates: N generators on N qubits, real phases, mutual commutation and
  /// GF(2) independence. Throws ArgumentError otherwise.
  static Tableau from_generators(std::vector<PauliString> generators);

  std::size_t n_qubits() const { return n_; }
  const std::vector<PauliString>& generators() const { return gens_; }

  void apply_inplace(Gate gate, std::size_t a, std::size_t b = 0);
  void apply_inplace(const CircuitGate& gate);
  void apply_inplace(const CliffordCircuit& circuit);
  Tableau apply_gate(Gate gate, std::span<const std::size_t> sites) const;

  /// One generator per line in signed Pauli text.
  std::string str() const;
  static Tableau parse(std::string_view text);

 private:
  std::size_t n_ = 0;
  std::vector<PauliString> gens_;
};

/// Rank over GF(2) of the generators' (x|z) rows restricted to `sites`.
std::size_t restricted_rank(const Tableau& t, std::span<const std::size_t> sites);

/// (rank of the generators restricted to A - |A|) * ln 2, in nats.
double entanglement_entropy(const Tableau& t, const Bipartition& cut);

/// Dense state vector (qubit 0 most significant); throws CapacityError for N > cap.
Eigen::VectorXcd to_statevector(const Tableau& t, std::size_t cap = 14);

}  // namespace nsee
