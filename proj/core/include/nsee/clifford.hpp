#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json_fwd.hpp>

#include "nsee/pauli.hpp"
#include "nsee/random.hpp"

namespace nsee {

/// Number of two-qubit Clifford operations modulo global phase.
inline constexpr int kNumTwoQubitCliffords = 11520;

/// A two-qubit Clifford stored as the images of X1, Z1, X2, Z2 under U·U†.
///
/// Two-qubit Pauli letters are encoded in four bits (x1, z1, x2, z2) from
/// least to most significant; qubit 1 is the first site of the pair and the
/// most significant bit of the 4x4 unitary's basis index.
class TwoQubitClifford {
 public:
  struct Image {
    std::uint8_t code = 0;  // letter code
    bool negative = false;  // sign of the Hermitian image
  };

  TwoQubitClifford() = default;

  /// Builds from generator images; throws ArgumentError if they do not define
  /// a valid symplectic map.
  static TwoQubitClifford from_images(const std::array<PauliString, 4>& images);

  int index() const { return index_; }
  /// Images of X1, Z1, X2, Z2 as signed two-qubit Pauli strings.
  std::array<PauliString, 4> images() const;
  /// Image of an arbitrary Hermitian two-qubit letter pattern.
  Image image_of(std::uint8_t code) const { return table_[code]; }
  Image generator_image(int g) const { return table_[std::uint8_t(1u << g)]; }

  bool operator==(const TwoQubitClifford& o) const { return key() == o.key(); }
  /// 20-bit key packing the four generator images.
  std::uint32_t key() const;

 private:
  friend const std::vector<TwoQubitClifford>& enumerate_two_qubit_cliffords();
  static TwoQubitClifford from_generator_images(const std::array<Image, 4>& gens);

  std::array<Image, 16> table_{};
  int index_ = -1;
};

/// Every two-qubit Clifford, in canonical order: lexicographic over the images
/// of (X1, Z1, X2, Z2), each ranging over the Pauli label (I<X<Y<Z, first
/// qubit first) and then the sign (+ before -). Built once, thread-safe.
const std::vector<TwoQubitClifford>& enumerate_two_qubit_cliffords();
const TwoQubitClifford& clifford_by_index(int index);
int identity_clifford_index();
std::optional<int> find_clifford_index(const TwoQubitClifford& c);

/// Unitary realising the stored images; global phase makes the first nonzero
/// entry (row-major) real and positive.
Eigen::Matrix4cd as_unitary(const TwoQubitClifford& c);
/// "apply a, then b".
TwoQubitClifford compose(const TwoQubitClifford& a, const TwoQubitClifford& b);
TwoQubitClifford inverse(const TwoQubitClifford& c);
int compose_index(int a, int b);
int inverse_index(int a);

/// Classes of Cliffords that differ only by single-qubit Cliffords applied
/// afterwards (c ~ l∘c). Members share the Schmidt spectrum of c|theta> for
/// any two-site state, so a candidate scan only has to score one per class.
struct LocalEquivalence {
  std::vector<int> class_of;                  // size 11520
  std::vector<std::vector<int>> members;      // ascending canonical indices
};
const LocalEquivalence& local_equivalence_classes();

/// Conjugates the restriction of `p` to sites (a, b) by `c`; `a` plays qubit 1.
void conjugate_by_two_qubit_clifford_inplace(PauliString& p, const TwoQubitClifford& c, std::size_t a,
                                             std::size_t b);
PauliString conjugate_by_two_qubit_clifford(PauliString p, const TwoQubitClifford& c, std::size_t a,
                                            std::size_t b);

/// One gate of a Clifford circuit.
struct CircuitGate {
  enum class Kind : std::uint8_t { H, S, CNOT, C2 };
  Kind kind = Kind::H;
  std::array<std::size_t, 2> sites{};
  int index = -1;  // canonical index for C2

  std::size_t arity() const { return kind == Kind::H || kind == Kind::S ? 1 : 2; }
  bool operator==(const CircuitGate&) const = default;
};

/// Ordered gate list; the first gate acts on the state first.
class CliffordCircuit {
 public:
  CliffordCircuit() = default;
  explicit CliffordCircuit(std::size_t n_qubits) : n_(n_qubits) {}

  std::size_t n_qubits() const { return n_; }
  const std::vector<CircuitGate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  void push(Gate gate, std::size_t a, std::size_t b = 0);
  void push_c2(int index, std::size_t a, std::size_t b);
  void append(const CliffordCircuit& other);

  /// Circuit undoing this one (S† is emitted as three S gates).
  CliffordCircuit inverse() const;

  nlohmann::json to_json() const;
  static CliffordCircuit from_json(const nlohmann::json& j, std::size_t n_qubits);

  bool operator==(const CliffordCircuit&) const = default;

 private:
  void check_sites(std::size_t a, std::size_t b, bool two) const;

  std::size_t n_ = 0;
  std::vector<CircuitGate> gates_;
};

void conjugate_inplace(PauliString& p, const CircuitGate& gate);
PauliString conjugate(PauliString p, const CliffordCircuit& circuit);
/// C h C† term by term; the term count never grows.
PauliSum conjugate_sum(const PauliSum& h, const CliffordCircuit& circuit);

/// Dense unitary of a gate on its own sites (2x2 or 4x4, first site = MSB).
Eigen::MatrixXcd gate_unitary(const CircuitGate& gate);

/// One brickwork layer of uniformly random two-qubit Cliffords on pairs
/// (k, k+1) with k ≡ layer_index (mod 2). Two-qubit chains always use offset 0.
CliffordCircuit random_clifford_layer(std::size_t n_qubits, Rng& rng, std::size_t layer_index = 0);

}  // namespace nsee
