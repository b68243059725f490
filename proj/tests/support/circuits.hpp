#pragma once

#include "dense_oracle.hpp"
#include "nsee/clifford.hpp"

namespace oracle {

/// Random circuit over H, S, CNOT and canonical two-qubit Cliffords on
/// arbitrary (not only adjacent) pairs.
inline nsee::CliffordCircuit random_circuit(std::size_t n, std::size_t gates, nsee::Rng& rng,
                                            bool adjacent_only = false) {
  nsee::CliffordCircuit c(n);
  for (std::size_t g = 0; g < gates; ++g) {
    std::size_t a = nsee::uniform_index(rng, n);
    std::size_t b = (a + 1 + nsee::uniform_index(rng, n - 1)) % n;
    if (adjacent_only) {
      a = nsee::uniform_index(rng, n - 1);
      b = a + 1;
    }
    switch (nsee::uniform_index(rng, 4)) {
      case 0: c.push(nsee::Gate::H, a); break;
      case 1: c.push(nsee::Gate::S, a); break;
      case 2: c.push(nsee::Gate::CNOT, a, b); break;
      default: c.push_c2(int(nsee::uniform_index(rng, nsee::kNumTwoQubitCliffords)), a, b); break;
    }
  }
  return c;
}

inline Mat cnot() {
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
  return m;
}

/// Dense statevector evolution of a circuit from `psi`.
inline Vec simulate(const nsee::CliffordCircuit& c, Vec psi) {
  const int n = int(c.n_qubits());
  for (const auto& g : c.gates()) {
    switch (g.kind) {
      case nsee::CircuitGate::Kind::H: apply_op(psi, hadamard(), n, {int(g.sites[0])}); break;
      case nsee::CircuitGate::Kind::S: apply_op(psi, phase_s(), n, {int(g.sites[0])}); break;
      case nsee::CircuitGate::Kind::CNOT: apply_op(psi, cnot(), n, {int(g.sites[0]), int(g.sites[1])}); break;
      case nsee::CircuitGate::Kind::C2:
        apply_op(psi, Mat(nsee::as_unitary(nsee::clifford_by_index(g.index))), n,
                 {int(g.sites[0]), int(g.sites[1])});
        break;
    }
  }
  return psi;
}

}  // namespace oracle
