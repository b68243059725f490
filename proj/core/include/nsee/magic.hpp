#pragma once

#include <cstddef>

#include <Eigen/Core>

#include "nsee/mps.hpp"

namespace nsee {

inline constexpr std::size_t kSreDefaultCap = 10;

struct SreResult {
  int order = 2;
  double value = 0.0;  // nats
  double density = 0.0;
};

/// Stabilizer Renyi entropy of order n >= 2 from all 4^N Pauli expectations,
/// evaluated as one Walsh-Hadamard transform per X pattern.
SreResult sre_exact(const Eigen::VectorXcd& psi, std::size_t n_qubits, int order, std::size_t cap = kSreDefaultCap);

/// Same for an MPS. The chain is split at bonds of dimension 1 and the
/// additive SRE of each block is summed; every block must fit the cap.
SreResult sre_exact(const Mps& s, int order, std::size_t cap = kSreDefaultCap);

/// Sizes of the blocks sre_exact(Mps) would split the chain into.
std::vector<std::size_t> product_blocks(const Mps& s);

/// M_2 of |T>^N where |T> = (|0> + e^{i pi/4}|1>)/sqrt 2.
double sre_tstate(std::size_t n_qubits);

/// Ensemble-averaged M_2 after `rounds` rounds of random Cliffords followed
/// by t_per_round T gates (log of the averaged Pauli moment).
double sre_random_ct_average(std::size_t n_qubits, std::size_t rounds, std::size_t t_per_round = 2);

}  // namespace nsee
