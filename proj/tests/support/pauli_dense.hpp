#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "dense_oracle.hpp"
#include "nsee/pauli.hpp"

namespace oracle {

inline std::string letters(const nsee::PauliString& p) {
  std::string s;
  for (std::size_t q = 0; q < p.size(); ++q) s.push_back(p.letter(q));
  return s;
}

/// Kronecker-assembled matrix of a Pauli sum (phases included).
inline Mat dense_of(const nsee::PauliSum& h) {
  const auto dim = Eigen::Index(1) << h.n_qubits();
  Mat m = Mat::Zero(dim, dim);
  for (const auto& t : h.terms()) m += t.coeff * pauli_matrix(t.string.str());
  return m;
}

/// Term list for the matrix-free oracle; terms must carry phase +1.
inline std::vector<PauliTermText> terms_of(const nsee::PauliSum& h) {
  std::vector<PauliTermText> out;
  for (const auto& t : h.terms()) {
    if (t.string.phase().power() != 0) throw std::invalid_argument("terms_of: non-trivial phase");
    out.push_back({t.coeff, letters(t.string)});
  }
  return out;
}

}  // namespace oracle
