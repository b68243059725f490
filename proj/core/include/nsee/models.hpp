#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "nsee/bipartition.hpp"
#include "nsee/pauli.hpp"

namespace nsee {

enum class Boundary { Open, Periodic };

/// lx rows by ly columns. Site (r, c) has label c*lx + r and sits at MPS
/// position snake_position(r, c): columns are walked top to bottom, then
/// bottom to top, alternately.
struct LatticeSpec {
  std::size_t lx = 1;
  std::size_t ly = 1;
  Boundary boundary = Boundary::Open;

  std::size_t n_sites() const { return lx * ly; }
  /// Throws ArgumentError for an empty lattice.
  void validate() const;
  std::size_t snake_position(std::size_t row, std::size_t col) const;
};

/// snake_order[pos] = label of the site at MPS position pos.
std::vector<std::size_t> snake_order(const LatticeSpec& spec);
/// Inverse permutation: position of each label.
std::vector<std::size_t> snake_positions(const LatticeSpec& spec);

/// Nearest-neighbour pairs as MPS positions (first < second), without
/// duplicates. Periodic wraps are only added for extents above 2.
std::vector<std::pair<std::size_t, std::size_t>> lattice_bonds(const LatticeSpec& spec);

/// -J sum ZZ - h sum X over an open lattice.
PauliSum transverse_ising(const LatticeSpec& spec, double j, double h);
/// J/4 sum (XX + YY + delta ZZ) over an open lattice.
PauliSum xxz(const LatticeSpec& spec, double j, double delta);

/// Qubit of the bond leaving vertex (r, c) to the right (bond 0) or
/// downwards (bond 1).
std::size_t toric_qubit(const LatticeSpec& spec, std::size_t row, std::size_t col, int bond);
/// -sum A_s - sum B_p on a periodic lx x ly vertex lattice (2*lx*ly qubits).
/// Throws UnsupportedError for open boundaries and ArgumentError when an
/// extent is below 2.
PauliSum toric_code(const LatticeSpec& spec);

/// Cuts between adjacent columns (prefixes in snake order) followed by cuts
/// between adjacent rows; ly - 1 + lx - 1 entries.
CutSet cut_set(const LatticeSpec& spec);
/// The same cuts with each vertex replaced by its two toric qubits.
CutSet toric_cut_set(const LatticeSpec& spec);

/// {model, lx, ly, boundary, params}.
nlohmann::json model_json(const std::string& model, const LatticeSpec& spec, const nlohmann::json& params);

}  // namespace nsee
