#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "nsee/bipartition.hpp"
#include "nsee/pauli.hpp"

namespace nsee {

/// SVD truncation rule: keep at most `max_bond` values (0 = no limit) and drop
/// singular values strictly below `threshold`.
struct Truncation {
  std::size_t max_bond = 0;
  double threshold = 0.0;
};

/// Singular values at or below this are always dropped (numerical zeros).
inline constexpr double kSingularFloor = 1e-14;

/// Side the orthogonality centre ends up on after a two-site update.
enum class Direction { Right, Left };

/// Two-site wavefunction: row s1*dl + l, column s2*dr + r.
struct TwoSite {
  Eigen::MatrixXcd m;
  std::size_t dl = 0;
  std::size_t dr = 0;

  auto block(int s1, int s2) { return m.block(s1 * dl, s2 * dr, dl, dr); }
  auto block(int s1, int s2) const { return m.block(s1 * dl, s2 * dr, dl, dr); }
};

/// theta <- u theta on the physical legs (u indexed by 2*s1 + s2).
void apply_gate(TwoSite& theta, const Eigen::Matrix4cd& u);

struct SplitInfo {
  double discarded_weight = 0.0;
  std::vector<double> singular_values;  // kept values, renormalised
};

/// Number of leading values of a descending spectrum kept under `tr`.
std::size_t kept_count(std::span<const double> singular_values, const Truncation& tr);
/// von Neumann entropy in nats of a Schmidt spectrum (normalised internally).
double entropy_from_spectrum(std::span<const double> singular_values);

/// Open-boundary MPS with tensors A[i][s] of shape (left bond) x (right bond).
///
/// Tensors left of the centre are left-orthonormal and tensors right of it
/// are right-orthonormal; every public operation preserves this.
class Mps {
 public:
  using Tensor = std::array<Eigen::MatrixXcd, 2>;

  Mps() = default;

  static Mps product_state(std::span<const int> bits);
  static Mps product_state(const std::vector<Eigen::Vector2cd>& local_states);
  /// Exact (or truncated) MPS of a 2^n vector, qubit 0 most significant.
  static Mps from_statevector(const Eigen::VectorXcd& psi, std::size_t n, const Truncation& tr = {});

  std::size_t size() const { return a_.size(); }
  std::size_t center() const { return center_; }
  /// Bond b sits between sites b-1 and b; bonds 0 and N have dimension 1.
  std::size_t bond_dim(std::size_t bond) const;
  std::size_t max_bond_dim() const;
  const Tensor& tensor(std::size_t site) const { return a_[site]; }

  void move_center(std::size_t site);
  /// Norm recomputed from the centre tensor.
  double norm() const;
  void normalize();

  TwoSite two_site(std::size_t site) const;
  /// Replaces sites (site, site+1) by the truncated SVD of theta. The centre
  /// must already be at site or site+1. Kept values are renormalised.
  SplitInfo set_two_site(std::size_t site, const TwoSite& theta, const Truncation& tr, Direction dir);

  /// Applies a 4x4 unitary to (site, site+1) and truncates; returns the
  /// discarded weight. Throws ArgumentError if u is not unitary.
  double apply_two_site_gate(const Eigen::Matrix4cd& u, std::size_t site, const Truncation& tr,
                             Direction dir = Direction::Right);
  void apply_single_site_gate(const Eigen::Matrix2cd& u, std::size_t site);

  /// Schmidt values across `bond` (1..N-1), descending; moves the centre.
  std::vector<double> bond_spectrum(std::size_t bond);
  double entanglement_entropy_at(std::size_t bond);

  /// Throws CapacityError when N > cap.
  Eigen::VectorXcd to_statevector(std::size_t cap = 20) const;

 private:
  void check_site(std::size_t site) const;

  std::vector<Tensor> a_;
  std::size_t center_ = 0;
};

/// SWAP as a 4x4 matrix.
Eigen::Matrix4cd swap_matrix();

/// Entropy of an arbitrary bipartition. Prefix or suffix cuts read a bond
/// directly; other cuts bring A to the left with SWAP gates on a copy,
/// truncating at `swap_threshold`.
double entropy_of_bipartition(const Mps& s, const Bipartition& cut, double swap_threshold = 1e-12);
std::vector<double> cut_entropies(const Mps& s, const CutSet& cuts, double swap_threshold = 1e-12);

cplx expectation(const Mps& s, const PauliString& p);
double expectation_pauli_sum(const Mps& s, const PauliSum& h);
cplx inner_product(const Mps& a, const Mps& b);
/// |<a|b>|.
double overlap(const Mps& a, const Mps& b);

}  // namespace nsee
