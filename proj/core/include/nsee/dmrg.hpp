#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "nsee/mps.hpp"
#include "nsee/pauli.hpp"
#include "nsee/random.hpp"

namespace nsee {

/// Matrix product operator; tensor i holds W[2*s_out + s_in] of shape
/// (left bond) x (right bond).
class Mpo {
 public:
  using Tensor = std::array<Eigen::MatrixXcd, 4>;

  Mpo() = default;

  /// Exact MPO of a Pauli sum: a left-prefix automaton (terms sharing a
  /// prefix share channels), followed by SVD compression at `compress_tol`
  /// relative to the largest operator Schmidt value of each bond.
  static Mpo from_pauli_sum(const PauliSum& h, double compress_tol = 1e-13);

  std::size_t size() const { return w_.size(); }
  std::size_t bond_dim(std::size_t bond) const;
  std::size_t max_bond_dim() const;
  const Tensor& tensor(std::size_t site) const { return w_[site]; }

  void compress(double rel_tol);
  /// W_i W_{i+1} -> u (W_i W_{i+1}) u^dagger, split back by SVD. Bonds
  /// outside the pair keep their dimension.
  void conjugate_two_site(const Eigen::Matrix4cd& u, std::size_t site, double rel_tol = 1e-13);

  /// Dense 2^N matrix; throws CapacityError for N > cap.
  Eigen::MatrixXcd to_dense(std::size_t cap = 12) const;

 private:
  std::vector<Tensor> w_;
};

/// <s|W|s> / <s|s>.
double mpo_expectation(const Mps& s, const Mpo& w);

struct DmrgConfig {
  std::size_t max_bond = 64;
  double truncation_threshold = 1e-8;
  int max_sweeps = 30;
  double energy_tol = 1e-10;
  double eigensolver_tol = 1e-9;
  int eigensolver_max_iter = 200;
  std::uint64_t rng_seed = 1;
  // Random admixture (relative norm) added to each two-site wavefunction
  // before the split during the first noise_sweeps sweeps.
  double noise = 1e-6;
  int noise_sweeps = 2;

  Truncation truncation() const { return {max_bond, truncation_threshold}; }
  /// Throws ArgumentError on non-positive fields.
  void validate() const;
};

struct LanczosResult {
  double value = 0.0;
  int matvecs = 0;
  bool converged = false;
};

/// Lowest eigenpair of a Hermitian operator by restarted Lanczos with full
/// reorthogonalisation. `v` is the start vector on entry and the Ritz vector
/// on exit; convergence is declared when the residual norm drops below tol.
LanczosResult lowest_eigenpair(const std::function<void(const Eigen::VectorXcd&, Eigen::VectorXcd&)>& apply,
                               Eigen::VectorXcd& v, double tol, int max_matvecs, int krylov = 40);

struct DmrgSweep {
  int sweep = 0;
  double energy = 0.0;
  std::size_t max_bond_used = 0;
  double max_entropy = 0.0;
  double max_discarded = 0.0;
};

struct DmrgResult {
  Mps state;
  double energy = 0.0;
  bool converged = false;
  std::vector<DmrgSweep> trace;
};

/// Random product state with Haar-random local vectors.
Mps random_product_state(std::size_t n, Rng& rng);
/// Random product state dressed with brickwork layers of random two-qubit
/// unitaries, truncated to `bond`. A bond of 1 gives random_product_state.
Mps random_mps(std::size_t n, std::size_t bond, Rng& rng);

/// Two-site DMRG sweeper with cached left/right environments. Exposes the
/// individual steps so that callers can act on the local wavefunction
/// between the eigensolve and the split.
class DmrgEngine {
 public:
  DmrgEngine(Mpo mpo, Mps state, DmrgConfig cfg);

  const Mps& state() const { return state_; }
  const Mpo& mpo() const { return mpo_; }
  const DmrgConfig& config() const { return cfg_; }

  /// Replaces the operator and rebuilds all environments; moves the centre to 0.
  void set_mpo(Mpo mpo);

  /// Lowest eigenvector of the effective two-site operator on (site, site+1),
  /// started from the current wavefunction. Centre must be on the pair.
  TwoSite solve(std::size_t site, LanczosResult* info = nullptr);
  /// Applies u to the operator on (site, site+1); environments stay valid.
  void conjugate_mpo(const Eigen::Matrix4cd& u, std::size_t site);
  /// Writes theta back with truncation and updates the environment behind
  /// the moving centre.
  SplitInfo commit(std::size_t site, const TwoSite& theta, Direction dir);

  /// One full pass left-to-right then right-to-left.
  DmrgSweep sweep();

 private:
  void build_environments();

  Mpo mpo_;
  Mps state_;
  DmrgConfig cfg_;
  std::vector<Eigen::MatrixXcd> left_;   // left_[b]: (Dw*D) x D, blocks L[w](bra, ket)
  std::vector<Eigen::MatrixXcd> right_;  // right_[b]: (Dw*D) x D, blocks R[w](ket, bra)
  int sweeps_done_ = 0;
  Rng noise_rng_;
};

DmrgResult ground_state(const PauliSum& h, const DmrgConfig& cfg);

}  // namespace nsee
