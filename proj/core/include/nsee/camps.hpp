#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "nsee/bipartition.hpp"
#include "nsee/clifford.hpp"
#include "nsee/dmrg.hpp"
#include "nsee/mps.hpp"
#include "nsee/pauli.hpp"

namespace nsee {

enum class SelectionMode { MinTruncationError, MinEntropy };

struct CampsConfig {
  DmrgConfig dmrg;
  std::vector<int> candidates;  // canonical indices; empty means all 11520
  SelectionMode mode = SelectionMode::MinTruncationError;
  double score_tol = 1e-12;
  double sweep_tol_entropy = 1e-8;
  int max_camps_sweeps = 50;
  double swap_threshold = 1e-12;
  // Score every candidate instead of one per local-equivalence class.
  bool exhaustive = false;

  /// Throws ArgumentError on bad fields or when the identity is not a candidate.
  void validate() const;
};

struct Selection {
  int index = 0;
  double discarded_weight = 0.0;
  double entropy = 0.0;
};

/// Score of one candidate: theta is rotated by as_unitary(c) and split.
Selection score_clifford(const TwoSite& theta, int index, const Truncation& tr);

/// Best candidate for theta. MinTruncationError orders by discarded weight
/// and breaks ties by entropy; MinEntropy uses the full-spectrum entropy.
/// Scores within `score_tol` tie; ties go to the identity, then to the lowest
/// canonical index.
Selection select_clifford(const TwoSite& theta, SelectionMode mode, const Truncation& tr,
                          std::span<const int> candidates = {}, double score_tol = 1e-12, bool exhaustive = false);

struct SweepRecord {
  int sweep = 0;
  std::optional<double> energy;
  double summed_ee = 0.0;
  double max_cut_ee = 0.0;
  std::size_t gates_applied = 0;
  std::size_t max_bond = 0;
};

struct CampsResult {
  Mps state;
  CliffordCircuit circuit;  // in application order; state = circuit |physical>
  std::optional<PauliSum> transformed_hamiltonian;
  std::optional<double> energy;
  bool converged = false;
  std::vector<SweepRecord> trace;  // sweep 0 is the starting point

  double initial_summed_ee() const { return trace.front().summed_ee; }
  double final_summed_ee() const { return trace.back().summed_ee; }
  /// Smallest summed cut EE among the frames visited by the run. Every frame
  /// holds the same physical state, so this bounds the NsEE from above.
  double best_summed_ee() const;
};

/// Applies the gates of `c` in order. Two-qubit gates must act on adjacent
/// sites (either orientation); throws ArgumentError otherwise.
void apply_circuit(Mps& s, const CliffordCircuit& c, const Truncation& tr = {});

/// Plain DMRG to convergence (trace entry 0), then sweeps that interleave the
/// two-site solve with Clifford selection, conjugating the Hamiltonian by
/// every applied gate.
CampsResult camps_ground_state(const PauliSum& h, const CutSet& cuts, const CampsConfig& cfg);

/// Clifford disentangling sweeps over an existing state, truncating every
/// bond with cfg.dmrg.truncation().
CampsResult camps_disentangle_state(const Mps& s, const CutSet& cuts, const CampsConfig& cfg);

/// Summed cut entropy of a disentangled result: an upper bound on the NsEE.
double nsee(const CampsResult& r, const CutSet& cuts, double swap_threshold = 1e-12);
/// Disentangles s with cfg (mode forced to MinEntropy) and sums the cuts.
double nsee(const Mps& s, const CutSet& cuts, const CampsConfig& cfg);

}  // namespace nsee
