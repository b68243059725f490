#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "nsee/camps.hpp"
#include "nsee/magic.hpp"
#include "nsee/mps.hpp"
#include "nsee/random.hpp"

namespace nsee {

struct CtExperimentConfig {
  std::size_t n_qubits = 14;
  std::size_t rounds_max = 14;
  std::size_t layers_per_round = 20;
  std::size_t t_gates_per_round = 2;
  double truncation_threshold = 5e-3;
  std::size_t runs_to_average = 10;
  std::uint64_t rng_seed = 1;
  CampsConfig camps;             // selection is forced to min_entropy
  std::size_t sre_cap = kSreDefaultCap;
  std::size_t block_cap = 14;    // largest disentangled block for m2 above sre_cap

  /// Throws ArgumentError on non-positive sizes or t gates exceeding qubits.
  void validate() const;
  /// Truncation for circuit gates and disentangling sweeps.
  Truncation truncation() const { return {0, truncation_threshold}; }
};

Eigen::Matrix2cd t_gate();

/// Applies one round to `state`: layers_per_round brickwork layers of random
/// two-qubit Cliffords, then T gates on t_gates_per_round distinct random
/// qubits. `layer_offset` continues the brickwork parity across rounds.
/// Returns the qubits that received a T gate.
std::vector<std::size_t> build_round(Mps& state, const CtExperimentConfig& cfg, Rng& rng, std::size_t layer_offset = 0);

struct RoundRecord {
  std::size_t round = 0;
  std::size_t t_count = 0;
  double nsee = 0.0;
  double overlap_f = 1.0;
  std::optional<double> m2_density;  // absent when no block fits the cap
  std::vector<double> spectrum;      // middle-cut Schmidt values of the snapshot
  double ee_sum = 0.0;               // summed cut EE before disentangling
  std::size_t max_bond = 1;          // of the snapshot
  std::size_t disentangle_sweeps = 0;
};

/// One run: round 0 (|0...0>) through rounds_max, seeded with `seed`.
std::vector<RoundRecord> run_single(const CtExperimentConfig& cfg, std::uint64_t seed);

/// Middle-cut Schmidt values after rounds 0..rounds_max of the same circuit
/// run_single builds for `seed`, without any disentangling.
std::vector<std::vector<double>> round_spectra(const CtExperimentConfig& cfg, std::uint64_t seed);

struct CtSummaryRow {
  std::size_t round = 0;
  std::size_t t_count = 0;
  double nsee_mean = 0.0;
  double nsee_stderr = 0.0;
  double overlap_mean = 0.0;
  std::optional<double> m2_mean;
  double m2_formula = 0.0;  // ensemble value per qubit
  std::size_t runs = 0;
};

struct CtExperiment {
  std::vector<std::vector<RoundRecord>> runs;
  std::vector<CtSummaryRow> summary;
};

/// Independent runs with seeds derive_seed(rng_seed, run), averaged per round.
CtExperiment run_transition_experiment(const CtExperimentConfig& cfg);
std::vector<CtSummaryRow> summarize(const std::vector<std::vector<RoundRecord>>& runs, const CtExperimentConfig& cfg);

}  // namespace nsee
