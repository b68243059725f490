#include "nsee/randcircuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nsee/errors.hpp"
#include "nsee/parallel.hpp"

namespace nsee {

void CtExperimentConfig::validate() const {
  if (n_qubits < 2) throw ArgumentError("random circuit experiment needs at least two qubits");
  if (layers_per_round == 0) throw ArgumentError("layers_per_round must be positive");
  if (t_gates_per_round > n_qubits) throw ArgumentError("more T gates per round than qubits");
  if (runs_to_average == 0) throw ArgumentError("runs_to_average must be positive");
  if (!(truncation_threshold >= 0)) throw ArgumentError("truncation_threshold must be nonnegative");
  camps.validate();
}

Eigen::Matrix2cd t_gate() {
  Eigen::Matrix2cd t = Eigen::Matrix2cd::Zero();
  t(0, 0) = 1;
  t(1, 1) = std::polar(1.0, std::numbers::pi / 4);
  return t;
}

std::vector<std::size_t> build_round(Mps& state, const CtExperimentConfig& cfg, Rng& rng, std::size_t layer_offset) {
  const std::size_t n = state.size();
  const Truncation tr = cfg.truncation();
  for (std::size_t l = 0; l < cfg.layers_per_round; ++l) {
    const auto layer = random_clifford_layer(n, rng, layer_offset + l);
    for (const auto& g : layer.gates())
      state.apply_two_site_gate(as_unitary(clifford_by_index(g.index)), g.sites[0], tr);
  }
  // Partial Fisher-Yates for distinct targets.
  std::vector<std::size_t> qubits(n);
  for (std::size_t q = 0; q < n; ++q) qubits[q] = q;
  for (std::size_t k = 0; k < cfg.t_gates_per_round; ++k) {
    std::swap(qubits[k], qubits[k + uniform_index(rng, n - k)]);
    state.apply_single_site_gate(t_gate(), qubits[k]);
  }
  return {qubits.begin(), qubits.begin() + std::ptrdiff_t(cfg.t_gates_per_round)};
}

namespace {

RoundRecord analyse(const Mps& snapshot, std::size_t round, const CtExperimentConfig& cfg) {
  const std::size_t n = snapshot.size();
  const CutSet cuts = chain_cuts(n);
  CampsConfig cc = cfg.camps;
  cc.mode = SelectionMode::MinEntropy;
  cc.dmrg.truncation_threshold = cfg.truncation_threshold;
  cc.dmrg.max_bond = std::size_t(1) << std::min<std::size_t>(n, 30);

  RoundRecord rec;
  rec.round = round;
  rec.t_count = round * cfg.t_gates_per_round;
  rec.max_bond = snapshot.max_bond_dim();
  Mps mid = snapshot;
  rec.spectrum = mid.bond_spectrum(n / 2);

  const auto res = camps_disentangle_state(snapshot, cuts, cc);
  rec.ee_sum = res.initial_summed_ee();
  rec.nsee = nsee(res, cuts, cc.swap_threshold);
  rec.disentangle_sweeps = res.trace.size() - 1;

  // F = |<phi| C |psi>| with C applied exactly to the snapshot.
  Mps rotated = snapshot;
  apply_circuit(rotated, res.circuit);
  rec.overlap_f = overlap(res.state, rotated);

  try {
    rec.m2_density = n <= cfg.sre_cap ? sre_exact(snapshot, 2, cfg.sre_cap).density
                                      : sre_exact(res.state, 2, cfg.block_cap).density;
  } catch (const CapacityError&) {
    rec.m2_density.reset();
  }
  return rec;
}

}  // namespace

std::vector<RoundRecord> run_single(const CtExperimentConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  Rng rng(seed);
  std::vector<int> zeros(cfg.n_qubits, 0);
  Mps state = Mps::product_state(zeros);
  std::vector<RoundRecord> out;
  out.push_back(analyse(state, 0, cfg));
  for (std::size_t r = 1; r <= cfg.rounds_max; ++r) {
    build_round(state, cfg, rng, (r - 1) * cfg.layers_per_round);
    out.push_back(analyse(state, r, cfg));
  }
  return out;
}

std::vector<std::vector<double>> round_spectra(const CtExperimentConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  Rng rng(seed);
  std::vector<int> zeros(cfg.n_qubits, 0);
  Mps state = Mps::product_state(zeros);
  std::vector<std::vector<double>> out;
  out.push_back(state.bond_spectrum(cfg.n_qubits / 2));
  for (std::size_t r = 1; r <= cfg.rounds_max; ++r) {
    build_round(state, cfg, rng, (r - 1) * cfg.layers_per_round);
    out.push_back(state.bond_spectrum(cfg.n_qubits / 2));
  }
  return out;
}

std::vector<CtSummaryRow> summarize(const std::vector<std::vector<RoundRecord>>& runs, const CtExperimentConfig& cfg) {
  std::vector<CtSummaryRow> rows;
  if (runs.empty()) return rows;
  for (std::size_t r = 0; r < runs.front().size(); ++r) {
    CtSummaryRow row;
    row.round = runs.front()[r].round;
    row.t_count = runs.front()[r].t_count;
    row.runs = runs.size();
    double sum = 0, sq = 0, ov = 0, m2 = 0;
    std::size_t m2n = 0;
    for (const auto& run : runs) {
      const auto& rec = run[r];
      sum += rec.nsee;
      sq += rec.nsee * rec.nsee;
      ov += rec.overlap_f;
      if (rec.m2_density) {
        m2 += *rec.m2_density;
        ++m2n;
      }
    }
    const double k = double(runs.size());
    row.nsee_mean = sum / k;
    row.overlap_mean = ov / k;
    if (runs.size() > 1) {
      const double var = std::max(0.0, (sq - k * row.nsee_mean * row.nsee_mean) / (k - 1));
      row.nsee_stderr = std::sqrt(var / k);
    }
    if (m2n == runs.size()) row.m2_mean = m2 / double(m2n);
    row.m2_formula = sre_random_ct_average(cfg.n_qubits, row.round, cfg.t_gates_per_round) / double(cfg.n_qubits);
    rows.push_back(row);
  }
  return rows;
}

CtExperiment run_transition_experiment(const CtExperimentConfig& cfg) {
  cfg.validate();
  CtExperiment out;
  out.runs.resize(cfg.runs_to_average);
  parallel_for(cfg.runs_to_average,
               [&](std::size_t k) { out.runs[k] = run_single(cfg, derive_seed(cfg.rng_seed, k)); });
  out.summary = summarize(out.runs, cfg);
  return out;
}

}  // namespace nsee
