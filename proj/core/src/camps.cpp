#include "nsee/camps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/SVD>

#include "linalg.hpp"
#include "nsee/errors.hpp"
#include "nsee/parallel.hpp"

namespace nsee {

namespace {

const std::vector<Eigen::Matrix4cd>& unitaries() {
  static const std::vector<Eigen::Matrix4cd> table = [] {
    std::vector<Eigen::Matrix4cd> u;
    u.reserve(kNumTwoQubitCliffords);
    for (const auto& c : enumerate_two_qubit_cliffords()) u.push_back(as_unitary(c));
    return u;
  }();
  return table;
}

// Candidates sharing a Schmidt spectrum; `rep` is the one that gets scored.
struct Group {
  int rep = 0;
  std::vector<int> members;  // ascending
  bool has_identity = false;
};

std::vector<Group> make_groups(std::span<const int> candidates, bool exhaustive) {
  const int id = identity_clifford_index();
  std::vector<int> set;
  if (candidates.empty()) {
    set.resize(kNumTwoQubitCliffords);
    std::iota(set.begin(), set.end(), 0);
  } else {
    set.assign(candidates.begin(), candidates.end());
    for (int c : set)
      if (c < 0 || c >= kNumTwoQubitCliffords) throw IndexError("candidate Clifford index out of range");
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
  }
  std::vector<Group> groups;
  if (exhaustive) {
    for (int c : set) groups.push_back({c, {c}, c == id});
    return groups;
  }
  const auto& eq = local_equivalence_classes();
  std::vector<int> slot(eq.members.size(), -1);
  for (int c : set) {
    const int k = eq.class_of[c];
    if (slot[k] < 0) {
      slot[k] = int(groups.size());
      groups.push_back({c, {}, false});
    }
    auto& g = groups[slot[k]];
    g.members.push_back(c);
    if (c == id) {
      g.has_identity = true;
      g.rep = id;
    }
  }
  return groups;
}

const std::vector<Group>& full_groups() {
  static const std::vector<Group> g = make_groups({}, false);
  return g;
}

std::vector<double> spectrum_after(const TwoSite& theta, const Eigen::Matrix4cd& u) {
  TwoSite t = theta;
  apply_gate(t, u);
  const Eigen::VectorXd s = detail::singular_values(t.m);
  const double norm = s.norm();
  std::vector<double> out;
  out.reserve(s.size());
  if (norm == 0) return out;
  for (Eigen::Index i = 0; i < s.size(); ++i) out.push_back(s(i) / norm);
  return out;
}

SweepRecord make_record(int sweep, const Mps& s, const CutSet& cuts, double swap_threshold) {
  SweepRecord r;
  r.sweep = sweep;
  for (double e : cut_entropies(s, cuts, swap_threshold)) {
    r.summed_ee += e;
    r.max_cut_ee = std::max(r.max_cut_ee, e);
  }
  r.max_bond = s.max_bond_dim();
  return r;
}

CliffordCircuit single_gate(std::size_t n, int index, std::size_t site) {
  CliffordCircuit c(n);
  c.push_c2(index, site, site + 1);
  return c;
}

}  // namespace

void CampsConfig::validate() const {
  dmrg.validate();
  if (!(score_tol >= 0)) throw ArgumentError("score_tol must be nonnegative");
  if (!(sweep_tol_entropy > 0)) throw ArgumentError("sweep_tol_entropy must be positive");
  if (max_camps_sweeps <= 0) throw ArgumentError("max_camps_sweeps must be positive");
  if (!candidates.empty() &&
      std::find(candidates.begin(), candidates.end(), identity_clifford_index()) == candidates.end())
    throw ArgumentError("candidate set must contain the identity");
}

void apply_circuit(Mps& s, const CliffordCircuit& c, const Truncation& tr) {
  if (c.n_qubits() != s.size()) throw DimensionError("apply_circuit: circuit and state sizes differ");
  for (const auto& g : c.gates()) {
    if (g.arity() == 1) {
      s.apply_single_site_gate(Eigen::Matrix2cd(gate_unitary(g)), g.sites[0]);
      continue;
    }
    const auto [a, b] = g.sites;
    Eigen::Matrix4cd u = gate_unitary(g);
    if (b + 1 == a) {
      u = swap_matrix() * u * swap_matrix();
    } else if (a + 1 != b) {
      throw ArgumentError("apply_circuit: two-qubit gate on non-adjacent sites");
    }
    s.apply_two_site_gate(u, std::min(a, b), tr);
  }
}

double CampsResult::best_summed_ee() const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : trace) best = std::min(best, r.summed_ee);
  return best;
}

Selection score_clifford(const TwoSite& theta, int index, const Truncation& tr) {
  if (index < 0 || index >= kNumTwoQubitCliffords) throw IndexError("Clifford index out of range");
  const auto sv = spectrum_after(theta, unitaries()[index]);
  Selection s;
  s.index = index;
  s.entropy = entropy_from_spectrum(sv);
  for (std::size_t i = kept_count(sv, tr); i < sv.size(); ++i) s.discarded_weight += sv[i] * sv[i];
  return s;
}

Selection select_clifford(const TwoSite& theta, SelectionMode mode, const Truncation& tr,
                          std::span<const int> candidates, double score_tol, bool exhaustive) {
  std::vector<Group> local;
  if (!candidates.empty() || exhaustive) local = make_groups(candidates, exhaustive);
  const auto& groups = local.empty() ? full_groups() : local;

  std::vector<Selection> scores(groups.size());
  parallel_for(groups.size(), [&](std::size_t g) { scores[g] = score_clifford(theta, groups[g].rep, tr); });

  std::vector<std::size_t> tied(groups.size());
  std::iota(tied.begin(), tied.end(), std::size_t(0));
  auto narrow = [&](auto key) {
    double best = std::numeric_limits<double>::infinity();
    for (auto g : tied) best = std::min(best, key(scores[g]));
    std::erase_if(tied, [&](std::size_t g) { return key(scores[g]) > best + score_tol; });
  };
  if (mode == SelectionMode::MinTruncationError) narrow([](const Selection& s) { return s.discarded_weight; });
  narrow([](const Selection& s) { return s.entropy; });

  std::size_t pick = tied.front();
  bool found_identity = false;
  for (auto g : tied)
    if (groups[g].has_identity) {
      pick = g;
      found_identity = true;
    }
  if (!found_identity)
    for (auto g : tied)
      if (groups[g].members.front() < groups[pick].members.front()) pick = g;
  Selection out = scores[pick];
  out.index = found_identity ? identity_clifford_index() : groups[pick].members.front();
  return out;
}

CampsResult camps_ground_state(const PauliSum& h, const CutSet& cuts, const CampsConfig& cfg) {
  cfg.validate();
  if (cfg.mode != SelectionMode::MinTruncationError)
    throw ArgumentError("camps_ground_state requires min_truncation_error selection");
  const std::size_t n = h.n_qubits();
  if (n < 2) throw ArgumentError("CA-MPS needs at least two sites");
  validate_cut_set(cuts, n);

  Rng rng(cfg.dmrg.rng_seed);
  DmrgEngine engine(Mpo::from_pauli_sum(h), random_product_state(n, rng), cfg.dmrg);
  double energy = 0;
  for (int s = 0; s < cfg.dmrg.max_sweeps; ++s) {
    const auto rec = engine.sweep();
    const bool done = s > cfg.dmrg.noise_sweeps && std::abs(rec.energy - energy) < cfg.dmrg.energy_tol;
    energy = rec.energy;
    if (done) break;
  }

  CampsResult out;
  out.trace.push_back(make_record(0, engine.state(), cuts, cfg.swap_threshold));
  out.trace.back().energy = energy;
  PauliSum hc = h;
  out.circuit = CliffordCircuit(n);
  const int id = identity_clifford_index();
  const Truncation tr = cfg.dmrg.truncation();

  for (int sweep = 1; sweep <= cfg.max_camps_sweeps; ++sweep) {
    if (sweep > 1) engine.set_mpo(Mpo::from_pauli_sum(hc));
    std::size_t gates = 0;
    auto step = [&](std::size_t i, Direction dir) {
      LanczosResult lr;
      TwoSite theta = engine.solve(i, &lr);
      energy = lr.value;
      const auto sel = select_clifford(theta, cfg.mode, tr, cfg.candidates, cfg.score_tol, cfg.exhaustive);
      if (sel.index != id) {
        const auto& u = unitaries()[sel.index];
        apply_gate(theta, u);
        engine.conjugate_mpo(u, i);
        hc = conjugate_sum(hc, single_gate(n, sel.index, i));
        out.circuit.push_c2(sel.index, i, i + 1);
        ++gates;
      }
      engine.commit(i, theta, dir);
    };
    for (std::size_t i = 0; i + 1 < n; ++i) step(i, Direction::Right);
    for (std::size_t i = n - 1; i-- > 0;) step(i, Direction::Left);

    auto rec = make_record(sweep, engine.state(), cuts, cfg.swap_threshold);
    rec.energy = energy;
    rec.gates_applied = gates;
    const auto& prev = out.trace.back();
    const bool done = std::abs(energy - *prev.energy) < cfg.dmrg.energy_tol &&
                      std::abs(rec.summed_ee - prev.summed_ee) < cfg.sweep_tol_entropy;
    out.trace.push_back(rec);
    if (done) {
      out.converged = true;
      break;
    }
  }
  out.state = engine.state();
  out.energy = energy;
  out.transformed_hamiltonian = std::move(hc);
  return out;
}

CampsResult camps_disentangle_state(const Mps& s, const CutSet& cuts, const CampsConfig& cfg) {
  cfg.validate();
  if (cfg.mode != SelectionMode::MinEntropy) throw ArgumentError("disentangling requires min_entropy selection");
  const std::size_t n = s.size();
  if (n == 0) throw ArgumentError("disentangling an empty state");
  validate_cut_set(cuts, n);

  CampsResult out;
  out.state = s;
  out.circuit = CliffordCircuit(n);
  out.trace.push_back(make_record(0, out.state, cuts, cfg.swap_threshold));
  if (n < 2) {
    out.converged = true;
    return out;
  }
  out.state.move_center(0);
  const int id = identity_clifford_index();
  const Truncation tr = cfg.dmrg.truncation();
  for (int sweep = 1; sweep <= cfg.max_camps_sweeps; ++sweep) {
    std::size_t gates = 0;
    auto step = [&](std::size_t i, Direction dir) {
      TwoSite theta = out.state.two_site(i);
      const auto sel = select_clifford(theta, cfg.mode, tr, cfg.candidates, cfg.score_tol, cfg.exhaustive);
      if (sel.index != id) {
        apply_gate(theta, unitaries()[sel.index]);
        out.circuit.push_c2(sel.index, i, i + 1);
        ++gates;
      }
      out.state.set_two_site(i, theta, tr, dir);
    };
    for (std::size_t i = 0; i + 1 < n; ++i) step(i, Direction::Right);
    for (std::size_t i = n - 1; i-- > 0;) step(i, Direction::Left);

    auto rec = make_record(sweep, out.state, cuts, cfg.swap_threshold);
    rec.gates_applied = gates;
    const bool done = std::abs(rec.summed_ee - out.trace.back().summed_ee) < cfg.sweep_tol_entropy;
    out.trace.push_back(rec);
    if (done) {
      out.converged = true;
      break;
    }
  }
  return out;
}

double nsee(const CampsResult& r, const CutSet& cuts, double swap_threshold) {
  double total = 0;
  for (double e : cut_entropies(r.state, cuts, swap_threshold)) total += e;
  return total;
}

double nsee(const Mps& s, const CutSet& cuts, const CampsConfig& cfg) {
  CampsConfig c = cfg;
  c.mode = SelectionMode::MinEntropy;
  return nsee(camps_disentangle_state(s, cuts, c), cuts, c.swap_threshold);
}

}  // namespace nsee
