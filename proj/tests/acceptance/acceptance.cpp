// Acceptance suite: one criterion per invocation (--criterion N), or all of
// them without arguments. Each criterion prints its sub-checks followed by a
// single "criterion N: PASS|FAIL" line; the exit status is nonzero on FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "circuits.hpp"
#include "nsee/camps.hpp"
#include "nsee/magic.hpp"
#include "nsee/models.hpp"
#include "nsee/randcircuit.hpp"
#include "nsee/stabilizer.hpp"
#include "pauli_dense.hpp"

using namespace nsee;

namespace {

constexpr double kLn2 = std::numbers::ln2;

class Report {
 public:
  void check(const std::string& name, bool ok, const std::string& detail = "") {
    std::printf("  [%s] %s%s%s\n", ok ? "ok" : "FAIL", name.c_str(), detail.empty() ? "" : ": ", detail.c_str());
    std::fflush(stdout);
    pass_ = pass_ && ok;
  }
  void note(const std::string& text) {
    std::printf("  %s\n", text.c_str());
    std::fflush(stdout);
  }
  bool pass() const { return pass_; }

 private:
  bool pass_ = true;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::vector<int> range_sites(int lo, int hi) {
  std::vector<int> v;
  for (int i = lo; i < hi; ++i) v.push_back(i);
  return v;
}

std::vector<int> as_int(const std::vector<std::size_t>& v) { return {v.begin(), v.end()}; }

// Distance of x / ln2 from the nearest integer.
double ln2_residual(double x) {
  const double k = x / kLn2;
  return std::abs(k - std::round(k));
}

double entropy_of(const std::vector<double>& sv) {
  double s = 0;
  for (double v : sv) {
    const double p = v * v;
    if (p > 1e-300) s -= p * std::log(p);
  }
  return s;
}

// ---------------------------------------------------------------------------

void criterion1(Report& rep, bool full) {
  const LatticeSpec spec{2, 4, Boundary::Periodic};
  const PauliSum h = toric_code(spec);
  const CutSet cuts = toric_cut_set(spec);
  CampsConfig cfg;
  const CampsResult res = camps_ground_state(h, cuts, cfg);
  for (const auto& t : res.trace)
    rep.note(fmt("sweep %2.0f", t.sweep) + fmt("  energy %.10f", t.energy.value_or(NAN)) +
             fmt("  ee_sum %.10f  max_cut_ee %.10f", t.summed_ee, t.max_cut_ee));

  const double exact = oracle::ground_energy_lanczos(oracle::terms_of(h), int(h.n_qubits()));
  rep.check("energy equals dense ground energy within 1e-8", std::abs(*res.energy - exact) < 1e-8,
            fmt("CA-MPS %.12f vs dense %.12f", *res.energy, exact));
  rep.check("initial summed EE is positive", res.initial_summed_ee() > 1.0, fmt("%.10f", res.initial_summed_ee()));
  rep.check("summed EE driven below 1e-8", res.final_summed_ee() < 1e-8, fmt("%.3e", res.final_summed_ee()));
  double worst = 0;
  for (std::size_t k = 1; k < res.trace.size(); ++k) {
    const double drop = res.trace[k - 1].max_cut_ee - res.trace[k].max_cut_ee;
    if (drop > 1e-12) worst = std::max(worst, ln2_residual(drop));
  }
  rep.check("max-cut EE decreases are integer multiples of ln 2 (1e-6)", worst < 1e-6, fmt("worst residual %.2e", worst));

  if (full) {
    const LatticeSpec big{4, 4, Boundary::Periodic};
    const PauliSum hb = toric_code(big);
    CampsConfig cb;
    cb.dmrg.max_bond = 128;
    const CampsResult rb = camps_ground_state(hb, toric_cut_set(big), cb);
    const double max_cut = rb.trace.front().max_cut_ee;
    rep.check("4x4 torus: initial max-cut EE = 6 ln 2", std::abs(max_cut - 6 * kLn2) < 1e-6,
              fmt("%.10f vs %.10f", max_cut, 6 * kLn2));
  } else {
    rep.note("optional 4x4 torus check skipped (pass --full)");
  }
}

// ---------------------------------------------------------------------------

void criterion2(Report& rep) {
  Rng rng(202);
  double worst_fid = 1, worst_ee = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + std::size_t(trial % 7);
    const CliffordCircuit c = oracle::random_circuit(n, 10 * n, rng);
    Tableau tab = Tableau::zero_state(n);
    tab.apply_inplace(c);
    const oracle::Vec dense = oracle::simulate(c, oracle::basis_state(int(n), 0));
    const oracle::Vec from_tab = to_statevector(tab);
    worst_fid = std::min(worst_fid, oracle::fidelity(dense, from_tab));

    CutSet cuts = chain_cuts(n);
    for (int extra = 0; extra < 3; ++extra) {
      std::vector<std::size_t> side;
      for (std::size_t q = 0; q < n; ++q)
        if (uniform_index(rng, 2)) side.push_back(q);
      if (!side.empty() && side.size() < n) cuts.push_back(Bipartition::of(side));
    }
    for (const auto& cut : cuts)
      worst_ee = std::max(worst_ee, std::abs(entanglement_entropy(tab, cut) -
                                             oracle::entanglement_entropy(dense, int(n), as_int(cut.side_a))));
  }
  rep.check("tableau state equals dense simulation (fidelity > 1 - 1e-10)", worst_fid > 1 - 1e-10,
            fmt("worst fidelity 1 - %.2e", 1 - worst_fid));
  rep.check("tableau cut entropies equal Schmidt entropies (1e-10)", worst_ee < 1e-10, fmt("worst %.2e", worst_ee));
}

// ---------------------------------------------------------------------------

void criterion3(Report& rep) {
  Rng rng(303);
  const int n = 12;
  double worst_spread = 0, worst_q = 0, worst_mps = 0;
  int entangled = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const CliffordCircuit c = oracle::random_circuit(n, 20 * n, rng);
    const oracle::Vec psi = oracle::simulate(c, oracle::basis_state(n, 0));
    const auto sv = oracle::schmidt_values(psi, n, range_sites(0, n / 2));
    std::vector<double> nz;
    for (double v : sv)
      if (v > 1e-8) nz.push_back(v);
    const double hi = *std::max_element(nz.begin(), nz.end()), lo = *std::min_element(nz.begin(), nz.end());
    worst_spread = std::max(worst_spread, (hi - lo) / hi);
    const double ee = entropy_of(sv);
    worst_q = std::max(worst_q, ln2_residual(ee));
    entangled += ee > 1.0;

    Mps s = Mps::from_statevector(psi, n);
    const auto bs = s.bond_spectrum(n / 2);
    worst_mps = std::max(worst_mps, std::abs(entropy_of(bs) - ee));
  }
  rep.note("states with middle-cut EE above 1 nat: " + std::to_string(entangled) + " of 50");
  rep.check("nonzero middle-cut Schmidt values agree to relative 1e-10", worst_spread < 1e-10,
            fmt("worst spread %.2e", worst_spread));
  rep.check("middle-cut EE is an integer multiple of ln 2", worst_q < 1e-9, fmt("worst residual %.2e", worst_q));
  rep.check("MPS bond spectrum reproduces the dense EE", worst_mps < 1e-10, fmt("worst %.2e", worst_mps));
}

// ---------------------------------------------------------------------------

void criterion4(Report& rep) {
  Rng rng(404);
  double worst_stab = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + std::size_t(trial % 7);
    const oracle::Vec psi = oracle::simulate(oracle::random_circuit(n, 10 * n, rng), oracle::basis_state(int(n), 0));
    worst_stab = std::max(worst_stab, std::abs(sre_exact(psi, n, 2).value));
  }
  rep.check("M2 of stabilizer states vanishes (1e-10)", worst_stab < 1e-10, fmt("worst %.2e", worst_stab));

  oracle::Vec t = oracle::basis_state(4, 0);
  for (int q = 0; q < 4; ++q) {
    oracle::apply_op(t, oracle::hadamard(), 4, {q});
    oracle::apply_op(t, oracle::t_gate(), 4, {q});
  }
  const double c4 = std::pow(std::cos(std::numbers::pi / 4), 4), s4 = std::pow(std::sin(std::numbers::pi / 4), 4);
  const double closed = -4 * std::log((1 + c4 + s4) / 2);
  const double m_t = sre_exact(t, 4, 2).value;
  rep.check("M2(|T>^4) equals the closed form (1e-10)", std::abs(m_t - closed) < 1e-10,
            fmt("%.14f vs %.14f", m_t, closed));
  rep.check("closed form equals 4 ln(4/3)", std::abs(closed - 4 * std::log(4.0 / 3.0)) < 1e-12);

  double worst_inv = 0, worst_route = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + std::size_t(trial % 5);
    const oracle::Vec psi = oracle::random_state(int(n), rng);
    const oracle::Vec moved = oracle::simulate(oracle::random_circuit(n, 10 * n, rng), psi);
    const double a = sre_exact(psi, n, 2).value;
    worst_inv = std::max(worst_inv, std::abs(sre_exact(moved, n, 2).value - a));
    if (n <= 4) worst_route = std::max(worst_route, std::abs(a + std::log(oracle::pauli_moment_bruteforce(psi, int(n), 2))));
  }
  rep.check("Clifford invariance over 100 pairs (1e-10)", worst_inv < 1e-10, fmt("worst %.2e", worst_inv));
  rep.check("fast transform agrees with explicit Pauli sum", worst_route < 1e-10, fmt("worst %.2e", worst_route));

  double worst_add = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int na = 1 + trial % 3, nb = 1 + (trial / 3) % 3;
    const oracle::Vec a = oracle::random_state(na, rng), b = oracle::random_state(nb, rng);
    const oracle::Vec ab = oracle::kron(a, b);
    const double lhs = sre_exact(ab, std::size_t(na + nb), 2).value;
    worst_add = std::max(worst_add, std::abs(lhs - sre_exact(a, na, 2).value - sre_exact(b, nb, 2).value));
  }
  rep.check("additivity under tensor products (1e-9)", worst_add < 1e-9, fmt("worst %.2e", worst_add));
}

// ---------------------------------------------------------------------------

void criterion5(Report& rep) {
  constexpr std::size_t kN = 6, kSamples = 100;
  CtExperimentConfig cfg;
  cfg.n_qubits = kN;
  cfg.rounds_max = 4;
  cfg.layers_per_round = 20;
  cfg.t_gates_per_round = 2;
  cfg.truncation_threshold = 0;
  cfg.runs_to_average = 1;

  rep.check("R_t = 0 gives exactly 0", sre_random_ct_average(kN, 0) == 0.0);
  const std::size_t checkpoints[] = {1, 2, 4};
  std::vector<std::vector<double>> samples(3);
  for (std::size_t s = 0; s < kSamples; ++s) {
    Rng rng(derive_seed(505, s));
    Mps state = Mps::product_state(std::vector<int>(kN, 0));
    for (std::size_t r = 1; r <= 4; ++r) {
      build_round(state, cfg, rng, (r - 1) * cfg.layers_per_round);
      for (int k = 0; k < 3; ++k)
        if (checkpoints[k] == r)
          samples[std::size_t(k)].push_back(-std::log(oracle::pauli_moment_bruteforce(state.to_statevector(), int(kN), 2)));
    }
  }
  for (int k = 0; k < 3; ++k) {
    const auto& v = samples[std::size_t(k)];
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
    double var = 0;
    for (double x : v) var += (x - mean) * (x - mean);
    const double se = std::sqrt(var / double(v.size() - 1) / double(v.size()));
    const double formula = sre_random_ct_average(kN, checkpoints[k]);
    const double z = (mean - formula) / se;
    rep.check("R_t = " + std::to_string(checkpoints[k]) + ": sample mean within 3 standard errors",
              std::abs(z) <= 3.0,
              fmt("mean %.6f", mean) + fmt(" +- %.6f", se) + fmt(", formula %.6f, z = %.2f", formula, z));
  }
}

// ---------------------------------------------------------------------------

CtExperimentConfig transition_config(double threshold) {
  CtExperimentConfig cfg;
  cfg.n_qubits = 14;
  cfg.rounds_max = 14;
  cfg.layers_per_round = 20;
  cfg.t_gates_per_round = 2;
  cfg.truncation_threshold = threshold;
  cfg.runs_to_average = 4;
  cfg.rng_seed = 606;
  return cfg;
}

void criterion6(Report& rep) {
  constexpr double kMargin = 0.25;
  for (double threshold : {5e-3, 1e-2}) {
    const CtExperimentConfig cfg = transition_config(threshold);
    const auto start = std::chrono::steady_clock::now();
    const CtExperiment ex = run_transition_experiment(cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rep.note(fmt("threshold %.0e", threshold) + fmt(", %.0f s", secs));
    rep.note("round  T  nsee_mean  nsee_se  overlap  m2_mean  m2_formula");
    for (const auto& row : ex.summary)
      rep.note(std::to_string(row.round) + "  " + std::to_string(row.t_count) + fmt("  %.5f", row.nsee_mean) +
               fmt("  %.5f  %.6f", row.nsee_stderr, row.overlap_mean) +
               fmt("  %.5f  %.5f", row.m2_mean.value_or(NAN), row.m2_formula));

    const double n = double(cfg.n_qubits);
    const std::string tag = fmt(" [threshold %.0e]", threshold);
    double plateau = 0, worst_f = 1;
    bool pre_ok = true;
    for (const auto& row : ex.summary)
      if (double(row.t_count) < n * (1 - kMargin)) {
        plateau = std::max(plateau, row.nsee_mean);
        worst_f = std::min(worst_f, row.overlap_mean);
        pre_ok = pre_ok && row.nsee_mean < 0.1 && row.overlap_mean > 0.99;
      }
    rep.check("NsEE < 0.1 and overlap > 0.99 before the transition" + tag, pre_ok,
              fmt("plateau %.5f, lowest overlap %.6f", plateau, worst_f));

    double best_after = 0;
    for (const auto& row : ex.summary)
      if (double(row.t_count) > n && double(row.t_count) <= n + 4.0 * double(cfg.t_gates_per_round))
        best_after = std::max(best_after, row.nsee_mean);
    rep.check("NsEE exceeds 5x the plateau within 4 rounds after T-count passes N" + tag, best_after > 5 * plateau,
              fmt("%.5f vs 5 x %.5f", best_after, plateau));

    bool m2_ok = true, m2_all = true;
    double worst_dip = 0;
    for (std::size_t r = 1; r < ex.summary.size(); ++r) {
      const auto& a = ex.summary[r - 1].m2_mean;
      const auto& b = ex.summary[r].m2_mean;
      if (!a || !b) {
        m2_all = false;
        continue;
      }
      worst_dip = std::max(worst_dip, *a - *b);
      m2_ok = m2_ok && *b >= *a;
    }
    rep.check("m2 available at every round" + tag, m2_all);
    rep.check("m2 non-decreasing" + tag, m2_ok, fmt("largest decrease %.2e", worst_dip));
  }
}

// ---------------------------------------------------------------------------

// Maximal runs of consecutive sorted values within relative `tol` of the
// run's first element; returns the run lengths.
std::vector<std::size_t> plateaus(const std::vector<double>& sorted_desc, double tol) {
  std::vector<std::size_t> out;
  std::size_t i = 0;
  while (i < sorted_desc.size()) {
    std::size_t j = i + 1;
    while (j < sorted_desc.size() && (sorted_desc[i] - sorted_desc[j]) <= tol * sorted_desc[i]) ++j;
    out.push_back(j - i);
    i = j;
  }
  return out;
}

void criterion7(Report& rep) {
  CtExperimentConfig cfg = transition_config(0.0);
  const auto spectra = round_spectra(cfg, derive_seed(cfg.rng_seed, 0));
  std::vector<std::vector<double>> nz(spectra.size());
  for (std::size_t r = 0; r < spectra.size(); ++r) {
    for (double v : spectra[r])
      if (v > 1e-12) nz[r].push_back(v);
    std::sort(nz[r].rbegin(), nz[r].rend());
    const auto p = plateaus(nz[r], 1e-6);
    std::string sizes;
    for (std::size_t s : p)
      if (s > 1) sizes += " " + std::to_string(s);
    rep.note("round " + std::to_string(r) + ": " + std::to_string(nz[r].size()) + " values, plateaus of size >1:" +
             (sizes.empty() ? " none" : sizes));
  }
  const double spread1 = (nz[1].front() - nz[1].back()) / nz[1].front();
  rep.check("round 1 spectrum is flat (relative spread < 1e-8)", spread1 < 1e-8 && nz[1].size() > 1,
            fmt("%.2e over ", spread1) + std::to_string(nz[1].size()) + " values");

  bool intermediate = false;
  std::size_t which = 0;
  for (std::size_t r = 2; r < spectra.size() / 2 && !intermediate; ++r) {
    std::size_t count = 0;
    for (std::size_t s : plateaus(nz[r], 1e-6)) count += s > 1;
    if (count >= 2) {
      intermediate = true;
      which = r;
    }
  }
  rep.check("an intermediate round shows at least two plateaus (spread < 1e-6)", intermediate,
            intermediate ? "round " + std::to_string(which) : "none");

  bool late = true;
  for (std::size_t r = spectra.size() - 3; r < spectra.size(); ++r)
    for (std::size_t s : plateaus(nz[r], 1e-6)) late = late && s < 4;
  rep.check("late rounds keep no plateau of size >= 4", late);
}

// ---------------------------------------------------------------------------

struct SweepPoint {
  double x = 0;
  double ee = 0, nsee = 0, energy = 0, dmrg_energy = 0;
};

void report_sweep(Report& rep, const char* name, const std::vector<SweepPoint>& pts, bool with_plain) {
  rep.note(std::string(name) + (with_plain ? "  energy  dmrg_energy" : "  energy") + "  EE  NsEE  reduction");
  for (const auto& p : pts)
    rep.note(fmt("%.2f", p.x) + fmt("  %.9f", p.energy) + (with_plain ? fmt("  %.9f", p.dmrg_energy) : "") +
             fmt("  %.6f  %.6f", p.ee, p.nsee) + fmt("  %.4f", p.ee > 1e-12 ? (p.ee - p.nsee) / p.ee : 0.0));
}

std::vector<SweepPoint> lattice_sweep(const LatticeSpec& spec, const std::vector<double>& xs, bool ising,
                                      std::size_t max_bond, bool with_plain) {
  std::vector<SweepPoint> pts(xs.size());
  const CutSet cuts = cut_set(spec);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const PauliSum h = ising ? transverse_ising(spec, 1.0, xs[i]) : xxz(spec, 1.0, xs[i]);
    CampsConfig cfg;
    cfg.dmrg.max_bond = max_bond;
    cfg.dmrg.rng_seed = derive_seed(808, i);
    const CampsResult r = camps_ground_state(h, cuts, cfg);
    pts[i].x = xs[i];
    pts[i].ee = r.initial_summed_ee();
    pts[i].nsee = r.best_summed_ee();
    pts[i].energy = *r.energy;
    if (with_plain) {
      DmrgConfig plain = cfg.dmrg;
      plain.rng_seed = derive_seed(909, i);
      pts[i].dmrg_energy = ground_state(h, plain).energy;
    }
  }
  return pts;
}

double argmax_x(const std::vector<SweepPoint>& pts, double SweepPoint::*field) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i].*field > pts[best].*field) best = i;
  return pts[best].x;
}

// Midpoint of the consecutive pair with the largest decrease.
double max_drop_at(const std::vector<SweepPoint>& pts, double SweepPoint::*field) {
  std::size_t best = 0;
  double drop = -1e300;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    if (pts[i].*field - pts[i + 1].*field > drop) {
      drop = pts[i].*field - pts[i + 1].*field;
      best = i;
    }
  return 0.5 * (pts[best].x + pts[best + 1].x);
}

void criterion8(Report& rep) {
  const LatticeSpec spec{4, 4, Boundary::Open};
  std::vector<double> hs;
  for (int i = 0; i <= 20; ++i) hs.push_back(0.25 * i);
  const auto pts = lattice_sweep(spec, hs, true, 64, true);
  report_sweep(rep, "h", pts, true);

  bool bound = true, energies = true;
  double worst_de = 0;
  for (const auto& p : pts) {
    bound = bound && p.nsee <= p.ee + 1e-9;
    worst_de = std::max(worst_de, std::abs(p.energy - p.dmrg_energy));
  }
  energies = worst_de <= 1e-6;
  rep.check("NsEE <= EE at every h (1e-9)", bound);
  rep.check("EE and NsEE vanish at h = 0 (1e-8)", pts[0].ee < 1e-8 && pts[0].nsee < 1e-8,
            fmt("EE %.2e, NsEE %.2e", pts[0].ee, pts[0].nsee));
  const double pe = argmax_x(pts, &SweepPoint::ee), pn = argmax_x(pts, &SweepPoint::nsee);
  rep.check("EE and NsEE peak within h in [2.5, 3.6]", pe >= 2.5 && pe <= 3.6 && pn >= 2.5 && pn <= 3.6,
            fmt("EE peak at %.2f, NsEE peak at %.2f", pe, pn));
  rep.check("CA-MPS energy equals plain DMRG energy (1e-6)", energies, fmt("worst %.2e", worst_de));
  double best_rate = 0;
  for (const auto& p : pts)
    if (p.x > 3.05 && p.ee > 1e-12) best_rate = std::max(best_rate, (p.ee - p.nsee) / p.ee);
  rep.check("reduction rate above 0.15 on the paramagnetic side", best_rate > 0.15, fmt("largest %.4f", best_rate));
}

// ---------------------------------------------------------------------------

void criterion9(Report& rep) {
  constexpr std::size_t kBond = 32;
  std::vector<double> ds;
  for (int i = 1; i <= 10; ++i) ds.push_back(0.2 * i);
  const auto pts = lattice_sweep({4, 4, Boundary::Open}, ds, false, kBond, false);
  report_sweep(rep, "delta", pts, false);

  bool bound = true;
  for (const auto& p : pts) bound = bound && p.nsee <= p.ee + 1e-9;
  rep.check("NsEE <= EE at every delta (1e-9)", bound);
  const double de = max_drop_at(pts, &SweepPoint::ee), dn = max_drop_at(pts, &SweepPoint::nsee);
  rep.check("largest drop of EE and NsEE lies within delta = 1.0 +- 0.4",
            std::abs(de - 1.0) <= 0.4 + 1e-12 && std::abs(dn - 1.0) <= 0.4 + 1e-12,
            fmt("EE drop at %.2f, NsEE drop at %.2f", de, dn));

  // 12-site slices against the exact spectrum, at a bond dimension that
  // represents them exactly.
  const LatticeSpec slice{3, 4, Boundary::Open};
  const std::vector<double> probe = {0.4, 1.0, 1.6};
  const auto sp = lattice_sweep(slice, probe, false, 64, false);
  double worst = 0;
  for (std::size_t i = 0; i < probe.size(); ++i) {
    const double exact = oracle::ground_energy_lanczos(oracle::terms_of(xxz(slice, 1.0, probe[i])), 12);
    rep.note(fmt("3x4 slice delta %.1f", probe[i]) + fmt(": CA-MPS %.10f, dense %.10f", sp[i].energy, exact));
    worst = std::max(worst, std::abs(sp[i].energy - exact));
  }
  rep.check("3x4 slice energies match dense diagonalization (1e-6)", worst < 1e-6, fmt("worst %.2e", worst));
}

// ---------------------------------------------------------------------------

CampsConfig nsee_config() {
  CampsConfig cfg;
  cfg.mode = SelectionMode::MinEntropy;
  cfg.dmrg.truncation_threshold = 0;
  cfg.dmrg.max_bond = 256;
  return cfg;
}

double nsee_of(const oracle::Vec& psi, std::size_t n) {
  return nsee::nsee(Mps::from_statevector(psi, n), chain_cuts(n), nsee_config());
}

void criterion10(Report& rep) {
  const double tol = 2 * nsee_config().sweep_tol_entropy;
  Rng rng(1010);
  double lowest = 1e300, worst_stab = 0, worst_inv = 0, worst_add = 0;
  int inv_fail = 0, add_fail = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + std::size_t(trial % 7);
    const oracle::Vec psi = oracle::random_state(int(n), rng);
    const double a = nsee_of(psi, n);
    lowest = std::min(lowest, a);

    const oracle::Vec stab = oracle::simulate(oracle::random_circuit(n, 10 * n, rng), oracle::basis_state(int(n), 0));
    worst_stab = std::max(worst_stab, nsee_of(stab, n));

    const double moved = nsee_of(oracle::simulate(oracle::random_circuit(n, 10 * n, rng), psi), n);
    worst_inv = std::max(worst_inv, std::abs(moved - a));
    inv_fail += std::abs(moved - a) >= tol;

    if (n <= 6) {
      const std::size_t nb = 2 + uniform_index(rng, 8 - n - 1);
      const oracle::Vec b = oracle::random_state(int(nb), rng);
      const double joint = nsee_of(oracle::kron(psi, b), n + nb);
      const double sum = a + nsee_of(b, nb);
      worst_add = std::max(worst_add, std::abs(joint - sum));
      add_fail += std::abs(joint - sum) >= tol;
    }
  }
  rep.check("NsEE >= 0", lowest >= 0, fmt("lowest %.3e", lowest));
  rep.check("NsEE of stabilizer states < 1e-8", worst_stab < 1e-8, fmt("worst %.2e", worst_stab));
  rep.check("Clifford invariance within 2 x sweep tolerance", inv_fail == 0,
            std::to_string(inv_fail) + " of 100 outside" + fmt(", worst %.3e", worst_inv));
  rep.check("additivity within 2 x sweep tolerance", add_fail == 0,
            std::to_string(add_fail) + " pairs outside" + fmt(", worst %.3e", worst_add));
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  bool full = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      which.push_back(std::atoi(argv[++i]));
    } else if (std::strcmp(argv[i], "--full") == 0) {
      full = true;
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]... [--full]\n", argv[0]);
      return 2;
    }
  }
  if (which.empty())
    for (int k = 1; k <= 10; ++k) which.push_back(k);

  const std::vector<std::function<void(Report&)>> criteria = {
      [&](Report& r) { criterion1(r, full); }, criterion2, criterion3, criterion4, criterion5,
      criterion6, criterion7, criterion8, criterion9, criterion10};
  bool all = true;
  for (int k : which) {
    if (k < 1 || k > 10) {
      std::fprintf(stderr, "no criterion %d\n", k);
      return 2;
    }
    std::printf("criterion %d\n", k);
    Report rep;
    try {
      criteria[std::size_t(k - 1)](rep);
    } catch (const std::exception& e) {
      rep.check("no exception", false, e.what());
    }
    std::printf("criterion %d: %s\n", k, rep.pass() ? "PASS" : "FAIL");
    std::fflush(stdout);
    all = all && rep.pass();
  }
  return all ? 0 : 1;
}
