#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <type_traits>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nsee/camps.hpp"
#include "nsee/errors.hpp"
#include "nsee/magic.hpp"
#include "nsee/models.hpp"
#include "nsee/parallel.hpp"
#include "nsee/randcircuit.hpp"

#ifndef NSEE_VERSION
#define NSEE_VERSION "unknown"
#endif
#ifndef NSEE_GIT_COMMIT
#define NSEE_GIT_COMMIT "unknown"
#endif

namespace nsee::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::string format_real(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  if (v == 0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::vector<double> grid(double min, double max, double step) {
  if (!std::isfinite(min) || !std::isfinite(max) || !std::isfinite(step)) throw UsageError("grid bounds must be finite");
  if (!(step > 0)) throw UsageError("grid step must be positive");
  if (max < min) throw UsageError("empty grid: max is below min");
  const double span = (max - min) / step;
  const auto count = std::size_t(std::floor(span + 1e-9 * std::max(1.0, span))) + 1;
  if (count > 100000) throw UsageError("grid has too many points");
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = min + double(i) * step;
  return out;
}

namespace {

struct Params {
  std::string output_dir = "nsee_out";
  std::uint64_t seed = 1;

  std::size_t lx = 4;
  std::size_t ly = 4;
  double j = 1.0;
  double h_min = 0.0, h_max = 5.0, h_step = 0.25;
  double delta_min = 0.2, delta_max = 2.0, delta_step = 0.2;

  std::size_t max_bond = 64;
  double truncation_threshold = 1e-8;
  int max_sweeps = 30;
  double energy_tol = 1e-10;
  double eigensolver_tol = 1e-9;
  double noise = 1e-6;
  int noise_sweeps = 2;
  int max_camps_sweeps = 50;
  double sweep_tol_entropy = 1e-8;
  bool exhaustive = false;

  std::size_t n = 14;
  std::size_t rounds = 14;
  std::size_t layers = 20;
  std::size_t t_per_round = 2;
  double threshold = 5e-3;
  std::size_t runs = 10;
  std::size_t samples = 50;
};

std::string dashed(std::string key) {
  for (auto& c : key)
    if (c == '_') c = '-';
  return "--" + key;
}

// Every config key is also a flag; explicit flags win over the document.
class Registry {
 public:
  explicit Registry(CLI::App* app) : app_(app) {}

  template <class T>
  void add(const std::string& key, T& target, const std::string& help) {
    CLI::Option* opt = nullptr;
    if constexpr (std::is_same_v<T, bool>)
      opt = app_->add_flag(dashed(key), target, help);
    else
      opt = app_->add_option(dashed(key), target, help)->capture_default_str();
    Entry e;
    e.opt = opt;
    e.set = [&target, key](const json& v) {
      bool ok = false;
      if constexpr (std::is_same_v<T, bool>)
        ok = v.is_boolean();
      else if constexpr (std::is_integral_v<T> && std::is_unsigned_v<T>)
        ok = v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0);
      else if constexpr (std::is_integral_v<T>)
        ok = v.is_number_integer();
      else if constexpr (std::is_floating_point_v<T>)
        ok = v.is_number();
      else
        ok = v.is_string();
      if (!ok) throw UsageError("config key '" + key + "' has the wrong type");
      target = v.get<T>();
    };
    e.get = [&target] { return json(target); };
    entries_[key] = std::move(e);
  }

  void apply(const json& doc) {
    for (const auto& [key, value] : doc.items()) {
      const auto it = entries_.find(key);
      if (it == entries_.end()) throw UsageError("unknown config key '" + key + "'");
      if (it->second.opt->count() == 0) it->second.set(value);
    }
  }

  json resolved() const {
    json out = json::object();
    for (const auto& [key, e] : entries_) out[key] = e.get();
    return out;
  }

 private:
  struct Entry {
    CLI::Option* opt = nullptr;
    std::function<void(const json&)> set;
    std::function<json()> get;
  };
  CLI::App* app_;
  std::map<std::string, Entry> entries_;
};

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, const std::vector<std::string>& header) : file_(path) {
    if (!file_) throw std::runtime_error("cannot write " + path.string());
    row(header);
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) file_ << (i ? "," : "") << cells[i];
    file_ << '\n';
    if (!file_) throw std::runtime_error("write failed");
  }

 private:
  std::ofstream file_;
};

std::string csv_text(std::string s) {
  for (auto& c : s)
    if (c == ',' || c == '\n' || c == '"') c = ' ';
  return s;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << j.dump(2) << '\n';
}

struct Run {
  std::string command;
  fs::path dir;
  json config;
  bool computing = false;

  void meta(const std::string& status) const {
    json m;
    m["command"] = command;
    m["config"] = config;
    m["version"] = NSEE_VERSION;
    m["git_commit"] = NSEE_GIT_COMMIT;
    m["status"] = status;
    write_json(dir / "meta.json", m);
  }
};

std::string real_or_blank(const std::optional<double>& v) { return v ? format_real(*v) : ""; }

CampsConfig camps_config(const Params& p, std::uint64_t seed) {
  CampsConfig c;
  c.dmrg.max_bond = p.max_bond;
  c.dmrg.truncation_threshold = p.truncation_threshold;
  c.dmrg.max_sweeps = p.max_sweeps;
  c.dmrg.energy_tol = p.energy_tol;
  c.dmrg.eigensolver_tol = p.eigensolver_tol;
  c.dmrg.noise = p.noise;
  c.dmrg.noise_sweeps = p.noise_sweeps;
  c.dmrg.rng_seed = seed;
  c.max_camps_sweeps = p.max_camps_sweeps;
  c.sweep_tol_entropy = p.sweep_tol_entropy;
  c.exhaustive = p.exhaustive;
  c.mode = SelectionMode::MinTruncationError;
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return c;
}

void write_trace_rows(CsvWriter& csv, const std::vector<std::string>& prefix, const CampsResult& r) {
  for (const auto& t : r.trace) {
    std::vector<std::string> cells = prefix;
    cells.insert(cells.end(), {std::to_string(t.sweep), real_or_blank(t.energy), format_real(t.summed_ee),
                               format_real(t.max_cut_ee), std::to_string(t.gates_applied), std::to_string(t.max_bond)});
    csv.row(cells);
  }
}

const std::vector<std::string> kTraceColumns = {"sweep", "energy", "ee_sum", "max_cut_ee", "gates_applied", "max_bond"};

void run_toric(const Params& p, Run& run, std::ostream& out) {
  const LatticeSpec spec{p.lx, p.ly, Boundary::Periodic};
  PauliSum h;
  CutSet cuts;
  try {
    h = toric_code(spec);
    cuts = toric_cut_set(spec);
  } catch (const std::logic_error& e) {
    throw UsageError(e.what());
  }
  const CampsConfig cfg = camps_config(p, derive_seed(p.seed, 0));
  write_json(run.dir / "model.json", model_json("toric", spec, json::object()));
  run.computing = true;

  const CampsResult r = camps_ground_state(h, cuts, cfg);
  {
    CsvWriter trace(run.dir / "trace.csv", kTraceColumns);
    write_trace_rows(trace, {}, r);
  }
  write_json(run.dir / "circuit.json", r.circuit.to_json());
  CsvWriter results(run.dir / "results.csv", {"lx", "ly", "n_qubits", "energy", "ee_sum", "nsee_sum", "ee_final",
                                              "max_cut_ee", "converged"});
  results.row({std::to_string(p.lx), std::to_string(p.ly), std::to_string(h.n_qubits()), real_or_blank(r.energy),
               format_real(r.initial_summed_ee()), format_real(r.best_summed_ee()), format_real(r.final_summed_ee()),
               format_real(r.trace.front().max_cut_ee), r.converged ? "1" : "0"});
  out << "toric " << p.lx << "x" << p.ly << ": energy " << real_or_blank(r.energy) << ", ee_sum "
      << format_real(r.initial_summed_ee()) << " -> " << format_real(r.final_summed_ee()) << '\n';
}

struct GridPoint {
  double value = 0;
  std::optional<CampsResult> result;
  std::string error;
};

void run_lattice_grid(const std::string& model, const Params& p, Run& run, std::ostream& out) {
  const bool ising = model == "ising";
  const LatticeSpec spec{p.lx, p.ly, Boundary::Open};
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto values = ising ? grid(p.h_min, p.h_max, p.h_step) : grid(p.delta_min, p.delta_max, p.delta_step);
  const std::string column = ising ? "h" : "delta";
  camps_config(p, 0);
  const CutSet cuts = cut_set(spec);
  write_json(run.dir / "model.json", model_json(model, spec, {{"j", p.j}, {column, values}}));
  run.computing = true;

  std::vector<GridPoint> points(values.size());
  parallel_for(values.size(), [&](std::size_t i) {
    points[i].value = values[i];
    try {
      const PauliSum h = ising ? transverse_ising(spec, p.j, values[i]) : xxz(spec, p.j, values[i]);
      points[i].result = camps_ground_state(h, cuts, camps_config(p, derive_seed(p.seed, i)));
    } catch (const std::exception& e) {
      points[i].error = e.what();
    }
  });

  std::vector<std::string> trace_cols = kTraceColumns;
  trace_cols.insert(trace_cols.begin(), column);
  CsvWriter trace(run.dir / "trace.csv", trace_cols);
  CsvWriter results(run.dir / "results.csv",
                    {column, "energy", "ee_sum", "nsee_sum", "reduction_rate", "dmrg_energy", "converged", "error"});
  json circuits = json::array();
  std::size_t failed = 0;
  for (const auto& pt : points) {
    const std::string v = format_real(pt.value);
    if (!pt.result) {
      ++failed;
      results.row({v, "", "", "", "", "", "0", csv_text(pt.error)});
      continue;
    }
    const CampsResult& r = *pt.result;
    write_trace_rows(trace, {v}, r);
    const double ee = r.initial_summed_ee(), ns = r.best_summed_ee();
    const std::string rate = ee < 1e-12 ? "" : format_real((ee - ns) / ee);
    results.row({v, real_or_blank(r.energy), format_real(ee), format_real(ns), rate, real_or_blank(r.trace.front().energy),
                 r.converged ? "1" : "0", ""});
    circuits.push_back({{column, pt.value}, {"circuit", r.circuit.to_json()}});
  }
  write_json(run.dir / "circuit.json", circuits);
  out << model << ": " << points.size() - failed << " of " << points.size() << " grid points done\n";
}

CtExperimentConfig ct_config(const Params& p) {
  CtExperimentConfig c;
  c.n_qubits = p.n;
  c.rounds_max = p.rounds;
  c.layers_per_round = p.layers;
  c.t_gates_per_round = p.t_per_round;
  c.truncation_threshold = p.threshold;
  c.runs_to_average = p.runs;
  c.rng_seed = p.seed;
  c.camps.max_camps_sweeps = p.max_camps_sweeps;
  c.camps.sweep_tol_entropy = p.sweep_tol_entropy;
  c.camps.exhaustive = p.exhaustive;
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return c;
}

void write_spectra(const fs::path& path, const std::vector<std::vector<double>>& spectra) {
  CsvWriter csv(path, {"round", "rank", "value"});
  for (std::size_t r = 0; r < spectra.size(); ++r)
    for (std::size_t k = 0; k < spectra[r].size(); ++k)
      csv.row({std::to_string(r), std::to_string(k), format_real(spectra[r][k])});
}

void run_randct(const Params& p, Run& run, std::ostream& out) {
  const CtExperimentConfig cfg = ct_config(p);
  run.computing = true;
  const CtExperiment ex = run_transition_experiment(cfg);
  {
    CsvWriter results(run.dir / "results.csv", {"round", "t_count", "nsee_mean", "nsee_stderr", "overlap_mean",
                                                "m2_mean", "m2_formula"});
    for (const auto& row : ex.summary)
      results.row({std::to_string(row.round), std::to_string(row.t_count), format_real(row.nsee_mean),
                   format_real(row.nsee_stderr), format_real(row.overlap_mean), real_or_blank(row.m2_mean),
                   format_real(row.m2_formula)});
  }
  {
    CsvWriter trace(run.dir / "trace.csv", {"run", "round", "t_count", "nsee", "overlap", "m2_density", "ee_sum",
                                            "max_bond", "disentangle_sweeps"});
    for (std::size_t k = 0; k < ex.runs.size(); ++k)
      for (const auto& rec : ex.runs[k])
        trace.row({std::to_string(k), std::to_string(rec.round), std::to_string(rec.t_count), format_real(rec.nsee),
                   format_real(rec.overlap_f), real_or_blank(rec.m2_density), format_real(rec.ee_sum),
                   std::to_string(rec.max_bond), std::to_string(rec.disentangle_sweeps)});
  }
  std::vector<std::vector<double>> spectra;
  for (const auto& rec : ex.runs.front()) spectra.push_back(rec.spectrum);
  write_spectra(run.dir / "spectra.csv", spectra);
  out << "randct: " << ex.runs.size() << " runs of " << cfg.rounds_max << " rounds\n";
}

void run_spectrum(const Params& p, Run& run, std::ostream& out) {
  Params q = p;
  q.runs = 1;
  const CtExperimentConfig cfg = ct_config(q);
  run.computing = true;
  write_spectra(run.dir / "results.csv", round_spectra(cfg, derive_seed(p.seed, 0)));
  out << "spectrum: " << cfg.rounds_max + 1 << " rounds\n";
}

void run_sre(const Params& p, Run& run, std::ostream& out) {
  Params q = p;
  q.runs = 1;
  q.threshold = 0;
  const CtExperimentConfig cfg = ct_config(q);
  constexpr std::size_t kCap = 12;
  if (p.n > kCap) throw UsageError("sre: n must not exceed 12");
  if (p.samples == 0) throw UsageError("sre: samples must be positive");
  run.computing = true;

  std::vector<std::vector<double>> m2(p.samples, std::vector<double>(p.rounds + 1, 0.0));
  parallel_for(p.samples, [&](std::size_t s) {
    Rng rng(derive_seed(p.seed, s));
    Mps state = Mps::product_state(std::vector<int>(p.n, 0));
    for (std::size_t r = 1; r <= p.rounds; ++r) {
      build_round(state, cfg, rng, (r - 1) * p.layers);
      m2[s][r] = sre_exact(state, 2, kCap).value;
    }
  });
  {
    CsvWriter trace(run.dir / "trace.csv", {"sample", "round", "sre2"});
    for (std::size_t s = 0; s < p.samples; ++s)
      for (std::size_t r = 0; r <= p.rounds; ++r)
        trace.row({std::to_string(s), std::to_string(r), format_real(m2[s][r])});
  }
  CsvWriter results(run.dir / "results.csv",
                    {"round", "t_count", "sre2_formula", "sre2_mean", "sre2_stderr", "samples"});
  for (std::size_t r = 0; r <= p.rounds; ++r) {
    double sum = 0, sq = 0;
    for (const auto& row : m2) {
      sum += row[r];
      sq += row[r] * row[r];
    }
    const double k = double(p.samples), mean = sum / k;
    const double se = p.samples > 1 ? std::sqrt(std::max(0.0, (sq - k * mean * mean) / (k - 1)) / k) : 0.0;
    results.row({std::to_string(r), std::to_string(r * p.t_per_round),
                 format_real(sre_random_ct_average(p.n, r, p.t_per_round)), format_real(mean), format_real(se),
                 std::to_string(p.samples)});
  }
  out << "sre: " << p.samples << " samples over " << p.rounds << " rounds\n";
}

void add_common(Registry& reg, Params& p) {
  reg.add("output_dir", p.output_dir, "Directory receiving all output files");
  reg.add("seed", p.seed, "Base random seed");
}

void add_disentangler(Registry& reg, Params& p) {
  reg.add("max_camps_sweeps", p.max_camps_sweeps, "Clifford sweep limit");
  reg.add("sweep_tol_entropy", p.sweep_tol_entropy, "Summed entropy convergence tolerance");
  reg.add("exhaustive", p.exhaustive, "Score all 11520 Cliffords instead of one per local class");
}

void add_solver(Registry& reg, Params& p) {
  reg.add("max_bond", p.max_bond, "Largest MPS bond dimension");
  reg.add("truncation_threshold", p.truncation_threshold, "Singular values below this are dropped");
  reg.add("max_sweeps", p.max_sweeps, "DMRG sweep limit");
  reg.add("energy_tol", p.energy_tol, "DMRG energy convergence tolerance");
  reg.add("eigensolver_tol", p.eigensolver_tol, "Lanczos residual tolerance");
  reg.add("noise", p.noise, "Random admixture added during the first DMRG sweeps");
  reg.add("noise_sweeps", p.noise_sweeps, "Number of DMRG sweeps with noise");
  add_disentangler(reg, p);
}

void add_lattice(Registry& reg, Params& p) {
  reg.add("lx", p.lx, "Rows");
  reg.add("ly", p.ly, "Columns");
}

void add_circuit(Registry& reg, Params& p) {
  reg.add("n", p.n, "Qubits");
  reg.add("rounds", p.rounds, "Clifford+T rounds");
  reg.add("layers", p.layers, "Brickwork Clifford layers per round");
  reg.add("t_per_round", p.t_per_round, "T gates per round");
}

struct Command {
  std::string name;
  Params params;
  std::unique_ptr<Registry> registry;
  CLI::App* app = nullptr;
  std::function<void(const Params&, Run&, std::ostream&)> body;
};

json load_config(const std::string& path, const std::string& command) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read config " + path);
  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::exception& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw UsageError("config must be a flat JSON object");
  // A meta.json from an earlier run carries its resolved config.
  if (doc.contains("config") && doc["config"].is_object() && doc.contains("command")) {
    if (doc["command"] != command) throw UsageError("config was written by a different command");
    doc = doc["config"];
  }
  for (const auto& [key, value] : doc.items())
    if (value.is_object() || value.is_array()) throw UsageError("config key '" + key + "' must be a scalar");
  return doc;
}

void report(std::ostream& err, const fs::path* dir, const std::string& kind, int code, const std::string& message) {
  const json rec = {{"error", {{"kind", kind}, {"exit_code", code}, {"message", message}}}};
  err << rec.dump() << '\n';
  if (dir && fs::is_directory(*dir)) {
    try {
      write_json(*dir / "error.json", rec);
    } catch (const std::exception&) {
    }
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Clifford-augmented MPS experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(NSEE_VERSION) + " (" + NSEE_GIT_COMMIT + ")");
  std::string config_path;

  std::vector<Command> commands;
  auto add_command = [&](const std::string& name, const std::string& desc, auto&& configure, auto&& body) {
    Command c;
    c.name = name;
    c.app = app.add_subcommand(name, desc);
    c.app->add_option("--config", config_path, "Flat JSON document of config keys");
    c.registry = std::make_unique<Registry>(c.app);
    c.body = body;
    commands.push_back(std::move(c));
    Command& ref = commands.back();
    add_common(*ref.registry, ref.params);
    configure(*ref.registry, ref.params);
  };
  commands.reserve(6);

  add_command(
      "toric", "Toric code ground state and Clifford disentangling",
      [](Registry& reg, Params& p) {
        p.lx = 2;
        p.ly = 4;
        add_lattice(reg, p);
        add_solver(reg, p);
      },
      run_toric);
  add_command(
      "ising", "Transverse-field Ising sweep over h",
      [](Registry& reg, Params& p) {
        add_lattice(reg, p);
        reg.add("j", p.j, "Coupling");
        reg.add("h_min", p.h_min, "First field value");
        reg.add("h_max", p.h_max, "Last field value");
        reg.add("h_step", p.h_step, "Field step");
        add_solver(reg, p);
      },
      [](const Params& p, Run& r, std::ostream& o) { run_lattice_grid("ising", p, r, o); });
  add_command(
      "xxz", "XXZ sweep over the anisotropy",
      [](Registry& reg, Params& p) {
        p.max_bond = 32;
        add_lattice(reg, p);
        reg.add("j", p.j, "Coupling");
        reg.add("delta_min", p.delta_min, "First anisotropy value");
        reg.add("delta_max", p.delta_max, "Last anisotropy value");
        reg.add("delta_step", p.delta_step, "Anisotropy step");
        add_solver(reg, p);
      },
      [](const Params& p, Run& r, std::ostream& o) { run_lattice_grid("xxz", p, r, o); });
  add_command(
      "randct", "Random Clifford+T circuits: NsEE, overlap and SRE per round",
      [](Registry& reg, Params& p) {
        add_circuit(reg, p);
        reg.add("threshold", p.threshold, "Truncation threshold for gates and disentangling");
        reg.add("runs", p.runs, "Independent runs to average");
        add_disentangler(reg, p);
      },
      run_randct);
  add_command(
      "sre", "Sampled second-order SRE of Clifford+T circuits against the ensemble average",
      [](Registry& reg, Params& p) {
        p.n = 6;
        p.rounds = 4;
        add_circuit(reg, p);
        reg.add("samples", p.samples, "Circuit instances");
      },
      run_sre);
  add_command(
      "spectrum", "Middle-cut entanglement spectrum after each round of one circuit",
      [](Registry& reg, Params& p) {
        add_circuit(reg, p);
        reg.add("threshold", p.threshold, "Truncation threshold for gates");
      },
      run_spectrum);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    report(err, nullptr, "usage", kExitUsage, e.what());
    return kExitUsage;
  }

  Command* cmd = nullptr;
  for (auto& c : commands)
    if (c.app->parsed()) cmd = &c;

  Run run;
  run.command = cmd->name;
  try {
    if (!config_path.empty()) cmd->registry->apply(load_config(config_path, cmd->name));
    run.config = cmd->registry->resolved();
    run.dir = cmd->params.output_dir;
    std::error_code ec;
    fs::create_directories(run.dir, ec);
    if (ec || !fs::is_directory(run.dir)) throw UsageError("cannot create output directory " + run.dir.string());
    fs::remove(run.dir / "error.json", ec);
    run.meta("running");
    cmd->body(cmd->params, run, out);
    run.meta("ok");
    return kExitOk;
  } catch (const std::exception& e) {
    const bool usage = !run.computing && (dynamic_cast<const UsageError*>(&e) || dynamic_cast<const std::logic_error*>(&e));
    const int code = usage ? kExitUsage : kExitRuntime;
    try {
      if (!run.dir.empty() && fs::is_directory(run.dir)) run.meta("error");
    } catch (const std::exception&) {
    }
    report(err, run.dir.empty() ? nullptr : &run.dir, usage ? "usage" : "runtime", code, e.what());
    return code;
  }
}

}  // namespace nsee::cli
