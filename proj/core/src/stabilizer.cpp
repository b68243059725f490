#include "nsee/stabilizer.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nsee/errors.hpp"

namespace nsee {

namespace {

using Row = std::vector<std::uint64_t>;

bool test_bit(const Row& r, std::size_t i) { return (r[i >> 6] >> (i & 63)) & 1u; }
void set_bit(Row& r, std::size_t i) { r[i >> 6] |= std::uint64_t{1} << (i & 63); }

std::size_t gf2_rank(std::vector<Row> rows, std::size_t width) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < width && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && !test_bit(rows[pivot], col)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || !test_bit(rows[r], col)) continue;
      for (std::size_t w = 0; w < rows[r].size(); ++w) rows[r][w] ^= rows[rank][w];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

Tableau Tableau::zero_state(std::size_t n) {
  if (n == 0) throw ArgumentError("tableau needs at least one qubit");
  Tableau t;
  t.n_ = n;
  for (std::size_t q = 0; q < n; ++q) t.gens_.push_back(PauliString::single(n, q, 'Z'));
  return t;
}

Tableau Tableau::from_generators(std::vector<PauliString> generators) {
  const std::size_t n = generators.size();
  if (n == 0) throw ArgumentError("tableau needs at least one generator");
  for (const auto& g : generators) {
    if (g.size() != n) throw ArgumentError("need exactly N generators on N qubits");
    if (!g.phase().is_real()) throw ArgumentError("stabilizer generators must have sign +1 or -1");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!commutes(generators[i], generators[j])) throw ArgumentError("stabilizer generators must commute");
  Tableau t;
  t.n_ = n;
  t.gens_ = std::move(generators);
  std::vector<std::size_t> all(n);
  for (std::size_t q = 0; q < n; ++q) all[q] = q;
  if (restricted_rank(t, all) != n) throw ArgumentError("stabilizer generators are not independent");
  return t;
}

void Tableau::apply_inplace(Gate gate, std::size_t a, std::size_t b) {
  for (auto& g : gens_) conjugate_by_gate_inplace(g, gate, a, b);
}

void Tableau::apply_inplace(const CircuitGate& gate) {
  for (auto& g : gens_) conjugate_inplace(g, gate);
}

void Tableau::apply_inplace(const CliffordCircuit& circuit) {
  if (circuit.n_qubits() != n_) throw DimensionError("circuit and tableau qubit counts differ");
  for (const auto& gate : circuit.gates()) apply_inplace(gate);
}

Tableau Tableau::apply_gate(Gate gate, std::span<const std::size_t> sites) const {
  Tableau t = *this;
  for (auto& g : t.gens_) g = conjugate_by_gate(std::move(g), gate, sites);
  return t;
}

std::string Tableau::str() const {
  std::string out;
  for (const auto& g : gens_) {
    out += g.str();
    out += '\n';
  }
  return out;
}

Tableau Tableau::parse(std::string_view text) {
  std::vector<PauliString> gens;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    gens.push_back(PauliString::parse(line));
  }
  return from_generators(std::move(gens));
}

std::size_t restricted_rank(const Tableau& t, std::span<const std::size_t> sites) {
  const std::size_t k = sites.size();
  std::vector<Row> rows;
  rows.reserve(t.n_qubits());
  for (const auto& g : t.generators()) {
    Row r((2 * k + 63) / 64, 0);
    for (std::size_t j = 0; j < k; ++j) {
      if (g.x(sites[j])) set_bit(r, j);
      if (g.z(sites[j])) set_bit(r, k + j);
    }
    rows.push_back(std::move(r));
  }
  return gf2_rank(std::move(rows), 2 * k);
}

double entanglement_entropy(const Tableau& t, const Bipartition& cut) {
  cut.validate(t.n_qubits());
  const std::size_t rank = restricted_rank(t, cut.side_a);
  return double(rank - cut.side_a.size()) * std::numbers::ln2;
}

Eigen::VectorXcd to_statevector(const Tableau& t, std::size_t cap) {
  const std::size_t n = t.n_qubits();
  if (n > cap || n > 30) throw CapacityError("to_statevector: " + std::to_string(n) + " qubits exceeds cap");

  // Eliminate X parts; rows left without X are Z-type and fix a basis state
  // with nonzero overlap through (z . b) = [sign is negative].
  std::vector<PauliString> rows = t.generators();
  std::size_t rank = 0;
  for (std::size_t q = 0; q < n; ++q) {
    std::size_t pivot = rank;
    while (pivot < n && !rows[pivot].x(q)) ++pivot;
    if (pivot == n) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < n; ++r)
      if (r != rank && rows[r].x(q)) rows[r] = rows[r] * rows[rank];
    ++rank;
  }
  std::vector<std::uint64_t> masks;
  std::vector<int> rhs;
  for (std::size_t r = rank; r < n; ++r) {
    masks.push_back(rows[r].basis_z_mask());
    rhs.push_back(rows[r].phase().power() == 2 ? 1 : 0);
  }
  std::vector<int> pivot_bit(masks.size(), -1);
  std::size_t m = 0;
  for (int bit = int(n) - 1; bit >= 0 && m < masks.size(); --bit) {
    std::size_t p = m;
    while (p < masks.size() && !((masks[p] >> bit) & 1u)) ++p;
    if (p == masks.size()) continue;
    std::swap(masks[m], masks[p]);
    std::swap(rhs[m], rhs[p]);
    for (std::size_t r = 0; r < masks.size(); ++r)
      if (r != m && ((masks[r] >> bit) & 1u)) {
        masks[r] ^= masks[m];
        rhs[r] ^= rhs[m];
      }
    pivot_bit[m] = bit;
    ++m;
  }
  std::uint64_t basis = 0;
  for (std::size_t r = 0; r < m; ++r)
    if (rhs[r]) basis |= std::uint64_t{1} << pivot_bit[r];

  const std::size_t dim = std::size_t{1} << n;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
  psi(basis) = 1.0;
  Eigen::VectorXcd tmp(dim);
  for (const auto& g : t.generators()) {
    apply_pauli(g, std::span<const cplx>(psi.data(), dim), std::span<cplx>(tmp.data(), dim));
    psi = 0.5 * (psi + tmp);
  }
  const double nrm = psi.norm();
  if (nrm < 1e-12) throw ArgumentError("to_statevector: generators stabilize no state");
  return psi / nrm;
}

}  // namespace nsee
