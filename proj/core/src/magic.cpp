#include "nsee/magic.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "nsee/errors.hpp"
#include "nsee/parallel.hpp"

namespace nsee {

namespace {

void walsh_hadamard(std::vector<cplx>& v) {
  const std::size_t dim = v.size();
  for (std::size_t h = 1; h < dim; h <<= 1)
    for (std::size_t i = 0; i < dim; i += 2 * h)
      for (std::size_t j = i; j < i + h; ++j) {
        const cplx a = v[j], b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
}

// Sum over all unsigned Pauli strings of |<P>|^{2 order}.
double pauli_moment(const Eigen::VectorXcd& psi, int order) {
  const std::size_t dim = std::size_t(psi.size());
  constexpr std::size_t kChunks = 64;
  const std::size_t chunks = std::min(kChunks, dim);
  std::vector<double> partial(chunks, 0.0);
  parallel_for(chunks, [&](std::size_t c) {
    std::vector<cplx> v(dim);
    double acc = 0;
    for (std::size_t x = c; x < dim; x += chunks) {
      for (std::size_t b = 0; b < dim; ++b) v[b] = std::conj(psi(b)) * psi(b ^ x);
      walsh_hadamard(v);
      for (const auto& a : v) acc += std::pow(std::norm(a), order);
    }
    partial[c] = acc;
  });
  double total = 0;
  for (double p : partial) total += p;
  return total;
}

Eigen::VectorXcd block_statevector(const Mps& s, std::size_t lo, std::size_t hi) {
  Eigen::MatrixXcd cur = Eigen::MatrixXcd::Identity(1, 1);
  for (std::size_t i = lo; i < hi; ++i) {
    const auto& a = s.tensor(i);
    Eigen::MatrixXcd next(cur.rows() * 2, a[0].cols());
    for (Eigen::Index r = 0; r < cur.rows(); ++r)
      for (int q = 0; q < 2; ++q) next.row(2 * r + q) = cur.row(r) * a[q];
    cur = std::move(next);
  }
  Eigen::VectorXcd v = cur.col(0);
  return v.normalized();
}

}  // namespace

SreResult sre_exact(const Eigen::VectorXcd& psi, std::size_t n_qubits, int order, std::size_t cap) {
  if (order < 2) throw ArgumentError("SRE order must be at least 2");
  if (n_qubits > cap || n_qubits > 20) throw CapacityError("sre_exact: too many qubits");
  if (psi.size() != (Eigen::Index(1) << n_qubits)) throw DimensionError("sre_exact: statevector size mismatch");
  const double norm = psi.norm();
  if (norm == 0) throw ArgumentError("sre_exact: zero state");
  const Eigen::VectorXcd v = psi / norm;
  SreResult r;
  r.order = order;
  const double moment = pauli_moment(v, order) / std::ldexp(1.0, int(n_qubits));
  r.value = std::log(moment) / (1.0 - order);
  r.density = n_qubits > 0 ? r.value / double(n_qubits) : 0.0;
  return r;
}

std::vector<std::size_t> product_blocks(const Mps& s) {
  std::vector<std::size_t> blocks;
  std::size_t start = 0;
  for (std::size_t b = 1; b <= s.size(); ++b)
    if (b == s.size() || s.bond_dim(b) == 1) {
      blocks.push_back(b - start);
      start = b;
    }
  return blocks;
}

SreResult sre_exact(const Mps& s, int order, std::size_t cap) {
  if (order < 2) throw ArgumentError("SRE order must be at least 2");
  SreResult total;
  total.order = order;
  std::size_t lo = 0;
  for (std::size_t len : product_blocks(s)) {
    if (len > cap) throw CapacityError("sre_exact: entangled block exceeds the qubit cap");
    total.value += sre_exact(block_statevector(s, lo, lo + len), len, order, cap).value;
    lo += len;
  }
  total.density = s.size() > 0 ? total.value / double(s.size()) : 0.0;
  return total;
}

double sre_tstate(std::size_t n_qubits) {
  const double c = std::cos(std::numbers::pi / 4), s = std::sin(std::numbers::pi / 4);
  return -double(n_qubits) * std::log((1 + std::pow(c, 4) + std::pow(s, 4)) / 2);
}

double sre_random_ct_average(std::size_t n_qubits, std::size_t rounds, std::size_t t_per_round) {
  const double d = std::ldexp(1.0, int(n_qubits));
  const double base = (-4.0 + 3.0 * (d * d - d)) / (4.0 * (d * d - 1.0));
  const double decay = std::pow(base, double(t_per_round * rounds));
  return -std::log((4.0 + (d - 1.0) * decay) / (3.0 + d));
}

}  // namespace nsee
