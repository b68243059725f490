#include "nsee/clifford.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <nlohmann/json.hpp>

#include "nsee/errors.hpp"

namespace nsee {

namespace {

// i-power of sigma_a * sigma_b for single-qubit letters coded I=0, X=1, Z=2, Y=3.
constexpr int kLetterProductPower[4][4] = {
    {0, 0, 0, 0},
    {0, 0, 3, 1},
    {0, 1, 0, 3},
    {0, 3, 1, 0},
};

struct CodeProduct {
  std::uint8_t code;
  int power;
};

CodeProduct multiply_codes(std::uint8_t a, std::uint8_t b) {
  int power = kLetterProductPower[a & 3][b & 3] + kLetterProductPower[(a >> 2) & 3][(b >> 2) & 3];
  return {std::uint8_t(a ^ b), power};
}

bool codes_commute(std::uint8_t a, std::uint8_t b) {
  const unsigned xa = a & 0b0101u, za = (a >> 1) & 0b0101u;
  const unsigned xb = b & 0b0101u, zb = (b >> 1) & 0b0101u;
  return (std::popcount((xa & zb) ^ (za & xb)) & 1) == 0;
}

std::uint8_t code_of(const PauliString& p, std::size_t a, std::size_t b) {
  return std::uint8_t(int(p.x(a)) | (int(p.z(a)) << 1) | (int(p.x(b)) << 2) | (int(p.z(b)) << 3));
}

std::uint32_t pack(const std::array<TwoQubitClifford::Image, 4>& gens) {
  std::uint32_t key = 0;
  for (int g = 0; g < 4; ++g) key |= std::uint32_t(gens[g].code | (gens[g].negative ? 16 : 0)) << (5 * g);
  return key;
}

Eigen::Matrix2cd letter_matrix(int letter) {
  using C = cplx;
  Eigen::Matrix2cd m;
  switch (letter) {
    case 0:
      m << 1, 0, 0, 1;
      break;
    case 1:
      m << 0, 1, 1, 0;
      break;
    case 2:
      m << 1, 0, 0, -1;
      break;
    default:
      m << 0, C(0, -1), C(0, 1), 0;
      break;
  }
  return m;
}

Eigen::Matrix4cd dense_image(TwoQubitClifford::Image img) {
  const Eigen::Matrix2cd a = letter_matrix(img.code & 3);
  const Eigen::Matrix2cd b = letter_matrix((img.code >> 2) & 3);
  Eigen::Matrix4cd m;
  for (int r1 = 0; r1 < 2; ++r1)
    for (int c1 = 0; c1 < 2; ++c1)
      for (int r2 = 0; r2 < 2; ++r2)
        for (int c2 = 0; c2 < 2; ++c2) m(2 * r1 + r2, 2 * c1 + c2) = a(r1, c1) * b(r2, c2);
  return img.negative ? Eigen::Matrix4cd(-m) : m;
}

std::vector<int>& key_lookup() {
  static std::vector<int> lookup(std::size_t{1} << 20, -1);
  return lookup;
}

}  // namespace

TwoQubitClifford TwoQubitClifford::from_generator_images(const std::array<Image, 4>& gens) {
  TwoQubitClifford c;
  for (int code = 0; code < 16; ++code) {
    // Letter pattern = i^{x1 z1 + x2 z2} X1^x1 Z1^z1 X2^x2 Z2^z2.
    int power = ((code & 1) && (code & 2)) + ((code & 4) && (code & 8));
    std::uint8_t acc = 0;
    for (int g = 0; g < 4; ++g) {
      if (!(code & (1 << g))) continue;
      const auto prod = multiply_codes(acc, gens[g].code);
      acc = prod.code;
      power += prod.power + (gens[g].negative ? 2 : 0);
    }
    if (power & 1) throw ArgumentError("generator images do not define a Clifford map");
    c.table_[code] = {acc, (power & 3) == 2};
  }
  return c;
}

TwoQubitClifford TwoQubitClifford::from_images(const std::array<PauliString, 4>& images) {
  std::array<Image, 4> gens;
  for (int g = 0; g < 4; ++g) {
    const auto& p = images[g];
    if (p.size() != 2) throw DimensionError("two-qubit Clifford images must act on 2 qubits");
    if (!p.phase().is_real()) throw ArgumentError("Clifford images must be Hermitian");
    gens[g] = {code_of(p, 0, 1), p.phase().power() == 2};
    if (gens[g].code == 0) throw ArgumentError("Clifford image cannot be the identity");
  }
  const bool valid = !codes_commute(gens[0].code, gens[1].code) && !codes_commute(gens[2].code, gens[3].code) &&
                     codes_commute(gens[0].code, gens[2].code) && codes_commute(gens[0].code, gens[3].code) &&
                     codes_commute(gens[1].code, gens[2].code) && codes_commute(gens[1].code, gens[3].code);
  if (!valid) throw ArgumentError("Clifford images violate the symplectic relations");
  enumerate_two_qubit_cliffords();
  auto c = from_generator_images(gens);
  c.index_ = key_lookup()[pack(gens)];
  return c;
}

std::array<PauliString, 4> TwoQubitClifford::images() const {
  std::array<PauliString, 4> out;
  for (int g = 0; g < 4; ++g) {
    const auto img = generator_image(g);
    PauliString p(2);
    p.set(0, img.code & 1, img.code & 2);
    p.set(1, img.code & 4, img.code & 8);
    p.set_phase(Phase(img.negative ? 2 : 0));
    out[g] = p;
  }
  return out;
}

std::uint32_t TwoQubitClifford::key() const {
  return pack({generator_image(0), generator_image(1), generator_image(2), generator_image(3)});
}

const std::vector<TwoQubitClifford>& enumerate_two_qubit_cliffords() {
  static const std::vector<TwoQubitClifford> table = [] {
    // Letter order I < X < Y < Z mapped to (x | z << 1) codes.
    constexpr std::uint8_t letter_code[4] = {0, 1, 3, 2};
    std::vector<TwoQubitClifford::Image> options;
    for (int l1 = 0; l1 < 4; ++l1)
      for (int l2 = 0; l2 < 4; ++l2) {
        if (l1 == 0 && l2 == 0) continue;
        const auto code = std::uint8_t(letter_code[l1] | (letter_code[l2] << 2));
        options.push_back({code, false});
        options.push_back({code, true});
      }

    std::vector<TwoQubitClifford> out;
    out.reserve(kNumTwoQubitCliffords);
    auto& lookup = key_lookup();
    for (const auto& x1 : options)
      for (const auto& z1 : options) {
        if (codes_commute(x1.code, z1.code)) continue;
        for (const auto& x2 : options) {
          if (!codes_commute(x1.code, x2.code) || !codes_commute(z1.code, x2.code)) continue;
          for (const auto& z2 : options) {
            if (codes_commute(x2.code, z2.code) || !codes_commute(x1.code, z2.code) ||
                !codes_commute(z1.code, z2.code))
              continue;
            const std::array<TwoQubitClifford::Image, 4> gens{x1, z1, x2, z2};
            auto c = TwoQubitClifford::from_generator_images(gens);
            c.index_ = static_cast<int>(out.size());
            lookup[pack(gens)] = c.index_;
            out.push_back(c);
          }
        }
      }
    return out;
  }();
  return table;
}

const TwoQubitClifford& clifford_by_index(int index) {
  const auto& all = enumerate_two_qubit_cliffords();
  if (index < 0 || index >= static_cast<int>(all.size()))
    throw IndexError("two-qubit Clifford index " + std::to_string(index) + " out of range");
  return all[index];
}

int identity_clifford_index() {
  static const int index = [] {
    enumerate_two_qubit_cliffords();
    const std::array<TwoQubitClifford::Image, 4> gens{{{1, false}, {2, false}, {4, false}, {8, false}}};
    return key_lookup()[pack(gens)];
  }();
  return index;
}

std::optional<int> find_clifford_index(const TwoQubitClifford& c) {
  enumerate_two_qubit_cliffords();
  const int idx = key_lookup()[c.key()];
  if (idx < 0) return std::nullopt;
  return idx;
}

Eigen::Matrix4cd as_unitary(const TwoQubitClifford& c) {
  const Eigen::Matrix4cd gx1 = dense_image(c.generator_image(0));
  const Eigen::Matrix4cd gz1 = dense_image(c.generator_image(1));
  const Eigen::Matrix4cd gx2 = dense_image(c.generator_image(2));
  const Eigen::Matrix4cd gz2 = dense_image(c.generator_image(3));

  // U|00> is the joint +1 eigenvector of the images of Z1 and Z2.
  const Eigen::Matrix4cd projector = (Eigen::Matrix4cd::Identity() + gz1) * (Eigen::Matrix4cd::Identity() + gz2) / 4.0;
  Eigen::Vector4cd psi0 = Eigen::Vector4cd::Zero();
  for (int b = 0; b < 4; ++b) {
    const Eigen::Vector4cd v = projector.col(b);
    if (v.norm() > 0.25) {
      psi0 = v.normalized();
      break;
    }
  }

  Eigen::Matrix4cd u;
  u.col(0) = psi0;
  u.col(1) = gx2 * psi0;
  u.col(2) = gx1 * psi0;
  u.col(3) = gx1 * (gx2 * psi0);

  for (int r = 0; r < 4; ++r)
    for (int col = 0; col < 4; ++col) {
      if (std::abs(u(r, col)) > 1e-12) {
        u *= std::conj(u(r, col)) / std::abs(u(r, col));
        return u;
      }
    }
  return u;
}

TwoQubitClifford compose(const TwoQubitClifford& a, const TwoQubitClifford& b) {
  return clifford_by_index(compose_index(a.index(), b.index()));
}

TwoQubitClifford inverse(const TwoQubitClifford& c) { return clifford_by_index(inverse_index(c.index())); }

int compose_index(int a, int b) {
  const auto& ca = clifford_by_index(a);
  const auto& cb = clifford_by_index(b);
  std::array<TwoQubitClifford::Image, 4> gens;
  for (int g = 0; g < 4; ++g) {
    const auto ia = ca.generator_image(g);
    const auto ib = cb.image_of(ia.code);
    gens[g] = {ib.code, ia.negative != ib.negative};
  }
  return key_lookup()[pack(gens)];
}

int inverse_index(int a) {
  const auto& c = clifford_by_index(a);
  std::array<TwoQubitClifford::Image, 16> inv{};
  for (std::uint8_t code = 1; code < 16; ++code) {
    const auto img = c.image_of(code);
    inv[img.code] = {code, img.negative};
  }
  return key_lookup()[pack({inv[1], inv[2], inv[4], inv[8]})];
}

const LocalEquivalence& local_equivalence_classes() {
  static const LocalEquivalence classes = [] {
    const auto& all = enumerate_two_qubit_cliffords();
    std::vector<int> local;
    for (const auto& c : all) {
      const bool q1_only = (c.generator_image(0).code & 0b1100) == 0 && (c.generator_image(1).code & 0b1100) == 0;
      const bool q2_only = (c.generator_image(2).code & 0b0011) == 0 && (c.generator_image(3).code & 0b0011) == 0;
      if (q1_only && q2_only) local.push_back(c.index());
    }
    LocalEquivalence eq;
    eq.class_of.assign(all.size(), -1);
    for (const auto& c : all) {
      if (eq.class_of[c.index()] >= 0) continue;
      const int id = static_cast<int>(eq.members.size());
      eq.members.emplace_back();
      for (int l : local) {
        const int m = compose_index(c.index(), l);
        if (eq.class_of[m] < 0) {
          eq.class_of[m] = id;
          eq.members[id].push_back(m);
        }
      }
      std::sort(eq.members[id].begin(), eq.members[id].end());
    }
    return eq;
  }();
  return classes;
}

void conjugate_by_two_qubit_clifford_inplace(PauliString& p, const TwoQubitClifford& c, std::size_t a,
                                             std::size_t b) {
  if (a >= p.size() || b >= p.size()) throw IndexError("two-qubit Clifford site out of range");
  if (a == b) throw IndexError("two-qubit Clifford sites collide");
  const auto img = c.image_of(code_of(p, a, b));
  p.set(a, img.code & 1, img.code & 2);
  p.set(b, img.code & 4, img.code & 8);
  if (img.negative) p.set_phase(p.phase() * Phase(2));
}

PauliString conjugate_by_two_qubit_clifford(PauliString p, const TwoQubitClifford& c, std::size_t a,
                                            std::size_t b) {
  conjugate_by_two_qubit_clifford_inplace(p, c, a, b);
  return p;
}

void CliffordCircuit::check_sites(std::size_t a, std::size_t b, bool two) const {
  if (a >= n_ || (two && b >= n_)) throw IndexError("circuit gate site out of range");
  if (two && a == b) throw IndexError("two-qubit gate sites collide");
}

void CliffordCircuit::push(Gate gate, std::size_t a, std::size_t b) {
  const bool two = gate == Gate::CNOT;
  check_sites(a, b, two);
  CircuitGate g;
  g.kind = gate == Gate::H ? CircuitGate::Kind::H : gate == Gate::S ? CircuitGate::Kind::S : CircuitGate::Kind::CNOT;
  g.sites = {a, two ? b : 0};
  gates_.push_back(g);
}

void CliffordCircuit::push_c2(int index, std::size_t a, std::size_t b) {
  check_sites(a, b, true);
  clifford_by_index(index);
  gates_.push_back({CircuitGate::Kind::C2, {a, b}, index});
}

void CliffordCircuit::append(const CliffordCircuit& other) {
  if (other.n_ != n_) throw DimensionError("cannot append circuits on different qubit counts");
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
}

CliffordCircuit CliffordCircuit::inverse() const {
  CliffordCircuit inv(n_);
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
    switch (it->kind) {
      case CircuitGate::Kind::S:
        for (int k = 0; k < 3; ++k) inv.gates_.push_back(*it);
        break;
      case CircuitGate::Kind::C2: {
        auto g = *it;
        g.index = inverse_index(it->index);
        inv.gates_.push_back(g);
        break;
      }
      default:
        inv.gates_.push_back(*it);
    }
  }
  return inv;
}

nlohmann::json CliffordCircuit::to_json() const {
  auto out = nlohmann::json::array();
  for (const auto& g : gates_) {
    nlohmann::json j;
    switch (g.kind) {
      case CircuitGate::Kind::H:
        j["gate"] = "H";
        break;
      case CircuitGate::Kind::S:
        j["gate"] = "S";
        break;
      case CircuitGate::Kind::CNOT:
        j["gate"] = "CNOT";
        break;
      case CircuitGate::Kind::C2:
        j["gate"] = "C2";
        break;
    }
    if (g.arity() == 1)
      j["sites"] = {g.sites[0]};
    else
      j["sites"] = {g.sites[0], g.sites[1]};
    if (g.kind == CircuitGate::Kind::C2) j["index"] = g.index;
    out.push_back(std::move(j));
  }
  return out;
}

CliffordCircuit CliffordCircuit::from_json(const nlohmann::json& j, std::size_t n_qubits) {
  if (!j.is_array()) throw ArgumentError("circuit JSON must be an array");
  CliffordCircuit c(n_qubits);
  for (const auto& g : j) {
    const auto name = g.at("gate").get<std::string>();
    const auto sites = g.at("sites").get<std::vector<std::size_t>>();
    const std::size_t need = (name == "H" || name == "S") ? 1 : 2;
    if (sites.size() != need) throw ArgumentError("gate '" + name + "' has the wrong number of sites");
    if (name == "H")
      c.push(Gate::H, sites[0]);
    else if (name == "S")
      c.push(Gate::S, sites[0]);
    else if (name == "CNOT")
      c.push(Gate::CNOT, sites[0], sites[1]);
    else if (name == "C2")
      c.push_c2(g.at("index").get<int>(), sites[0], sites[1]);
    else
      throw ArgumentError("unknown gate '" + name + "'");
  }
  return c;
}

void conjugate_inplace(PauliString& p, const CircuitGate& gate) {
  switch (gate.kind) {
    case CircuitGate::Kind::H:
      conjugate_by_gate_inplace(p, Gate::H, gate.sites[0]);
      break;
    case CircuitGate::Kind::S:
      conjugate_by_gate_inplace(p, Gate::S, gate.sites[0]);
      break;
    case CircuitGate::Kind::CNOT:
      conjugate_by_gate_inplace(p, Gate::CNOT, gate.sites[0], gate.sites[1]);
      break;
    case CircuitGate::Kind::C2:
      conjugate_by_two_qubit_clifford_inplace(p, clifford_by_index(gate.index), gate.sites[0], gate.sites[1]);
      break;
  }
}

PauliString conjugate(PauliString p, const CliffordCircuit& circuit) {
  if (p.size() != circuit.n_qubits()) throw DimensionError("conjugate: qubit count mismatch");
  for (const auto& g : circuit.gates()) conjugate_inplace(p, g);
  return p;
}

PauliSum conjugate_sum(const PauliSum& h, const CliffordCircuit& circuit) {
  if (h.n_qubits() != circuit.n_qubits()) throw DimensionError("conjugate_sum: qubit count mismatch");
  PauliSum out(h.n_qubits());
  for (const auto& t : h.terms()) out.add(t.coeff, conjugate(t.string, circuit));
  return out;
}

Eigen::MatrixXcd gate_unitary(const CircuitGate& gate) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (gate.kind) {
    case CircuitGate::Kind::H: {
      Eigen::Matrix2cd m;
      m << r, r, r, -r;
      return m;
    }
    case CircuitGate::Kind::S: {
      Eigen::Matrix2cd m;
      m << 1, 0, 0, cplx(0, 1);
      return m;
    }
    case CircuitGate::Kind::CNOT: {
      Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
      m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
      return m;
    }
    case CircuitGate::Kind::C2:
      return as_unitary(clifford_by_index(gate.index));
  }
  return {};
}

CliffordCircuit random_clifford_layer(std::size_t n_qubits, Rng& rng, std::size_t layer_index) {
  if (n_qubits < 2) throw ArgumentError("random Clifford layer needs at least two qubits");
  CliffordCircuit layer(n_qubits);
  const std::size_t offset = n_qubits > 2 ? layer_index % 2 : 0;
  for (std::size_t k = offset; k + 1 < n_qubits; k += 2)
    layer.push_c2(static_cast<int>(uniform_index(rng, kNumTwoQubitCliffords)), k, k + 1);
  return layer;
}

}  // namespace nsee
