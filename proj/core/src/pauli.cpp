#include "nsee/pauli.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <sstream>

#include "nsee/errors.hpp"

namespace nsee {

namespace {

std::size_t words_for(std::size_t n) { return (n + 63) / 64; }

void require_same_size(const PauliString& a, const PauliString& b, const char* what) {
  if (a.size() != b.size()) {
    throw DimensionError(std::string(what) + ": qubit counts differ (" + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()) + ")");
  }
}

void check_site(const PauliString& p, std::size_t q) {
  if (q >= p.size()) {
    throw IndexError("site " + std::to_string(q) + " out of range for " + std::to_string(p.size()) +
                     "-qubit Pauli string");
  }
}

}  // namespace

cplx Phase::value() const {
  static constexpr double re[4] = {1, 0, -1, 0};
  static constexpr double im[4] = {0, 1, 0, -1};
  return {re[power_], im[power_]};
}

PauliString::PauliString(std::size_t n) : n_(n), xs_(words_for(n), 0), zs_(words_for(n), 0) {}

PauliString PauliString::parse(std::string_view text) {
  std::size_t pos = 0;
  int power = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') power += 2;
    ++pos;
  }
  if (pos < text.size() && text[pos] == 'i') {
    power += 1;
    ++pos;
  }
  PauliString p(text.size() - pos);
  for (std::size_t q = 0; pos < text.size(); ++pos, ++q) p.set_letter(q, text[pos]);
  p.phase_ = Phase(power);
  return p;
}

PauliString PauliString::single(std::size_t n, std::size_t q, char letter) {
  PauliString p(n);
  check_site(p, q);
  p.set_letter(q, letter);
  return p;
}

PauliString PauliString::from_masks(std::size_t n, std::uint64_t x_mask, std::uint64_t z_mask, Phase phase) {
  PauliString p(n);
  for (std::size_t q = 0; q < n; ++q) {
    const auto bit = n - 1 - q;
    p.set(q, (x_mask >> bit) & 1u, (z_mask >> bit) & 1u);
  }
  p.phase_ = phase;
  return p;
}

void PauliString::set(std::size_t q, bool x, bool z) {
  const std::uint64_t m = std::uint64_t{1} << (q & 63);
  auto& xw = xs_[q >> 6];
  auto& zw = zs_[q >> 6];
  xw = x ? (xw | m) : (xw & ~m);
  zw = z ? (zw | m) : (zw & ~m);
}

char PauliString::letter(std::size_t q) const {
  static constexpr char letters[4] = {'I', 'X', 'Z', 'Y'};
  return letters[int(x(q)) | (int(z(q)) << 1)];
}

void PauliString::set_letter(std::size_t q, char letter) {
  switch (letter) {
    case 'I':
    case '_':
      set(q, false, false);
      break;
    case 'X':
      set(q, true, false);
      break;
    case 'Y':
      set(q, true, true);
      break;
    case 'Z':
      set(q, false, true);
      break;
    default:
      throw ArgumentError(std::string("invalid Pauli letter '") + letter + "'");
  }
}

bool PauliString::is_identity() const {
  for (std::size_t w = 0; w < xs_.size(); ++w)
    if (xs_[w] | zs_[w]) return false;
  return true;
}

std::size_t PauliString::weight() const {
  std::size_t count = 0;
  for (std::size_t w = 0; w < xs_.size(); ++w) count += std::popcount(xs_[w] | zs_[w]);
  return count;
}

std::pair<std::size_t, std::size_t> PauliString::support_range() const {
  std::size_t lo = n_, hi = 0;
  for (std::size_t w = 0; w < xs_.size(); ++w) {
    const auto word = xs_[w] | zs_[w];
    if (!word) continue;
    const std::size_t first = w * 64 + std::countr_zero(word);
    const std::size_t last = w * 64 + 63 - std::countl_zero(word);
    if (lo == n_) lo = first;
    hi = last;
  }
  return {lo, hi};
}

std::uint64_t PauliString::basis_x_mask() const {
  std::uint64_t m = 0;
  for (std::size_t q = 0; q < n_; ++q)
    if (x(q)) m |= std::uint64_t{1} << (n_ - 1 - q);
  return m;
}

std::uint64_t PauliString::basis_z_mask() const {
  std::uint64_t m = 0;
  for (std::size_t q = 0; q < n_; ++q)
    if (z(q)) m |= std::uint64_t{1} << (n_ - 1 - q);
  return m;
}

std::string PauliString::str() const {
  static constexpr const char* prefixes[4] = {"+", "+i", "-", "-i"};
  std::string s = prefixes[phase_.power()];
  s.reserve(s.size() + n_);
  for (std::size_t q = 0; q < n_; ++q) s.push_back(letter(q));
  return s;
}

PauliString& PauliString::operator*=(const PauliString& rhs) {
  require_same_size(*this, rhs, "multiply");
  // Per-bit mod-4 counters of the i-powers picked up by each letter product.
  std::uint64_t cnt1 = 0;
  std::uint64_t cnt2 = 0;
  for (std::size_t w = 0; w < xs_.size(); ++w) {
    const auto x1 = xs_[w];
    const auto z1 = zs_[w];
    const auto x2 = rhs.xs_[w];
    const auto z2 = rhs.zs_[w];
    xs_[w] = x1 ^ x2;
    zs_[w] = z1 ^ z2;
    const auto x1z2 = x1 & z2;
    const auto anti = (x2 & z1) ^ x1z2;
    cnt2 ^= (cnt1 ^ xs_[w] ^ zs_[w] ^ x1z2) & anti;
    cnt1 ^= anti;
  }
  const int log_i = std::popcount(cnt1) + 2 * std::popcount(cnt2);
  phase_ = phase_ * rhs.phase_ * Phase(log_i);
  return *this;
}

bool PauliString::operator==(const PauliString& o) const { return phase_ == o.phase_ && same_letters(o); }

bool PauliString::same_letters(const PauliString& o) const {
  return n_ == o.n_ && xs_ == o.xs_ && zs_ == o.zs_;
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  PauliString r = a;
  r *= b;
  return r;
}

bool commutes(const PauliString& a, const PauliString& b) {
  require_same_size(a, b, "commutes");
  const auto ax = a.x_words(), az = a.z_words(), bx = b.x_words(), bz = b.z_words();
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < ax.size(); ++w) acc ^= (ax[w] & bz[w]) ^ (az[w] & bx[w]);
  return (std::popcount(acc) & 1) == 0;
}

void conjugate_by_gate_inplace(PauliString& p, Gate gate, std::size_t a, std::size_t b) {
  check_site(p, a);
  switch (gate) {
    case Gate::H: {
      const bool x = p.x(a), z = p.z(a);
      if (x && z) p.set_phase(p.phase() * Phase(2));
      p.set(a, z, x);
      break;
    }
    case Gate::S: {
      const bool x = p.x(a), z = p.z(a);
      if (x && z) p.set_phase(p.phase() * Phase(2));
      p.set(a, x, z ^ x);
      break;
    }
    case Gate::CNOT: {
      check_site(p, b);
      if (a == b) throw IndexError("CNOT control and target coincide");
      const bool xc = p.x(a), zc = p.z(a), xt = p.x(b), zt = p.z(b);
      if (xc && zt && !(xt ^ zc)) p.set_phase(p.phase() * Phase(2));
      p.set(b, xt ^ xc, zt);
      p.set(a, xc, zc ^ zt);
      break;
    }
  }
}

PauliString conjugate_by_gate(PauliString p, Gate gate, std::span<const std::size_t> sites) {
  const std::size_t need = gate == Gate::CNOT ? 2 : 1;
  if (sites.size() != need) throw ArgumentError("wrong number of sites for gate");
  conjugate_by_gate_inplace(p, gate, sites[0], need == 2 ? sites[1] : 0);
  return p;
}

void apply_pauli(const PauliString& p, std::span<const cplx> in, std::span<cplx> out) {
  const std::size_t dim = std::size_t{1} << p.size();
  if (in.size() != dim || out.size() != dim) throw DimensionError("apply_pauli: statevector size mismatch");
  const auto xm = p.basis_x_mask();
  const auto zm = p.basis_z_mask();
  const int n_y = std::popcount(xm & zm);
  const cplx base = Phase(p.phase().power() + n_y).value();
  for (std::size_t b = 0; b < dim; ++b) {
    const double sign = (std::popcount(b & zm) & 1) ? -1.0 : 1.0;
    out[b ^ xm] = base * sign * in[b];
  }
}

cplx pauli_expectation(const PauliString& p, std::span<const cplx> psi) {
  const std::size_t dim = std::size_t{1} << p.size();
  if (psi.size() != dim) throw DimensionError("pauli_expectation: statevector size mismatch");
  const auto xm = p.basis_x_mask();
  const auto zm = p.basis_z_mask();
  const int n_y = std::popcount(xm & zm);
  cplx acc = 0;
  for (std::size_t b = 0; b < dim; ++b) {
    const double sign = (std::popcount(b & zm) & 1) ? -1.0 : 1.0;
    acc += std::conj(psi[b ^ xm]) * sign * psi[b];
  }
  return Phase(p.phase().power() + n_y).value() * acc;
}

std::string PauliSum::key_of(const PauliString& s) {
  const auto xs = s.x_words();
  const auto zs = s.z_words();
  std::string key(sizeof(std::uint64_t) * (xs.size() + zs.size()), '\0');
  auto* out = key.data();
  for (auto w : xs) {
    std::memcpy(out, &w, sizeof w);
    out += sizeof w;
  }
  for (auto w : zs) {
    std::memcpy(out, &w, sizeof w);
    out += sizeof w;
  }
  return key;
}

void PauliSum::add(double coeff, PauliString s) {
  if (n_ == 0 && terms_.empty()) n_ = s.size();
  if (s.size() != n_) throw DimensionError("PauliSum::add: qubit count mismatch");
  if (!s.phase().is_real()) throw ArgumentError("PauliSum terms must have a real phase: " + s.str());
  if (s.phase().power() == 2) coeff = -coeff;
  s.set_phase(Phase{});

  auto key = key_of(s);
  if (auto it = index_.find(key); it != index_.end()) {
    const std::size_t i = it->second;
    terms_[i].coeff += coeff;
    if (std::abs(terms_[i].coeff) < kDropTolerance) {
      index_.erase(it);
      if (i + 1 != terms_.size()) {
        terms_[i] = std::move(terms_.back());
        index_[key_of(terms_[i].string)] = i;
      }
      terms_.pop_back();
    }
    return;
  }
  if (std::abs(coeff) < kDropTolerance) return;
  index_.emplace(std::move(key), terms_.size());
  terms_.push_back({coeff, std::move(s)});
}

std::string PauliSum::str() const {
  std::string out;
  char buf[64];
  for (const auto& t : terms_) {
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, t.coeff, std::chars_format::general, 17);
    out.append(buf, end);
    out.push_back('\t');
    out += t.string.str();
    out.push_back('\n');
  }
  return out;
}

PauliSum PauliSum::parse(std::string_view text) {
  PauliSum sum;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw ArgumentError("PauliSum line without TAB: " + line);
    double coeff = 0;
    const auto* first = line.data();
    auto [ptr, ec] = std::from_chars(first, first + tab, coeff);
    if (ec != std::errc{} || ptr != first + tab) throw ArgumentError("bad coefficient in line: " + line);
    sum.add(coeff, PauliString::parse(std::string_view(line).substr(tab + 1)));
  }
  return sum;
}

}  // namespace nsee
