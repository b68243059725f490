#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace nsee {

using cplx = std::complex<double>;

/// Power of i in {0, 1, 2, 3}, i.e. one of {+1, +i, -1, -i}.
class Phase {
 public:
  constexpr Phase() = default;
  constexpr explicit Phase(int power) : power_(static_cast<std::uint8_t>(((power % 4) + 4) % 4)) {}

  constexpr int power() const { return power_; }
  constexpr bool is_real() const { return (power_ & 1) == 0; }
  cplx value() const;

  constexpr Phase operator*(Phase o) const { return Phase(power_ + o.power_); }
  constexpr Phase& operator*=(Phase o) { return *this = *this * o; }
  constexpr bool operator==(const Phase&) const = default;

 private:
  std::uint8_t power_ = 0;
};

/// Elementary Clifford generators.
enum class Gate : std::uint8_t { H, S, CNOT };

/// Signed N-qubit Pauli operator phase * (sigma_0 ⊗ ... ⊗ sigma_{N-1}).
///
/// Each factor is encoded by an (x, z) bit pair: I=(0,0), X=(1,0), Z=(0,1),
/// Y=(1,1) with Y = iXZ. Bits are packed 64 to a word. Qubit 0 is the
/// leftmost letter in the text form and the most significant bit of a
/// computational-basis index.
class PauliString {
 public:
  PauliString() = default;
  /// Identity on `n` qubits.
  explicit PauliString(std::size_t n);

  /// Parses "[+|-][i]LETTERS" where letters are I (or _), X, Y, Z.
  static PauliString parse(std::string_view text);
  /// A single letter on qubit `q`, identity elsewhere.
  static PauliString single(std::size_t n, std::size_t q, char letter);
  /// Builds from packed masks; only meaningful for n <= 64.
  static PauliString from_masks(std::size_t n, std::uint64_t x_mask, std::uint64_t z_mask,
                                Phase phase = Phase{});

  std::size_t size() const { return n_; }
  Phase phase() const { return phase_; }
  void set_phase(Phase p) { phase_ = p; }

  bool x(std::size_t q) const { return (xs_[q >> 6] >> (q & 63)) & 1u; }
  bool z(std::size_t q) const { return (zs_[q >> 6] >> (q & 63)) & 1u; }
  void set(std::size_t q, bool x, bool z);
  char letter(std::size_t q) const;
  void set_letter(std::size_t q, char letter);

  bool is_identity() const;
  /// Number of non-identity factors.
  std::size_t weight() const;
  /// Smallest and largest non-identity qubit; {n, 0} for the identity.
  std::pair<std::size_t, std::size_t> support_range() const;

  std::span<const std::uint64_t> x_words() const { return xs_; }
  std::span<const std::uint64_t> z_words() const { return zs_; }
  std::span<std::uint64_t> x_words() { return xs_; }
  std::span<std::uint64_t> z_words() { return zs_; }

  /// Bit masks in computational-basis order (qubit q -> bit n-1-q); n <= 64.
  std::uint64_t basis_x_mask() const;
  std::uint64_t basis_z_mask() const;

  /// Text form: sign prefix ("+", "-", "+i", "-i") then one letter per qubit.
  std::string str() const;

  /// In-place right multiplication: *this = *this * rhs.
  PauliString& operator*=(const PauliString& rhs);

  bool operator==(const PauliString& o) const;
  /// Compares letters only, ignoring phase.
  bool same_letters(const PauliString& o) const;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> xs_;
  std::vector<std::uint64_t> zs_;
  Phase phase_{};
};

PauliString multiply(const PauliString& a, const PauliString& b);
inline PauliString operator*(const PauliString& a, const PauliString& b) { return multiply(a, b); }

/// True iff the symplectic product <a.x, b.z> + <a.z, b.x> vanishes mod 2.
bool commutes(const PauliString& a, const PauliString& b);

/// U p U† for one elementary gate. `b` is the CNOT target (ignored otherwise).
void conjugate_by_gate_inplace(PauliString& p, Gate gate, std::size_t a, std::size_t b = 0);
PauliString conjugate_by_gate(PauliString p, Gate gate, std::span<const std::size_t> sites);

/// |out> = P |in> on a 2^n statevector (n <= 62).
void apply_pauli(const PauliString& p, std::span<const cplx> in, std::span<cplx> out);
/// <psi| P |psi>, complex in general.
cplx pauli_expectation(const PauliString& p, std::span<const cplx> psi);

struct PauliTerm {
  double coeff = 0.0;
  PauliString string;  // phase always +1; signs live in coeff
};

/// Real-weighted sum of Hermitian Pauli strings with merged duplicates.
class PauliSum {
 public:
  static constexpr double kDropTolerance = 1e-14;

  PauliSum() = default;
  explicit PauliSum(std::size_t n) : n_(n) {}

  /// Adds coeff * s. `s` must have a real phase; its sign is folded into the
  /// coefficient. Terms with an identical letter pattern are merged and terms
  /// whose coefficient falls below kDropTolerance are removed.
  void add(double coeff, PauliString s);
  void add(double coeff, std::string_view text) { add(coeff, PauliString::parse(text)); }

  std::size_t n_qubits() const { return n_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const std::vector<PauliTerm>& terms() const { return terms_; }

  /// Lines "coefficient<TAB>string".
  std::string str() const;
  static PauliSum parse(std::string_view text);

 private:
  static std::string key_of(const PauliString& s);

  std::size_t n_ = 0;
  std::vector<PauliTerm> terms_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace nsee
