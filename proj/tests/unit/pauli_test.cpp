#include "nsee/pauli.hpp"

#include <gtest/gtest.h>

#include "dense_oracle.hpp"
#include "nsee/errors.hpp"

using namespace nsee;

namespace {

PauliString random_pauli(std::size_t n, Rng& rng, bool hermitian = false) {
  PauliString p(n);
  for (std::size_t q = 0; q < n; ++q) p.set(q, uniform_index(rng, 2), uniform_index(rng, 2));
  p.set_phase(Phase(int(uniform_index(rng, 4)) & (hermitian ? 2 : 3)));
  return p;
}

}  // namespace

TEST(pauli_string, parse_and_str) {
  EXPECT_EQ(PauliString::parse("-XIYZ").str(), "-XIYZ");
  EXPECT_EQ(PauliString::parse("XZ").str(), "+XZ");
  EXPECT_EQ(PauliString::parse("-iY").str(), "-iY");
  EXPECT_EQ(PauliString::parse("+_X").str(), "+IX");
  EXPECT_THROW(PauliString::parse("XQ"), ArgumentError);
  auto p = PauliString::parse("IXIZ");
  EXPECT_EQ(p.weight(), 2u);
  EXPECT_EQ(p.support_range(), std::make_pair(std::size_t{1}, std::size_t{3}));
}

TEST(pauli_string, multiply_examples) {
  EXPECT_EQ(multiply(PauliString::parse("X"), PauliString::parse("Z")).str(), "-iY");
  const auto zz = PauliString::parse("+ZZ");
  EXPECT_EQ((zz * zz).str(), "+II");
  // Checked against the 4x4 dense product below.
  EXPECT_EQ(multiply(PauliString::parse("XI"), PauliString::parse("ZZ")).str(), "-iYZ");
  EXPECT_TRUE(oracle::equal_up_to_phase(oracle::pauli_matrix("XI") * oracle::pauli_matrix("ZZ"),
                                        oracle::pauli_matrix("-iYZ"), 1e-14));
  EXPECT_LT((oracle::pauli_matrix("XI") * oracle::pauli_matrix("ZZ") - oracle::pauli_matrix("-iYZ")).norm(), 1e-14);
  EXPECT_THROW(multiply(PauliString::parse("X"), PauliString::parse("XX")), DimensionError);
}

TEST(pauli_string, multiply_matches_dense_products) {
  Rng rng(7);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + uniform_index(rng, 6);
    const auto a = random_pauli(n, rng);
    const auto b = random_pauli(n, rng);
    const oracle::Mat dense = oracle::pauli_matrix(a.str()) * oracle::pauli_matrix(b.str());
    ASSERT_LT((dense - oracle::pauli_matrix(multiply(a, b).str())).norm(), 1e-12) << a.str() << " * " << b.str();
  }
}

TEST(pauli_string, multiply_across_word_boundary) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_pauli(130, rng);
    const auto b = random_pauli(130, rng);
    // Qubit-wise product of letters reproduces the packed result.
    auto expect = PauliString(130);
    int power = a.phase().power() + b.phase().power();
    for (std::size_t q = 0; q < 130; ++q) {
      auto la = PauliString::single(1, 0, a.letter(q));
      auto lb = PauliString::single(1, 0, b.letter(q));
      auto prod = la * lb;
      expect.set(q, prod.x(0), prod.z(0));
      power += prod.phase().power();
    }
    expect.set_phase(Phase(power));
    EXPECT_EQ(multiply(a, b), expect);
  }
}

TEST(pauli_string, hermitian_squares_to_identity) {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = random_pauli(1 + uniform_index(rng, 90), rng, true);
    const auto sq = p * p;
    EXPECT_TRUE(sq.is_identity());
    EXPECT_EQ(sq.phase().power(), 0);
  }
}

TEST(pauli_string, commutation) {
  EXPECT_TRUE(commutes(PauliString::parse("X"), PauliString::parse("X")));
  EXPECT_FALSE(commutes(PauliString::parse("X"), PauliString::parse("Z")));
  // A star and a plaquette overlapping on two bonds.
  EXPECT_TRUE(commutes(PauliString::parse("XXXXII"), PauliString::parse("IIZZZZ")));
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + uniform_index(rng, 5);
    const auto a = random_pauli(n, rng, true);
    const auto b = random_pauli(n, rng, true);
    const auto ma = oracle::pauli_matrix(a.str()), mb = oracle::pauli_matrix(b.str());
    EXPECT_EQ(commutes(a, b), (ma * mb - mb * ma).norm() < 1e-12);
  }
}

TEST(pauli_string, gate_conjugation_table) {
  const std::size_t site0[] = {0};
  const std::size_t pair01[] = {0, 1};
  EXPECT_EQ(conjugate_by_gate(PauliString::parse("X"), Gate::H, site0).str(), "+Z");
  EXPECT_EQ(conjugate_by_gate(PauliString::parse("Z"), Gate::H, site0).str(), "+X");
  EXPECT_EQ(conjugate_by_gate(PauliString::parse("Y"), Gate::H, site0).str(), "-Y");
  EXPECT_EQ(conjugate_by_gate(PauliString::parse("X"), Gate::S, site0).str(), "+Y");
  EXPECT_EQ(conjugate_by_gate(PauliString::parse("Z"), Gate::S, site0).str(), "+Z");
  EXPECT_EQ(conjugate_by_gate(PauliString::parse("Y"), Gate::S, site0).str(), "-X");
  EXPECT_EQ(conjugate_by_gate(PauliString::parse("XI"), Gate::CNOT, pair01).str(), "+XX");
  EXPECT_EQ(conjugate_by_gate(PauliString::parse("IX"), Gate::CNOT, pair01).str(), "+IX");
  EXPECT_EQ(conjugate_by_gate(PauliString::parse("ZI"), Gate::CNOT, pair01).str(), "+ZI");
  EXPECT_EQ(conjugate_by_gate(PauliString::parse("IZ"), Gate::CNOT, pair01).str(), "+ZZ");

  const std::size_t bad[] = {3};
  EXPECT_THROW(conjugate_by_gate(PauliString::parse("XX"), Gate::H, bad), IndexError);
  const std::size_t same[] = {1, 1};
  EXPECT_THROW(conjugate_by_gate(PauliString::parse("XX"), Gate::CNOT, same), IndexError);
}

TEST(pauli_string, gate_conjugation_matches_dense) {
  Rng rng(17);
  const oracle::Mat cnot = [] {
    oracle::Mat m = oracle::Mat::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
    return m;
  }();
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + int(uniform_index(rng, 3));
    const auto p = random_pauli(n, rng, true);
    const int g = int(uniform_index(rng, 3));
    const std::size_t a = uniform_index(rng, n);
    std::size_t b = uniform_index(rng, n - 1);
    if (b >= a) ++b;
    oracle::Mat u;
    PauliString q = p;
    if (g == 0) {
      u = oracle::embed(oracle::hadamard(), n, {int(a)});
      conjugate_by_gate_inplace(q, Gate::H, a);
    } else if (g == 1) {
      u = oracle::embed(oracle::phase_s(), n, {int(a)});
      conjugate_by_gate_inplace(q, Gate::S, a);
    } else {
      u = oracle::embed(cnot, n, {int(a), int(b)});
      conjugate_by_gate_inplace(q, Gate::CNOT, a, b);
    }
    const oracle::Mat dense = u * oracle::pauli_matrix(p.str()) * u.adjoint();
    ASSERT_LT((dense - oracle::pauli_matrix(q.str())).norm(), 1e-12) << p.str() << " gate " << g;
  }
}

TEST(pauli_string, conjugation_preserves_commutation) {
  Rng rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + uniform_index(rng, 10);
    auto a = random_pauli(n, rng, true);
    auto b = random_pauli(n, rng, true);
    const bool before = commutes(a, b);
    for (int k = 0; k < 5; ++k) {
      const auto g = static_cast<Gate>(uniform_index(rng, 3));
      const std::size_t s = uniform_index(rng, n);
      const std::size_t t = (s + 1 + uniform_index(rng, n - 1)) % n;
      conjugate_by_gate_inplace(a, g, s, t);
      conjugate_by_gate_inplace(b, g, s, t);
    }
    EXPECT_EQ(commutes(a, b), before);
  }
}

TEST(pauli_string, statevector_action) {
  Rng rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + int(uniform_index(rng, 5));
    const auto p = random_pauli(n, rng);
    const oracle::Vec psi = oracle::random_state(n, rng);
    oracle::Vec out(psi.size());
    apply_pauli(p, std::span<const cplx>(psi.data(), psi.size()), std::span<cplx>(out.data(), out.size()));
    EXPECT_LT((out - oracle::pauli_matrix(p.str()) * psi).norm(), 1e-12);
    const cplx e = pauli_expectation(p, std::span<const cplx>(psi.data(), psi.size()));
    EXPECT_LT(std::abs(e - psi.dot(oracle::pauli_matrix(p.str()) * psi)), 1e-12);
  }
}

TEST(pauli_sum, merges_and_drops) {
  PauliSum h(3);
  h.add(1.0, "XIZ");
  h.add(0.5, "-XIZ");
  h.add(2.0, "YYI");
  EXPECT_EQ(h.size(), 2u);
  EXPECT_DOUBLE_EQ(h.terms()[0].coeff, 0.5);
  h.add(-0.5, "XIZ");
  EXPECT_EQ(h.size(), 1u);
  EXPECT_EQ(h.terms()[0].string.str(), "+YYI");
  h.add(1e-15, "ZZZ");
  EXPECT_EQ(h.size(), 1u);
  EXPECT_THROW(h.add(1.0, "iXXX"), ArgumentError);
  EXPECT_THROW(h.add(1.0, "XX"), DimensionError);
}

TEST(pauli_sum, text_round_trip) {
  PauliSum h(4);
  h.add(-1.25, "ZZII");
  h.add(0.1, "-IXYI");
  h.add(3.0, "IIIZ");
  const auto back = PauliSum::parse(h.str());
  ASSERT_EQ(back.size(), h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    EXPECT_EQ(back.terms()[i].coeff, h.terms()[i].coeff);
    EXPECT_EQ(back.terms()[i].string, h.terms()[i].string);
  }
  EXPECT_NE(h.str().find("-0.10000000000000001\t+IXYI"), std::string::npos);
  EXPECT_THROW(PauliSum::parse("1.0 XX\n"), ArgumentError);
}
