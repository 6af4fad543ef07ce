#include <cmath>
#include <complex>

#include "doctest.h"
#include "mbsim/pauli.hpp"

using namespace mbsim;

TEST_SUITE("pauli") {

TEST_CASE("single-letter products carry exact phases") {
  const PauliString x = pauli_string("X");
  const PauliString y = pauli_string("Y");
  const PauliString z = pauli_string("Z");

  PauliString xy = x * y;
  CHECK(xy.letters_str() == "Z");
  CHECK(xy.coeff == cplx{0.0, 1.0});

  PauliString yx = y * x;
  CHECK(yx.letters_str() == "Z");
  CHECK(yx.coeff == cplx{0.0, -1.0});

  PauliString zx = z * x;
  CHECK(zx.letters_str() == "Y");
  CHECK(zx.coeff == cplx{0.0, 1.0});

  for (const PauliString& s : {x, y, z}) {
    PauliString sq = s * s;
    CHECK(sq.letters_str() == "I");
    CHECK(sq.coeff == cplx{1.0, 0.0});
  }
}

TEST_CASE("symbolic products match dense products on random strings") {
  // Deterministic pseudo-random letter streams over up to 5 qubits.
  unsigned state = 12345;
  auto next = [&state]() {
    state = state * 1664525u + 1013904223u;
    return (state >> 16) & 3u;
  };
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(next() % 5u);
    std::string sa, sb;
    for (int q = 0; q < n; ++q) {
      sa.push_back("IXYZ"[next()]);
      sb.push_back("IXYZ"[next()]);
    }
    const PauliString a = pauli_string(sa), b = pauli_string(sb);
    const Mat lhs = operator_of(a * b);
    const Mat rhs = operator_of(a) * operator_of(b);
    CHECK(approx_equal(lhs, rhs, 1e-12));
  }
}

TEST_CASE("pauli_matrix integer numbering") {
  CHECK(approx_equal(pauli_matrix(0), Mat::Identity(2, 2)));
  Mat z(2, 2);
  z << 1, 0, 0, -1;
  CHECK(approx_equal(pauli_matrix(3), z));
  // sigma_1 sigma_2 = i sigma_3.
  CHECK(approx_equal(pauli_matrix(1) * pauli_matrix(2),
                     cplx{0.0, 1.0} * pauli_matrix(3), 1e-14));
  CHECK_THROWS_AS(pauli_matrix(4), std::invalid_argument);
}

TEST_CASE("string_to_operator conventions") {
  // Qubit 0 is the most significant factor: "ZI" = diag(1,1,-1,-1).
  Mat zi = operator_of(pauli_string("ZI"));
  CHECK(zi(0, 0) == cplx{1.0, 0.0});
  CHECK(zi(3, 3) == cplx{-1.0, 0.0});

  Mat zz = operator_of(pauli_string("ZZ"));
  for (int b = 0; b < 4; ++b) {
    const int parity = ((b >> 1) ^ b) & 1;
    CHECK(zz(b, b) == cplx{parity ? -1.0 : 1.0, 0.0});
  }

  Mat zzz = operator_of(pauli_string("ZZZ"));
  for (int b = 0; b < 8; ++b) {
    int parity = ((b >> 2) ^ (b >> 1) ^ b) & 1;
    CHECK(zzz(b, b) == cplx{parity ? -1.0 : 1.0, 0.0});
  }
}

TEST_CASE("commutator of embedded two-body terms gives the three-body target") {
  const Mat h1 = operator_of(pauli_string("ZXI"));
  const Mat h2 = operator_of(pauli_string("IYZ"));
  const Mat comm = commutator(h1, h2);
  const Mat want = cplx{0.0, 2.0} * operator_of(pauli_string("ZZZ"));
  CHECK(approx_equal(comm, want, 1e-12));

  CHECK(approx_equal(commutator(h1, h1), Mat::Zero(8, 8), 1e-14));
}

TEST_CASE("effective commutator Hamiltonian is -i/2 [h1, h2]") {
  const PauliSum h1 = pauli_sum({pauli_string("ZXI")});
  const PauliSum h2 = pauli_sum({pauli_string("IYZ")});
  const PauliSum eff = effective_commutator_hamiltonian(h1, h2);
  REQUIRE(eff.terms.size() == 1);
  CHECK(eff.terms[0].letters_str() == "ZZZ");
  CHECK(std::abs(eff.terms[0].coeff - cplx{1.0, 0.0}) < 1e-14);

  // Dense cross-check.
  const Mat dense = cplx{0.0, -0.5} *
                    commutator(operator_of(h1), operator_of(h2));
  CHECK(approx_equal(operator_of(eff), dense, 1e-12));

  // Five-qubit nested-building blocks.
  const PauliSum hbc = pauli_sum({pauli_string("IYYII")});
  const PauliSum hab = pauli_sum({pauli_string("ZXIII")});
  const PauliSum abc = effective_commutator_hamiltonian(hbc, hab);
  REQUIRE(abc.terms.size() == 1);
  CHECK(abc.terms[0].letters_str() == "ZZYII");
  CHECK(std::abs(abc.terms[0].coeff - cplx{-1.0, 0.0}) < 1e-14);
}

TEST_CASE("embed places single-qubit operators at the right slots") {
  const Mat got = embed(3, {{1, pauli_matrix(Pauli::X)}});
  CHECK(approx_equal(got, operator_of(pauli_string("IXI")), 1e-14));

  const Mat two = embed(3, {{0, pauli_matrix(Pauli::Z)},
                            {2, pauli_matrix(Pauli::Y)}});
  CHECK(approx_equal(two, operator_of(pauli_string("ZIY")), 1e-14));

  CHECK_THROWS_AS(embed(2, {{0, pauli_matrix(Pauli::X)},
                            {0, pauli_matrix(Pauli::Z)}}),
                  std::invalid_argument);
}

TEST_CASE("matrix_exp basics") {
  CHECK(approx_equal(matrix_exp(Mat::Zero(4, 4)), Mat::Identity(4, 4), 1e-14));

  const double theta = 0.3;
  const Mat x = pauli_matrix(Pauli::X);
  const Mat got = matrix_exp(cplx{0.0, -theta} * x);
  const Mat want = std::cos(theta) * Mat::Identity(2, 2) +
                   cplx{0.0, -std::sin(theta)} * x;
  CHECK(approx_equal(got, want, 1e-12));

  // exp(A) exp(-A) = 1 for a moderately sized anti-Hermitian A.
  const Mat a = cplx{0.0, -2.5} * operator_of(pauli_string("ZZ"));
  CHECK(approx_equal(matrix_exp(a) * matrix_exp(-a), Mat::Identity(4, 4),
                     1e-10));

  // Commuting generators factorize.
  const Mat b = cplx{0.0, 1.3} * operator_of(pauli_string("ZI"));
  CHECK(approx_equal(matrix_exp(a + b), matrix_exp(a) * matrix_exp(b), 1e-10));
}

TEST_CASE("phase gate from a ZZ evolution plus local rotations") {
  // exp(-i pi/4 ZZ) with local exp(+i pi/4 Z) on both qubits equals
  // diag(1,1,1,-1) up to a global phase.
  const Mat u_int = matrix_exp(cplx{0.0, -kPi / 4.0} *
                               operator_of(pauli_string("ZZ")));
  const Mat local = matrix_exp(cplx{0.0, kPi / 4.0} *
                               (operator_of(pauli_string("ZI")) +
                                operator_of(pauli_string("IZ"))));
  Mat cz = Mat::Identity(4, 4);
  cz(3, 3) = -1.0;
  CHECK(approx_equal_up_to_phase(local * u_int, cz, 1e-12));
}

TEST_CASE("pauli sum support and simplification") {
  PauliSum s = pauli_sum({pauli_string("ZXI"), pauli_string("IYZ"),
                          pauli_string("ZXI", cplx{-1.0, 0.0})});
  const PauliSum reduced = simplified(s);
  REQUIRE(reduced.terms.size() == 1);
  CHECK(reduced.terms[0].letters_str() == "IYZ");

  CHECK(s.support() == std::vector<int>{0, 1, 2});
  CHECK(pauli_string("IYZ").support() == std::vector<int>{1, 2});
}

}  // TEST_SUITE
