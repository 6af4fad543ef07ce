#pragma once

// Pauli-string algebra and small dense-operator utilities.
//
// Conventions used throughout the library:
//  * qubit 0 is the most significant tensor factor, i.e. the leftmost letter
//    of a string like "ZXI" acts on qubit 0 and computational basis index
//    b = b_0 b_1 ... b_{n-1} reads qubit 0 first;
//  * physical evolution under a Hamiltonian H for time t is exp(-i H t)
//    (hbar = 1);
//  * Pauli products keep track of their phase exactly, e.g. X*Y = iZ.

#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mbsim/types.hpp"

namespace mbsim {

enum class Pauli : unsigned char { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

// A scalar multiple of a tensor product of single-qubit Pauli operators.
struct PauliString {
  cplx coeff{1.0, 0.0};
  std::vector<Pauli> letters;

  int n_qubits() const { return static_cast<int>(letters.size()); }
  bool acts_on(int qubit) const;
  // Qubits on which the string differs from the identity, ascending.
  std::vector<int> support() const;
  std::string letters_str() const;
};

// Parse "ZXI" style strings; the optional coefficient multiplies the result.
PauliString pauli_string(std::string_view letters, cplx coeff = cplx{1.0, 0.0});

// Exact product with phase bookkeeping; operands must have equal length.
PauliString operator*(const PauliString& a, const PauliString& b);
// True when the two strings commute as operators (even number of positions
// where both act non-trivially with different letters).
bool commutes(const PauliString& a, const PauliString& b);
PauliString operator*(cplx scale, const PauliString& s);
PauliString operator-(const PauliString& s);

// A real-linear combination of Pauli strings (Hamiltonian-style operator).
struct PauliSum {
  std::vector<PauliString> terms;

  int n_qubits() const;
  std::vector<int> support() const;
};

PauliSum pauli_sum(std::initializer_list<PauliString> terms);
PauliSum operator+(const PauliSum& a, const PauliSum& b);
PauliSum operator-(const PauliSum& s);
PauliSum operator*(double scale, const PauliSum& s);

// Combine like terms and drop coefficients below `tol` in magnitude.
PauliSum simplified(const PauliSum& s, double tol = 1e-14);

// Relabel qubits: the letter on qubit q moves to qubit perm[q].  `perm` must
// be a permutation of 0..n-1 for the operand's qubit count.
PauliString permute_qubits(const PauliString& s, const std::vector<int>& perm);
PauliSum permute_qubits(const PauliSum& s, const std::vector<int>& perm);

// The effective Hamiltonian -i/2 [h1, h2] synthesised by a commutator
// sequence.  Both inputs must have real coefficients; the result is Hermitian
// and therefore has real coefficients again (checked).
PauliSum effective_commutator_hamiltonian(const PauliSum& h1,
                                          const PauliSum& h2);

// Dense 2x2 matrix of a single Pauli letter; the integer overload uses the
// sigma_0..sigma_3 = I, X, Y, Z numbering.
Mat pauli_matrix(Pauli p);
Mat pauli_matrix(int index);

// Dense matrix of a string/sum; dimension 2^n with qubit 0 most significant.
Mat operator_of(const PauliString& s);
Mat operator_of(const PauliSum& s);

// Kronecker product in the "first factor most significant" convention:
// kron(A, B)[i*rows(B)+k, j*cols(B)+l] = A(i,j) * B(k,l).
Mat kron(const Mat& a, const Mat& b);
Mat kron_all(const std::vector<Mat>& factors);

// Identity on n qubits with the listed single-qubit operators substituted at
// the given qubit slots (each op must be 2x2; slots must be distinct).
Mat embed(int n_qubits, const std::vector<std::pair<int, Mat>>& ops);

// Matrix exponential (Pade, via Eigen).  Guards against huge inputs and
// non-finite results.
Mat matrix_exp(const Mat& m);

Mat commutator(const Mat& a, const Mat& b);

// Outer product |v><v| (no normalisation).
Mat dm(const Vec& v);

bool approx_equal(const Mat& a, const Mat& b, double tol = 1e-10);
// Equality after aligning a global phase on `b` (useful for unitaries).
bool approx_equal_up_to_phase(const Mat& a, const Mat& b, double tol = 1e-10);

}  // namespace mbsim
