#include "mbsim/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace mbsim {

namespace {

// Products of single-qubit Paulis: result letter and phase, indexed [a][b].
// Encodes I,X,Y,Z multiplication, e.g. X*Y = +iZ, Y*X = -iZ.
struct LetterProduct {
  Pauli letter;
  cplx phase;
};

LetterProduct letter_product(Pauli a, Pauli b) {
  static const cplx one{1.0, 0.0};
  static const cplx pi{0.0, 1.0};   // +i
  static const cplx mi{0.0, -1.0};  // -i
  static const LetterProduct table[4][4] = {
      {{Pauli::I, one}, {Pauli::X, one}, {Pauli::Y, one}, {Pauli::Z, one}},
      {{Pauli::X, one}, {Pauli::I, one}, {Pauli::Z, pi}, {Pauli::Y, mi}},
      {{Pauli::Y, one}, {Pauli::Z, mi}, {Pauli::I, one}, {Pauli::X, pi}},
      {{Pauli::Z, one}, {Pauli::Y, pi}, {Pauli::X, mi}, {Pauli::I, one}},
  };
  return table[static_cast<int>(a)][static_cast<int>(b)];
}

constexpr int kMaxDenseQubits = 12;

void check_dense_size(int n_qubits) {
  if (n_qubits < 1) {
    throw std::invalid_argument("operator must act on at least one qubit");
  }
  if (n_qubits > kMaxDenseQubits) {
    throw std::invalid_argument(
        "dense operator construction is capped at " +
        std::to_string(kMaxDenseQubits) + " qubits, got " +
        std::to_string(n_qubits));
  }
}

}  // namespace

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I:
      return 'I';
    case Pauli::X:
      return 'X';
    case Pauli::Y:
      return 'Y';
    case Pauli::Z:
      return 'Z';
  }
  throw std::logic_error("invalid Pauli enum value");
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I':
      return Pauli::I;
    case 'X':
      return Pauli::X;
    case 'Y':
      return Pauli::Y;
    case 'Z':
      return Pauli::Z;
    default:
      throw std::invalid_argument(std::string("invalid Pauli letter '") + c +
                                  "', expected one of I, X, Y, Z");
  }
}

bool PauliString::acts_on(int qubit) const {
  if (qubit < 0 || qubit >= n_qubits()) {
    throw std::out_of_range("qubit index out of range");
  }
  return letters[static_cast<size_t>(qubit)] != Pauli::I;
}

std::vector<int> PauliString::support() const {
  std::vector<int> out;
  for (int q = 0; q < n_qubits(); ++q) {
    if (letters[static_cast<size_t>(q)] != Pauli::I) out.push_back(q);
  }
  return out;
}

std::string PauliString::letters_str() const {
  std::string out;
  out.reserve(letters.size());
  for (Pauli p : letters) out.push_back(pauli_char(p));
  return out;
}

PauliString pauli_string(std::string_view letters, cplx coeff) {
  if (letters.empty()) {
    throw std::invalid_argument("Pauli string must not be empty");
  }
  PauliString s;
  s.coeff = coeff;
  s.letters.reserve(letters.size());
  for (char c : letters) s.letters.push_back(pauli_from_char(c));
  return s;
}

PauliString operator*(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("Pauli string product needs equal lengths");
  }
  PauliString out;
  out.coeff = a.coeff * b.coeff;
  out.letters.resize(a.letters.size());
  for (size_t q = 0; q < a.letters.size(); ++q) {
    LetterProduct p = letter_product(a.letters[q], b.letters[q]);
    out.letters[q] = p.letter;
    out.coeff *= p.phase;
  }
  return out;
}

bool commutes(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("commutes needs equal lengths");
  }
  int anticommuting_slots = 0;
  for (size_t q = 0; q < a.letters.size(); ++q) {
    const Pauli la = a.letters[q], lb = b.letters[q];
    if (la != Pauli::I && lb != Pauli::I && la != lb) ++anticommuting_slots;
  }
  return anticommuting_slots % 2 == 0;
}

PauliString operator*(cplx scale, const PauliString& s) {
  PauliString out = s;
  out.coeff *= scale;
  return out;
}

PauliString operator-(const PauliString& s) { return cplx{-1.0, 0.0} * s; }

int PauliSum::n_qubits() const {
  if (terms.empty()) {
    throw std::logic_error("empty Pauli sum has no qubit count");
  }
  return terms.front().n_qubits();
}

std::vector<int> PauliSum::support() const {
  std::vector<int> out;
  for (const PauliString& t : terms) {
    for (int q : t.support()) {
      if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

PauliSum pauli_sum(std::initializer_list<PauliString> terms) {
  PauliSum s;
  s.terms.assign(terms);
  for (const PauliString& t : s.terms) {
    if (t.n_qubits() != s.terms.begin()->n_qubits()) {
      throw std::invalid_argument("all terms of a Pauli sum need equal length");
    }
  }
  return s;
}

PauliSum operator+(const PauliSum& a, const PauliSum& b) {
  if (!a.terms.empty() && !b.terms.empty() && a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("Pauli sum addition needs equal lengths");
  }
  PauliSum out = a;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return out;
}

PauliSum operator-(const PauliSum& s) {
  PauliSum out = s;
  for (PauliString& t : out.terms) t.coeff = -t.coeff;
  return out;
}

PauliSum operator*(double scale, const PauliSum& s) {
  PauliSum out = s;
  for (PauliString& t : out.terms) t.coeff *= scale;
  return out;
}

PauliSum simplified(const PauliSum& s, double tol) {
  std::map<std::string, cplx> by_letters;
  for (const PauliString& t : s.terms) by_letters[t.letters_str()] += t.coeff;
  PauliSum out;
  for (const auto& [letters, coeff] : by_letters) {
    if (std::abs(coeff) > tol) out.terms.push_back(pauli_string(letters, coeff));
  }
  return out;
}

PauliString permute_qubits(const PauliString& s,
                           const std::vector<int>& perm) {
  const int n = s.n_qubits();
  if (static_cast<int>(perm.size()) != n) {
    throw std::invalid_argument("permutation length does not match qubits");
  }
  std::vector<bool> seen(n, false);
  PauliString out{s.coeff, std::vector<Pauli>(n, Pauli::I)};
  for (int q = 0; q < n; ++q) {
    if (perm[q] < 0 || perm[q] >= n || seen[perm[q]]) {
      throw std::invalid_argument("not a permutation of 0..n-1");
    }
    seen[perm[q]] = true;
    out.letters[perm[q]] = s.letters[q];
  }
  return out;
}

PauliSum permute_qubits(const PauliSum& s, const std::vector<int>& perm) {
  PauliSum out;
  out.terms.reserve(s.terms.size());
  for (const PauliString& t : s.terms) {
    out.terms.push_back(permute_qubits(t, perm));
  }
  return out;
}

PauliSum effective_commutator_hamiltonian(const PauliSum& h1,
                                          const PauliSum& h2) {
  const cplx half_mi{0.0, -0.5};  // -i/2
  PauliSum raw;
  for (const PauliString& a : h1.terms) {
    if (std::abs(a.coeff.imag()) > 1e-12) {
      throw std::invalid_argument("Hamiltonian coefficients must be real");
    }
    for (const PauliString& b : h2.terms) {
      if (std::abs(b.coeff.imag()) > 1e-12) {
        throw std::invalid_argument("Hamiltonian coefficients must be real");
      }
      raw.terms.push_back(half_mi * (a * b));
      raw.terms.push_back(cplx{0.0, 0.5} * (b * a));
    }
  }
  PauliSum out = simplified(raw);
  for (const PauliString& t : out.terms) {
    if (std::abs(t.coeff.imag()) > 1e-10) {
      throw std::logic_error(
          "effective commutator Hamiltonian has a non-real coefficient");
    }
  }
  return out;
}

Mat pauli_matrix(Pauli p) {
  Mat m(2, 2);
  const cplx i{0.0, 1.0};
  switch (p) {
    case Pauli::I:
      m << 1, 0, 0, 1;
      break;
    case Pauli::X:
      m << 0, 1, 1, 0;
      break;
    case Pauli::Y:
      m << 0, -i, i, 0;
      break;
    case Pauli::Z:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

Mat pauli_matrix(int index) {
  if (index < 0 || index > 3) {
    throw std::invalid_argument("pauli_matrix index must lie in 0..3");
  }
  return pauli_matrix(static_cast<Pauli>(index));
}

Mat operator_of(const PauliString& s) {
  check_dense_size(s.n_qubits());
  Mat out = pauli_matrix(s.letters[0]);
  for (size_t q = 1; q < s.letters.size(); ++q) {
    out = kron(out, pauli_matrix(s.letters[q]));
  }
  return s.coeff * out;
}

Mat operator_of(const PauliSum& s) {
  check_dense_size(s.n_qubits());
  const Eigen::Index d = Eigen::Index(1) << s.n_qubits();
  Mat out = Mat::Zero(d, d);
  for (const PauliString& t : s.terms) out += operator_of(t);
  return out;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Mat kron_all(const std::vector<Mat>& factors) {
  if (factors.empty()) {
    throw std::invalid_argument("kron_all needs at least one factor");
  }
  Mat out = factors.front();
  for (size_t k = 1; k < factors.size(); ++k) out = kron(out, factors[k]);
  return out;
}

Mat embed(int n_qubits, const std::vector<std::pair<int, Mat>>& ops) {
  check_dense_size(n_qubits);
  std::vector<Mat> factors(static_cast<size_t>(n_qubits),
                           Mat::Identity(2, 2));
  std::vector<bool> used(static_cast<size_t>(n_qubits), false);
  for (const auto& [qubit, op] : ops) {
    if (qubit < 0 || qubit >= n_qubits) {
      throw std::out_of_range("embed: qubit index out of range");
    }
    if (op.rows() != 2 || op.cols() != 2) {
      throw std::invalid_argument("embed: operators must be 2x2");
    }
    if (used[static_cast<size_t>(qubit)]) {
      throw std::invalid_argument("embed: duplicate qubit slot");
    }
    used[static_cast<size_t>(qubit)] = true;
    factors[static_cast<size_t>(qubit)] = op;
  }
  return kron_all(factors);
}

Mat matrix_exp(const Mat& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("matrix_exp needs a square matrix");
  }
  if (m.rows() > 4096) {
    throw std::invalid_argument("matrix_exp is capped at dimension 4096");
  }
  Mat out = m.exp();
  if (!out.allFinite()) {
    throw std::runtime_error("matrix_exp produced non-finite entries");
  }
  return out;
}

Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

Mat dm(const Vec& v) { return v * v.adjoint(); }

bool approx_equal(const Mat& a, const Mat& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

bool approx_equal_up_to_phase(const Mat& a, const Mat& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  // Align the phase on the largest entry of a.
  Eigen::Index imax = 0, jmax = 0;
  a.cwiseAbs().maxCoeff(&imax, &jmax);
  if (std::abs(a(imax, jmax)) < tol) return approx_equal(a, b, tol);
  if (std::abs(b(imax, jmax)) < tol * tol) return false;
  cplx phase = a(imax, jmax) / b(imax, jmax);
  phase /= std::abs(phase);
  return approx_equal(a, phase * b, tol);
}

}  // namespace mbsim
