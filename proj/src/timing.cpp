#include "mbsim/timing.hpp"

#include <cmath>
#include <stdexcept>

#include "mbsim/rng.hpp"

namespace mbsim {

namespace {

void check_involutory(const PauliString& h) {
  if (std::abs(h.coeff - cplx{1.0, 0.0}) > 1e-12) {
    throw std::invalid_argument(
        "timing term strings must have coefficient 1 (scale lives in omega)");
  }
}

struct DenseTerms {
  Eigen::Index dim = 0;
  std::vector<double> omegas;
  std::vector<Mat> ops;
};

DenseTerms dense_terms(const TimingSpec& spec) {
  DenseTerms d;
  d.dim = Eigen::Index(1) << spec.terms.front().h.n_qubits();
  for (const TimingTerm& term : spec.terms) {
    d.omegas.push_back(term.omega);
    d.ops.push_back(operator_of(term.h));
  }
  return d;
}

// Extra rotation for timing error delta: prod_j exp(-i omega_j delta h_j),
// each factor expanded as cos - i sin because h_j is involutory.
Mat error_unitary(const DenseTerms& terms, double delta) {
  Mat u = Mat::Identity(terms.dim, terms.dim);
  for (size_t j = 0; j < terms.ops.size(); ++j) {
    const double angle = terms.omegas[j] * delta;
    u = (std::cos(angle) * Mat::Identity(terms.dim, terms.dim) +
         cplx{0.0, -std::sin(angle)} * terms.ops[j]) *
        u;
  }
  return u;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double out = 1.0;
  for (int j = 1; j <= k; ++j) {
    out *= static_cast<double>(n - k + j) / static_cast<double>(j);
  }
  return out;
}

constexpr int kQuadratureNodes = 64;

}  // namespace

void check_timing_spec(const TimingSpec& spec) {
  if (spec.sigma < 0.0) {
    throw std::invalid_argument("timing sigma must be >= 0");
  }
  if (spec.terms.empty()) {
    throw std::invalid_argument("timing spec needs at least one term");
  }
  const int n = spec.terms.front().h.n_qubits();
  for (const TimingTerm& term : spec.terms) {
    check_involutory(term.h);
    if (term.h.n_qubits() != n) {
      throw std::invalid_argument("timing terms must share one register");
    }
  }
  for (size_t a = 0; a < spec.terms.size(); ++a) {
    for (size_t b = a + 1; b < spec.terms.size(); ++b) {
      if (!commutes(spec.terms[a].h, spec.terms[b].h)) {
        throw std::invalid_argument(
            "timing terms must commute pairwise (" +
            spec.terms[a].h.letters_str() + " vs " +
            spec.terms[b].h.letters_str() + ")");
      }
    }
  }
}

std::pair<RVec, RVec> gauss_hermite(int n_nodes) {
  if (n_nodes < 1) throw std::invalid_argument("need at least one node");
  // Golub-Welsch: eigen-decompose the symmetric tridiagonal Jacobi matrix
  // with off-diagonal sqrt(k/2); weights are sqrt(pi) * (first component)^2.
  RMat jacobi = RMat::Zero(n_nodes, n_nodes);
  for (int k = 1; k < n_nodes; ++k) {
    const double off = std::sqrt(static_cast<double>(k) / 2.0);
    jacobi(k - 1, k) = off;
    jacobi(k, k - 1) = off;
  }
  Eigen::SelfAdjointEigenSolver<RMat> es(jacobi);
  RVec nodes = es.eigenvalues();
  RVec weights(n_nodes);
  for (int k = 0; k < n_nodes; ++k) {
    const double v0 = es.eigenvectors()(0, k);
    weights(k) = std::sqrt(kPi) * v0 * v0;
  }
  return {nodes, weights};
}

Channel timing_channel_unitary(double omega, const PauliString& h,
                               double sigma) {
  check_involutory(h);
  if (sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");
  const double q = std::exp(-2.0 * sigma * sigma * omega * omega);
  return correlated_pauli_channel(h, q);
}

Channel timing_channel_commuting_sum(const TimingSpec& spec) {
  check_timing_spec(spec);
  const auto [nodes, weights] = gauss_hermite(kQuadratureNodes);
  const DenseTerms terms = dense_terms(spec);
  Channel e;
  e.dim = static_cast<int>(terms.dim);
  e.super = Mat::Zero(terms.dim * terms.dim, terms.dim * terms.dim);
  const double norm = 1.0 / std::sqrt(kPi);
  for (int k = 0; k < kQuadratureNodes; ++k) {
    const double delta = std::sqrt(2.0) * spec.sigma * nodes(k);
    const Mat u = error_unitary(terms, delta);
    e.super += (weights(k) * norm) * kron(u.conjugate(), u);
  }
  return e;
}

Channel independent_timing_channel(const TimingSpec& spec) {
  check_timing_spec(spec);
  Channel e = timing_channel_unitary(spec.terms.front().omega,
                                     spec.terms.front().h, spec.sigma);
  for (size_t j = 1; j < spec.terms.size(); ++j) {
    e = compose(timing_channel_unitary(spec.terms[j].omega, spec.terms[j].h,
                                       spec.sigma),
                e);
  }
  return e;
}

double timing_fidelity_lower_bound(int n_terms, double omega, double sigma) {
  if (n_terms < 1) throw std::invalid_argument("n_terms must be >= 1");
  auto q_pow = [&](int m) {
    return std::exp(-2.0 * static_cast<double>(m) * m * sigma * sigma *
                    omega * omega);
  };
  double total = binomial(2 * n_terms, n_terms) / std::pow(4.0, n_terms);
  for (int k = 0; k < n_terms; ++k) {
    total += binomial(2 * n_terms, k) / std::pow(2.0, 2 * n_terms - 1) *
             q_pow(n_terms - k);
  }
  return total;
}

Channel mc_timing_channel(const TimingSpec& spec, long long samples,
                          std::uint64_t seed) {
  check_timing_spec(spec);
  if (samples < 1000) {
    throw std::invalid_argument("Monte-Carlo needs at least 1000 samples");
  }
  Rng rng(seed);
  const DenseTerms terms = dense_terms(spec);
  Channel e;
  e.dim = static_cast<int>(terms.dim);
  e.super = Mat::Zero(terms.dim * terms.dim, terms.dim * terms.dim);
  for (long long k = 0; k < samples; ++k) {
    const double delta = spec.sigma * rng.normal();
    const Mat u = error_unitary(terms, delta);
    e.super += kron(u.conjugate(), u);
  }
  e.super /= static_cast<double>(samples);
  return e;
}

}  // namespace mbsim
