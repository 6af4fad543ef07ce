#include "mbsim/purification.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mbsim/metrics.hpp"
#include "mbsim/pauli.hpp"
#include "mbsim/teleport.hpp"

namespace mbsim {
namespace {

// Syndrome masks flipped by a single-qubit error on the star graph state:
// Z_j flips qubit j's own syndrome bit; X_j flips the syndrome bits of the
// neighbours of j (all leaves for the centre, the centre for a leaf).
struct FlipMasks {
  std::vector<int> z;
  std::vector<int> x;
};

FlipMasks flip_masks(int n) {
  const int nq = n + 1;
  FlipMasks m;
  m.z.resize(nq);
  m.x.resize(nq);
  int leaf_bits = 0;
  for (int k = 0; k < n; ++k) leaf_bits |= 1 << (nq - 1 - k);
  const int centre_bit = 1 << (nq - 1 - n);
  for (int j = 0; j < nq; ++j) {
    m.z[j] = 1 << (nq - 1 - j);
    m.x[j] = (j == n) ? leaf_bits : centre_bit;
  }
  return m;
}

// Depolarizing channel on qubit j in coefficient space: the X/Y/Z error
// branches each permute the syndrome index by the corresponding flip mask.
RVec coeff_depolarize(const RVec& lam, const FlipMasks& m, int j, double p) {
  const int dim = static_cast<int>(lam.size());
  const int mz = m.z[j];
  const int mx = m.x[j];
  const int my = mz ^ mx;
  RVec out(dim);
  for (int i = 0; i < dim; ++i) {
    out(i) = (1.0 + 3.0 * p) / 4.0 * lam(i) +
             (1.0 - p) / 4.0 * (lam(i ^ mz) + lam(i ^ mx) + lam(i ^ my));
  }
  return out;
}

RVec coeff_flip(const RVec& lam, int mask, double prob) {
  const int dim = static_cast<int>(lam.size());
  RVec out(dim);
  for (int i = 0; i < dim; ++i) {
    out(i) = (1.0 - prob) * lam(i) + prob * lam(i ^ mask);
  }
  return out;
}

bool in_class_a(PurifySub sub, int j, int n) {
  return sub == PurifySub::P1 ? j == n : j < n;
}

// One recurrence round on unnormalised coefficient vectors.  Copy b is the
// one measured out.  Returns the unnormalised output and the success
// probability (its sum).
std::pair<RVec, double> coeff_round_raw(RVec a, RVec b, int n, PurifySub sub,
                                        double p_l) {
  const int nq = n + 1;
  const int dim = 1 << nq;
  const FlipMasks masks = flip_masks(n);
  if (p_l < 1.0) {
    for (int j = 0; j < nq; ++j) {
      a = coeff_depolarize(a, masks, j, p_l);
      b = coeff_depolarize(b, masks, j, p_l);
    }
    const double perr = (1.0 - p_l) / 2.0;
    for (int j = 0; j < nq; ++j) {
      // sigma_z measurement corrupted by X errors and vice versa.
      const int mask = in_class_a(sub, j, n) ? masks.x[j] : masks.z[j];
      b = coeff_flip(b, mask, perr);
    }
  }
  int mask_a = 0;
  for (int j = 0; j < nq; ++j) {
    if (in_class_a(sub, j, n)) mask_a |= 1 << (nq - 1 - j);
  }
  // Class-A syndromes XOR-convolve, class-B syndromes must agree.
  RVec out = RVec::Zero(dim);
  for (int mu = 0; mu < dim; ++mu) {
    const int mu_a = mu & mask_a;
    const int mu_b = mu & ~mask_a & (dim - 1);
    double s = 0.0;
    int nu = mask_a;
    while (true) {
      s += a(mu_b | nu) * b(mu_b | (nu ^ mu_a));
      if (nu == 0) break;
      nu = (nu - 1) & mask_a;
    }
    out(mu) = s;
  }
  return {out, out.sum()};
}

int leaves_from_dim(Eigen::Index dim, const char* what) {
  if (dim < 4 || (dim & (dim - 1)) != 0) {
    throw std::invalid_argument(std::string(what) +
                                ": dimension must be 2^(n+1) with n >= 1");
  }
  int nq = 0;
  while ((Eigen::Index{1} << nq) < dim) ++nq;
  return nq - 1;
}

Mat depolarize_dm(const Mat& rho, int nq, int q, double p) {
  Mat out = p * rho;
  for (int letter = 1; letter <= 3; ++letter) {
    const Mat op = embed(nq, {{q, pauli_matrix(letter)}});
    out += (1.0 - p) / 4.0 * (op * rho * op.adjoint());
  }
  out += (1.0 - p) / 4.0 * rho;
  return out;
}

}  // namespace

GhzDiagonalState ghz_diagonal_from_coeffs(int n, RVec coeffs) {
  if (n < 1 || n > 10) {
    throw std::invalid_argument("ghz_diagonal_from_coeffs: need 1 <= n <= 10");
  }
  const int dim = 1 << (n + 1);
  if (coeffs.size() != dim) {
    throw std::invalid_argument(
        "ghz_diagonal_from_coeffs: coefficient vector must have size 2^(n+1)");
  }
  double sum = 0.0;
  for (int i = 0; i < dim; ++i) {
    if (coeffs(i) < -1e-12) {
      throw std::invalid_argument(
          "ghz_diagonal_from_coeffs: negative coefficient");
    }
    coeffs(i) = std::max(coeffs(i), 0.0);
    sum += coeffs(i);
  }
  if (sum <= 0.0) {
    throw std::invalid_argument("ghz_diagonal_from_coeffs: zero state");
  }
  coeffs /= sum;
  return {n + 1, std::move(coeffs)};
}

GhzDiagonalState ghz_syndrome_mixture(int n, double p0) {
  if (p0 < 0.0 || p0 > 1.0) {
    throw std::invalid_argument("ghz_syndrome_mixture: need 0 <= p0 <= 1");
  }
  const int dim = 1 << (n + 1);
  RVec coeffs = RVec::Constant(dim, (1.0 - p0) / (dim - 1));
  coeffs(0) = p0;
  return ghz_diagonal_from_coeffs(n, std::move(coeffs));
}

Mat graph_basis_matrix(int n) {
  const Vec g = star_resource_vector(n);
  const int dim = static_cast<int>(g.size());
  Mat b(dim, dim);
  for (int mu = 0; mu < dim; ++mu) {
    for (int i = 0; i < dim; ++i) {
      const double sign =
          (std::popcount(static_cast<unsigned>(i & mu)) & 1) ? -1.0 : 1.0;
      b(i, mu) = sign * g(i);
    }
  }
  return b;
}

GhzDiagonalState twirl_to_ghz_diagonal(const Mat& rho) {
  if (rho.rows() != rho.cols()) {
    throw std::invalid_argument("twirl_to_ghz_diagonal: matrix must be square");
  }
  const int n = leaves_from_dim(rho.rows(), "twirl_to_ghz_diagonal");
  if (n > 8) {
    throw std::invalid_argument("twirl_to_ghz_diagonal: need n <= 8");
  }
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-8) {
    throw std::invalid_argument("twirl_to_ghz_diagonal: matrix not hermitian");
  }
  const Mat b = graph_basis_matrix(n);
  const int dim = static_cast<int>(rho.rows());
  RVec coeffs(dim);
  for (int mu = 0; mu < dim; ++mu) {
    coeffs(mu) = (b.col(mu).adjoint() * rho * b.col(mu))(0).real();
  }
  return ghz_diagonal_from_coeffs(n, std::move(coeffs));
}

DensityMatrix state_of_ghz_diagonal(const GhzDiagonalState& s) {
  const int n = s.n_leaves();
  if (n < 1 || n > 8 || s.coeffs.size() != (1 << s.n_plus_1)) {
    throw std::invalid_argument("state_of_ghz_diagonal: malformed state");
  }
  const Mat b = graph_basis_matrix(n);
  return b * s.coeffs.asDiagonal() * b.adjoint();
}

PurifyRoundResult purify_round(const GhzDiagonalState& a,
                               const GhzDiagonalState& b, PurifySub sub,
                               double p_l) {
  if (a.n_plus_1 != b.n_plus_1) {
    throw std::invalid_argument("purify_round: copies must have equal size");
  }
  if (p_l < 0.0 || p_l > 1.0) {
    throw std::invalid_argument("purify_round: need 0 <= p_l <= 1");
  }
  const int n = a.n_leaves();
  if (n < 1 || a.coeffs.size() != (1 << a.n_plus_1) ||
      b.coeffs.size() != (1 << b.n_plus_1)) {
    throw std::invalid_argument("purify_round: malformed state");
  }
  auto [out, pr] = coeff_round_raw(a.coeffs, b.coeffs, n, sub, p_l);
  if (pr <= 0.0) {
    throw std::runtime_error("purify_round: post-selection never succeeds");
  }
  return {ghz_diagonal_from_coeffs(n, std::move(out)), pr};
}

PurifyFixpointResult purify_fixpoint(const GhzDiagonalState& initial,
                                     double p_l, double tol, int max_rounds) {
  if (p_l < 0.0 || p_l > 1.0) {
    throw std::invalid_argument("purify_fixpoint: need 0 <= p_l <= 1");
  }
  if (max_rounds < 1) {
    throw std::invalid_argument("purify_fixpoint: need max_rounds >= 1");
  }
  const int n = initial.n_leaves();
  GhzDiagonalState cur = ghz_diagonal_from_coeffs(n, initial.coeffs);
  double prev_f = cur.fidelity();
  int decreasing = 0;
  for (int r = 0; r < max_rounds; ++r) {
    const PurifySub sub = (r % 2 == 0) ? PurifySub::P1 : PurifySub::P2;
    auto [out, pr] = coeff_round_raw(cur.coeffs, cur.coeffs, n, sub, p_l);
    if (pr <= 0.0) return {cur, r, true};
    cur.coeffs = out / pr;
    const double f = cur.fidelity();
    if (f < prev_f - 1e-15) {
      if (++decreasing >= 5) return {cur, r + 1, true};
    } else {
      decreasing = 0;
    }
    // Converged once a full P1+P2 pair leaves the fidelity unchanged.
    if (std::abs(f - prev_f) < tol && r % 2 == 1) return {cur, r + 1, false};
    prev_f = f;
  }
  return {cur, max_rounds, false};
}

double purified_teleport_fidelity(int n, double p_l, double p_0, double alpha) {
  if (n < 2 || n > 4) {
    throw std::invalid_argument("purified_teleport_fidelity: need 2 <= n <= 4");
  }
  if (p_l <= 0.0 || p_l > 1.0 || p_0 <= 0.0 || p_0 > 1.0) {
    throw std::invalid_argument(
        "purified_teleport_fidelity: need p_l, p_0 in (0, 1]");
  }
  const PurifyFixpointResult fp =
      purify_fixpoint(ghz_syndrome_mixture(n, p_0), p_l);
  if (fp.diverged) {
    throw std::runtime_error(
        "purified_teleport_fidelity: resource does not purify at p_l = " +
        std::to_string(p_l));
  }
  // Couple through noisy gates: depolarizing p_l on each resource leaf and on
  // each stored input qubit; measurements and corrections are noiseless.
  Mat resource = state_of_ghz_diagonal(fp.state);
  for (int k = 0; k < n; ++k) {
    resource = depolarize_dm(resource, n + 1, k, p_l);
  }
  const Channel tel = channel_from_kraus(teleport_kraus(n, alpha, resource));
  Channel input_noise = depolarizing_channel(0, p_l, n);
  for (int k = 1; k < n; ++k) {
    input_noise = compose(depolarizing_channel(k, p_l, n), input_noise);
  }
  return j_fidelity(compose(tel, input_noise), ghz_target_unitary(n, alpha));
}

}  // namespace mbsim
