#include "mbsim/teleport.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "mbsim/graph.hpp"

namespace mbsim {

namespace {

constexpr double kEigTol = 1e-14;  // resource eigencomponent cutoff

int popcount_parity(unsigned long long x) {
  return static_cast<int>(std::popcount(x) & 1ULL);
}

Vec plus_state(int n_qubits) {
  const long dim = 1L << n_qubits;
  return Vec::Constant(dim, cplx{1.0 / std::sqrt(static_cast<double>(dim)), 0.0});
}

Mat hadamard_n(int n_qubits) {
  Mat h(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  h << r, r, r, -r;
  std::vector<Mat> factors(n_qubits, h);
  return kron_all(factors);
}

// rho -> w rho + (1 - w) P rho P for a self-inverse Pauli string P.
Mat pauli_mix(const Mat& rho, const PauliString& p, double w) {
  const Mat pm = operator_of(p);
  return w * rho + (1.0 - w) * (pm * rho * pm);
}

PauliString single_letter(int n_qubits, int qubit, Pauli letter) {
  PauliString s;
  s.letters.assign(n_qubits, Pauli::I);
  s.letters[qubit] = letter;
  return s;
}

// Depolarizing with parameter p on one qubit of the register:
// rho -> p rho + (1 - p)/4 sum_{P in I,X,Y,Z} P rho P.
Mat depolarize(const Mat& rho, int n_qubits, int qubit, double p) {
  Mat acc = rho;
  for (Pauli letter : {Pauli::X, Pauli::Y, Pauli::Z}) {
    const Mat pm = operator_of(single_letter(n_qubits, qubit, letter));
    acc += pm * rho * pm;
  }
  return p * rho + (1.0 - p) * 0.25 * acc;
}

void check_state_dims(const Mat& rho, int n_qubits, const char* who) {
  const long dim = 1L << n_qubits;
  if (rho.rows() != dim || rho.cols() != dim) {
    throw std::invalid_argument(std::string(who) + ": state must be " +
                                std::to_string(dim) + "x" + std::to_string(dim) +
                                ", got " + std::to_string(rho.rows()) + "x" +
                                std::to_string(rho.cols()));
  }
}

// The four Bell-index Pauli fixups of a Bell measurement outcome (i1, i2).
const Mat& bell_sigma(int i1, int i2) {
  static const Mat sigmas[2][2] = {
      {pauli_matrix(Pauli::I), pauli_matrix(Pauli::Z)},
      {pauli_matrix(Pauli::Y), pauli_matrix(Pauli::X)}};
  return sigmas[i1][i2];
}

Pauli bell_sigma_letter(int i1, int i2) {
  static const Pauli letters[2][2] = {{Pauli::I, Pauli::Z},
                                      {Pauli::Y, Pauli::X}};
  return letters[i1][i2];
}

struct RawBranch {
  std::vector<int> labels;
  Mat out;  // unnormalised: trace equals the branch probability
  std::vector<PauliString> corrections;
  bool success = false;
};

// All 4^n Bell branches with unnormalised conditional outputs.
std::vector<RawBranch> weak_round_raw(double alpha, const Mat& rho, int n) {
  if (n < 2 || n > 4) {
    throw std::invalid_argument("weak_protocol_round: n must be in [2, 4]");
  }
  check_state_dims(rho, n, "weak_protocol_round");
  const int d = 1 << n;
  const Mat u = ghz_target_unitary(n, alpha);
  const double inv_norm = 1.0 / std::sqrt(static_cast<double>(d) *
                                          std::pow(2.0, n));

  std::vector<RawBranch> branches;
  branches.reserve(1u << (2 * n));
  for (unsigned code = 0; code < (1u << (2 * n)); ++code) {
    // Two bits per pair k: (i1_k, i2_k), pair 0 in the most significant bits.
    std::vector<int> i1(n), i2(n);
    for (int k = 0; k < n; ++k) {
      const unsigned bits = (code >> (2 * (n - 1 - k))) & 3u;
      i1[k] = static_cast<int>(bits >> 1);
      i2[k] = static_cast<int>(bits & 1u);
    }

    // K[b, i] = sum_a U[b, a] prod_k conj(sigma_{o_k}[i_k, a_k]) / norm,
    // i.e. the resource half projected by the Bell outcomes of every pair.
    Mat k_op = Mat::Zero(d, d);
    for (int a = 0; a < d; ++a) {
      for (int i = 0; i < d; ++i) {
        cplx amp{1.0, 0.0};
        for (int k = 0; k < n; ++k) {
          const int ak = (a >> (n - 1 - k)) & 1;
          const int ik = (i >> (n - 1 - k)) & 1;
          amp *= std::conj(bell_sigma(i1[k], i2[k])(ik, ak));
        }
        if (amp != cplx{0.0, 0.0}) {
          k_op.col(i) += amp * u.col(a);
        }
      }
    }
    k_op *= inv_norm;

    // Pauli corrections sigma_{i1 i2} on each output qubit.
    std::vector<PauliString> corrections;
    Mat corr = Mat::Identity(d, d);
    for (int k = 0; k < n; ++k) {
      const Pauli letter = bell_sigma_letter(i1[k], i2[k]);
      if (letter != Pauli::I) {
        const PauliString fix = single_letter(n, k, letter);
        corrections.push_back(fix);
        corr = operator_of(fix) * corr;
      }
    }
    k_op = corr * k_op;

    // The correction commutes with Z^{(x)n} iff the number of X/Y fixups
    // (Bell index i1 = 1) is even; those branches realised U(+alpha).
    int n_anti = 0;
    for (int k = 0; k < n; ++k) n_anti += i1[k];
    RawBranch b;
    b.labels.reserve(2 * n);
    for (int k = 0; k < n; ++k) {
      b.labels.push_back(i1[k]);
      b.labels.push_back(i2[k]);
    }
    b.out = k_op * rho * k_op.adjoint();
    b.corrections = std::move(corrections);
    b.success = (n_anti % 2 == 0);
    branches.push_back(std::move(b));
  }
  return branches;
}

}  // namespace

Vec star_resource_vector(int n) {
  if (n < 1 || n > 8) {
    throw std::invalid_argument("star_resource_vector: n must be in [1, 8]");
  }
  std::vector<std::pair<int, int>> edges;
  edges.reserve(n);
  for (int k = 0; k < n; ++k) edges.push_back({k, n});
  const Graph star = make_graph(n + 1, edges);
  return encoding_unitary(star) * plus_state(n + 1);
}

ResourceState ghz_resource(int n) {
  const Vec v = star_resource_vector(n);
  ResourceState r;
  r.kind = ResourceKind::ghz_tilde;
  r.n = n;
  r.state = dm(v);
  return r;
}

ResourceState kappa_resource(int n, double alpha) {
  if (n < 1 || n > 8) {
    throw std::invalid_argument("kappa_resource: n must be in [1, 8]");
  }
  const long dim = 1L << (n + 1);
  const cplx ca{std::cos(alpha), 0.0};
  const cplx isa{0.0, std::sin(alpha)};
  Vec v = Vec::Zero(dim);
  // |0>^n (ca|0> + isa|1>) + |1>^n (isa|0> + ca|1>), centre least significant.
  const long ones = dim - 2;  // |1...1>|0>
  const double r = 1.0 / std::sqrt(2.0);
  v(0) = r * ca;
  v(1) = r * isa;
  v(ones) = r * isa;
  v(ones + 1) = r * ca;
  ResourceState out;
  out.kind = ResourceKind::ghz_kappa;
  out.n = n;
  out.alpha = alpha;
  out.state = dm(v);
  return out;
}

ResourceState weak_resource(int n, double alpha) {
  if (n < 1 || n > 4) {
    throw std::invalid_argument("weak_resource: n must be in [1, 4]");
  }
  const int d = 1 << n;
  const Mat u = ghz_target_unitary(n, alpha);
  Vec v(static_cast<long>(d) * d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int a = 0; a < d; ++a) {
    for (int ap = 0; ap < d; ++ap) {
      v(static_cast<long>(a) * d + ap) = norm * u(ap, a);
    }
  }
  ResourceState out;
  out.kind = ResourceKind::weak_alpha;
  out.n = n;
  out.alpha = alpha;
  out.state = dm(v);
  return out;
}

ResourceState noisy_ghz_resource(int n, ResourceNoise kind, double param) {
  if (param < 0.0) {
    throw std::invalid_argument("noisy_ghz_resource: parameter must be >= 0");
  }
  ResourceState r = ghz_resource(n);
  const int nq = n + 1;
  Mat rho = std::move(r.state);
  switch (kind) {
    case ResourceNoise::dephasing: {
      const double p = std::exp(-param * kPi / 4.0);
      for (int k = 0; k < n; ++k) {
        rho = pauli_mix(rho, single_letter(nq, k, Pauli::Z), (1.0 + p) / 2.0);
      }
      const double pe = std::pow(p, n);
      rho = pauli_mix(rho, single_letter(nq, n, Pauli::Z), (1.0 + pe) / 2.0);
      break;
    }
    case ResourceNoise::white: {
      const double p = std::exp(-param * kPi / 4.0);
      for (int k = 0; k < n; ++k) rho = depolarize(rho, nq, k, p);
      rho = depolarize(rho, nq, n, std::pow(p, n));
      break;
    }
    case ResourceNoise::timing: {
      const double q = std::exp(-2.0 * param * param);
      for (int k = 0; k < n; ++k) {
        PauliString zz = single_letter(nq, k, Pauli::Z);
        zz.letters[n] = Pauli::Z;
        rho = pauli_mix(rho, zz, (1.0 + q) / 2.0);
      }
      break;
    }
  }
  r.state = std::move(rho);
  return r;
}

Mat ghz_target_unitary(int n, double alpha) {
  if (n < 1 || n > 10) {
    throw std::invalid_argument("ghz_target_unitary: n must be in [1, 10]");
  }
  const long dim = 1L << n;
  Mat u = Mat::Zero(dim, dim);
  for (long i = 0; i < dim; ++i) {
    // Z^{(x)n} has eigenvalue (-1)^{popcount(i)} on basis state i.
    const double sign = popcount_parity(static_cast<unsigned long long>(i)) ? -1.0
                                                                            : 1.0;
    u(i, i) = std::exp(cplx{0.0, -alpha * sign});
  }
  return u;
}

std::vector<Mat> teleport_kraus(int n, double alpha, const Mat& resource_dm) {
  if (n < 1 || n > 5) {
    throw std::invalid_argument("teleport_kraus: n must be in [1, 5]");
  }
  check_state_dims(resource_dm, n + 1, "teleport_kraus");
  check_density_matrix(resource_dm);
  const int ds = 1 << n;

  Eigen::SelfAdjointEigenSolver<Mat> es(resource_dm);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("teleport_kraus: eigendecomposition failed");
  }

  const Mat had = hadamard_n(n);
  const double ca = std::cos(alpha);
  const double sa = std::sin(alpha);
  const double inv_sqrt_ds = 1.0 / std::sqrt(static_cast<double>(ds));

  std::vector<Mat> kraus;
  for (int c = 0; c < es.eigenvalues().size(); ++c) {
    const double weight = es.eigenvalues()(c);
    if (weight <= kEigTol) continue;
    const Vec chi = es.eigenvectors().col(c);
    for (int s = 0; s < ds; ++s) {
      const int parity = popcount_parity(static_cast<unsigned>(s));
      // Centre measurement bases: {|m>, |m_perp>} after an even number of
      // |-> outcomes on S, {|-m>, |-m_perp>} after an odd number.
      const cplx bra_e[2][2] = {
          {cplx{ca, 0.0}, parity == 0 ? cplx{0.0, sa} : cplx{0.0, -sa}},
          {cplx{0.0, sa}, parity == 0 ? cplx{ca, 0.0} : cplx{-ca, 0.0}}};
      for (int t = 0; t < 2; ++t) {
        // M[b, i] = <s|_S <e|_E CZ_total (|i>_S (x) |chi>_LE), contracted in
        // closed form: the couplings CZ(S_k, L_k) contribute the diagonal
        // sign (-1)^{|i & b|} and the x-basis bra on S the sign (-1)^{|s & i|}.
        Mat m = Mat::Zero(ds, ds);
        for (int b = 0; b < ds; ++b) {
          const cplx wb = chi(2 * b) * std::conj(bra_e[t][0]) +
                          chi(2 * b + 1) * std::conj(bra_e[t][1]);
          for (int i = 0; i < ds; ++i) {
            const double sign =
                (popcount_parity(static_cast<unsigned>(s & i)) ^
                 popcount_parity(static_cast<unsigned>(i & b)))
                    ? -1.0
                    : 1.0;
            m(b, i) = sign * inv_sqrt_ds * wb;
          }
        }
        // Corrections: X on every leaf whose S partner read |->, and the
        // collective Z flip on the perp centre outcome.
        PauliString fix;
        fix.letters.assign(n, Pauli::I);
        for (int k = 0; k < n; ++k) {
          if ((s >> (n - 1 - k)) & 1) fix.letters[k] = Pauli::X;
        }
        if (t == 1) {
          PauliString zn;
          zn.letters.assign(n, Pauli::Z);
          fix = zn * fix;
        }
        kraus.push_back(std::sqrt(weight) * operator_of(fix) * m * had);
      }
    }
  }
  return kraus;
}

Channel ghz_teleport_channel(const ResourceState& resource, double alpha) {
  if (resource.kind != ResourceKind::ghz_tilde) {
    throw std::invalid_argument(
        "ghz_teleport_channel: resource must be of kind ghz_tilde");
  }
  return channel_from_kraus(teleport_kraus(resource.n, alpha, resource.state));
}

double teleport_analytic_fidelity(int n, double p, ResourceNoise kind) {
  if (n < 2) {
    throw std::invalid_argument("teleport_analytic_fidelity: n must be >= 2");
  }
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument(
        "teleport_analytic_fidelity: parameter must be in [0, 1]");
  }
  const double pn = std::pow(p, n);
  switch (kind) {
    case ResourceNoise::dephasing:
      return std::pow((1.0 + p) / 2.0, n) * (1.0 + pn) / 2.0 +
             std::pow((1.0 - p) / 2.0, n) * (1.0 - pn) / 2.0;
    case ResourceNoise::white:
      return std::pow((1.0 + 3.0 * p) / 4.0, n) * (1.0 + pn) / 2.0 +
             std::pow((1.0 - p) / 4.0, n) * (1.0 - pn) / 2.0;
    case ResourceNoise::timing: {
      double f = std::pow((1.0 + p) / 2.0, n);
      if (n % 2 == 1) f += std::pow((1.0 - p) / 2.0, n);
      return f;
    }
  }
  throw std::logic_error("teleport_analytic_fidelity: unknown noise kind");
}

TeleportOutcome jamiolkowski_teleport(const Mat& choi,
                                      const DensityMatrix& rho) {
  const long d = rho.rows();
  if (d < 1 || rho.cols() != d) {
    throw std::invalid_argument("jamiolkowski_teleport: rho must be square");
  }
  if (choi.rows() != d * d || choi.cols() != d * d) {
    throw std::invalid_argument(
        "jamiolkowski_teleport: Choi state must be " + std::to_string(d * d) +
        "x" + std::to_string(d * d) + " for a " + std::to_string(d) +
        "-dimensional input");
  }
  // Projecting input (x) reference onto |Phi> leaves, on the output slot,
  // M = 1/d sum_{ij} rho_ij choi[(a d + i), (b d + j)] = E(rho)/d^2.
  Mat m = Mat::Zero(d, d);
  for (long a = 0; a < d; ++a) {
    for (long b = 0; b < d; ++b) {
      cplx acc{0.0, 0.0};
      for (long i = 0; i < d; ++i) {
        for (long j = 0; j < d; ++j) {
          acc += rho(i, j) * choi(a * d + i, b * d + j);
        }
      }
      m(a, b) = acc / static_cast<double>(d);
    }
  }
  TeleportOutcome out;
  out.probability = m.trace().real();
  out.output = (out.probability > 1e-14) ? Mat(m / out.probability)
                                         : Mat(Mat::Zero(d, d));
  return out;
}

std::vector<BranchOutcome> weak_protocol_round(double alpha,
                                               const DensityMatrix& rho,
                                               int n) {
  std::vector<BranchOutcome> out;
  for (RawBranch& raw : weak_round_raw(alpha, rho, n)) {
    BranchOutcome b;
    b.labels = std::move(raw.labels);
    b.probability = raw.out.trace().real();
    b.output = (b.probability > 1e-15) ? Mat(raw.out / b.probability)
                                       : Mat(Mat::Zero(rho.rows(), rho.cols()));
    b.corrections = std::move(raw.corrections);
    b.success = raw.success;
    out.push_back(std::move(b));
  }
  return out;
}

DensityMatrix weak_protocol_deterministic(double alpha,
                                          const DensityMatrix& rho,
                                          int max_rounds) {
  if (alpha == 0.0) return rho;
  if (max_rounds < 1 || max_rounds > 8) {
    throw std::invalid_argument(
        "weak_protocol_deterministic: max_rounds must be in [1, 8]");
  }
  const double expected = kPi / std::pow(2.0, max_rounds);
  if (std::abs(alpha - expected) > 1e-12) {
    const int nearest = static_cast<int>(
        std::lround(std::log2(kPi / std::abs(alpha))));
    throw std::invalid_argument(
        "weak_protocol_deterministic: alpha must equal pi/2^N for N = "
        "max_rounds; nearest admissible N is " + std::to_string(nearest));
  }
  const int n = static_cast<int>(std::lround(std::log2(rho.rows())));
  check_state_dims(rho, n, "weak_protocol_deterministic");

  // Branch maps are linear, so failure states propagate unnormalised and the
  // final sum has unit trace.
  Mat total = Mat::Zero(rho.rows(), rho.cols());
  std::vector<Mat> pending{rho};
  for (int round = 0; round < max_rounds; ++round) {
    const double a_r = std::pow(2.0, round) * alpha;
    if (pending.size() > (1u << 20)) {
      throw std::runtime_error(
          "weak_protocol_deterministic: branch tree too large");
    }
    std::vector<Mat> next;
    next.reserve(pending.size() * (1u << (2 * n)) / 2);
    for (const Mat& state : pending) {
      for (RawBranch& b : weak_round_raw(a_r, state, n)) {
        if (b.success) {
          total += b.out;
        } else {
          next.push_back(std::move(b.out));
        }
      }
    }
    pending = std::move(next);
  }
  // Terminal failures implemented U(-(2^N - 1) alpha) = U(alpha) e^{i phase}.
  for (const Mat& state : pending) total += state;
  return total;
}

}  // namespace mbsim
