#include "mbsim/lindblad.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace mbsim {

namespace {

void check_reservoir(const ReservoirSpec& res) {
  if (res.B < 0.0 || 2.0 * res.C < res.B) {
    throw std::invalid_argument("reservoir rates must satisfy 2C >= B >= 0");
  }
  if (res.s < 0.0 || res.s > 1.0) {
    throw std::invalid_argument("bath parameter s must lie in [0, 1]");
  }
}

void check_noise_spec(const NoiseSpec& noise, int n_qubits) {
  std::vector<bool> seen(static_cast<size_t>(n_qubits), false);
  for (const auto& [qubit, res] : noise.qubits) {
    if (qubit < 0 || qubit >= n_qubits) {
      throw std::invalid_argument("noise spec qubit index out of range");
    }
    if (seen[static_cast<size_t>(qubit)]) {
      throw std::invalid_argument("noise spec lists a qubit twice");
    }
    seen[static_cast<size_t>(qubit)] = true;
    check_reservoir(res);
  }
}

constexpr int kMaxLiouvillianQubits = 5;

}  // namespace

ReservoirSpec dephasing_reservoir(double gamma) {
  if (gamma < 0.0) throw std::invalid_argument("rate must be >= 0");
  return ReservoirSpec{0.0, gamma, 0.0};
}

ReservoirSpec white_reservoir(double kappa) {
  if (kappa < 0.0) throw std::invalid_argument("rate must be >= 0");
  return ReservoirSpec{kappa, kappa, 0.5};
}

ReservoirSpec reservoir_of(NoiseKind kind, double rate) {
  return kind == NoiseKind::dephasing ? dephasing_reservoir(rate)
                                      : white_reservoir(rate);
}

NoiseSpec uniform_noise(NoiseKind kind, double rate,
                        const std::vector<int>& qubits) {
  NoiseSpec spec;
  for (int q : qubits) spec.qubits.emplace_back(q, reservoir_of(kind, rate));
  return spec;
}

Mat hamiltonian_superoperator(const Mat& h) {
  if (h.rows() != h.cols()) {
    throw std::invalid_argument("Hamiltonian must be square");
  }
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-9) {
    throw std::invalid_argument("Hamiltonian must be Hermitian");
  }
  const Eigen::Index d = h.rows();
  const Mat id = Mat::Identity(d, d);
  return cplx{0.0, -1.0} * (kron(id, h) - kron(h.transpose(), id));
}

Mat dissipator(const Mat& l) {
  const Eigen::Index d = l.rows();
  const Mat id = Mat::Identity(d, d);
  const Mat ldl = l.adjoint() * l;
  return kron(l.conjugate(), l) - 0.5 * kron(id, ldl) -
         0.5 * kron(ldl.transpose(), id);
}

Mat reservoir_superoperator(int qubit, const ReservoirSpec& res,
                            int n_qubits) {
  check_reservoir(res);
  if (qubit < 0 || qubit >= n_qubits) {
    throw std::out_of_range("reservoir qubit index out of range");
  }
  Mat sm(2, 2), sp(2, 2);
  sm << 0, 1, 0, 0;  // sigma_minus = |0><1|
  sp << 0, 0, 1, 0;  // sigma_plus  = |1><0|
  const Mat z = pauli_matrix(Pauli::Z);

  const Eigen::Index dim = Eigen::Index(1) << n_qubits;
  Mat gen = Mat::Zero(dim * dim, dim * dim);
  const double rate_minus = res.B * (1.0 - res.s);
  const double rate_plus = res.B * res.s;
  const double rate_z = (2.0 * res.C - res.B) / 4.0;
  if (rate_minus > 0.0) {
    gen += rate_minus * dissipator(embed(n_qubits, {{qubit, sm}}));
  }
  if (rate_plus > 0.0) {
    gen += rate_plus * dissipator(embed(n_qubits, {{qubit, sp}}));
  }
  if (rate_z > 0.0) {
    gen += rate_z * dissipator(embed(n_qubits, {{qubit, z}}));
  }
  return gen;
}

Mat liouvillian_dense(const Mat& h, const NoiseSpec& noise, int n_qubits,
                      bool allow_large) {
  const int cap = allow_large ? kMaxLiouvillianQubits + 1
                              : kMaxLiouvillianQubits;
  if (n_qubits < 1 || n_qubits > cap) {
    throw std::invalid_argument(
        "liouvillian is capped at " + std::to_string(cap) +
        " qubits, got " + std::to_string(n_qubits));
  }
  check_noise_spec(noise, n_qubits);
  const Eigen::Index dim = Eigen::Index(1) << n_qubits;
  if (h.rows() != dim || h.cols() != dim) {
    throw std::invalid_argument("Hamiltonian dimension mismatch");
  }
  Mat gen = hamiltonian_superoperator(h);
  for (const auto& [qubit, res] : noise.qubits) {
    gen += reservoir_superoperator(qubit, res, n_qubits);
  }
  return gen;
}

Mat liouvillian(const PauliSum& h, const NoiseSpec& noise, bool allow_large) {
  return liouvillian_dense(operator_of(h), noise, h.n_qubits(), allow_large);
}

Channel evolve(const Mat& gen, double t) {
  if (t < 0.0) throw std::invalid_argument("evolution time must be >= 0");
  if (gen.rows() != gen.cols()) {
    throw std::invalid_argument("generator must be square");
  }
  const auto dim = static_cast<Eigen::Index>(std::llround(std::sqrt(
      static_cast<double>(gen.rows()))));
  if (dim * dim != gen.rows()) {
    throw std::invalid_argument("generator is not a superoperator");
  }
  Channel e;
  e.dim = static_cast<int>(dim);
  e.super = matrix_exp(Mat(gen * t));
  return e;
}

Mat phase_gate() {
  Mat u = Mat::Identity(4, 4);
  u(3, 3) = -1.0;
  return u;
}

Channel noisy_phase_gate(NoiseKind kind, double rate) {
  if (rate < 0.0) throw std::invalid_argument("rate must be >= 0");
  const PauliSum h = pauli_sum({pauli_string("ZZ")});
  const NoiseSpec noise = uniform_noise(kind, rate, {0, 1});
  const Channel evolved = evolve(liouvillian(h, noise), kPi / 4.0);

  // Noiseless local frame: exp(i pi/4) (S^dag (x) S^dag) turns the bare ZZ
  // quarter-turn into diag(1, 1, 1, -1) exactly.
  Mat s_dag(2, 2);
  s_dag << 1, 0, 0, cplx{0.0, -1.0};
  const cplx phase = std::exp(cplx{0.0, kPi / 4.0});
  const Mat frame = phase * kron(s_dag, s_dag);
  return compose(unitary_channel(frame), evolved);
}

}  // namespace mbsim
