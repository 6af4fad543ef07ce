#include "mbsim/metrics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace mbsim {

namespace {

void check_unitary(const Mat& u, double tol = 1e-9) {
  if (u.rows() != u.cols()) {
    throw std::invalid_argument("ideal operator must be square");
  }
  if ((u.adjoint() * u - Mat::Identity(u.rows(), u.cols()))
          .cwiseAbs()
          .maxCoeff() > tol) {
    throw std::invalid_argument("ideal operator is not unitary");
  }
}

}  // namespace

double j_fidelity(const Channel& e, const Mat& u) {
  check_unitary(u);
  const Eigen::Index d = e.dim;
  if (u.rows() != d) {
    throw std::invalid_argument("channel and unitary dimensions differ");
  }
  cplx acc{0.0, 0.0};
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      const Eigen::Index row_base = a + d * b;
      for (Eigen::Index i = 0; i < d; ++i) {
        const cplx ua = std::conj(u(a, i));
        if (ua == cplx{0.0, 0.0}) continue;
        for (Eigen::Index j = 0; j < d; ++j) {
          acc += ua * u(b, j) * e.super(row_base, i + d * j);
        }
      }
    }
  }
  acc /= static_cast<double>(d) * static_cast<double>(d);
  if (std::abs(acc.imag()) > 1e-9) {
    throw std::runtime_error("Jamiolkowski fidelity has a non-real value");
  }
  return acc.real();
}

double j_distance_from_fidelity(double fidelity) {
  return std::sqrt(std::max(0.0, 1.0 - fidelity));
}

double j_distance(const Channel& e, const Mat& u) {
  return j_distance_from_fidelity(j_fidelity(e, u));
}

FidelityReport fidelity_report(const Channel& e, const Mat& u,
                               std::string channel_desc,
                               std::string ideal_desc) {
  FidelityReport r;
  r.fidelity = j_fidelity(e, u);
  r.distance = j_distance_from_fidelity(r.fidelity);
  r.channel_desc = std::move(channel_desc);
  r.ideal_desc = std::move(ideal_desc);
  return r;
}

double avg_fidelity(double jamiolkowski_fidelity, int dim) {
  if (dim < 2) throw std::invalid_argument("dimension must be >= 2");
  return (jamiolkowski_fidelity * dim + 1.0) / (dim + 1.0);
}

ChainingBound chaining_bound(const std::vector<double>& step_distances) {
  ChainingBound b;
  for (double d : step_distances) {
    if (d < 0.0) throw std::invalid_argument("distances must be >= 0");
    b.distance_bound += d;
  }
  b.fidelity_lower_bound = 1.0 - b.distance_bound * b.distance_bound;
  return b;
}

double gate_fidelity_repeated(const Channel& e_step, const Mat& u_target,
                              long long reps) {
  if (reps < 1) throw std::invalid_argument("reps must be >= 1");
  return j_fidelity(channel_power(e_step, reps), u_target);
}

LneResult lne_solve(const Channel& e, const PauliSum& h_ideal, double t,
                    NoiseKind kind) {
  if (t <= 0.0) throw std::invalid_argument("time must be > 0");
  const int n = h_ideal.n_qubits();
  const Mat h = operator_of(h_ideal);
  const Mat u = matrix_exp(Mat(cplx{0.0, -1.0} * t * h));
  const double f_target = j_fidelity(e, u);

  // gen(rate) = ham + rate * unit_noise: every reservoir rate scales linearly.
  const Mat ham_part = hamiltonian_superoperator(h);
  Mat unit_noise = Mat::Zero(ham_part.rows(), ham_part.cols());
  for (int q = 0; q < n; ++q) {
    unit_noise += reservoir_superoperator(q, reservoir_of(kind, 1.0), n);
  }
  auto f_ref = [&](double rate) {
    return j_fidelity(evolve(Mat(ham_part + rate * unit_noise), t), u);
  };

  LneResult result;
  result.kind = kind;
  result.target_fidelity = f_target;
  if (f_target >= 1.0 - 1e-12) {
    result.rate = 0.0;
    result.residual = std::abs(f_ref(0.0) - f_target);
    return result;
  }

  double hi = 1.0;
  if (2.0 * f_target - 1.0 > 1e-300) {
    hi = 10.0 * std::max(1.0, -std::log(2.0 * f_target - 1.0) / t);
  }
  int doublings = 0;
  while (f_ref(hi) > f_target && doublings < 40) {
    hi *= 2.0;
    ++doublings;
  }
  const double f_lo_rate = f_ref(0.0);
  const double f_hi_rate = f_ref(hi);
  if (f_hi_rate > f_target || f_lo_rate < f_target - 1e-9) {
    std::ostringstream msg;
    msg << "target fidelity " << f_target
        << " is outside the reachable range of the reference family: "
        << "F(rate=0) = " << f_lo_rate << ", F(rate=" << hi
        << ") = " << f_hi_rate;
    throw std::runtime_error(msg.str());
  }
  if (!(f_ref(hi / 2.0) >= f_hi_rate - 1e-9 &&
        f_lo_rate >= f_ref(hi / 2.0) - 1e-9)) {
    throw std::logic_error(
        "reference fidelity is not monotone on the bisection bracket");
  }

  double lo = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (f_ref(mid) > f_target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-14 * std::max(1.0, hi)) break;
  }
  result.rate = 0.5 * (lo + hi);
  result.residual = std::abs(f_ref(result.rate) - f_target);
  if (result.residual > 1e-8) {
    throw std::runtime_error("LNE solver residual exceeds 1e-8");
  }
  return result;
}

double lne_analytic_dephasing(double fidelity, int m_qubits, double t) {
  if (m_qubits < 1) throw std::invalid_argument("qubit count must be >= 1");
  if (t <= 0.0) throw std::invalid_argument("time must be > 0");
  const double root = std::pow(fidelity, 1.0 / m_qubits);
  const double arg = 2.0 * root - 1.0;
  if (arg <= 0.0) {
    throw std::invalid_argument(
        "fidelity too small for the dephasing closed form");
  }
  return -std::log(arg) / t;
}

}  // namespace mbsim
