#include "mbsim/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mbsim {

namespace {

void check_dim(int dim) {
  if (dim < 2) throw std::invalid_argument("channel dimension must be >= 2");
}

int qubit_count_of_dim(int dim) {
  int n = 0;
  int d = dim;
  while (d > 1) {
    if (d % 2 != 0) {
      throw std::logic_error("dimension is not a power of two");
    }
    d /= 2;
    ++n;
  }
  return n;
}

}  // namespace

int Channel::n_qubits() const { return qubit_count_of_dim(dim); }

Vec vec_state(const Mat& rho) {
  if (rho.rows() != rho.cols()) {
    throw std::invalid_argument("vec_state needs a square matrix");
  }
  const Eigen::Index d = rho.rows();
  Vec v(d * d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) v(i + d * j) = rho(i, j);
  }
  return v;
}

Mat unvec_state(const Vec& v) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(
      static_cast<double>(v.size()))));
  if (d * d != v.size()) {
    throw std::invalid_argument("unvec_state needs a square-length vector");
  }
  Mat rho(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) rho(i, j) = v(i + d * j);
  }
  return rho;
}

void check_density_matrix(const Mat& rho, double tol_herm, double tol_trace,
                          double tol_psd) {
  if (rho.rows() != rho.cols()) {
    throw std::invalid_argument("density matrix must be square");
  }
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol_herm) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(rho.trace() - cplx{1.0, 0.0}) > tol_trace) {
    throw std::invalid_argument("density matrix trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol_psd) {
    throw std::invalid_argument("density matrix has a negative eigenvalue");
  }
}

Channel identity_channel(int dim) {
  check_dim(dim);
  Channel e;
  e.dim = dim;
  e.super = Mat::Identity(static_cast<Eigen::Index>(dim) * dim,
                          static_cast<Eigen::Index>(dim) * dim);
  e.kraus = {Mat::Identity(dim, dim)};
  return e;
}

Channel unitary_channel(const Mat& u) {
  if (u.rows() != u.cols()) {
    throw std::invalid_argument("unitary_channel needs a square matrix");
  }
  if ((u.adjoint() * u - Mat::Identity(u.rows(), u.cols()))
          .cwiseAbs()
          .maxCoeff() > 1e-9) {
    throw std::invalid_argument("unitary_channel argument is not unitary");
  }
  Channel e;
  e.dim = static_cast<int>(u.rows());
  e.super = kron(u.conjugate(), u);
  e.kraus = {u};
  return e;
}

Channel channel_from_kraus(const std::vector<Mat>& kraus, bool require_tp,
                           double tol) {
  if (kraus.empty()) {
    throw std::invalid_argument("channel needs at least one Kraus operator");
  }
  const Eigen::Index d = kraus.front().rows();
  Mat completeness = Mat::Zero(d, d);
  Channel e;
  e.dim = static_cast<int>(d);
  e.super = Mat::Zero(d * d, d * d);
  for (const Mat& k : kraus) {
    if (k.rows() != d || k.cols() != d) {
      throw std::invalid_argument("Kraus operators must share one dimension");
    }
    e.super += kron(k.conjugate(), k);
    completeness += k.adjoint() * k;
  }
  if (require_tp &&
      (completeness - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > tol) {
    throw std::invalid_argument(
        "Kraus operators do not satisfy the completeness relation");
  }
  e.kraus = kraus;
  return e;
}

Mat apply_channel(const Channel& e, const Mat& rho) {
  if (rho.rows() != e.dim || rho.cols() != e.dim) {
    throw std::invalid_argument("state dimension does not match channel");
  }
  return unvec_state(e.super * vec_state(rho));
}

Channel compose(const Channel& late, const Channel& early) {
  if (late.dim != early.dim) {
    throw std::invalid_argument("composed channels must share one dimension");
  }
  Channel e;
  e.dim = late.dim;
  e.super = late.super * early.super;
  return e;
}

Channel channel_power(const Channel& e, long long n) {
  if (n < 0) throw std::invalid_argument("channel_power needs n >= 0");
  Channel out = identity_channel(e.dim);
  Channel base = e;
  long long k = n;
  while (k > 0) {
    if (k & 1) out = compose(out, base);
    k >>= 1;
    if (k > 0) base = compose(base, base);
  }
  return out;
}

Channel tensor(const Channel& a, const Channel& b) {
  const Eigen::Index da = a.dim, db = b.dim, d = da * db;
  Channel e;
  e.dim = static_cast<int>(d);
  e.super = Mat::Zero(d * d, d * d);
  // vec index of the product state: (ia*db + ib) + d*(ja*db + jb).
  for (Eigen::Index ia = 0; ia < da; ++ia)
    for (Eigen::Index ja = 0; ja < da; ++ja)
      for (Eigen::Index ka = 0; ka < da; ++ka)
        for (Eigen::Index la = 0; la < da; ++la) {
          const cplx sa = a.super(ia + da * ja, ka + da * la);
          if (sa == cplx{0.0, 0.0}) continue;
          for (Eigen::Index ib = 0; ib < db; ++ib)
            for (Eigen::Index jb = 0; jb < db; ++jb)
              for (Eigen::Index kb = 0; kb < db; ++kb)
                for (Eigen::Index lb = 0; lb < db; ++lb) {
                  e.super((ia * db + ib) + d * (ja * db + jb),
                          (ka * db + kb) + d * (la * db + lb)) =
                      sa * b.super(ib + db * jb, kb + db * lb);
                }
        }
  return e;
}

Channel dephasing_channel(int target, double p, int n_qubits) {
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("dephasing parameter must lie in [0, 1]");
  }
  const double w0 = (1.0 + p) / 2.0, w1 = (1.0 - p) / 2.0;
  const Mat z = pauli_matrix(Pauli::Z);
  std::vector<Mat> kraus;
  kraus.push_back(std::sqrt(w0) *
                  Mat::Identity(Eigen::Index(1) << n_qubits,
                                Eigen::Index(1) << n_qubits));
  kraus.push_back(std::sqrt(w1) * embed(n_qubits, {{target, z}}));
  return channel_from_kraus(kraus);
}

Channel depolarizing_channel(int target, double p, int n_qubits) {
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("depolarizing parameter must lie in [0, 1]");
  }
  const double w0 = (1.0 + 3.0 * p) / 4.0, w1 = (1.0 - p) / 4.0;
  std::vector<Mat> kraus;
  kraus.push_back(std::sqrt(w0) *
                  Mat::Identity(Eigen::Index(1) << n_qubits,
                                Eigen::Index(1) << n_qubits));
  for (Pauli letter : {Pauli::X, Pauli::Y, Pauli::Z}) {
    kraus.push_back(std::sqrt(w1) *
                    embed(n_qubits, {{target, pauli_matrix(letter)}}));
  }
  return channel_from_kraus(kraus);
}

Channel correlated_pauli_channel(const PauliString& p_string, double p) {
  if (std::abs(p_string.coeff - cplx{1.0, 0.0}) > 1e-12) {
    throw std::invalid_argument(
        "correlated_pauli_channel needs a coefficient-1 Pauli string");
  }
  if (p < -1.0 || p > 1.0) {
    throw std::invalid_argument("correlation parameter must lie in [-1, 1]");
  }
  const Mat op = operator_of(p_string);
  std::vector<Mat> kraus;
  kraus.push_back(std::sqrt((1.0 + p) / 2.0) *
                  Mat::Identity(op.rows(), op.cols()));
  kraus.push_back(std::sqrt((1.0 - p) / 2.0) * op);
  return channel_from_kraus(kraus);
}

Mat choi_of(const Channel& e) {
  const Eigen::Index d = e.dim;
  Mat choi(d * d, d * d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b)
      for (Eigen::Index alpha = 0; alpha < d; ++alpha)
        for (Eigen::Index beta = 0; beta < d; ++beta) {
          choi(a * d + alpha, b * d + beta) =
              e.super(a + d * b, alpha + d * beta) / static_cast<double>(d);
        }
  return choi;
}

Channel channel_from_choi(const Mat& choi) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(
      static_cast<double>(choi.rows()))));
  if (d * d != choi.rows() || choi.rows() != choi.cols()) {
    throw std::invalid_argument("Choi matrix must be d^2 x d^2");
  }
  Channel e;
  e.dim = static_cast<int>(d);
  e.super = Mat(d * d, d * d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b)
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) {
          e.super(a + d * b, i + d * j) =
              static_cast<double>(d) * choi(a * d + i, b * d + j);
        }
  return e;
}

bool is_trace_preserving(const Channel& e, double tol) {
  const Eigen::Index d = e.dim;
  for (Eigen::Index k = 0; k < d; ++k) {
    for (Eigen::Index l = 0; l < d; ++l) {
      cplx column_trace{0.0, 0.0};
      for (Eigen::Index i = 0; i < d; ++i) {
        column_trace += e.super(i + d * i, k + d * l);
      }
      const cplx want = (k == l) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
      if (std::abs(column_trace - want) > tol) return false;
    }
  }
  return true;
}

double min_choi_eigenvalue(const Channel& e) {
  Mat choi = choi_of(e);
  // Hermitise to shed numerical asymmetry before the eigensolve.
  choi = (choi + choi.adjoint().eval()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(choi, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace mbsim
