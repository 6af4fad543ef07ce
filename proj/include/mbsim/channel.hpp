#pragma once

// Quantum channels as superoperator matrices.
//
// States are vectorised column-stacking style: vec(rho)[i + d*j] = rho(i, j),
// so that vec(A rho B) = kron(B^T, A) vec(rho) with kron() from pauli.hpp.
// A channel with Kraus operators {K} therefore has superoperator
// sum_K kron(conj(K), K).
//
// The Choi state of a channel E on dimension d is (E (x) Id)(|Phi><Phi|) with
// |Phi> = 1/sqrt(d) sum_k |kk> and the OUTPUT slot as the most significant
// tensor factor: choi[a*d + alpha, b*d + beta] = S[a + d*b, alpha + d*beta]/d.

#include <optional>
#include <vector>

#include "mbsim/pauli.hpp"
#include "mbsim/types.hpp"

namespace mbsim {

struct Channel {
  int dim = 0;    // Hilbert-space dimension d; superoperator is d^2 x d^2
  Mat super;      // column-stacking superoperator matrix
  std::vector<Mat> kraus;  // optional cache; empty when unknown

  int n_qubits() const;
};

Vec vec_state(const Mat& rho);
Mat unvec_state(const Vec& v);

// Throws unless rho is Hermitian (tol_herm), unit trace (tol_trace) and
// positive semidefinite up to -tol_psd on the smallest eigenvalue.
void check_density_matrix(const Mat& rho, double tol_herm = 1e-10,
                          double tol_trace = 1e-10, double tol_psd = 1e-9);

Channel identity_channel(int dim);
Channel unitary_channel(const Mat& u);

// Build a channel from Kraus operators.  When require_tp is true the
// completeness relation sum K^dag K = Id is enforced to `tol`; pass false for
// deliberately trace-decreasing branch maps.
Channel channel_from_kraus(const std::vector<Mat>& kraus,
                           bool require_tp = true, double tol = 1e-9);

Mat apply_channel(const Channel& e, const Mat& rho);

// Composition late(early(rho)).
Channel compose(const Channel& late, const Channel& early);
// n-fold composition of a channel with itself (n >= 0).
Channel channel_power(const Channel& e, long long n);
// Product channel acting as a on the most significant factor, b on the least.
Channel tensor(const Channel& a, const Channel& b);

// Single-qubit dephasing with parameter p in [0, 1]: off-diagonal elements
// of the target qubit are scaled by p.  Acts within an n-qubit register.
Channel dephasing_channel(int target, double p, int n_qubits = 1);
// Single-qubit depolarizing with parameter p in [0, 1]:
// rho -> p rho + (1-p) Id/2 on the target qubit.
Channel depolarizing_channel(int target, double p, int n_qubits = 1);
// Correlated dephasing along a Pauli string P (coefficient must be 1):
// rho -> (1+p)/2 rho + (1-p)/2 P rho P.
Channel correlated_pauli_channel(const PauliString& p_string, double p);

Mat choi_of(const Channel& e);
Channel channel_from_choi(const Mat& choi);

bool is_trace_preserving(const Channel& e, double tol = 1e-9);
// Smallest eigenvalue of the Choi matrix; >= -tol means completely positive.
double min_choi_eigenvalue(const Channel& e);

}  // namespace mbsim
