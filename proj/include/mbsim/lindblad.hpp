#pragma once

// Liouvillian superoperators: Hamiltonian part plus per-qubit quantum-optical
// reservoir couplings, exponentiated exactly into Channels.
//
// A reservoir is parametrised by (B, C, s): B is the inversion decay rate,
// C the polarization decay rate, s in [0, 1] the bath temperature parameter.
// The corresponding jump operators and rates are
//   sigma_minus at rate B(1-s),  sigma_plus at rate B s,
//   sigma_z     at rate (2C - B)/4.
// Special cases: B=0, C=gamma is pure dephasing, exp at time t giving the
// dephasing channel with p = exp(-gamma t); s=1/2, B=C=kappa is white noise,
// giving the depolarizing channel with p = exp(-kappa t).

#include <vector>

#include "mbsim/channel.hpp"
#include "mbsim/pauli.hpp"
#include "mbsim/types.hpp"

namespace mbsim {

struct ReservoirSpec {
  double B = 0.0;  // inversion decay rate (1/time)
  double C = 0.0;  // polarization decay rate (1/time)
  double s = 0.0;  // bath temperature parameter in [0, 1]
};

ReservoirSpec dephasing_reservoir(double gamma);
ReservoirSpec white_reservoir(double kappa);

enum class NoiseKind { dephasing, depolarizing };
ReservoirSpec reservoir_of(NoiseKind kind, double rate);

// Per-qubit reservoirs; qubits not listed are noiseless.
struct NoiseSpec {
  std::vector<std::pair<int, ReservoirSpec>> qubits;

  bool empty() const { return qubits.empty(); }
};

// The same reservoir attached to each listed qubit.
NoiseSpec uniform_noise(NoiseKind kind, double rate,
                        const std::vector<int>& qubits);

// -i (kron(I, H) - kron(H^T, I)): the coherent part of the master equation in
// the column-stacking convention.
Mat hamiltonian_superoperator(const Mat& h);

// Lindblad dissipator superoperator for a single jump operator L:
// kron(conj(L), L) - 1/2 kron(I, L^dag L) - 1/2 kron((L^dag L)^T, I).
Mat dissipator(const Mat& l);

// Sum of rate-weighted dissipators for one qubit's reservoir, embedded in an
// n-qubit register.
Mat reservoir_superoperator(int qubit, const ReservoirSpec& res, int n_qubits);

// Full generator for a Pauli-sum Hamiltonian with per-qubit noise.  Capped at
// n = 5 qubits (superoperator dimension 1024); n = 6 needs allow_large.
Mat liouvillian(const PauliSum& h, const NoiseSpec& noise,
                bool allow_large = false);
// Same, for a dense Hamiltonian on n_qubits.
Mat liouvillian_dense(const Mat& h, const NoiseSpec& noise, int n_qubits,
                      bool allow_large = false);

// exp(gen * t) wrapped as a Channel; t must be >= 0.
Channel evolve(const Mat& gen, double t);

// Two-qubit phase gate generated by a ZZ interaction over time pi/4 under
// per-qubit noise of the given kind, framed by noiseless local z-rotations so
// the rate-0 limit is exactly diag(1, 1, 1, -1).
Channel noisy_phase_gate(NoiseKind kind, double rate);

// The ideal phase gate diag(1, 1, 1, -1).
Mat phase_gate();

}  // namespace mbsim
