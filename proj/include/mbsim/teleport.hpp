#pragma once

// Teleportation-based gate synthesis.
//
// Star-resource protocol: a register of storage qubits S_1..S_n is coupled by
// phase gates to the leaves L_1..L_n of an (n+1)-qubit star resource
//   |psi~> = prod_k CZ(L_k, E) |+>^{n+1} = (|+>^n |0>_E + |->^n |1>_E)/sqrt(2),
// the S qubits are measured in the x basis and the centre E in a rotated
// basis; after Pauli corrections the leaves have undergone the collective
// rotation U(alpha) = exp(-i alpha Z^{(x)n}).  Summing all measurement
// branches gives a deterministic channel; noisy resources give noisy gates.
//
// Weakly-entangled-state protocol: the resource (1 x U(alpha)) |Phi+>^{(x)n}
// is consumed by Bell measurements; after corrections the input has undergone
// U(alpha) (success, probability 1/2) or U(-alpha) (failure).  Rerunning on
// failure with the angle doubled terminates deterministically when
// alpha = pi/2^N.
//
// Jamiolkowski protocol: teleporting a state through the Choi state of a
// channel applies the channel with success probability 1/d^2.

#include <vector>

#include "mbsim/channel.hpp"
#include "mbsim/pauli.hpp"
#include "mbsim/types.hpp"

namespace mbsim {

// Noise models for resource-state preparation and the matching closed forms.
//  * dephasing / white: each preparation phase gate runs under a per-qubit
//    reservoir of the given rate for time pi/4, leaving the pattern
//    "parameter p on each leaf, p^n on the centre" on the finished resource,
//    with p = exp(-rate pi/4);
//  * timing: Gaussian jitter on each phase-gate duration leaves a correlated
//    ZZ channel with parameter q = exp(-2 sigma^2) on each leaf-centre pair.
enum class ResourceNoise { dephasing, white, timing };

enum class ResourceKind { weak_alpha, ghz_kappa, ghz_tilde };

struct ResourceState {
  ResourceKind kind = ResourceKind::ghz_tilde;
  int n = 0;           // number of target (leaf) qubits
  double alpha = 0.0;  // rotation angle baked into the resource, if any
  DensityMatrix state;
};

// The pure star resource (|+>^n |0>_E + |->^n |1>_E)/sqrt(2) as a state
// vector on qubits [L_0..L_{n-1}, E] (E least significant).  n <= 8.
Vec star_resource_vector(int n);

// Pure resource of kind ghz_tilde; state = |psi~><psi~|.
ResourceState ghz_resource(int n);

// Rotated presentation (|0>^n |m> + |1>^n |m_perp>)/sqrt(2) with
// |m> = cos(a)|0> + i sin(a)|1>, |m_perp> = i sin(a)|0> + cos(a)|1>;
// reduces to the standard GHZ state at alpha = 0.  Kind ghz_kappa.
ResourceState kappa_resource(int n, double alpha);

// Resource (1 x U(alpha)) |Phi+>^{(x)n} on qubits [A_1..A_n, A'_1..A'_n];
// its marginal on either half is maximally mixed.  Kind weak_alpha.  n <= 4.
ResourceState weak_resource(int n, double alpha);

// Star resource degraded by preparation noise (see ResourceNoise).  `param`
// is the per-qubit reservoir rate for dephasing/white and the jitter spread
// sigma for timing.
ResourceState noisy_ghz_resource(int n, ResourceNoise kind, double param);

// The ideal collective rotation exp(-i alpha Z^{(x)n}).
Mat ghz_target_unitary(int n, double alpha);

// Kraus operators of the star-resource teleport channel (input on S, output
// on the leaves) for a possibly mixed resource density matrix on (L, E).
// One operator per resource eigencomponent, x-measurement outcome s, and
// centre outcome t; corrections X^{s_k} and, on the rotated-perp outcome,
// Z^{(x)n} are already folded in.  n <= 5.
std::vector<Mat> teleport_kraus(int n, double alpha, const Mat& resource_dm);

// Deterministic channel of the star-resource protocol: the branch sum of
// teleport_kraus.  For a pure resource this equals conjugation by
// ghz_target_unitary(n, alpha).  Requires kind ghz_tilde.
Channel ghz_teleport_channel(const ResourceState& resource, double alpha);

// Closed-form Jamiolkowski fidelities of the noisy-resource gate at
// alpha = pi/4 against the ideal U(alpha), as a function of the per-gate
// channel parameter p (dephasing/white: p = exp(-rate pi/4); timing: q).
//   dephasing: ((1+p)/2)^n (1+p^n)/2 + ((1-p)/2)^n (1-p^n)/2   (exact)
//   white:     ((1+3p)/4)^n (1+p^n)/2 + ((1-p)/4)^n (1-p^n)/2  (estimate)
//   timing:    ((1+q)/2)^n, plus ((1-q)/2)^n when n is odd     (exact)
// n >= 2.
double teleport_analytic_fidelity(int n, double p, ResourceNoise kind);

struct TeleportOutcome {
  double probability = 0.0;
  DensityMatrix output;
};

// Teleport `rho` through the Choi state of a channel (output slot most
// significant, as produced by choi_of): project the input together with the
// reference slot onto the maximally entangled state.  For a trace-preserving
// channel the success probability is exactly 1/d^2 and the conditional
// output is the channel applied to rho.
TeleportOutcome jamiolkowski_teleport(const Mat& choi, const DensityMatrix& rho);

// One branch of a Bell-measurement round: `labels` holds the two Bell indices
// (i1, i2) per measured pair; `corrections` the Pauli fixups that were applied
// (embedded in the full register); `output` the conditional (normalised)
// state; `success` whether the corrections commute with Z^{(x)n}.
struct BranchOutcome {
  std::vector<int> labels;
  double probability = 0.0;
  DensityMatrix output;
  std::vector<PauliString> corrections;
  bool success = false;
};

// One round of the weakly-entangled-state protocol on an n-qubit input: all
// 4^n Bell outcomes with their corrections.  Success branches (total
// probability 1/2) have undergone U(alpha), failure branches U(-alpha).
// n <= 4.
std::vector<BranchOutcome> weak_protocol_round(double alpha,
                                               const DensityMatrix& rho, int n);

// Deterministic variant: run rounds with angles alpha, 2 alpha, 4 alpha, ...
// keeping failures, for `max_rounds` = N rounds; terminal failures have
// applied U(-(2^N - 1) alpha) which equals U(alpha) up to a global phase.
// Requires alpha = pi/2^N (alpha = 0 returns the input unchanged); throws
// otherwise, reporting the nearest admissible N.
DensityMatrix weak_protocol_deterministic(double alpha, const DensityMatrix& rho,
                                          int max_rounds);

}  // namespace mbsim
