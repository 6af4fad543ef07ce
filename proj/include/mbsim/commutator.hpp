// Commutator-based synthesis of many-body interactions: pulse sequences whose
// second-order term is a desired product Hamiltonian, their noisy simulation,
// and the step-time optimization for gate synthesis.
#pragma once

#include <vector>

#include "mbsim/channel.hpp"
#include "mbsim/lindblad.hpp"
#include "mbsim/pauli.hpp"

namespace mbsim {

// One leg of a pulse sequence: evolve under `h` for `duration` while the
// reservoirs in `noise` act.  An empty NoiseSpec means ideal evolution.
struct ProtocolStep {
  PauliSum h;
  double duration = 0.0;
  NoiseSpec noise;
};

// An ordered pulse sequence together with the Hamiltonian it synthesizes.
// The synthesized gate is exp(-i * target_time * target_h) up to the
// sequence's Taylor corrections.
struct ProtocolSequence {
  int n_qubits = 0;
  std::vector<ProtocolStep> steps;
  PauliSum target_h;
  double target_time = 0.0;
};

// Group-commutator sequence realizing H_eff = -i/2 [h1, h2] over an effective
// time dt' = 2 dt^2.  Time order of the four legs is [h2, h1, -h2, -h1], each
// of duration dt: with physical steps exp(-i h dt) this composes to
// exp(dt^2 [h1, h2]) + O(dt^3) = exp(-i dt' H_eff) + O(dt'^{3/2}).
// Both Hamiltonians may act on the same qubit count only.
ProtocolSequence commutator_sequence(const PauliSum& h1, const PauliSum& h2,
                                     double dt);

// 16-step nested sequence on five qubits synthesizing sigma_z^{x5} over an
// effective time dt5.  Two inner group commutators build the three-body
// pieces X_C Z_D Z_E and -Z_A Z_B Y_C from two-body legs of duration
// tau2 = (dt5/8)^{1/4}; the outer group commutator of those blocks (with the
// exact reversed-and-negated inverses, so inner Taylor corrections cancel)
// then yields +Z^{x5}.  Total time cost is O(dt5^{1/4}).
ProtocolSequence nested_sequence_5body(double dt5);

// Copy of `seq` where each step carries the entries of `ambient` restricted
// to the qubits its Hamiltonian acts on: noise runs only where the
// interaction is switched on.
ProtocolSequence attach_participant_noise(const ProtocolSequence& seq,
                                          const NoiseSpec& ambient);

// Composition of the per-step Lindblad evolutions, in time order.  A fully
// noiseless sequence is composed at the unitary level (cheap for five
// qubits); any noisy step forces the superoperator path, which is capped
// like liouvillian() unless allow_large is set.
Channel simulate_sequence(const ProtocolSequence& seq,
                          bool allow_large = false);

// The three cyclic role assignments of a three-qubit sequence (the identity
// assignment first).  Averaging their simulated channels equalizes the
// per-qubit noise exposure; the synthesized Hamiltonian is unchanged when it
// is permutation symmetric.
std::vector<ProtocolSequence> symmetrize(const ProtocolSequence& seq);

// Uniform mixture of channels on a common dimension.
Channel average_channels(const std::vector<Channel>& channels);

// Repeated-block synthesis of exp(-i t_total H) for a three-qubit target of
// the form  c * ZZZ (c > 0) plus optional single-qubit field terms.  Each
// Trotter slice of length dt_m applies the commutator-built three-body block
// under the ambient noise (participants only), followed by the exact
// noiseless field evolution.  The division of t_total is N = ceil(t/dt_m)
// slices with the remainder in the last one.  With `symmetrized` set, every
// slice averages the three cyclic role assignments.
Channel gate_via_commutator(const PauliSum& target_h, double t_total,
                            double dt_m, const NoiseSpec& ambient,
                            bool symmetrized = false);

struct OptimalDtm {
  double dt_m = 0.0;
  double fidelity = 0.0;
  // Set when the fidelity landscape over the search grid is numerically flat
  // (the reported dt_m is then just the grid maximum).
  bool flat_landscape = false;
};

// Search for the step time maximizing the gate fidelity of
// gate_via_commutator against exp(-i t_total target_h): a 40-point log grid
// over [1e-4, t_total/2] refined by golden-section iterations between the
// bracketing neighbors of the grid maximum.
OptimalDtm optimal_dt_m(const PauliSum& target_h, double t_total,
                        const NoiseSpec& ambient, bool symmetrized = false);

// Number of d-level subsystems needed to carry an n_bodies-fold product of
// D-dimensional operators: ceil(n_bodies * log(D) / log(d)).
int qudit_bodyness(int big_d, int small_d, int n_bodies);

}  // namespace mbsim
