#pragma once

// Multiparticle entanglement purification of GHZ-type (star graph) resource
// states under noisy local operations, and the purified-teleportation
// fidelity pipeline.
//
// States are carried in the graph basis |mu> = Z^mu |G>, where |G> is the
// star resource prod_k CZ(L_k, E)|+>^{n+1} and mu runs over syndrome bit
// strings (bit of qubit j at position n-j, centre E last).  All protocol maps
// preserve diagonality in this basis, so a state is a vector of 2^{n+1}
// nonnegative coefficients; coefficient 0 is the fidelity with |G>.
//
// Recurrence (two-colorable graph-state protocol, colors A/B = {E}/{leaves}):
//   sub-protocol P1: transversal CNOTs (copy1 -> copy2 at the centre,
//   copy2 -> copy1 at the leaves), copy 2 measured (centre in sigma_z,
//   leaves in sigma_x), branches accepted when the leaf syndromes of the two
//   copies agree; centre syndromes XOR-convolve.  P2 swaps the color roles.
// Local noise: per-qubit depolarizing with parameter p_l before the
// transversal gates, and measurement outcomes flipped with probability
// (1 - p_l)/2; both act as syndrome-flip mixtures in coefficient space.

#include <utility>

#include "mbsim/channel.hpp"
#include "mbsim/types.hpp"

namespace mbsim {

enum class PurifySub { P1, P2 };

struct GhzDiagonalState {
  int n_plus_1 = 0;  // qubit count of the resource (n leaves + centre)
  RVec coeffs;       // 2^{n_plus_1} nonnegative reals summing to 1

  int n_leaves() const { return n_plus_1 - 1; }
  double fidelity() const { return coeffs(0); }
};

// Validate (size 2^{n+1}, entries >= -1e-12) and normalise to unit sum.
GhzDiagonalState ghz_diagonal_from_coeffs(int n, RVec coeffs);

// Fidelity p0 on the clean syndrome, remainder uniform over the others.
GhzDiagonalState ghz_syndrome_mixture(int n, double p0);

// Columns |mu> = Z^mu |G> of the graph basis.  n <= 8.
Mat graph_basis_matrix(int n);

// Diagonal of rho in the graph basis (the graph-basis twirl).  The fidelity
// coefficient <G|rho|G> is preserved exactly.
GhzDiagonalState twirl_to_ghz_diagonal(const Mat& rho);

DensityMatrix state_of_ghz_diagonal(const GhzDiagonalState& s);

struct PurifyRoundResult {
  GhzDiagonalState state;  // normalised post-selected output
  double success_probability = 0.0;
};

// One recurrence round consuming two equal-size diagonal states.
// 0 <= p_l <= 1; throws when the post-selection never succeeds.
PurifyRoundResult purify_round(const GhzDiagonalState& a,
                               const GhzDiagonalState& b, PurifySub sub,
                               double p_l);

struct PurifyFixpointResult {
  GhzDiagonalState state;
  int rounds = 0;
  bool diverged = false;  // fidelity decreased 5 rounds running, or p -> 0
};

// Alternate P1/P2 rounds (each consuming two copies of the current state)
// until the fidelity change over a P1+P2 pair drops below tol, divergence is
// detected, or max_rounds is hit.
PurifyFixpointResult purify_fixpoint(const GhzDiagonalState& initial,
                                     double p_l, double tol = 1e-12,
                                     int max_rounds = 200);

// End-to-end purified teleportation: purify ghz_syndrome_mixture(n, p_0) to
// its fixed point at local-noise level p_l, consume the purified resource in
// the star-resource teleport protocol with the coupling gates decorated by
// per-qubit depolarizing noise p_l (on each storage and leaf qubit), and
// return the Jamiolkowski fidelity against the ideal collective rotation at
// angle alpha.  Throws when the input does not purify.  2 <= n <= 4.
double purified_teleport_fidelity(int n, double p_l, double p_0,
                                  double alpha = kPi / 4.0);

}  // namespace mbsim
