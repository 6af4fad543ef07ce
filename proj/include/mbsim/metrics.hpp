#pragma once

// Channel quality measures: Jamiolkowski fidelity/distance against an ideal
// unitary, the average fidelity, chaining bounds for composed maps, repeated
// gate fidelity, and the local-noise-equivalent (LNE) solver.

#include <string>
#include <vector>

#include "mbsim/channel.hpp"
#include "mbsim/lindblad.hpp"
#include "mbsim/pauli.hpp"
#include "mbsim/types.hpp"

namespace mbsim {

// F(E, U) = <Psi| (E (x) Id)(|Phi><Phi|) |Psi> with |Psi> = (U (x) Id)|Phi>,
// evaluated by direct contraction of the superoperator (no Choi intermediate).
double j_fidelity(const Channel& e, const Mat& u);

// D = sqrt(1 - F).
double j_distance_from_fidelity(double fidelity);
double j_distance(const Channel& e, const Mat& u);

struct FidelityReport {
  double fidelity = 0.0;
  double distance = 0.0;
  std::string channel_desc;
  std::string ideal_desc;
};

FidelityReport fidelity_report(const Channel& e, const Mat& u,
                               std::string channel_desc = "",
                               std::string ideal_desc = "");

// Average fidelity over Haar-random pure inputs: (F d + 1) / (d + 1).
double avg_fidelity(double jamiolkowski_fidelity, int dim);

struct ChainingBound {
  double distance_bound = 0.0;        // sum of per-step distances
  double fidelity_lower_bound = 0.0;  // 1 - (sum)^2
};

ChainingBound chaining_bound(const std::vector<double>& step_distances);

// j_fidelity of the reps-fold composition of e_step against u_target.
double gate_fidelity_repeated(const Channel& e_step, const Mat& u_target,
                              long long reps);

struct LneResult {
  NoiseKind kind = NoiseKind::dephasing;
  double rate = 0.0;             // equivalent per-qubit reservoir rate
  double target_fidelity = 0.0;  // F(e, exp(-i H t)) that was matched
  double residual = 0.0;         // |F_reference(rate) - target_fidelity|
};

// Find the uniform per-qubit reservoir rate such that the reference evolution
// exp[(H + sum_q L_q) t] under h_ideal has the same Jamiolkowski fidelity as
// `e` against exp(-i h_ideal t).  Bisection on a generous bracket; throws if
// the target fidelity is outside the reachable range (message reports the
// bracket endpoints).
LneResult lne_solve(const Channel& e, const PauliSum& h_ideal, double t,
                    NoiseKind kind);

// Closed form for the commuting dephasing case: gamma = -ln(2 F^{1/m} - 1)/t.
double lne_analytic_dephasing(double fidelity, int m_qubits, double t);

}  // namespace mbsim
