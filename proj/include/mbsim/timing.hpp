#pragma once

// Gaussian timing-error channels.
//
// A control pulse meant to run for time t actually runs for t + delta with
// delta ~ N(0, sigma^2).  Because the error factor commutes with the ideal
// evolution, the noise is the channel
//   T(rho) = integral p(delta) U_delta rho U_delta^dag d delta,
// where U_delta is the extra rotation.  For a single involutory Pauli term
// omega * h this is a correlated dephasing channel along h with parameter
// q = exp(-2 sigma^2 omega^2); for commuting sums the average is over one
// shared delta (collective error) and is evaluated by Gauss-Hermite
// quadrature.

#include <cstdint>
#include <utility>
#include <vector>

#include "mbsim/channel.hpp"
#include "mbsim/pauli.hpp"
#include "mbsim/types.hpp"

namespace mbsim {

struct TimingTerm {
  double omega = 0.0;  // rate multiplying the Pauli string
  PauliString h;       // involutory string (coefficient 1)
};

struct TimingSpec {
  double sigma = 0.0;  // timing-error standard deviation
  std::vector<TimingTerm> terms;
};

// Validates sigma >= 0, coefficient-1 strings, equal lengths, and pairwise
// commutation (symbolic check); throws std::invalid_argument otherwise.
void check_timing_spec(const TimingSpec& spec);

// Physicists' Gauss-Hermite nodes and weights (weight function e^{-x^2});
// the weights sum to sqrt(pi).
std::pair<RVec, RVec> gauss_hermite(int n_nodes);

// Closed form: correlated_pauli_channel(h, exp(-2 sigma^2 omega^2)).
Channel timing_channel_unitary(double omega, const PauliString& h,
                               double sigma);

// Collective error: one Gaussian delta shared by every term (64-node
// quadrature).
Channel timing_channel_commuting_sum(const TimingSpec& spec);

// Independent errors: composition of per-term unitary-case channels.
Channel independent_timing_channel(const TimingSpec& spec);

// Binomial lower bound on the collective fidelity for n equal-omega terms:
//   2^{-2n} C(2n, n) + 2^{1-2n} sum_{k=0}^{n-1} C(2n, k) q^{(n-k)^2},
// q = exp(-2 sigma^2 omega^2).  Saturated by star-graph and open-chain Ising
// patterns.
double timing_fidelity_lower_bound(int n_terms, double omega, double sigma);

// Monte-Carlo oracle: empirical average over `samples` Gaussian draws from a
// deterministic seeded stream.
Channel mc_timing_channel(const TimingSpec& spec, long long samples,
                          std::uint64_t seed);

}  // namespace mbsim
