// Graph-state encoding: graphs, phase-gate encoding unitaries, symbolic
// Pauli conjugation rules, Hamiltonian transformation, and the noisy
// encode-evolve-decode pipeline with its closed-form fidelity estimates.
#pragma once

#include <utility>
#include <vector>

#include "mbsim/channel.hpp"
#include "mbsim/lindblad.hpp"
#include "mbsim/pauli.hpp"

namespace mbsim {

// A simple undirected graph on qubits 0..n_vertices-1.
struct Graph {
  int n_vertices = 0;
  std::vector<std::pair<int, int>> edges;  // normalized a < b, no duplicates
};

// Validates, orders each pair, and rejects self-loops and duplicates.
Graph make_graph(int n_vertices, std::vector<std::pair<int, int>> edges);

std::vector<int> degrees(const Graph& g);
// Neighbors of v, ascending.
std::vector<int> neighborhood(const Graph& g, int v);

// Product of two-qubit phase gates diag(1,1,1,-1) over all edges: an exact
// diagonal of +-1 entries (self-inverse and Hermitian).  Capped at 10 qubits.
Mat encoding_unitary(const Graph& g);

// Symbolic conjugation U s U^dag for the encoding unitary of g: an X or Y on
// qubit a acquires a sigma_z tail on every neighbor of a, Z letters are
// untouched.  Phase bookkeeping is exact.
PauliString conjugate_pauli(const Graph& g, const PauliString& s);

// Term-wise conjugate_pauli; coefficients stay real.
PauliSum transform_hamiltonian(const Graph& g, const PauliSum& h);

// Degree-scaled per-qubit reservoirs: each phase gate contributes one
// environment of the given rate to both of its endpoints, so qubit q ends up
// with rate deg(q) * rate_per_gate.  Isolated vertices carry no reservoir.
NoiseSpec encoding_noise_for(const Graph& g, NoiseKind kind,
                             double rate_per_gate);

// The phase-gate network as a noisy channel: all edge ZZ interactions evolve
// simultaneously for time pi/4 under the given reservoirs, followed by the
// noiseless local frame  e^{i pi |E|/4} prod_q (S^dag_q)^{deg q}  that turns
// the bare evolution into the phase-gate product.  An empty NoiseSpec yields
// the exact encoding unitary.
Channel noisy_encoding(const Graph& g, const NoiseSpec& encoding_noise,
                       bool allow_large = false);

// Full pipeline  E = E_enc o U_inner(dt_prime) o E_enc: encode, evolve the
// inner two-body Hamiltonian, decode.  The inner evolution runs under
// `inner_noise` (noiseless when empty); both encodings run under
// `encoding_noise`.  dt_prime >= 0.
Channel simulate_fixed_encoding(const Graph& g, const PauliSum& inner_h,
                                double dt_prime, const NoiseSpec& inner_noise,
                                const NoiseSpec& encoding_noise,
                                bool allow_large = false);

// Closed-form estimate of the pipeline fidelity for an m-qubit star
// encoding whose inner evolution is noiseless, with p = e^{-rate pi/4}:
// dephasing  ((1+p^{2(m-1)})/2) ((1+p^2)/2)^{m-1},
// white      ((1+3p^{2(m-1)})/4) ((1+3p^2)/4)^{m-1}.
double gse_analytic_fidelity(int m, double rate, NoiseKind kind);

struct TimingBounds {
  double lower_bound = 1.0;        // 1 - 4 (1 - F_enc)
  double small_sigma_approx = 1.0; // 1 - 4 (m-1) sigma^2
};

// Protocol fidelity bounds under Gaussian timing errors of width sigma in
// the phase-gate network.  Pairwise gates give F_enc = ((1+q)/2)^{m-1} with
// q = e^{-2 sigma^2}; a collective (simultaneous) network gives the larger
// binomial closed form.  Both share the same small-sigma expansion.
TimingBounds gse_timing_fidelity_bounds(int m, double sigma, bool collective);

// Noise amplification of the variable-encoding scheme: the local noise
// equivalent rate is (pi / dt_prime) * rate.
double variable_encoding_lne(double dt_prime, double rate);

}  // namespace mbsim
