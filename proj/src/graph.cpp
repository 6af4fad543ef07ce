#include "mbsim/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "mbsim/timing.hpp"

namespace mbsim {

Graph make_graph(int n_vertices, std::vector<std::pair<int, int>> edges) {
  if (n_vertices < 1) {
    throw std::invalid_argument("graph needs at least one vertex");
  }
  std::set<std::pair<int, int>> seen;
  for (auto& [a, b] : edges) {
    if (a == b) throw std::invalid_argument("graph edges must not be loops");
    if (a > b) std::swap(a, b);
    if (a < 0 || b >= n_vertices) {
      throw std::invalid_argument("graph edge endpoint out of range");
    }
    if (!seen.insert({a, b}).second) {
      throw std::invalid_argument("duplicate graph edge");
    }
  }
  std::sort(edges.begin(), edges.end());
  return Graph{n_vertices, std::move(edges)};
}

std::vector<int> degrees(const Graph& g) {
  std::vector<int> deg(g.n_vertices, 0);
  for (const auto& [a, b] : g.edges) {
    ++deg[a];
    ++deg[b];
  }
  return deg;
}

std::vector<int> neighborhood(const Graph& g, int v) {
  if (v < 0 || v >= g.n_vertices) {
    throw std::invalid_argument("vertex out of range");
  }
  std::vector<int> out;
  for (const auto& [a, b] : g.edges) {
    if (a == v) out.push_back(b);
    if (b == v) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Mat encoding_unitary(const Graph& g) {
  const int n = g.n_vertices;
  if (n > 10) {
    throw std::invalid_argument("encoding unitary capped at 10 qubits");
  }
  const long dim = 1L << n;
  Mat u = Mat::Zero(dim, dim);
  for (long i = 0; i < dim; ++i) {
    int parity = 0;
    for (const auto& [a, b] : g.edges) {
      // Qubit 0 is the most significant tensor factor.
      const int bit_a = static_cast<int>(i >> (n - 1 - a)) & 1;
      const int bit_b = static_cast<int>(i >> (n - 1 - b)) & 1;
      parity ^= bit_a & bit_b;
    }
    u(i, i) = parity ? -1.0 : 1.0;
  }
  return u;
}

PauliString conjugate_pauli(const Graph& g, const PauliString& s) {
  const int n = s.n_qubits();
  if (n != g.n_vertices) {
    throw std::invalid_argument("string length does not match the graph");
  }
  // U s U^dag factorizes over the qubits of s: each X/Y letter carries its
  // sigma_z neighbor tail.  The per-qubit factors commute as operators, so
  // multiplying them in qubit order is exact including the phase.
  PauliString out{s.coeff, std::vector<Pauli>(n, Pauli::I)};
  for (int q = 0; q < n; ++q) {
    const Pauli letter = s.letters[q];
    if (letter == Pauli::I) continue;
    PauliString factor{cplx{1.0, 0.0}, std::vector<Pauli>(n, Pauli::I)};
    factor.letters[q] = letter;
    if (letter == Pauli::X || letter == Pauli::Y) {
      for (int b : neighborhood(g, q)) factor.letters[b] = Pauli::Z;
    }
    out = out * factor;
  }
  return out;
}

PauliSum transform_hamiltonian(const Graph& g, const PauliSum& h) {
  PauliSum out;
  out.terms.reserve(h.terms.size());
  for (const PauliString& t : h.terms) {
    PauliString c = conjugate_pauli(g, t);
    if (std::abs(c.coeff.imag()) > 1e-10) {
      throw std::logic_error(
          "transformed Hamiltonian term has a non-real coefficient");
    }
    out.terms.push_back(std::move(c));
  }
  return simplified(out);
}

NoiseSpec encoding_noise_for(const Graph& g, NoiseKind kind,
                             double rate_per_gate) {
  NoiseSpec spec;
  const std::vector<int> deg = degrees(g);
  for (int q = 0; q < g.n_vertices; ++q) {
    if (deg[q] > 0 && rate_per_gate > 0.0) {
      spec.qubits.push_back({q, reservoir_of(kind, deg[q] * rate_per_gate)});
    }
  }
  return spec;
}

Channel noisy_encoding(const Graph& g, const NoiseSpec& encoding_noise,
                       bool allow_large) {
  if (encoding_noise.empty()) {
    return unitary_channel(encoding_unitary(g));
  }
  const int n = g.n_vertices;
  PauliSum h_enc;
  for (const auto& [a, b] : g.edges) {
    PauliString zz{cplx{1.0, 0.0}, std::vector<Pauli>(n, Pauli::I)};
    zz.letters[a] = Pauli::Z;
    zz.letters[b] = Pauli::Z;
    h_enc.terms.push_back(std::move(zz));
  }
  const Channel evolution =
      evolve(liouvillian(h_enc, encoding_noise, allow_large), kPi / 4.0);

  // Noiseless local frame: e^{i pi |E|/4} prod_q (S^dag_q)^{deg q}.
  const std::vector<int> deg = degrees(g);
  std::vector<std::pair<int, Mat>> locals;
  for (int q = 0; q < n; ++q) {
    if (deg[q] % 4 == 0) continue;
    Mat sdag_pow = Mat::Identity(2, 2);
    sdag_pow(1, 1) = std::pow(cplx{0.0, -1.0}, deg[q] % 4);
    locals.push_back({q, std::move(sdag_pow)});
  }
  Mat frame = locals.empty() ? Mat(Mat::Identity(1L << n, 1L << n))
                             : embed(n, locals);
  frame *= std::polar(1.0, kPi * static_cast<double>(g.edges.size()) / 4.0);
  return compose(unitary_channel(frame), evolution);
}

Channel simulate_fixed_encoding(const Graph& g, const PauliSum& inner_h,
                                double dt_prime, const NoiseSpec& inner_noise,
                                const NoiseSpec& encoding_noise,
                                bool allow_large) {
  if (dt_prime < 0.0) {
    throw std::invalid_argument("inner evolution time must be >= 0");
  }
  if (inner_h.n_qubits() != g.n_vertices) {
    throw std::invalid_argument(
        "inner Hamiltonian qubit count does not match the graph");
  }
  const Channel enc = noisy_encoding(g, encoding_noise, allow_large);
  const Channel inner = [&] {
    if (inner_noise.empty()) {
      const Mat h = operator_of(inner_h);
      return unitary_channel(matrix_exp(Mat(cplx{0.0, -dt_prime} * h)));
    }
    return evolve(liouvillian(inner_h, inner_noise, allow_large), dt_prime);
  }();
  return compose(enc, compose(inner, enc));
}

double gse_analytic_fidelity(int m, double rate, NoiseKind kind) {
  if (m < 2) throw std::invalid_argument("encoding needs m >= 2 qubits");
  if (rate < 0.0) throw std::invalid_argument("rate must be >= 0");
  const double p = std::exp(-rate * kPi / 4.0);
  const double p_hub = std::pow(p, 2.0 * (m - 1));
  const double p_leaf = p * p;
  if (kind == NoiseKind::dephasing) {
    return (1.0 + p_hub) / 2.0 * std::pow((1.0 + p_leaf) / 2.0, m - 1);
  }
  return (1.0 + 3.0 * p_hub) / 4.0 * std::pow((1.0 + 3.0 * p_leaf) / 4.0,
                                              m - 1);
}

TimingBounds gse_timing_fidelity_bounds(int m, double sigma, bool collective) {
  if (m < 2) throw std::invalid_argument("encoding needs m >= 2 qubits");
  if (sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");
  const double q = std::exp(-2.0 * sigma * sigma);
  const double f_enc = collective
                           ? timing_fidelity_lower_bound(m - 1, 1.0, sigma)
                           : std::pow((1.0 + q) / 2.0, m - 1);
  TimingBounds bounds;
  bounds.lower_bound = 1.0 - 4.0 * (1.0 - f_enc);
  bounds.small_sigma_approx = 1.0 - 4.0 * (m - 1) * sigma * sigma;
  return bounds;
}

double variable_encoding_lne(double dt_prime, double rate) {
  if (!(dt_prime > 0.0)) {
    throw std::invalid_argument("dt_prime must be positive");
  }
  return kPi / dt_prime * rate;
}

}  // namespace mbsim
