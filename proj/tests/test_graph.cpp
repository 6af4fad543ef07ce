#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "mbsim/graph.hpp"
#include "mbsim/metrics.hpp"

using namespace mbsim;

namespace {

constexpr double kT = kPi / 4.0;

double rate_of_p(double p) { return -std::log(p) / kPi; }

// Three-qubit star rooted at 0: the m=3 encoding used throughout.
Graph star3() { return make_graph(3, {{0, 1}, {0, 2}}); }

Mat unitary_of(const PauliSum& h, double t) {
  return matrix_exp(Mat(cplx{0.0, -t} * operator_of(h)));
}

// Encode-evolve-decode with a noiseless single-qubit X on the hub: the
// first numeric pipeline of the gate table.
Channel star_pipeline(double k0, double dtp, NoiseKind kind) {
  return simulate_fixed_encoding(star3(), pauli_sum({pauli_string("XII")}),
                                 dtp, {}, encoding_noise_for(star3(), kind, k0));
}

// Single-edge encoding with a noisy two-body inner Hamiltonian: the second
// numeric pipeline.
Channel edge_pipeline(double k0, double dtp, NoiseKind kind) {
  const Graph g = make_graph(3, {{0, 1}});
  return simulate_fixed_encoding(
      g, pauli_sum({pauli_string("IXZ")}), dtp,
      uniform_noise(kind, k0, {1, 2}), encoding_noise_for(g, kind, k0));
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("graph construction and validation") {
  const Graph g = make_graph(4, {{2, 0}, {1, 3}});
  CHECK(g.edges == std::vector<std::pair<int, int>>{{0, 2}, {1, 3}});
  CHECK(degrees(g) == std::vector<int>{1, 1, 1, 1});
  CHECK(neighborhood(star3(), 0) == std::vector<int>{1, 2});
  CHECK(neighborhood(star3(), 1) == std::vector<int>{0});
  CHECK_THROWS_AS(make_graph(3, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_graph(3, {{0, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(make_graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
}

TEST_CASE("encoding unitary basics") {
  CHECK((encoding_unitary(make_graph(2, {})) - Mat::Identity(4, 4)).norm() ==
        0.0);
  Mat cz = Mat::Identity(4, 4);
  cz(3, 3) = -1.0;
  CHECK((encoding_unitary(make_graph(2, {{0, 1}})) - cz).norm() == 0.0);

  // Matches the sequential phase-gate product in any edge order.
  const Graph star = make_graph(4, {{0, 1}, {0, 2}, {0, 3}});
  Mat seq = Mat::Identity(16, 16);
  for (const auto& order :
       {std::vector<std::pair<int, int>>{{0, 3}, {0, 1}, {0, 2}}}) {
    seq = Mat::Identity(16, 16);
    for (const auto& [a, b] : order) {
      seq = encoding_unitary(make_graph(4, {{a, b}})) * seq;
    }
  }
  const Mat u = encoding_unitary(star);
  CHECK((u - seq).cwiseAbs().maxCoeff() < 1e-12);
  // Self-inverse and Hermitian.
  CHECK((u * u - Mat::Identity(16, 16)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((u - u.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("conjugation rules on the chain") {
  const Graph chain = make_graph(3, {{0, 1}, {1, 2}});
  // X on the middle qubit grows sigma_z tails on both neighbors.
  const PauliString mid = conjugate_pauli(chain, pauli_string("IXI"));
  CHECK(mid.letters_str() == "ZXZ");
  CHECK(mid.coeff == cplx{1.0, 0.0});
  // Z letters are untouched by the diagonal encoding.
  const PauliString z = conjugate_pauli(chain, pauli_string("IZI"));
  CHECK(z.letters_str() == "IZI");
  // X tensor X on an edge picks up both tails: CZ (XX) CZ = YY.
  const Graph pair = make_graph(2, {{0, 1}});
  const PauliString yy = conjugate_pauli(pair, pauli_string("XX"));
  CHECK(yy.letters_str() == "YY");
  CHECK(yy.coeff == cplx{1.0, 0.0});
  // Star hub: X on the root spreads Z over every leaf.
  const Graph star =
      make_graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  CHECK(conjugate_pauli(star, pauli_string("XIIII")).letters_str() ==
        "XZZZZ");
}

TEST_CASE("conjugation is an involution and matches dense conjugation") {
  unsigned state = 97531;
  auto next = [&state]() {
    state = state * 1664525u + 1013904223u;
    return (state >> 16) & 0xffffu;
  };
  int checked = 0;
  while (checked < 200) {
    const int n = 2 + static_cast<int>(next() % 5u);  // 2..6 qubits
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        if (next() & 1u) edges.push_back({a, b});
      }
    }
    const Graph g = make_graph(n, edges);
    std::string letters;
    for (int q = 0; q < n; ++q) letters.push_back("IXYZ"[next() % 4u]);
    const PauliString s = pauli_string(letters);

    const PauliString once = conjugate_pauli(g, s);
    const PauliString twice = conjugate_pauli(g, once);
    CHECK(twice.letters_str() == s.letters_str());
    CHECK(std::abs(twice.coeff - s.coeff) < 1e-12);

    const Mat u = encoding_unitary(g);
    const Mat dense = u * operator_of(pauli_sum({s})) * u.adjoint();
    CHECK((dense - operator_of(pauli_sum({once}))).cwiseAbs().maxCoeff() <
          1e-12);
    ++checked;
  }
}

TEST_CASE("periodic pair encoding builds the cluster Hamiltonian") {
  // Six qubits on a ring, every even qubit tied to its right neighbor.
  const int n = 6;
  const Graph g = make_graph(n, {{0, 1}, {2, 3}, {4, 5}});
  const double b_field = 0.7;

  PauliSum h;
  for (int alpha = 0; alpha < n / 2; ++alpha) {
    const int even = 2 * alpha;
    const int prev = (even - 1 + n) % n;
    std::string zx(n, 'I'), xz(n, 'I');
    zx[prev] = 'Z';
    zx[even] = 'X';
    xz[prev] = 'X';
    xz[even] = 'Z';
    h.terms.push_back(pauli_string(zx, -1.0));
    h.terms.push_back(pauli_string(xz, -1.0));
    std::string zx2(n, 'I'), xz2(n, 'I');
    zx2[even] = 'Z';
    zx2[even + 1] = 'X';
    xz2[even] = 'X';
    xz2[even + 1] = 'Z';
    h.terms.push_back(pauli_string(zx2, b_field));
    h.terms.push_back(pauli_string(xz2, b_field));
  }

  PauliSum expected;
  for (int alpha = 0; alpha < n; ++alpha) {
    std::string zxz(n, 'I'), x(n, 'I');
    zxz[(alpha - 1 + n) % n] = 'Z';
    zxz[alpha] = 'X';
    zxz[(alpha + 1) % n] = 'Z';
    x[alpha] = 'X';
    expected.terms.push_back(pauli_string(zxz, -1.0));
    expected.terms.push_back(pauli_string(x, b_field));
  }

  const PauliSum got = transform_hamiltonian(g, h);
  const PauliSum diff = simplified(got + (-1.0) * expected);
  CHECK(diff.terms.empty());
}

TEST_CASE("noiseless fixed encoding is exactly the target unitary") {
  const PauliSum target = pauli_sum({pauli_string("XZZ")});
  for (double dtp : {0.0, 0.3, kT, 2.0}) {
    const Channel e = simulate_fixed_encoding(
        star3(), pauli_sum({pauli_string("XII")}), dtp, {}, {});
    const Channel want = unitary_channel(unitary_of(target, dtp));
    CHECK((e.super - want.super).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("dephasing pipeline hits the closed form at inner angle zero") {
  const PauliSum target = pauli_sum({pauli_string("XZZ")});
  for (double g0 : {0.05, 0.1}) {
    const double p = std::exp(-g0 * kT);
    const double formula =
        (1.0 + std::pow(p, 4)) / 2.0 * std::pow((1.0 + p * p) / 2.0, 2);
    const double f0 = j_fidelity(star_pipeline(g0, 0.0, NoiseKind::dephasing),
                                 unitary_of(target, 0.0));
    CHECK(f0 == doctest::Approx(formula).epsilon(1e-12));
    CHECK(f0 == doctest::Approx(gse_analytic_fidelity(3, g0,
                                                      NoiseKind::dephasing))
                    .epsilon(1e-12));
  }
  // At the table operating angle the formula drifts by O(1e-3).
  const double f_t = j_fidelity(star_pipeline(0.05, kT, NoiseKind::dephasing),
                                unitary_of(target, kT));
  CHECK(f_t == doctest::Approx(0.85727530120151).epsilon(1e-10));
  CHECK(std::abs(f_t - gse_analytic_fidelity(3, 0.05, NoiseKind::dephasing)) <
        2e-3);
}

TEST_CASE("white pipeline tracks the closed form to first order") {
  const PauliSum target = pauli_sum({pauli_string("XZZ")});
  const double f1 = j_fidelity(
      star_pipeline(0.01, kT, NoiseKind::depolarizing), unitary_of(target, kT));
  CHECK(f1 == doctest::Approx(0.954046599641).epsilon(1e-9));
  CHECK(std::abs(f1 - gse_analytic_fidelity(3, 0.01,
                                            NoiseKind::depolarizing)) < 1e-4);

  // The deviation grows roughly quadratically with the rate; by k0 = 0.05
  // it has crossed 1e-3.
  const double f5 = j_fidelity(
      star_pipeline(0.05, kT, NoiseKind::depolarizing), unitary_of(target, kT));
  CHECK(f5 == doctest::Approx(0.791720203149).epsilon(1e-9));
  const double dev =
      std::abs(f5 - gse_analytic_fidelity(3, 0.05, NoiseKind::depolarizing));
  CHECK(dev > 1e-3);
  CHECK(dev < 1.5e-3);
}

TEST_CASE("gate-table numeric columns at the three survival levels") {
  const PauliSum tgt1 = pauli_sum({pauli_string("XZZ")});
  const PauliSum tgt2 = pauli_sum({pauli_string("ZXZ")});
  struct Row {
    double p, analytic, star, edge;
  };
  for (const Row& row :
       {Row{0.9, 0.8551682690, 0.8546042950, 0.8886821860},
        Row{0.99, 0.9850515742, 0.9850457120, 0.9887616285},
        Row{0.999, 0.9985005156, 0.9985004568, 0.9988751161}}) {
    const double k0 = rate_of_p(row.p);
    CHECK(gse_analytic_fidelity(3, k0, NoiseKind::depolarizing) ==
          doctest::Approx(row.analytic).epsilon(1e-9));
    CHECK(j_fidelity(star_pipeline(k0, kT, NoiseKind::depolarizing),
                     unitary_of(tgt1, kT)) ==
          doctest::Approx(row.star).epsilon(1e-9));
    CHECK(j_fidelity(edge_pipeline(k0, kT, NoiseKind::depolarizing),
                     unitary_of(tgt2, kT)) ==
          doctest::Approx(row.edge).epsilon(1e-9));
  }
}

TEST_CASE("fidelity is nearly independent of the inner angle") {
  const double k0 = rate_of_p(0.9);
  const PauliSum target = pauli_sum({pauli_string("XZZ")});
  std::vector<double> fs;
  for (double dtp : {1e-4, 1e-2, 0.2, kT}) {
    fs.push_back(j_fidelity(star_pipeline(k0, dtp, NoiseKind::depolarizing),
                            unitary_of(target, dtp)));
  }
  CHECK(fs.front() == doctest::Approx(0.85464372).epsilon(1e-7));
  CHECK(fs.back() == doctest::Approx(0.85460430).epsilon(1e-7));
  const auto [lo, hi] = std::minmax_element(fs.begin(), fs.end());
  CHECK(*hi - *lo < 1e-4);
}

TEST_CASE("timing bounds: collective beats pairwise, same expansion") {
  const TimingBounds zero = gse_timing_fidelity_bounds(3, 0.0, false);
  CHECK(zero.lower_bound == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(zero.small_sigma_approx == 1.0);

  // m=3 pairwise small-sigma form is 1 - 8 sigma^2.
  const double sigma = 0.05;
  const TimingBounds small = gse_timing_fidelity_bounds(3, sigma, false);
  CHECK(small.small_sigma_approx ==
        doctest::Approx(1.0 - 8.0 * sigma * sigma).epsilon(1e-12));
  CHECK(std::abs(small.lower_bound - small.small_sigma_approx) < 1e-3);

  // The collective-pairwise gap grows with both m and sigma.
  double prev_gap = 0.0;
  for (int m : {3, 4, 5}) {
    const double gap =
        gse_timing_fidelity_bounds(m, 0.3, true).lower_bound -
        gse_timing_fidelity_bounds(m, 0.3, false).lower_bound;
    CHECK(gap > prev_gap);
    prev_gap = gap;
  }
  CHECK(gse_timing_fidelity_bounds(3, 0.3, true).lower_bound -
            gse_timing_fidelity_bounds(3, 0.1, true).lower_bound <
        0.0);
}

TEST_CASE("variable-encoding noise amplification") {
  CHECK(variable_encoding_lne(kPi, 0.01) ==
        doctest::Approx(0.01).epsilon(1e-15));
  CHECK(variable_encoding_lne(kPi / 100.0, 0.01) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(variable_encoding_lne(0.0, 0.01), std::invalid_argument);
}

}  // TEST_SUITE
