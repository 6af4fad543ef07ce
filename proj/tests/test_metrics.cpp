#include <cmath>
#include <vector>

#include "doctest.h"
#include "mbsim/metrics.hpp"
#include "mbsim/rng.hpp"

using namespace mbsim;

namespace {

Channel multi_dephasing(double p, int n) {
  Channel e = dephasing_channel(0, p, n);
  for (int q = 1; q < n; ++q) {
    e = compose(e, dephasing_channel(q, p, n));
  }
  return e;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("unit fidelity for the channel of the target unitary") {
  const Mat u = matrix_exp(Mat(cplx{0.0, -0.37} *
                               operator_of(pauli_string("ZZ"))));
  CHECK(j_fidelity(unitary_channel(u), u) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(j_distance(unitary_channel(u), u) < 1e-6);
}

TEST_CASE("product dephasing fidelity ((1+p)/2)^m") {
  const double p = 0.83;
  for (int m = 1; m <= 3; ++m) {
    const double got =
        j_fidelity(multi_dephasing(p, m),
                   Mat::Identity(Eigen::Index(1) << m, Eigen::Index(1) << m));
    CHECK(got == doctest::Approx(std::pow((1.0 + p) / 2.0, m)).epsilon(1e-12));
  }
}

TEST_CASE("single-qubit depolarizing fidelity (1+3p)/4") {
  const double p = 0.61;
  const double got =
      j_fidelity(depolarizing_channel(0, p), Mat::Identity(2, 2));
  CHECK(got == doctest::Approx((1.0 + 3.0 * p) / 4.0).epsilon(1e-12));
}

TEST_CASE("correlated three-qubit dephasing fidelity (1+p)/2") {
  const double p = 0.74;
  const Channel t = correlated_pauli_channel(pauli_string("ZZZ"), p);
  const double got = j_fidelity(t, Mat::Identity(8, 8));
  CHECK(got == doctest::Approx((1.0 + p) / 2.0).epsilon(1e-12));
}

TEST_CASE("fidelity is stable under tensoring with the identity") {
  const double p = 0.55;
  const Channel e = depolarizing_channel(0, p);
  const Mat u = matrix_exp(Mat(cplx{0.0, -0.8} * pauli_matrix(Pauli::Z)));
  const double base = j_fidelity(compose(e, unitary_channel(u)), u);
  const Channel wide =
      tensor(compose(e, unitary_channel(u)), identity_channel(2));
  const double lifted = j_fidelity(wide, kron(u, Mat::Identity(2, 2)));
  CHECK(std::abs(base - lifted) < 1e-10);
}

TEST_CASE("distance identity for commuting noise") {
  // E = D D . U with U z-diagonal: D(E, U) = D(E . U^dag, Id).
  const double p = 0.9;
  const Mat u = matrix_exp(Mat(cplx{0.0, -kPi / 4.0} *
                               operator_of(pauli_string("ZZ"))));
  const Channel noisy = compose(multi_dephasing(p, 2), unitary_channel(u));
  const double d1 = j_distance(noisy, u);
  const double d2 = j_distance(compose(noisy, unitary_channel(Mat(u.adjoint()))),
                               Mat::Identity(4, 4));
  CHECK(std::abs(d1 - d2) < 1e-10);
}

TEST_CASE("fidelity report carries D = sqrt(1-F)") {
  const Channel e = dephasing_channel(0, 0.9);
  const FidelityReport r =
      fidelity_report(e, Mat::Identity(2, 2), "dephasing", "identity");
  CHECK(std::abs(r.distance * r.distance - (1.0 - r.fidelity)) < 1e-12);
  CHECK(r.channel_desc == "dephasing");
}

TEST_CASE("average fidelity formula and Monte-Carlo check") {
  CHECK(avg_fidelity(1.0, 2) == doctest::Approx(1.0));
  CHECK(avg_fidelity(0.0, 2) == doctest::Approx(1.0 / 3.0));

  // Haar-random pure states against a depolarized rotation.
  const double p = 0.8;
  const Mat u = matrix_exp(Mat(cplx{0.0, -0.6} * pauli_matrix(Pauli::X)));
  const Channel e = compose(depolarizing_channel(0, p), unitary_channel(u));
  const double f_j = j_fidelity(e, u);
  const double predicted = avg_fidelity(f_j, 2);

  Rng rng(77);
  const int samples = 10000;
  double sum = 0.0, sum_sq = 0.0;
  for (int k = 0; k < samples; ++k) {
    Vec psi(2);
    psi << cplx{rng.normal(), rng.normal()}, cplx{rng.normal(), rng.normal()};
    psi.normalize();
    const Vec target = u * psi;
    const Mat out = apply_channel(e, dm(psi));
    const double val = (target.adjoint() * out * target)(0, 0).real();
    sum += val;
    sum_sq += val * val;
  }
  const double mean = sum / samples;
  const double var = (sum_sq / samples - mean * mean) / (samples - 1);
  const double sigma = std::sqrt(std::max(var, 1e-30));
  CHECK(std::abs(mean - predicted) < 3.0 * sigma);
}

TEST_CASE("chaining bound composition inequality") {
  const ChainingBound zero = chaining_bound({0.0, 0.0, 0.0});
  CHECK(zero.distance_bound == doctest::Approx(0.0));
  CHECK(zero.fidelity_lower_bound == doctest::Approx(1.0));

  // Verified as a true inequality on random two-step noisy compositions.
  Rng rng(5150);
  for (int trial = 0; trial < 25; ++trial) {
    const double p1 = 0.7 + 0.3 * rng.uniform();
    const double p2 = 0.7 + 0.3 * rng.uniform();
    const double th1 = rng.uniform(), th2 = rng.uniform();
    const Mat u1 = matrix_exp(Mat(cplx{0.0, -th1} *
                                  operator_of(pauli_string("ZZ"))));
    const Mat u2 = matrix_exp(Mat(cplx{0.0, -th2} *
                                  operator_of(pauli_string("XI"))));
    const Channel e1 = compose(dephasing_channel(0, p1, 2),
                               unitary_channel(u1));
    const Channel e2 = compose(depolarizing_channel(1, p2, 2),
                               unitary_channel(u2));
    const double d1 = j_distance(e1, u1);
    const double d2 = j_distance(e2, u2);
    const double d_tot = j_distance(compose(e2, e1), Mat(u2 * u1));
    const ChainingBound b = chaining_bound({d1, d2});
    CHECK(d_tot <= b.distance_bound + 1e-12);
  }
}

TEST_CASE("repeated gate fidelity in the commuting case") {
  const double p = 0.97;
  const int reps = 5;
  const double t_total = kPi / 4.0;
  const Mat u_step = matrix_exp(Mat(cplx{0.0, -t_total / reps} *
                                    operator_of(pauli_string("ZZ"))));
  const Mat u_total = matrix_exp(Mat(cplx{0.0, -t_total} *
                                     operator_of(pauli_string("ZZ"))));
  const Channel step = compose(multi_dephasing(p, 2), unitary_channel(u_step));
  const double got = gate_fidelity_repeated(step, u_total, reps);
  const double pk = std::pow(p, reps);
  CHECK(got == doctest::Approx(std::pow((1.0 + pk) / 2.0, 2)).epsilon(1e-10));

  CHECK(gate_fidelity_repeated(unitary_channel(u_step), u_step, 1) ==
        doctest::Approx(1.0));
}

TEST_CASE("LNE: ideal channel solves to rate zero") {
  const PauliSum h = pauli_sum({pauli_string("ZZ")});
  const double t = 0.8;
  const Mat u = matrix_exp(Mat(cplx{0.0, -t} * operator_of(h)));
  const LneResult r =
      lne_solve(unitary_channel(u), h, t, NoiseKind::dephasing);
  CHECK(r.rate == doctest::Approx(0.0));
  CHECK(r.residual < 1e-8);
}

TEST_CASE("LNE dephasing closed form matches the bisection solver") {
  const PauliSum h = pauli_sum({pauli_string("ZZZ")});
  const double t = 1.0, gamma_true = 0.21;
  const double p = std::exp(-gamma_true * t);
  const Mat u = matrix_exp(Mat(cplx{0.0, -t} * operator_of(h)));
  const Channel e = compose(multi_dephasing(p, 3), unitary_channel(u));
  const LneResult r = lne_solve(e, h, t, NoiseKind::dephasing);
  CHECK(std::abs(r.rate - gamma_true) < 1e-6);
  const double analytic = lne_analytic_dephasing(r.target_fidelity, 3, t);
  CHECK(std::abs(r.rate - analytic) < 1e-6);
  CHECK(r.residual < 1e-8);
}

TEST_CASE("LNE analytic dephasing edge cases") {
  CHECK(lne_analytic_dephasing(1.0, 3, 1.0) == doctest::Approx(0.0));
  const double gamma = 0.4, t = 1.2;
  const double f = std::pow((1.0 + std::exp(-gamma * t)) / 2.0, 3);
  CHECK(lne_analytic_dephasing(f, 3, t) == doctest::Approx(gamma).epsilon(1e-12));
  CHECK_THROWS_AS(lne_analytic_dephasing(0.01, 1, 1.0), std::invalid_argument);
}

TEST_CASE("LNE is monotone in the input noise rate") {
  const PauliSum h = pauli_sum({pauli_string("ZZ")});
  const double t = kPi / 4.0;
  const Mat gen0 = liouvillian(h, NoiseSpec{});
  double last = -1.0;
  for (double kappa : {0.01, 0.03, 0.09}) {
    const Mat gen = liouvillian(
        h, uniform_noise(NoiseKind::depolarizing, kappa, {0, 1}));
    const LneResult r =
        lne_solve(evolve(gen, t), h, t, NoiseKind::depolarizing);
    CHECK(r.rate > last);
    // The reference family here is the channel family itself, so the LNE
    // must reproduce the input rate.
    CHECK(std::abs(r.rate - kappa) < 1e-9);
    last = r.rate;
  }
  (void)gen0;
}

}  // TEST_SUITE
