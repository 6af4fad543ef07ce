#include "mbsim/commutator.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "mbsim/metrics.hpp"

namespace mbsim {

namespace {

// Legs of the commutator sequence in time order; realizes -i/2 [h1, h2].
std::vector<PauliSum> commutator_legs(const PauliSum& h1, const PauliSum& h2) {
  return {h2, h1, -h2, -h1};
}

std::vector<PauliSum> inverse_legs(const std::vector<PauliSum>& legs) {
  std::vector<PauliSum> out(legs.rbegin(), legs.rend());
  for (PauliSum& h : out) h = -h;
  return out;
}

void check_sequence(const ProtocolSequence& seq) {
  if (seq.steps.empty()) {
    throw std::invalid_argument("protocol sequence has no steps");
  }
  for (const ProtocolStep& step : seq.steps) {
    if (!(step.duration > 0.0)) {
      throw std::invalid_argument("protocol step durations must be positive");
    }
    if (step.h.n_qubits() != seq.n_qubits) {
      throw std::invalid_argument(
          "protocol step Hamiltonian has the wrong qubit count");
    }
  }
}

}  // namespace

ProtocolSequence commutator_sequence(const PauliSum& h1, const PauliSum& h2,
                                     double dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("commutator step time must be positive");
  }
  const int n = h1.n_qubits();
  if (h2.n_qubits() != n) {
    throw std::invalid_argument(
        "commutator Hamiltonians must act on the same qubit count");
  }
  ProtocolSequence seq;
  seq.n_qubits = n;
  for (const PauliSum& h : commutator_legs(h1, h2)) {
    seq.steps.push_back({h, dt, {}});
  }
  seq.target_h = effective_commutator_hamiltonian(h1, h2);
  seq.target_time = 2.0 * dt * dt;
  return seq;
}

ProtocolSequence nested_sequence_5body(double dt5) {
  if (!(dt5 > 0.0)) {
    throw std::invalid_argument("effective time must be positive");
  }
  const double tau3 = std::sqrt(dt5 / 2.0);
  const double tau2 = std::sqrt(tau3 / 2.0);
  if (tau2 > 0.5) {
    throw std::invalid_argument(
        "effective time too large: inner step time exceeds 0.5");
  }
  const PauliSum h_ab = pauli_sum({pauli_string("ZXIII")});
  const PauliSum h_bc = pauli_sum({pauli_string("IYYII")});
  const PauliSum h_cd = pauli_sum({pauli_string("IIXYI")});
  const PauliSum h_de = pauli_sum({pauli_string("IIIXZ")});

  // Inner blocks realize X_C Z_D Z_E and -Z_A Z_B Y_C respectively; the
  // outer group commutator of the two (with exact inverses, so the inner
  // Taylor corrections cancel) realizes -i/2 [-ZZYII, IIXZZ] = +Z^{x5}.
  const std::vector<PauliSum> cde = commutator_legs(h_de, h_cd);
  const std::vector<PauliSum> abc = commutator_legs(h_bc, h_ab);

  ProtocolSequence seq;
  seq.n_qubits = 5;
  for (const std::vector<PauliSum>* block :
       {&cde, &abc}) {
    for (const PauliSum& h : *block) seq.steps.push_back({h, tau2, {}});
  }
  for (const std::vector<PauliSum>& block :
       {inverse_legs(cde), inverse_legs(abc)}) {
    for (const PauliSum& h : block) seq.steps.push_back({h, tau2, {}});
  }
  seq.target_h = pauli_sum({pauli_string("ZZZZZ")});
  seq.target_time = dt5;
  return seq;
}

ProtocolSequence attach_participant_noise(const ProtocolSequence& seq,
                                          const NoiseSpec& ambient) {
  ProtocolSequence out = seq;
  for (ProtocolStep& step : out.steps) {
    const std::vector<int> sup = step.h.support();
    const std::set<int> on(sup.begin(), sup.end());
    step.noise.qubits.clear();
    for (const auto& [qubit, res] : ambient.qubits) {
      if (on.count(qubit)) step.noise.qubits.push_back({qubit, res});
    }
  }
  return out;
}

Channel simulate_sequence(const ProtocolSequence& seq, bool allow_large) {
  check_sequence(seq);
  const bool noiseless =
      std::all_of(seq.steps.begin(), seq.steps.end(),
                  [](const ProtocolStep& s) { return s.noise.empty(); });
  if (noiseless) {
    const int dim = 1 << seq.n_qubits;
    Mat u = Mat::Identity(dim, dim);
    for (const ProtocolStep& step : seq.steps) {
      const Mat h = operator_of(step.h);
      u = matrix_exp(Mat(cplx{0.0, -step.duration} * h)) * u;
    }
    return unitary_channel(u);
  }
  Channel total = identity_channel(1 << seq.n_qubits);
  for (const ProtocolStep& step : seq.steps) {
    const Mat gen = liouvillian(step.h, step.noise, allow_large);
    total = compose(evolve(gen, step.duration), total);
  }
  return total;
}

std::vector<ProtocolSequence> symmetrize(const ProtocolSequence& seq) {
  check_sequence(seq);
  if (seq.n_qubits != 3) {
    throw std::invalid_argument(
        "symmetrization is defined for three-qubit sequences");
  }
  std::vector<ProtocolSequence> out;
  for (const std::vector<int>& perm :
       {std::vector<int>{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}) {
    ProtocolSequence p = seq;
    for (ProtocolStep& step : p.steps) {
      step.h = permute_qubits(step.h, perm);
      for (auto& [qubit, res] : step.noise.qubits) qubit = perm[qubit];
    }
    p.target_h = permute_qubits(seq.target_h, perm);
    out.push_back(std::move(p));
  }
  return out;
}

Channel average_channels(const std::vector<Channel>& channels) {
  if (channels.empty()) {
    throw std::invalid_argument("cannot average an empty channel list");
  }
  const int dim = channels.front().dim;
  Mat super = Mat::Zero(dim * dim, dim * dim);
  for (const Channel& c : channels) {
    if (c.dim != dim) {
      throw std::invalid_argument("averaged channels must share a dimension");
    }
    super += c.super;
  }
  super /= static_cast<double>(channels.size());
  return Channel{dim, std::move(super), {}};
}

namespace {

// Split a three-qubit target into the ZZZ coupling strength and the
// single-qubit field part; anything else is rejected.
struct TargetSplit {
  double zzz_coeff = 0.0;
  PauliSum fields;
};

TargetSplit split_target(const PauliSum& target_h) {
  if (target_h.n_qubits() != 3) {
    throw std::invalid_argument(
        "commutator gate synthesis expects a three-qubit target");
  }
  TargetSplit split;
  for (const PauliString& t : simplified(target_h).terms) {
    if (std::abs(t.coeff.imag()) > 1e-12) {
      throw std::invalid_argument("target coefficients must be real");
    }
    const std::vector<int> sup = t.support();
    if (t.letters_str() == "ZZZ") {
      split.zzz_coeff += t.coeff.real();
    } else if (sup.size() <= 1) {
      if (!sup.empty()) split.fields.terms.push_back(t);
    } else {
      throw std::invalid_argument(
          "target must be c*ZZZ plus single-qubit fields; got term " +
          t.letters_str());
    }
  }
  if (!(split.zzz_coeff > 0.0)) {
    throw std::invalid_argument(
        "target must contain ZZZ with a positive coefficient");
  }
  return split;
}

// One Trotter slice of length d: the commutator-built exp(-i c d ZZZ) block
// (optionally role-symmetrized) followed by the exact field evolution.
Channel gate_slice(const TargetSplit& split, double d,
                   const NoiseSpec& ambient, bool symmetrized) {
  const PauliSum h1 = pauli_sum({pauli_string("ZXI")});
  const PauliSum h2 = pauli_sum({pauli_string("IYZ")});
  const double dt = std::sqrt(split.zzz_coeff * d / 2.0);
  const ProtocolSequence base = attach_participant_noise(
      commutator_sequence(h1, h2, dt), ambient);
  Channel block = [&] {
    if (!symmetrized) return simulate_sequence(base);
    std::vector<Channel> parts;
    for (const ProtocolSequence& s : symmetrize(base)) {
      parts.push_back(simulate_sequence(s));
    }
    return average_channels(parts);
  }();
  if (split.fields.terms.empty()) return block;
  const Mat hf = operator_of(split.fields);
  const Mat uf = matrix_exp(Mat(cplx{0.0, -d} * hf));
  return compose(unitary_channel(uf), block);
}

}  // namespace

Channel gate_via_commutator(const PauliSum& target_h, double t_total,
                            double dt_m, const NoiseSpec& ambient,
                            bool symmetrized) {
  if (!(t_total > 0.0)) {
    throw std::invalid_argument("total time must be positive");
  }
  if (!(dt_m > 0.0) || dt_m >= t_total) {
    throw std::invalid_argument("step time must lie in (0, t_total)");
  }
  const TargetSplit split = split_target(target_h);
  const long long n_slices = static_cast<long long>(
      std::ceil(t_total / dt_m - 1e-12));
  const double d_last = t_total - static_cast<double>(n_slices - 1) * dt_m;
  const Channel slice = gate_slice(split, dt_m, ambient, symmetrized);
  const Channel bulk = channel_power(slice, n_slices - 1);
  return compose(gate_slice(split, d_last, ambient, symmetrized), bulk);
}

OptimalDtm optimal_dt_m(const PauliSum& target_h, double t_total,
                        const NoiseSpec& ambient, bool symmetrized) {
  const Mat u_target = matrix_exp(
      Mat(cplx{0.0, -t_total} * operator_of(target_h)));
  const auto fid = [&](double dt_m) {
    return j_fidelity(
        gate_via_commutator(target_h, t_total, dt_m, ambient, symmetrized),
        u_target);
  };

  constexpr int kGridPoints = 40;
  const double lo_edge = 1e-4, hi_edge = t_total / 2.0;
  std::vector<double> grid(kGridPoints), f(kGridPoints);
  for (int i = 0; i < kGridPoints; ++i) {
    const double s = static_cast<double>(i) / (kGridPoints - 1);
    grid[i] = lo_edge * std::pow(hi_edge / lo_edge, s);
    f[i] = fid(grid[i]);
  }
  const int best = static_cast<int>(
      std::max_element(f.begin(), f.end()) - f.begin());

  OptimalDtm result;
  if (*std::max_element(f.begin(), f.end()) -
          *std::min_element(f.begin(), f.end()) < 1e-12) {
    result.flat_landscape = true;
    result.dt_m = grid[best];
    result.fidelity = f[best];
    return result;
  }

  // Golden-section refinement in log space between the bracketing neighbors.
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::log(grid[std::max(0, best - 1)]);
  double b = std::log(grid[std::min(kGridPoints - 1, best + 1)]);
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = fid(std::exp(c));
  double fd = fid(std::exp(d));
  for (int it = 0; it < 40; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = fid(std::exp(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = fid(std::exp(d));
    }
  }
  result.dt_m = std::exp(0.5 * (a + b));
  result.fidelity = fid(result.dt_m);
  return result;
}

int qudit_bodyness(int big_d, int small_d, int n_bodies) {
  if (big_d < 2 || small_d < 2 || n_bodies < 1) {
    throw std::invalid_argument(
        "dimensions must be >= 2 and the body count >= 1");
  }
  const double ratio =
      static_cast<double>(n_bodies) * std::log(static_cast<double>(big_d)) /
      std::log(static_cast<double>(small_d));
  return static_cast<int>(std::ceil(ratio - 1e-9));
}

}  // namespace mbsim
