#include "chancode/circuit.hpp"

#include <array>
#include <cmath>

#include "chancode/rng.hpp"

namespace chancode {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

CMat u3(double theta, double phi, double lambda) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const cplx el(std::cos(lambda), std::sin(lambda));
  const cplx ep(std::cos(phi), std::sin(phi));
  return CMat{{c, -el * s}, {ep * s, el * ep * c}};
}

U3Angles u3_angles_of(const CMat& u) {
  if (u.dim() != 2) throw DimMismatchError("U3 decomposition requires a 2x2 unitary");
  const double a00 = std::abs(u.at(0, 0));
  const double a10 = std::abs(u.at(1, 0));
  U3Angles angles{};
  if (a00 < 1e-12) {
    // theta = pi; normalize the phase so the lower-left entry is real.
    angles.theta = kPi;
    angles.phi = 0.0;
    const cplx phase = u.at(1, 0) / a10;
    angles.lambda = std::arg(-u.at(0, 1) / phase);
    return angles;
  }
  const cplx phase = u.at(0, 0) / a00;
  angles.theta = 2.0 * std::atan2(a10, a00);
  if (a10 > 1e-12) {
    angles.phi = std::arg(u.at(1, 0) / phase);
    angles.lambda = std::arg(-u.at(0, 1) / phase);
  } else {
    angles.phi = 0.0;
    angles.lambda = std::arg(u.at(1, 1) / phase);
  }
  return angles;
}

namespace {

CMat single_qubit_matrix(const Gate& g) {
  switch (g.kind) {
    case GateKind::U3:
      return u3(g.theta, g.phi, g.lambda);
    case GateKind::H: {
      const double r = 1.0 / std::sqrt(2.0);
      return CMat{{r, r}, {r, -r}};
    }
    case GateKind::X:
      return pauli(1);
    default:
      throw Error("not a single-qubit gate");
  }
}

using State = std::array<cplx, 4>;

// Basis index = 2*q1 + q0.
void apply_gate(State& amps, const Gate& g) {
  switch (g.kind) {
    case GateKind::Barrier:
      return;
    case GateKind::CX: {
      if (g.control == g.target) throw Error("CX control equals target");
      // Swap the target bit wherever the control bit is set.
      const int cbit = 1 << g.control;
      const int tbit = 1 << g.target;
      for (int idx = 0; idx < 4; ++idx) {
        if ((idx & cbit) && !(idx & tbit)) std::swap(amps[idx], amps[idx | tbit]);
      }
      return;
    }
    default: {
      const CMat m = single_qubit_matrix(g);
      const int tbit = 1 << g.target;
      for (int idx = 0; idx < 4; ++idx) {
        if (idx & tbit) continue;
        const cplx a0 = amps[idx];
        const cplx a1 = amps[idx | tbit];
        amps[idx] = m.at(0, 0) * a0 + m.at(0, 1) * a1;
        amps[idx | tbit] = m.at(1, 0) * a0 + m.at(1, 1) * a1;
      }
      return;
    }
  }
}

State run_statevector(const Circuit& c) {
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::Barrier) continue;
    if (g.target < 0 || g.target >= c.n_qubits ||
        (g.kind == GateKind::CX && (g.control < 0 || g.control >= c.n_qubits))) {
      throw Error("gate wire index out of range");
    }
  }
  State amps{cplx(1.0), cplx(0.0), cplx(0.0), cplx(0.0)};
  for (const Gate& g : c.gates) apply_gate(amps, g);
  return amps;
}

void append_controlled_flip(Circuit& circuit, FlipAxis axis) {
  if (axis == FlipAxis::X) {
    circuit.gates.push_back(Gate::cx(0, 1));
  } else {
    circuit.gates.push_back(Gate::h(1));
    circuit.gates.push_back(Gate::cx(0, 1));
    circuit.gates.push_back(Gate::h(1));
    circuit.gates.push_back(Gate::cx(0, 1));
  }
}

}  // namespace

Circuit build_flip_circuit(FlipAxis axis, double p_f, const CMat& prep, const CMat& meas_rot,
                           const CMat* twirl_u) {
  if (p_f < 0.0 || p_f > 1.0) throw ProbOutOfRangeError("flip probability out of [0,1]");
  const double alpha = std::acos(std::sqrt(1.0 - p_f));

  Circuit circuit;
  circuit.gates.push_back(Gate::u3(0, 2.0 * alpha, 0.0, 0.0));
  const U3Angles prep_angles = u3_angles_of(prep);
  circuit.gates.push_back(Gate::u3(1, prep_angles.theta, prep_angles.phi, prep_angles.lambda));
  circuit.gates.push_back(Gate::barrier());
  if (twirl_u != nullptr) {
    const U3Angles t = u3_angles_of(*twirl_u);
    circuit.gates.push_back(Gate::u3(1, t.theta, t.phi, t.lambda));
  }
  append_controlled_flip(circuit, axis);
  if (twirl_u != nullptr) {
    const U3Angles t = u3_angles_of(twirl_u->adjoint());
    circuit.gates.push_back(Gate::u3(1, t.theta, t.phi, t.lambda));
  }
  circuit.gates.push_back(Gate::barrier());
  const U3Angles meas_angles = u3_angles_of(meas_rot);
  circuit.gates.push_back(Gate::u3(1, meas_angles.theta, meas_angles.phi, meas_angles.lambda));
  return circuit;
}

CMat circuit_unitary(const Circuit& c) {
  CMat total = CMat::identity(4);
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::Barrier) continue;
    CMat gate_mat(4);
    if (g.kind == GateKind::CX) {
      const int cbit = 1 << g.control;
      const int tbit = 1 << g.target;
      for (int col = 0; col < 4; ++col) {
        const int row = (col & cbit) ? (col ^ tbit) : col;
        gate_mat.at(row, col) = 1.0;
      }
    } else {
      const CMat m = single_qubit_matrix(g);
      gate_mat = (g.target == 1) ? kron(m, CMat::identity(2)) : kron(CMat::identity(2), m);
    }
    total = gate_mat * total;
  }
  return total;
}

KrausChannel channel_of_circuit(FlipAxis axis, double p_f) {
  if (p_f < 0.0 || p_f > 1.0) throw ProbOutOfRangeError("flip probability out of [0,1]");
  Circuit block;
  append_controlled_flip(block, axis);
  const CMat v = circuit_unitary(block);

  // Kraus operators K_e = <e|_q0 V |a>_q0 with the ancilla at the flip angle.
  const double alpha = std::acos(std::sqrt(1.0 - p_f));
  const std::array<double, 2> ancilla{std::cos(alpha), std::sin(alpha)};
  std::vector<CMat> kraus;
  for (int e = 0; e < 2; ++e) {
    CMat k(2);
    for (int i1 = 0; i1 < 2; ++i1) {
      for (int j1 = 0; j1 < 2; ++j1) {
        cplx v_sum = 0.0;
        for (int j0 = 0; j0 < 2; ++j0) v_sum += v.at(2 * i1 + e, 2 * j1 + j0) * ancilla[j0];
        k.at(i1, j1) = v_sum;
      }
    }
    kraus.push_back(std::move(k));
  }
  return KrausChannel(2, std::move(kraus));
}

std::vector<double> exact_distribution(const Circuit& c) {
  const State amps = run_statevector(c);
  std::vector<double> probs(4);
  double total = 0.0;
  for (int i = 0; i < 4; ++i) {
    probs[i] = std::norm(amps[i]);
    total += probs[i];
  }
  for (double& p : probs) p /= total;
  return probs;
}

ShotResult simulate_counts(const Circuit& c, std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1) throw Error("need at least one shot");
  const std::vector<double> probs = exact_distribution(c);
  std::array<std::uint64_t, 4> tally{};
  SplitMix64 rng(seed);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double draw = rng.next_double();
    double cumulative = 0.0;
    int outcome = 3;
    for (int i = 0; i < 4; ++i) {
      cumulative += probs[i];
      if (draw < cumulative) {
        outcome = i;
        break;
      }
    }
    ++tally[outcome];
  }
  ShotResult result{{}, shots};
  static const char* kKeys[4] = {"00", "01", "10", "11"};  // "<q1><q0>"
  for (int i = 0; i < 4; ++i) result.counts[kKeys[i]] = tally[i];
  return result;
}

double marginal_probability(const ShotResult& result, int wire, int bit) {
  std::uint64_t hits = 0;
  for (const auto& [key, count] : result.counts) {
    // key is "<q1><q0>".
    const char c = (wire == 1) ? key[0] : key[1];
    if (c - '0' == bit) hits += count;
  }
  return static_cast<double>(hits) / static_cast<double>(result.shots);
}

double shot_noise(double expectation, double eta, double trace_m) {
  if (eta < 0.0 || eta > 1.0) throw EtaOutOfRangeError("shot-noise fraction out of [0,1]");
  return (1.0 - eta) * expectation + eta * trace_m / 2.0;
}

}  // namespace chancode
