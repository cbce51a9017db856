#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "chancode/channel.hpp"

namespace chancode {

// Gate set used by the two-qubit experiment circuits. U3 is the general
// single-qubit rotation; CX is a controlled NOT; BARRIER is a no-op stage
// marker.
enum class GateKind { U3, H, X, CX, Barrier };

struct Gate {
  GateKind kind;
  int target = 0;   // wire for single-qubit gates, target for CX
  int control = 0;  // CX only
  double theta = 0.0, phi = 0.0, lambda = 0.0;  // U3 only

  static Gate u3(int wire, double theta, double phi, double lambda) {
    return {GateKind::U3, wire, 0, theta, phi, lambda};
  }
  static Gate h(int wire) { return {GateKind::H, wire, 0, 0, 0, 0}; }
  static Gate x(int wire) { return {GateKind::X, wire, 0, 0, 0, 0}; }
  static Gate cx(int control, int target) { return {GateKind::CX, target, control, 0, 0, 0}; }
  static Gate barrier() { return {GateKind::Barrier, 0, 0, 0, 0, 0}; }
};

struct Circuit {
  std::vector<Gate> gates;
  int n_qubits = 2;
};

// Z-basis counts over both qubits. Keys are bit strings "<q1><q0>".
struct ShotResult {
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t shots;
};

// [[cos(t/2), -e^{i l} sin(t/2)], [e^{i p} sin(t/2), e^{i(l+p)} cos(t/2)]]
CMat u3(double theta, double phi, double lambda);

// Decomposes a 2x2 unitary into U3 angles (the global phase is dropped).
struct U3Angles {
  double theta, phi, lambda;
};
U3Angles u3_angles_of(const CMat& u);

// The flip-channel dilation circuit: ancilla q0 prepared at the flip angle,
// system q1 prepared by `prep`, conjugated by the optional twirl unitary
// around the controlled-flip block, then rotated into the measurement basis.
// The Y block is the two-CNOT composition CX (I(x)H) CX (I(x)H).
Circuit build_flip_circuit(FlipAxis axis, double p_f, const CMat& prep, const CMat& meas_rot,
                           const CMat* twirl_u = nullptr);

// 4x4 unitary of a circuit (basis index = 2*q1 + q0).
CMat circuit_unitary(const Circuit& c);

// The qubit channel induced on q1 by the controlled-flip block after tracing
// out the ancilla; equals flip_channel(axis, p_f) as a map.
KrausChannel channel_of_circuit(FlipAxis axis, double p_f);

// Exact four-outcome distribution of the circuit, ordered 00, 01, 10, 11
// (keys as in ShotResult).
std::vector<double> exact_distribution(const Circuit& c);

// Statevector evolution followed by multinomial readout sampling.
ShotResult simulate_counts(const Circuit& c, std::uint64_t shots, std::uint64_t seed);

// Probability that qubit `wire` reads `bit`, from a result's counts.
double marginal_probability(const ShotResult& result, int wire, int bit);

// Readout degradation model: tr(M rho) -> tr(M[(1-eta) rho + eta I/2]),
// i.e. (1-eta) * expectation + eta * trace_m / 2.
double shot_noise(double expectation, double eta, double trace_m = 1.0);

}  // namespace chancode
