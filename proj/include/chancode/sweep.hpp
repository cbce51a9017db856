#pragma once

#include <cstdint>
#include <vector>

#include "chancode/circuit.hpp"

namespace chancode {

// The two experiment configurations: a pair of orthogonal states under an
// X flip read in the Z basis, and the four BB84 states under a Y flip read
// in a random X/Z basis.
enum class SweepPanel { OrthogonalPairX, Bb84Y };

struct SweepConfig {
  std::vector<double> p_f_values;  // defaults to 0, 0.05, ..., 1
  std::uint64_t shots = 8000;
  std::uint64_t seed = 1;
  double noise_eta = -1.0;  // < 0 picks the panel default (0.05 / 0.15)
};

struct SweepRow {
  double p_f;
  double p_channel_exact;    // guessing probability through the raw channel
  double p_coded_exact;      // same after twirling, fixed measurement
  double p_channel_sampled;  // shot estimates of the two above
  double p_coded_sampled;
  double p_channel_noise;  // exact values degraded by the readout-noise model
  double p_coded_noise;
};

std::vector<double> default_sweep_grid();

// Runs the flip-channel dilation circuits over the grid. Exact columns come
// from the statevector distribution; sampled columns use `shots` shots per
// (point, state, design element); noise columns apply shot_noise to the exact
// values. Detector labels follow the sign of the analytic Bloch scaling, the
// same rule the pre-protocol uses.
std::vector<SweepRow> run_guess_sweep(SweepPanel panel, const SweepConfig& config);

}  // namespace chancode
