#pragma once

#include "chancode/channel.hpp"
#include "chancode/ensemble.hpp"
#include "chancode/rng.hpp"

namespace chancode {

// Seeded generators for property tests and acceptance runs. All draws are
// reproducible: the same SplitMix64 state yields the same objects.

// Random Hermitian qubit matrix with Gaussian entries.
CMat random_hermitian(SplitMix64& rng, int dim = 2, double scale = 1.0);

// Bloch vector uniform in the unit ball.
BlochVec random_bloch(SplitMix64& rng);

DensityOp random_density(SplitMix64& rng);

// Random Kraus rank-2 qubit channel: a Gaussian 4x2 matrix is QR-orthonormalized
// into an isometry and split into two stacked Kraus operators.
KrausChannel random_channel(SplitMix64& rng);

// n random states; priors uniform on the simplex or equal.
Ensemble random_ensemble(SplitMix64& rng, int n, bool equal_priors);

// n random states with Bloch vectors in the x-y plane (used by the planar
// grid oracle, which searches the same plane).
Ensemble random_planar_ensemble(SplitMix64& rng, int n, bool equal_priors);

}  // namespace chancode
