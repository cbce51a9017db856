#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "chancode/channel.hpp"
#include "chancode/sampling.hpp"

using namespace chancode;

namespace {

// Map equality checked on the Pauli basis (a basis of all 2x2 matrices).
double map_distance(const KrausChannel& a, const KrausChannel& b) {
  double dist = 0.0;
  for (int j = 0; j < 4; ++j) {
    dist = std::max(dist, max_abs_diff(apply_mat(a, pauli(j)), apply_mat(b, pauli(j))));
  }
  return dist;
}

}  // namespace

TEST_CASE("KrausChannel validates trace preservation") {
  CHECK_THROWS_AS(KrausChannel(2, {0.9 * CMat::identity(2)}), Error);
  CHECK_THROWS_AS(KrausChannel(2, {}), Error);
}

TEST_CASE("apply: identity, flip, depolarizing examples") {
  const DensityOp zero = bloch_to_state({0, 0, 1});

  const DensityOp same = apply(KrausChannel::identity(2), zero);
  CHECK(max_abs_diff(same.mat(), zero.mat()) < 1e-12);

  const double p = 0.3;
  const DensityOp flipped = apply(flip_channel(FlipAxis::X, p), zero);
  CHECK(max_abs_diff(flipped.mat(), CMat{{1.0 - p, 0.0}, {0.0, p}}) < 1e-12);

  const double eta = 0.4;
  const DensityOp shrunk = apply(depolarizing(eta), zero);
  const CMat expected = (1.0 - eta) * zero.mat() + (eta / 2.0) * CMat::identity(2);
  CHECK(max_abs_diff(shrunk.mat(), expected) < 1e-12);
}

TEST_CASE("depolarizing range and boundary") {
  CHECK(map_distance(depolarizing(0.0), KrausChannel::identity(2)) < 1e-12);

  // eta = 1 sends everything to I/2.
  const DensityOp out = apply(depolarizing(1.0), bloch_to_state({0, 0, 1}));
  CHECK(max_abs_diff(out.mat(), 0.5 * CMat::identity(2)) < 1e-12);

  // The CPTP boundary eta = 4/3 scales Bloch vectors by -1/3.
  const PauliTransfer pt = pauli_transfer(depolarizing(4.0 / 3.0));
  CHECK(pt.t[1][1] == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
  CHECK(pt.t[2][2] == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
  CHECK(pt.t[3][3] == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));

  CHECK_THROWS_AS(depolarizing(-0.1), EtaOutOfRangeError);
  CHECK_THROWS_AS(depolarizing(4.0 / 3.0 + 0.01), EtaOutOfRangeError);
}

TEST_CASE("depolarizing in higher dimensions") {
  const int dim = 3;
  const double eta = 0.7;
  const KrausChannel d = depolarizing(eta, dim);
  CMat rho(dim);
  rho.at(0, 0) = 1.0;
  const CMat expected = (1.0 - eta) * rho + (eta / dim) * CMat::identity(dim);
  CHECK(max_abs_diff(apply_mat(d, rho), expected) < 1e-12);
}

TEST_CASE("flip_channel endpoints and transfer") {
  CHECK(map_distance(flip_channel(FlipAxis::X, 0.0), KrausChannel::identity(2)) < 1e-12);

  const KrausChannel full = flip_channel(FlipAxis::X, 1.0);
  const DensityOp out = apply(full, bloch_to_state({0, 0, 1}));
  CHECK(max_abs_diff(out.mat(), CMat{{0.0, 0.0}, {0.0, 1.0}}) < 1e-12);

  // Y flip at p: X and Z Bloch components scale by 1 - 2p, Y stays.
  const PauliTransfer pt = pauli_transfer(flip_channel(FlipAxis::Y, 0.5));
  CHECK(pt.t[1][1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(pt.t[2][2] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pt.t[3][3] == doctest::Approx(0.0).epsilon(1e-12));

  CHECK_THROWS_AS(flip_channel(FlipAxis::X, 1.5), ProbOutOfRangeError);
}

TEST_CASE("fixed_state_channel") {
  const DensityOp sigma = bloch_to_state({0.3, -0.2, 0.4});

  CHECK(map_distance(fixed_state_channel(sigma, 0.0), KrausChannel::identity(2)) < 1e-12);

  // eta = 1 is the constant map to sigma.
  const KrausChannel constant = fixed_state_channel(sigma, 1.0);
  SplitMix64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityOp out = apply(constant, random_density(rng));
    CHECK(max_abs_diff(out.mat(), sigma.mat()) < 1e-10);
  }

  // sigma = I/2 reproduces the depolarizing channel as a map.
  const double eta = 0.6;
  CHECK(map_distance(fixed_state_channel(bloch_to_state({0, 0, 0}), eta), depolarizing(eta)) <
        1e-10);

  CHECK_THROWS_AS(fixed_state_channel(sigma, 1.2), EtaOutOfRangeError);
}

TEST_CASE("pauli_transfer examples") {
  const PauliTransfer ident = pauli_transfer(KrausChannel::identity(2));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(ident.t[i][j] == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));

  const double eta = 0.45;
  const PauliTransfer dep = pauli_transfer(depolarizing(eta));
  for (int i = 1; i < 4; ++i) CHECK(dep.t[i][i] == doctest::Approx(1.0 - eta).epsilon(1e-12));

  const double p = 0.2;
  const PauliTransfer fx = pauli_transfer(flip_channel(FlipAxis::X, p));
  CHECK(fx.t[0][0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fx.t[1][1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fx.t[2][2] == doctest::Approx(1.0 - 2.0 * p).epsilon(1e-12));
  CHECK(fx.t[3][3] == doctest::Approx(1.0 - 2.0 * p).epsilon(1e-12));
}

TEST_CASE("compose") {
  const KrausChannel n = flip_channel(FlipAxis::Y, 0.35);
  CHECK(map_distance(compose(KrausChannel::identity(2), n), n) < 1e-12);

  // Composing X flips multiplies their Bloch effect: p . q = p + q - 2pq.
  const double p = 0.3, q = 0.25;
  const KrausChannel both = compose(flip_channel(FlipAxis::X, p), flip_channel(FlipAxis::X, q));
  CHECK(map_distance(both, flip_channel(FlipAxis::X, p + q - 2 * p * q)) < 1e-12);

  // U^dag . N . U sandwich acts as conjugation.
  SplitMix64 rng(32);
  const KrausChannel random = random_channel(rng);
  const CMat u = 0.5 * CMat{{cplx(1, -1), cplx(-1, -1)}, {cplx(1, -1), cplx(1, 1)}};
  const KrausChannel conj_u(2, {u});
  const KrausChannel conj_ud(2, {u.adjoint()});
  const KrausChannel sandwich = compose(conj_ud, compose(random, conj_u));
  const CMat probe = bloch_to_state({0.2, 0.5, -0.1}).mat();
  CHECK(max_abs_diff(apply_mat(sandwich, probe),
                     u.adjoint() * apply_mat(random, u * probe * u.adjoint()) * u) < 1e-12);
}

TEST_CASE("transfer matrix is multiplicative under composition") {
  SplitMix64 rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    const KrausChannel a = random_channel(rng);
    const KrausChannel b = random_channel(rng);
    const PauliTransfer ta = pauli_transfer(a);
    const PauliTransfer tb = pauli_transfer(b);
    const PauliTransfer tab = pauli_transfer(compose(a, b));
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        double prod = 0.0;
        for (int k = 0; k < 4; ++k) prod += ta.t[i][k] * tb.t[k][j];
        CHECK(tab.t[i][j] == doctest::Approx(prod).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("random channels preserve trace and Hermiticity") {
  SplitMix64 rng(34);
  for (int trial = 0; trial < 1000; ++trial) {
    const KrausChannel n = random_channel(rng);
    CMat sum(2);
    for (const CMat& k : n.kraus()) sum += k.adjoint() * k;
    REQUIRE(max_abs_diff(sum, CMat::identity(2)) < 1e-10);
    const CMat out = apply_mat(n, random_density(rng).mat());
    CHECK(std::abs(out.trace() - cplx(1.0)) < 1e-10);
    CHECK(out.is_hermitian(1e-10));
  }
}
